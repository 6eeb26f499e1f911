"""File formats: JSON-lines instance files and CSV result tables."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import astuple, dataclass, fields
from typing import Iterable, List, Optional, TextIO

from .core import Instance
from .errors import DomainError

RATIO_CHECK = 1e-12


def _num(x: float) -> str:
    # 17 significant digits round-trip every binary64 value
    return "%.17g" % x


def format_instance(inst: Instance) -> str:
    sizes = ", ".join(_num(s) for s in inst.sizes)
    return (f'{{"name": {json.dumps(inst.name)}, "capacity": {_num(inst.capacity)}, '
            f'"sizes": [{sizes}]}}')


def dump_instances(instances: Iterable[Instance], fp: TextIO) -> None:
    for inst in instances:
        fp.write(format_instance(inst) + "\n")


def dumps_instances(instances: Iterable[Instance]) -> str:
    buf = io.StringIO()
    dump_instances(instances, buf)
    return buf.getvalue()


def parse_instance(line: str, lineno: int = 0) -> Instance:
    try:
        obj = json.loads(line)
        name, cap, sizes = obj["name"], obj["capacity"], obj["sizes"]
    except (ValueError, KeyError, TypeError) as exc:
        raise DomainError(f"line {lineno}: not an instance object ({exc})") from None
    if not isinstance(name, str) or not isinstance(sizes, list) \
            or isinstance(cap, bool) or not isinstance(cap, (int, float)) \
            or any(isinstance(s, bool) or not isinstance(s, (int, float)) for s in sizes):
        raise DomainError(f"line {lineno}: wrong field types")
    return Instance(name, cap, sizes)


def load_instances(fp: TextIO) -> List[Instance]:
    """Read an instance file; blank lines and '#' comments are skipped."""
    out = []
    for lineno, line in enumerate(fp, 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        out.append(parse_instance(line, lineno))
    return out


def loads_instances(text: str) -> List[Instance]:
    return load_instances(io.StringIO(text))


@dataclass(frozen=True)
class ResultRow:
    instance: str
    n: int
    algorithm: str
    epsilon: Optional[float]
    advice_bits: int
    alg_gain: float
    opt_gain: float
    ratio: float


COLUMNS = tuple(f.name for f in fields(ResultRow))


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return _num(v)
    return str(v)


def write_rows(rows: Iterable[ResultRow], fp: TextIO, extra: Optional[dict] = None) -> None:
    """CSV with a header row and LF endings; ``extra`` adds constant columns."""
    extra = extra or {}
    writer = csv.writer(fp, lineterminator="\n")
    writer.writerow(COLUMNS + tuple(extra))
    for row in rows:
        writer.writerow([_cell(v) for v in astuple(row)] + [_cell(v) for v in extra.values()])


def read_rows(fp: TextIO) -> List[ResultRow]:
    """Parse a result CSV and re-check every stored ratio."""
    out = []
    for rec in csv.DictReader(fp):
        try:
            row = ResultRow(
                instance=rec["instance"],
                n=int(rec["n"]),
                algorithm=rec["algorithm"],
                epsilon=float(rec["epsilon"]) if rec["epsilon"] else None,
                advice_bits=int(rec["advice_bits"]),
                alg_gain=float(rec["alg_gain"]),
                opt_gain=float(rec["opt_gain"]),
                ratio=float(rec["ratio"]),
            )
        except (KeyError, ValueError) as exc:
            raise DomainError(f"bad result row {rec!r}: {exc}") from None
        if row.alg_gain > 0:
            if abs(row.opt_gain / row.alg_gain - row.ratio) > RATIO_CHECK:
                raise DomainError(f"{row.instance}: stored ratio disagrees with gains")
        out.append(row)
    return out
