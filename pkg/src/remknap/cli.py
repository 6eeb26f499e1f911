"""Command-line front end.

Exit codes: 0 success, 1 rule violation by an algorithm, 2 bad input or
parameters, 3 an exact search beyond its size limit.
"""

from __future__ import annotations

import argparse
import contextlib
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import List, Optional

from . import core
from .algorithms import NAMES, get_algorithm
from .algorithms.proppack import calibrated_scheme, oracle_proppack
from .algorithms.sqrt2 import A, B, C, D, ratio_bounds
from .errors import DomainError, RemKnapError, RuleViolation, TooLarge
from .families import (gen_log_k, gen_one_bit, gen_optimality, gen_uniform, psi,
                       zeta)
from .io import ResultRow, dump_instances, load_instances, write_rows
from .offline import MAX_ENUM, enumerate_optima, optimal_gain
from .verifier import best_min_performance, implied_ratio

EXIT_OK, EXIT_RULE, EXIT_INPUT, EXIT_LIMIT = 0, 1, 2, 3


@contextlib.contextmanager
def _output(path: Optional[str]):
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", newline="") as fp:
            yield fp


def _read_input(path: str):
    if path == "-":
        return load_instances(sys.stdin)
    with open(path) as fp:
        return load_instances(fp)


def _floats(text: str) -> List[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated number list: {text!r}")


def _ints(text: str) -> List[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated integer list: {text!r}")


def _family(args):
    fam = args.family
    if fam == "one-bit":
        return gen_one_bit(_need(args, "eps"))
    if fam == "log-k":
        return gen_log_k(_need(args, "k"), _need(args, "eps"))
    if fam == "optimality":
        return [gen_optimality(_need(args, "m"), args.k or 0, _need(args, "subset"),
                               args.variant)]
    if fam == "uniform":
        return [gen_uniform(_need(args, "n"), args.seed)]
    raise DomainError(f"unknown family {fam!r}")


def _need(args, name):
    value = getattr(args, name)
    if value is None:
        raise DomainError(f"--{name} is required for family {args.family!r}")
    return value


def cmd_gen(args) -> int:
    insts = _family(args)
    with _output(args.out) as fp:
        dump_instances(insts, fp)
    return EXIT_OK


def evaluate(inst, alg_name: str, eps: Optional[float]) -> ResultRow:
    """Run one algorithm with oracle advice on one instance."""
    alg = get_algorithm(alg_name, eps)
    inst = core.normalize(inst)
    opt = optimal_gain(inst)
    if alg_name == "greedy":
        record, advice, _ = alg.run(inst)
    elif inst.n > MAX_ENUM:
        if alg_name != "proppack":
            raise TooLarge(f"{inst.name}: {inst.n} items exceed the oracle limit "
                           f"of {MAX_ENUM} for {alg_name}")
        record, advice, _ = alg.run(inst, advice=oracle_proppack(inst, eps, witness=opt.witness))
    else:
        record, advice, _ = alg.run(inst, optima=enumerate_optima(inst))
    ratio = core.performance(opt.gain, record.final_gain)
    return ResultRow(inst.name, inst.n, alg_name, eps, len(advice),
                     record.final_gain, opt.gain, ratio)


def _init_worker(tol):
    core.set_tolerance(tol)


def _evaluate_star(job):
    return evaluate(*job)


def _evaluate_all(insts, alg_name, eps, jobs: int) -> List[ResultRow]:
    work = [(inst, alg_name, eps) for inst in insts]
    if jobs <= 1 or len(work) <= 1:
        return [evaluate(*w) for w in work]
    with ProcessPoolExecutor(jobs, initializer=_init_worker,
                             initargs=(core.tolerance(),)) as pool:
        return list(pool.map(_evaluate_star, work))  # map keeps input order


def _check_alg(args):
    get_algorithm(args.alg, args.eps)


def cmd_run(args) -> int:
    _check_alg(args)
    insts = _read_input(args.input)
    rows = _evaluate_all(insts, args.alg, args.eps, args.jobs)
    with _output(args.out) as fp:
        write_rows(rows, fp)
    return EXIT_OK


def cmd_opt(args) -> int:
    insts = _read_input(args.input)
    for inst in insts:
        res = optimal_gain(inst)
        witness = " ".join(str(i) for i in sorted(res.witness))
        print(f"{inst.name}\t{res.gain!r}\t[{witness}]")
    return EXIT_OK


def cmd_verify_lb(args) -> int:
    if args.input:
        family = _read_input(args.input)
    elif args.family in ("one-bit", "log-k"):
        family = _family(args)
    else:
        raise DomainError("verify-lb needs --input or --family one-bit|log-k")
    game = best_min_performance(family, args.bits)
    names = [inst.name for inst in game.tree.instances]
    blocks = " | ".join(", ".join(names[k] for k in block) for block in game.partition)
    print(f"value {game.value:.10f}")
    print(f"ratio {implied_ratio(game):.10f}")
    print(f"partition {blocks}")
    print(game.render())
    return EXIT_OK


def _advice_bound(alg_name: str, eps: Optional[float]) -> int:
    if alg_name == "proppack":
        return calibrated_scheme(eps).advice_bound
    return {"greedy": 0, "half32": 1, "sqrt2": 1, "twobit": 2}[alg_name]


def cmd_sweep(args) -> int:
    eps_list = args.eps_list if args.eps_list else [None]
    for eps in eps_list:
        get_algorithm(args.alg, eps)
    insts = _read_input(args.input)
    os.makedirs(args.out_dir, exist_ok=True)
    for eps in eps_list:
        rows = _evaluate_all(insts, args.alg, eps, args.jobs)
        tag = f"eps{eps:g}" if eps is not None else "noeps"
        path = os.path.join(args.out_dir, f"{args.alg}-{tag}.csv")
        with open(path, "w", newline="") as fp:
            write_rows(rows, fp, extra={"advice_bits_max": _advice_bound(args.alg, eps)})
        print(path)
    return EXIT_OK


def constant_table() -> List[tuple]:
    rows = [("a = 1-1/sqrt2", A), ("b = sqrt2-1", B), ("c = 1/2", C),
            ("d = 1/sqrt2", D)]
    rows += [(f"bound {k}", v) for k, v in ratio_bounds().items()]
    rows.append(("sqrt2 bound = max of the above", max(ratio_bounds().values())))
    rows.append(("psi", psi()))
    rows.append(("1/psi", 1 / psi()))
    for k in (2, 4, 8):
        rows.append((f"zeta({k})", zeta(k)))
        rows.append((f"1/zeta({k})", 1 / zeta(k)))
    return rows


def cmd_constants(args) -> int:
    for label, value in constant_table():
        print(f"{label:32s} {value:.12f}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="remknap",
                                description="Removable online knapsack with advice.")
    p.add_argument("--tolerance", type=float, default=None,
                   help="capacity tolerance eta (default: $REMKNAP_TOLERANCE or 1e-9)")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate an instance family")
    g.add_argument("--family", required=True,
                   choices=["one-bit", "log-k", "optimality", "uniform"])
    g.add_argument("--eps", type=float)
    g.add_argument("--k", type=int)
    g.add_argument("--m", type=int)
    g.add_argument("--subset", type=_ints, help="comma-separated indices in 1..m")
    g.add_argument("--variant", choices=["repaired", "literal"], default="repaired")
    g.add_argument("--n", type=int)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out")
    g.set_defaults(func=cmd_gen)

    r = sub.add_parser("run", help="run an algorithm with oracle advice")
    r.add_argument("--alg", required=True, choices=NAMES)
    r.add_argument("--eps", type=float)
    r.add_argument("--input", required=True)
    r.add_argument("--out")
    r.add_argument("--jobs", type=int, default=1)
    r.set_defaults(func=cmd_run)

    o = sub.add_parser("opt", help="offline optimum of every instance")
    o.add_argument("--input", required=True)
    o.set_defaults(func=cmd_opt)

    v = sub.add_parser("verify-lb", help="exact game value under bounded advice")
    v.add_argument("--input")
    v.add_argument("--family", choices=["one-bit", "log-k"])
    v.add_argument("--eps", type=float)
    v.add_argument("--k", type=int)
    v.add_argument("--bits", type=int, required=True)
    v.set_defaults(func=cmd_verify_lb)

    s = sub.add_parser("sweep", help="one CSV per epsilon")
    s.add_argument("--alg", required=True, choices=NAMES)
    s.add_argument("--eps-list", type=_floats)
    s.add_argument("--input", required=True)
    s.add_argument("--out-dir", default=".")
    s.add_argument("--jobs", type=int, default=1)
    s.set_defaults(func=cmd_sweep)

    c = sub.add_parser("constants", help="print the threshold and bound constants")
    c.set_defaults(func=cmd_constants)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.tolerance is not None:
            core.set_tolerance(args.tolerance)
        return args.func(args)
    except RuleViolation as exc:
        print(f"error: rule violation: {exc}", file=sys.stderr)
        return EXIT_RULE
    except TooLarge as exc:
        print(f"error: too large: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except (RemKnapError, ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
