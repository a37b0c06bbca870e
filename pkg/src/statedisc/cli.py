"""Command-line front end: bound calculators, discrimination runs, sweeps, HSP experiments.

Exit codes: 0 success, 2 validation error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass

from . import bounds as bounds_mod
from . import hsp as hsp_mod
from . import linalg
from .bounds import BoundReport, SearchMethod, copies_lower, copies_upper, copy_sweep
from .errors import NumericalFailure, ValidationError
from .minimax import BestResponse, MinimaxConfig, solve_minimax
from .pgm import pgm, success_report
from .states import (
    Ensemble,
    compressed_powers,
    load_ensemble,
    max_eigenvalue,
    max_pairwise_fidelity,
    save_ensemble,
)

CSV_HEADER = "n,worst_case,average,bk_bound,method"


@dataclass(frozen=True)
class SweepRow:
    """One CSV line of a copy sweep."""

    n: int
    worst_case: float
    average: float
    bk_bound: float
    method: str

    def __post_init__(self):
        if self.n < 1:
            raise ValidationError("n must be >= 1")
        object.__setattr__(self, "worst_case", _clamp_probability(self.worst_case))
        object.__setattr__(self, "average", _clamp_probability(self.average))

    def csv(self) -> str:
        return (
            f"{self.n},{self.worst_case:.12g},{self.average:.12g},"
            f"{self.bk_bound:.12g},{self.method}"
        )


def _clamp_probability(x: float) -> float:
    if x < -1e-9 or x > 1 + 1e-9:
        raise NumericalFailure(f"probability {x:.12g} left [0,1] beyond tolerance")
    return min(1.0, max(0.0, x))


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def _print_table(pairs) -> None:
    width = max(len(k) for k, _ in pairs)
    for k, v in pairs:
        print(f"{k:<{width}}  {v}")


def _minimax_cfg() -> MinimaxConfig:
    # exact best responses for two-state games; PGM otherwise
    return MinimaxConfig(best_response=BestResponse.HELSTROM_IF_N2)


# -- bounds ---------------------------------------------------------------------

def cmd_bounds(args) -> int:
    want_upper = args.F is not None or args.eps is not None
    want_lower = args.eta is not None or args.lam is not None or args.d is not None
    if not want_upper and not want_lower:
        raise ValidationError(
            "provide --F and --eps for the upper bound, "
            "or --eta, --lambda and --d for the lower bound"
        )
    n_upper = n_lower = None
    degenerate = False
    if want_upper:
        if args.F is None or args.eps is None:
            raise ValidationError("the upper bound needs both --F and --eps")
        n_upper = copies_upper(args.N, args.F, args.eps)
    if want_lower:
        if args.eta is None or args.lam is None or args.d is None:
            raise ValidationError("the lower bound needs --eta, --lambda and --d")
        n_lower = copies_lower(args.N, args.eta, args.lam, args.d)
        degenerate = n_lower is None
    report = BoundReport(
        n_upper=n_upper,
        n_lower=n_lower,
        lower_degenerate=degenerate,
        N=args.N,
        F=args.F,
        epsilon=args.eps,
        eta=args.eta,
        lam=args.lam,
        d=args.d,
    )
    if args.json:
        doc = {
            "N": report.N,
            "F": report.F,
            "epsilon": report.epsilon,
            "eta": report.eta,
            "lambda": report.lam,
            "d": report.d,
            "n_upper": report.n_upper,
            "n_lower": "no finite bound" if degenerate else report.n_lower,
        }
        print(json.dumps(doc))
        return 0
    pairs = [("N", str(report.N))]
    if want_upper:
        pairs += [("F", _fmt(report.F)), ("epsilon", _fmt(report.epsilon))]
        pairs.append(("n_upper", str(report.n_upper)))
    if want_lower:
        pairs += [
            ("eta", _fmt(report.eta)),
            ("lambda", _fmt(report.lam)),
            ("d", str(report.d)),
            ("n_lower", "no finite bound" if degenerate else str(report.n_lower)),
        ]
    _print_table(pairs)
    return 0


# -- discriminate ----------------------------------------------------------------

def _n_copy_ensemble(e: Ensemble, n: int, dim_cap: int) -> Ensemble:
    family = None
    for family in compressed_powers(e.states, n, dim_cap=dim_cap):
        pass
    return Ensemble(tuple(family), e.priors)


def cmd_discriminate(args) -> int:
    e = load_ensemble(args.ensemble)
    powers = _n_copy_ensemble(e, args.copies, args.dim_cap)
    if args.method == "pgm":
        report = success_report(powers, pgm(powers))
        worst, average = report.worst_case, report.average
        doc = {
            "method": "pgm",
            "copies": args.copies,
            "per_state": [float(x) for x in report.per_state],
            "average": report.average,
            "worst_case": report.worst_case,
            "bk_bound": report.bk_bound,
        }
    else:
        result = solve_minimax(list(powers.states), _minimax_cfg())
        report = success_report(powers, result.povm)
        worst, average = result.primal_value, report.average
        doc = {
            "method": "minimax",
            "copies": args.copies,
            "per_state": [float(x) for x in report.per_state],
            "average": report.average,
            "primal_value": result.primal_value,
            "dual_value": result.dual_value,
            "duality_gap": result.dual_value - result.primal_value,
            "iterations": result.iterations,
            "converged": result.converged,
            "bk_bound": report.bk_bound,
        }
    if args.out == "json":
        print(json.dumps(doc))
    elif args.out == "csv":
        row = SweepRow(args.copies, worst, average, doc["bk_bound"], args.method)
        print(CSV_HEADER)
        print(row.csv())
    else:
        pairs = [(k, v if isinstance(v, str) else _fmt(v) if isinstance(v, float) else str(v))
                 for k, v in doc.items() if k != "per_state"]
        pairs.append(("per_state", " ".join(_fmt(x) for x in doc["per_state"])))
        _print_table(pairs)
    return 0


# -- sweep -----------------------------------------------------------------------

def _run_sweep(
    states,
    n_max: int,
    epsilon: float,
    method: SearchMethod,
    dim_cap: int,
    stop_on_success: bool = False,
):
    rows = []
    minimal = None
    for ev in copy_sweep(states, n_max, method=method, cfg=_minimax_cfg(), dim_cap=dim_cap):
        rows.append(
            SweepRow(ev.n, ev.worst_case, ev.average, ev.bk_bound, method.value)
        )
        if minimal is None and ev.worst_case >= 1.0 - epsilon:
            minimal = ev.n
            if stop_on_success:
                break
    return rows, minimal


def _write_csv(rows, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(CSV_HEADER + "\n")
        for row in rows:
            fh.write(row.csv() + "\n")


def _sweep_summary(e: Ensemble, epsilon: float, minimal, n_max: int):
    pairs = [
        ("states", str(e.n_states)),
        ("dim", str(e.dim)),
        ("epsilon", _fmt(epsilon)),
        ("minimal n", str(minimal) if minimal is not None else f"exceeds {n_max}"),
    ]
    if e.n_states >= 2:
        f_max = max_pairwise_fidelity(e)
        lam = max_eigenvalue(e)
        pairs.append(("max pairwise F", _fmt(f_max)))
        pairs.append(("max eigenvalue", _fmt(lam)))
        if 0.0 < f_max < 1.0:
            pairs.append(
                ("n upper bound", str(copies_upper(e.n_states, f_max, epsilon)))
            )
        else:
            pairs.append(("n upper bound", "n/a"))
        lower = copies_lower(e.n_states, 1.0 - epsilon, lam, e.dim)
        pairs.append(
            ("n lower bound", "no finite bound" if lower is None else str(lower))
        )
    return pairs


def cmd_sweep(args) -> int:
    e = load_ensemble(args.ensemble)
    method = SearchMethod.MINIMAX if args.method == "minimax" else SearchMethod.PGM_WORST_CASE
    rows, minimal = _run_sweep(list(e.states), args.n_max, args.eps, method, args.dim_cap)
    print(CSV_HEADER)
    for row in rows:
        print(row.csv())
    if args.csv:
        _write_csv(rows, args.csv)
    _print_table(_sweep_summary(e, args.eps, minimal, args.n_max))
    return 0


# -- hsp -------------------------------------------------------------------------

def _parse_family(spec: str) -> hsp_mod.Group:
    kind, _, size = spec.partition(":")
    if not size.isdigit() or int(size) < 1:
        raise ValidationError(f"family '{spec}' must look like cyclic:N or dihedral:M")
    n = int(size)
    if kind == "cyclic":
        return hsp_mod.cyclic_group(n)
    if kind == "dihedral":
        return hsp_mod.dihedral_group(n)
    raise ValidationError(f"unknown family '{kind}' (expected cyclic or dihedral)")


def _default_n_max(d: int, dim_cap: int) -> int:
    if d <= 1:
        return 1
    return max(1, int(math.floor(math.log(dim_cap) / math.log(d) + 1e-9)))


def cmd_hsp(args) -> int:
    if args.family:
        group = _parse_family(args.family)
    else:
        group = hsp_mod.load_group(args.group)
    if args.subgroups:
        subgroups = hsp_mod.load_subgroups(group, args.subgroups)
    else:
        subgroups = hsp_mod.enumerate_subgroups(group)
    e = hsp_mod.hsp_ensemble(group, subgroups)
    if args.emit_group:
        hsp_mod.save_group(group, args.emit_group)
    if args.emit_ensemble:
        save_ensemble(e, args.emit_ensemble)

    # an explicit --n-max fixes the row count; otherwise sweep until the
    # target is met, bounded by the dimension cap
    n_max = args.n_max if args.n_max is not None else _default_n_max(e.dim, args.dim_cap)
    rows, minimal = _run_sweep(
        list(e.states),
        n_max,
        args.eps,
        SearchMethod.MINIMAX,
        args.dim_cap,
        stop_on_success=args.n_max is None,
    )

    pairs = [
        ("group order", str(group.order)),
        ("subgroups", str(len(subgroups))),
        ("ensemble N", str(e.n_states)),
        ("dim", str(e.dim)),
    ]
    pairs += _sweep_summary(e, args.eps, minimal, n_max)[2:]
    _print_table(pairs)
    print(CSV_HEADER)
    for row in rows:
        print(row.csv())
    if args.csv:
        _write_csv(rows, args.csv)
    return 0


# -- parser ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="statedisc",
        description="Multi-hypothesis quantum state discrimination toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--dim-cap",
        type=int,
        default=linalg.DIM_CAP,
        help="largest matrix dimension any operation may construct",
    )
    common.add_argument(
        "--seed",
        type=int,
        default=42,
        help="seed for randomized subcommands (current commands are deterministic)",
    )

    p = sub.add_parser("bounds", parents=[common], help="evaluate the copy-count formulas")
    p.add_argument("--N", type=int, required=True, help="number of states")
    p.add_argument("--F", type=float, help="max pairwise fidelity, in (0,1)")
    p.add_argument("--eps", "--epsilon", dest="eps", type=float, help="target worst-case error")
    p.add_argument("--eta", type=float, help="required success probability, in (0,1]")
    p.add_argument("--lambda", dest="lam", type=float, help="largest state eigenvalue")
    p.add_argument("--d", type=int, help="Hilbert space dimension")
    p.add_argument("--json", action="store_true", help="emit JSON instead of text")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser(
        "discriminate", parents=[common], help="score a measurement on an ensemble file"
    )
    p.add_argument("ensemble", help="ensemble JSON file")
    p.add_argument("--copies", type=int, default=1, help="tensor copies per state")
    p.add_argument("--method", choices=("pgm", "minimax"), default="pgm")
    p.add_argument("--out", choices=("text", "json", "csv"), default="text")
    p.set_defaults(func=cmd_discriminate)

    p = sub.add_parser(
        "sweep", parents=[common], help="evaluate discrimination at n = 1..n-max copies"
    )
    p.add_argument("ensemble", help="ensemble JSON file")
    p.add_argument("--n-max", type=int, required=True, help="largest copy count")
    p.add_argument(
        "--eps", "--epsilon", dest="eps", type=float, required=True,
        help="target worst-case error",
    )
    p.add_argument("--method", choices=("pgm", "minimax"), default="minimax")
    p.add_argument("--csv", help="write the sweep rows to this CSV file")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser(
        "hsp", parents=[common], help="coset-state discrimination experiment"
    )
    p.add_argument("group", nargs="?", help="group JSON file")
    p.add_argument("--family", help="built-in family, cyclic:N or dihedral:M")
    p.add_argument("--all-subgroups", action="store_true", help="enumerate every subgroup")
    p.add_argument("--subgroups", help="JSON file listing subgroups to include")
    p.add_argument("--eps", "--epsilon", dest="eps", type=float, default=0.1)
    p.add_argument(
        "--n-max",
        type=int,
        help="largest copy count (default: sweep until the target is met, "
        "bounded by the dimension cap)",
    )
    p.add_argument("--csv", help="write the sweep rows to this CSV file")
    p.add_argument("--emit-ensemble", help="write the constructed ensemble JSON here")
    p.add_argument("--emit-group", help="write the validated group JSON here")
    p.set_defaults(func=cmd_hsp)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "hsp":
        if bool(args.group) == bool(args.family):
            parser.error("hsp needs a group file or --family, not both")
        if bool(args.all_subgroups) == bool(args.subgroups):
            parser.error("hsp needs --all-subgroups or --subgroups FILE, not both")
    try:
        return args.func(args)
    except ValidationError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except NumericalFailure as err:
        print(f"numerical failure: {err}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
