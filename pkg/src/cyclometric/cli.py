"""cyclometric command line.

    cyclometric norm --p 3 --a '[["1","1"],["0","1"]]'
    cyclometric distance --p 3 --a '[["1","1"],["0","1"]]' --b '[["1","2"],["1","2"]]'
    cyclometric galois --p 5 --a '[["1","1"],["0","1"],["0","1"],["1","1"]]'
    cyclometric krasner --p 3 --a A --b B
    cyclometric primitive --p 5 --a A --b B --max-n 100
    cyclometric moments --p 3 --n 1 --format json
    cyclometric bruteforce --p 5 --n 2 --what m4
    cyclometric concentrate --p 3 --n 1 --eps 3/10 --mode exhaustive

Elements are JSON, either ``{"p": P, "coeffs": [[num, den], ...]}`` or a bare
coefficient list together with ``--p``; a path to a file holding either form
also works. Exact values are printed as "num/den" strings.

Exit codes: 0 success, 1 validation or usage error, 2 budget or search exhausted.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction
from typing import Any, Sequence

from . import empirical, galois, metric, moments
from .core import CycloElement, element_from_json, element_to_json, rational_str, to_rational
from .errors import CycloError, ExhaustionError
from .metric import BoxSpec


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # argparse would exit(2)
        raise UsageError(message)


def _rational_arg(text: str) -> Fraction:
    try:
        return to_rational(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from exc


def _load_element(text: str, p: int | None) -> CycloElement:
    if os.path.isfile(text):
        with open(text) as fh:
            text = fh.read()
    try:
        return element_from_json(text, p)
    except json.JSONDecodeError as exc:
        raise UsageError(f"element is not valid JSON: {exc}") from exc
    except (KeyError, TypeError) as exc:
        raise UsageError(f"malformed element: {exc}") from exc


def _emit_json(payload: dict[str, Any]) -> str:
    return json.dumps(payload, indent=2) + "\n"


def _emit_csv(rows: list[dict[str, Any]]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def _emit(payload: dict[str, Any], fmt: str) -> str:
    return _emit_csv([payload]) if fmt == "csv" else _emit_json(payload)


def _box_of(a: CycloElement, b: CycloElement) -> BoxSpec | None:
    """Smallest B(p, N) holding both elements, if they are integral."""
    if not (a.is_integral() and b.is_integral()):
        return None
    n = max([abs(int(c)) for c in a.coeffs + b.coeffs] + [1])
    return BoxSpec(a.p, n)


# -- subcommands -------------------------------------------------------------


def cmd_norm(args: argparse.Namespace) -> str:
    a = _load_element(args.a, args.p)
    tv = metric.trace_vector(a)
    return _emit_json({
        "element": element_to_json(a),
        "trace": rational_str(metric.trace(a)),
        "trace_vector": tv.to_json(),
        "norm_sq": rational_str(metric.norm_sq(a)),
        "norm": metric.norm(a),
        "euclidean_norm_sq": rational_str(metric.euclidean_norm_sq(a)),
    })


def cmd_distance(args: argparse.Namespace) -> str:
    a = _load_element(args.a, args.p)
    b = _load_element(args.b, a.p)
    d2 = metric.dist_sq(a, b)
    out: dict[str, Any] = {"p": a.p, "dist_sq": rational_str(d2), "dist": metric.sqrt_float(d2)}
    box = BoxSpec(a.p, args.n) if args.n is not None else _box_of(a, b)
    if box is not None:
        out["box"] = {"p": box.p, "N": box.N}
        for mode in metric.Normalization:
            sq = metric.normalized_dist_sq(a, b, box, mode)
            out[f"normalized_{mode.value}_sq"] = rational_str(sq)
            out[f"normalized_{mode.value}"] = metric.sqrt_float(sq)
    return _emit_json(out)


def cmd_galois(args: argparse.Namespace) -> str:
    a = _load_element(args.a, args.p)
    prof = galois.subfield_profile(a)
    return _emit_json({
        "element": element_to_json(a),
        "stabilizer": sorted(prof.stabilizer),
        "degree": prof.degree,
        "conjugates": [element_to_json(c) for c in galois.conjugates(a)],
    })


def cmd_krasner(args: argparse.Namespace) -> str:
    a = _load_element(args.a, args.p)
    b = _load_element(args.b, a.p)
    rep = galois.krasner_check(a, b)
    return _emit_json({
        "hypothesis_holds": rep.hypothesis_holds,
        "conclusion_holds": rep.conclusion_holds,
        "margin": None if rep.margin is None else rational_str(rep.margin),
        "dist_sq": rational_str(rep.dist_sq),
        "min_conjugate_dist_sq": None if rep.min_conjugate_dist_sq is None else rational_str(rep.min_conjugate_dist_sq),
        "degree_a": galois.degree(a),
        "degree_b": galois.degree(b),
    })


def cmd_primitive(args: argparse.Namespace) -> str:
    a = _load_element(args.a, args.p)
    b = _load_element(args.b, a.p)
    res = galois.primitive_element_search(a, b, args.max_n)
    return _emit_json({"n": res.n, "gamma": element_to_json(res.gamma), "degree": res.degree})


def cmd_moments(args: argparse.Namespace) -> str:
    rep = moments.moment_report(BoxSpec(args.p, args.n))
    return _emit({
        "p": args.p,
        "N": args.n,
        "m2": rational_str(rep.m2),
        "m4": rational_str(rep.m4),
        "mu": rational_str(rep.mu),
        "r": rational_str(rep.r_moment),
        "source": rep.source,
    }, args.format)


def cmd_bruteforce(args: argparse.Namespace) -> str:
    box = BoxSpec(args.p, args.n)
    what = args.what
    if what == "m2":
        exact, closed = empirical.brute_moment(box, 2, args.budget), moments.m2_closed(box)
    elif what == "m4":
        exact, closed = empirical.brute_moment(box, 4, args.budget), moments.m4_closed(box)
    elif what == "r":
        exact, closed = empirical.brute_r_moment(box, args.budget), moments.r_moment_closed(box)
    elif what == "dss":
        exact = empirical.brute_double_square_sum(box, True, args.budget)
        closed = moments.double_square_sum_normalized(box)
    else:
        exact, closed = Fraction(empirical.brute_diameter_sq(box, args.budget)), Fraction(metric.diameter_sq(box))
    return _emit({
        "p": args.p,
        "N": args.n,
        "what": what,
        "brute_force": rational_str(exact),
        "closed_form": rational_str(closed),
        "agree": exact == closed,
    }, args.format)


def cmd_concentrate(args: argparse.Namespace) -> str:
    box = BoxSpec(args.p, args.n)
    rep = empirical.concentration_experiment(
        box, args.eps, mode=args.mode, samples=args.samples, seed=args.seed,
        workers=args.workers, budget=args.budget,
    )
    mc = rep.mode == "monte_carlo"
    frac = rep.outlier_fraction
    return _emit({
        "p": box.p,
        "N": box.N,
        "eps": rational_str(rep.epsilon),
        "mode": rep.mode,
        "samples": rep.samples if mc else "",
        "seed": rep.seed if mc else "",
        "outlier_fraction": frac if mc else rational_str(frac),
        "mean_normsq": rep.mean_normsq,
        "chebyshev_bound": rational_str(rep.chebyshev_bound),
    }, args.format)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cyclometric", description="Trace metric on the p-th cyclotomic field.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def elem(sp: argparse.ArgumentParser, *names: str) -> None:
        sp.add_argument("--p", type=int, help="odd prime (needed for bare coefficient lists)")
        for n in names:
            sp.add_argument(f"--{n}", required=True, help="element JSON or path to a JSON file")

    sp = sub.add_parser("norm", help="norm, trace and trace vector of an element")
    elem(sp, "a")
    sp.set_defaults(func=cmd_norm)

    sp = sub.add_parser("distance", help="distance between two elements")
    elem(sp, "a", "b")
    sp.add_argument("--n", type=int, help="box half-width for normalized distances")
    sp.set_defaults(func=cmd_distance)

    sp = sub.add_parser("galois", help="stabilizer, degree and conjugates")
    elem(sp, "a")
    sp.set_defaults(func=cmd_galois)

    sp = sub.add_parser("krasner", help="check the Krasner-type hypothesis and conclusion")
    elem(sp, "a", "b")
    sp.set_defaults(func=cmd_krasner)

    sp = sub.add_parser("primitive", help="smallest n with Q(a + b/n) = Q(a, b)")
    elem(sp, "a", "b")
    sp.add_argument("--max-n", type=int, default=1000)
    sp.set_defaults(func=cmd_primitive)

    def box(sp: argparse.ArgumentParser, formats: bool = True) -> None:
        sp.add_argument("--p", type=int, required=True)
        sp.add_argument("--n", type=int, required=True)
        if formats:
            sp.add_argument("--format", choices=["json", "csv"], default="json")

    budget_default = empirical.default_budget()

    sp = sub.add_parser("moments", help="closed-form M2, M4, mu, R")
    box(sp)
    sp.set_defaults(func=cmd_moments)

    sp = sub.add_parser("bruteforce", help="enumeration oracle next to the closed form")
    box(sp)
    sp.add_argument("--what", choices=["m2", "m4", "r", "diameter", "dss"], required=True)
    sp.add_argument("--budget", type=int, default=budget_default)
    sp.set_defaults(func=cmd_bruteforce)

    sp = sub.add_parser("concentrate", help="fraction of pairs far from 1/sqrt(6)")
    box(sp)
    sp.add_argument("--eps", type=_rational_arg, required=True)
    sp.add_argument("--mode", choices=["exhaustive", "mc"], default="exhaustive")
    sp.add_argument("--samples", type=int, default=100_000)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--workers", type=int, default=None)
    sp.add_argument("--budget", type=int, default=budget_default)
    sp.set_defaults(func=cmd_concentrate)

    return parser


def dispatch(argv: Sequence[str] | None = None) -> tuple[int, str]:
    """Run one command; returns (exit code, stdout text). Errors go to stderr."""
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "samples", 1) < 1:
            raise UsageError("--samples must be at least 1")
        if getattr(args, "seed", 0) < 0:
            raise UsageError("--seed must be nonnegative")
        return 0, args.func(args)
    except ExhaustionError as exc:
        print(f"cyclometric: {exc}", file=sys.stderr)
        return 2, ""
    except (UsageError, CycloError, ValueError, ZeroDivisionError) as exc:
        print(f"cyclometric: {exc}", file=sys.stderr)
        return 1, ""


def main(argv: Sequence[str] | None = None) -> int:
    code, out = dispatch(argv)
    sys.stdout.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
