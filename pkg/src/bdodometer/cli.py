"""Command-line front end.

Exit status is 0 on success, 1 on domain errors (for instance the partial
odometer applied to the all-max point), 2 on usage errors.  ``verify``
exits 0 exactly when every check passes.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Optional, Sequence

from .compactification import Neighborhood, converges_to, membership
from .mixedradix import CantorPoint, Nat, all_words, n_index, parse_schedule, to_digits
from .odometer import (
    DomainError,
    cylinder_measure,
    cylinder_visits,
    format_point,
    odometer_partial,
    orbit,
    parse_point,
)
from .operator_model import DEFAULT_EPS, format_grid, theta, unweighted_shift
from .verify import DEFAULT_SEED, VerifyConfig, run_all


def _schedule(text: str):
    try:
        return parse_schedule(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bdodometer", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--schedule", required=True, type=_schedule,
                       help='radices "q0,q1,..." (repeat last) or "q0,q1,...*" (cycle)')
        p.add_argument("--json", action="store_true", help="emit JSON")
        return p

    p = add("digits", "mixed-radix digits of an integer")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)

    p = add("orbit", "iterate the map f on X")
    p.add_argument("--start", required=True, help='zeros, max, nat:<n> or "d0,d1,...|Z" / "...|M"')
    p.add_argument("--steps", type=int, default=1)
    p.add_argument("--partial", action="store_true", help="use the partial odometer on K")

    p = add("visits", "count level-k cylinder visits along an orbit")
    p.add_argument("--start", required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--k", type=int, required=True)

    p = add("neighborhood", "list the naturals in V_k of a Cantor point")
    p.add_argument("--start", required=True, help="center of the neighborhood")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, help="also test membership of this natural")
    p.add_argument("--bound", type=int, help="enumerate naturals below this (default 4 n_k + k)")

    p = add("converge", "test convergence of a finite sequence of naturals")
    p.add_argument("--start", required=True, help="candidate limit point in K")
    p.add_argument("--k", type=int, required=True, help="resolution k_max")
    p.add_argument("--seq", help="comma separated naturals (default n_j - 1, j = 1..k+1)")

    p = add("measure", "exact cylinder measures next to empirical orbit frequencies")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--start", default="zeros")

    p = add("verify", "run the verification suite")
    p.add_argument("--dim", type=int, default=64)
    p.add_argument("--eps", type=float, default=DEFAULT_EPS)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--k", type=int, default=3, help="deepest level for exhaustive checks")
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--dump", action="store_true", help="print the truncated shift and theta(1)")
    return parser


def _cantor(text: str, schedule) -> CantorPoint:
    point = parse_point(text, schedule)
    if not isinstance(point, CantorPoint):
        raise ValueError(f"{text!r} is not a point of the Cantor set")
    return point


def cmd_digits(args, out):
    word = to_digits(args.n, args.k, args.schedule)
    if args.json:
        print(json.dumps({"n": args.n, "k": args.k, "digits": list(word.digits)}), file=out)
    else:
        print(str(word), file=out)


def cmd_orbit(args, out):
    start = parse_point(args.start, args.schedule)
    if args.steps < 0:
        raise ValueError("--steps must be nonnegative")
    if args.partial and isinstance(start, CantorPoint):
        points = [start]
        for _ in range(args.steps):
            points.append(odometer_partial(points[-1]))
    else:
        points = list(orbit(start, args.steps).points)
    if args.json:
        print(json.dumps({"start": format_point(start), "steps": args.steps,
                          "points": [format_point(p) for p in points]}), file=out)
    else:
        for p in points:
            print(format_point(p), file=out)


def cmd_visits(args, out):
    rec = orbit(parse_point(args.start, args.schedule), args.steps)
    counts = cylinder_visits(rec.points[: args.steps], args.k, args.schedule)
    rows = [(str(b), counts[b.digits]) for b in all_words(args.schedule, args.k)]
    if args.json:
        print(json.dumps({"k": args.k, "steps": args.steps, "visits": dict(rows)}), file=out)
    else:
        for word, c in rows:
            print(f"{word or '()':>16} {c}", file=out)


def cmd_neighborhood(args, out):
    V = Neighborhood(_cantor(args.start, args.schedule), args.k)
    bound = args.bound if args.bound is not None else 4 * n_index(args.schedule, args.k) + args.k
    naturals = V.naturals(bound)
    doc = {"center": format_point(V.center), "k": args.k, "bound": bound, "naturals": naturals}
    if args.n is not None:
        doc["member"] = membership(Nat(args.n), V)
    if args.json:
        print(json.dumps(doc), file=out)
    else:
        print(f"V_{args.k}({doc['center']}) naturals < {bound}: {naturals}", file=out)
        if "member" in doc:
            print(f"{args.n} in V_{args.k}: {str(doc['member']).lower()}", file=out)


def cmd_converge(args, out):
    gamma = _cantor(args.start, args.schedule)
    if args.seq:
        seq = [int(t) for t in args.seq.split(",")]
    else:
        seq = [n_index(args.schedule, j) - 1 for j in range(1, args.k + 2)]
    result = converges_to(seq, gamma, args.k)
    if args.json:
        print(json.dumps({"seq": seq, "limit": format_point(gamma), "k": args.k,
                          "converges": result}), file=out)
    else:
        print(str(result).lower(), file=out)


def cmd_measure(args, out):
    sched = args.schedule
    T = args.steps
    if T <= 0:
        raise ValueError("--steps must be positive")
    rec = orbit(parse_point(args.start, sched), T)
    counts = cylinder_visits(rec.points[:T], args.k, sched)
    bound = Fraction(n_index(sched, args.k), T)
    rows = []
    for beta in all_words(sched, args.k):
        mu = cylinder_measure(beta)
        freq = Fraction(counts[beta.digits], T)
        rows.append({"beta": list(beta.digits), "measure": str(mu), "frequency": str(freq),
                     "deviation": str(abs(freq - mu)), "within_bound": abs(freq - mu) <= bound})
    if args.json:
        print(json.dumps({"k": args.k, "steps": T, "bound": str(bound), "cylinders": rows}), file=out)
    else:
        print(f"{'cylinder':>16} {'measure':>10} {'frequency':>12}  bound {bound}", file=out)
        for r in rows:
            word = ",".join(map(str, r["beta"])) or "()"
            flag = "" if r["within_bound"] else "  !"
            print(f"{word:>16} {r['measure']:>10} {r['frequency']:>12}{flag}", file=out)


def cmd_verify(args, out):
    cfg = VerifyConfig(args.schedule, dim=args.dim, eps=args.eps, seed=args.seed,
                       max_level=args.k, trials=args.trials)
    report = run_all(cfg)
    if args.dump:
        S = unweighted_shift(args.dim)
        print("S =", file=out)
        print(format_grid(S.real), file=out)
        print("theta(1) =", file=out)
        print(format_grid(theta(S.conj().T @ S).real), file=out)
    if args.json:
        print(json.dumps(report, indent=2), file=out)
    else:
        for c in report["checks"]:
            verdict = "PASS" if c["pass"] else "FAIL"
            print(f"{verdict}  {c['name']:<24} residual={c['residual']:.3g}", file=out)
        print("all checks passed" if report["pass"] else "some checks FAILED", file=out)
    return 0 if report["pass"] else 1


COMMANDS = {
    "digits": cmd_digits,
    "orbit": cmd_orbit,
    "visits": cmd_visits,
    "neighborhood": cmd_neighborhood,
    "converge": cmd_converge,
    "measure": cmd_measure,
    "verify": cmd_verify,
}


def run(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args, out) or 0
    except DomainError as exc:
        print(f"domain error: {exc}", file=err)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=err)
        return 1


def main() -> None:
    sys.exit(run())
