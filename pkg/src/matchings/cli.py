"""Batch command-line front end.

    matchings binom 5 2            print the k-subset/complement table
    matchings verify-binom 5 2     totality + bijectivity + round trip
    matchings props                seeded randomized property suites
    matchings incexc-demo          inclusion-exclusion on a diamond poset

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .binom import choose_set, match_binom
from .core import FiniteSet, Int, Pair, canon_encode, pyvalue
from .incexc import IndexedFamily, Poset, inclusion_exclusion
from .matching import make_matching, verify
from .props import incexc_suite, subtraction_suite
from .xdiv import as_matchings, check_total

MAX_N = 10
DEFAULT_BUDGET = 10**7
DEFAULT_SEED = 0
DEFAULT_CASES = 200


def _usage_error(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return 2


def _check_nk(n: int, k: int) -> str | None:
    if n > MAX_N:
        return f"n is capped at {MAX_N} (carrier sizes grow like n!), got n={n}"
    if n < 0 or not 0 <= k <= n:
        return f"need 0 <= k <= n, got n={n}, k={k}"
    return None


def cmd_binom(n: int, k: int, fmt: str, budget: int) -> int:
    bad = _check_nk(n, k)
    if bad:
        return _usage_error(bad)
    pair = match_binom(n, k, budget=budget)
    totality = check_total(pair)
    if not totality.total:
        print(f"verification failure: {totality.witness_text()}", file=sys.stderr)
        return 1
    rows = [(x, pair.f_outcomes[x].value) for x in pair.A]
    if fmt == "json":
        doc = {
            "n": n,
            "k": k,
            "pairs": [[pyvalue(x), pyvalue(y)] for x, y in rows],
        }
        print(json.dumps(doc))
    else:
        for x, y in rows:
            print(canon_encode(Pair(x, y)))
    return 0


def cmd_verify_binom(n: int, k: int, budget: int) -> int:
    bad = _check_nk(n, k)
    if bad:
        return _usage_error(bad)
    pair = match_binom(n, k, budget=budget)
    totality = check_total(pair)
    if not totality.total:
        print(f"not total: {totality.witness_text()}")
        return 1
    forward, _ = as_matchings(pair)
    report = verify(forward)
    if not report.passed:
        print(f"not a bijection: {report.failure_summary()}")
        return 1
    for x in pair.A:
        back = pair.g_outcomes[pair.f_outcomes[x].value].value
        if back != x:
            print(
                f"round trip failed: {canon_encode(x)} -> "
                f"{canon_encode(pair.f_outcomes[x].value)} -> {canon_encode(back)}"
            )
            return 1
    print("True")
    return 0


def cmd_props(seed: int, cases: int) -> int:
    if cases < 1:
        return _usage_error(f"cases must be at least 1, got {cases}")
    results = subtraction_suite(seed, cases) + incexc_suite(seed, cases)
    failed = None
    for r in results:
        print(r.line())
        if failed is None and not r.passed:
            failed = r
    if failed is not None:
        print("first counterexample:")
        print(failed.counterexample)
        return 1
    print("all properties passed")
    return 0


def _demo_instance(one_point: bool):
    """A fixed instance: rotations over a diamond (or a single point)."""
    if one_point:
        poset = Poset(FiniteSet([Int(0)]))
        sizes = {Int(0): 3}
        rotations = {Int(0): 1}
    else:
        points = [Int(i) for i in range(4)]
        poset = Poset(
            FiniteSet(points),
            [(points[0], points[1]), (points[0], points[2]),
             (points[1], points[3]), (points[2], points[3])],
        )
        sizes = {points[0]: 2, points[1]: 1, points[2]: 2, points[3]: 1}
        rotations = {points[0]: 1, points[1]: 2, points[2]: 3, points[3]: 5}
    fam_a = IndexedFamily(
        poset, {p: FiniteSet(Int(i) for i in range(sizes[p])) for p in poset.points}
    )
    fam_b = IndexedFamily(
        poset, {p: FiniteSet(Int(10 + i) for i in range(sizes[p])) for p in poset.points}
    )
    gs = {}
    for p in poset.points:
        dom = fam_a.down_carrier(p).elements
        cod = fam_b.down_carrier(p).elements
        r = rotations[p] % max(len(dom), 1)
        pairs = [(dom[i], cod[(i + r) % len(cod)]) for i in range(len(dom))]
        gs[p] = make_matching(fam_a.down_carrier(p), fam_b.down_carrier(p), pairs)
    return fam_a, fam_b, gs


def cmd_incexc_demo(fmt: str, one_point: bool, budget: int) -> int:
    fam_a, fam_b, gs = _demo_instance(one_point)
    fs = inclusion_exclusion(fam_a, fam_b, gs, step_budget=budget)
    for p, f_p in fs.items():
        report = verify(f_p)
        if not report.passed:
            print(
                f"verification failure at {canon_encode(p)}: {report.failure_summary()}",
                file=sys.stderr,
            )
            return 1
    if fmt == "json":
        doc = {
            "points": [canon_encode(p) for p in fam_a.poset.points],
            "matchings": {
                canon_encode(p): [
                    [canon_encode(x), canon_encode(fs[p].forward(x))]
                    for x in fs[p].domain
                ]
                for p in fam_a.poset.points
            },
        }
        print(json.dumps(doc))
    else:
        for p in fam_a.poset.points:
            print(f"p: {canon_encode(p)}")
            for x in fs[p].domain:
                print(f"{canon_encode(x)} -> {canon_encode(fs[p].forward(x))}")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="matchings", description="an algebra of finite bijections"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    budget = argparse.ArgumentParser(add_help=False)
    budget.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                        help="application budget for derived maps")

    p_binom = sub.add_parser("binom", parents=[budget],
                             help="print the k-subset/complement matching table")
    p_binom.add_argument("n", type=int)
    p_binom.add_argument("k", type=int)
    p_binom.add_argument("--format", choices=("paper", "json"), default="paper")

    p_verify = sub.add_parser("verify-binom", parents=[budget],
                              help="check the binomial matching end to end")
    p_verify.add_argument("n", type=int)
    p_verify.add_argument("k", type=int)

    p_props = sub.add_parser("props", parents=[budget],
                             help="run the randomized property suites")
    p_props.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p_props.add_argument("--cases", type=int, default=DEFAULT_CASES)

    p_demo = sub.add_parser("incexc-demo", parents=[budget],
                            help="inclusion-exclusion over a diamond poset")
    p_demo.add_argument("--format", choices=("paper", "json"), default="paper")
    p_demo.add_argument("--one-point", action="store_true",
                        help="use a one-point poset instead of the diamond")

    return parser


def main(argv: list[str] | None = None) -> int:
    try:
        args = _build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.command == "binom":
        return cmd_binom(args.n, args.k, args.format, args.budget)
    if args.command == "verify-binom":
        return cmd_verify_binom(args.n, args.k, args.budget)
    if args.command == "props":
        return cmd_props(args.seed, args.cases)
    if args.command == "incexc-demo":
        return cmd_incexc_demo(args.format, args.one_point, args.budget)
    raise AssertionError(f"unhandled command {args.command}")


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
