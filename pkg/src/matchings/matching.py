"""Matchings: bijections carried together with their inverses.

A matching always knows its explicit finite domain and codomain, and both
directions of the map.  Table-backed matchings are built from pair lists;
computed matchings wrap a pair of procedures.  Either way they compose,
invert, add (disjoint union) and multiply (product), and `verify` checks
bijectivity by full enumeration.
"""

from __future__ import annotations

from typing import Callable, Iterable

from .core import (
    Element,
    FiniteSet,
    Pair,
    TagL,
    TagR,
    canon_decode,
    canon_encode,
    product_set,
    sum_set,
)


class NotABijection(Exception):
    """A supplied table or computed map is not a bijection."""


class DomainMismatch(Exception):
    """Carrier sets do not line up for the requested operation."""


class Matching:
    """A bijection f: domain -> codomain together with its inverse.

    kind is "table", "computed" or "memoized"; the algebra does not care,
    but it is useful when reading verification reports.
    """

    __slots__ = ("domain", "codomain", "_fwd", "_bwd", "kind")

    def __init__(
        self,
        domain: FiniteSet,
        codomain: FiniteSet,
        forward: Callable[[Element], Element],
        backward: Callable[[Element], Element],
        kind: str = "computed",
    ):
        if len(domain) != len(codomain):
            raise NotABijection(
                f"carrier sizes differ: |domain|={len(domain)}, |codomain|={len(codomain)}"
            )
        self.domain = domain
        self.codomain = codomain
        self._fwd = forward
        self._bwd = backward
        self.kind = kind

    def forward(self, x: Element) -> Element:
        return self._fwd(x)

    def backward(self, y: Element) -> Element:
        return self._bwd(y)

    __call__ = forward

    def __repr__(self) -> str:
        return f"<matching {self.kind} {len(self.domain)}->{len(self.codomain)}>"


def make_matching(
    domain: FiniteSet,
    codomain: FiniteSet,
    pairs: Iterable[tuple[Element, Element]],
) -> Matching:
    """Table-backed matching from (x, y) pairs covering both carriers exactly once."""
    fwd: dict[Element, Element] = {}
    bwd: dict[Element, Element] = {}
    for x, y in pairs:
        if x not in domain:
            raise NotABijection(f"left entry {canon_encode(x)} not in domain")
        if y not in codomain:
            raise NotABijection(f"right entry {canon_encode(y)} not in codomain")
        if x in fwd:
            raise NotABijection(f"duplicate left entry {canon_encode(x)}")
        if y in bwd:
            raise NotABijection(f"duplicate right entry {canon_encode(y)}")
        fwd[x] = y
        bwd[y] = x
    if len(fwd) != len(domain):
        missing = next(x for x in domain if x not in fwd)
        raise NotABijection(f"domain element {canon_encode(missing)} not covered")
    if len(bwd) != len(codomain):
        missing = next(y for y in codomain if y not in bwd)
        raise NotABijection(f"codomain element {canon_encode(missing)} not covered")
    return Matching(domain, codomain, fwd.__getitem__, bwd.__getitem__, kind="table")


def identity_matching(a: FiniteSet) -> Matching:
    return Matching(a, a, lambda x: x, lambda x: x, kind="table")


def invert(f: Matching) -> Matching:
    """Swap the two directions; the inverse is already known."""
    return Matching(f.codomain, f.domain, f._bwd, f._fwd, kind=f.kind)


def compose(f: Matching, g: Matching) -> Matching:
    """g after f: a matching f.domain -> g.codomain."""
    if not f.codomain.same_elements(g.domain):
        raise DomainMismatch("codomain of f and domain of g differ")
    return Matching(
        f.domain,
        g.codomain,
        lambda x: g._fwd(f._fwd(x)),
        lambda y: f._bwd(g._bwd(y)),
    )


def add_matchings(f: Matching, g: Matching) -> Matching:
    """Disjoint-union sum: (A+C) matched with (B+D)."""

    def fwd(e: Element) -> Element:
        if isinstance(e, TagL):
            return TagL(f._fwd(e.value))
        if isinstance(e, TagR):
            return TagR(g._fwd(e.value))
        raise DomainMismatch(f"untagged element {canon_encode(e)}")

    def bwd(e: Element) -> Element:
        if isinstance(e, TagL):
            return TagL(f._bwd(e.value))
        if isinstance(e, TagR):
            return TagR(g._bwd(e.value))
        raise DomainMismatch(f"untagged element {canon_encode(e)}")

    return Matching(sum_set(f.domain, g.domain), sum_set(f.codomain, g.codomain), fwd, bwd)


def mul_matchings(f: Matching, g: Matching) -> Matching:
    """Product: (A x C) matched with (B x D), componentwise."""

    def fwd(e: Element) -> Element:
        return Pair(f._fwd(e.left), g._fwd(e.right))

    def bwd(e: Element) -> Element:
        return Pair(f._bwd(e.left), g._bwd(e.right))

    return Matching(
        product_set(f.domain, g.domain), product_set(f.codomain, g.codomain), fwd, bwd
    )


class CheckResult:
    __slots__ = ("name", "passed", "witness")

    def __init__(self, name: str, passed: bool, witness: str | None = None):
        self.name = name
        self.passed = passed
        self.witness = witness

    def __repr__(self) -> str:
        if self.passed:
            return f"{self.name}: pass"
        return f"{self.name}: FAIL ({self.witness})"


class VerificationReport:
    """Outcome of enumerating a matching in both directions."""

    __slots__ = ("checks",)

    def __init__(self, checks: list[CheckResult]):
        self.checks = tuple(checks)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failure_summary(self) -> str:
        bad = [repr(c) for c in self.checks if not c.passed]
        return "; ".join(bad) if bad else "all checks passed"

    def __repr__(self) -> str:
        return f"<verification {'pass' if self.passed else self.failure_summary()}>"


class _StepBudget:
    __slots__ = ("left",)

    def __init__(self, steps: int | None):
        self.left = steps

    def spend(self) -> bool:
        if self.left is None:
            return True
        if self.left <= 0:
            return False
        self.left -= 1
        return True


def verify(f: Matching, step_budget: int | None = None) -> VerificationReport:
    """Enumerate both carriers and check totality, image membership,
    injectivity, and round trips.  Failures are reported, never raised.
    """
    budget = _StepBudget(step_budget)
    totality: str | None = None
    image: str | None = None
    injectivity: str | None = None
    round_trip: str | None = None

    for direction, src, dst, apply_one, apply_back in (
        ("forward", f.domain, f.codomain, f._fwd, f._bwd),
        ("backward", f.codomain, f.domain, f._bwd, f._fwd),
    ):
        seen: dict[Element, Element] = {}
        for x in src:
            if not budget.spend():
                totality = totality or f"{direction}: evaluation budget exhausted"
                break
            try:
                y = apply_one(x)
            except Exception as exc:  # verification, not control flow
                if totality is None:
                    totality = f"{direction} undefined at {canon_encode(x)}: {exc}"
                continue
            if y not in dst:
                if image is None:
                    image = f"{direction}({canon_encode(x)}) = {canon_encode(y)} not in target"
                continue
            if y in seen:
                if injectivity is None:
                    injectivity = (
                        f"{direction} maps {canon_encode(seen[y])} and "
                        f"{canon_encode(x)} both to {canon_encode(y)}"
                    )
                continue
            seen[y] = x
            if not budget.spend():
                totality = totality or f"{direction}: evaluation budget exhausted"
                break
            try:
                back = apply_back(y)
            except Exception as exc:
                if round_trip is None:
                    round_trip = f"inverse of {direction} undefined at {canon_encode(y)}: {exc}"
                continue
            if back != x:
                if round_trip is None:
                    round_trip = (
                        f"{direction} round trip at {canon_encode(x)}: "
                        f"came back as {canon_encode(back)}"
                    )

    return VerificationReport(
        [
            CheckResult("totality", totality is None, totality),
            CheckResult("image", image is None, image),
            CheckResult("injectivity", injectivity is None, injectivity),
            CheckResult("round-trip", round_trip is None, round_trip),
        ]
    )


def memoize(f: Matching) -> Matching:
    """Same matching, but each direction is evaluated at most once per argument.

    Caches are keyed by canonical encoding and are independent per direction.
    """
    fwd_cache: dict[str, Element] = {}
    bwd_cache: dict[str, Element] = {}

    def fwd(x: Element) -> Element:
        key = canon_encode(x)
        if key not in fwd_cache:
            fwd_cache[key] = f._fwd(x)
        return fwd_cache[key]

    def bwd(y: Element) -> Element:
        key = canon_encode(y)
        if key not in bwd_cache:
            bwd_cache[key] = f._bwd(y)
        return bwd_cache[key]

    return Matching(f.domain, f.codomain, fwd, bwd, kind="memoized")


def same_pointwise(f: Matching, g: Matching) -> bool:
    """True iff the carriers agree as sets and forward maps agree everywhere."""
    if not (f.domain.same_elements(g.domain) and f.codomain.same_elements(g.codomain)):
        return False
    return all(f._fwd(x) == g._fwd(x) for x in f.domain)


def to_table_text(f: Matching) -> str:
    """Line-oriented serialization: one "encode(x) -> encode(y)" per domain element."""
    return "\n".join(
        f"{canon_encode(x)} -> {canon_encode(f._fwd(x))}" for x in f.domain
    )


def from_table_text(text: str) -> Matching:
    """Rebuild a table-backed matching from to_table_text output.

    The domain takes the left column's order, the codomain the right column's.
    """
    pairs = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        lhs, sep, rhs = line.partition(" -> ")
        if not sep:
            raise ValueError(f"bad table line {line!r}")
        pairs.append((canon_decode(lhs), canon_decode(rhs)))
    domain = FiniteSet(x for x, _ in pairs)
    codomain = FiniteSet(y for _, y in pairs)
    return make_matching(domain, codomain, pairs)
