"""Inclusion-exclusion of matchings over a finite poset.

Given disjoint families A_p, B_p indexed by a poset and a matching g_p
between the down-set unions A_{<=p} and B_{<=p} for every p, a mutual
recursion produces a matching between A_p and B_p directly.  Each step
applies some g_q and bounces between the two families until the image
projects onto p itself; memoizing both directions keeps repeated walks
cheap.
"""

from __future__ import annotations

from typing import Iterable, Mapping

from .core import Element, FiniteSet, Pair, canon_encode, split_top_level
from .matching import Matching


class UnknownPoint(Exception):
    """A point outside the poset was used as an index."""


class CarrierMismatch(Exception):
    """Family parts or down-set matchings do not line up with the poset."""


class RecursionOverflow(Exception):
    """The walk exceeded its step budget; the supplied matchings are suspect."""


class Poset:
    """Explicit finite poset with a precomputed reflexive-transitive closure."""

    __slots__ = ("points", "_leq")

    def __init__(self, points: FiniteSet, relations: Iterable[tuple[Element, Element]] = ()):
        self.points = points
        n = len(points)
        leq = [[False] * n for _ in range(n)]
        for i in range(n):
            leq[i][i] = True
        for q, p in relations:
            if q not in points:
                raise UnknownPoint(f"unknown point {canon_encode(q)}")
            if p not in points:
                raise UnknownPoint(f"unknown point {canon_encode(p)}")
            leq[points.index_of(q)][points.index_of(p)] = True
        for k in range(n):
            col = leq[k]
            for i in range(n):
                if leq[i][k]:
                    row = leq[i]
                    for j in range(n):
                        if col[j]:
                            row[j] = True
        for i in range(n):
            for j in range(i + 1, n):
                if leq[i][j] and leq[j][i]:
                    raise ValueError(
                        f"not antisymmetric: {canon_encode(points.elements[i])} and "
                        f"{canon_encode(points.elements[j])} are mutually below each other"
                    )
        self._leq = leq

    def _idx(self, p: Element) -> int:
        try:
            return self.points.index_of(p)
        except KeyError:
            raise UnknownPoint(f"unknown point {canon_encode(p)}") from None

    def leq(self, q: Element, p: Element) -> bool:
        return self._leq[self._idx(q)][self._idx(p)]

    def down_set(self, p: Element) -> FiniteSet:
        """All q <= p, in the poset's enumeration order."""
        i = self._idx(p)
        return FiniteSet(q for j, q in enumerate(self.points) if self._leq[j][i])

    def is_minimal(self, p: Element) -> bool:
        i = self._idx(p)
        return all(not self._leq[j][i] for j in range(len(self.points)) if j != i)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Poset)
            and other.points == self.points
            and other._leq == self._leq
        )

    def __hash__(self):
        return hash((self.points, tuple(map(tuple, self._leq))))

    def relation_pairs(self) -> list[tuple[Element, Element]]:
        """All q <= p with q != p, in enumeration order."""
        pts = self.points.elements
        return [
            (pts[i], pts[j])
            for i in range(len(pts))
            for j in range(len(pts))
            if i != j and self._leq[i][j]
        ]


def down_set(poset: Poset, p: Element) -> FiniteSet:
    return poset.down_set(p)


class IndexedFamily:
    """Disjoint family of finite sets over a poset.

    A member x of the part at p is realized as the element (p, x), so parts
    are disjoint by construction and projection reads the first component.
    """

    __slots__ = ("poset", "parts")

    def __init__(self, poset: Poset, parts: Mapping[Element, FiniteSet]):
        for p in parts:
            if p not in poset.points:
                raise UnknownPoint(f"part indexed by unknown point {canon_encode(p)}")
        self.poset = poset
        self.parts = {p: parts.get(p, FiniteSet()) for p in poset.points}

    def part(self, p: Element) -> FiniteSet:
        if p not in self.poset.points:
            raise UnknownPoint(f"unknown point {canon_encode(p)}")
        return self.parts[p]

    def carrier(self, p: Element) -> FiniteSet:
        """The part at p, realized as (p, x) elements."""
        return FiniteSet(Pair(p, x) for x in self.part(p))

    def down_carrier(self, p: Element) -> FiniteSet:
        """Union of carriers over the down-set of p."""
        members = []
        for q in self.poset.down_set(p):
            members.extend(Pair(q, x) for x in self.parts[q])
        return FiniteSet(members)

    def total_set(self) -> FiniteSet:
        members = []
        for p in self.poset.points:
            members.extend(Pair(p, x) for x in self.parts[p])
        return FiniteSet(members)

    def project(self, e: Element) -> Element:
        """The index point of a realized member."""
        if not isinstance(e, Pair):
            raise CarrierMismatch(f"not a family member: {canon_encode(e)}")
        p = e.left
        if p not in self.poset.points:
            raise CarrierMismatch(f"member {canon_encode(e)} projects outside the poset")
        if e.right not in self.parts[p]:
            raise CarrierMismatch(f"member {canon_encode(e)} is not in the part at {canon_encode(p)}")
        return p


DEFAULT_STEP_BUDGET = 10**6


class _Walk:
    """Shared evaluation state for one inclusion_exclusion invocation."""

    __slots__ = ("fam_a", "fam_b", "gs", "memoized", "budget", "memo_f", "memo_fbar")

    def __init__(self, fam_a, fam_b, gs, memoized, budget):
        self.fam_a = fam_a
        self.fam_b = fam_b
        self.gs = gs
        self.memoized = memoized
        self.budget = budget
        self.memo_f: dict[tuple[Element, Element], Element] = {}
        self.memo_fbar: dict[tuple[Element, Element], Element] = {}

    def _step(self, down: bool, p: Element, x: Element) -> tuple[Element, Element]:
        """One g application plus projection; returns (image, its point)."""
        g = self.gs[p]
        y = g.forward(x) if down else g.backward(x)
        target = self.fam_b if down else self.fam_a
        q = target.project(y)
        if not self.fam_a.poset.leq(q, p):
            raise CarrierMismatch(
                f"g at {canon_encode(p)} left the down-set: "
                f"{canon_encode(x)} -> {canon_encode(y)}"
            )
        return y, q

    def eval(self, down: bool, p: Element, x: Element) -> Element:
        """Evaluate F(p, x) (down=True) or its mirror, without native recursion.

        The two recursions are mutually tail-calling: each resolved inner
        value re-enters the same frame with a new argument, so a frame is
        just (direction, point) plus the chain of argument keys that will
        share its final value.
        """
        memo = (self.memo_f, self.memo_fbar)
        steps = 0
        wait: list[tuple[bool, Element, list[tuple[Element, Element]]]] = []
        cur_down, cur_p, cur_x = down, p, x
        chain = [(cur_p, cur_x)]
        while True:
            table = memo[0 if cur_down else 1]
            hit = table.get((cur_p, cur_x)) if self.memoized else None
            if hit is not None:
                value = hit
            else:
                steps += 1
                if steps > self.budget:
                    trail = " <- ".join(
                        f"{canon_encode(wp)}" for _, wp, _ in wait[-6:]
                    )
                    raise RecursionOverflow(
                        f"budget of {self.budget} steps exhausted at "
                        f"point {canon_encode(cur_p)}, argument {canon_encode(cur_x)}"
                        + (f" (pending points: {trail})" if trail else "")
                    )
                y, q = self._step(cur_down, cur_p, cur_x)
                if q != cur_p:
                    # need the mirror walk at (q, y); afterwards this frame
                    # re-enters with the returned value
                    wait.append((cur_down, cur_p, chain))
                    cur_down = not cur_down
                    cur_p, cur_x = q, y
                    chain = [(cur_p, cur_x)]
                    continue
                value = y
            if self.memoized:
                table = memo[0 if cur_down else 1]
                for key in chain:
                    table[key] = value
            if not wait:
                return value
            cur_down, cur_p, chain = wait.pop()
            cur_x = value
            chain.append((cur_p, cur_x))


def inclusion_exclusion(
    fam_a: IndexedFamily,
    fam_b: IndexedFamily,
    gs: Mapping[Element, Matching],
    memoized: bool = True,
    step_budget: int = DEFAULT_STEP_BUDGET,
) -> dict[Element, Matching]:
    """Per-point matchings A_p = B_p from down-set matchings g_p.

    All returned matchings share one memo table pair, owned by this
    invocation.  The step budget bounds each forward/backward evaluation;
    valid inputs terminate well inside it, so hitting it is diagnostic.
    """
    if fam_a.poset != fam_b.poset:
        raise CarrierMismatch("families live over different posets")
    for p in fam_a.poset.points:
        if p not in gs:
            raise CarrierMismatch(f"no down-set matching supplied for {canon_encode(p)}")
        g = gs[p]
        if not g.domain.same_elements(fam_a.down_carrier(p)):
            raise CarrierMismatch(
                f"domain of g at {canon_encode(p)} is not the down-set union of A"
            )
        if not g.codomain.same_elements(fam_b.down_carrier(p)):
            raise CarrierMismatch(
                f"codomain of g at {canon_encode(p)} is not the down-set union of B"
            )

    walk = _Walk(fam_a, fam_b, dict(gs), memoized, step_budget)
    result: dict[Element, Matching] = {}
    for p in fam_a.poset.points:
        def fwd(x: Element, _p: Element = p) -> Element:
            return walk.eval(True, _p, x)

        def bwd(y: Element, _p: Element = p) -> Element:
            return walk.eval(False, _p, y)

        result[p] = Matching(fam_a.carrier(p), fam_b.carrier(p), fwd, bwd)
    return result


# ---------------------------------------------------------------------------
# text formats
# ---------------------------------------------------------------------------

def parse_poset(text: str) -> Poset:
    """Poset from a points declaration line plus "q <= p" lines.

        points: 0, 1, 2, 3
        0 <= 1
        0 <= 2

    Blank lines and lines starting with "#" are ignored.
    """
    from .core import canon_decode

    points: FiniteSet | None = None
    relations: list[tuple[Element, Element]] = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("points:"):
            if points is not None:
                raise ValueError("duplicate points declaration")
            body = line[len("points:"):].strip()
            names = split_top_level(body) if body else []
            points = FiniteSet(canon_decode(s) for s in names)
            continue
        lhs, sep, rhs = line.partition(" <= ")
        if not sep:
            raise ValueError(f"bad poset line {line!r}")
        relations.append((canon_decode(lhs.strip()), canon_decode(rhs.strip())))
    if points is None:
        raise ValueError("missing points declaration")
    return Poset(points, relations)


def poset_to_text(poset: Poset) -> str:
    lines = ["points: " + ", ".join(canon_encode(p) for p in poset.points)]
    lines += [f"{canon_encode(q)} <= {canon_encode(p)}" for q, p in poset.relation_pairs()]
    return "\n".join(lines)


def parse_family(text: str, poset: Poset) -> IndexedFamily:
    """Family from "p: element" lines; line order fixes part enumeration order."""
    from .core import canon_decode

    members: dict[Element, list[Element]] = {p: [] for p in poset.points}
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        lhs, sep, rhs = line.partition(": ")
        if not sep:
            raise ValueError(f"bad family line {line!r}")
        p = canon_decode(lhs.strip())
        if p not in poset.points:
            raise UnknownPoint(f"unknown point {canon_encode(p)}")
        members[p].append(canon_decode(rhs.strip()))
    return IndexedFamily(poset, {p: FiniteSet(v) for p, v in members.items()})


def family_to_text(family: IndexedFamily) -> str:
    lines = []
    for p in family.poset.points:
        lines += [f"{canon_encode(p)}: {canon_encode(x)}" for x in family.parts[p]]
    return "\n".join(lines)
