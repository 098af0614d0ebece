"""Randomized property suites for subtraction and poset inclusion-exclusion.

Everything is driven by one seeded generator per suite, so a failing case
is reproducible from (seed, case index) alone.  Each property runs over
its own instance list and reports the case count plus the first
counterexample, serialized; exceptions raised mid-check count as
counterexamples, not crashes.
"""

from __future__ import annotations

import random

from .core import Element, FiniteSet, Int, TagL, TagR, canon_encode, sum_set
from .incexc import IndexedFamily, Poset, inclusion_exclusion
from .matching import Matching, make_matching, same_pointwise, to_table_text, verify
from .subtraction import (
    LoopStats,
    SubtractionInstance,
    double_subtract,
    respectful_subtract,
    respects,
    subtract,
)


class PropertyResult:
    __slots__ = ("name", "cases", "passed", "counterexample")

    def __init__(self, name: str, cases: int, passed: bool, counterexample: str | None = None):
        self.name = name
        self.cases = cases
        self.passed = passed
        self.counterexample = counterexample

    def line(self) -> str:
        if self.passed:
            return f"{self.name}: ok ({self.cases} cases)"
        return f"{self.name}: FAIL ({self.cases} cases)"


def _run_property(name, instances, check) -> PropertyResult:
    for i, inst in enumerate(instances):
        try:
            msg = check(inst)
        except Exception as exc:
            msg = f"raised {type(exc).__name__}: {exc}"
        if msg:
            detail = f"case {i}: {msg}\n{inst.describe()}"
            return PropertyResult(name, len(instances), False, detail)
    return PropertyResult(name, len(instances), True)


# ---------------------------------------------------------------------------
# subtraction
# ---------------------------------------------------------------------------

def random_subtraction_instance(rng: random.Random, max_side: int = 6) -> SubtractionInstance:
    """Random f: A+C = B+D and g: C = D with |A|,|C| <= max_side.

    Half the time g is planted to respect f, so both branches of the
    respectfulness-sensitive propositions get exercised.
    """
    a_size = rng.randint(0, max_side)
    c_size = rng.randint(0, max_side)
    A = FiniteSet(Int(i) for i in range(a_size))
    B = FiniteSet(Int(100 + i) for i in range(a_size))
    C = FiniteSet(Int(i) for i in range(c_size))
    D = FiniteSet(Int(100 + i) for i in range(c_size))
    domain = sum_set(A, C)
    codomain = sum_set(B, D)
    targets = list(codomain)
    rng.shuffle(targets)
    f = make_matching(domain, codomain, zip(domain, targets))

    if rng.random() < 0.5:
        # agree with f wherever it maps C into D; pair off the rest randomly
        pairs = []
        used_c, used_d = set(), set()
        for x in C:
            y = f.forward(TagR(x))
            if isinstance(y, TagR):
                pairs.append((x, y.value))
                used_c.add(x)
                used_d.add(y.value)
        free_c = [x for x in C if x not in used_c]
        free_d = [y for y in D if y not in used_d]
        rng.shuffle(free_d)
        pairs.extend(zip(free_c, free_d))
        g = make_matching(C, D, pairs)
    else:
        d_targets = list(D)
        rng.shuffle(d_targets)
        g = make_matching(C, D, zip(C, d_targets))
    return SubtractionInstance.from_matchings(f, g)


def _check_subtract_sound(inst: SubtractionInstance) -> str | None:
    stats = LoopStats()
    report = verify(subtract(inst.f, inst.g, stats=stats))
    if not report.passed:
        return f"subtract result failed verification: {report.failure_summary()}"
    if stats.max_iterations > len(inst.D):
        return f"walk took {stats.max_iterations} iterations with |D| = {len(inst.D)}"
    return None


def _check_result_respects(inst: SubtractionInstance) -> str | None:
    from .subtraction import check_result_respects

    if not check_result_respects(inst.f, inst.g):
        return "subtraction result does not respect f"
    return None


def _check_idempotence(inst: SubtractionInstance) -> str | None:
    expected = respects(inst.g, inst.f)
    agrees = same_pointwise(double_subtract(inst.f, inst.g), inst.g)
    if agrees != expected:
        return f"double subtraction {'equals' if agrees else 'differs from'} g but respects(g, f) is {expected}"
    return None


def _check_closure(inst: SubtractionInstance) -> str | None:
    from .subtraction import swap_roles

    once = subtract(inst.f, inst.g)
    twice = subtract(swap_roles(inst.f), once)
    thrice = subtract(inst.f, twice)
    if not same_pointwise(thrice, once):
        return "three subtractions differ from one"
    if not same_pointwise(subtract(swap_roles(inst.f), thrice), twice):
        return "four subtractions differ from two"
    return None


def _check_respectful_agreement(inst: SubtractionInstance) -> str | None:
    if not respects(inst.g, inst.f):
        return None
    if not same_pointwise(respectful_subtract(inst.f, inst.g), subtract(inst.f, inst.g)):
        return "one-step and iterated subtraction disagree on a respectful instance"
    return None


def subtraction_suite(seed: int, cases: int) -> list[PropertyResult]:
    rng = random.Random(seed)
    instances = [random_subtraction_instance(rng) for _ in range(cases)]
    return [
        _run_property("subtraction.sound", instances, _check_subtract_sound),
        _run_property("subtraction.result-respects", instances, _check_result_respects),
        _run_property("subtraction.idempotence-iff-respect", instances, _check_idempotence),
        _run_property("subtraction.closure", instances, _check_closure),
        _run_property("subtraction.respectful-agrees", instances, _check_respectful_agreement),
    ]


# ---------------------------------------------------------------------------
# inclusion-exclusion
# ---------------------------------------------------------------------------

class IncexcInstance:
    __slots__ = ("fam_a", "fam_b", "gs")

    def __init__(self, fam_a: IndexedFamily, fam_b: IndexedFamily, gs: dict[Element, Matching]):
        self.fam_a = fam_a
        self.fam_b = fam_b
        self.gs = gs

    def is_two_chain(self) -> bool:
        pts = self.fam_a.poset.points
        if len(pts) != 2:
            return False
        a, b = pts.elements
        return self.fam_a.poset.leq(a, b) and not self.fam_a.poset.leq(b, a)

    def describe(self) -> str:
        from .incexc import family_to_text, poset_to_text

        lines = [poset_to_text(self.fam_a.poset), "A:", family_to_text(self.fam_a),
                 "B:", family_to_text(self.fam_b)]
        for p in self.fam_a.poset.points:
            lines.append(f"g at {canon_encode(p)}:")
            lines.append(to_table_text(self.gs[p]))
        return "\n".join(lines)


def random_incexc_instance(
    rng: random.Random,
    max_points: int = 5,
    max_part: int = 4,
    force_two_chain: bool = False,
) -> IncexcInstance:
    """Random poset, same part sizes on both sides, shuffled down-set matchings.

    Roughly one instance in six is a two-point chain even when not forced,
    so the subtraction cross-check below never runs vacuously.
    """
    if force_two_chain or rng.random() < 0.15:
        points = FiniteSet([Int(0), Int(1)])
        poset = Poset(points, [(Int(0), Int(1))])
    else:
        m = rng.randint(1, max_points)
        points = FiniteSet(Int(i) for i in range(m))
        relations = [
            (Int(i), Int(j))
            for i in range(m)
            for j in range(i + 1, m)
            if rng.random() < 0.4
        ]
        poset = Poset(points, relations)

    sizes = {p: rng.randint(0, max_part) for p in poset.points}
    fam_a = IndexedFamily(
        poset, {p: FiniteSet(Int(i) for i in range(sizes[p])) for p in poset.points}
    )
    fam_b = IndexedFamily(
        poset, {p: FiniteSet(Int(50 + i) for i in range(sizes[p])) for p in poset.points}
    )
    gs = {}
    for p in poset.points:
        dom = fam_a.down_carrier(p)
        cod = fam_b.down_carrier(p)
        targets = list(cod)
        rng.shuffle(targets)
        gs[p] = make_matching(dom, cod, zip(dom, targets))
    return IncexcInstance(fam_a, fam_b, gs)


def two_chain_subtraction_oracle(inst: IncexcInstance) -> Matching:
    """The top-point matching of a 2-chain instance, computed by subtraction.

    Re-tags the down-set matching at the top so the top parts sit under
    TagL and the bottom parts under TagR, then subtracts the bottom
    matching; an independent route to the inclusion-exclusion result.
    """
    bottom, top = inst.fam_a.poset.points.elements
    a_top, a_bot = inst.fam_a.carrier(top), inst.fam_a.carrier(bottom)
    b_top, b_bot = inst.fam_b.carrier(top), inst.fam_b.carrier(bottom)
    g_top = inst.gs[top]

    def retag(e: Element) -> Element:
        return TagL(e) if e.left == top else TagR(e)

    pairs = [(TagL(e), retag(g_top.forward(e))) for e in a_top]
    pairs += [(TagR(e), retag(g_top.forward(e))) for e in a_bot]
    lifted = make_matching(sum_set(a_top, a_bot), sum_set(b_top, b_bot), pairs)
    return subtract(lifted, inst.gs[bottom])


def _check_incexc_sound(inst: IncexcInstance) -> str | None:
    fs = inclusion_exclusion(inst.fam_a, inst.fam_b, inst.gs)
    for p, f_p in fs.items():
        report = verify(f_p)
        if not report.passed:
            return f"f at {canon_encode(p)} failed verification: {report.failure_summary()}"
    return None


def _check_minimal_points(inst: IncexcInstance) -> str | None:
    fs = inclusion_exclusion(inst.fam_a, inst.fam_b, inst.gs)
    for p in inst.fam_a.poset.points:
        if not inst.fam_a.poset.is_minimal(p):
            continue
        g_p = inst.gs[p]
        for x in inst.fam_a.carrier(p):
            if fs[p].forward(x) != g_p.forward(x):
                return f"minimal point {canon_encode(p)}: f differs from g at {canon_encode(x)}"
    return None


def _check_two_chain(inst: IncexcInstance) -> str | None:
    if not inst.is_two_chain():
        return None
    fs = inclusion_exclusion(inst.fam_a, inst.fam_b, inst.gs)
    top = inst.fam_a.poset.points.elements[1]
    if not same_pointwise(fs[top], two_chain_subtraction_oracle(inst)):
        return "inclusion-exclusion and subtraction disagree at the top point"
    return None


def _check_memo_transparency(inst: IncexcInstance) -> str | None:
    plain = inclusion_exclusion(inst.fam_a, inst.fam_b, inst.gs, memoized=False)
    memo = inclusion_exclusion(inst.fam_a, inst.fam_b, inst.gs, memoized=True)
    for p in inst.fam_a.poset.points:
        if not same_pointwise(plain[p], memo[p]):
            return f"memoized and direct runs disagree at {canon_encode(p)}"
    return None


def incexc_suite(seed: int, cases: int) -> list[PropertyResult]:
    rng = random.Random(seed)
    instances = [random_incexc_instance(rng) for _ in range(cases)]
    two_chains = [random_incexc_instance(rng, force_two_chain=True) for _ in range(cases)]
    small = [
        random_incexc_instance(rng, max_points=3, max_part=2) for _ in range(cases)
    ]
    return [
        _run_property("incexc.sound", instances, _check_incexc_sound),
        _run_property("incexc.minimal-point-is-g", instances, _check_minimal_points),
        _run_property("incexc.two-chain-agrees-subtraction", two_chains, _check_two_chain),
        _run_property("incexc.memo-transparency", small, _check_memo_transparency),
    ]
