"""Extreme division of matchings.

From F: AxC = BxC and G: BxC = AxC plus a distinguished element omega of C,
a mutual recursion produces partial functions f on A and g on B: evaluate
F at (x, omega) and, while the C component differs from omega, feed the
other partial function's value back in.  If both come out total the pair
(F, G) is X-divisible for omega.

Divergence is possible for arbitrary F, G, so every invocation carries a
budget of F/G applications; a point whose evaluation would exceed it (or
provably cycles) is recorded as undefined rather than looping forever.
"""

from __future__ import annotations

from .core import Element, FiniteSet, Pair, canon_encode
from .matching import Matching, NotABijection, make_matching


class OmegaNotInC(Exception):
    """The distinguished element is not in the shared factor."""


class NotTotal(Exception):
    """as_matchings needs a total pair."""


DEFAULT_BUDGET = 10**7


class MatchingPair:
    """The dividend data: F: AxC = BxC and G: BxC = AxC.

    G = invert(F) is allowed but not required.  Carriers are checked
    against A, B, C memberwise.
    """

    __slots__ = ("F", "G", "A", "B", "C")

    def __init__(self, F: Matching, G: Matching, A: FiniteSet, B: FiniteSet, C: FiniteSet):
        _check_product_carrier("domain of F", F.domain, A, C)
        _check_product_carrier("codomain of F", F.codomain, B, C)
        _check_product_carrier("domain of G", G.domain, B, C)
        _check_product_carrier("codomain of G", G.codomain, A, C)
        self.F = F
        self.G = G
        self.A = A
        self.B = B
        self.C = C


def _check_product_carrier(label: str, carrier: FiniteSet, first: FiniteSet, second: FiniteSet):
    if len(carrier) != len(first) * len(second):
        raise ValueError(f"{label} has {len(carrier)} elements, expected {len(first) * len(second)}")
    for e in carrier:
        if not isinstance(e, Pair) or e.left not in first or e.right not in second:
            raise ValueError(f"{label} contains stray element {canon_encode(e)}")


class Outcome:
    """Result of evaluating one point: a value, or why it is undefined."""

    __slots__ = ("value", "steps", "reason", "trace")

    def __init__(self, value: Element | None, steps: int, reason: str | None = None,
                 trace: tuple[str, ...] = ()):
        self.value = value
        self.steps = steps
        self.reason = reason
        self.trace = trace

    @property
    def defined(self) -> bool:
        return self.value is not None

    def __repr__(self) -> str:
        if self.defined:
            return f"<defined {canon_encode(self.value)} in {self.steps} steps>"
        return f"<undefined ({self.reason}) after {self.steps} steps>"


class PartialMatchingPair:
    """The quotient data: partial f on A and partial g on B, with statistics."""

    __slots__ = ("A", "B", "C", "omega", "f_outcomes", "g_outcomes",
                 "total_steps", "budget", "memoized")

    def __init__(self, A, B, C, omega, f_outcomes, g_outcomes, total_steps, budget, memoized):
        self.A = A
        self.B = B
        self.C = C
        self.omega = omega
        self.f_outcomes: dict[Element, Outcome] = f_outcomes
        self.g_outcomes: dict[Element, Outcome] = g_outcomes
        self.total_steps = total_steps
        self.budget = budget
        self.memoized = memoized

    def f(self, x: Element) -> Element | None:
        return self.f_outcomes[x].value

    def g(self, y: Element) -> Element | None:
        return self.g_outcomes[y].value

    def stats_text(self) -> str:
        lines = [
            f"applications: {self.total_steps} of budget {self.budget}"
            f" ({'memoized' if self.memoized else 'direct'})"
        ]
        for side, outcomes in (("f", self.f_outcomes), ("g", self.g_outcomes)):
            defined = sum(1 for o in outcomes.values() if o.defined)
            lines.append(f"{side}: {defined}/{len(outcomes)} defined")
            for x, o in outcomes.items():
                if not o.defined:
                    lines.append(f"  {side}({canon_encode(x)}) undefined: {o.reason}")
        return "\n".join(lines)


class _BudgetStop(Exception):
    pass


class _Machine:
    """Stack evaluation of the mutual recursion, shared by both sides.

    side True is f (driven by F, falling back on g), False is g.  A frame
    holds the argument it was called on plus the suspended C component;
    resolving a child feeds its value back into the same frame.
    """

    __slots__ = ("F", "G", "omega", "memoized", "budget", "steps",
                 "memo_f", "memo_g", "busy")

    def __init__(self, F: Matching, G: Matching, omega: Element, memoized: bool, budget: int):
        self.F = F
        self.G = G
        self.omega = omega
        self.memoized = memoized
        self.budget = budget
        self.steps = 0
        self.memo_f: dict[Element, Element] = {}
        self.memo_g: dict[Element, Element] = {}
        self.busy: set[tuple[bool, Element]] = set()

    def _apply(self, side: bool, first: Element, second: Element) -> tuple[Element, Element]:
        if self.steps >= self.budget:
            raise _BudgetStop
        self.steps += 1
        out = (self.F if side else self.G).forward(Pair(first, second))
        return out.left, out.right

    def eval_point(self, side: bool, x0: Element) -> Outcome:
        start_steps = self.steps
        marked: list[tuple[bool, Element]] = []
        # wait holds suspended frames: (side, argument, pending C component)
        wait: list[tuple[bool, Element, Element]] = []
        mode = "start"
        call = (side, x0)
        frame: tuple[bool, Element] | None = None
        y = z = value = None
        try:
            while True:
                if mode == "start":
                    cside, carg = call
                    memo = self.memo_f if cside else self.memo_g
                    if self.memoized and carg in memo:
                        value = memo[carg]
                        mode = "deliver"
                        continue
                    if (cside, carg) in self.busy:
                        return self._abort("cycle", start_steps, wait, (cside, carg), marked)
                    self.busy.add((cside, carg))
                    marked.append((cside, carg))
                    frame = (cside, carg)
                    y, z = self._apply(cside, carg, self.omega)
                    mode = "test"
                elif mode == "test":
                    if z == self.omega:
                        fside, farg = frame
                        if self.memoized:
                            (self.memo_f if fside else self.memo_g)[farg] = y
                        self.busy.discard(frame)
                        value = y
                        mode = "deliver"
                    else:
                        wait.append((frame[0], frame[1], z))
                        call = (not frame[0], y)
                        mode = "start"
                else:  # deliver
                    if not wait:
                        return Outcome(value, self.steps - start_steps)
                    fside, farg, fz = wait.pop()
                    frame = (fside, farg)
                    y, z = self._apply(fside, value, fz)
                    mode = "test"
        except _BudgetStop:
            return self._abort("budget", start_steps, wait, frame, marked)

    def _abort(self, reason: str, start_steps: int, wait, frame, marked) -> Outcome:
        for key in marked:
            self.busy.discard(key)
        trail = [f"{'f' if s else 'g'}({canon_encode(a)})" for s, a, _ in wait[-8:]]
        if frame is not None:
            trail.append(f"{'f' if frame[0] else 'g'}({canon_encode(frame[1])})")
        return Outcome(None, self.steps - start_steps, reason, tuple(trail))


def xdiv(
    fg: MatchingPair,
    omega: Element,
    budget: int = DEFAULT_BUDGET,
    memoized: bool = True,
) -> PartialMatchingPair:
    """Evaluate both partial functions everywhere, eagerly.

    One memo table pair and one application budget serve the whole
    invocation; a point that would exceed the budget is recorded as
    undefined with a trace instead of failing the run.
    """
    if omega not in fg.C:
        raise OmegaNotInC(f"{canon_encode(omega)} is not in C")
    machine = _Machine(fg.F, fg.G, omega, memoized, budget)
    f_outcomes = {x: machine.eval_point(True, x) for x in fg.A}
    g_outcomes = {y: machine.eval_point(False, y) for y in fg.B}
    return PartialMatchingPair(
        fg.A, fg.B, fg.C, omega, f_outcomes, g_outcomes,
        machine.steps, budget, memoized,
    )


class TotalityResult:
    __slots__ = ("total", "side", "point", "outcome")

    def __init__(self, total: bool, side: str | None = None,
                 point: Element | None = None, outcome: Outcome | None = None):
        self.total = total
        self.side = side
        self.point = point
        self.outcome = outcome

    def witness_text(self) -> str:
        if self.total:
            return "total"
        return (
            f"{self.side}({canon_encode(self.point)}) undefined "
            f"({self.outcome.reason}); trace: {' <- '.join(self.outcome.trace) or 'empty'}"
        )


def check_total(pair: PartialMatchingPair) -> TotalityResult:
    """Is the pair X-divisible?  If not, report the first undefined point."""
    for side, outcomes in (("f", pair.f_outcomes), ("g", pair.g_outcomes)):
        for x, o in outcomes.items():
            if not o.defined:
                return TotalityResult(False, side, x, o)
    return TotalityResult(True)


def as_matchings(pair: PartialMatchingPair) -> tuple[Matching, Matching]:
    """Package a total pair as verified matchings A = B and B = A.

    When f and g invert each other pointwise each matching carries the
    other as its inverse; otherwise each side must be a bijection on its
    own and gets its enumeration-derived inverse.
    """
    totality = check_total(pair)
    if not totality.total:
        raise NotTotal(totality.witness_text())
    f_table = {x: pair.f_outcomes[x].value for x in pair.A}
    g_table = {y: pair.g_outcomes[y].value for y in pair.B}
    mutual = all(g_table.get(y) == x for x, y in f_table.items()) and all(
        f_table.get(x) == y for y, x in g_table.items()
    )
    if mutual:
        forward = make_matching(pair.A, pair.B, list(f_table.items()))
        backward = Matching(pair.B, pair.A, g_table.__getitem__, f_table.__getitem__, kind="table")
        return forward, backward
    return (
        make_matching(pair.A, pair.B, list(f_table.items())),
        make_matching(pair.B, pair.A, list(g_table.items())),
    )
