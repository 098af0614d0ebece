"""Subtraction of matchings.

Given f: A+C = B+D and g: C = D, subtraction derives a matching A = B by
walking f and g-inverse until the image lands in B.  When g respects f the
walk takes at most one detour and collapses to a closed formula
(respectful subtraction).  The derived matching always respects f, and
re-subtracting recovers g exactly when g respected f in the first place,
which yields a closure operation.

Carrier bookkeeping is by tags: the outer pair (A, B) lives under TagL,
the subtrahend pair (C, D) under TagR.
"""

from __future__ import annotations

from typing import Iterable

from .core import Element, FiniteSet, TagL, TagR, canon_encode, split_sum_carrier, sum_set
from .matching import DomainMismatch, Matching


class NotRespectful(Exception):
    """respectful_subtract was called but g does not respect f."""


class IterationOverflow(Exception):
    """The subtraction walk failed to leave D; the inputs are not matchings."""


class LoopStats:
    """Test-only instrumentation for the subtraction walk."""

    __slots__ = ("evaluations", "max_iterations")

    def __init__(self):
        self.evaluations = 0
        self.max_iterations = 0

    def record(self, iterations: int) -> None:
        self.evaluations += 1
        if iterations > self.max_iterations:
            self.max_iterations = iterations


class SubtractionInstance:
    """The data of one subtraction problem: f: A+C = B+D and g: C = D."""

    __slots__ = ("f", "g", "A", "B", "C", "D")

    def __init__(self, f: Matching, g: Matching, A: FiniteSet, B: FiniteSet,
                 C: FiniteSet, D: FiniteSet):
        self.f = f
        self.g = g
        self.A = A
        self.B = B
        self.C = C
        self.D = D

    @classmethod
    def from_matchings(cls, f: Matching, g: Matching) -> "SubtractionInstance":
        try:
            A, C = split_sum_carrier(f.domain)
            B, D = split_sum_carrier(f.codomain)
        except ValueError as exc:
            raise DomainMismatch(str(exc)) from None
        if not g.domain.same_elements(C):
            raise DomainMismatch("domain of g is not the C summand of f's domain")
        if not g.codomain.same_elements(D):
            raise DomainMismatch("codomain of g is not the D summand of f's codomain")
        if len(A) != len(B):
            raise DomainMismatch(f"|A|={len(A)} but |B|={len(B)}")
        return cls(f, g, A, B, C, D)

    def describe(self) -> str:
        lines = [f"A={self.A!r} B={self.B!r} C={self.C!r} D={self.D!r}", "f:"]
        lines += [f"  {canon_encode(x)} -> {canon_encode(self.f.forward(x))}" for x in self.f.domain]
        lines.append("g:")
        lines += [f"  {canon_encode(x)} -> {canon_encode(self.g.forward(x))}" for x in self.g.domain]
        return "\n".join(lines)


def respects(g: Matching, f: Matching) -> bool:
    """True iff g agrees with f wherever f already maps C into D."""
    inst = SubtractionInstance.from_matchings(f, g)
    for x in inst.C:
        y = f.forward(TagR(x))
        if isinstance(y, TagR) and g.forward(x) != y.value:
            return False
    return True


def respectful_subtract(f: Matching, g: Matching) -> Matching:
    """One-step subtraction, valid when g respects f."""
    inst = SubtractionInstance.from_matchings(f, g)
    if not respects(g, f):
        raise NotRespectful("g does not respect f")

    def fwd(x: Element) -> Element:
        y = f.forward(TagL(x))
        if isinstance(y, TagR):
            y = f.forward(TagR(g.backward(y.value)))
            if isinstance(y, TagR):
                raise NotRespectful(
                    f"one detour did not reach B from {canon_encode(x)}"
                )
        return y.value

    def bwd(y: Element) -> Element:
        x = f.backward(TagL(y))
        if isinstance(x, TagR):
            x = f.backward(TagR(g.forward(x.value)))
            if isinstance(x, TagR):
                raise NotRespectful(
                    f"one detour did not reach A from {canon_encode(y)}"
                )
        return x.value

    return Matching(inst.A, inst.B, fwd, bwd)


def subtract(f: Matching, g: Matching, stats: LoopStats | None = None) -> Matching:
    """General subtraction: iterate f after g-inverse until landing in B.

    The walk visits distinct D elements, so it runs at most |D| iterations;
    going past that proves the inputs are not matchings and raises
    IterationOverflow.
    """
    inst = SubtractionInstance.from_matchings(f, g)
    cap = len(inst.D)

    def fwd(x: Element) -> Element:
        y = f.forward(TagL(x))
        iterations = 0
        while isinstance(y, TagR):
            if iterations >= cap:
                raise IterationOverflow(
                    f"still in D after {cap} iterations from {canon_encode(x)}"
                )
            iterations += 1
            y = f.forward(TagR(g.backward(y.value)))
        if stats is not None:
            stats.record(iterations)
        return y.value

    def bwd(y: Element) -> Element:
        x = f.backward(TagL(y))
        iterations = 0
        while isinstance(x, TagR):
            if iterations >= cap:
                raise IterationOverflow(
                    f"still in C after {cap} iterations from {canon_encode(y)}"
                )
            iterations += 1
            x = f.backward(TagR(g.forward(x.value)))
        if stats is not None:
            stats.record(iterations)
        return x.value

    return Matching(inst.A, inst.B, fwd, bwd)


def swap_roles(f: Matching) -> Matching:
    """View f: A+C = B+D as a matching C+A = D+B by re-tagging."""
    A, C = split_sum_carrier(f.domain)
    B, D = split_sum_carrier(f.codomain)

    def flip(e: Element) -> Element:
        return TagR(e.value) if isinstance(e, TagL) else TagL(e.value)

    return Matching(
        sum_set(C, A),
        sum_set(D, B),
        lambda e: flip(f.forward(flip(e))),
        lambda e: flip(f.backward(flip(e))),
    )


def check_result_respects(f: Matching, g: Matching) -> bool:
    """The subtraction result, lifted to the swapped-role view of f, respects it.

    Exported as a test hook; it holds for every valid instance.
    """
    return respects(subtract(f, g), swap_roles(f))


def double_subtract(f: Matching, g: Matching) -> Matching:
    """Subtract the subtraction result back out: a matching C = D.

    Equals g pointwise exactly when g respects f.
    """
    return subtract(swap_roles(f), subtract(f, g))
