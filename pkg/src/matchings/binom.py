"""Matching k-subsets to their co-sized complements by extreme division.

Follow the algebra: C(n,k) * k! * (n-k)! = n! = C(n,n-k) * k! * (n-k)!,
with every step backed by a matching, then divide out the k! * (n-k)!
factor at the extreme point made of identity words.

The combinatorial kernels work on plain nested lists; thin codecs lift
them to elements so the generic division machinery runs unchanged.
"""

from __future__ import annotations

import itertools

from .core import Element, FiniteSet, Int, Pair, Seq, element_of, pyvalue, product_set
from .matching import Matching
from .xdiv import DEFAULT_BUDGET, MatchingPair, PartialMatchingPair, xdiv


class BadArguments(Exception):
    pass


class DuplicateEntries(Exception):
    pass


class LengthMismatch(Exception):
    pass


def choose_set(n: int, k: int) -> FiniteSet:
    """All splits of {0..n-1} into a k-block and its complement, k-block lex order."""
    if not 0 <= k <= n:
        raise BadArguments(f"need 0 <= k <= n, got n={n}, k={k}")
    full = range(n)
    splits = []
    for a in itertools.combinations(full, k):
        chosen = set(a)
        splits.append(element_of([list(a), [x for x in full if x not in chosen]]))
    return FiniteSet(splits)


def word_set(m: int) -> FiniteSet:
    """All permutation words of length m, in lexicographic order."""
    if m < 0:
        raise BadArguments(f"negative word length {m}")
    return FiniteSet(element_of(list(p)) for p in itertools.permutations(range(m)))


def compress(values: list[int]) -> list[int]:
    """Replace each entry by its rank among the sorted entries."""
    ordered = sorted(values)
    if any(ordered[i] == ordered[i + 1] for i in range(len(ordered) - 1)):
        raise DuplicateEntries(f"entries not distinct: {values}")
    return [ordered.index(x) for x in values]


def binom_split(sigma: list[int], k: int) -> list:
    """Send a permutation word to a split plus the pair of block rank words."""
    n = len(sigma)
    if sorted(sigma) != list(range(n)):
        raise BadArguments(f"not a permutation word: {sigma}")
    if not 0 <= k <= n:
        raise BadArguments(f"need 0 <= k <= n, got n={n}, k={k}")
    a, b = sigma[:k], sigma[k:]
    return [[sorted(a), sorted(b)], [compress(a), compress(b)]]


def monib(split_words) -> list[int]:
    """Inverse of binom_split: index the blocks by their rank words and concatenate."""
    (a, b), (c, d) = split_words
    if len(a) != len(c) or len(b) != len(d):
        raise LengthMismatch(
            f"block lengths {len(a)},{len(b)} vs word lengths {len(c)},{len(d)}"
        )
    return [a[i] for i in c] + [b[i] for i in d]


def flipkl(split_words) -> list:
    """Swap the two rank words; self-inverse, leaves the split alone."""
    (a, b), (c, d) = split_words
    return [[a, b], [d, c]]


def demo_F(split_words) -> list:
    """Forward map on splits-with-words; the flip keeps both factors equal to
    k! x (n-k)! so division happens over a shared C."""
    (a, b), (c, d) = split_words
    return flipkl(binom_split(monib(split_words), len(b)))


def demo_G(split_words) -> list:
    """The same map with the flip applied on the way in; inverse of demo_F."""
    (a, b), (c, d) = split_words
    return binom_split(monib(flipkl(split_words)), len(b))


def omega_words(n: int, k: int) -> Element:
    """The extreme point: the pair of identity words."""
    if not 0 <= k <= n:
        raise BadArguments(f"need 0 <= k <= n, got n={n}, k={k}")
    return Pair(element_of(list(range(k))), element_of(list(range(n - k))))


def _to_lists(e: Element) -> list:
    # Pair(split, Pair(c, d)) -> [[a, b], [c, d]]
    split, words = e.left, e.right
    return [pyvalue(split), [pyvalue(words.left), pyvalue(words.right)]]


def _to_element(split_words) -> Element:
    (a, b), (c, d) = split_words
    return Pair(element_of([a, b]), Pair(element_of(c), element_of(d)))


def binom_pair(n: int, k: int) -> MatchingPair:
    """The dividend: F and G between choose(n,k) x C and choose(n,n-k) x C."""
    A = choose_set(n, k)
    B = choose_set(n, n - k)
    C = product_set(word_set(k), word_set(n - k))
    AC = product_set(A, C)
    BC = product_set(B, C)

    def f_fwd(e: Element) -> Element:
        return _to_element(demo_F(_to_lists(e)))

    def g_fwd(e: Element) -> Element:
        return _to_element(demo_G(_to_lists(e)))

    F = Matching(AC, BC, f_fwd, g_fwd)
    G = Matching(BC, AC, g_fwd, f_fwd)
    return MatchingPair(F, G, A, B, C)


def match_binom(
    n: int,
    k: int,
    budget: int = DEFAULT_BUDGET,
    memoized: bool = True,
) -> PartialMatchingPair:
    """Divide out the word factor at the identity-word extreme point."""
    return xdiv(binom_pair(n, k), omega_words(n, k), budget=budget, memoized=memoized)
