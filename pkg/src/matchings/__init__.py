"""An algebra of finite bijections carried with their inverses.

Matchings add (disjoint union), multiply (product), subtract (the
involution-principle walk), sieve over a finite poset
(inclusion-exclusion), and divide at an extreme point of a shared factor
(extreme division).  Everything is checkable by enumeration, and the
binomial demo reproduces the k-subset/complement matching that falls out
of dividing n! = C(n,k) * k! * (n-k)!.
"""

from .core import (
    Element,
    FiniteSet,
    Int,
    Pair,
    Seq,
    TagL,
    TagR,
    canon_decode,
    canon_encode,
    element_of,
    finite_set_of,
    product_set,
    pyvalue,
    split_sum_carrier,
    sum_set,
    untag,
)
from .matching import (
    DomainMismatch,
    Matching,
    NotABijection,
    VerificationReport,
    add_matchings,
    compose,
    from_table_text,
    identity_matching,
    invert,
    make_matching,
    memoize,
    mul_matchings,
    same_pointwise,
    to_table_text,
    verify,
)
from .subtraction import (
    IterationOverflow,
    LoopStats,
    NotRespectful,
    SubtractionInstance,
    check_result_respects,
    double_subtract,
    respectful_subtract,
    respects,
    subtract,
    swap_roles,
)
from .incexc import (
    CarrierMismatch,
    IndexedFamily,
    Poset,
    RecursionOverflow,
    UnknownPoint,
    down_set,
    family_to_text,
    inclusion_exclusion,
    parse_family,
    parse_poset,
    poset_to_text,
)
from .xdiv import (
    MatchingPair,
    NotTotal,
    OmegaNotInC,
    PartialMatchingPair,
    TotalityResult,
    as_matchings,
    check_total,
    xdiv,
)
from .binom import (
    BadArguments,
    DuplicateEntries,
    LengthMismatch,
    binom_pair,
    binom_split,
    choose_set,
    compress,
    demo_F,
    demo_G,
    flipkl,
    match_binom,
    monib,
    omega_words,
    word_set,
)

__all__ = [name for name in dir() if not name.startswith("_")]
