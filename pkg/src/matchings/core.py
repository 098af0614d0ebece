"""Canonical element values and explicit finite sets.

Element is the single value type every carrier set is made of: integers,
sequences, left/right-tagged values (membership in a disjoint union), and
pairs (membership in a product).  Structural equality is the only equality
used anywhere, and the canonical text encoding is injective, so an element
can always stand in for itself across serialization boundaries.
"""

from __future__ import annotations

from typing import Iterable, Iterator


class Element:
    """Base class for canonical values.  Immutable after construction."""

    __slots__ = ()

    def __repr__(self) -> str:
        return canon_encode(self)


class Int(Element):
    __slots__ = ("value", "_hash")

    def __init__(self, value: int):
        self.value = int(value)
        self._hash = hash(("i", self.value))

    def __eq__(self, other) -> bool:
        return type(other) is Int and other.value == self.value

    def __hash__(self) -> int:
        return self._hash


class Seq(Element):
    """Ordered sequence of elements."""

    __slots__ = ("items", "_hash")

    def __init__(self, items: Iterable[Element] = ()):
        self.items = tuple(items)
        self._hash = hash(("s", self.items))

    def __eq__(self, other) -> bool:
        return type(other) is Seq and other.items == self.items

    def __hash__(self) -> int:
        return self._hash


class TagL(Element):
    """Member of the left summand of a disjoint union."""

    __slots__ = ("value", "_hash")

    def __init__(self, value: Element):
        self.value = value
        self._hash = hash(("l", value))

    def __eq__(self, other) -> bool:
        return type(other) is TagL and other.value == self.value

    def __hash__(self) -> int:
        return self._hash


class TagR(Element):
    """Member of the right summand of a disjoint union."""

    __slots__ = ("value", "_hash")

    def __init__(self, value: Element):
        self.value = value
        self._hash = hash(("r", value))

    def __eq__(self, other) -> bool:
        return type(other) is TagR and other.value == self.value

    def __hash__(self) -> int:
        return self._hash


class Pair(Element):
    """Member of a product."""

    __slots__ = ("left", "right", "_hash")

    def __init__(self, left: Element, right: Element):
        self.left = left
        self.right = right
        self._hash = hash(("p", left, right))

    def __eq__(self, other) -> bool:
        return type(other) is Pair and other.left == self.left and other.right == self.right

    def __hash__(self) -> int:
        return self._hash


def element_of(value) -> Element:
    """Build an Element from nested Python ints/lists/tuples."""
    if isinstance(value, bool):
        raise TypeError("bool is not an element value")
    if isinstance(value, int):
        return Int(value)
    if isinstance(value, (list, tuple)):
        return Seq(element_of(v) for v in value)
    if isinstance(value, Element):
        return value
    raise TypeError(f"cannot make an element out of {value!r}")


def pyvalue(e: Element):
    """Inverse of element_of for Int/Seq trees; other nodes are rejected."""
    if isinstance(e, Int):
        return e.value
    if isinstance(e, Seq):
        return [pyvalue(item) for item in e.items]
    raise TypeError(f"no plain-Python form for {canon_encode(e)}")


def canon_encode(e: Element) -> str:
    """Canonical text encoding; injective over elements."""
    if isinstance(e, Int):
        return str(e.value)
    if isinstance(e, Seq):
        return "[" + ", ".join(canon_encode(item) for item in e.items) + "]"
    if isinstance(e, TagL):
        return "L:" + canon_encode(e.value)
    if isinstance(e, TagR):
        return "R:" + canon_encode(e.value)
    if isinstance(e, Pair):
        return "(" + canon_encode(e.left) + ", " + canon_encode(e.right) + ")"
    raise TypeError(f"not an element: {e!r}")


def canon_decode(text: str) -> Element:
    """Parse a canonical encoding back into an Element."""
    e, pos = _parse(text, 0)
    if pos != len(text):
        raise ValueError(f"trailing text at {pos} in {text!r}")
    return e


def split_top_level(text: str) -> list[str]:
    """Split on ", " outside any brackets; used by line-oriented formats."""
    parts = []
    depth = 0
    start = 0
    i = 0
    while i < len(text):
        c = text[i]
        if c in "[(":
            depth += 1
        elif c in "])":
            depth -= 1
        elif depth == 0 and text[i : i + 2] == ", ":
            parts.append(text[start:i])
            start = i + 2
            i += 2
            continue
        i += 1
    parts.append(text[start:])
    return parts


def _parse(s: str, i: int) -> tuple[Element, int]:
    if i >= len(s):
        raise ValueError(f"unexpected end of encoding in {s!r}")
    c = s[i]
    if c == "[":
        items = []
        i += 1
        if i < len(s) and s[i] == "]":
            return Seq(()), i + 1
        while True:
            e, i = _parse(s, i)
            items.append(e)
            if s[i : i + 2] == ", ":
                i += 2
                continue
            if i < len(s) and s[i] == "]":
                return Seq(items), i + 1
            raise ValueError(f"bad sequence at {i} in {s!r}")
    if c == "(":
        left, i = _parse(s, i + 1)
        if s[i : i + 2] != ", ":
            raise ValueError(f"bad pair separator at {i} in {s!r}")
        right, i = _parse(s, i + 2)
        if i >= len(s) or s[i] != ")":
            raise ValueError(f"unclosed pair at {i} in {s!r}")
        return Pair(left, right), i + 1
    if c in "LR" and s[i + 1 : i + 2] == ":":
        inner, j = _parse(s, i + 2)
        return (TagL if c == "L" else TagR)(inner), j
    if c == "-" or c.isdigit():
        j = i + 1
        while j < len(s) and s[j].isdigit():
            j += 1
        return Int(int(s[i:j])), j
    raise ValueError(f"bad encoding at {i} in {s!r}")


class FiniteSet:
    """Finite ordered collection of distinct elements.

    The order is the set's canonical enumeration order and is part of the
    data; a membership index gives O(1) lookup.
    """

    __slots__ = ("elements", "_index")

    def __init__(self, elements: Iterable[Element] = ()):
        self.elements = tuple(elements)
        index: dict[Element, int] = {}
        for i, e in enumerate(self.elements):
            if not isinstance(e, Element):
                raise TypeError(f"not an element: {e!r}")
            if e in index:
                raise ValueError(f"duplicate element {canon_encode(e)}")
            index[e] = i
        self._index = index

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[Element]:
        return iter(self.elements)

    def __contains__(self, e: Element) -> bool:
        return e in self._index

    def index_of(self, e: Element) -> int:
        try:
            return self._index[e]
        except KeyError:
            raise KeyError(f"{canon_encode(e)} not in set") from None

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteSet) and other.elements == self.elements

    def __hash__(self) -> int:
        return hash(self.elements)

    def same_elements(self, other: "FiniteSet") -> bool:
        """Set equality, ignoring enumeration order."""
        if self is other or self.elements is other.elements:
            return True
        return len(self) == len(other) and all(e in other for e in self)

    def __repr__(self) -> str:
        return "{" + ", ".join(canon_encode(e) for e in self.elements) + "}"


def finite_set_of(values) -> FiniteSet:
    """FiniteSet from nested Python values, via element_of."""
    return FiniteSet(element_of(v) for v in values)


def sum_set(a: FiniteSet, b: FiniteSet) -> FiniteSet:
    """Disjoint union: left summand tagged L, right summand tagged R."""
    return FiniteSet([TagL(x) for x in a] + [TagR(y) for y in b])


def product_set(a: FiniteSet, c: FiniteSet) -> FiniteSet:
    """Cartesian product, enumerated a-major."""
    return FiniteSet(Pair(x, z) for x in a for z in c)


def untag(e: Element) -> Element:
    if isinstance(e, (TagL, TagR)):
        return e.value
    raise ValueError(f"not a tagged element: {canon_encode(e)}")


def split_sum_carrier(s: FiniteSet) -> tuple[FiniteSet, FiniteSet]:
    """Recover the two summands of a sum-set, in enumeration order."""
    left, right = [], []
    for e in s:
        if isinstance(e, TagL):
            left.append(e.value)
        elif isinstance(e, TagR):
            right.append(e.value)
        else:
            raise ValueError(f"untagged element {canon_encode(e)} in sum carrier")
    return FiniteSet(left), FiniteSet(right)
