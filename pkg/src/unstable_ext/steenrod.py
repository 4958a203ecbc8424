"""Mod-2 Steenrod algebra in admissible normal form.

Elements are homogeneous mod-2 sums of admissible monomials
Sq^{i_1} ... Sq^{i_k} (admissible: i_j >= 2 i_{j+1}, every i_j >= 1).
Words are tuples of exponents; the empty word is the unit.  Products are
straightened through the backend Adem kernel, so every ``Element`` in
circulation has admissible support only.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

from unstable_ext._backend import adem_reduce_word, binom2, rref_bits

Word = tuple[int, ...]

__all__ = [
    "Element",
    "Word",
    "admissible_basis",
    "adem_reduce",
    "binom2",
    "element",
    "excess",
    "from_payload",
    "halve",
    "is_admissible",
    "is_decomposable",
    "multiply",
    "sq",
    "to_payload",
    "truncate_excess",
    "unit",
    "word_degree",
    "zero",
]


def word_degree(word: Word) -> int:
    return sum(word)


def is_admissible(word: Word) -> bool:
    if any(i < 1 for i in word):
        return False
    return all(word[p] >= 2 * word[p + 1] for p in range(len(word) - 1))


def excess(word: Word) -> int:
    """2 i_1 - degree for a nonempty admissible word; 0 for the unit."""
    if not word:
        return 0
    return 2 * word[0] - sum(word)


@dataclass(frozen=True)
class Element:
    """Homogeneous element: admissible support set plus its degree.

    The degree rides along even when the support is empty so that GF(2)
    matrix assembly over fixed monomial bases stays dimension-checked.
    """

    terms: frozenset[Word]
    degree: int

    def __xor__(self, other: "Element") -> "Element":
        if self.degree != other.degree:
            raise ValueError(
                f"degree mismatch: {self.degree} vs {other.degree}"
            )
        return Element(self.terms ^ other.terms, self.degree)

    def __bool__(self) -> bool:
        return bool(self.terms)


def unit() -> Element:
    return Element(frozenset({()}), 0)


def zero(degree: int) -> Element:
    return Element(frozenset(), degree)


def sq(k: int) -> Element:
    if k < 1:
        raise ValueError(f"Sq^{k}: exponent must be >= 1 (use unit() for 1)")
    return Element(frozenset({(k,)}), k)


def adem_reduce(word: Iterable[int]) -> Element:
    """Straighten an arbitrary word of positive squares into an Element."""
    w = tuple(word)
    if any(i < 1 for i in w):
        raise ValueError(f"exponents must be >= 1, got {w}")
    return Element(adem_reduce_word(w), sum(w))


def element(words: Iterable[Iterable[int]], degree: int | None = None) -> Element:
    """Mod-2 sum of the given words, each straightened first."""
    acc: set[Word] = set()
    d = degree
    for raw in words:
        w = tuple(raw)
        if any(i < 1 for i in w):
            raise ValueError(f"exponents must be >= 1, got {w}")
        if d is None:
            d = sum(w)
        elif sum(w) != d:
            raise ValueError(f"mixed degrees: {sum(w)} vs {d}")
        acc ^= adem_reduce_word(w)
    if d is None:
        raise ValueError("empty word list needs an explicit degree")
    return Element(frozenset(acc), d)


def multiply(x: Element, y: Element) -> Element:
    """Product x * y, straightened to admissible normal form."""
    acc: set[Word] = set()
    for wx in x.terms:
        for wy in y.terms:
            acc ^= adem_reduce_word(wx + wy)
    return Element(frozenset(acc), x.degree + y.degree)


def truncate_excess(x: Element, bound: int) -> Element:
    """Drop every monomial whose excess exceeds ``bound``."""
    return Element(
        frozenset(w for w in x.terms if excess(w) <= bound), x.degree
    )


def halve(x: Element) -> Element:
    """Halve every exponent; monomials with an odd exponent die.

    Halving preserves admissibility (i_j >= 2 i_{j+1} implies
    i_j/2 >= 2 (i_{j+1}/2) for even exponents).  The result sits in half
    the degree.
    """
    acc = set()
    for w in x.terms:
        if all(i % 2 == 0 for i in w):
            acc.add(tuple(i // 2 for i in w))
    return Element(frozenset(acc), x.degree // 2)


@lru_cache(maxsize=None)
def _words_first_bounded(d: int, max_first: int) -> tuple[Word, ...]:
    # Admissible words of degree d with leading exponent <= max_first,
    # in descending lexicographic order.
    if d == 0:
        return ((),)
    out: list[Word] = []
    for lead in range(min(d, max_first), 0, -1):
        for tail in _words_first_bounded(d - lead, lead // 2):
            out.append((lead,) + tail)
    return tuple(out)


def admissible_basis(d: int, e: int) -> tuple[Word, ...]:
    """Admissible monomials of degree ``d`` and excess at most ``e``.

    Descending lexicographic order; this ordering is the basis convention
    for every matrix in the package.  Degree 0 gives the unit alone.
    """
    if d < 0 or e < 0:
        raise ValueError(f"negative degree or excess bound: d={d} e={e}")
    if d == 0:
        return ((),)
    # excess <= e means the leading exponent is at most (d + e) // 2
    return _words_first_bounded(d, (d + e) // 2)


@lru_cache(maxsize=None)
def _decomposable_pivot_rows(d: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    # Row space of all products of two positive-degree elements, reduced.
    basis = admissible_basis(d, d)
    index = {w: i for i, w in enumerate(basis)}
    rows = []
    for a in range(1, d):
        for u in admissible_basis(a, a):
            for v in admissible_basis(d - a, d - a):
                vec = 0
                for w in adem_reduce_word(u + v):
                    vec |= 1 << index[w]
                if vec:
                    rows.append(vec)
    work, pivots = rref_bits(rows, len(basis))
    return tuple(work[: len(pivots)]), tuple(pivots)


def is_decomposable(x: Element) -> bool:
    """Whether ``x`` is a sum of products of positive-degree elements."""
    if x.degree < 1:
        raise ValueError("decomposables live in positive degree")
    basis = admissible_basis(x.degree, x.degree)
    index = {w: i for i, w in enumerate(basis)}
    vec = 0
    for w in x.terms:
        vec |= 1 << index[w]
    pivot_rows, pivots = _decomposable_pivot_rows(x.degree)
    for row, pc in zip(pivot_rows, pivots):
        if vec & (1 << pc):
            vec ^= row
    return vec == 0


def to_payload(x: Element) -> dict:
    return {
        "degree": x.degree,
        "terms": sorted((list(w) for w in x.terms), reverse=True),
    }


def from_payload(obj: dict) -> Element:
    degree = int(obj["degree"])
    terms = set()
    for raw in obj["terms"]:
        w = tuple(int(i) for i in raw)
        if not is_admissible(w):
            raise ValueError(f"non-admissible word in payload: {w}")
        if sum(w) != degree:
            raise ValueError(f"word {w} does not match degree {degree}")
        if w in terms:
            raise ValueError(f"duplicate word in payload: {w}")
        terms.add(w)
    return Element(frozenset(terms), degree)
