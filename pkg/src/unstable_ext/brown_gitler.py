"""Brown-Gitler modules J(n) and the operation morphisms between them.

A morphism J(m) -> J(n) is named by a single algebra element of degree
m - n; elements whose admissible terms have excess above n act as zero, so
morphisms are kept in normal form with such terms truncated away.  The
degree-d slice of J(n) has the admissible monomials of degree n - d and
excess at most d as its basis, and a morphism realizes in each degree as a
GF(2) matrix over these monomial bases.

Matrix convention: ``realize_morphism(f, d)`` has one row per source-slice
monomial and one bit-column per target-slice monomial, so realizations of
composable morphisms chain left to right through ``gf2.mat_mul`` in diagram
order.  Realizations are cached; treat returned matrices as immutable.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from unstable_ext import steenrod as st
from unstable_ext.errors import InternalError
from unstable_ext.gf2 import Mat

__all__ = [
    "Morphism",
    "Summand",
    "add",
    "compose",
    "halve_morphism",
    "identity_morphism",
    "is_zero",
    "mahowald_surjection",
    "morphism",
    "realize_morphism",
    "realize_slice",
    "suspend_morphism",
    "suspension_inclusion",
]


@dataclass(frozen=True)
class Summand:
    """One J(index) summand inside a cochain complex page.

    ``tag`` is unique within its complex.  In a doubled complex, ``prov``
    records which half the summand lives in ("A" suspended, "B" halved),
    ``parent`` is the tag of the A-summand a B-summand was halved from
    (one page earlier), and ``origin`` is the tag of the input-complex
    summand it descends from.
    """

    index: int
    tag: str
    prov: str = "A"
    parent: str | None = None
    origin: str | None = None


@dataclass(frozen=True)
class Morphism:
    """Operation morphism J(source) -> J(target), op in normal form."""

    source: int
    target: int
    op: st.Element


def morphism(source: int, target: int, op: st.Element) -> Morphism:
    """Build a morphism, truncating op terms that act as zero on J(target)."""
    if source < 1 or target < 1:
        raise ValueError(f"module indices must be >= 1: {source}, {target}")
    if op.degree != source - target:
        raise ValueError(
            f"op degree {op.degree} does not match J({source}) -> J({target})"
        )
    return Morphism(source, target, st.truncate_excess(op, target))


def identity_morphism(n: int) -> Morphism:
    return morphism(n, n, st.unit())


def is_zero(f: Morphism) -> bool:
    return not f.op


def add(f: Morphism, g: Morphism) -> Morphism:
    if (f.source, f.target) != (g.source, g.target):
        raise ValueError("can only add morphisms with equal endpoints")
    return Morphism(f.source, f.target, f.op ^ g.op)


def compose(second: Morphism, first: Morphism) -> Morphism:
    """second after first; ops multiply in diagram order (first then second)."""
    if first.target != second.source:
        raise ValueError(
            f"cannot compose J({first.source})->J({first.target}) "
            f"with J({second.source})->J({second.target})"
        )
    return morphism(
        first.source, second.target, st.multiply(first.op, second.op)
    )


def suspend_morphism(f: Morphism) -> Morphism:
    """Shift both endpoints up by one; the naming element is unchanged.

    The excess bound only loosens (target + 1 > target), so the op stays
    in normal form.
    """
    return morphism(
        f.source + 1, f.target + 1, st.Element(f.op.terms, f.op.degree)
    )


def halve_morphism(f: Morphism) -> Morphism:
    """Halve both endpoints and the naming element (even endpoints only)."""
    if f.source % 2 or f.target % 2:
        raise ValueError(
            f"halving needs even endpoints: J({f.source}) -> J({f.target})"
        )
    return morphism(f.source // 2, f.target // 2, st.halve(f.op))


def mahowald_surjection(n: int) -> Morphism | None:
    """The surjection J(n) ->> J(n/2) named by Sq^{n/2}; None for odd n."""
    if n < 2 or n % 2:
        return None
    return morphism(n, n // 2, st.sq(n // 2))


@lru_cache(maxsize=None)
def realize_slice(n: int, d: int) -> tuple[st.Word, ...]:
    """Monomial basis of the degree-d slice of J(n)."""
    if n < 0:
        raise ValueError(f"negative module index {n}")
    if d < 0 or d > n:
        return ()
    return st.admissible_basis(n - d, d)


@lru_cache(maxsize=None)
def realize_morphism(f: Morphism, d: int) -> Mat:
    """Matrix of f in degree d: source-slice rows, target-slice bit-columns.

    The (I, J) entry is the coefficient of the source monomial Sq^I in
    op * Sq^J; product terms of excess above d fall outside the slice and
    contribute nothing.
    """
    row_words = realize_slice(f.source, d)
    col_words = realize_slice(f.target, d)
    index = {w: i for i, w in enumerate(row_words)}
    rows = [0] * len(row_words)
    for j, col_word in enumerate(col_words):
        prod = st.multiply(
            f.op, st.Element(frozenset({col_word}), f.target - d)
        )
        for w in prod.terms:
            i = index.get(w)
            if i is not None:
                rows[i] |= 1 << j
    return Mat(rows, len(col_words))


def suspension_inclusion(n: int, d: int) -> Mat:
    """Degree-d matrix of the suspension of J(n) included into J(n + 1).

    The degree-(d-1) monomials of J(n) are a subset of the degree-d
    monomials of J(n + 1) (same words, excess bound loosened by one); the
    inclusion matches labels.
    """
    src = realize_slice(n, d - 1)
    dst = {w: j for j, w in enumerate(realize_slice(n + 1, d))}
    rows = []
    for w in src:
        j = dst.get(w)
        if j is None:
            raise InternalError(
                f"suspension label {w} missing from J({n + 1}) degree {d}"
            )
        rows.append(1 << j)
    return Mat(rows, len(dst))
