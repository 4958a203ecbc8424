"""Independent cross-check for the sphere charts via admissible words.

For bottom cell n, take the GF(2) span of admissible words in generators
lam_i (i >= 0, admissible means 2 i_j >= i_{j+1}, and the leading index is
at most n - 1).  The letter lam_i carries weight i + 1; a word of length s
and total weight w sits in bidegree (s, t) with t = n + w.  The quadratic
differential on generators, extended as a derivation and straightened back
to admissible form, squares to zero, and the homology ranks reproduce the
chart that the resolution engine reads off summand counts.  None of the
resolution machinery is imported here, so agreement of the two routes is
a genuine end-to-end check.
"""

from __future__ import annotations

from functools import lru_cache

from unstable_ext import gf2
from unstable_ext._backend import binom2, lambda_reduce_word
from unstable_ext.errors import InternalError
from unstable_ext.gf2 import Mat

__all__ = [
    "admissible_words",
    "complex_matrix",
    "connecting_rank",
    "cycle_representatives",
    "differential_word",
    "filtration_check",
    "homology",
    "word_weight",
]

Word = tuple[int, ...]


def word_weight(word: Word) -> int:
    return len(word) + sum(word)


@lru_cache(maxsize=None)
def _words(first_max: int, s: int, w: int) -> tuple[Word, ...]:
    if s == 0:
        return ((),) if w == 0 else ()
    out: list[Word] = []
    # every letter costs at least 1, so the lead can cost at most w - s + 1
    for i in range(min(first_max, w - s), -1, -1):
        rest = w - (i + 1)
        # tail indices at most double step by step, so the cheapest lead
        # that still works bounds the weight the tail can absorb
        if rest > i * (2**s - 2) + (s - 1):
            break
        for tail in _words(2 * i, s - 1, rest):
            out.append((i,) + tail)
    return tuple(out)


def admissible_words(n: int, s: int, w: int) -> tuple[Word, ...]:
    """Admissible words of length s and weight w with leading index below
    n, in decreasing lexicographic order."""
    if n < 1 or s < 0 or w < 0:
        return ()
    return _words(n - 1, s, w)


def differential_word(word: Word) -> frozenset[Word]:
    """Differential of a single word, as a set of admissible words."""
    acc: set[Word] = set()
    for k, i in enumerate(word):
        for j in range(1, i // 2 + 1):
            if binom2(i - j, j):
                child = word[:k] + (i - j, j - 1) + word[k + 1 :]
                acc ^= lambda_reduce_word(child)
    return frozenset(acc)


@lru_cache(maxsize=None)
def complex_matrix(n: int, s: int, w: int) -> Mat:
    """Differential out of bidegree (s, w) as a GF(2) matrix.

    Rows follow admissible_words(n, s, w), bit columns follow
    admissible_words(n, s + 1, w).  The result is cached; treat it as
    immutable.
    """
    src = admissible_words(n, s, w)
    dst = admissible_words(n, s + 1, w)
    col = {word: j for j, word in enumerate(dst)}
    rows = []
    for word in src:
        bits = 0
        for term in differential_word(word):
            j = col.get(term)
            if j is None:
                raise InternalError(
                    f"differential left the basis: {word} -> {term} "
                    f"with leading bound {n}"
                )
            bits |= 1 << j
        rows.append(bits)
    return Mat(rows, len(dst))


def homology(
    n: int, s_max: int, w_max: int
) -> dict[tuple[int, int], int]:
    """Homology dimensions {(s, t): dim} for t = n + weight."""
    if n < 1:
        raise ValueError(f"bottom cell must be >= 1, got {n}")
    out: dict[tuple[int, int], int] = {}
    for w in range(w_max + 1):
        prev_rank = 0
        for s in range(s_max + 1):
            cur = complex_matrix(n, s, w)
            r = gf2.rank(cur)
            h = len(cur.rows) - r - prev_rank
            if h < 0:
                raise InternalError(
                    f"negative homology rank at n={n}, s={s}, w={w}"
                )
            if h:
                out[(s, n + w)] = h
            prev_rank = r
    return out


def _xor_reduce(vec: int, basis: dict[int, int]) -> int:
    # basis maps top-bit position to a vector with that top bit; each
    # step clears the current top bit, so the integer strictly decreases
    while vec:
        row = basis.get(vec.bit_length() - 1)
        if row is None:
            return vec
        vec ^= row
    return 0


def cycle_representatives(n: int, s: int, w: int) -> list[tuple[Word, ...]]:
    """One cocycle per homology class in bidegree (s, w), each given by
    the support of a kernel vector."""
    src = admissible_words(n, s, w)
    kernel = gf2.left_kernel(complex_matrix(n, s, w))
    image = complex_matrix(n, s - 1, w) if s >= 1 else Mat([], len(src))
    basis: dict[int, int] = {}
    for row in image.rows:
        resid = _xor_reduce(row, basis)
        if resid:
            basis[resid.bit_length() - 1] = resid
    reps: list[tuple[Word, ...]] = []
    for vec in kernel:
        resid = _xor_reduce(vec, basis)
        if resid:
            reps.append(
                tuple(src[i] for i in range(len(src)) if vec >> i & 1)
            )
            basis[resid.bit_length() - 1] = resid
    return reps


def filtration_check(n: int, s_max: int, w_max: int) -> None:
    """Certify the short exact sequence behind the suspension filtration.

    Words with leading bound n + 1 but not n must start with the letter
    lam_n, stripping that letter must biject onto the doubled-index basis
    one length lower and n + 1 weight lower, and the leading terms of the
    differential must commute with the stripping.  Raises InternalError
    on any mismatch.
    """
    if n < 1:
        raise ValueError(f"bottom cell must be >= 1, got {n}")
    for s in range(s_max + 1):
        for w in range(w_max + 1):
            small = set(admissible_words(n, s, w))
            stripped = []
            for word in admissible_words(n + 1, s, w):
                if word in small:
                    continue
                if not word or word[0] != n:
                    raise InternalError(
                        f"unexpected extra word {word} at bound {n + 1}"
                    )
                stripped.append(word[1:])
            want = ()
            if s >= 1 and w >= n + 1:
                want = admissible_words(2 * n + 1, s - 1, w - n - 1)
            if sorted(stripped) != sorted(want):
                raise InternalError(
                    f"quotient basis mismatch at s={s}, w={w}, bound {n}"
                )
    for s in range(s_max):
        for w in range(w_max + 1):
            for mu in admissible_words(2 * n + 1, s, w):
                lead = frozenset(
                    term[1:]
                    for term in differential_word((n,) + mu)
                    if term and term[0] == n
                )
                if lead != differential_word(mu):
                    raise InternalError(
                        f"quotient differential mismatch on {mu} at "
                        f"bound {n}"
                    )


def connecting_rank(n: int, t: int, s: int) -> int:
    """Rank of the connecting map of the suspension filtration: homology
    of the doubled-index complex at (s - 1, t) into the lower complex at
    (s + 1, t), computed by lifting cocycles through the lam_n prefix."""
    w_high = t - (2 * n + 1)
    w_low = t - n
    if s < 1 or w_high < 0:
        return 0
    low_basis = admissible_words(n, s + 1, w_low)
    col = {word: j for j, word in enumerate(low_basis)}
    d_low = complex_matrix(n, s, w_low)
    stacked = list(d_low.rows)
    base_rank = gf2.rank(d_low)
    for rep in cycle_representatives(2 * n + 1, s - 1, w_high):
        acc: set[Word] = set()
        for mu in rep:
            acc ^= differential_word((n,) + mu)
        bits = 0
        for term in acc:
            if term and term[0] == n:
                raise InternalError(
                    "connecting image did not land in the subcomplex"
                )
            j = col.get(term)
            if j is None:
                raise InternalError(
                    f"connecting image left the basis at n={n}, t={t}, "
                    f"s={s}: {term}"
                )
            bits |= 1 << j
        stacked.append(bits)
    return gf2.rank(Mat(stacked, len(low_basis))) - base_rank


def clear_lambda_caches() -> None:
    _words.cache_clear()
    complex_matrix.cache_clear()
