"""Pure-Python compute kernels.

These are the hot loops of the whole package: straightening words into
admissible normal form (for the Steenrod algebra and for the lambda algebra)
and row reduction of bit-packed GF(2) matrices.  A compiled twin lives in
``_kernels.pyx``; both implementations must produce bit-identical output
(same row order, same pivot order), and ``_backend`` picks one at import
time.

Memo caches are plain module-level dicts.  They are not thread-safe under
mutation; partition work per process (the CLI does) rather than sharing one
interpreter across threads.
"""

from __future__ import annotations

BACKEND_NAME = "pure"

_adem_memo: dict[tuple[int, ...], frozenset[tuple[int, ...]]] = {}
_lambda_memo: dict[tuple[int, ...], frozenset[tuple[int, ...]]] = {}


def clear_caches() -> None:
    _adem_memo.clear()
    _lambda_memo.clear()


def binom2(a: int, b: int) -> int:
    """Binomial coefficient C(a, b) reduced mod 2 (Lucas: no carries)."""
    if b < 0 or a < b:
        return 0
    return 0 if (a - b) & b else 1


def _adem_step(a: int, b: int) -> tuple[tuple[int, ...], ...]:
    # a < 2b; rewrite the length-2 word (a, b) as a sum of admissible pairs.
    out = []
    for c in range(a // 2 + 1):
        if binom2(b - c - 1, a - 2 * c):
            out.append((a + b - c, c) if c else (a + b,))
    return tuple(out)


def adem_reduce_word(word: tuple[int, ...]) -> frozenset[tuple[int, ...]]:
    """Straighten a word of positive squares into admissible monomials.

    Returns the mod-2 set of admissible words (i_j >= 2 i_{j+1}) whose sum
    equals the input product.  Iterative worklist: no recursion, so deeply
    inadmissible words cannot blow the interpreter stack.
    """
    word = tuple(word)
    memo = _adem_memo
    stack = [word]
    while stack:
        w = stack[-1]
        if w in memo:
            stack.pop()
            continue
        pos = -1
        for p in range(len(w) - 1):
            if w[p] < 2 * w[p + 1]:
                pos = p
                break
        if pos < 0:
            memo[w] = frozenset((w,))
            stack.pop()
            continue
        pre, suf = w[:pos], w[pos + 2 :]
        kids = [pre + mid + suf for mid in _adem_step(w[pos], w[pos + 1])]
        missing = [k for k in kids if k not in memo]
        if missing:
            stack.extend(missing)
            continue
        acc: set[tuple[int, ...]] = set()
        for k in kids:
            acc ^= memo[k]
        memo[w] = frozenset(acc)
        stack.pop()
    return memo[word]


def _lambda_step(i: int, j: int) -> tuple[tuple[int, int], ...]:
    # j > 2i; rewrite the inadmissible pair (i, j) as a sum of pairs
    # (i + m - k, 2i + 1 + k), m = j - 2i - 1.  m = 0 gives the empty sum.
    m = j - 2 * i - 1
    out = []
    for k in range((m + 1) // 2):
        if binom2(m - 1 - k, k):
            out.append((i + m - k, 2 * i + 1 + k))
    return tuple(out)


def lambda_reduce_word(word: tuple[int, ...]) -> frozenset[tuple[int, ...]]:
    """Straighten a lambda-algebra word into admissible normal form.

    Admissible means 2 i_j >= i_{j+1} for consecutive indices.  Same
    worklist skeleton as ``adem_reduce_word``.
    """
    word = tuple(word)
    memo = _lambda_memo
    stack = [word]
    while stack:
        w = stack[-1]
        if w in memo:
            stack.pop()
            continue
        pos = -1
        for p in range(len(w) - 1):
            if 2 * w[p] < w[p + 1]:
                pos = p
                break
        if pos < 0:
            memo[w] = frozenset((w,))
            stack.pop()
            continue
        pre, suf = w[:pos], w[pos + 2 :]
        kids = [pre + mid + suf for mid in _lambda_step(w[pos], w[pos + 1])]
        missing = [k for k in kids if k not in memo]
        if missing:
            stack.extend(missing)
            continue
        acc: set[tuple[int, ...]] = set()
        for k in kids:
            acc ^= memo[k]
        memo[w] = frozenset(acc)
        stack.pop()
    return memo[word]


def rref_bits(
    rows: list[int], ncols: int, n_pivot_cols: int | None = None
) -> tuple[list[int], list[int]]:
    """Row-reduce bit-packed GF(2) rows (bit k = column k).

    Scans columns 0..n_pivot_cols-1 left to right; for each, the first
    remaining row with that bit set becomes the pivot row and the bit is
    cleared from every other row.  Returns (reduced rows, pivot columns).
    The compiled twin replicates this scan and swap order exactly.
    """
    work = list(rows)
    if n_pivot_cols is None:
        n_pivot_cols = ncols
    pivots: list[int] = []
    r = 0
    nrows = len(work)
    for col in range(n_pivot_cols):
        mask = 1 << col
        piv = -1
        for i in range(r, nrows):
            if work[i] & mask:
                piv = i
                break
        if piv < 0:
            continue
        work[r], work[piv] = work[piv], work[r]
        row = work[r]
        for i in range(nrows):
            if i != r and (work[i] & mask):
                work[i] ^= row
        pivots.append(col)
        r += 1
        if r == nrows:
            break
    return work, pivots
