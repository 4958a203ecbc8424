# cython: language_level=3, boundscheck=False
"""Compiled compute kernels.

Twin of ``_pure``: same straightening worklists for Steenrod and lambda
words, same GF(2) row reduction, with the inner loops in C.  The contract
is bit-identical output (same row order, same pivot order, same normal
forms); ``tests/test_backends.py`` enforces it.

Memo caches are module-level dicts, not thread-safe under mutation;
partition work per process rather than sharing one interpreter across
threads.
"""

BACKEND_NAME = "native"

_adem_memo = {}
_lambda_memo = {}


def clear_caches():
    _adem_memo.clear()
    _lambda_memo.clear()


cdef inline int _binom2_c(long long a, long long b):
    if b < 0 or a < b:
        return 0
    if (a - b) & b:
        return 0
    return 1


def binom2(a, b):
    """Binomial coefficient C(a, b) reduced mod 2 (Lucas: no carries)."""
    return _binom2_c(a, b)


def _adem_step(long long a, long long b):
    # a < 2b; rewrite the length-2 word (a, b) as a sum of admissible pairs.
    cdef long long c
    out = []
    for c in range(a // 2 + 1):
        if _binom2_c(b - c - 1, a - 2 * c):
            if c:
                out.append((a + b - c, c))
            else:
                out.append((a + b,))
    return tuple(out)


def adem_reduce_word(word):
    """Straighten a word of positive squares into admissible monomials.

    Same worklist and leftmost-pair policy as the pure backend.
    """
    word = tuple(word)
    memo = _adem_memo
    stack = [word]
    cdef Py_ssize_t p, n, pos
    while stack:
        w = stack[-1]
        if w in memo:
            stack.pop()
            continue
        n = len(w)
        pos = -1
        for p in range(n - 1):
            if <long long>w[p] < 2 * <long long>w[p + 1]:
                pos = p
                break
        if pos < 0:
            memo[w] = frozenset((w,))
            stack.pop()
            continue
        pre = w[:pos]
        suf = w[pos + 2:]
        kids = [pre + mid + suf for mid in _adem_step(w[pos], w[pos + 1])]
        missing = [k for k in kids if k not in memo]
        if missing:
            stack.extend(missing)
            continue
        acc = set()
        for k in kids:
            acc ^= memo[k]
        memo[w] = frozenset(acc)
        stack.pop()
    return memo[word]


def _lambda_step(long long i, long long j):
    # j > 2i; rewrite (i, j) as a sum of pairs (i + m - k, 2i + 1 + k).
    cdef long long m = j - 2 * i - 1
    cdef long long k
    out = []
    for k in range((m + 1) // 2):
        if _binom2_c(m - 1 - k, k):
            out.append((i + m - k, 2 * i + 1 + k))
    return tuple(out)


def lambda_reduce_word(word):
    """Straighten a lambda-algebra word into admissible normal form."""
    word = tuple(word)
    memo = _lambda_memo
    stack = [word]
    cdef Py_ssize_t p, n, pos
    while stack:
        w = stack[-1]
        if w in memo:
            stack.pop()
            continue
        n = len(w)
        pos = -1
        for p in range(n - 1):
            if 2 * <long long>w[p] < <long long>w[p + 1]:
                pos = p
                break
        if pos < 0:
            memo[w] = frozenset((w,))
            stack.pop()
            continue
        pre = w[:pos]
        suf = w[pos + 2:]
        kids = [pre + mid + suf for mid in _lambda_step(w[pos], w[pos + 1])]
        missing = [k for k in kids if k not in memo]
        if missing:
            stack.extend(missing)
            continue
        acc = set()
        for k in kids:
            acc ^= memo[k]
        memo[w] = frozenset(acc)
        stack.pop()
    return memo[word]


def rref_bits(rows, ncols, n_pivot_cols=None):
    """Row-reduce bit-packed GF(2) rows (bit k = column k).

    Rows are packed into 64-bit limbs, eliminated in C, and unpacked.
    Scan and swap order match the pure backend exactly.
    """
    cdef Py_ssize_t nrows = len(rows)
    cdef long long ncols_c = ncols
    cdef long long npc = ncols_c if n_pivot_cols is None else <long long>n_pivot_cols
    cdef long long width = ncols_c if ncols_c > npc else npc
    cdef Py_ssize_t nlimbs = <Py_ssize_t>((width + 63) // 64)
    if nlimbs == 0:
        nlimbs = 1
    pivots = []
    if nrows == 0:
        return [], pivots
    cdef Py_ssize_t stride = nlimbs * 8
    cdef bytearray buf = bytearray(nrows * stride)
    cdef Py_ssize_t i
    for i in range(nrows):
        buf[i * stride:(i + 1) * stride] = (<object>rows[i]).to_bytes(
            stride, "little"
        )
    cdef unsigned long long[::1] m = memoryview(buf).cast("Q")
    cdef Py_ssize_t r = 0
    cdef Py_ssize_t piv, j, k, limb
    cdef long long col
    cdef unsigned long long mask, tmp
    for col in range(npc):
        limb = <Py_ssize_t>(col >> 6)
        mask = (<unsigned long long>1) << (col & 63)
        piv = -1
        for j in range(r, nrows):
            if m[j * nlimbs + limb] & mask:
                piv = j
                break
        if piv < 0:
            continue
        if piv != r:
            for k in range(nlimbs):
                tmp = m[r * nlimbs + k]
                m[r * nlimbs + k] = m[piv * nlimbs + k]
                m[piv * nlimbs + k] = tmp
        for j in range(nrows):
            if j != r and (m[j * nlimbs + limb] & mask):
                for k in range(nlimbs):
                    m[j * nlimbs + k] ^= m[r * nlimbs + k]
        pivots.append(col)
        r += 1
        if r == nrows:
            break
    out = [
        int.from_bytes(bytes(buf[i * stride:(i + 1) * stride]), "little")
        for i in range(nrows)
    ]
    return out, pivots
