"""Tests for the admissible-form Steenrod algebra layer."""

from __future__ import annotations

import math
import random

import pytest

from unstable_ext import steenrod as st


def comb2(a: int, b: int) -> int:
    # independent binomial-mod-2 oracle via exact integer binomials
    if b < 0 or a < b:
        return 0
    return math.comb(a, b) % 2


def adem_pairs_oracle(a: int, b: int) -> set[tuple[int, ...]]:
    # straighten the length-2 word (a, b) with a < 2b, factorial binomials
    out = set()
    for c in range(a // 2 + 1):
        if comb2(b - c - 1, a - 2 * c):
            out.add((a + b - c, c) if c else (a + b,))
    return out


def straighten_random_order(word, rng):
    # Confluence oracle: rewrite a randomly chosen inadmissible pair at each
    # step instead of the leftmost one; the normal form must agree anyway.
    terms = {tuple(word)}
    while True:
        picks = []
        for w in terms:
            for p in range(len(w) - 1):
                if w[p] < 2 * w[p + 1]:
                    picks.append((w, p))
        if not picks:
            return frozenset(terms)
        w, p = picks[rng.randrange(len(picks))]
        repl = {
            w[:p] + mid + w[p + 2 :] for mid in adem_pairs_oracle(w[p], w[p + 1])
        }
        terms ^= {w}
        terms ^= repl


def brute_admissible(d: int, e: int) -> set[tuple[int, ...]]:
    # all compositions of d, filtered; independent of the package generator
    if d == 0:
        return {()}
    out = set()

    def compositions(rest, prefix):
        if rest == 0:
            out.add(prefix)
            return
        for first in range(1, rest + 1):
            compositions(rest - first, prefix + (first,))

    compositions(d, ())
    return {
        w
        for w in out
        if st.is_admissible(w) and 2 * w[0] - d <= e
    }


def test_binom2_matches_factorial():
    for a in range(-3, 41):
        for b in range(-3, 41):
            assert st.binom2(a, b) == comb2(a, b), (a, b)


def test_classic_relations():
    assert not st.multiply(st.sq(1), st.sq(1))
    assert st.multiply(st.sq(1), st.sq(2)) == st.sq(3)
    assert st.multiply(st.sq(2), st.sq(2)) == st.element([(3, 1)])
    assert not st.multiply(st.sq(3), st.sq(2))
    assert st.multiply(st.sq(2), st.sq(3)) == st.element([(5,), (4, 1)])
    assert st.multiply(st.sq(2), st.sq(4)) == st.element([(6,), (5, 1)])


def test_normal_form_is_admissible():
    rng = random.Random(20260819)
    for _ in range(200):
        word = tuple(rng.randrange(1, 13) for _ in range(rng.randrange(1, 6)))
        out = st.adem_reduce(word)
        assert out.degree == sum(word)
        for w in out.terms:
            assert st.is_admissible(w), (word, w)


def test_confluence_against_random_rewrite_order():
    rng = random.Random(7)
    for _ in range(150):
        word = tuple(rng.randrange(1, 10) for _ in range(rng.randrange(2, 5)))
        expect = straighten_random_order(word, rng)
        assert st.adem_reduce(word).terms == expect, word


def test_multiply_associative():
    rng = random.Random(11)
    for _ in range(120):
        words = [
            tuple(rng.randrange(1, 9) for _ in range(rng.randrange(1, 3)))
            for _ in range(3)
        ]
        x, y, z = (st.adem_reduce(w) for w in words)
        assert st.multiply(st.multiply(x, y), z) == st.multiply(
            x, st.multiply(y, z)
        ), words


def test_unit_and_zero():
    x = st.element([(4, 2, 1)])
    assert st.multiply(st.unit(), x) == x
    assert st.multiply(x, st.unit()) == x
    assert not st.multiply(st.zero(3), x)
    assert st.multiply(st.zero(3), x).degree == 3 + 7


def test_admissible_basis_matches_bruteforce():
    for d in range(0, 12):
        for e in range(0, d + 3):
            got = st.admissible_basis(d, e)
            assert len(set(got)) == len(got)
            assert list(got) == sorted(got, reverse=True)
            assert set(got) == brute_admissible(d, e), (d, e)


def test_admissible_basis_examples():
    assert st.admissible_basis(0, 0) == ((),)
    assert st.admissible_basis(5, 5) == ((5,), (4, 1))
    assert st.admissible_basis(7, 7) == ((7,), (6, 1), (5, 2), (4, 2, 1))
    assert st.admissible_basis(7, 1) == ((4, 2, 1),)
    assert st.admissible_basis(7, 0) == ()


def test_excess_and_truncate():
    assert st.excess(()) == 0
    assert st.excess((7,)) == 7
    assert st.excess((4, 2, 1)) == 1
    x = st.element([(7,), (6, 1), (4, 2, 1)])
    assert st.truncate_excess(x, 4).terms == frozenset({(4, 2, 1)})
    assert st.truncate_excess(x, 7) == x
    assert st.truncate_excess(x, 0).degree == 7


def test_halve_examples():
    assert st.halve(st.sq(2)) == st.sq(1)
    assert not st.halve(st.sq(3))
    assert st.halve(st.element([(6, 2)])) == st.element([(3, 1)])
    assert st.halve(st.element([(6, 2), (5, 3)])) == st.element([(3, 1)])


def test_halve_is_multiplicative():
    # compare supports: for odd-degree factors both sides are zero but the
    # degree annotations of zero differ (floor of half is not additive)
    rng = random.Random(42)
    for _ in range(150):
        wx = tuple(rng.randrange(1, 11) for _ in range(rng.randrange(1, 3)))
        wy = tuple(rng.randrange(1, 11) for _ in range(rng.randrange(1, 3)))
        x, y = st.adem_reduce(wx), st.adem_reduce(wy)
        lhs = st.halve(st.multiply(x, y))
        rhs = st.multiply(st.halve(x), st.halve(y))
        assert lhs.terms == rhs.terms, (wx, wy)
        if sum(wx) % 2 == 0 and sum(wy) % 2 == 0:
            assert lhs == rhs, (wx, wy)


def test_decomposable_iff_not_power_of_two():
    for m in range(1, 13):
        expect = (m & (m - 1)) != 0
        assert st.is_decomposable(st.sq(m)) == expect, m


def test_decomposable_sums():
    assert st.is_decomposable(st.zero(4))
    assert st.is_decomposable(st.element([(3, 1)]))
    assert not st.is_decomposable(st.element([(4,), (3, 1)]))


def test_serialization_roundtrip():
    x = st.element([(7,), (6, 1), (4, 2, 1)])
    assert st.from_payload(st.to_payload(x)) == x
    z = st.zero(5)
    assert st.from_payload(st.to_payload(z)) == z


def test_serialization_rejects_bad_payloads():
    with pytest.raises(ValueError):
        st.from_payload({"degree": 3, "terms": [[1, 2]]})
    with pytest.raises(ValueError):
        st.from_payload({"degree": 4, "terms": [[3]]})
    with pytest.raises(ValueError):
        st.from_payload({"degree": 3, "terms": [[3], [3]]})


def test_constructor_validation():
    with pytest.raises(ValueError):
        st.sq(0)
    with pytest.raises(ValueError):
        st.element([(3,), (2,)])
    with pytest.raises(ValueError):
        st.element([])
    with pytest.raises(ValueError):
        st.adem_reduce((2, 0))
    with pytest.raises(ValueError):
        st.element([(4,)]) ^ st.element([(3,)])
