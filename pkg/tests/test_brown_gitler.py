"""Tests for the module-summand and morphism layer."""

from __future__ import annotations

import random

import pytest

from unstable_ext import brown_gitler as bg
from unstable_ext import gf2
from unstable_ext import steenrod as st


def hom_basis(m: int, n: int):
    # naming elements for morphisms J(m) -> J(n): degree m - n, excess <= n
    return st.admissible_basis(m - n, n)


def test_slice_fixtures():
    assert bg.realize_slice(1, 1) == ((),)
    assert bg.realize_slice(1, 0) == ()
    assert bg.realize_slice(2, 1) == ((1,),)
    assert bg.realize_slice(2, 2) == ((),)
    assert bg.realize_slice(3, 1) == ()
    assert bg.realize_slice(3, 2) == ((1,),)
    assert bg.realize_slice(4, 1) == ((2, 1),)
    assert bg.realize_slice(4, 2) == ((2,),)
    assert bg.realize_slice(4, 3) == ((1,),)
    assert bg.realize_slice(6, 2) == ((3, 1),)
    assert bg.realize_slice(5, 7) == ()


def test_slice_dim_bijection_at_doubling():
    # dim J(2k)^d = dim J(2k-1)^(d-1) + dim J(k)^d
    for k in range(1, 9):
        for d in range(0, 2 * k + 3):
            lhs = len(bg.realize_slice(2 * k, d))
            rhs = len(bg.realize_slice(2 * k - 1, d - 1)) if d >= 1 else 0
            rhs += len(bg.realize_slice(k, d))
            assert lhs == rhs, (k, d)


def test_mahowald_sequence_exact():
    # suspended J(2k-1) includes as the kernel of J(2k) ->> J(k)
    for k in range(1, 9):
        surj = bg.mahowald_surjection(2 * k)
        assert surj is not None and surj.op == st.sq(k)
        for d in range(1, 2 * k + 1):
            m = bg.realize_morphism(surj, d)
            incl = bg.suspension_inclusion(2 * k - 1, d)
            prod = gf2.mat_mul(incl, m)
            assert all(r == 0 for r in prod.rows), (k, d)
            assert gf2.rank(m) == len(bg.realize_slice(k, d)), (k, d)
            assert gf2.rank(incl) == len(incl.rows), (k, d)
            assert gf2.rank(incl) + gf2.rank(m) == len(
                bg.realize_slice(2 * k, d)
            ), (k, d)
    assert bg.mahowald_surjection(5) is None
    assert bg.mahowald_surjection(1) is None


def test_realize_pinned_entries():
    # J(6) -> J(3) named by Sq^3, degree 2: lone entry Sq^3*Sq^1 = Sq^3Sq^1
    f = bg.morphism(6, 3, st.sq(3))
    assert bg.realize_morphism(f, 2).rows == [1]
    # J(6) -> J(3) in degree 3 strips the leading Sq^3
    m = bg.realize_morphism(f, 3)
    assert bg.realize_slice(6, 3) == ((3,), (2, 1))
    assert m.rows == [1, 0]


def test_morphism_normal_form():
    f = bg.morphism(5, 2, st.element([(3,), (2, 1)]))
    assert f.op.terms == frozenset({(2, 1)})
    g = bg.morphism(6, 3, st.sq(3))
    assert g.op == st.sq(3)
    z = bg.morphism(5, 2, st.element([(3,)]))
    assert bg.is_zero(z)
    with pytest.raises(ValueError):
        bg.morphism(5, 2, st.sq(2))
    with pytest.raises(ValueError):
        bg.morphism(5, 0, st.element([(5,)]))


def test_compose_truncates_at_target():
    # Sq^2 then Sq^1: product Sq^1Sq^2 = Sq^3 has excess 3, dies into J(2)
    f = bg.morphism(5, 4, st.sq(1))
    g = bg.morphism(4, 2, st.sq(2))
    assert bg.is_zero(bg.compose(g, f))
    with pytest.raises(ValueError):
        bg.compose(f, g)


def test_identity_and_add():
    i5 = bg.identity_morphism(5)
    f = bg.morphism(5, 2, st.element([(2, 1)]))
    assert bg.compose(f, i5) == f
    assert bg.compose(bg.identity_morphism(2), f) == f
    assert bg.is_zero(bg.add(f, f))
    assert bg.add(f, bg.morphism(5, 2, st.zero(3))) == f
    with pytest.raises(ValueError):
        bg.add(f, i5)


def test_realize_functorial_exhaustive():
    for m in range(1, 9):
        for b in range(1, m + 1):
            for c in range(1, b + 1):
                for wf in hom_basis(m, b):
                    f = bg.morphism(m, b, st.element([wf], m - b))
                    for wg in hom_basis(b, c):
                        g = bg.morphism(b, c, st.element([wg], b - c))
                        gf = bg.compose(g, f)
                        for d in range(0, m + 1):
                            lhs = bg.realize_morphism(gf, d)
                            rhs = gf2.mat_mul(
                                bg.realize_morphism(f, d),
                                bg.realize_morphism(g, d),
                            )
                            assert lhs.rows == rhs.rows, (m, b, c, wf, wg, d)


def test_realize_functorial_random_sums():
    rng = random.Random(99)
    for _ in range(60):
        m = rng.randrange(2, 11)
        b = rng.randrange(1, m + 1)
        c = rng.randrange(1, b + 1)
        basis_f = hom_basis(m, b)
        basis_g = hom_basis(b, c)
        wf = [w for w in basis_f if rng.randrange(2)]
        wg = [w for w in basis_g if rng.randrange(2)]
        f = bg.morphism(m, b, st.element(wf, m - b))
        g = bg.morphism(b, c, st.element(wg, b - c))
        gf = bg.compose(g, f)
        d = rng.randrange(0, m + 2)
        lhs = bg.realize_morphism(gf, d)
        rhs = gf2.mat_mul(
            bg.realize_morphism(f, d), bg.realize_morphism(g, d)
        )
        assert lhs.rows == rhs.rows, (m, b, c, wf, wg, d)


def test_suspend_and_halve():
    f = bg.morphism(8, 4, st.element([(4,)]))
    sf = bg.suspend_morphism(f)
    assert (sf.source, sf.target) == (9, 5)
    assert sf.op.terms == f.op.terms
    hf = bg.halve_morphism(f)
    assert (hf.source, hf.target, hf.op) == (4, 2, st.sq(2))
    g = bg.morphism(8, 4, st.element([(3, 1)]))
    assert bg.is_zero(bg.halve_morphism(g))
    with pytest.raises(ValueError):
        bg.halve_morphism(bg.morphism(7, 4, st.element([(2, 1)])))


def test_realize_shapes():
    f = bg.morphism(6, 3, st.sq(3))
    m = bg.realize_morphism(f, 7)
    assert m.rows == [] and m.ncols == 0
    m = bg.realize_morphism(f, 6)
    assert m.rows == [0] and m.ncols == 0
