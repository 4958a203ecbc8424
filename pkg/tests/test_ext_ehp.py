"""Chart extraction, the long exact sequence assembly, and renderers."""

from __future__ import annotations

import pytest

from unstable_ext import ext_ehp as ee
from unstable_ext import gf2
from unstable_ext import resolution as res
from unstable_ext.errors import InternalError

# summand counts of the small resolutions, derived by hand; keyed
# (index, page) to match the chart convention
CHART_FIXTURES = {
    2: {(2, 0): 1, (1, 1): 1},
    3: {(3, 0): 1, (2, 1): 1, (1, 2): 1},
    4: {(4, 0): 1, (3, 1): 1, (2, 1): 1, (2, 2): 1, (1, 3): 1},
    5: {
        (5, 0): 1,
        (4, 1): 1,
        (3, 1): 1,
        (3, 2): 1,
        (2, 2): 1,
        (2, 3): 1,
        (1, 4): 1,
    },
    6: {
        (6, 0): 1,
        (5, 1): 1,
        (4, 1): 1,
        (4, 2): 1,
        (2, 2): 1,
        (3, 3): 1,
        (2, 3): 1,
        (2, 4): 1,
        (1, 5): 1,
    },
}

# low stems of the sphere with bottom cell 2: infinite towers over the
# degree-2 and degree-3 classes, single classes in stems 4 and 5; frozen
# from the word-complex homology, window t <= 8, pages <= 6
S2_LOW_CHART = {
    (0, 2): 1,
    (1, 3): 1,
    (1, 4): 1,
    (2, 4): 1,
    (2, 5): 1,
    (2, 6): 1,
    (3, 5): 1,
    (3, 6): 1,
    (3, 8): 1,
    (4, 6): 1,
    (4, 7): 1,
    (5, 7): 1,
    (5, 8): 1,
    (6, 8): 1,
}


def test_chart_matches_fixture_counts():
    for t, want in CHART_FIXTURES.items():
        chart = ee.ext_chart(t, t)
        counts = {key: len(tags) for key, tags in chart.items()}
        assert counts == want, t


def test_chart_tags_are_resolution_tags():
    chart = ee.ext_chart(5, 5)
    cx = res.minimal_resolution(5, 5)
    tags = {sm.tag for page in cx.pages for sm in page}
    for (index, s), named in chart.items():
        assert set(named) <= tags
        for tag in named:
            sm = cx.by_tag()[tag]
            assert sm.index == index and f"s{s}" in tag


def test_sphere_chart_bottom_cell_one_is_a_tower():
    chart = ee.sphere_chart(1, 12, 10)
    assert chart == {(s, s + 1): 1 for s in range(11)}


def test_sphere_chart_bottom_cell_two_low_stems():
    chart = ee.sphere_chart(2, 8, 6)
    assert chart == S2_LOW_CHART


def test_sphere_chart_rejects_bad_input():
    with pytest.raises(ValueError):
        ee.sphere_chart(0, 4, 4)


def test_p_matrix_shape_and_gating():
    t, bound = 6, 7
    _, da = res.doubled_solved(t, bound)
    for s in range(bound):
        for index in range(1, t + 2):
            mat = ee.p_matrix(da, index, s)
            n_b = len(
                [
                    sm
                    for sm in da.pages[s]
                    if sm.prov == "B" and sm.index == index
                ]
            )
            n_a = len(
                [
                    sm
                    for sm in da.pages[s + 1]
                    if sm.prov == "A" and sm.index == index
                ]
            )
            assert (len(mat.rows), mat.ncols) == (n_b, n_a)
    with pytest.raises(ValueError):
        ee.p_matrix(da, 2, bound)  # needs page bound + 1
    bgc = res.minimal_resolution(5, 6)
    with pytest.raises(ValueError):
        ee.p_matrix(res.doubled_complex(bgc), 2, 0)  # unsolved


def test_ehp_sequences_verify_across_window():
    for n in range(1, 5):
        for t in range(1, 9):
            seq = ee.ehp_assemble(n, t, 6)
            report = ee.verify_ehp(seq)
            assert len(report["columns"]) == 7
            for i, col in enumerate(seq.columns[:-1]):
                # the P target is the next column's E source
                assert col.p_mat.ncols == seq.columns[i + 1].e_source_dim


def test_ehp_middle_dims_track_next_chart():
    n, t, s_max = 2, 6, 6
    seq = ee.ehp_assemble(n, t, s_max)
    chart = ee.ext_chart(t + 1, s_max)
    for col in seq.columns:
        assert col.middle_dim == len(chart.get((n + 1, col.s), ()))


def test_some_projection_is_nonzero():
    # guards the splitting check against being vacuous: away from power
    # indices the P maps do carry rank
    seq = ee.ehp_assemble(2, 5, 6)
    assert any(any(col.p_mat.rows) for col in seq.columns)


def test_james_splitting_small_powers():
    ee.james_splitting_check(1, 8, 6)
    ee.james_splitting_check(2, 8, 6)
    with pytest.raises(ValueError):
        ee.james_splitting_check(0, 4, 4)


def test_verify_catches_tampered_projection():
    seq = ee.ehp_assemble(2, 5, 6)
    tampered = False
    for col in seq.columns:
        if col.p_mat.rows and col.p_mat.ncols:
            col.p_mat.rows[0] ^= 1
            tampered = True
            break
    assert tampered
    with pytest.raises(InternalError):
        ee.verify_ehp(seq)


def test_ehp_payload_shape():
    seq = ee.ehp_assemble(3, 5, 4)
    payload = ee.ehp_to_payload(seq, ee.verify_ehp(seq))
    assert payload["sphere_e"] == 3
    assert payload["sphere_middle"] == 4
    assert payload["sphere_h"] == 7
    assert payload["t_middle"] == 6
    assert len(payload["columns"]) == 5
    assert {"s", "middle_dim", "p_rank"} <= set(payload["columns"][0])


def test_render_tsv_exact():
    chart = {(0, 2): 1, (1, 3): 2, (2, 9): 1, (1, 5): 0}
    got = ee.render_chart_tsv(2, chart)
    assert got == (
        "n\ts\tt\tdim\n"
        "2\t0\t2\t1\n"
        "2\t1\t3\t2\n"
        "2\t2\t9\t1\n"
    )


def test_render_ascii_star_budget():
    chart = ee.sphere_chart(2, 8, 6)
    art = ee.render_chart_ascii(2, chart)
    assert art.count("*") == sum(chart.values())
    lines = art.splitlines()
    assert lines[-1].endswith("(t-s)")
    # highest filtration row comes first
    assert lines[0].startswith("s=6")
    assert ee.render_chart_ascii(9, {}) == "(empty chart)\n"


def test_render_ascii_multiplicity_column():
    art = ee.render_chart_ascii(1, {(0, 1): 1, (1, 1): 3})
    rows = art.splitlines()
    assert rows[0].startswith("s=1") and "***" in rows[0]
    assert rows[1].startswith("s=0") and rows[1].count("*") == 1


def test_assemble_rejects_bad_parameters():
    for bad in ((0, 3, 3), (2, 0, 3), (2, 3, -1)):
        with pytest.raises(ValueError):
            ee.ehp_assemble(*bad)
