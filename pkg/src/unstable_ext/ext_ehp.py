"""E2 charts for spheres and the algebraic EHP sequences relating them.

The chart of the sphere with bottom cell n is read off summand counts of
minimal resolutions: the (s, t) entry is the number of J(n) summands on
page s of the resolution for suspension t.  The EHP sequence for that
sphere is materialized from the solved, unminimized double of the
resolution for t: the scalar block between equal-index halved and
suspended summands is the P map, its cokernel embeds the chart of the
sphere below, and its kernel projects onto the chart of the doubled-index
sphere, giving a long exact sequence of GF(2) spaces that is verified node
by node and cross-checked against the independently computed chart of the
next suspension.
"""

from __future__ import annotations

from dataclasses import dataclass

from unstable_ext import gf2
from unstable_ext import resolution as res
from unstable_ext.errors import InternalError
from unstable_ext.gf2 import Mat

__all__ = [
    "EHPColumn",
    "EHPSequence",
    "chart_of",
    "ehp_assemble",
    "ehp_to_payload",
    "ext_chart",
    "james_splitting_check",
    "p_matrix",
    "render_chart_ascii",
    "render_chart_tsv",
    "sphere_chart",
    "verify_ehp",
]


def chart_of(cx: res.Complex) -> dict[tuple[int, int], tuple[str, ...]]:
    """Summand tags of a minimal complex, keyed by (index, page)."""
    if res.identity_entries(cx):
        raise InternalError("chart read off a non-minimal complex")
    out: dict[tuple[int, int], list[str]] = {}
    for s, page in enumerate(cx.pages):
        for sm in page:
            out.setdefault((sm.index, s), []).append(sm.tag)
    return {key: tuple(tags) for key, tags in out.items()}


def ext_chart(t: int, s_max: int) -> dict[tuple[int, int], tuple[str, ...]]:
    """Summand tags of the minimal resolution, keyed by (index, page)."""
    return chart_of(res.minimal_resolution(t, s_max))


def sphere_chart(
    n: int, t_max: int, s_max: int
) -> dict[tuple[int, int], int]:
    """E2 dimensions {(s, t): dim} for the sphere with bottom cell n."""
    if n < 1:
        raise ValueError(f"sphere index must be >= 1, got {n}")
    out: dict[tuple[int, int], int] = {}
    for t in range(1, t_max + 1):
        chart = ext_chart(t, s_max)
        for (index, s), tags in chart.items():
            if index == n:
                out[(s, t)] = len(tags)
    return out


def p_matrix(da: res.Complex, index: int, s: int) -> Mat:
    """Scalar block from halved J(index) at page s to suspended J(index)
    at page s + 1 of a solved double, as a GF(2) matrix.

    Rows follow the page order of the halved summands, columns the page
    order of the suspended ones; the entry is 1 exactly when the solved
    differential carries the identity component.
    """
    if not da.solved:
        raise ValueError("projection block needs a solved complex")
    if s < 0 or s + 1 > da.s_max:
        raise ValueError(f"page {s} out of range for bound {da.s_max}")
    row_summands = [
        sm for sm in da.pages[s] if sm.prov == "B" and sm.index == index
    ]
    col_summands = [
        sm for sm in da.pages[s + 1] if sm.prov == "A" and sm.index == index
    ]
    rows = []
    for sm in row_summands:
        bits = 0
        for j, other in enumerate(col_summands):
            f = da.diff.get((s, sm.tag, other.tag))
            if f is not None and f.op:
                bits |= 1 << j
        rows.append(bits)
    return Mat(rows, len(col_summands))


@dataclass
class EHPColumn:
    """One filtration column of the long exact sequence.

    ``e_mat`` maps the chart of the lower sphere at (s, t) into the middle
    chart at (s, t + 1); ``h_mat`` projects the middle chart onto the chart
    of the doubled-index sphere at (s - 1, t); ``p_mat`` raises filtration
    by two back into the lower sphere's chart at (s + 1, t).
    """

    s: int
    e_source_dim: int
    middle_dim: int
    h_target_dim: int
    coker_dim: int
    ker_dim: int
    e_mat: Mat
    h_mat: Mat
    p_mat: Mat


@dataclass
class EHPSequence:
    sphere: int  # bottom cell of the suspending sphere (the E source)
    t: int
    s_max: int
    columns: list[EHPColumn]


def _coker_projection(p_prev: Mat, extra_cols: int) -> tuple[Mat, int]:
    # matrix of "reduce mod the row space of p_prev", onto the non-pivot
    # coordinates, padded with zero columns for the kernel part
    work, pivots = gf2.rref(p_prev)
    pivot_set = set(pivots)
    non_pivot = [c for c in range(p_prev.ncols) if c not in pivot_set]
    pos = {c: i for i, c in enumerate(non_pivot)}
    rows = []
    for i in range(p_prev.ncols):
        vec = gf2.row_space_project(p_prev, 1 << i)
        bits = 0
        for c in non_pivot:
            if vec & (1 << c):
                bits |= 1 << pos[c]
        rows.append(bits)
    return Mat(rows, len(non_pivot) + extra_cols), len(non_pivot)


def ehp_assemble(n: int, t: int, s_max: int) -> EHPSequence:
    """Materialize the sequence relating spheres n, n + 1, and 2n + 1 at
    suspension degree t (middle chart at t + 1), for pages 0..s_max."""
    if n < 1 or t < 1 or s_max < 0:
        raise ValueError(f"bad EHP parameters ({n}, {t}, {s_max})")
    _, da = res.doubled_solved(t, s_max + 1)
    p_mats = {s: p_matrix(da, n + 1, s) for s in range(s_max + 1)}
    columns = []
    for s in range(s_max + 1):
        p_cur = p_mats[s]
        if s == 0:
            dim_a0 = len(
                [
                    sm
                    for sm in da.pages[0]
                    if sm.prov == "A" and sm.index == n + 1
                ]
            )
            p_prev = Mat([], dim_a0)
        else:
            p_prev = p_mats[s - 1]
        ker_basis = gf2.left_kernel(p_cur)
        e_mat, coker_dim = _coker_projection(p_prev, len(ker_basis))
        middle_dim = coker_dim + len(ker_basis)
        h_mat = Mat(
            [0] * coker_dim + list(ker_basis), len(p_cur.rows)
        )
        columns.append(
            EHPColumn(
                s=s,
                e_source_dim=p_prev.ncols,
                middle_dim=middle_dim,
                h_target_dim=len(p_cur.rows),
                coker_dim=coker_dim,
                ker_dim=len(ker_basis),
                e_mat=e_mat,
                h_mat=h_mat,
                p_mat=p_cur,
            )
        )
    return EHPSequence(n, t, s_max, columns)


def verify_ehp(seq: EHPSequence) -> dict:
    """Check the assembled sequence is exact and matches the next chart.

    Exactness is checked at every node in range: composites vanish and
    ranks of adjacent maps sum to the dimension at the node.  The middle
    dimensions must equal the J(n+1) summand counts of the independently
    computed resolution for t + 1, page by page.
    """
    chart_next = ext_chart(seq.t + 1, seq.s_max)
    report = []
    for i, col in enumerate(seq.columns):
        s = col.s
        want_mid = len(chart_next.get((seq.sphere + 1, s), ()))
        if col.middle_dim != want_mid:
            raise InternalError(
                f"middle chart mismatch at page {s}: sequence gives "
                f"{col.middle_dim}, resolution for t+1 gives {want_mid}"
            )
        p_prev = seq.columns[i - 1].p_mat if i else Mat([], col.e_source_dim)
        prod = gf2.mat_mul(p_prev, col.e_mat)
        if any(prod.rows):
            raise InternalError(f"P then E does not vanish at page {s}")
        if gf2.rank(p_prev) + gf2.rank(col.e_mat) != col.e_source_dim:
            raise InternalError(f"sequence not exact entering page {s}")
        prod = gf2.mat_mul(col.e_mat, col.h_mat)
        if any(prod.rows):
            raise InternalError(f"E then H does not vanish at page {s}")
        if gf2.rank(col.e_mat) + gf2.rank(col.h_mat) != col.middle_dim:
            raise InternalError(f"sequence not exact at middle, page {s}")
        prod = gf2.mat_mul(col.h_mat, col.p_mat)
        if any(prod.rows):
            raise InternalError(f"H then P does not vanish at page {s}")
        if gf2.rank(col.h_mat) + gf2.rank(col.p_mat) != col.h_target_dim:
            raise InternalError(f"sequence not exact leaving page {s}")
        report.append(
            {
                "s": s,
                "e_source_dim": col.e_source_dim,
                "middle_dim": col.middle_dim,
                "h_target_dim": col.h_target_dim,
                "p_rank": gf2.rank(col.p_mat),
            }
        )
    return {"sphere": seq.sphere, "t": seq.t, "columns": report}


def james_splitting_check(k: int, t_max: int, s_max: int) -> None:
    """For middle sphere 2^k every P map must vanish and the middle chart
    must split as the sum of the charts of spheres 2^k - 1 and 2^(k+1) - 1
    (with the page shift)."""
    if k < 1:
        raise ValueError("need k >= 1")
    n = 2**k - 1
    for t in range(1, t_max + 1):
        seq = ehp_assemble(n, t, s_max)
        for col in seq.columns:
            if any(col.p_mat.rows):
                raise InternalError(
                    f"P map is nonzero for middle sphere {n + 1} at "
                    f"t={t}, page {col.s}"
                )
        chart_mid = ext_chart(t + 1, s_max)
        chart_low = ext_chart(t, s_max)
        for s in range(s_max + 1):
            mid = len(chart_mid.get((n + 1, s), ()))
            low = len(chart_low.get((n, s), ()))
            high = (
                len(chart_low.get((2 * n + 1, s - 1), ())) if s >= 1 else 0
            )
            if mid != low + high:
                raise InternalError(
                    f"split chart mismatch at t={t}, page {s}: "
                    f"{mid} != {low} + {high}"
                )


def ehp_to_payload(seq: EHPSequence, report: dict) -> dict:
    return {
        "sphere_e": seq.sphere,
        "sphere_middle": seq.sphere + 1,
        "sphere_h": 2 * seq.sphere + 1,
        "t": seq.t,
        "t_middle": seq.t + 1,
        "s_max": seq.s_max,
        "columns": report["columns"],
    }


def render_chart_tsv(n: int, chart: dict[tuple[int, int], int]) -> str:
    lines = ["n\ts\tt\tdim"]
    for (s, t), dim in sorted(chart.items(), key=lambda kv: (kv[0][1], kv[0][0])):
        if dim:
            lines.append(f"{n}\t{s}\t{t}\t{dim}")
    return "\n".join(lines) + "\n"


def render_chart_ascii(n: int, chart: dict[tuple[int, int], int]) -> str:
    """Classic chart picture: stem t - s across, filtration s up, one star
    per basis element."""
    cells: dict[tuple[int, int], int] = {}
    max_x = 0
    max_s = 0
    for (s, t), dim in chart.items():
        if dim:
            x = t - s
            cells[(x, s)] = cells.get((x, s), 0) + dim
            max_x = max(max_x, x)
            max_s = max(max_s, s)
    if not cells:
        return "(empty chart)\n"
    widths = {
        x: max(
            [len(str(x))]
            + [cells.get((x, s), 1) for s in range(max_s + 1)]
        )
        for x in range(max_x + 1)
    }
    lines = []
    for s in range(max_s, -1, -1):
        row = [
            ("*" * cells.get((x, s), 0)).ljust(widths[x])
            for x in range(max_x + 1)
        ]
        lines.append(f"s={s:<3d}| " + " ".join(row).rstrip())
    lines.append("     +" + "-" * (sum(widths.values()) + max_x + 1))
    footer = [str(x).ljust(widths[x]) for x in range(max_x + 1)]
    lines.append("       " + " ".join(footer).rstrip() + "  (t-s)")
    return "\n".join(lines) + "\n"
