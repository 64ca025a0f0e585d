"""Tests for the two-chart cohomology engine and the factorization search."""

import random
from fractions import Fraction as F

import pytest

from reeslab.algebra import context_for, multiply, one, xi_power
from reeslab.cohomology import (
    char0_b2_check,
    cohomology_dims,
    d_set,
    factorization_search,
    per_level_chi,
)
from reeslab.errors import BudgetExceeded, TheoremViolation, WidthError
from reeslab.fields import RATIONALS, FieldSpec
from reeslab.geometry import cone_tables, normalize_triangle, period_data

WORKED = [(F(-5, 6), F(5, 12)), (F(1, 6), F(-1, 12)), (0, 1)]


def worked(char=0):
    tri = normalize_triangle(WORKED)
    return (
        context_for(tri, FieldSpec(char)),
        cone_tables(tri),
        period_data(tri),
    )


def family_triangle(g):
    g = F(g)
    return normalize_triangle([(g - 3, (3 - g) / 2), (g - 2, (2 - g) / 2), (0, 1)])


# ---------------------------------------------------------------------------
# per-level Euler characteristics


def test_chi_pattern_worked_example():
    _, ct, pd = worked()
    assert [per_level_chi(ct, pd, n) for n in range(12)] == \
        [1, -1, 0, 0, 0, 0, -1, 0, -1, 0, 0, 0]


def test_chi_is_periodic():
    _, ct, pd = worked()
    for n in range(60):
        assert per_level_chi(ct, pd, n) == per_level_chi(ct, pd, n + pd.sigma)


def test_chi_level_zero_any_triangle():
    for verts in [WORKED, [(0, 0), (1, 0), (0, 1)]]:
        tri = normalize_triangle(verts)
        assert per_level_chi(cone_tables(tri), period_data(tri), 0) == 1


def test_chi_window_sums():
    _, ct, pd = worked()
    for p, rmax in [(2, 2), (3, 1), (5, 1), (7, 0)]:
        for r in range(rmax + 1):
            q = p**r
            total = sum(per_level_chi(ct, pd, n) for n in range(12 * q, 24 * q))
            assert total == -2 * q


# ---------------------------------------------------------------------------
# cohomology windows


def test_trivial_window():
    ctx, ct, pd = worked()
    rep = cohomology_dims(ctx, ct, pd, 0, 1)
    assert (rep.h0, rep.h1) == (1, 0)
    assert rep.matrix.rank == 0 and rep.matrix.overlaps == [(0, 0)]


def test_rational_window_first_period():
    ctx, ct, pd = worked()
    rep = cohomology_dims(ctx, ct, pd, 12, 24)
    assert (rep.h0, rep.h1, rep.matrix.rank) == (0, 2, 1)
    assert rep.matrix.pivot_gaps == [(11, 13)]


def test_char5_main_window():
    ctx, ct, pd = worked(5)
    rep = cohomology_dims(ctx, ct, pd, 60, 120)
    assert (rep.h0, rep.h1, rep.matrix.rank) == (0, 10, 5)
    assert rep.matrix.pivot_gaps == \
        [(55, 66), (61, 73), (71, 85), (81, 97), (91, 109)]


def test_char2_windows_have_sections():
    # With the m=2 factorization available, every window [12q, 24q) has a
    # global section mod 2: all obstruction rows vanish.
    ctx, ct, pd = worked(2)
    for r in (0, 1):
        q = 2**r
        rep = cohomology_dims(ctx, ct, pd, 12 * q, 24 * q)
        assert rep.matrix.rank == 0
        assert rep.h0 == q and rep.h1 == 3 * q


def test_policy_and_slack_invariance():
    ctx, ct, pd = worked(5)
    rng = random.Random(424)
    for _ in range(8):
        m = rng.randint(0, 40)
        l = m + rng.randint(1, 3 * pd.sigma)
        ra = cohomology_dims(ctx, ct, pd, m, l, policy="A")
        rb = cohomology_dims(ctx, ct, pd, m, l, policy="B")
        rs = cohomology_dims(ctx, ct, pd, m, l, slack=2 * pd.sigma)
        assert (ra.h0, ra.h1, ra.matrix.rank) == (rb.h0, rb.h1, rb.matrix.rank)
        assert (ra.h0, ra.h1, ra.matrix.rank) == (rs.h0, rs.h1, rs.matrix.rank)


def test_window_shift_periodicity():
    # Shift invariance holds for windows starting at m >= 1.  Windows through
    # level 0 are special: the index-0 overlap contributes an identically
    # zero row (z and x coincide at the origin), unlike its shifts.
    ctx, ct, pd = worked(5)
    for (m, l) in [(3, 17), (12, 24), (1, 25)]:
        base = cohomology_dims(ctx, ct, pd, m, l)
        for k in (1, 2, 3):
            shifted = cohomology_dims(ctx, ct, pd, m + k * pd.sigma, l + k * pd.sigma)
            assert (base.h0, base.h1, base.matrix.rank) == \
                (shifted.h0, shifted.h1, shifted.matrix.rank)


def test_window_through_level_zero_is_special():
    ctx, ct, pd = worked(5)
    base = cohomology_dims(ctx, ct, pd, 0, 13)
    assert (base.h0, base.matrix.rank) == (2, 0)
    shifted = cohomology_dims(ctx, ct, pd, 12, 25)
    assert (shifted.h0, shifted.matrix.rank) == (1, 1)


def test_report_serialization_fields():
    ctx, ct, pd = worked(5)
    d = cohomology_dims(ctx, ct, pd, 12, 24).to_dict()
    assert set(d) == {"m", "l", "char", "overlaps", "gaps", "rank", "h0", "h1",
                      "chi", "chi_independent", "consistent", "pivot_gaps",
                      "policy", "slack"}
    assert d["consistent"] is True


# ---------------------------------------------------------------------------
# D-sets


def test_d_set_char5():
    ctx, ct, pd = worked(5)
    ds = d_set(ctx, ct, pd, 5, 1, 1)
    assert ds.count == 5 and ds.meets_bound and ds.h0 == 0
    assert set(ds.d_positions) == {
        (61, 73), (71, 85), (81, 97), (91, 109), (55, 66)}


def test_d_set_char7_r0():
    ctx, ct, pd = worked(7)
    ds = d_set(ctx, ct, pd, 7, 0, 1)
    assert ds.h0 == 0 and ds.meets_bound and ds.count == 1
    # The single obstruction row leads at the lowest-level gap (11, 13); the
    # level-20 gap (17, 20) also appears in its support but is not a pivot.
    assert ds.d_positions == [(11, 13)]
    row = ds.report.matrix.rows[0]
    assert set(row) == {(11, 13), (17, 20)}
    assert row[(11, 13)] == 6 % 7


def test_d_set_char7_r1():
    # In the r=1 window the vanishing set picks up the (10d+7, 12d+8)-shaped
    # gap at d = 7 on top of the six coprime-index (10d+1, 12d+1) gaps,
    # reaching the required p^1 = 7 pivots.
    ctx, ct, pd = worked(7)
    ds = d_set(ctx, ct, pd, 7, 1, 1)
    assert ds.h0 == 0 and ds.count == 7 and ds.meets_bound
    assert ds.d_positions == [(77, 92), (81, 97), (91, 109), (101, 121),
                              (111, 133), (121, 145), (131, 157)]


def test_d_set_char11_r0():
    # 11 = 10*1 + 1 exercises the '10f+1' residue family at r=0.
    tri = normalize_triangle(WORKED)
    ctx = context_for(tri, FieldSpec(11))
    ds = d_set(ctx, cone_tables(tri), period_data(tri), 11, 0, 1)
    assert ds.h0 == 0 and ds.meets_bound


def test_d_set_rejects_narrow_triangle():
    verts = [(F(-5, 6), F(5, 12)), (F(1, 12), F(-1, 24)), (0, 1)]
    tri = normalize_triangle(verts)
    assert tri.width < 1
    ctx = context_for(tri, FieldSpec(5))
    with pytest.raises(WidthError):
        d_set(ctx, cone_tables(tri), period_data(tri), 5, 0, 1)


def test_d_set_warns_on_divisible_j():
    ctx, ct, pd = worked(5)
    with pytest.warns(UserWarning):
        d_set(ctx, ct, pd, 5, 0, 5)


# ---------------------------------------------------------------------------
# factorization search


def test_factorization_char2_m2():
    ctx, ct, pd = worked(2)
    out = factorization_search(ctx, ct, pd, 2)
    assert out.success and out.branches_explored == 0
    assert multiply(out.unit_a, out.unit_b) == xi_power(ctx, 4, 2)


def test_factorization_char3_m3():
    ctx, ct, pd = worked(3)
    out = factorization_search(ctx, ct, pd, 3)
    assert out.success
    assert multiply(out.unit_a, out.unit_b) == xi_power(ctx, 6, 3)


def test_factorization_char3_m2_fails_at_first_gap():
    ctx, ct, pd = worked(3)
    out = factorization_search(ctx, ct, pd, 2)
    assert not out.success
    level, residual = out.obstruction
    assert level == 1 and set(residual) == {(1, 1)}


def test_factorization_rational_m1_obstruction():
    ctx, ct, pd = worked(0)
    out = factorization_search(ctx, ct, pd, 1)
    assert not out.success
    level, residual = out.obstruction
    assert level == 1 and residual == {(1, 1): -1}


def test_factorization_multiple_monotonicity():
    # Success at m implies success at its small multiples.
    ctx, ct, pd = worked(2)
    for m in (2, 4, 6):
        assert factorization_search(ctx, ct, pd, m).success
    ctx3, ct3, pd3 = worked(3)
    for m in (3, 6):
        assert factorization_search(ctx3, ct3, pd3, m).success


def test_factorization_char5_all_small_m_fail():
    ctx, ct, pd = worked(5)
    for m in range(1, 7):
        assert not factorization_search(ctx, ct, pd, m).success


def test_factorization_branching_and_budget():
    # The unit right triangle has sigma=1, theta=0, so the two cones overlap
    # at column 0 of every level and the search must branch there.
    tri = normalize_triangle([(0, 0), (1, 0), (0, 1)])
    pd = period_data(tri)
    ct = cone_tables(tri)
    for char in (0, 3):
        ctx = context_for(tri, FieldSpec(char))
        out = factorization_search(ctx, ct, pd, 4)
        assert out.success and out.branches_explored > 0
    ctx = context_for(tri, FieldSpec(3))
    with pytest.raises(BudgetExceeded):
        factorization_search(ctx, ct, pd, 4, branch_budget=1)


def test_no_branching_below_the_period():
    # Inside level m*u <= sigma no overlap can occur, so the searched paths
    # never split for the acceptance-range instances.
    for char, m in [(2, 2), (3, 3), (2, 6), (3, 6)]:
        ctx, ct, pd = worked(char)
        out = factorization_search(ctx, ct, pd, m)
        assert out.branches_explored == 0


def test_factorization_outcome_dict():
    ctx, ct, pd = worked(0)
    d = factorization_search(ctx, ct, pd, 1).to_dict()
    assert d["kind"] == "A4" and d["success"] is False
    assert d["obstruction"]["level"] == 1


# ---------------------------------------------------------------------------
# characteristic-0 criterion agreement


def test_factorization_witness_forces_sections():
    # A successful factorization at m = j*p^r transfers to nonzero degree-0
    # cohomology on the corresponding window: char 2, m=2 = 2^1 -> r=1;
    # char 3, m=3 = 3^1 -> r=1.
    for p, m in [(2, 2), (3, 3)]:
        ctx, ct, pd = worked(p)
        assert factorization_search(ctx, ct, pd, m).success
        rep = cohomology_dims(ctx, ct, pd, pd.sigma * p, 2 * pd.sigma * p)
        assert rep.h0 > 0


def test_overlap_lattice_exhaustive_window():
    # No stray two-cone intersection below level 10*sigma; the enumeration
    # itself verifies the lattice law columnwise.
    tri = normalize_triangle(WORKED)
    pd = period_data(tri)
    ct = cone_tables(tri)
    from reeslab.geometry import overlaps_and_gaps

    overlaps, _ = overlaps_and_gaps(ct, pd, 0, 10 * pd.sigma)
    assert overlaps == [(10 * k, 12 * k) for k in range(10)]


def test_b2_matches_emu_on_interior_family():
    expected = {
        F(9, 4): False, F(13, 6): False, F(7, 3): True, F(12, 5): True,
        F(5, 2): True, F(8, 3): True, F(11, 4): False,
    }
    for g, want in expected.items():
        assert char0_b2_check(family_triangle(g)) is want, f"g={g}"


def test_b2_u1_triangle():
    assert char0_b2_check(normalize_triangle([(0, 0), (1, 0), (0, 1)]))


def test_b2_vertical_edge_degeneration():
    # With a vertical outer edge one chart absorbs every residual, so the
    # factorization succeeds regardless of the column-count criterion: at the
    # g=3 endpoint the two criteria genuinely disagree and the runtime check
    # must say so.
    assert char0_b2_check(family_triangle(2)) is True
    with pytest.raises(TheoremViolation):
        char0_b2_check(family_triangle(3))
