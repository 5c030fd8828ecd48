import pytest
from fractions import Fraction

from app.chevalley import AlgebraElement
from app.coadjoint import (
    ActionKind,
    CoadPoint,
    RMinusCrossPoint,
    action_matrix,
    classify,
    coordinate_subspace,
    r_to_h_rank,
    fixed_set,
    h_naught,
    h_subspace,
    isotropy,
    r_subspace,
    random_rx_point,
    rx_points,
    standard_point,
    verify_codim_bounds,
    verify_fixed_set,
    verify_h_transitivity_tangent,
    verify_shift_invariance,
    verify_thm_1_1,
    verify_thm_2_1,
    verify_thm_2_3,
)
from app.errors import SupportError
from app.exactla import contains, rank, subspace_equal, subspace_sum
from app.rootsys import all_simple_types

def _types(max_rank):
    """Every simple type up to max_rank; ranks 7 and 8 are marked slow"""
    return [
        pytest.param(t, id=str(t), marks=[pytest.mark.slow] if t.rank >= 7 else [])
        for t in all_simple_types(max_rank)
    ]

RANK_8 = _types(8)
RANK_6 = _types(6)

# -- action matrices and isotropy ----------------------------------------------

def test_action_matrix_zero_point(a2):
    _, _, g = a2
    m = action_matrix(g, ActionKind.COAD_N, AlgebraElement())
    assert (m.rows, m.cols) == (3, 3)
    assert m.is_zero()

def test_action_matrix_a1(algebra_of):
    """n of A1 is one-dimensional and abelian, so every orbit is a point"""
    _, _, g = algebra_of("A1")
    m = action_matrix(g, ActionKind.COAD_N, g.e((-1,)))
    assert (m.rows, m.cols) == (1, 1)
    assert m.is_zero()

def test_action_matrix_a2_highest_root(a2):
    _, _, g = a2
    m = action_matrix(g, ActionKind.COAD_N, g.e((-1, -1)))
    assert rank(m) == 2
    result = isotropy(g, ActionKind.COAD_N, g.e((-1, -1)))
    assert result.orbit_dim == 2
    assert result.codim == 1

def test_action_matrix_support_violation(a2):
    _, _, g = a2
    with pytest.raises(SupportError):
        action_matrix(g, ActionKind.COAD_N, g.h(0))
    with pytest.raises(SupportError):
        CoadPoint.of(g, g.e((1, 0)))

def test_coad_point_split(a2):
    _, _, g = a2
    w = g.e((-1, 0)) + 2 * g.h(1)
    p = CoadPoint.of(g, w)
    assert p.v == g.e((-1, 0))
    assert p.x == 2 * g.h(1)
    assert p.v + p.x == w

def test_isotropy_at_cartan_point_is_b(a2):
    """Every w in h is fixed by B: brackets land in n, which Phi_b kills"""
    _, _, g = a2
    result = isotropy(g, ActionKind.COAD_B, g.h(0) + 3 * g.h(1))
    assert subspace_equal(result.isotropy, coordinate_subspace(g, g.decomposition.b))
    assert result.orbit_dim == 0

def test_isotropy_at_zero_is_acting_algebra(b2):
    _, _, g = b2
    result = isotropy(g, ActionKind.COAD_B, AlgebraElement())
    assert result.isotropy.dim == result.acting_dim == 6
    assert result.codim == 6

def test_isotropy_dimension_bookkeeping(a3):
    _, cs, g = a3
    for kind in ActionKind:
        w = standard_point(g, cs)
        result = isotropy(g, kind, w)
        assert result.orbit_dim + result.isotropy.dim == result.acting_dim

def test_standard_point_nminus_action_a2(a2):
    _, cs, g = a2
    result = isotropy(g, ActionKind.NMINUS, standard_point(g, cs))
    assert result.isotropy.dim == 2
    assert subspace_equal(result.isotropy, subspace_sum(h_naught(g, cs), r_subspace(g, cs)))

def test_standard_point_coad_b_b2_is_open(b2):
    _, cs, g = b2
    result = isotropy(g, ActionKind.COAD_B, standard_point(g, cs))
    assert result.isotropy.dim == 0
    assert result.codim == 0

# -- points of r_-^x -------------------------------------------------------------

def test_standard_point_a3(a3):
    _, cs, g = a3
    tau = standard_point(g, cs)
    assert tau.coefficients == (((1, 1, 1), Fraction(1)), ((0, 1, 0), Fraction(1)))
    assert tau.element(g) == g.e((-1, -1, -1)) + g.e((0, -1, 0))

def test_zero_coefficient_is_rejected():
    with pytest.raises(SupportError):
        RMinusCrossPoint((((1, 1), Fraction(0)),))

def test_random_rx_point_is_seeded(b2):
    _, cs, g = b2
    p = random_rx_point(g, cs, seed=7)
    assert p == random_rx_point(g, cs, seed=7)
    assert all(a != 0 and -99 <= a <= 99 for _, a in p.coefficients)
    result = isotropy(g, ActionKind.COAD_N, p)
    assert subspace_equal(result.isotropy, r_subspace(g, cs))

def test_rx_points_start_with_standard_point(a2):
    _, cs, g = a2
    points = rx_points(g, cs, 5, seed=1)
    assert len(points) == 6
    assert points[0] == standard_point(g, cs)

# -- h naught ----------------------------------------------------------------------

def test_h_naught_a2(a2):
    """Kernel of the 1x2 pairing matrix [1, 1]: spanned by h_1 - h_2"""
    _, cs, g = a2
    h0 = h_naught(g, cs)
    assert h0.dim == 1
    assert contains(h0, [1, -1] + [0] * 6)

@pytest.mark.parametrize("label,dim", [("B2", 0), ("A3", 1), ("A4", 2), ("D5", 1), ("E6", 2), ("G2", 0)])
def test_h_naught_dimension(algebra_of, label, dim):
    rs, cs, g = algebra_of(label)
    assert h_naught(g, cs).dim == dim == rs.rank - cs.m

# -- verifiers -----------------------------------------------------------------------

def test_thm_1_1_a2(a2):
    _, cs, g = a2
    report = verify_thm_1_1(g, cs, [standard_point(g, cs)])
    assert report.passed
    assert report.id == "thm_1_1"
    assert report.dims["isotropy_dim"] == 1

def test_thm_1_1_a1(algebra_of):
    _, cs, g = algebra_of("A1")
    report = verify_thm_1_1(g, cs, [standard_point(g, cs)])
    assert report.passed
    assert report.dims["isotropy_dim"] == report.dims["dim_n"] == 1

@pytest.mark.parametrize("t", RANK_8)
def test_thm_1_1_random_points(algebra_of, t):
    """n_tau = r at the standard point and 20 seeded random points"""
    rs, cs, g = algebra_of(str(t))
    report = verify_thm_1_1(g, cs, rx_points(g, cs, 20, seed=42))
    assert report.passed, report.checks
    assert report.dims["points"] == 21
    assert report.dims["isotropy_dim"] == cs.m

@pytest.mark.parametrize("t", RANK_8)
def test_thm_2_1(algebra_of, t):
    rs, cs, g = algebra_of(str(t))
    report = verify_thm_2_1(g, cs, rx_points(g, cs, 20, seed=42))
    assert report.passed, report.checks
    assert report.dims["isotropy_dim"] == rs.rank

@pytest.mark.parametrize("t", RANK_8)
def test_thm_2_3(algebra_of, t):
    rs, cs, g = algebra_of(str(t))
    report = verify_thm_2_3(g, cs, rx_points(g, cs, 20, seed=42))
    assert report.passed, report.checks
    dim = rs.rank - cs.m
    assert report.dims["isotropy_dim"] == dim
    assert report.dims["orbit_dim"] == report.dims["dim_b"] - dim

@pytest.mark.parametrize("label,dim", [("A2", 1), ("C3", 0), ("A4", 2), ("E6", 2)])
def test_b_isotropy_dimension_table(algebra_of, label, dim):
    _, cs, g = algebra_of(label)
    assert verify_thm_2_3(g, cs, [standard_point(g, cs)]).dims["isotropy_dim"] == dim

def test_thm_2_3_a2_orbit(a2):
    _, cs, g = a2
    report = verify_thm_2_3(g, cs, [standard_point(g, cs)])
    assert report.dims["orbit_dim"] == 4
    assert report.dims["dim_b"] == 5
    assert set(report.checks) == {
        "b_w_equals_h0", "codim_is_ell_minus_m", "r_to_h_injective", "nested_in_c_w", "b_minus_splitting",
    }

def test_r_to_h_rank_is_m(a3):
    _, cs, g = a3
    assert r_to_h_rank(g, cs, random_rx_point(g, cs, 5)) == cs.m

def test_codim_a1(algebra_of):
    _, cs, g = algebra_of("A1")
    report = verify_codim_bounds(g, cs, ActionKind.COAD_N, samples=10, seed=0)
    assert report.passed
    assert report.dims["min_codim"] == report.dims["max_codim"] == 1

def test_codim_a2_coad_n(a2):
    _, cs, g = a2
    report = verify_codim_bounds(g, cs, ActionKind.COAD_N, samples=100, seed=42)
    assert report.passed, report.dims
    assert report.id == "thm_1_5"
    assert report.dims["min_codim"] == 1
    assert report.dims["equal_count"] >= 95

def test_codim_b2_coad_b_open_orbit(b2):
    _, cs, g = b2
    report = verify_codim_bounds(g, cs, ActionKind.COAD_B, samples=100, seed=42)
    assert report.passed, report.dims
    assert report.id == "thm_2_6"
    assert report.dims["bound"] == 0
    assert report.dims["equal_count"] >= 95

@pytest.mark.parametrize("kind", list(ActionKind), ids=lambda k: k.value)
@pytest.mark.parametrize("t", RANK_8)
def test_codim_all_kinds(algebra_of, t, kind):
    """100 samples per kind up to rank 6, 20 above; bound always, equality >= 95%"""
    _, cs, g = algebra_of(str(t))
    samples = 100 if t.rank <= 6 else 20
    report = verify_codim_bounds(g, cs, kind, samples=samples, seed=9)
    assert report.passed, (kind, report.dims)
    assert report.dims["samples"] == samples
    assert report.dims["min_codim"] == report.dims["bound"]
    assert report.dims["equality_rate"] >= 0.95

def test_codim_needs_samples(a2):
    _, cs, g = a2
    with pytest.raises(ValueError):
        verify_codim_bounds(g, cs, ActionKind.COAD_N, samples=0, seed=0)

def test_codim_is_deterministic(a3):
    _, cs, g = a3
    first = verify_codim_bounds(g, cs, ActionKind.COAD_B, samples=20, seed=5)
    second = verify_codim_bounds(g, cs, ActionKind.COAD_B, samples=20, seed=5)
    assert first.witnesses["codims"] == second.witnesses["codims"]
    assert first.dims == second.dims

@pytest.mark.parametrize("t", RANK_6)
def test_shift_invariance(algebra_of, t):
    """50 seeded (w, z) pairs"""
    _, _, g = algebra_of(str(t))
    report = verify_shift_invariance(g, samples=50, seed=42)
    assert report.passed, report.witnesses

@pytest.mark.parametrize("t", RANK_8)
def test_fixed_set(algebra_of, t):
    rs, _, g = algebra_of(str(t))
    assert subspace_equal(fixed_set(g), h_subspace(g))
    report = verify_fixed_set(g)
    assert report.passed
    assert report.dims["fixed_dim"] == rs.rank

@pytest.mark.parametrize("label,expected", [("A1", 1), ("A3", 2), ("E8", 8)])
def test_h_transitivity(algebra_of, label, expected):
    _, cs, g = algebra_of(label)
    report = verify_h_transitivity_tangent(g, cs, rx_points(g, cs, 3, seed=1))
    assert report.passed
    assert report.dims["min_rank"] == expected

# -- classification ------------------------------------------------------------------

def test_classify_rank_2():
    rows = classify(2)
    assert [(r.family, r.rank) for r in rows] == [("A", 1), ("A", 2), ("B", 2), ("G", 2)]
    assert {f"{r.family}{r.rank}" for r in rows if r.open_coadjoint_orbit} == {"A1", "B2", "G2"}
    assert all(r.consistent for r in rows)

def test_classify_rank_8():
    """Open orbit exactly when -1 is in the Weyl group, exactly when m = l"""
    rows = classify(8)
    open_types = {f"{r.family}{r.rank}" for r in rows if r.open_coadjoint_orbit}
    expected = {"A1", "D4", "D6", "D8", "G2", "F4", "E7", "E8"}
    expected |= {f"B{n}" for n in range(2, 9)} | {f"C{n}" for n in range(3, 9)}
    assert open_types == expected
    for r in rows:
        assert r.consistent
        assert r.minus_one_in_weyl == (r.m == r.ell) == r.open_coadjoint_orbit
        assert r.b_orbit_codim == r.ell - r.m
        assert r.n_orbit_codim == r.m

def test_classify_needs_rank_2():
    with pytest.raises(ValueError):
        classify(1)
