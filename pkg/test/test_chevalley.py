import pytest
from fractions import Fraction
from hypothesis import given, settings, strategies as st

from app.cascade import compute_cascade
from app.chevalley import (
    AlgebraElement,
    LieAlgebra,
    algebra_summary,
    bracket,
    build_algebra,
    decomposition,
    invariant_form,
    project,
    r_is_abelian,
    run_self_test,
)
from app.rootsys import all_simple_types, root_system

@pytest.fixture(scope="module")
def a2_algebra():
    return build_algebra(root_system("A2"))

@pytest.fixture(scope="module")
def b2_algebra():
    return build_algebra(root_system("B2"))

@pytest.mark.parametrize("label,dim", [("A2", 8), ("G2", 14), ("F4", 52), ("E8", 248)])
def test_dimension(label, dim):
    """dim g = l + |roots|"""
    g = LieAlgebra(root_system(label))
    assert g.dim == dim
    assert g.dim == g.rank + 2 * g.n_positive

def test_labels(a2_algebra):
    g = a2_algebra
    assert g.label(0) == "h1"
    assert g.label(g.root_index((1, 0))) == "e(1,0)"
    assert g.basis_root(1) is None
    assert g.basis_root(g.root_index((-1, -1))) == (-1, -1)

def test_brackets_a2(a2_algebra):
    g = a2_algebra
    e1, e2, f1 = g.e((1, 0)), g.e((0, 1)), g.e((-1, 0))
    # [e_a, e_-a] is the coroot
    assert bracket(g, e1, f1) == g.h(0)
    # [h_i, e_phi] = <phi, alpha_i^vee> e_phi
    assert bracket(g, g.h(0), e1) == 2 * e1
    assert bracket(g, g.h(0), e2) == -1 * e2
    # extraspecial pair (alpha_1, alpha_2) has N = +1
    assert bracket(g, e1, e2) == g.e((1, 1))
    assert bracket(g, e2, e1) == -g.e((1, 1))
    assert bracket(g, e1, e1).is_zero()

def test_extraspecial_constant_b2(b2_algebra):
    """alpha_2 + (alpha_1 + alpha_2) with an alpha_2-string of length 2 below"""
    assert b2_algebra.structure_constant((0, 1), (1, 1)) == 2
    assert b2_algebra.structure_constant((1, 0), (0, 1)) == 1

def test_coroot_of_long_root_in_b2(b2_algebra):
    """theta = alpha_1 + 2 alpha_2 is long; its coroot is h_1 + h_2"""
    assert b2_algebra.coroot((1, 2)) == {0: 1, 1: 1}
    assert b2_algebra.coroot((1, 1)) == {0: 2, 1: 1}

def test_invariant_form_normalization(b2_algebra):
    g = b2_algebra
    # (e_phi, e_-phi) = 2 / (phi, phi): long roots 1, short roots 2
    assert invariant_form(g, g.e((1, 0)), g.e((-1, 0))) == 1
    assert invariant_form(g, g.e((0, 1)), g.e((0, -1))) == 2
    assert invariant_form(g, g.e((0, 1)), g.e((0, 1))) == 0
    # (h_i, h_j) = 4 G_ij / (G_ii G_jj)
    assert invariant_form(g, g.h(0), g.h(0)) == 2
    assert invariant_form(g, g.h(1), g.h(1)) == 4
    assert invariant_form(g, g.h(0), g.h(1)) == -2

@pytest.mark.parametrize("label,largest", [("A3", 1), ("B2", 2), ("C3", 2), ("G2", 3), ("F4", 2)])
def test_max_structure_constant(label, largest):
    assert LieAlgebra(root_system(label)).max_structure_constant() == largest

def test_constants_with_negated_pairs():
    """N_{a,b} N_{-a,-b} = -(p+1)^2 for every pair whose sum is a root"""
    rs = root_system("B3")
    g = LieAlgebra(rs)
    for a in rs.roots:
        for b in rs.roots:
            c = tuple(x + y for x, y in zip(a, b))
            if any(c) and rs.is_root(c):
                p = 0
                while rs.is_root(tuple(y - (p + 1) * x for x, y in zip(a, b))):
                    p += 1
                na, nb = tuple(-x for x in a), tuple(-x for x in b)
                assert g.structure_constant(a, b) * g.structure_constant(na, nb) == -(p + 1) ** 2

def elements(dim):
    return st.dictionaries(st.integers(0, dim - 1), st.integers(-5, 5), max_size=5).map(AlgebraElement.from_dict)

@settings(max_examples=50, deadline=None)
@given(st.data())
def test_bracket_identities_b2(b2_algebra, data):
    """Antisymmetry, Jacobi and invariance on random elements"""
    g = b2_algebra
    x, y, z = (data.draw(elements(g.dim)) for _ in range(3))
    assert bracket(g, x, y) == -bracket(g, y, x)
    jacobi = bracket(g, x, bracket(g, y, z)) + bracket(g, y, bracket(g, z, x)) + bracket(g, z, bracket(g, x, y))
    assert jacobi.is_zero()
    assert invariant_form(g, bracket(g, x, y), z) == -invariant_form(g, y, bracket(g, x, z))

@settings(max_examples=30, deadline=None)
@given(st.data())
def test_bracket_bilinear(a2_algebra, data):
    g = a2_algebra
    x, y, z = (data.draw(elements(g.dim)) for _ in range(3))
    s = data.draw(st.fractions(min_value=-3, max_value=3, max_denominator=4))
    assert bracket(g, x + s * y, z) == bracket(g, x, z) + s * bracket(g, y, z)

@pytest.mark.parametrize("t", all_simple_types(3), ids=str)
def test_self_test_exhaustive(algebra_of, t):
    """Antisymmetry, Jacobi and invariance on every basis triple"""
    _, _, g = algebra_of(str(t))
    summary = run_self_test(g, exhaustive_max_rank=3)
    assert summary["passed"], summary["failure"]
    assert summary["mode"] == "exhaustive"
    assert summary["triples"] == g.dim ** 3

@pytest.mark.parametrize("t", all_simple_types(8), ids=str)
def test_self_test_sampled(algebra_of, t):
    """1000 seeded basis triples, whatever the rank"""
    _, _, g = algebra_of(str(t))
    summary = run_self_test(g, exhaustive_max_rank=0, sampled_triples=1000, seed=3)
    assert summary["passed"], summary["failure"]
    assert summary == {"passed": True, "mode": "sampled", "triples": 1000, "failure": None}

def test_projections(a2_algebra):
    g = a2_algebra
    w = g.e((-1, -1)) + 3 * g.h(1) + g.e((1, 0))
    assert project(g, "n_-", w) == g.e((-1, -1))
    assert project(g, "h", w) == 3 * g.h(1)
    assert project(g, "n", w) == g.e((1, 0))
    # Phi_b projects onto b_- along n
    assert project(g, "b", w) == g.e((-1, -1)) + 3 * g.h(1)
    assert project(g, "b_plus", w) == 3 * g.h(1) + g.e((1, 0))
    with pytest.raises(ValueError):
        project(g, "q", w)

def test_decomposition_with_cascade(a2_algebra):
    g = a2_algebra
    cs = compute_cascade(g.rs).cascade_set()
    d = decomposition(g, cs)
    assert d.r == (g.root_index((1, 1)),)
    assert d.r_minus == (g.root_index((-1, -1)),)
    assert len(d.b) == 5 and len(d.b_minus) == 5
    assert set(d.n) | set(d.n_minus) | set(d.h) == set(range(g.dim))

@pytest.mark.parametrize("label", ["A5", "B3", "D4", "G2", "F4"])
def test_r_is_abelian(label):
    rs = root_system(label)
    assert r_is_abelian(LieAlgebra(rs), compute_cascade(rs).cascade_set())

def test_algebra_summary(a2_algebra):
    summary = algebra_summary(a2_algebra)
    assert summary == {
        "rank": 2,
        "roots": 6,
        "positive_roots": 3,
        "dim_g": 8,
        "dim_b": 5,
        "dim_n": 3,
        "highest_root": [1, 1],
        "max_structure_constant": 1,
    }

PROJECTION_TARGETS = ["n_-", "h", "n", "b", "b_plus"]

@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["A3", "B3", "G2", "D4"]), st.data())
def test_projections_idempotent_and_additive(algebra_of, label, data):
    """Phi_b = Phi_{n_-} + Phi_h, and every projection is idempotent"""
    _, _, g = algebra_of(label)
    x = data.draw(elements(g.dim))
    for which in PROJECTION_TARGETS:
        once = project(g, which, x)
        assert project(g, which, once) == once
    assert project(g, "b", x) == project(g, "n_-", x) + project(g, "h", x)
    assert project(g, "n_-", x) + project(g, "h", x) + project(g, "n", x) == x
    # Phi_b kills n
    assert project(g, "b", project(g, "n", x)).is_zero()
