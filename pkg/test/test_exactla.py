import pytest
import sympy
from fractions import Fraction
from hypothesis import given, settings, strategies as st

from app.errors import DimensionMismatchError
from app.exactla import (
    RatMatrix,
    column_space,
    contains,
    full_space,
    is_subspace_of,
    kernel,
    rank,
    rref,
    span,
    subspace_equal,
    subspace_intersection,
    subspace_sum,
    zero_subspace,
)

def matrices(max_rows=6, max_cols=6, bound=9):
    """Strategy for small integer matrices, entries in [-bound, bound]"""
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(
                st.lists(st.integers(-bound, bound), min_size=c, max_size=c), min_size=r, max_size=r
            )
        )
    )

def rational_matrices():
    """Small matrices with non-integer rational entries"""
    entry = st.fractions(min_value=-5, max_value=5, max_denominator=7)
    return st.integers(1, 5).flatmap(
        lambda r: st.integers(1, 5).flatmap(
            lambda c: st.lists(st.lists(entry, min_size=c, max_size=c), min_size=r, max_size=r)
        )
    )

def test_rank_trivial_cases():
    """Identity and zero matrices"""
    assert rank(RatMatrix.identity(3)) == 3
    assert rank(RatMatrix.zeros(4, 4)) == 0

def test_kernel_examples():
    """Kernel of the identity is zero; [1, -1] has kernel spanned by (1, 1)"""
    assert kernel(RatMatrix.identity(3)).dim == 0
    k = kernel(RatMatrix.from_rows([[1, -1]]))
    assert k.dim == 1
    assert k.vectors() == ((Fraction(1), Fraction(1)),)

def test_rref_dependent_rows():
    """[[2,4],[1,2]] reduces to [[1,2],[0,0]]"""
    r = rref(RatMatrix.from_rows([[2, 4], [1, 2]]))
    assert r.to_lists() == [[1, 2], [0, 0]]

def test_rref_identity():
    assert rref(RatMatrix.identity(4)) == RatMatrix.identity(4)

def test_dimension_mismatch():
    """Malformed matrices and mixed ambients are rejected"""
    with pytest.raises(DimensionMismatchError):
        RatMatrix(2, 2, ((Fraction(1), Fraction(0)),))
    with pytest.raises(DimensionMismatchError):
        subspace_equal(zero_subspace(2), zero_subspace(3))
    with pytest.raises(DimensionMismatchError):
        span([[1, 2, 3]], 2)

def test_subspace_equal_examples():
    """Scaling does not change a span; different lines differ"""
    assert subspace_equal(span([[1, 0]], 2), span([[2, 0]], 2))
    assert not subspace_equal(span([[1, 0]], 2), span([[0, 1]], 2))

def test_intersection_of_planes():
    """Two planes in Q^3 meet in a line"""
    xy = span([[1, 0, 0], [0, 1, 0]], 3)
    diagonal = span([[1, 1, 0], [0, 0, 1]], 3)
    line = subspace_intersection(xy, diagonal)
    assert subspace_equal(line, span([[1, 1, 0]], 3))

def test_contains_and_nesting():
    plane = span([[1, 2, 0], [0, 0, 1]], 3)
    assert contains(plane, [2, 4, 7])
    assert not contains(plane, [1, 0, 0])
    assert is_subspace_of(span([[1, 2, 5]], 3), plane)
    assert is_subspace_of(zero_subspace(3), plane)
    assert is_subspace_of(plane, full_space(3))

@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rank_matches_sympy(rows):
    """Exact rank agrees with sympy's rank"""
    assert rank(RatMatrix.from_rows(rows)) == sympy.Matrix(rows).rank()

@settings(max_examples=60, deadline=None)
@given(matrices())
def test_kernel_rank_nullity(rows):
    """Every kernel vector is annihilated and dim(kernel) + rank = cols"""
    m = RatMatrix.from_rows(rows)
    k = kernel(m)
    assert k.dim + rank(m) == m.cols
    assert k.dim == len(sympy.Matrix(rows).nullspace())
    for v in k.vectors():
        assert not any(m.apply(v))

@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rref_matches_sympy(rows):
    """Canonical form equals sympy's reduced row-echelon form"""
    ours = rref(RatMatrix.from_rows(rows)).to_lists()
    theirs = sympy.Matrix(rows).rref()[0].tolist()
    assert [[Fraction(int(x.p), int(x.q)) for x in row] for row in theirs] == ours

@settings(max_examples=60, deadline=None)
@given(rational_matrices())
def test_rref_idempotent(rows):
    m = RatMatrix.from_rows(rows)
    assert rref(rref(m)) == rref(m)

@settings(max_examples=40, deadline=None)
@given(matrices(), st.randoms(use_true_random=False))
def test_span_ignores_row_order(rows, rnd):
    """A span is determined by its vectors, not their order"""
    shuffled = list(rows)
    rnd.shuffle(shuffled)
    n = len(rows[0])
    assert subspace_equal(span(rows, n), span(shuffled, n))

@settings(max_examples=40, deadline=None)
@given(matrices(max_rows=3, max_cols=4), matrices(max_rows=3, max_cols=4))
def test_sum_matches_column_space_oracle(a_rows, b_rows):
    """span(a) + span(b) equals the column space of the concatenated generators"""
    n = min(len(a_rows[0]), len(b_rows[0]))
    a_rows = [r[:n] for r in a_rows]
    b_rows = [r[:n] for r in b_rows]
    total = subspace_sum(span(a_rows, n), span(b_rows, n))
    generators = RatMatrix.from_rows(a_rows + b_rows).transpose()
    assert subspace_equal(total, column_space(generators))
    # dim(a + b) + dim(a ∩ b) = dim a + dim b
    a, b = span(a_rows, n), span(b_rows, n)
    assert total.dim + subspace_intersection(a, b).dim == a.dim + b.dim

@settings(max_examples=40, deadline=None)
@given(matrices(max_cols=4), st.randoms(use_true_random=False), st.integers(1, 5))
def test_subspace_equal_is_an_equivalence(rows, rnd, scale):
    """Reflexive, symmetric and transitive across different generating sets"""
    n = len(rows[0])
    a = span(rows, n)
    # same span: rescaled and shuffled generators, then one redundant row added
    shuffled = [[scale * x for x in r] for r in rows]
    rnd.shuffle(shuffled)
    b = span(shuffled, n)
    c = span(shuffled + [[x + y for x, y in zip(rows[0], rows[-1])]], n)
    assert subspace_equal(a, a)
    assert subspace_equal(a, b) and subspace_equal(b, a)
    assert subspace_equal(b, c) and subspace_equal(a, c)
    other = span(rows + [[1] + [0] * (n - 1)], n)
    assert subspace_equal(a, other) == subspace_equal(other, a)
    assert subspace_equal(a, other) == (a.dim == other.dim)
