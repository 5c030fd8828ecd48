"""Coadjoint actions of b and n, isotropy algebras and orbit codimensions.

b* is identified with b_- and n* with n_- through the invariant form. Three
infinitesimal actions are modelled, each a linear map x -> P([x, w]):

=================  ========  =========  ================
kind               x in      w in       P
=================  ========  =========  ================
``coad_N``         n         n_-        Phi_n  (to n_-)
``coad_B``         b         b_-        Phi_b  (to b_-)
``nminus_action``  b         n_-        Phi_n  (to n_-)
=================  ========  =========  ================

Isotropy algebras are kernels of these maps, returned as subspaces of g in
Chevalley-basis coordinates. Group-level statements are checked through their
Lie algebras: the isotropy groups are connected, so equal algebras give equal
identity components and equal orbit dimensions.
"""
import logging
import random
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from app.cascade import CascadeSet, compute_cascade
from app.chevalley import AlgebraElement, LieAlgebra, build_algebra, project
from app.errors import SupportError
from app.exactla import (
    RatMatrix,
    Subspace,
    column_space,
    is_subspace_of,
    kernel,
    rank,
    span,
    subspace_equal,
    subspace_sum,
)
from app.models import ClassificationRow, TheoremReport
from app.rootsys import Root, SimpleType, all_simple_types, is_minus_identity, longest_element, negate, root_system
from app.utils import nonzero_int

logger = logging.getLogger(__name__)


class ActionKind(str, Enum):
    COAD_N = "coad_N"
    COAD_B = "coad_B"
    NMINUS = "nminus_action"


# kind -> (acting algebra, ambient of the point, target of the projection)
_SPACES = {
    ActionKind.COAD_N: ("n", "n_minus", "n_minus"),
    ActionKind.COAD_B: ("b", "b_minus", "b_minus"),
    ActionKind.NMINUS: ("b", "n_minus", "n_minus"),
}


def _spaces(g: LieAlgebra, kind: ActionKind) -> Tuple[Tuple[int, ...], Tuple[int, ...], Tuple[int, ...]]:
    d = g.decomposition
    return tuple(getattr(d, name) for name in _SPACES[ActionKind(kind)])


@dataclass(frozen=True)
class CoadPoint:
    """A point w of b_- together with its split w = v + x, v in n_-, x in h"""
    element: AlgebraElement
    v: AlgebraElement
    x: AlgebraElement

    @classmethod
    def of(cls, g: LieAlgebra, element: AlgebraElement) -> "CoadPoint":
        outside = set(element.support()) - set(g.decomposition.b_minus)
        if outside:
            labels = ", ".join(g.label(i) for i in sorted(outside))
            raise SupportError(f"point has components outside b_-: {labels}")
        return cls(element, project(g, "n_-", element), project(g, "h", element))


@dataclass(frozen=True)
class RMinusCrossPoint:
    """tau = sum_beta a_beta e_{-beta} with every a_beta nonzero"""
    coefficients: Tuple[Tuple[Root, Fraction], ...]

    def __post_init__(self):
        for beta, a in self.coefficients:
            if not a:
                raise SupportError(f"coefficient of e_-{beta} is zero; the point is not in r_-^x")

    def a(self, beta: Root) -> Fraction:
        return dict(self.coefficients)[tuple(beta)]

    def element(self, g: LieAlgebra) -> AlgebraElement:
        return AlgebraElement.from_dict({g.root_index(negate(beta)): a for beta, a in self.coefficients})

    def to_point(self, g: LieAlgebra) -> CoadPoint:
        return CoadPoint.of(g, self.element(g))


@dataclass(frozen=True)
class IsotropyResult:
    point: CoadPoint
    kind: ActionKind
    isotropy: Subspace
    acting_dim: int
    orbit_dim: int
    codim: int


PointLike = Union[CoadPoint, RMinusCrossPoint, AlgebraElement]


def _as_point(g: LieAlgebra, w: PointLike) -> CoadPoint:
    if isinstance(w, CoadPoint):
        return w
    if isinstance(w, RMinusCrossPoint):
        return w.to_point(g)
    return CoadPoint.of(g, w)


def _ad_basis(g: LieAlgebra, d: int, w: AlgebraElement) -> Dict[int, Fraction]:
    out: Dict[int, Fraction] = {}
    for j, c in w.coords.items():
        for k, s in g.basis_bracket(d, j):
            out[k] = out.get(k, 0) + c * s
    return out


def _map_matrix(g: LieAlgebra, domain: Sequence[int], target: Sequence[int], w: AlgebraElement) -> RatMatrix:
    """Matrix of x -> restrict_target([x, w]) for x over ``domain``"""
    position = {k: i for i, k in enumerate(target)}
    rows = [[Fraction(0)] * len(domain) for _ in target]
    for col, d in enumerate(domain):
        for k, c in _ad_basis(g, d, w).items():
            if c and k in position:
                rows[position[k]][col] += c
    return RatMatrix(len(target), len(domain), tuple(tuple(r) for r in rows))


def action_matrix(g: LieAlgebra, kind: ActionKind, w: PointLike) -> RatMatrix:
    kind = ActionKind(kind)
    point = _as_point(g, w)
    domain, ambient, target = _spaces(g, kind)
    outside = set(point.element.support()) - set(ambient)
    if outside:
        labels = ", ".join(g.label(i) for i in sorted(outside))
        raise SupportError(f"{kind.value} needs a point supported in its ambient; offending: {labels}")
    return _map_matrix(g, domain, target, point.element)


def lift(sub: Subspace, indices: Sequence[int], dim: int) -> Subspace:
    """Embed a subspace of Q^len(indices) into Q^dim along the given coordinates"""
    vectors = []
    for v in sub.vectors():
        full = [Fraction(0)] * dim
        for i, c in zip(indices, v):
            full[i] = c
        vectors.append(full)
    return span(vectors, dim)


def isotropy(g: LieAlgebra, kind: ActionKind, w: PointLike) -> IsotropyResult:
    kind = ActionKind(kind)
    point = _as_point(g, w)
    domain, _, target = _spaces(g, kind)
    m = action_matrix(g, kind, point)
    null = kernel(m)
    orbit_dim = len(domain) - null.dim
    return IsotropyResult(
        point=point,
        kind=kind,
        isotropy=lift(null, domain, g.dim),
        acting_dim=len(domain),
        orbit_dim=orbit_dim,
        codim=len(target) - orbit_dim,
    )


# -- distinguished points and subspaces ---------------------------------------

def standard_point(g: LieAlgebra, cs: CascadeSet) -> RMinusCrossPoint:
    return RMinusCrossPoint(tuple((beta, Fraction(1)) for beta in cs.roots))


def random_rx_point(g: LieAlgebra, cs: CascadeSet, seed: int, coefficient_range: int = 99) -> RMinusCrossPoint:
    rng = random.Random(seed)
    return RMinusCrossPoint(tuple((beta, Fraction(nonzero_int(rng, coefficient_range))) for beta in cs.roots))


def random_element(g: LieAlgebra, indices: Sequence[int], rng: random.Random, coefficient_range: int = 99) -> AlgebraElement:
    """Integer point with every listed coordinate nonzero"""
    return AlgebraElement.from_dict({i: nonzero_int(rng, coefficient_range) for i in indices})


def rx_points(g: LieAlgebra, cs: CascadeSet, count: int, seed: int, coefficient_range: int = 99) -> List[RMinusCrossPoint]:
    """The standard point followed by ``count`` seeded random points of r_-^x"""
    return [standard_point(g, cs)] + [
        random_rx_point(g, cs, seed + k, coefficient_range) for k in range(count)
    ]


def h_naught(g: LieAlgebra, cs: CascadeSet) -> Subspace:
    """Elements of h killed by every cascade root, from the pairing matrix <beta, alpha_i^vee>"""
    pairing = RatMatrix.from_rows(
        ([g.rs.coroot_pairing(beta, i) for i in range(g.rank)] for beta in cs.roots), g.rank
    )
    return lift(kernel(pairing), g.decomposition.h, g.dim)


def coordinate_subspace(g: LieAlgebra, indices: Sequence[int]) -> Subspace:
    vectors = []
    for i in indices:
        v = [0] * g.dim
        v[i] = 1
        vectors.append(v)
    return span(vectors, g.dim)


def r_subspace(g: LieAlgebra, cs: CascadeSet) -> Subspace:
    return coordinate_subspace(g, [g.root_index(beta) for beta in cs.roots])


def h_subspace(g: LieAlgebra) -> Subspace:
    return coordinate_subspace(g, g.decomposition.h)


# -- verifiers -----------------------------------------------------------------

def _tag(g: LieAlgebra) -> Tuple[str, int]:
    t = g.rs.simple_type
    return (t.family, t.rank) if t else ("?", g.rank)


def _report(report_id: str, g: LieAlgebra, checks: Dict[str, bool], **kwargs) -> TheoremReport:
    family, r = _tag(g)
    report = TheoremReport.from_checks(report_id, family, r, checks, **kwargs)
    if report.passed:
        logger.info("%s %s%d passed", report_id, family, r)
    else:
        failed = [k for k, ok in checks.items() if not ok]
        logger.warning("%s %s%d failed: %s", report_id, family, r, ", ".join(failed))
    return report


def verify_thm_1_1(g: LieAlgebra, cs: CascadeSet, points: Sequence[RMinusCrossPoint]) -> TheoremReport:
    """n_tau = r for tau in r_-^x"""
    r = r_subspace(g, cs)
    failures = []
    dims = set()
    for k, tau in enumerate(points):
        result = isotropy(g, ActionKind.COAD_N, tau)
        dims.add(result.isotropy.dim)
        if not subspace_equal(result.isotropy, r):
            failures.append(k)
    return _report(
        "thm_1_1", g,
        {"n_tau_equals_r": not failures, "dim_is_m": dims == {cs.m}},
        dims={"m": cs.m, "points": len(points), "isotropy_dim": max(dims) if dims else 0, "dim_n": g.n_positive},
        witnesses={"r": r, "failing_points": failures},
    )


def verify_thm_2_1(g: LieAlgebra, cs: CascadeSet, points: Sequence[RMinusCrossPoint]) -> TheoremReport:
    """c_w = h° + r for the n_- action of b, and the n_- orbit through w is open"""
    expected = subspace_sum(h_naught(g, cs), r_subspace(g, cs))
    failures, not_open = [], []
    dims = set()
    for k, w in enumerate(points):
        result = isotropy(g, ActionKind.NMINUS, w)
        dims.add(result.isotropy.dim)
        if not subspace_equal(result.isotropy, expected):
            failures.append(k)
        if result.orbit_dim != g.n_positive:
            not_open.append(k)
    return _report(
        "thm_2_1", g,
        {"c_w_equals_h0_plus_r": not failures, "dim_is_ell": dims == {g.rank}, "orbit_open_in_n_minus": not not_open},
        dims={"ell": g.rank, "m": cs.m, "points": len(points), "isotropy_dim": max(dims) if dims else 0},
        witnesses={"h0_plus_r": expected, "failing_points": failures, "not_open": not_open},
    )


def r_to_h_rank(g: LieAlgebra, cs: CascadeSet, w: PointLike) -> int:
    """Rank of r -> h, x -> Phi_h [x, w]"""
    point = _as_point(g, w)
    domain = [g.root_index(beta) for beta in cs.roots]
    return rank(_map_matrix(g, domain, g.decomposition.h, point.element))


def _splitting_holds(g: LieAlgebra, w: PointLike) -> bool:
    """x.w = x·w + Phi_h(x.w): the n_- rows of the coad_B matrix are the n_- action matrix"""
    point = _as_point(g, w)
    full = action_matrix(g, ActionKind.COAD_B, point)
    nminus = action_matrix(g, ActionKind.NMINUS, point)
    d = g.decomposition
    position = {k: i for i, k in enumerate(d.b_minus)}
    rows_n = [full.row(position[k]) for k in d.n_minus]
    rows_h = [full.row(position[k]) for k in d.h]
    phi_h = _map_matrix(g, d.b, d.h, point.element)
    return tuple(rows_n) == nminus.entries and tuple(rows_h) == phi_h.entries


def verify_thm_2_3(g: LieAlgebra, cs: CascadeSet, points: Sequence[RMinusCrossPoint]) -> TheoremReport:
    """b_w = h°, so the B-orbit of w has codimension l - m"""
    h0 = h_naught(g, cs)
    c_expected = subspace_sum(h0, r_subspace(g, cs))
    checks = {"b_w_equals_h0": True, "codim_is_ell_minus_m": True, "r_to_h_injective": True,
              "nested_in_c_w": True, "b_minus_splitting": True}
    failures = []
    orbit_dims = set()
    for k, w in enumerate(points):
        result = isotropy(g, ActionKind.COAD_B, w)
        orbit_dims.add(result.orbit_dim)
        ok = subspace_equal(result.isotropy, h0)
        checks["b_w_equals_h0"] &= ok
        checks["codim_is_ell_minus_m"] &= result.codim == g.rank - cs.m
        checks["r_to_h_injective"] &= r_to_h_rank(g, cs, w) == cs.m
        checks["nested_in_c_w"] &= is_subspace_of(result.isotropy, c_expected)
        checks["b_minus_splitting"] &= _splitting_holds(g, w)
        if not ok:
            failures.append(k)
    return _report(
        "thm_2_3", g, checks,
        dims={"ell": g.rank, "m": cs.m, "points": len(points), "isotropy_dim": h0.dim,
              "dim_b": g.rank + g.n_positive, "orbit_dim": max(orbit_dims) if orbit_dims else 0},
        witnesses={"h0": h0, "failing_points": failures},
    )


_CODIM_IDS = {
    ActionKind.COAD_N: "thm_1_5",
    ActionKind.COAD_B: "thm_2_6",
    ActionKind.NMINUS: "thm_1_3",
}


def codim_bound(g: LieAlgebra, cs: CascadeSet, kind: ActionKind) -> int:
    return {ActionKind.COAD_N: cs.m, ActionKind.COAD_B: g.rank - cs.m, ActionKind.NMINUS: 0}[ActionKind(kind)]


def verify_codim_bounds(
    g: LieAlgebra,
    cs: CascadeSet,
    kind: ActionKind,
    samples: int,
    seed: int,
    threshold: float = 0.95,
    coefficient_range: int = 99,
) -> TheoremReport:
    """Every sampled orbit has codim >= bound; at least ``threshold`` of them reach it"""
    kind = ActionKind(kind)
    if samples < 1:
        raise ValueError("samples must be >= 1")
    bound = codim_bound(g, cs, kind)
    domain, ambient, target = _spaces(g, kind)
    rng = random.Random(seed)
    codims = []
    for _ in range(samples):
        w = random_element(g, ambient, rng, coefficient_range)
        orbit_dim = rank(_map_matrix(g, domain, target, w))
        codims.append(len(target) - orbit_dim)
    equal = sum(1 for c in codims if c == bound)
    return _report(
        _CODIM_IDS[kind], g,
        {"lower_bound": min(codims) >= bound, "generic_equality": equal >= threshold * samples},
        dims={"kind": kind.value, "bound": bound, "samples": samples, "min_codim": min(codims),
              "max_codim": max(codims), "equal_count": equal, "equality_rate": round(equal / samples, 4)},
        witnesses={"codims": codims},
    )


def verify_shift_invariance(g: LieAlgebra, samples: int, seed: int, coefficient_range: int = 99) -> TheoremReport:
    """b_w = b_{w+z} for w in b_-, z in h; the orbit tangent spaces agree as well"""
    rng = random.Random(seed)
    d = g.decomposition
    iso_fail, tangent_fail = [], []
    for k in range(samples):
        w = random_element(g, d.b_minus, rng, coefficient_range)
        z = random_element(g, d.h, rng, coefficient_range)
        shifted = w + z
        if not subspace_equal(isotropy(g, ActionKind.COAD_B, w).isotropy,
                              isotropy(g, ActionKind.COAD_B, shifted).isotropy):
            iso_fail.append(k)
        if not subspace_equal(column_space(action_matrix(g, ActionKind.COAD_B, w)),
                              column_space(action_matrix(g, ActionKind.COAD_B, shifted))):
            tangent_fail.append(k)
    return _report(
        "prop_2_5", g,
        {"isotropy_shift_invariant": not iso_fail, "tangent_shift_invariant": not tangent_fail},
        dims={"samples": samples},
        witnesses={"isotropy_failures": iso_fail, "tangent_failures": tangent_fail},
    )


def fixed_set(g: LieAlgebra) -> Subspace:
    """{w in b_- : Phi_b [x, w] = 0 for every basis vector x of b}, from the stacked matrices"""
    d = g.decomposition
    columns = {k: i for i, k in enumerate(d.b_minus)}
    rows = []
    for x in d.b:
        stacked: Dict[int, List[Fraction]] = {}
        for j in d.b_minus:
            for k, c in g.basis_bracket(x, j):
                if k in columns:
                    row = stacked.setdefault(k, [Fraction(0)] * len(d.b_minus))
                    row[columns[j]] += c
        rows.extend(stacked.values())
    m = RatMatrix(len(rows), len(d.b_minus), tuple(tuple(r) for r in rows))
    return lift(kernel(m), d.b_minus, g.dim)


def verify_fixed_set(g: LieAlgebra) -> TheoremReport:
    fixed = fixed_set(g)
    return _report(
        "eq_2_6", g,
        {"fixed_set_equals_h": subspace_equal(fixed, h_subspace(g))},
        dims={"fixed_dim": fixed.dim, "ell": g.rank},
        witnesses={"fixed_set": fixed},
    )


def verify_h_transitivity_tangent(g: LieAlgebra, cs: CascadeSet, points: Sequence[RMinusCrossPoint]) -> TheoremReport:
    """h -> r_-, x -> proj_{r_-}[x, tau] has rank m at every tau"""
    r_minus = [g.root_index(negate(beta)) for beta in cs.roots]
    ranks = [rank(_map_matrix(g, g.decomposition.h, r_minus, tau.element(g))) for tau in points]
    return _report(
        "h_transitivity", g,
        {"rank_is_m": all(r == cs.m for r in ranks)},
        dims={"m": cs.m, "points": len(points), "min_rank": min(ranks) if ranks else 0},
        witnesses={"ranks": ranks},
    )


# -- classification ------------------------------------------------------------

def classify_type(t: SimpleType) -> ClassificationRow:
    """One row: l, m, -1 in W, and the measured orbit codimensions at the standard point"""
    rs = root_system(t)
    cs = compute_cascade(rs).cascade_set()
    minus_one = is_minus_identity(longest_element(rs))
    g = build_algebra(rs, self_test=False)
    tau = standard_point(g, cs)
    b_codim = isotropy(g, ActionKind.COAD_B, tau).codim
    n_codim = isotropy(g, ActionKind.COAD_N, tau).codim
    open_orbit = b_codim == 0
    consistent = (
        minus_one == (cs.m == rs.rank) == open_orbit
        and n_codim == cs.m
        and b_codim == rs.rank - cs.m
    )
    if not consistent:
        logger.warning("classification row %s is inconsistent", t)
    return ClassificationRow(
        family=t.family, rank=t.rank, ell=rs.rank, m=cs.m,
        minus_one_in_weyl=minus_one, open_coadjoint_orbit=open_orbit,
        dim_b=g.rank + g.n_positive, n_orbit_codim=n_codim, b_orbit_codim=b_codim,
        consistent=consistent,
    )


def classify(max_rank: int) -> List[ClassificationRow]:
    """Rows for every simple type of rank <= max_rank, ordered by (family, rank)"""
    if max_rank < 2:
        raise ValueError("max_rank must be >= 2")
    return [classify_type(t) for t in all_simple_types(max_rank)]
