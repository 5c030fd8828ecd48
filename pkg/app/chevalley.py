"""Chevalley basis, structure constants and the invariant form.

Basis indices: ``0 .. l-1`` are the simple coroots h_i, and ``l + k`` is the
root vector of ``rs.roots[k]`` (positive roots first, negatives after them in
the same order).

Structure constants N_{a,b} ([e_a, e_b] = N_{a,b} e_{a+b}) are fixed by
choosing N = +(p+1) on extraspecial pairs, then propagated with

* N_{a,b} = -N_{b,a}
* N_{a,b}/(c,c) = N_{b,c}/(a,a) = N_{c,a}/(b,b)       when a + b + c = 0
* N_{a,b} N_{-a,-b} = -(p+1)^2
* the four-term relation for a + b + c + d = 0 with no opposite pair.
"""
import itertools
import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from app.cascade import CascadeSet
from app.errors import StructureConstantError
from app.rootsys import Root, RootSystem, height, inner, is_positive, negate

logger = logging.getLogger(__name__)

Term = Tuple[int, int]


@dataclass(frozen=True)
class AlgebraElement:
    """Sparse coordinates over the Chevalley basis; zero entries are never stored"""
    coords: Mapping[int, Fraction] = field(default_factory=dict)

    @classmethod
    def from_dict(cls, coords: Mapping[int, object]) -> "AlgebraElement":
        return cls({i: Fraction(c) for i, c in sorted(coords.items()) if c})

    @classmethod
    def from_vector(cls, vector: Sequence, indices: Optional[Sequence[int]] = None) -> "AlgebraElement":
        indices = range(len(vector)) if indices is None else indices
        return cls.from_dict(dict(zip(indices, vector)))

    def to_vector(self, indices: Sequence[int]) -> Tuple[Fraction, ...]:
        zero = Fraction(0)
        return tuple(self.coords.get(i, zero) for i in indices)

    def support(self) -> Tuple[int, ...]:
        return tuple(self.coords)

    def restrict(self, indices: Iterable[int]) -> "AlgebraElement":
        keep = set(indices)
        return AlgebraElement({i: c for i, c in self.coords.items() if i in keep})

    def is_zero(self) -> bool:
        return not self.coords

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        out = dict(self.coords)
        for i, c in other.coords.items():
            out[i] = out.get(i, 0) + c
        return AlgebraElement.from_dict(out)

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement({i: -c for i, c in self.coords.items()})

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self + (-other)

    def __rmul__(self, scalar) -> "AlgebraElement":
        scalar = Fraction(scalar)
        if not scalar:
            return AlgebraElement()
        return AlgebraElement({i: scalar * c for i, c in self.coords.items()})


@dataclass(frozen=True)
class Decomposition:
    """Basis index sets of the triangular decomposition g = n_- + h + n"""
    n_minus: Tuple[int, ...]
    h: Tuple[int, ...]
    n: Tuple[int, ...]
    r: Tuple[int, ...] = ()
    r_minus: Tuple[int, ...] = ()

    @property
    def b(self) -> Tuple[int, ...]:
        return self.h + self.n

    @property
    def b_minus(self) -> Tuple[int, ...]:
        return tuple(sorted(self.n_minus + self.h))


class _StructureConstants:
    """Memoized N_{a,b} for roots a, b with a + b a root"""

    def __init__(self, rs: RootSystem):
        self.rs = rs
        self.memo: Dict[Tuple[Root, Root], int] = {}
        self.extraspecial: Dict[Root, Tuple[Root, Root]] = {}
        positives = rs.positive_roots
        for xi in positives:
            if height(xi) < 2:
                continue
            for a in positives:
                b = tuple(x - y for x, y in zip(xi, a))
                if rs.is_root(b) and is_positive(b):
                    self.extraspecial[xi] = (a, b)
                    break

    def sq(self, a: Root) -> Fraction:
        return inner(a, a, self.rs)

    def p(self, a: Root, b: Root) -> int:
        p = 0
        while self.rs.is_root(tuple(y - (p + 1) * x for x, y in zip(a, b))):
            p += 1
        return p

    def __call__(self, a: Root, b: Root) -> int:
        key = (a, b)
        if key not in self.memo:
            self.memo[key] = self._compute(a, b)
        return self.memo[key]

    def _compute(self, a: Root, b: Root) -> int:
        rs = self.rs
        c = tuple(x + y for x, y in zip(a, b))
        if not rs.is_root(c):
            return 0
        pa, pb = is_positive(a), is_positive(b)
        if pa and pb:
            if rs.order_key(a) > rs.order_key(b):
                return -self(b, a)
            return self._special(a, b, c)
        if not pa and not pb:
            na, nb = negate(a), negate(b)
            return _exact(Fraction(-(self.p(a, b) + 1) ** 2, self(na, nb)))
        gamma = negate(c)
        if is_positive(gamma) == pb:
            return _exact(self(b, gamma) * self.sq(gamma) / self.sq(a))
        return _exact(self(gamma, a) * self.sq(gamma) / self.sq(b))

    def _special(self, a: Root, b: Root, xi: Root) -> int:
        a1, b1 = self.extraspecial[xi]
        if (a, b) == (a1, b1):
            return self.p(a, b) + 1
        rs = self.rs
        total = Fraction(0)
        d = tuple(x - y for x, y in zip(b, a1))
        if rs.is_root(d):
            total += Fraction(self(b, negate(a1)) * self(a, negate(b1))) / self.sq(d)
        d = tuple(x - y for x, y in zip(a, a1))
        if rs.is_root(d):
            total += Fraction(self(negate(a1), a) * self(b, negate(b1))) / self.sq(d)
        return _exact(-self.sq(xi) * total / self(negate(a1), negate(b1)))


def _exact(value: Fraction) -> int:
    if Fraction(value).denominator != 1:
        raise StructureConstantError(f"non-integral structure constant {value}")
    return int(value)


class LieAlgebra:
    """Simple Lie algebra over Q in a Chevalley basis; treat as immutable"""

    def __init__(self, rs: RootSystem):
        self.rs = rs
        self.rank = rs.rank
        self.n_positive = len(rs.positives)
        self.dim = self.rank + len(rs.roots)
        self._constants = _StructureConstants(rs)
        self._table: Dict[Tuple[int, int], Tuple[Tuple[int, Fraction], ...]] = {}
        self._form: Dict[int, Tuple[Tuple[int, Fraction], ...]] = {}
        self._build()
        self.decomposition = Decomposition(
            n_minus=tuple(range(self.rank + self.n_positive, self.dim)),
            h=tuple(range(self.rank)),
            n=tuple(range(self.rank, self.rank + self.n_positive)),
        )

    # -- indexing ---------------------------------------------------------

    def root_index(self, root: Sequence[int]) -> int:
        return self.rank + self.rs.index(root)

    def basis_root(self, index: int) -> Optional[Root]:
        return None if index < self.rank else self.rs.roots[index - self.rank]

    def label(self, index: int) -> str:
        root = self.basis_root(index)
        if root is None:
            return f"h{index + 1}"
        return "e(" + ",".join(str(c) for c in root) + ")"

    def basis(self, index: int) -> AlgebraElement:
        return AlgebraElement({index: Fraction(1)})

    def e(self, root: Sequence[int]) -> AlgebraElement:
        return self.basis(self.root_index(root))

    def h(self, i: int) -> AlgebraElement:
        return self.basis(i)

    def coroot(self, root: Sequence[int]) -> Dict[int, int]:
        """phi^vee in the simple-coroot basis"""
        sq = inner(root, root, self.rs)
        out = {}
        for i, c in enumerate(root):
            if c:
                out[i] = _exact(c * self.rs.gram[i][i] / sq)
        return out

    # -- construction ---------------------------------------------------------

    def _build(self):
        rs, l = self.rs, self.rank
        table: Dict[Tuple[int, int], List[Tuple[int, Fraction]]] = {}
        for k, phi in enumerate(rs.roots):
            ei = l + k
            for i in range(l):
                c = rs.coroot_pairing(phi, i)
                if c:
                    table[(i, ei)] = [(ei, Fraction(c))]
                    table[(ei, i)] = [(ei, Fraction(-c))]
            for kk, psi in enumerate(rs.roots):
                ej = l + kk
                s = tuple(x + y for x, y in zip(phi, psi))
                if not any(s):
                    table[(ei, ej)] = [(i, Fraction(c)) for i, c in sorted(self.coroot(phi).items())]
                elif rs.is_root(s):
                    table[(ei, ej)] = [(l + rs.index(s), Fraction(self._constants(phi, psi)))]
        self._table = {key: tuple(v) for key, v in table.items()}

        form: Dict[int, List[Tuple[int, Fraction]]] = {}
        gram = rs.gram
        for i in range(l):
            form[i] = [
                (j, 4 * gram[i][j] / (gram[i][i] * gram[j][j])) for j in range(l) if gram[i][j]
            ]
        for k, phi in enumerate(rs.roots):
            form[l + k] = [(self.root_index(negate(phi)), 2 / inner(phi, phi, rs))]
        self._form = {key: tuple(v) for key, v in form.items()}

    # -- raw table access ---------------------------------------------------

    def basis_bracket(self, i: int, j: int) -> Tuple[Tuple[int, Fraction], ...]:
        return self._table.get((i, j), ())

    def structure_constant(self, a: Sequence[int], b: Sequence[int]) -> int:
        return self._constants(tuple(a), tuple(b))

    def max_structure_constant(self) -> int:
        l = self.rank
        return max(
            (abs(int(c)) for (i, j), terms in self._table.items() if i >= l and j >= l
             for k, c in terms if k >= l),
            default=0,
        )


def build_algebra(
    rs: RootSystem,
    self_test: bool = True,
    exhaustive_max_rank: int = 3,
    sampled_triples: int = 200,
    seed: int = 0,
) -> LieAlgebra:
    g = LieAlgebra(rs)
    logger.info("built Chevalley basis for %s (dim %d)", rs, g.dim)
    if self_test:
        summary = run_self_test(g, exhaustive_max_rank, sampled_triples, seed)
        if not summary["passed"]:
            raise StructureConstantError(f"self-test failed for {rs}: {summary['failure']}")
    return g


def bracket(g: LieAlgebra, x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    out: Dict[int, Fraction] = {}
    for i, a in x.coords.items():
        for j, b in y.coords.items():
            for k, c in g.basis_bracket(i, j):
                out[k] = out.get(k, 0) + a * b * c
    return AlgebraElement.from_dict(out)


def invariant_form(g: LieAlgebra, x: AlgebraElement, y: AlgebraElement) -> Fraction:
    """Invariant form normalized so that (theta, theta) = 2; (e_phi, e_-phi) = 2/(phi, phi)"""
    total = Fraction(0)
    for i, a in x.coords.items():
        for j, value in g._form.get(i, ()):
            b = y.coords.get(j)
            if b:
                total += a * b * value
    return total


_PROJECTION_ALIASES = {
    "n_-": "n_minus",
    "n_minus": "n_minus",
    "h": "h",
    "n": "n",
    "b": "b_minus",
    "b_-": "b_minus",
    "b_minus": "b_minus",
    "b_plus": "b",
}


def project(g: LieAlgebra, which: str, x: AlgebraElement) -> AlgebraElement:
    """Coordinate projection onto a piece of the triangular decomposition.

    ``"b"`` is the projection g -> b_- along n (so Phi_b = Phi_{n_-} + Phi_h);
    ``"b_plus"`` restricts to b itself.
    """
    try:
        name = _PROJECTION_ALIASES[which]
    except KeyError:
        raise ValueError(f"unknown projection target {which!r}") from None
    return x.restrict(getattr(g.decomposition, name))


def decomposition(g: LieAlgebra, cs: Optional[CascadeSet] = None) -> Decomposition:
    base = g.decomposition
    if cs is None:
        return base
    return Decomposition(
        n_minus=base.n_minus,
        h=base.h,
        n=base.n,
        r=tuple(g.root_index(beta) for beta in cs.roots),
        r_minus=tuple(g.root_index(negate(beta)) for beta in cs.roots),
    )


def r_is_abelian(g: LieAlgebra, cs: CascadeSet) -> bool:
    for a, b in itertools.combinations(cs.roots, 2):
        if not bracket(g, g.e(a), g.e(b)).is_zero():
            return False
    return True


# -- self-test ----------------------------------------------------------------

def _jacobi(g: LieAlgebra, x, y, z) -> AlgebraElement:
    return (
        bracket(g, x, bracket(g, y, z))
        + bracket(g, y, bracket(g, z, x))
        + bracket(g, z, bracket(g, x, y))
    )


def _invariance(g: LieAlgebra, x, y, z) -> Fraction:
    return invariant_form(g, bracket(g, x, y), z) + invariant_form(g, y, bracket(g, x, z))


def check_triples(g: LieAlgebra, triples: Iterable[Tuple[int, int, int]]) -> Optional[str]:
    """First failing basis triple described as text, or None"""
    for i, j, k in triples:
        x, y, z = g.basis(i), g.basis(j), g.basis(k)
        if not _jacobi(g, x, y, z).is_zero():
            return f"Jacobi fails on ({g.label(i)}, {g.label(j)}, {g.label(k)})"
        if _invariance(g, x, y, z):
            return f"form invariance fails on ({g.label(i)}, {g.label(j)}, {g.label(k)})"
    return None


def run_self_test(g: LieAlgebra, exhaustive_max_rank: int = 3, sampled_triples: int = 200, seed: int = 0) -> dict:
    """Jacobi identity and invariance of the form on basis triples.

    Exhaustive up to ``exhaustive_max_rank``, seeded random triples above it.
    """
    for i in range(g.dim):
        for j in range(g.dim):
            if bracket(g, g.basis(i), g.basis(j)) != -bracket(g, g.basis(j), g.basis(i)):
                return {"passed": False, "mode": "antisymmetry", "triples": 0,
                        "failure": f"[{g.label(i)}, {g.label(j)}] is not antisymmetric"}
    if g.rank <= exhaustive_max_rank:
        triples = list(itertools.product(range(g.dim), repeat=3))
        mode = "exhaustive"
    else:
        rng = random.Random(seed)
        triples = [tuple(rng.randrange(g.dim) for _ in range(3)) for _ in range(sampled_triples)]
        mode = "sampled"
    failure = check_triples(g, triples)
    if failure:
        logger.warning("self-test of %s failed: %s", g.rs, failure)
    return {"passed": failure is None, "mode": mode, "triples": len(triples), "failure": failure}


def algebra_summary(g: LieAlgebra) -> dict:
    rs = g.rs
    return {
        "rank": g.rank,
        "roots": len(rs.roots),
        "positive_roots": g.n_positive,
        "dim_g": g.dim,
        "dim_b": g.rank + g.n_positive,
        "dim_n": g.n_positive,
        "highest_root": list(rs.highest_root),
        "max_structure_constant": g.max_structure_constant(),
    }
