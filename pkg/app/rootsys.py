"""Root systems of the simple types, built from Cartan matrices.

Conventions (Bourbaki numbering, Cartan entries a_ij = <alpha_i^vee, alpha_j>):

=======  ==========================================================
family   diagram / position of the double or triple bond
=======  ==========================================================
A_l      chain 1 - 2 - ... - l
B_l      alpha_l short; a_{l,l-1} = -2
C_l      alpha_l long;  a_{l-1,l} = -2
D_l      chain 1 - ... - (l-2), with l-1 and l both joined to l-2
E_l      chain 1 - 3 - 4 - ... - l, with 2 joined to 4
F_4      alpha_1, alpha_2 long; a_{3,2} = -2
G_2      alpha_1 long; a_{2,1} = -3
=======  ==========================================================

Roots are integer tuples in the simple-root basis. The inner product is
scaled so that the highest root has squared length 2.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from app.errors import InvalidTypeError, NotARootError, NotFiniteTypeError, NotSymmetricError

logger = logging.getLogger(__name__)

Root = Tuple[int, ...]
IntMatrix = Tuple[Tuple[int, ...], ...]

FAMILIES = ("A", "B", "C", "D", "E", "F", "G")


@dataclass(frozen=True, order=True)
class SimpleType:
    family: str
    rank: int

    def __post_init__(self):
        f, n = self.family, self.rank
        valid = {
            "A": n >= 1,
            "B": n >= 2,
            "C": n >= 2,
            "D": n >= 4,
            "E": n in (6, 7, 8),
            "F": n == 4,
            "G": n == 2,
        }
        if f not in valid:
            raise InvalidTypeError(f"unknown family {f!r}; expected one of {', '.join(FAMILIES)}")
        if not isinstance(n, int) or not valid[f]:
            raise InvalidTypeError(f"{f}{n} is not a simple type")

    @classmethod
    def parse(cls, label: str) -> "SimpleType":
        label = label.strip().upper()
        if len(label) < 2 or not label[1:].isdigit():
            raise InvalidTypeError(f"cannot parse simple type {label!r}")
        return cls(label[0], int(label[1:]))

    def __str__(self):
        return f"{self.family}{self.rank}"


def all_simple_types(max_rank: int) -> List[SimpleType]:
    """Every isomorphism class of rank <= max_rank once, ordered by (family, rank).

    C2 is left out in favour of B2.
    """
    types = []
    for family, low in (("A", 1), ("B", 2), ("C", 3), ("D", 4)):
        types.extend(SimpleType(family, n) for n in range(low, max_rank + 1))
    types.extend(SimpleType("E", n) for n in (6, 7, 8) if n <= max_rank)
    if max_rank >= 4:
        types.append(SimpleType("F", 4))
    if max_rank >= 2:
        types.append(SimpleType("G", 2))
    return sorted(types)


def cartan_matrix(t: SimpleType) -> IntMatrix:
    """Standard Cartan matrix of ``t``; see the module table for conventions"""
    n = t.rank
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def join(i, j):
        a[i][j] = a[j][i] = -1

    if t.family in "ABC":
        for i in range(n - 1):
            join(i, i + 1)
        if t.family == "B":
            a[n - 1][n - 2] = -2
        elif t.family == "C":
            a[n - 2][n - 1] = -2
    elif t.family == "D":
        for i in range(n - 2):
            join(i, i + 1)
        join(n - 3, n - 1)
    elif t.family == "E":
        join(0, 2)
        join(1, 3)
        for i in range(2, n - 1):
            join(i, i + 1)
    elif t.family == "F":
        join(0, 1)
        join(1, 2)
        join(2, 3)
        a[2][1] = -2
    elif t.family == "G":
        join(0, 1)
        a[1][0] = -3
    return tuple(tuple(r) for r in a)


@dataclass(frozen=True)
class WeylElement:
    """Linear map of h* in simple-root coordinates; column j is the image of alpha_j"""
    matrix: IntMatrix

    @classmethod
    def identity(cls, rank: int) -> "WeylElement":
        return cls(tuple(tuple(int(i == j) for j in range(rank)) for i in range(rank)))

    @property
    def rank(self) -> int:
        return len(self.matrix)

    def apply(self, v: Sequence) -> tuple:
        return tuple(sum(a * x for a, x in zip(row, v)) for row in self.matrix)

    def __matmul__(self, other: "WeylElement") -> "WeylElement":
        n = self.rank
        return WeylElement(tuple(
            tuple(sum(self.matrix[i][k] * other.matrix[k][j] for k in range(n)) for j in range(n))
            for i in range(n)
        ))


@dataclass(frozen=True)
class RootSystem:
    simple_type: Optional[SimpleType]
    cartan: IntMatrix
    roots: Tuple[Root, ...]
    positives: Tuple[int, ...]
    gram: Tuple[Tuple[Fraction, ...], ...]
    _index: Dict[Root, int] = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", {r: i for i, r in enumerate(self.roots)})

    @property
    def rank(self) -> int:
        return len(self.cartan)

    @property
    def positive_roots(self) -> Tuple[Root, ...]:
        return tuple(self.roots[i] for i in self.positives)

    @property
    def simple_roots(self) -> Tuple[Root, ...]:
        n = self.rank
        return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))

    @property
    def highest_root(self) -> Root:
        return max(self.positive_roots, key=height)

    def index(self, root: Sequence[int]) -> int:
        return self._index[tuple(root)]

    def is_root(self, v: Sequence) -> bool:
        return tuple(v) in self._index

    def order_key(self, root: Root) -> int:
        """Position of a root in the canonical order (positives by height, then lexicographic)"""
        return self._index[root]

    def coroot_pairing(self, v: Sequence, i: int) -> int:
        """<v, alpha_i^vee> for v in simple-root coordinates"""
        return sum(self.cartan[i][j] * v[j] for j in range(self.rank))

    def __str__(self):
        return str(self.simple_type) if self.simple_type else f"rank-{self.rank} system"


def height(root: Sequence[int]) -> int:
    return sum(root)


def is_positive(root: Sequence[int]) -> bool:
    return all(c >= 0 for c in root)


def negate(root: Sequence[int]) -> Root:
    return tuple(-c for c in root)


def _validate_cartan(cartan: IntMatrix) -> None:
    n = len(cartan)
    if n == 0 or any(len(r) != n for r in cartan):
        raise InvalidTypeError("Cartan matrix must be square and nonempty")
    for i in range(n):
        if cartan[i][i] != 2:
            raise InvalidTypeError(f"diagonal entry {i} is {cartan[i][i]}, expected 2")
        for j in range(n):
            if i != j and (cartan[i][j] > 0 or (cartan[i][j] == 0) != (cartan[j][i] == 0)):
                raise InvalidTypeError(f"entries ({i},{j}) and ({j},{i}) are not a valid Cartan pair")


def _squared_lengths(cartan: IntMatrix) -> List[Fraction]:
    """Symmetrizer: (alpha_i, alpha_i) up to one scale per connected component"""
    n = len(cartan)
    lengths: List[Optional[Fraction]] = [None] * n
    for start in range(n):
        if lengths[start] is not None:
            continue
        lengths[start] = Fraction(1)
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(n):
                if i != j and cartan[i][j]:
                    lj = lengths[i] * cartan[i][j] / cartan[j][i]
                    if lengths[j] is None:
                        lengths[j] = lj
                        stack.append(j)
                    elif lengths[j] != lj:
                        raise InvalidTypeError("Cartan matrix is not symmetrizable")
    return lengths


def _simple_reflection(cartan: IntMatrix, i: int, v: Root) -> Root:
    n = len(cartan)
    c = sum(cartan[i][j] * v[j] for j in range(n))
    if not c:
        return v
    return tuple(x - c if k == i else x for k, x in enumerate(v))


def generate_roots(cartan: Sequence[Sequence[int]], simple_type: Optional[SimpleType] = None) -> RootSystem:
    """Full root set as the closure of the simple roots under simple reflections.

    Raises :class:`NotFiniteTypeError` once more roots appear than any finite
    system of this rank can have.
    """
    cartan = tuple(tuple(int(x) for x in row) for row in cartan)
    _validate_cartan(cartan)
    n = len(cartan)
    bound = max(2 * n * n, 240)
    simples = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    found = set(simples)
    frontier = list(simples)
    while frontier:
        nxt = []
        for root in frontier:
            for i in range(n):
                image = _simple_reflection(cartan, i, root)
                if image not in found:
                    if any(c > 0 for c in image) and any(c < 0 for c in image):
                        raise NotFiniteTypeError(f"mixed-sign vector {image} produced; Cartan matrix is not of finite type")
                    found.add(image)
                    nxt.append(image)
            if len(found) > bound:
                raise NotFiniteTypeError(f"more than {bound} roots generated for rank {n}")
        frontier = nxt

    positives = sorted((r for r in found if is_positive(r)), key=lambda r: (height(r), tuple(-c for c in r)))
    roots = tuple(positives) + tuple(negate(r) for r in positives)
    if len(roots) != len(found):
        raise NotFiniteTypeError("root set is not closed under negation")

    lengths = _squared_lengths(cartan)
    gram = [[cartan[i][j] * lengths[i] / 2 for j in range(n)] for i in range(n)]
    theta = max(positives, key=height)
    scale = Fraction(2) / _form(gram, theta, theta)
    gram = tuple(tuple(x * scale for x in row) for row in gram)
    rs = RootSystem(simple_type, cartan, roots, tuple(range(len(positives))), gram)
    logger.debug("generated %s: %d roots", rs, len(roots))
    return rs


def root_system(t: Union[SimpleType, str]) -> RootSystem:
    if isinstance(t, str):
        t = SimpleType.parse(t)
    return generate_roots(cartan_matrix(t), t)


def _form(gram, a: Sequence, b: Sequence) -> Fraction:
    n = len(gram)
    return sum((gram[i][j] * a[i] * b[j] for i in range(n) if a[i] for j in range(n) if b[j]), Fraction(0))


def inner(a: Sequence, b: Sequence, rs: RootSystem) -> Fraction:
    """Bilinear extension of the gram matrix; long roots have squared length 2"""
    return _form(rs.gram, a, b)


def reflection_matrix(phi: Sequence[int], rs: RootSystem) -> WeylElement:
    phi = tuple(phi)
    if not rs.is_root(phi):
        raise NotARootError(f"{phi} is not a root of {rs}")
    cols = [reflect(phi, a, rs) for a in rs.simple_roots]
    return WeylElement(tuple(tuple(int(cols[j][i]) for j in range(rs.rank)) for i in range(rs.rank)))


def reflect(w: Union[WeylElement, Sequence[int]], v: Sequence, rs: RootSystem) -> tuple:
    """Image of ``v`` under a Weyl element, or under the reflection s_phi when a root is given.

    s_phi(v) = v - 2 (v, phi) / (phi, phi) * phi
    """
    if isinstance(w, WeylElement):
        return w.apply(v)
    phi = tuple(w)
    if not rs.is_root(phi):
        raise NotARootError(f"{phi} is not a root of {rs}")
    c = 2 * inner(v, phi, rs) / inner(phi, phi, rs)
    if c.denominator == 1 and all(isinstance(x, int) for x in v):
        c = int(c)
    return tuple(x - c * p for x, p in zip(v, phi))


def longest_element(rs: RootSystem) -> WeylElement:
    """w0, by descending the strictly dominant vector 2*rho to the antidominant chamber"""
    n = rs.rank
    v = tuple(sum(r[k] for r in rs.positive_roots) for k in range(n))
    w = WeylElement.identity(n)
    steps = 0
    while True:
        i = next((i for i in range(n) if rs.coroot_pairing(v, i) > 0), None)
        if i is None:
            break
        v = _simple_reflection(rs.cartan, i, v)
        w = reflection_matrix(rs.simple_roots[i], rs) @ w
        steps += 1
    logger.debug("longest element of %s has length %d", rs, steps)
    return w


def is_minus_identity(w: WeylElement) -> bool:
    n = w.rank
    return all(w.matrix[i][j] == (-1 if i == j else 0) for i in range(n) for j in range(n))


def subsystem_simples(subset: Sequence[Root], rs: RootSystem) -> List[Root]:
    """Simple roots induced on a symmetric root subset by the ambient positive system"""
    members = {tuple(r) for r in subset}
    for r in members:
        if negate(r) not in members:
            raise NotSymmetricError(f"{r} is in the subset but its negative is not")
    positives = [r for r in members if is_positive(r)]
    pos_set = set(positives)
    decomposable = set()
    for a in positives:
        for b in positives:
            s = tuple(x + y for x, y in zip(a, b))
            if s in pos_set:
                decomposable.add(s)
    return sorted((r for r in positives if r not in decomposable), key=rs.order_key)


def subsystem_components(simples: Sequence[Root], rs: RootSystem) -> List[List[Root]]:
    """Connected components of the induced Dynkin graph, ordered by their first simple root"""
    remaining = sorted(simples, key=rs.order_key)
    components = []
    while remaining:
        component = [remaining.pop(0)]
        grew = True
        while grew:
            grew = False
            for r in list(remaining):
                if any(inner(r, c, rs) for c in component):
                    component.append(r)
                    remaining.remove(r)
                    grew = True
        components.append(sorted(component, key=rs.order_key))
    return components
