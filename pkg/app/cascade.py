"""The cascade of strongly orthogonal roots.

For each irreducible component of the current subsystem the highest root is
adjoined to the cascade, and the recursion continues inside that component on
the roots orthogonal to it.
"""
import itertools
import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from app.errors import BorelCoadjointError, DegenerateRootPairError, SearchBudgetExceeded
from app.exactla import RatMatrix, rank
from app.rootsys import (
    Root,
    RootSystem,
    WeylElement,
    height,
    inner,
    is_positive,
    longest_element,
    negate,
    reflection_matrix,
    subsystem_components,
    subsystem_simples,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CascadeNode:
    root: Root
    parent: Optional[int]
    depth: int


@dataclass(frozen=True)
class CascadeSet:
    roots: Tuple[Root, ...]

    @property
    def m(self) -> int:
        return len(self.roots)


@dataclass(frozen=True)
class CascadeTree:
    """Nodes and ``order`` both follow construction order (depth-first)"""
    nodes: Tuple[CascadeNode, ...]
    order: Tuple[int, ...]

    @property
    def m(self) -> int:
        return len(self.nodes)

    @property
    def roots(self) -> Tuple[Root, ...]:
        return tuple(node.root for node in self.nodes)

    def cascade_set(self) -> CascadeSet:
        return CascadeSet(self.roots)


def strongly_orthogonal(a: Sequence[int], b: Sequence[int], rs: RootSystem) -> bool:
    """True iff neither a + b nor a - b is a root"""
    a, b = tuple(a), tuple(b)
    if a == b or a == negate(b):
        raise DegenerateRootPairError(f"strong orthogonality is undefined for {a} and {b} (equal or opposite)")
    s = tuple(x + y for x, y in zip(a, b))
    d = tuple(x - y for x, y in zip(a, b))
    return not rs.is_root(s) and not rs.is_root(d)


def _component_roots(subset: List[Root], component: List[Root], rs: RootSystem) -> List[Root]:
    return [r for r in subset if any(inner(r, s, rs) for s in component)]


def compute_cascade(rs: RootSystem, reverse_components: bool = False) -> CascadeTree:
    nodes: List[CascadeNode] = []

    def descend(subset: List[Root], parent: Optional[int], depth: int) -> None:
        if not subset:
            return
        components = subsystem_components(subsystem_simples(subset, rs), rs)
        if reverse_components:
            components.reverse()
        for component in components:
            roots = _component_roots(subset, component, rs)
            beta = max((r for r in roots if is_positive(r)), key=height)
            nodes.append(CascadeNode(beta, parent, depth))
            here = len(nodes) - 1
            descend([r for r in roots if not inner(r, beta, rs)], here, depth + 1)

    descend(list(rs.roots), None, 0)
    tree = CascadeTree(tuple(nodes), tuple(range(len(nodes))))
    logger.debug("cascade of %s: m = %d", rs, tree.m)
    return tree


def max_strongly_orthogonal_bruteforce(rs: RootSystem, limit: int = 4) -> int:
    """Largest set of pairwise strongly orthogonal positive roots, by branch and bound"""
    if rs.rank > limit:
        raise SearchBudgetExceeded(f"rank {rs.rank} exceeds the exhaustive search limit {limit}")
    positives = list(rs.positive_roots)
    compatible = {
        a: {b for b in positives if b != a and strongly_orthogonal(a, b, rs)} for a in positives
    }
    best = 0

    def extend(size: int, candidates: List[Root]) -> None:
        nonlocal best
        if size > best:
            best = size
        for k, a in enumerate(candidates):
            if size + len(candidates) - k <= best:
                return
            extend(size + 1, [b for b in candidates[k + 1:] if b in compatible[a]])

    extend(0, positives)
    return best


def reflection_product(rs: RootSystem, cs: CascadeSet, order: Optional[Sequence[int]] = None) -> WeylElement:
    order = range(cs.m) if order is None else order
    product = WeylElement.identity(rs.rank)
    for k in order:
        product = product @ reflection_matrix(cs.roots[k], rs)
    return product


def verify_w0_product(rs: RootSystem, cs: CascadeSet) -> bool:
    """prod_{beta in cascade} s_beta == w0, with the s_beta commuting pairwise"""
    reflections = [reflection_matrix(beta, rs) for beta in cs.roots]
    for s, t in itertools.combinations(reflections, 2):
        if s @ t != t @ s:
            return False
    w0 = longest_element(rs)
    if reflection_product(rs, cs) != w0:
        return False
    return reflection_product(rs, cs, range(cs.m - 1, -1, -1)) == w0


def cascade_independence(cs: CascadeSet) -> bool:
    if cs.m == 0:
        raise BorelCoadjointError("empty cascade")
    return rank(RatMatrix.from_rows(cs.roots)) == cs.m
