import asyncio
import logging
import time
from functools import lru_cache
from typing import Callable, Dict, List, Optional, Sequence, TypeVar

from app import coadjoint
from app.cascade import (
    CascadeTree,
    cascade_independence,
    compute_cascade,
    max_strongly_orthogonal_bruteforce,
    strongly_orthogonal,
    verify_w0_product,
)
from app.chevalley import LieAlgebra, algebra_summary, build_algebra, r_is_abelian, run_self_test
from app.coadjoint import ActionKind
from app.config import get_settings
from app.errors import SearchBudgetExceeded, SelectorError
from app.models import (
    CascadeEntry,
    ClassificationRow,
    JsonReport,
    RunConfig,
    TargetReport,
    TheoremReport,
    VerifierSettings,
)
from app.rootsys import RootSystem, SimpleType, all_simple_types, is_minus_identity, longest_element, root_system
from app.utils import suite_seed

logger = logging.getLogger(__name__)

T = TypeVar("T")


@lru_cache(maxsize=None)
def get_root_system(t: SimpleType) -> RootSystem:
    return root_system(t)


@lru_cache(maxsize=None)
def get_cascade(t: SimpleType) -> CascadeTree:
    return compute_cascade(get_root_system(t))


@lru_cache(maxsize=None)
def get_algebra(t: SimpleType) -> LieAlgebra:
    """Chevalley basis for ``t``; the self-test runs once per process and type"""
    settings = get_settings()
    return build_algebra(
        get_root_system(t),
        self_test=True,
        exhaustive_max_rank=settings.self_test_exhaustive_max_rank,
        sampled_triples=settings.self_test_sampled_triples,
    )


def resolve_types(cfg: RunConfig) -> List[SimpleType]:
    """Targets selected by ``--type/--rank`` or ``--all-types --max-rank``, in (family, rank) order"""
    if cfg.all_types:
        if cfg.max_rank is None:
            raise SelectorError("--all-types needs --max-rank")
        if cfg.max_rank < 1:
            raise SelectorError("--max-rank must be >= 1")
        return all_simple_types(cfg.max_rank)
    if cfg.family is None or cfg.rank is None:
        raise SelectorError("select a target with --type and --rank (or --all-types --max-rank)")
    return [SimpleType(cfg.family.upper(), cfg.rank)]


def cascade_entries(tree: CascadeTree) -> List[CascadeEntry]:
    return [CascadeEntry(coords=list(n.root), parent=n.parent, depth=n.depth) for n in tree.nodes]


def target_header(t: SimpleType) -> TargetReport:
    rs = get_root_system(t)
    tree = get_cascade(t)
    return TargetReport(
        family=t.family,
        rank=t.rank,
        ell=rs.rank,
        m=tree.m,
        minus_one_in_weyl=is_minus_identity(longest_element(rs)),
        open_coadjoint_orbit=tree.m == rs.rank,
        cascade=cascade_entries(tree),
    )


# -- suites ----------------------------------------------------------------------

def _capped(t: SimpleType, samples: int, settings: VerifierSettings) -> int:
    if t.rank >= settings.large_rank:
        return min(samples, settings.large_rank_samples)
    return samples


def _points(t: SimpleType, cfg: RunConfig, settings: VerifierSettings) -> List[coadjoint.RMinusCrossPoint]:
    g = get_algebra(t)
    cs = get_cascade(t).cascade_set()
    count = min(settings.random_points, cfg.samples)
    return coadjoint.rx_points(g, cs, count, cfg.seed, settings.coefficient_range)


def suite_cascade(t: SimpleType, cfg: RunConfig, settings: VerifierSettings) -> List[TheoremReport]:
    rs = get_root_system(t)
    tree = get_cascade(t)
    cs = tree.cascade_set()
    reverse = compute_cascade(rs, reverse_components=True)
    checks = {
        "independent": cascade_independence(cs),
        "pairwise_strongly_orthogonal": all(
            strongly_orthogonal(a, b, rs) for i, a in enumerate(cs.roots) for b in cs.roots[i + 1:]
        ),
        "r_abelian": r_is_abelian(get_algebra(t), cs),
        "order_independent": set(reverse.roots) == set(cs.roots),
    }
    dims: Dict[str, object] = {"m": cs.m, "ell": rs.rank, "depth": max(n.depth for n in tree.nodes)}
    note = None
    skipped = False
    try:
        oracle = max_strongly_orthogonal_bruteforce(rs, limit=cfg.oracle_rank_limit)
        checks["matches_oracle"] = oracle == cs.m
        dims["oracle_m"] = oracle
    except SearchBudgetExceeded as e:
        note = f"oracle skipped: {e}"
        skipped = True
        logger.info("%s: %s", t, note)
    return [TheoremReport.from_checks("cascade", t.family, t.rank, checks, dims=dims, note=note, skipped=skipped)]


def suite_w0(t: SimpleType, cfg: RunConfig, settings: VerifierSettings) -> List[TheoremReport]:
    rs = get_root_system(t)
    cs = get_cascade(t).cascade_set()
    minus_one = is_minus_identity(longest_element(rs))
    checks = {
        "product_equals_w0": verify_w0_product(rs, cs),
        "minus_one_iff_m_equals_ell": minus_one == (cs.m == rs.rank),
    }
    dims = {"m": cs.m, "ell": rs.rank, "minus_one_in_weyl": minus_one}
    return [TheoremReport.from_checks("prop_1_4", t.family, t.rank, checks, dims=dims)]


def suite_isotropy(t: SimpleType, cfg: RunConfig, settings: VerifierSettings) -> List[TheoremReport]:
    g = get_algebra(t)
    cs = get_cascade(t).cascade_set()
    points = _points(t, cfg, settings)
    return [
        coadjoint.verify_thm_1_1(g, cs, points),
        coadjoint.verify_thm_2_1(g, cs, points),
        coadjoint.verify_thm_2_3(g, cs, points),
    ]


def suite_codim(t: SimpleType, cfg: RunConfig, settings: VerifierSettings) -> List[TheoremReport]:
    g = get_algebra(t)
    cs = get_cascade(t).cascade_set()
    samples = _capped(t, cfg.samples, settings)
    return [
        coadjoint.verify_codim_bounds(
            g, cs, kind, samples, suite_seed(cfg.seed, k),
            threshold=settings.genericity_threshold,
            coefficient_range=settings.coefficient_range,
        )
        for k, kind in enumerate((ActionKind.COAD_N, ActionKind.COAD_B, ActionKind.NMINUS))
    ]


def suite_shift(t: SimpleType, cfg: RunConfig, settings: VerifierSettings) -> List[TheoremReport]:
    samples = _capped(t, min(cfg.samples, settings.shift_samples), settings)
    return [coadjoint.verify_shift_invariance(get_algebra(t), samples, cfg.seed, settings.coefficient_range)]


def suite_fixed(t: SimpleType, cfg: RunConfig, settings: VerifierSettings) -> List[TheoremReport]:
    return [coadjoint.verify_fixed_set(get_algebra(t))]


def suite_transitivity(t: SimpleType, cfg: RunConfig, settings: VerifierSettings) -> List[TheoremReport]:
    g = get_algebra(t)
    cs = get_cascade(t).cascade_set()
    return [coadjoint.verify_h_transitivity_tangent(g, cs, _points(t, cfg, settings))]


SUITE_RUNNERS: Dict[str, Callable[[SimpleType, RunConfig, VerifierSettings], List[TheoremReport]]] = {
    "cascade": suite_cascade,
    "w0": suite_w0,
    "isotropy": suite_isotropy,
    "codim": suite_codim,
    "shift": suite_shift,
    "fixed": suite_fixed,
    "transitivity": suite_transitivity,
}

SUITE_IDS = {
    "cascade": ("cascade",),
    "w0": ("prop_1_4",),
    "isotropy": ("thm_1_1", "thm_2_1", "thm_2_3"),
    "codim": ("thm_1_5", "thm_2_6", "thm_1_3"),
    "shift": ("prop_2_5",),
    "fixed": ("eq_2_6",),
    "transitivity": ("h_transitivity",),
}


def run_suite(t: SimpleType, suite: str, cfg: RunConfig, settings: VerifierSettings) -> List[TheoremReport]:
    start = time.perf_counter()
    try:
        reports = SUITE_RUNNERS[suite](t, cfg, settings)
    except SearchBudgetExceeded as e:
        reports = [TheoremReport.skip(i, t.family, t.rank, str(e)) for i in SUITE_IDS[suite]]
    elapsed = time.perf_counter() - start
    logger.info("%s suite %s: %s in %.2fs", t, suite,
                "pass" if all(r.passed for r in reports) else "FAIL", elapsed)
    if cfg.timings:
        share = round(elapsed / len(reports), 3)
        reports = [r.model_copy(update={"seconds": share}) for r in reports]
    return reports


def verify_target(t: SimpleType, cfg: RunConfig, settings: Optional[VerifierSettings] = None) -> TargetReport:
    settings = settings or get_settings()
    report = target_header(t)
    for suite in cfg.suites:
        report.suites.extend(run_suite(t, suite, cfg, settings))
    return report


# -- fan-out ---------------------------------------------------------------------

async def fan_out(types: Sequence[SimpleType], fn: Callable[[SimpleType], T], workers: int) -> List[T]:
    """Run ``fn`` per type in worker threads; results come back in input order"""
    semaphore = asyncio.Semaphore(workers)

    async def one(t: SimpleType) -> T:
        async with semaphore:
            return await asyncio.to_thread(fn, t)

    return list(await asyncio.gather(*(one(t) for t in types)))


def _gather(types: Sequence[SimpleType], fn: Callable[[SimpleType], T]) -> List[T]:
    ordered = sorted(types)
    if len(ordered) == 1:
        return [fn(ordered[0])]
    return asyncio.run(fan_out(ordered, fn, get_settings().workers))


# -- commands --------------------------------------------------------------------

def run_cascade(cfg: RunConfig) -> JsonReport:
    results = _gather(resolve_types(cfg), target_header)
    return JsonReport(command="cascade", input=cfg.echo(), results=results, passed=True)


def run_verify(cfg: RunConfig) -> JsonReport:
    settings = get_settings()
    results = _gather(resolve_types(cfg), lambda t: verify_target(t, cfg, settings))
    return JsonReport(
        command="verify", input=cfg.echo(), results=results, passed=all(r.passed for r in results)
    )


def run_classify(cfg: RunConfig) -> JsonReport:
    if cfg.max_rank is None or cfg.max_rank < 2:
        raise SelectorError("classify needs --max-rank >= 2")
    rows: List[ClassificationRow] = _gather(all_simple_types(cfg.max_rank), coadjoint.classify_type)
    return JsonReport(
        command="classify", input=cfg.echo(), classification=rows, passed=all(r.consistent for r in rows)
    )


def algebra_info(t: SimpleType) -> TargetReport:
    settings = get_settings()
    g = get_algebra(t)
    summary = algebra_summary(g)
    self_test = run_self_test(
        g, settings.self_test_exhaustive_max_rank, settings.self_test_sampled_triples
    )
    summary.update({
        "self_test_passed": self_test["passed"],
        "self_test_mode": self_test["mode"],
        "self_test_triples": self_test["triples"],
    })
    report = target_header(t)
    report.algebra = summary
    return report


def run_algebra_info(cfg: RunConfig) -> JsonReport:
    results = _gather(resolve_types(cfg), algebra_info)
    return JsonReport(
        command="algebra-info",
        input=cfg.echo(),
        results=results,
        passed=all(r.algebra["self_test_passed"] for r in results),
    )


COMMANDS = {
    "cascade": run_cascade,
    "verify": run_verify,
    "classify": run_classify,
    "algebra-info": run_algebra_info,
}


def run(cfg: RunConfig) -> JsonReport:
    return COMMANDS[cfg.command](cfg)
