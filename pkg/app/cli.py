import logging
import sys
from pathlib import Path
from typing import List, Optional

import typer
from pydantic import ValidationError

from app import config as app_config
from app.errors import BorelCoadjointError, InvalidTypeError, SelectorError
from app.models import JsonReport, RunConfig, TargetReport
from app.rootsys import SimpleType
from app.services import run
from app.utils import format_root, render_json, render_table, yes_no

logger = logging.getLogger(__name__)

app = typer.Typer(
    add_completion=False,
    no_args_is_help=True,
    help="Kostant cascade, Chevalley bases and coadjoint orbits of Borel subalgebras.",
)

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

TYPE_OPTION = typer.Option(None, "--type", "-t", help="Family letter (A-G) or a full label such as E8.")
RANK_OPTION = typer.Option(None, "--rank", "-r", help="Rank of the simple type.")
FORMAT_OPTION = typer.Option("text", "--format", "-f", help="text or json.")
TIMINGS_OPTION = typer.Option(False, "--timings", help="Add per-suite seconds (output is no longer reproducible).")


@app.callback()
def main(
    verbose: int = typer.Option(0, "--verbose", "-v", count=True, help="-v for INFO, -vv for DEBUG."),
    config: Optional[Path] = typer.Option(
        None, "--config", envvar=app_config.CONFIG_ENV, help="TOML configuration file."
    ),
):
    level = logging.WARNING if verbose == 0 else logging.INFO if verbose == 1 else logging.DEBUG
    logging.basicConfig(
        level=level, stream=sys.stderr, force=True,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    app_config.reload_config(str(config) if config else None)


def _usage_error(message: str) -> typer.Exit:
    typer.echo(f"Error: {message}", err=True)
    return typer.Exit(EXIT_USAGE)


def _split_type(family: Optional[str], rank: Optional[int]):
    """Accept ``--type A --rank 3`` as well as ``--type A3``"""
    if family and rank is None and len(family) > 1:
        t = SimpleType.parse(family)
        return t.family, t.rank
    return (family.upper() if family else None), rank


def _build_config(command: str, family: Optional[str] = None, rank: Optional[int] = None, **kwargs) -> RunConfig:
    settings = app_config.get_settings()
    values = {k: v for k, v in kwargs.items() if v is not None}
    values.setdefault("samples", settings.default_samples)
    values.setdefault("seed", settings.default_seed)
    values.setdefault("oracle_rank_limit", settings.oracle_rank_limit)
    try:
        family, rank = _split_type(family, rank)
        if family is not None and rank is not None:
            SimpleType(family, rank)
        return RunConfig(command=command, family=family, rank=rank, **values)
    except (InvalidTypeError, ValidationError) as e:
        raise _usage_error(str(e))


def _execute(cfg: RunConfig, render_text) -> None:
    try:
        report = run(cfg)
    except (InvalidTypeError, SelectorError) as e:
        raise _usage_error(str(e))
    except BorelCoadjointError as e:
        logger.error("%s", e)
        typer.echo(f"Error: {e}", err=True)
        raise typer.Exit(EXIT_FAIL)
    typer.echo(render_json(report) if cfg.format == "json" else render_text(report))
    raise typer.Exit(EXIT_PASS if report.passed else EXIT_FAIL)


# -- text renderers ------------------------------------------------------------

def _target_line(r: TargetReport) -> str:
    return (f"{r.family}{r.rank}: ell={r.ell} m={r.m} -1 in W: {yes_no(r.minus_one_in_weyl)} "
            f"open-orbit: {yes_no(r.open_coadjoint_orbit)}")


def render_cascade_text(report: JsonReport) -> str:
    blocks = []
    for r in report.results:
        rows = [
            (k, format_root(e.coords), "-" if e.parent is None else e.parent, e.depth)
            for k, e in enumerate(r.cascade)
        ]
        blocks.append(_target_line(r) + "\n" + render_table(("node", "root", "parent", "depth"), rows))
    return "\n\n".join(blocks)


def _format_dims(dims) -> str:
    return " ".join(f"{k}={v}" for k, v in sorted(dims.items()))


def render_verify_text(report: JsonReport) -> str:
    blocks = []
    for r in report.results:
        timed = any(s.seconds is not None for s in r.suites)
        headers = ("id", "result", "dims") + (("seconds",) if timed else ())
        rows = []
        for s in r.suites:
            result = "FAIL" if not s.passed else "skip" if s.skipped else "pass"
            row = (s.id, result, _format_dims(s.dims) + (f" [{s.note}]" if s.note else ""))
            rows.append(row + ((s.seconds,) if timed else ()))
        blocks.append(_target_line(r) + "\n" + render_table(headers, rows))
    blocks.append(f"overall: {'PASS' if report.passed else 'FAIL'}")
    return "\n\n".join(blocks)


def render_classify_text(report: JsonReport) -> str:
    headers = ("type", "ell", "m", "-1 in W", "open orbit", "dim b", "codim n*", "codim b*", "consistent")
    rows = [
        (f"{c.family}{c.rank}", c.ell, c.m, yes_no(c.minus_one_in_weyl), yes_no(c.open_coadjoint_orbit),
         c.dim_b, c.n_orbit_codim, c.b_orbit_codim, yes_no(c.consistent))
        for c in report.classification
    ]
    footnote = "C2 is isomorphic to B2 and is listed once, as B2."
    return render_table(headers, rows) + "\n\n" + footnote


def render_algebra_text(report: JsonReport) -> str:
    blocks = []
    for r in report.results:
        rows = []
        for k, v in sorted(r.algebra.items()):
            if isinstance(v, list):
                v = format_root(v)
            elif isinstance(v, bool):
                v = yes_no(v)
            rows.append((k, v))
        blocks.append(_target_line(r) + "\n" + render_table(("quantity", "value"), rows))
    return "\n\n".join(blocks)


# -- commands --------------------------------------------------------------------

@app.command()
def cascade(
    family: Optional[str] = TYPE_OPTION,
    rank: Optional[int] = RANK_OPTION,
    all_types: bool = typer.Option(False, "--all-types", help="Every simple type up to --max-rank."),
    max_rank: Optional[int] = typer.Option(None, "--max-rank"),
    format: str = FORMAT_OPTION,
):
    """Print the cascade of strongly orthogonal roots with its tree, m and ell."""
    cfg = _build_config("cascade", family, rank, all_types=all_types, max_rank=max_rank, format=format)
    _execute(cfg, render_cascade_text)


@app.command()
def verify(
    family: Optional[str] = TYPE_OPTION,
    rank: Optional[int] = RANK_OPTION,
    suite: Optional[List[str]] = typer.Option(
        None, "--suite", "-s",
        help="cascade, w0, isotropy, codim, shift, fixed, transitivity or all; repeatable.",
    ),
    samples: Optional[int] = typer.Option(None, "--samples", "-n", help="Random points per sampled check."),
    seed: Optional[int] = typer.Option(None, "--seed", envvar=app_config.SEED_ENV),
    oracle_rank_limit: Optional[int] = typer.Option(None, "--oracle-rank-limit"),
    all_types: bool = typer.Option(False, "--all-types", help="Every simple type up to --max-rank."),
    max_rank: Optional[int] = typer.Option(None, "--max-rank"),
    format: str = FORMAT_OPTION,
    timings: bool = TIMINGS_OPTION,
):
    """Run verifier suites; exit 0 iff every suite passes."""
    cfg = _build_config(
        "verify", family, rank,
        suites=suite or ["all"], samples=samples, seed=seed, oracle_rank_limit=oracle_rank_limit,
        all_types=all_types, max_rank=max_rank, format=format, timings=timings,
    )
    _execute(cfg, render_verify_text)


@app.command()
def classify(
    max_rank: int = typer.Option(..., "--max-rank", help="Largest rank to tabulate (>= 2)."),
    format: str = FORMAT_OPTION,
):
    """Tabulate ell, m, -1 in W and the open coadjoint orbit for every simple type."""
    if max_rank < 2:
        raise _usage_error("--max-rank must be >= 2")
    cfg = _build_config("classify", max_rank=max_rank, format=format)
    _execute(cfg, render_classify_text)


@app.command("algebra-info")
def algebra_info(
    family: Optional[str] = TYPE_OPTION,
    rank: Optional[int] = RANK_OPTION,
    format: str = FORMAT_OPTION,
):
    """Dimensions, highest root, largest structure constant and self-test outcome."""
    cfg = _build_config("algebra-info", family, rank, format=format)
    _execute(cfg, render_algebra_text)
