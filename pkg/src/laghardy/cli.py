from __future__ import annotations

import logging
from datetime import datetime
from pathlib import Path
from typing import List, Optional

import typer
from rich.console import Console
from rich.logging import RichHandler
from rich.table import Table

from .config import LOG_DIR, REPORTS_DIR, ensure_dirs
from .db import fetch_runs, finish_run, initialize, start_run
from .errors import BudgetError, ConfigError, MissingInputError
from .reports import SUITES, RunConfig, ScanReport, merge_reports, write_report
from .suites import evaluate, run_suite

app = typer.Typer(help="laghardy command line interface")
console = Console()

LOG_FORMAT = "%(asctime)s [%(levelname)s] %(name)s: %(message)s"


@app.callback()
def main(verbose: bool = typer.Option(False, "--verbose", "-v", help="Log at DEBUG level")) -> None:
    """Laguerre expansions, the smoothing kernel and Hardy-type inequalities, checked numerically."""
    LOG_DIR.mkdir(parents=True, exist_ok=True)
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.INFO,
        format=LOG_FORMAT,
        handlers=[
            logging.FileHandler(LOG_DIR / "laghardy.log", encoding="utf-8"),
            RichHandler(console=Console(stderr=True), show_path=False),
        ],
        force=True,
    )


def _floats(text: Optional[str], field: str) -> List[float]:
    if not text:
        return []
    try:
        return [float(part) for part in text.split(",") if part.strip()]
    except (ValueError, OverflowError):
        raise ConfigError(field, f"expected comma-separated numbers, got {text!r}")


def _ints(text: Optional[str], field: str) -> List[int]:
    """Comma-separated integers; 'a..b' expands to a, a+1, ..., b."""
    if not text:
        return []
    out: List[int] = []
    try:
        for part in text.split(","):
            part = part.strip()
            if ".." in part:
                lo, hi = part.split("..", 1)
                out.extend(range(int(lo), int(hi) + 1))
            elif part:
                out.append(_int(part, field))
    except (ValueError, OverflowError):
        raise ConfigError(field, f"expected integers or ranges a..b, got {text!r}")
    return out


def _int(text: str, field: str) -> int:
    """Integer that may be written as 1e6."""
    value = float(text)
    if value != int(value):
        raise ConfigError(field, f"expected an integer, got {text!r}")
    return int(value)


def _optional_int(text: Optional[str], field: str) -> Optional[int]:
    if text is None:
        return None
    try:
        return _int(text, field)
    except (ValueError, OverflowError):
        raise ConfigError(field, f"expected an integer, got {text!r}")


def _fail_config(exc: ConfigError) -> None:
    typer.echo(f"Config error: {exc}", err=True)
    raise typer.Exit(code=2)


def _output_path(output: Optional[Path], stem: str, run_id: int, fmt: str) -> Path:
    return output if output is not None else REPORTS_DIR / f"{stem}-{run_id}.{fmt}"


def _finish(run_id: int, report: ScanReport, path: Path) -> int:
    code = report.exit_code()
    status = {0: "passed", 1: "failed", 3: "budget"}[code]
    failed = [a.name for a in report.assertions if not a.passed]
    finish_run(run_id, status=status, exit_code=code, output_path=str(path), message=", ".join(failed) or None)
    return code


def _show_assertions(report: ScanReport) -> None:
    table = Table(title=f"{report.family}: {'PASS' if report.passed else 'FAIL'}")
    table.add_column("assertion")
    table.add_column("result")
    table.add_column("detail")
    for a in report.assertions:
        table.add_row(a.name, "pass" if a.passed else ("budget" if a.budget else "FAIL"), a.detail)
    console.print(table)
    for a in report.assertions:
        if not a.passed:
            typer.echo(f"FAILED {a.name}: {a.claim} ({a.detail})")


def _execute(config: RunConfig, stem: str) -> None:
    ensure_dirs()
    initialize()
    try:
        config.validate()
    except ConfigError as exc:
        _fail_config(exc)
    run_id = start_run(config.command, suite=config.suite, seed=config.seed)
    try:
        report = evaluate(config) if config.command == "eval" else run_suite(config)
    except ConfigError as exc:
        finish_run(run_id, status="config-error", exit_code=2, message=str(exc))
        _fail_config(exc)
    except BudgetError as exc:
        finish_run(run_id, status="budget", exit_code=3, message=str(exc))
        typer.echo(f"Budget exhausted: {exc}", err=True)
        raise typer.Exit(code=3)
    target = _output_path(Path(config.output) if config.output else None, stem, run_id, config.fmt)
    try:
        path = write_report(report, target, config.fmt)
    except FileExistsError:
        finish_run(run_id, status="config-error", exit_code=2, message=f"output exists: {target}")
        _fail_config(ConfigError("output", f"refusing to overwrite {target}"))
    code = _finish(run_id, report, path)
    if report.assertions:
        _show_assertions(report)
    typer.echo(f"{len(report.records)} rows written to {path}")
    raise typer.Exit(code=code)


@app.command()
def init_db() -> None:
    """Initialize the SQLite run ledger."""
    ensure_dirs()
    initialize()
    typer.echo("Database initialized")


@app.command(name="eval")
def eval_cmd(
    alpha: str = typer.Option("0.5", "--alpha", help="Comma-separated alpha values"),
    k: str = typer.Option("0", "--k", help="Orders, e.g. 0..10 or 0,5,9"),
    u: str = typer.Option("1", "--u", help="Comma-separated evaluation points"),
    r: Optional[str] = typer.Option(None, "--r", help="Kernel parameters r"),
    y: Optional[str] = typer.Option(None, "--y", help="Second kernel argument"),
    seed: int = typer.Option(0, "--seed"),
    fmt: str = typer.Option("json", "--format", help="json or csv"),
    output: Optional[Path] = typer.Option(None, "--output", help="Report path (must not exist)"),
) -> None:
    """Tabulate phi_k^alpha, derivatives, envelopes and kernel values."""
    try:
        config = RunConfig(
            command="eval",
            alpha=_floats(alpha, "alpha"),
            k=_ints(k, "k"),
            u=_floats(u, "u"),
            r=_floats(r, "r"),
            y=_floats(y, "y"),
            seed=seed,
            fmt=fmt,
            output=str(output) if output else None,
        )
    except ConfigError as exc:
        _fail_config(exc)
    _execute(config, "eval")


@app.command()
def verify(
    suite: str = typer.Argument(..., help=f"One of: {', '.join(SUITES)}"),
    alpha: Optional[str] = typer.Option(None, "--alpha", help="Comma-separated alpha values"),
    nmax: Optional[str] = typer.Option(None, "--nmax", help="Order or shell cap"),
    r: Optional[str] = typer.Option(None, "--r", help="Comma-separated r values"),
    p: Optional[float] = typer.Option(None, "--p", help="Rescaling exponent for norm-scaling"),
    t: float = typer.Option(1.0, "--t", help="Frequency of the trigonometric series"),
    K: Optional[str] = typer.Option(None, "--K", help="Series cut-off, e.g. 1e6"),
    u: Optional[str] = typer.Option(None, "--u", help="Comma-separated grid points"),
    eps: float = typer.Option(0.25, "--eps"),
    tol: Optional[float] = typer.Option(None, "--tol"),
    seed: int = typer.Option(0, "--seed"),
    fmt: str = typer.Option("json", "--format", help="json or csv"),
    output: Optional[Path] = typer.Option(None, "--output", help="Report path (must not exist)"),
) -> None:
    """Run an acceptance suite; exit 0 iff every assertion passes."""
    try:
        config = RunConfig(
            command="verify",
            suite=suite,
            alpha=_floats(alpha, "alpha"),
            nmax=_optional_int(nmax, "nmax"),
            r=_floats(r, "r"),
            p=p,
            t=t,
            K=_optional_int(K, "K"),
            u=_floats(u, "u"),
            eps=eps,
            tol=tol,
            seed=seed,
            fmt=fmt,
            output=str(output) if output else None,
        )
    except ConfigError as exc:
        _fail_config(exc)
    _execute(config, suite)


@app.command()
def report(
    suite: Optional[str] = typer.Option(None, "--suite", help="Merge every recorded JSON run of this suite"),
    inputs: Optional[List[Path]] = typer.Option(None, "--input", help="Report files to merge"),
    out: Optional[Path] = typer.Option(None, "--out", help="Output directory"),
) -> None:
    """Merge scan reports into one CSV per family plus plot data."""
    ensure_dirs()
    initialize()
    paths = list(inputs or [])
    if suite is not None:
        paths += [Path(run["output_path"]) for run in fetch_runs(suite) if (run["output_path"] or "").endswith(".json")]
    timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
    out_dir = out or REPORTS_DIR / "merged" / f"{suite or 'inputs'}_{timestamp}"
    try:
        written = merge_reports(paths, out_dir)
    except MissingInputError as exc:
        typer.echo(f"Error: {exc}", err=True)
        raise typer.Exit(code=2)
    for path in written:
        typer.echo(f"Wrote {path}")


if __name__ == "__main__":
    app()
