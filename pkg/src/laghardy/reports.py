"""Run configurations, scan reports and their JSON/CSV files.

Report files are append-only: writers open with mode "x" and refuse to
replace an existing file. The JSON form is deterministic for a given config
once the ``timing`` block is dropped.
"""
from __future__ import annotations

import csv
import json
import logging
import math
import time
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Sequence

import numpy as np

from . import __version__
from .errors import ConfigError, MissingInputError

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1
FORMATS = ("json", "csv")
SUITES = (
    "orthonormality",
    "kernel-equality",
    "norm-scaling",
    "atom-integral",
    "hardy-atoms",
    "sharpness",
    "trig-series",
    "l1-uniform",
)


@dataclass
class RunConfig:
    command: str
    suite: Optional[str] = None
    alpha: List[float] = field(default_factory=list)
    d: int = 1
    r: List[float] = field(default_factory=list)
    u: List[float] = field(default_factory=list)
    y: List[float] = field(default_factory=list)
    k: List[int] = field(default_factory=list)
    nmax: Optional[int] = None
    K: Optional[int] = None
    t: float = 1.0
    eps: float = 0.25
    p: Optional[float] = None
    tol: Optional[float] = None
    seed: int = 0
    output: Optional[str] = None
    fmt: str = "json"

    def validate(self) -> "RunConfig":
        """Check every numeric range before any computation starts."""
        if self.command == "verify" and self.suite not in SUITES:
            raise ConfigError("suite", f"must be one of {', '.join(SUITES)}, got {self.suite!r}")
        for a in self.alpha:
            if not (math.isfinite(a) and a > -1.0):
                raise ConfigError("alpha", f"every alpha must satisfy alpha > -1, got {a}")
        if self.d not in (1, 2):
            raise ConfigError("d", f"must be 1 or 2, got {self.d}")
        for r in self.r:
            if not 0.0 < r < 1.0:
                raise ConfigError("r", f"every r must lie in (0, 1), got {r}")
        for name in ("u", "y"):
            for v in getattr(self, name):
                if not (math.isfinite(v) and v >= 0.0):
                    raise ConfigError(name, f"grid points must be finite and >= 0, got {v}")
        for k in self.k:
            if k < 0:
                raise ConfigError("k", f"orders must be >= 0, got {k}")
        if self.nmax is not None and self.nmax < 0:
            raise ConfigError("nmax", f"must be >= 0, got {self.nmax}")
        if self.K is not None and self.K < 1:
            raise ConfigError("K", f"must be >= 1, got {self.K}")
        if self.t == 0.0 or not math.isfinite(self.t):
            raise ConfigError("t", f"must be a nonzero finite real, got {self.t}")
        if self.eps < 0.0:
            raise ConfigError("eps", f"must be >= 0, got {self.eps}")
        if self.p is not None and not self.p > 0.0:
            raise ConfigError("p", f"must be > 0, got {self.p}")
        if self.tol is not None and not self.tol > 0.0:
            raise ConfigError("tol", f"must be > 0, got {self.tol}")
        if self.fmt not in FORMATS:
            raise ConfigError("fmt", f"must be one of {FORMATS}, got {self.fmt!r}")
        return self

    def to_dict(self) -> Dict[str, Any]:
        """Config echo for reports; the output path is left out so that reports compare equal."""
        payload = asdict(self)
        payload.pop("output")
        return payload


@dataclass
class Assertion:
    name: str
    passed: bool
    claim: str
    detail: str = ""
    budget: bool = False

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def plain(value: Any) -> Any:
    """Recursively convert numpy scalars, arrays, tuples and fractions to JSON-ready values."""
    if isinstance(value, dict):
        return {str(k): plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [plain(v) for v in value]
    if isinstance(value, np.ndarray):
        return [plain(v) for v in value.tolist()]
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, Path):
        return str(value)
    return value


@dataclass
class ScanReport:
    command: str
    config: Dict[str, Any]
    records: List[Dict[str, Any]] = field(default_factory=list)
    summary: Dict[str, Any] = field(default_factory=dict)
    assertions: List[Assertion] = field(default_factory=list)
    plot: Optional[Dict[str, str]] = None
    schema: int = SCHEMA_VERSION
    version: str = __version__
    timing: Dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(a.passed for a in self.assertions)

    @property
    def budget_exhausted(self) -> bool:
        return any(a.budget for a in self.assertions)

    @property
    def family(self) -> str:
        return self.config.get("suite") or self.command

    def exit_code(self) -> int:
        if self.passed:
            return 0
        return 3 if self.budget_exhausted else 1

    def stamp(self, started: float) -> "ScanReport":
        self.timing = {
            "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
            "wall_clock_s": round(time.perf_counter() - started, 3),
        }
        return self

    def to_dict(self, include_timing: bool = True) -> Dict[str, Any]:
        payload = {
            "schema": self.schema,
            "command": self.command,
            "config": self.config,
            "records": self.records,
            "summary": self.summary,
            "assertions": [a.to_dict() for a in self.assertions],
            "plot": self.plot,
            "version": self.version,
        }
        if include_timing:
            payload["timing"] = self.timing
        return plain(payload)

    def to_json(self, include_timing: bool = True) -> str:
        return json.dumps(self.to_dict(include_timing), sort_keys=True, indent=2, ensure_ascii=False) + "\n"

    @classmethod
    def from_dict(cls, payload: Dict[str, Any]) -> "ScanReport":
        return cls(
            command=payload["command"],
            config=payload.get("config", {}),
            records=payload.get("records", []),
            summary=payload.get("summary", {}),
            assertions=[Assertion(**a) for a in payload.get("assertions", [])],
            plot=payload.get("plot"),
            schema=payload.get("schema", SCHEMA_VERSION),
            version=payload.get("version", __version__),
            timing=payload.get("timing", {}),
        )


def write_json(report: ScanReport, path: Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("x", encoding="utf-8", newline="\n") as fh:
        fh.write(report.to_json())
    logger.info("Wrote JSON report %s", path)
    return path


def _write_rows(path: Path, rows: Sequence[Dict[str, Any]], header: Optional[Sequence[str]] = None) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    header = list(header) if header is not None else sorted({key for row in rows for key in row})
    with path.open("x", encoding="utf-8", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=header, lineterminator="\r\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({key: _cell(row.get(key)) for key in header})
    return path


def _cell(value: Any) -> Any:
    value = plain(value)
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, list):
        return json.dumps(value)
    return "" if value is None else value


def write_csv(report: ScanReport, path: Path) -> Path:
    """Records as an RFC-4180 table; the header is the sorted union of record keys."""
    path = _write_rows(Path(path), report.records)
    logger.info("Wrote CSV report %s", path)
    return path


def write_report(report: ScanReport, path: Path, fmt: str = "json") -> Path:
    if fmt == "csv":
        return write_csv(report, path)
    return write_json(report, path)


def load_report(path: Path) -> ScanReport:
    return ScanReport.from_dict(json.loads(Path(path).read_text(encoding="utf-8")))


def _pivot(rows: Sequence[Dict[str, Any]], x: str, y: str) -> tuple[List[Dict[str, Any]], List[str]]:
    """One row per source and text label, one ``x=value`` column per distinct x holding y."""
    xs = sorted({row[x] for row in rows if x in row and y in row})
    columns = [f"{x}={plain(v)}" for v in xs]
    table: Dict[tuple, Dict[str, Any]] = {}
    for row in rows:
        if x not in row or y not in row:
            continue
        labels = {key: value for key, value in row.items() if isinstance(value, str)}
        table.setdefault(tuple(sorted(labels.items())), dict(labels))[f"{x}={plain(row[x])}"] = row[y]
    keys = sorted({key for labels in table for key, _ in labels})
    return list(table.values()), keys + columns


def merge_reports(paths: Iterable[Path], out_dir: Path) -> List[Path]:
    """One CSV per report family, rows tagged by source file, plus (x, y) plot data per source.

    Families whose reports carry plot axes also get ``{family}_wide.csv``: one
    row per source and label, one column per x value (r for norm-scaling).
    Missing inputs, or an empty input set, raise MissingInputError before any
    file is created.
    """
    paths = [Path(p) for p in paths]
    missing = [str(p) for p in paths if not p.exists()]
    if missing or not paths:
        raise MissingInputError(missing)
    families: Dict[str, List[Dict[str, Any]]] = {}
    axes: Dict[str, Dict[str, str]] = {}
    plots: List[tuple[str, List[Dict[str, Any]]]] = []
    for path in paths:
        report = load_report(path)
        rows = families.setdefault(report.family, [])
        rows.extend({"source": path.stem, **record} for record in report.records)
        if report.plot:
            axes.setdefault(report.family, report.plot)
            x, y = report.plot["x"], report.plot["y"]
            points = [{"x": r[x], "y": r[y]} for r in report.records if x in r and y in r]
            plots.append((f"{report.family}_{path.stem}_plot.csv", points))
    out_dir = Path(out_dir)
    written = [_write_rows(out_dir / f"{family}.csv", rows) for family, rows in sorted(families.items())]
    for family, plot in sorted(axes.items()):
        wide, header = _pivot(families[family], plot["x"], plot["y"])
        written.append(_write_rows(out_dir / f"{family}_wide.csv", wide, header=header))
    written += [_write_rows(out_dir / name, points, header=("x", "y")) for name, points in plots]
    logger.info("Merged %d reports into %d files under %s", len(paths), len(written), out_dir)
    return written


__all__ = [
    "Assertion",
    "FORMATS",
    "RunConfig",
    "SCHEMA_VERSION",
    "SUITES",
    "ScanReport",
    "load_report",
    "merge_reports",
    "plain",
    "write_csv",
    "write_json",
    "write_report",
]
