"""Report assembly: orchestrate the five analyses over a text, render
summary tables, and emit plot-ready point files."""
from __future__ import annotations

import json
import os
from dataclasses import asdict, dataclass, field
from typing import Optional, Sequence, Union

import numpy as np

from . import scaling
from .corpus import TokenSequence
from .errors import NotApplicable, ScalecheckError
from .powerlaw import LogLogPoints, PowerLawFit
from .scaling import (
    CORRELATED,
    EbelingResult,
    HeapsResult,
    LrcResult,
    TaylorResult,
    ZipfResult,
    ebeling_analysis,
    heaps_analysis,
    lrc_analysis,
    taylor_analysis,
    zipf_analysis,
)

REPORT_FORMAT = "scalecheck-report"
REPORT_VERSION = 1


def fmt6(x: float) -> str:
    """Fixed 6-significant-digit rendering used for every numeric output."""
    return f"{x:.6g}"


def _round6(x: Optional[float]) -> Optional[float]:
    return None if x is None else float(fmt6(x))


class _NotApplicableType:
    def __repr__(self):
        return "NotApplicable"


NOT_APPLICABLE = _NotApplicableType()


@dataclass(frozen=True)
class AnalysisFailure:
    """A cell-level error: the analysis raised instead of producing a result."""

    error: str
    message: str


@dataclass(frozen=True)
class AnalyzeConfig:
    taylor_l: int = scaling.DEFAULT_TAYLOR_SEGMENT
    lrc_q: int = scaling.DEFAULT_RARE_Q
    zipf_max_rank: int = 1000
    zipf_yes_epsilon: float = 0.5
    log_base: float = 10.0
    taylor_flag_threshold: float = 0.52
    ebeling_flag_threshold: float = 1.05


Cell = Union[object, _NotApplicableType, AnalysisFailure]


@dataclass
class ModelReport:
    """One evaluated text: optional perplexity plus the five analysis cells."""

    model_name: str
    perplexity: Optional[float]
    zipf: Cell
    heaps: Cell
    ebeling: Cell
    taylor: Cell
    lrc: Cell
    metadata: dict = field(default_factory=dict)

    def cells(self) -> dict[str, Cell]:
        return {
            "zipf": self.zipf,
            "heaps": self.heaps,
            "ebeling": self.ebeling,
            "taylor": self.taylor,
            "lrc": self.lrc,
        }

    @property
    def has_failures(self) -> bool:
        return any(isinstance(c, AnalysisFailure) for c in self.cells().values())


def _run(fn, *args, **kwargs) -> Cell:
    try:
        return fn(*args, **kwargs)
    except NotApplicable:
        return NOT_APPLICABLE
    except ScalecheckError as exc:
        return AnalysisFailure(type(exc).__name__, str(exc))


def analyze_all(
    seq: TokenSequence,
    char_seq: Optional[TokenSequence] = None,
    config: Optional[AnalyzeConfig] = None,
    model_name: str = "text",
    perplexity: Optional[float] = None,
    extra_metadata: Optional[dict] = None,
) -> ModelReport:
    """Run the five analyses; per-analysis errors become failed cells, and the
    character-level variance analysis is NotApplicable without a char stream."""
    cfg = config or AnalyzeConfig()
    zipf = _run(
        zipf_analysis, seq,
        max_rank=cfg.zipf_max_rank, yes_epsilon=cfg.zipf_yes_epsilon, log_base=cfg.log_base,
    )
    heaps = _run(heaps_analysis, seq, log_base=cfg.log_base)
    if char_seq is None:
        ebeling: Cell = NOT_APPLICABLE
    else:
        ebeling = _run(ebeling_analysis, char_seq, log_base=cfg.log_base)
    taylor = _run(taylor_analysis, seq, cfg.taylor_l, log_base=cfg.log_base)
    lrc = _run(lrc_analysis, seq, cfg.lrc_q, log_base=cfg.log_base)

    metadata = {
        "format": REPORT_FORMAT,
        "version": REPORT_VERSION,
        "token_count": len(seq),
        "char_count": None if char_seq is None else len(char_seq),
        "config": asdict(cfg),
        "lrc_series": "return_intervals",
    }
    if extra_metadata:
        metadata.update(extra_metadata)
    return ModelReport(model_name, perplexity, zipf, heaps, ebeling, taylor, lrc, metadata)


# -- JSON report files ----------------------------------------------------


def _fit_to_dict(fit: Optional[PowerLawFit]) -> Optional[dict]:
    if fit is None:
        return None
    return {
        "exponent": _round6(fit.exponent),
        "intercept": _round6(fit.intercept),
        "epsilon": _round6(fit.epsilon),
        "n_points": fit.n_points,
        "log_base": fit.log_base,
    }


def _fit_from_dict(d: Optional[dict]) -> Optional[PowerLawFit]:
    if d is None:
        return None
    return PowerLawFit(d["exponent"], d["intercept"], d["epsilon"], d["n_points"], d["log_base"])


def _points_to_list(points: LogLogPoints) -> list[list[float]]:
    return [[float(fmt6(z)), float(fmt6(y))] for z, y in zip(points.z, points.y)]


def _points_from_list(rows) -> LogLogPoints:
    return LogLogPoints(
        np.array([r[0] for r in rows], dtype=np.float64),
        np.array([r[1] for r in rows], dtype=np.float64),
    )


_EMPTY = LogLogPoints(np.empty(0), np.empty(0))


def _cell_to_dict(name: str, cell: Cell, cfg: dict) -> dict:
    if cell is NOT_APPLICABLE:
        return {"status": "not_applicable"}
    if isinstance(cell, AnalysisFailure):
        return {"status": "failed", "error": cell.error, "message": cell.message}
    d: dict = {"status": "ok"}
    if isinstance(cell, ZipfResult):
        d["qualitative"] = cell.qualitative
        d["alpha"] = _round6(cell.alpha)
        d["fit"] = _fit_to_dict(cell.alpha_fit)
        d["n_unigram_points"] = len(cell.unigram_points)
        d["n_bigram_points"] = len(cell.bigram_points)
    elif isinstance(cell, HeapsResult):
        d["fit"] = _fit_to_dict(cell.fit)
        d["points"] = _points_to_list(cell.points)
    elif isinstance(cell, EbelingResult):
        d["fit"] = _fit_to_dict(cell.fit)
        d["points"] = _points_to_list(cell.points)
        d["excluded_zero_variance"] = cell.excluded_zero_variance
        d["long_memory"] = bool(cell.fit.exponent >= cfg.get("ebeling_flag_threshold", 1.05))
    elif isinstance(cell, TaylorResult):
        d["segment_size"] = cell.segment_size
        d["fit"] = _fit_to_dict(cell.fit)
        d["n_points"] = len(cell.points)
        d["excluded_zero_sigma"] = cell.excluded_zero_sigma
        d["long_memory"] = bool(cell.fit.exponent >= cfg.get("taylor_flag_threshold", 0.52))
    elif isinstance(cell, LrcResult):
        d["q"] = cell.q
        d["classification"] = cell.classification
        d["xi"] = _round6(cell.xi)
        d["fit"] = _fit_to_dict(cell.fit)
        d["n_intervals"] = int(cell.interval_series.size)
        d["acf"] = [[s, float(fmt6(c))] for s, c in cell.acf]
    else:
        raise TypeError(f"unknown cell type for {name}: {type(cell)!r}")
    return d


def _cell_from_dict(name: str, d: dict) -> Cell:
    status = d["status"]
    if status == "not_applicable":
        return NOT_APPLICABLE
    if status == "failed":
        return AnalysisFailure(d["error"], d["message"])
    if name == "zipf":
        return ZipfResult(_EMPTY, _EMPTY, d["qualitative"], _fit_from_dict(d["fit"]))
    if name == "heaps":
        return HeapsResult(_points_from_list(d["points"]), _fit_from_dict(d["fit"]))
    if name == "ebeling":
        return EbelingResult(
            _points_from_list(d["points"]), _fit_from_dict(d["fit"]),
            True, d["excluded_zero_variance"],
        )
    if name == "taylor":
        return TaylorResult(
            d["segment_size"], _EMPTY, _fit_from_dict(d["fit"]), d["excluded_zero_sigma"]
        )
    if name == "lrc":
        acf = tuple((int(s), float(c)) for s, c in d["acf"])
        return LrcResult(
            d["q"], np.empty(0, dtype=np.int64), acf, d["classification"], _fit_from_dict(d["fit"])
        )
    raise ValueError(f"unknown analysis name: {name}")


def report_to_json(report: ModelReport) -> str:
    """Serialize a report; large point clouds live in the plot files, the JSON
    keeps every summary quantity (fits, judgments, the interval ACF)."""
    cfg = report.metadata.get("config", {})
    doc = {
        "format": REPORT_FORMAT,
        "version": REPORT_VERSION,
        "model_name": report.model_name,
        "perplexity": _round6(report.perplexity),
        "analyses": {
            name: _cell_to_dict(name, cell, cfg) for name, cell in report.cells().items()
        },
        "metadata": report.metadata,
    }
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def report_from_json(text: str) -> ModelReport:
    doc = json.loads(text)
    if doc.get("format") != REPORT_FORMAT:
        raise ValueError("not a scalecheck report file")
    if doc.get("version") != REPORT_VERSION:
        raise ValueError(f"unsupported report version {doc.get('version')}")
    cells = {name: _cell_from_dict(name, d) for name, d in doc["analyses"].items()}
    return ModelReport(
        doc["model_name"],
        doc["perplexity"],
        cells["zipf"],
        cells["heaps"],
        cells["ebeling"],
        cells["taylor"],
        cells["lrc"],
        doc.get("metadata", {}),
    )


# -- summary table ---------------------------------------------------------

SUMMARY_COLUMNS = (
    "model", "perplexity", "zipf", "heaps", "ebeling", "taylor", "taylor_flag", "lrc"
)


def _fit_cell(cell: Cell) -> str:
    if cell is NOT_APPLICABLE:
        return "-"
    if isinstance(cell, AnalysisFailure):
        return "error"
    fit = cell.fit
    if fit is None:
        return "-"
    return f"{fmt6(fit.exponent)} ({fmt6(fit.epsilon)})"


def _row(report: ModelReport, taylor_flag_threshold: float) -> dict[str, str]:
    zipf = report.zipf
    if zipf is NOT_APPLICABLE:
        zipf_cell = "-"
    elif isinstance(zipf, AnalysisFailure):
        zipf_cell = "error"
    else:
        zipf_cell = zipf.qualitative

    taylor = report.taylor
    flag = ""
    if isinstance(taylor, TaylorResult) and taylor.fit.exponent >= taylor_flag_threshold:
        flag = "*"

    lrc = report.lrc
    if lrc is NOT_APPLICABLE:
        lrc_cell = "-"
    elif isinstance(lrc, AnalysisFailure):
        lrc_cell = "error"
    elif lrc.classification == CORRELATED:
        lrc_cell = (
            f"{fmt6(lrc.xi)} ({fmt6(lrc.fit.epsilon)})" if lrc.fit is not None else CORRELATED
        )
    else:
        lrc_cell = lrc.classification

    return {
        "model": report.model_name,
        "perplexity": "-" if report.perplexity is None else fmt6(report.perplexity),
        "zipf": zipf_cell,
        "heaps": _fit_cell(report.heaps),
        "ebeling": _fit_cell(report.ebeling),
        "taylor": _fit_cell(report.taylor),
        "taylor_flag": flag,
        "lrc": lrc_cell,
    }


def summary_table(
    reports: Sequence[ModelReport],
    format: str = "tsv",
    taylor_flag_threshold: Optional[float] = None,
) -> str:
    """Render one row per report, in input order, as TSV or JSON.

    The taylor_flag column marks exponents at or above the flag threshold
    (each report's own configured threshold unless overridden here).
    """
    if not reports:
        raise ValueError("need at least one report")
    if format not in ("tsv", "json"):
        raise ValueError(f"unknown format: {format!r}")
    rows = []
    for r in reports:
        thr = taylor_flag_threshold
        if thr is None:
            thr = r.metadata.get("config", {}).get("taylor_flag_threshold", 0.52)
        rows.append(_row(r, thr))
    if format == "tsv":
        lines = ["\t".join(SUMMARY_COLUMNS)]
        lines += ["\t".join(row[c] for c in SUMMARY_COLUMNS) for row in rows]
        return "\n".join(lines) + "\n"
    doc = {
        "format": "scalecheck-summary",
        "version": REPORT_VERSION,
        "columns": list(SUMMARY_COLUMNS),
        "rows": rows,
    }
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


# -- plot data --------------------------------------------------------------


def _write_points(path: str, header: str, xs, ys):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(header + "\n")
        for x, y in zip(xs, ys):
            fh.write(f"{fmt6(x)}\t{fmt6(y)}\n")


def _fit_header(name: str, fit: Optional[PowerLawFit], n: int) -> str:
    if fit is None:
        return f"# {name} exponent=NA epsilon=NA points={n}"
    return f"# {name} exponent={fmt6(fit.exponent)} epsilon={fmt6(fit.epsilon)} points={n}"


def emit_plot_data(result, destination: str) -> list[str]:
    """Write two-column (x TAB y) files for a result's point sets.

    Single-set results go to `destination` itself; the rank-frequency result
    writes `<stem>_unigram<ext>` and `<stem>_bigram<ext>`. Returns the paths.
    """
    if isinstance(result, ZipfResult):
        stem, ext = os.path.splitext(destination)
        paths = [f"{stem}_unigram{ext}", f"{stem}_bigram{ext}"]
        for path, pts, name in zip(
            paths,
            (result.unigram_points, result.bigram_points),
            ("zipf-unigram", "zipf-bigram"),
        ):
            _write_points(path, _fit_header(name, result.alpha_fit, len(pts)), pts.z, pts.y)
        return paths
    if isinstance(result, (HeapsResult, EbelingResult, TaylorResult)):
        name = {
            HeapsResult: "heaps",
            EbelingResult: "ebeling",
            TaylorResult: "taylor",
        }[type(result)]
        header = _fit_header(name, result.fit, len(result.points))
        _write_points(destination, header, result.points.z, result.points.y)
        return [destination]
    if isinstance(result, LrcResult):
        lags = [s for s, _ in result.acf]
        vals = [c for _, c in result.acf]
        header = _fit_header("lrc-acf", result.fit, len(result.acf))
        _write_points(destination, header, lags, vals)
        return [destination]
    raise TypeError(f"no plot data defined for {type(result)!r}")
