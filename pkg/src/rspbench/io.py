"""File formats: ensemble JSON specs, experiment CSV tables, JSON reports.

Ensemble files are JSON objects::

    {"dim": 2,
     "states": [[[1.0, 0.0], [0.0, 0.0]], ...],   # amplitudes as [re, im]
     "probabilities": [0.25, 0.25, 0.25, 0.25]}   # optional, default uniform

Experiment tables are CSV with the exact header ``label,trials,hits``.

Reports are JSON with all reals rounded to 9 significant digits, a tool
version and optional input digests, and can be re-parsed losslessly.
"""

from __future__ import annotations

import csv
import hashlib
import json
import math
from pathlib import Path

from . import __version__
from .benchmark import Partitioning, TargetEnsemble, ThresholdResult
from .errors import FormatError
from .linalg import PureState
from .simulate import SimulationReport
from .stats import ExperimentRecord, MetaResult


def parse_ensemble(path) -> TargetEnsemble:
    """Read and validate an ensemble JSON spec."""
    path = Path(path)
    try:
        with path.open() as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as e:
        raise FormatError(f"invalid JSON: {e.msg}", path=str(path), line=e.lineno) from e
    if not isinstance(doc, dict):
        raise FormatError("top level must be a JSON object", path=str(path))
    for key in ("dim", "states"):
        if key not in doc:
            raise FormatError(f"missing required field '{key}'", path=str(path))
    dim = doc["dim"]
    if not isinstance(dim, int) or dim < 2:
        raise FormatError(f"'dim' must be an integer >= 2, got {dim!r}", path=str(path))
    states = []
    for i, raw in enumerate(doc["states"]):
        if len(raw) != dim:
            raise FormatError(
                f"state {i}: expected {dim} amplitudes, got {len(raw)}", path=str(path))
        try:
            amps = [complex(float(re), float(im)) for re, im in raw]
        except (TypeError, ValueError) as e:
            raise FormatError(f"state {i}: amplitudes must be [re, im] pairs", path=str(path)) from e
        try:
            states.append(PureState(amps))
        except Exception as e:
            raise FormatError(f"state {i}: {e}", path=str(path)) from e
    probs = doc.get("probabilities")
    try:
        return TargetEnsemble(states, probs)
    except Exception as e:
        raise FormatError(str(e), path=str(path)) from e


def write_ensemble(ensemble: TargetEnsemble, path) -> None:
    doc = {
        "dim": ensemble.dim,
        "states": [[[a.real, a.imag] for a in s.amplitudes] for s in ensemble.states],
        "probabilities": list(ensemble.probabilities),
    }
    Path(path).write_text(json.dumps(doc, indent=2) + "\n")


def parse_experiments(path) -> list[ExperimentRecord]:
    """Read a CSV experiment table with header ``label,trials,hits``."""
    path = Path(path)
    records = []
    with path.open(newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip().lower() for h in header] != ["label", "trials", "hits"]:
            raise FormatError("expected header 'label,trials,hits'", path=str(path), line=1)
        for lineno, row in enumerate(reader, start=2):
            if not row or (len(row) == 1 and not row[0].strip()):
                continue
            if len(row) != 3:
                raise FormatError(f"expected 3 fields, got {len(row)}", path=str(path), line=lineno)
            label = row[0].strip()
            try:
                trials = int(row[1])
                hits = int(row[2])
            except ValueError as e:
                raise FormatError(f"trials/hits must be integers, got {row[1]!r}, {row[2]!r}",
                                  path=str(path), line=lineno) from e
            try:
                records.append(ExperimentRecord(label=label, trials=trials, hits=hits))
            except ValueError as e:
                raise FormatError(str(e), path=str(path), line=lineno) from e
    if not records:
        raise FormatError("table contains no data rows", path=str(path))
    return records


def write_experiments(records: list[ExperimentRecord], path) -> None:
    with Path(path).open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["label", "trials", "hits"])
        for r in records:
            writer.writerow([r.label, r.trials, r.hits])


def _round9(x: float) -> float:
    """Round to 9 significant digits (covers the headline report values)."""
    if x == 0 or not math.isfinite(x):
        return x
    return float(f"{x:.9g}")


def result_to_dict(result) -> dict:
    """Serializable view of a result object, reals at 9 significant digits."""
    if isinstance(result, ThresholdResult):
        body = {
            "cbits": result.cbits,
            "exact": None if result.exact is None else _round9(result.exact),
            "exact_partition": (None if result.exact_partition is None
                                else [list(b) for b in result.exact_partition.blocks]),
            "upper_bound": _round9(result.upper_bound),
            "per_size_max": {str(s): _round9(v) for s, v in sorted(result.per_size_max.items())},
            "best_composition": list(result.best_composition),
        }
        kind = "threshold"
    elif isinstance(result, MetaResult):
        body = {
            "pooled_rate": _round9(result.pooled_rate),
            "se_rate": _round9(result.se_rate),
            "fidelity": _round9(result.fidelity),
            "benchmark": _round9(result.benchmark),
            "df_paper": _round9(result.df_paper),
            "df_delta": _round9(result.df_delta),
            "z_paper": _round9(result.z_paper),
            "z_delta": _round9(result.z_delta),
            "total_trials": result.total_trials,
            "total_hits": result.total_hits,
            "n_records": result.n_records,
        }
        kind = "meta"
    elif isinstance(result, SimulationReport):
        body = {
            "trials": result.trials,
            "mean_fidelity": _round9(result.mean_fidelity),
            "std_error": _round9(result.std_error),
            "seed": result.seed,
            "strategy_summary": result.strategy_summary,
        }
        kind = "simulation"
    else:
        raise TypeError(f"cannot serialize {type(result).__name__}")
    return {"type": kind, **body}


def emit_report(result, path, input_digests: dict[str, str] | None = None) -> None:
    """Write a JSON report for a threshold, meta or simulation result."""
    doc = result_to_dict(result)
    doc["tool_version"] = __version__
    if input_digests:
        doc["inputs"] = dict(input_digests)
    Path(path).write_text(json.dumps(doc, indent=2, allow_nan=True) + "\n")


def parse_report(path):
    """Re-parse an emitted report into its result object."""
    path = Path(path)
    try:
        doc = json.loads(path.read_text())
    except json.JSONDecodeError as e:
        raise FormatError(f"invalid JSON: {e.msg}", path=str(path), line=e.lineno) from e
    kind = doc.get("type")
    if kind == "threshold":
        return ThresholdResult(
            cbits=doc["cbits"],
            exact=doc["exact"],
            exact_partition=(None if doc["exact_partition"] is None else
                             Partitioning(sum(len(b) for b in doc["exact_partition"]),
                                          doc["exact_partition"])),
            upper_bound=doc["upper_bound"],
            per_size_max={int(s): v for s, v in doc["per_size_max"].items()},
            best_composition=tuple(doc["best_composition"]),
        )
    if kind == "meta":
        return MetaResult(**{k: doc[k] for k in (
            "pooled_rate", "se_rate", "fidelity", "benchmark", "df_paper",
            "df_delta", "z_paper", "z_delta", "total_trials", "total_hits", "n_records")})
    if kind == "simulation":
        return SimulationReport(**{k: doc[k] for k in (
            "trials", "mean_fidelity", "std_error", "seed", "strategy_summary")})
    raise FormatError(f"unknown report type {kind!r}", path=str(path))


def file_digest(path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()
