"""Command-line client for the rspbench service.

The CLI is a thin HTTP client over the FastAPI app: by default it talks to
an in-process instance (no server needed); with ``--url`` it targets a
running ``uvicorn rspbench.service:app`` instead. File parsing and report
writing happen on the client side.

Exit codes: 0 success, 2 validation error, 3 combinatorial guard, 4 I/O.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import CombinatorialBlowupError, FormatError, RspBenchError
from . import io as rio
from .schemas import (
    EnsembleModel, FidelityRequest, MetaRequest, RecordModel,
    SimulateClassicalRequest, SimulateRspmiRequest, ThresholdRequest,
)

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_GUARD = 3
EXIT_IO = 4


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _client(url: str | None):
    if url:
        import httpx
        return httpx.Client(base_url=url)
    import warnings
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        from fastapi.testclient import TestClient
    from .service import app
    return TestClient(app)


def _post(args, path: str, payload: dict) -> dict:
    with _client(args.url) as client:
        resp = client.post(path, json=payload)
    if resp.status_code == 200:
        return resp.json()
    detail = {}
    try:
        detail = resp.json().get("detail", {})
    except Exception:
        pass
    kind = detail.get("kind", "validation") if isinstance(detail, dict) else "validation"
    message = detail.get("message", resp.text) if isinstance(detail, dict) else str(detail)
    raise CliError(message, EXIT_GUARD if kind == "guard" else EXIT_VALIDATION)


def _scale_rate(value: float | None, unit: str) -> float | None:
    if value is None:
        return None
    return value / 100.0 if unit == "percent" else value


def _load_ensemble_model(path) -> EnsembleModel:
    ensemble = rio.parse_ensemble(path)
    return EnsembleModel.from_domain(ensemble)


def _print(args, text: str) -> None:
    if not args.quiet:
        print(text)


def cmd_threshold(args) -> int:
    model = _load_ensemble_model(args.ensemble)
    req = ThresholdRequest(ensemble=model, cbits=args.cbits, method=args.method,
                           jobs=args.jobs)
    doc = _post(args, "/threshold", req.model_dump())
    result = _threshold_result(doc)
    if doc.get("exact") is not None:
        _print(args, f"exact threshold: {doc['exact']:.9g}")
        _print(args, f"optimal partition: {doc['exact_partition']}")
    _print(args, f"upper bound:     {doc['upper_bound']:.9g}")
    if args.out:
        rio.emit_report(result, args.out,
                        input_digests={"ensemble": rio.file_digest(args.ensemble)})
    return EXIT_OK


def _threshold_result(doc: dict):
    from .benchmark import Partitioning, ThresholdResult
    partition = None
    if doc.get("exact_partition"):
        n = sum(len(b) for b in doc["exact_partition"])
        partition = Partitioning(n, doc["exact_partition"])
    return ThresholdResult(
        cbits=doc["cbits"],
        exact=doc.get("exact"),
        exact_partition=partition,
        upper_bound=doc["upper_bound"],
        per_size_max={int(k): v for k, v in doc["per_size_max"].items()},
        best_composition=tuple(doc.get("best_composition", ())),
    )


def cmd_fidelity(args) -> int:
    req = FidelityRequest(
        p_theory=_scale_rate(args.p_theory, args.rate_unit),
        chance=_scale_rate(args.chance, args.rate_unit),
        q=_scale_rate(args.q, args.rate_unit),
        se=args.se,
    )
    doc = _post(args, "/fidelity", req.model_dump())
    _print(args, f"benchmark: {doc['benchmark']:.9g}")
    for key in ("fidelity", "df_paper", "df_delta", "z_paper", "z_delta"):
        if doc.get(key) is not None:
            _print(args, f"{key}: {doc[key]:.9g}")
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(doc, fh, indent=2)
            fh.write("\n")
    return EXIT_OK


def cmd_meta(args) -> int:
    records = rio.parse_experiments(args.input)
    req = MetaRequest(
        records=[RecordModel.from_domain(r) for r in records],
        p_theory=_scale_rate(args.p_theory, args.rate_unit),
        chance=_scale_rate(args.chance, args.rate_unit),
    )
    doc = _post(args, "/meta", req.model_dump())
    from .schemas import MetaResponse
    result = MetaResponse(**doc).to_domain()
    _print(args, f"records: {result.n_records}  trials: {result.total_trials}  "
                 f"hits: {result.total_hits}")
    _print(args, f"pooled rate: {result.pooled_rate:.9g} +/- {result.se_rate:.9g}")
    _print(args, f"fidelity:    {result.fidelity:.9g}")
    _print(args, f"benchmark:   {result.benchmark:.9g}")
    _print(args, f"df_paper: {result.df_paper:.9g}  z_paper: {result.z_paper:.9g}")
    _print(args, f"df_delta: {result.df_delta:.9g}  z_delta: {result.z_delta:.9g}")
    if args.out:
        rio.emit_report(result, args.out,
                        input_digests={"experiments": rio.file_digest(args.input)})
    return EXIT_OK


def cmd_simulate(args) -> int:
    if args.mode == "classical":
        model = _load_ensemble_model(args.ensemble)
        req = SimulateClassicalRequest(ensemble=model, cbits=args.cbits,
                                       trials=args.trials, seed=args.seed)
        doc = _post(args, "/simulate/classical", req.model_dump())
        _print(args, f"mean fidelity: {doc['mean_fidelity']:.9g} "
                     f"+/- {doc['std_error']:.9g} ({doc['trials']} trials)")
        _print(args, f"exact threshold: {doc['threshold']:.9g}")
        _print(args, doc["strategy_summary"])
        if args.out:
            from .schemas import SimulateClassicalResponse
            report = SimulateClassicalResponse(**doc).report()
            rio.emit_report(report, args.out,
                            input_digests={"ensemble": rio.file_digest(args.ensemble)})
        return EXIT_OK
    # rspmi: write a CSV experiment table
    req = SimulateRspmiRequest(
        hit_prob=_scale_rate(args.hit_prob, args.rate_unit),
        n_experiments=args.experiments,
        trials_per=args.trials,
        seed=args.seed,
    )
    doc = _post(args, "/simulate/rspmi", req.model_dump())
    records = [RecordModel(**r).to_domain() for r in doc["records"]]
    if args.out:
        rio.write_experiments(records, args.out)
        _print(args, f"wrote {len(records)} experiment rows to {args.out}")
    else:
        import csv
        writer = csv.writer(sys.stdout)
        writer.writerow(["label", "trials", "hits"])
        for r in records:
            writer.writerow([r.label, r.trials, r.hits])
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rspbench",
        description="Classical fidelity benchmarks and simulators for remote state preparation.")
    parser.add_argument("--url", default=None,
                        help="base URL of a running service (default: in-process)")
    parser.add_argument("-q", "--quiet", action="store_true", help="suppress console output")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("threshold", help="classical threshold for an ensemble file")
    p.add_argument("--ensemble", required=True, help="ensemble JSON file")
    p.add_argument("--cbits", type=int, required=True)
    p.add_argument("--method", choices=["exact", "upper", "both"], default="both")
    p.add_argument("--jobs", type=int, default=1, help="parallel partition-scan chunks")
    p.add_argument("--out", default=None, help="write a JSON report here")
    p.set_defaults(func=cmd_threshold)

    p = sub.add_parser("fidelity", help="binary fidelity and benchmark from rates")
    p.add_argument("--p-theory", type=float, default=0.9, dest="p_theory")
    p.add_argument("--chance", type=float, default=0.25)
    p.add_argument("--q", type=float, default=None, help="observed hit rate")
    p.add_argument("--se", type=float, default=None, help="standard error of the hit rate")
    p.add_argument("--rate-unit", choices=["fraction", "percent"], default="fraction")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_fidelity)

    p = sub.add_parser("meta", help="meta-analyze a CSV experiment table")
    p.add_argument("--input", required=True, help="CSV with header label,trials,hits")
    p.add_argument("--p-theory", type=float, default=0.9, dest="p_theory")
    p.add_argument("--chance", type=float, default=0.25)
    p.add_argument("--rate-unit", choices=["fraction", "percent"], default="fraction")
    p.add_argument("--out", default=None, help="write a JSON report here")
    p.set_defaults(func=cmd_meta)

    p = sub.add_parser("simulate", help="seeded Monte Carlo simulation")
    p.add_argument("mode", choices=["classical", "rspmi"])
    p.add_argument("--ensemble", default=None, help="ensemble JSON file (classical mode)")
    p.add_argument("--cbits", type=int, default=1)
    p.add_argument("--trials", type=int, default=100000,
                   help="trials (classical) or trials per experiment (rspmi)")
    p.add_argument("--hit-prob", type=float, default=0.25, dest="hit_prob")
    p.add_argument("--experiments", type=int, default=87)
    p.add_argument("--rate-unit", choices=["fraction", "percent"], default="fraction")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", default=None,
                   help="JSON report (classical) or CSV table (rspmi)")
    p.set_defaults(func=cmd_simulate)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "simulate" and args.mode == "classical" and not args.ensemble:
        parser.error("simulate classical requires --ensemble")
    try:
        return args.func(args)
    except CliError as e:
        print(f"error: {e}", file=sys.stderr)
        if e.code == EXIT_GUARD:
            print("hint: retry with --method upper", file=sys.stderr)
        return e.code
    except FormatError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_VALIDATION
    except CombinatorialBlowupError as e:
        print(f"error: {e}", file=sys.stderr)
        print("hint: retry with --method upper", file=sys.stderr)
        return EXIT_GUARD
    except (RspBenchError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
