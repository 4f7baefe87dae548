"""FastAPI service exposing thresholds, fidelity analysis and simulation.

Run with::

    uvicorn rspbench.service:app

Domain errors surface as HTTP 400 with a ``{"kind", "message"}`` detail;
``kind`` is ``"guard"`` for combinatorial-blowup refusals and
``"validation"`` for everything else.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException

from . import __version__
from .benchmark import exact_threshold, _upper_bound_details, ThresholdResult
from .errors import CombinatorialBlowupError, RspBenchError
from .schemas import (
    FidelityRequest, FidelityResponse,
    MetaRequest, MetaResponse,
    RecordModel,
    SimulateClassicalRequest, SimulateClassicalResponse,
    SimulateRspmiRequest, SimulateRspmiResponse,
    ThresholdRequest, ThresholdResponse,
)
from .simulate import simulate_classical_rsp, simulate_rspmi_experiments, strategy_from_partition
from .stats import (
    BinaryFidelityParams, binary_fidelity, classical_benchmark,
    fidelity_uncertainty_delta, fidelity_uncertainty_paper, meta_analyze, violation_z,
)

app = FastAPI(
    title="rspbench",
    version=__version__,
    description="Classical fidelity benchmarks and simulators for remote state preparation.",
)


def _bad_request(kind: str, exc: Exception) -> HTTPException:
    return HTTPException(status_code=400, detail={"kind": kind, "message": str(exc)})


@app.get("/health")
def health() -> dict:
    return {"status": "ok", "version": __version__}


@app.post("/threshold", response_model=ThresholdResponse)
def threshold(req: ThresholdRequest) -> ThresholdResponse:
    try:
        ensemble = req.ensemble.to_domain()
        if req.method == "upper":
            bound, per_size, row = _upper_bound_details(ensemble, req.cbits)
            result = ThresholdResult(cbits=req.cbits, upper_bound=bound,
                                     per_size_max=per_size, best_composition=row)
        else:
            result = exact_threshold(ensemble, req.cbits, jobs=req.jobs)
    except CombinatorialBlowupError as e:
        raise _bad_request("guard", e) from e
    except (RspBenchError, ValueError) as e:
        raise _bad_request("validation", e) from e
    return ThresholdResponse.from_domain(result)


@app.post("/fidelity", response_model=FidelityResponse)
def fidelity(req: FidelityRequest) -> FidelityResponse:
    try:
        params = BinaryFidelityParams(p_theory=req.p_theory, chance=req.chance)
        bench = classical_benchmark(params)
        resp = FidelityResponse(benchmark=bench)
        if req.q is not None:
            fid = binary_fidelity(req.p_theory, req.q)
            resp.fidelity = fid
            if req.se is not None:
                resp.df_paper = fidelity_uncertainty_paper(req.p_theory, req.q, req.se)
                resp.df_delta = fidelity_uncertainty_delta(req.p_theory, req.q, req.se)
                if resp.df_paper > 0:
                    resp.z_paper = violation_z(fid, bench, resp.df_paper)
                if resp.df_delta > 0:
                    resp.z_delta = violation_z(fid, bench, resp.df_delta)
    except (RspBenchError, ValueError) as e:
        raise _bad_request("validation", e) from e
    return resp


@app.post("/meta", response_model=MetaResponse)
def meta(req: MetaRequest) -> MetaResponse:
    try:
        records = [r.to_domain() for r in req.records]
        params = BinaryFidelityParams(p_theory=req.p_theory, chance=req.chance)
        result = meta_analyze(records, params)
    except (RspBenchError, ValueError) as e:
        raise _bad_request("validation", e) from e
    return MetaResponse.from_domain(result)


@app.post("/simulate/classical", response_model=SimulateClassicalResponse)
def simulate_classical(req: SimulateClassicalRequest) -> SimulateClassicalResponse:
    try:
        ensemble = req.ensemble.to_domain()
        result = exact_threshold(ensemble, req.cbits)
        strategy = strategy_from_partition(ensemble, result.exact_partition, cbits=req.cbits)
        report = simulate_classical_rsp(ensemble, strategy, req.trials, req.seed)
    except CombinatorialBlowupError as e:
        raise _bad_request("guard", e) from e
    except (RspBenchError, ValueError) as e:
        raise _bad_request("validation", e) from e
    return SimulateClassicalResponse(
        trials=report.trials,
        mean_fidelity=report.mean_fidelity,
        std_error=report.std_error,
        seed=report.seed,
        strategy_summary=report.strategy_summary,
        threshold=result.exact,
    )


@app.post("/simulate/rspmi", response_model=SimulateRspmiResponse)
def simulate_rspmi(req: SimulateRspmiRequest) -> SimulateRspmiResponse:
    try:
        trials_per = req.trials_per if isinstance(req.trials_per, int) else list(req.trials_per)
        records = simulate_rspmi_experiments(req.hit_prob, req.n_experiments,
                                             trials_per, req.seed)
    except (RspBenchError, ValueError) as e:
        raise _bad_request("validation", e) from e
    return SimulateRspmiResponse(records=[RecordModel.from_domain(r) for r in records])
