"""FastAPI application wrapping the study runners and the operator itself."""

from __future__ import annotations

import json

from fastapi import FastAPI, HTTPException

from ..experiments.presets import EXAMPLES, run_example
from ..experiments.report import ExperimentReport, render_json
from ..experiments.studies import (
    _functional_from_dict,
    _kernel_from_dict,
    run_equivalence_study,
    run_rate_study,
    run_symbol_study,
)
from ..kernels import DefectSingularityError
from ..lattice import DilationLattice
from ..quasiinterp import apply_spectral, quasi_interpolant
from ..spectrum import from_json_dict, to_json_dict
from .schemas import (
    HealthResponse,
    OperatorApplyRequest,
    OperatorApplyResponse,
    ReproduceRequest,
    ReproduceResponse,
    StudyRequest,
    StudyResponse,
)

_STUDIES = {
    "ratecheck": run_rate_study,
    "equivcheck": run_equivalence_study,
    "symbolcheck": run_symbol_study,
}


def _as_response(report: ExperimentReport) -> StudyResponse:
    # Round-trip through the canonical JSON rendering so inf/nan and float
    # formatting match the files the CLI writes.
    payload = json.loads(render_json(report))
    return StudyResponse(**payload)


def _run(study: str, request: StudyRequest) -> StudyResponse:
    try:
        config = request.config.to_core().with_overrides(
            seed=request.seed, oversample=request.oversample
        )
        report = _STUDIES[study](config)
    except DefectSingularityError as exc:
        raise HTTPException(
            status_code=422, detail=f"defect vanishes at frequency {exc.frequency}"
        )
    except (ValueError, KeyError) as exc:
        raise HTTPException(status_code=422, detail=str(exc))
    return _as_response(report)


def create_app() -> FastAPI:
    from .. import __version__

    app = FastAPI(title="torusqi", version=__version__)

    @app.get("/v1/health", response_model=HealthResponse)
    def health() -> HealthResponse:
        return HealthResponse(status="ok", version=__version__)

    @app.post("/v1/ratecheck", response_model=StudyResponse)
    def ratecheck(request: StudyRequest) -> StudyResponse:
        return _run("ratecheck", request)

    @app.post("/v1/equivcheck", response_model=StudyResponse)
    def equivcheck(request: StudyRequest) -> StudyResponse:
        return _run("equivcheck", request)

    @app.post("/v1/symbolcheck", response_model=StudyResponse)
    def symbolcheck(request: StudyRequest) -> StudyResponse:
        return _run("symbolcheck", request)

    @app.post("/v1/reproduce", response_model=ReproduceResponse)
    def reproduce(request: ReproduceRequest) -> ReproduceResponse:
        names = request.examples if request.examples else list(EXAMPLES)
        unknown = [n for n in names if n not in EXAMPLES]
        if unknown:
            raise HTTPException(status_code=422, detail=f"unknown examples {unknown}")
        reports = {}
        for name in names:
            reports[name] = _as_response(run_example(name))
        return ReproduceResponse(reports=reports)

    @app.post("/v1/operator/apply", response_model=OperatorApplyResponse)
    def operator_apply(request: OperatorApplyRequest) -> OperatorApplyResponse:
        try:
            kernel = _kernel_from_dict(request.kernel.model_dump())
            functional = _functional_from_dict(request.functional.model_dump())
            lattice = DilationLattice(tuple(request.lattice.diag))
            op = quasi_interpolant(kernel, functional, lattice, request.level)
            f = from_json_dict(request.function.model_dump())
            if request.route == "spectral":
                result = apply_spectral(op, f)
            else:
                from ..quasiinterp import apply_spatial

                result = apply_spatial(op, f)
        except DefectSingularityError as exc:
            raise HTTPException(
                status_code=422, detail=f"defect vanishes at frequency {exc.frequency}"
            )
        except ValueError as exc:
            raise HTTPException(status_code=422, detail=str(exc))
        return OperatorApplyResponse(function=to_json_dict(result))

    return app
