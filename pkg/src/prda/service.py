"""HTTP/JSON service exposing the engine to the interactive explorer and to
scripted clients.

Every successful response is a JobEnvelope: the validated request echoed
back, the seed actually used (null in exact mode), the result object (the
same shape the CLI emits in JSON mode), and the elapsed milliseconds.
Identical request bodies, including the seed, produce identical results;
the service keeps no state between requests.

Error mapping: malformed or out-of-domain input -> 400 with field details,
unreachable target power -> 422 carrying the power achieved at the range's
upper bound, anything else -> 500.
"""

from __future__ import annotations

import secrets
import time
from typing import Literal

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel, ConfigDict, Field

from . import oracle, payloads
from .effects import interpret_from_summaries
from .engine import retrospective, sensitivity_curve
from .priors import build_prior, design_est
from .search import UnreachablePowerError, find_sample_size
from .stats import InvalidParameterError, SampleSummary

MAX_TOTAL_REPLICATES = 10_000_000


class _Body(BaseModel):
    model_config = ConfigDict(populate_by_name=True, extra="forbid")


class RetrospectiveBody(_Body):
    d: float
    n: int
    alpha: float = 0.05
    B: int = 10000
    seed: int | None = None
    mode: Literal["simulate", "exact"] = "simulate"


class ProspectiveBody(_Body):
    d: float
    power: float
    alpha: float = 0.05
    rangen: tuple[int, int] = (2, 1000)
    tol: float = 0.005
    B: int = 10000
    seed: int | None = None
    mode: Literal["simulate", "exact"] = "simulate"


class DesignEstBody(_Body):
    n1: int
    n2: int | None = None
    target_d: float | None = Field(None, alias="targetD")
    limits: tuple[float, float] | None = None
    distribution: Literal["uniform", "normal"] = "uniform"
    k: float = 1 / 6
    alpha: float = 0.05
    B: int = 500
    B0: int = 500
    return_data: bool = Field(False, alias="returnData")
    seed: int | None = None
    mode: Literal["simulate", "exact"] = "simulate"


class SensitivityBody(_Body):
    d: float
    n_grid: list[int] = Field(alias="nGrid")
    alpha: float = 0.05
    B: int = 10000
    seed: int | None = None
    mode: Literal["simulate", "exact"] = "simulate"


class GroupBody(_Body):
    n: int
    mean: float
    sd: float


class InterpretBody(_Body):
    group1: GroupBody
    group2: GroupBody
    level: float = 0.95


def _check_budget(total: int) -> None:
    if total > MAX_TOTAL_REPLICATES:
        raise InvalidParameterError(
            f"requested {total} replicates exceeds the per-request cap "
            f"of {MAX_TOTAL_REPLICATES}"
        )


def create_app(workers: int = 1, cors_origin: str = "*") -> FastAPI:
    app = FastAPI(title="prda", version="0.1.0")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=[cors_origin] if cors_origin != "*" else ["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.exception_handler(RequestValidationError)
    async def _validation_handler(request: Request, exc: RequestValidationError):
        fields = [
            {"loc": [str(part) for part in err["loc"]], "message": err["msg"]}
            for err in exc.errors()
        ]
        return JSONResponse(
            status_code=400,
            content={"status": "error",
                     "error": {"code": "validation", "fields": fields}},
        )

    @app.exception_handler(InvalidParameterError)
    async def _invalid_handler(request: Request, exc: InvalidParameterError):
        return JSONResponse(
            status_code=400,
            content={"status": "error",
                     "error": {"code": "invalid-parameter", "message": str(exc)}},
        )

    @app.exception_handler(UnreachablePowerError)
    async def _unreachable_handler(request: Request, exc: UnreachablePowerError):
        return JSONResponse(
            status_code=422,
            content={
                "status": "error",
                "error": {
                    "code": "unreachable-power",
                    "message": str(exc),
                    "targetPower": exc.target_power,
                    "nUpper": exc.n_upper,
                    "achievedPower": exc.achieved.power,
                },
            },
        )

    def envelope(body: _Body, seed: int | None, result: dict, started: float) -> dict:
        return {
            "request": body.model_dump(by_alias=True),
            "seed": seed,
            "status": "done",
            "result": result,
            "timingMs": (time.perf_counter() - started) * 1000.0,
        }

    def pick_seed(seed: int | None) -> int:
        return seed if seed is not None else secrets.randbits(63)

    @app.get("/healthz")
    async def healthz():
        return {"status": "ok"}

    @app.post("/retrospective")
    def post_retrospective(body: RetrospectiveBody):
        started = time.perf_counter()
        if body.mode == "exact":
            power, type_s, type_m = oracle.exact_design(body.d, body.n, body.n, body.alpha)
            return envelope(body, None,
                            payloads.exact_triple_payload(power, type_s, type_m), started)
        _check_budget(body.B)
        seed = pick_seed(body.seed)
        res = retrospective(body.d, body.n, body.alpha, body.B, seed, workers=workers)
        return envelope(body, seed, payloads.design_result_payload(res), started)

    @app.post("/prospective")
    def post_prospective(body: ProspectiveBody):
        started = time.perf_counter()
        if body.mode == "exact":
            hi = body.rangen[1]
            if oracle.exact_power(body.d, hi, hi, body.alpha) < body.power:
                achieved = oracle.exact_design(body.d, hi, hi, body.alpha)
                raise UnreachablePowerError(
                    body.power, hi,
                    _exact_bound_result(body, hi, achieved),
                )
            n = oracle.exact_sample_size(body.d, body.power, body.alpha, body.rangen)
            power, type_s, type_m = oracle.exact_design(body.d, n, n, body.alpha)
            result = {"n": n, **payloads.exact_triple_payload(power, type_s, type_m)}
            return envelope(body, None, result, started)
        _check_budget(body.B)
        seed = pick_seed(body.seed)
        res = find_sample_size(body.d, body.power, body.alpha, body.rangen,
                               body.tol, body.B, seed, workers=workers)
        return envelope(body, seed, payloads.prospective_payload(res), started)

    @app.post("/design-est")
    def post_design_est(body: DesignEstBody):
        started = time.perf_counter()
        prior = build_prior(value=body.target_d, limits=body.limits,
                            distribution=body.distribution, k=body.k)
        n2 = body.n1 if body.n2 is None else body.n2
        if body.mode == "exact":
            if prior.kind != "point":
                raise InvalidParameterError("exact mode supports point effects only")
            power, type_s, type_m = oracle.exact_design(prior.value, body.n1, n2, body.alpha)
            return envelope(body, None,
                            payloads.exact_triple_payload(power, type_s, type_m), started)
        _check_budget(body.B * body.B0)
        seed = pick_seed(body.seed)
        res = design_est(body.n1, n2, prior, body.alpha, body.B, body.B0,
                         return_data=body.return_data, seed=seed, workers=workers)
        return envelope(body, seed, payloads.design_est_payload(res), started)

    @app.post("/sensitivity")
    def post_sensitivity(body: SensitivityBody):
        started = time.perf_counter()
        if body.mode == "exact":
            rows = []
            for n in body.n_grid:
                power, type_s, type_m = oracle.exact_design(body.d, n, n, body.alpha)
                rows.append({"n": n, "power": power, "typeS": type_s, "typeM": type_m})
            return envelope(body, None, {"rows": rows}, started)
        _check_budget(body.B * len(body.n_grid))
        seed = pick_seed(body.seed)
        rows = sensitivity_curve(body.d, body.n_grid, body.alpha, body.B, seed,
                                 workers=workers)
        return envelope(body, seed, {"rows": payloads.sensitivity_rows_payload(rows)},
                        started)

    @app.post("/interpret")
    def post_interpret(body: InterpretBody):
        started = time.perf_counter()
        a = SampleSummary(n=body.group1.n, mean=body.group1.mean, sd=body.group1.sd)
        b = SampleSummary(n=body.group2.n, mean=body.group2.mean, sd=body.group2.sd)
        interp = interpret_from_summaries(a, b, body.level)
        return envelope(body, None, payloads.interpret_payload(interp), started)

    return app


def _exact_bound_result(body: ProspectiveBody, hi: int, achieved: tuple[float, float, float]):
    from .engine import DesignResult

    power, type_s, type_m = achieved
    return DesignResult(power=power, type_s=type_s, type_m=type_m, n_significant=0,
                        B=0, alpha=body.alpha, d_true=body.d, d_reference=body.d)
