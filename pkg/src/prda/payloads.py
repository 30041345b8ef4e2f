"""Result dictionaries shared by the CLI JSON output and the HTTP service,
so both surfaces publish the same schema."""

from __future__ import annotations

from .effects import EffectInterpretation
from .engine import DesignResult
from .priors import DesignEstResult
from .search import ProspectiveResult

PER_DRAW_COLUMNS = ["d_drawn", "power", "type_s", "type_m"]


def design_result_payload(res: DesignResult) -> dict:
    return {
        "power": res.power,
        "typeS": res.type_s,
        "typeM": res.type_m,
        "nSignificant": res.n_significant,
        "B": res.B,
    }


def exact_triple_payload(power: float, type_s: float, type_m: float) -> dict:
    return {"power": power, "typeS": type_s, "typeM": type_m}


def prospective_payload(res: ProspectiveResult) -> dict:
    payload = {"n": res.n_per_group, "targetPower": res.target_power, "tol": res.tol}
    payload.update(design_result_payload(res.achieved))
    return payload


def sensitivity_rows_payload(rows: list[tuple[int, DesignResult]]) -> list[dict]:
    return [
        {"n": n, "power": r.power, "typeS": r.type_s, "typeM": r.type_m} for n, r in rows
    ]


def design_est_payload(res: DesignEstResult) -> dict:
    payload = {
        "power": res.power,
        "typeS": res.type_s,
        "typeM": res.type_m,
        "nUndefinedTypeM": res.n_undefined_type_m,
        "B": res.B,
        "B0": res.B0,
    }
    if res.per_draw is not None:
        payload["data"] = {
            "columns": PER_DRAW_COLUMNS,
            "rows": [[float(x) for x in row] for row in res.per_draw],
        }
    return payload


def interpret_payload(interp: EffectInterpretation) -> dict:
    return {
        "d": interp.d,
        "ciLow": interp.ci_low,
        "ciHigh": interp.ci_high,
        "level": interp.level,
        "cl": interp.cl,
        "u3": interp.u3,
        "label": interp.label,
    }
