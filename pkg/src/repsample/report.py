"""Report payloads and their stable JSON serialization.

Reports are plain dicts serialized with sorted keys and default float
repr (shortest round-trip), so identical runs produce byte-identical
documents.
"""

from __future__ import annotations

import json

from .engine import IterationReport, SampleResult, total_variation
from .strata import Stratification
from .variables import CleanCategoricalVariable

TOOL_NAME = "repsample"


def _tool_block() -> dict:
    from . import __version__

    return {"name": TOOL_NAME, "version": __version__}


def _variable_payload(var) -> dict:
    if isinstance(var, CleanCategoricalVariable):
        total = len(var.values)
        return {
            "name": var.name,
            "kind": "categorical",
            "n": total,
            "categories": [
                {"label": label, "count": count, "share": count / total if total else 0.0}
                for label, count in var.categories
            ],
        }
    payload = {"name": var.name, "kind": "numerical", "dropped": None}
    payload.update(var.stats.as_dict())
    return payload


def _strata_payload(strat: Stratification) -> list[dict]:
    rows = []
    for s in strat.strata:
        rows.append(
            {
                "id": s.id,
                "label": s.label,
                "size": s.size,
                "proportion": s.proportion,
                "mean": s.mean,
                "std": s.std,
            }
        )
    return rows


def _estimates_payload(result: SampleResult) -> dict:
    return {
        name: {"mean": est.mean, "se": est.se, "ci": [est.ci[0], est.ci[1]]}
        for name, est in result.estimates.items()
    }


def analysis_payload(sampler, input_path=None) -> dict:
    """Report fragment after the analysis phases: stats plus strata table."""
    payload = {
        "tool": _tool_block(),
        "seed": sampler.random_state,
        "input": str(input_path) if input_path is not None else None,
        "population_size": sampler.dataset_.row_count,
        "variables": [_variable_payload(v) for v in sampler.variables_],
        "strata": _strata_payload(sampler.stratification_),
    }
    for entry in payload["variables"]:
        if entry["kind"] == "numerical":
            entry["dropped"] = sampler.dataset_.row_count - entry["n"]
    if sampler.elbow_k_:
        payload["selected_k"] = dict(sorted(sampler.elbow_k_.items()))
    return payload


def sampling_payload(sampler, input_path=None) -> dict:
    """Full report: analysis fragment plus plan, iterations, chosen sample."""
    payload = analysis_payload(sampler, input_path=input_path)
    plan = sampler.plan_
    params = plan.params
    payload["plan"] = {
        "n": plan.n,
        "z": plan.z,
        "confidence": params.confidence if params else sampler.confidence,
        "epsilon": params.epsilon if params else None,
        "epsilon_mode": params.epsilon_mode if params else None,
        "epsilon_resolved": plan.epsilon_resolved,
        "allocation_method": "proportional",
        "allocations": [{"stratum": sid, "n": n_i} for sid, n_i in plan.per_stratum],
        "flags": list(plan.flags),
    }

    report: IterationReport = sampler.iteration_report_
    payload["iterations"] = [
        {
            "index": res.iteration_index,
            "score": score,
            "estimates": _estimates_payload(res),
            "flags": list(res.flags),
        }
        for res, score in zip(report.iterations, report.scores)
    ]
    best = report.best
    payload["chosen"] = {
        "index": report.chosen,
        "total": best.total,
        "per_stratum": [
            {"stratum": sid, "count": int(best.selected[sid].size)}
            for sid in sorted(best.selected)
        ],
        "estimates": _estimates_payload(best),
        "proportion_tv_distance": total_variation(
            best.stratum_shares, sampler.stratification_
        ),
    }
    return payload


def to_json(payload: dict) -> str:
    return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def write_json(payload: dict, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(to_json(payload))


def format_strata_table(strat: Stratification) -> str:
    """Small fixed-width text table for terminal output."""
    lines = [f"{'id':>4}  {'size':>10}  {'phi':>8}  {'mean':>12}  {'std':>12}  label"]
    for s in strat.strata:
        mean = f"{s.mean:.6g}" if s.mean is not None else "-"
        std = f"{s.std:.6g}" if s.std is not None else "-"
        lines.append(
            f"{s.id:>4}  {s.size:>10}  {s.proportion:>8.4f}  {mean:>12}  {std:>12}  {s.label}"
        )
    return "\n".join(lines)
