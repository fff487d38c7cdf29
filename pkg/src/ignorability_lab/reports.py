"""Report emission: canonical JSON machine form and aligned human tables.

Rationals serialize as "p/q" strings everywhere (never floats, never bare
integers), keys are emitted in sorted order, and tuples become arrays, so
two runs over the same inputs produce byte-identical machine output.
"""

from __future__ import annotations

import json
from dataclasses import asdict, is_dataclass
from fractions import Fraction

from .exactprob import FiniteDist
from .inference import (
    ClassificationReport,
    LikelihoodTable,
    RubinAuditReport,
)
from .mc import McReport
from .sampling import WorldState


def to_jsonable(value):
    if value is None or isinstance(value, (bool, int, str)):
        return value
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, float):
        return value
    if isinstance(value, FiniteDist):
        return {"dist": [[to_jsonable(o), to_jsonable(w)] for o, w in value.items]}
    if isinstance(value, WorldState):
        return {
            "y": to_jsonable(value.y),
            "z": to_jsonable(value.z),
            "r": to_jsonable(value.r),
        }
    if isinstance(value, (tuple, list)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if is_dataclass(value):
        return {
            k: to_jsonable(v)
            for k, v in asdict(value).items()
            if not callable(v)
        }
    return repr(value)


def machine_json(payload) -> str:
    return json.dumps(to_jsonable(payload), sort_keys=True, separators=(",", ": "), indent=1)


def _aligned(rows) -> str:
    rows = [[str(c) for c in row] for row in rows]
    if not rows:
        return ""
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    return "\n".join(
        "  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() for row in rows
    )


def classification_payload(report: ClassificationReport) -> dict:
    return {
        "type": "classification",
        "inference": report.inference_type,
        "verdict": report.verdict,
        "alpha": report.alpha,
        "flags": dict(report.flags),
        "witnesses": [
            {"kind": w.kind, "equal": w.equal, "detail": dict(w.detail)}
            for w in report.witnesses
        ],
    }


def classification_human(report: ClassificationReport) -> str:
    rows = [
        ["inference", report.inference_type],
        ["verdict", report.verdict],
        ["alpha", "" if report.alpha is None else _frac(report.alpha)],
    ]
    for name, value in report.flags:
        rows.append([f"flag {name}", value])
    lines = [_aligned(rows), ""]
    for w in report.witnesses:
        lines.append(f"witness {w.kind}: {'equal' if w.equal else 'DIFFERS'}")
        for name, value in w.detail:
            rendered = _compact(value)
            if w.equal and len(rendered) > 200:
                size = len(value) if isinstance(value, (tuple, list)) else "?"
                rendered = f"<{size} entries agree; full table in --json>"
            lines.append(f"  {name} = {rendered}")
    return "\n".join(lines)


def mc_payload(report: McReport) -> dict:
    return {
        "type": "mc",
        "draws": report.draws,
        "seed": report.seed,
        "max_abs_deviation": repr(report.max_abs_deviation),
        "three_sigma_bound": repr(report.three_sigma_bound),
        "cells_outside": report.cells_outside,
        "cells": [
            {
                "outcome": to_jsonable(c.outcome),
                "exact": to_jsonable(c.exact),
                "count": c.count,
                "frequency": repr(c.frequency),
                "band": repr(c.band),
                "within": c.within,
            }
            for c in report.cells
        ],
    }


def mc_human(report: McReport) -> str:
    rows = [["outcome", "exact", "count", "frequency", "band", "within"]]
    for c in report.cells:
        rows.append(
            [
                _compact(c.outcome),
                _frac(c.exact),
                c.count,
                f"{c.frequency:.6f}",
                f"{c.band:.6f}",
                "yes" if c.within else "NO",
            ]
        )
    tail = (
        f"\ndraws={report.draws} seed={report.seed} "
        f"max_abs_deviation={report.max_abs_deviation:.6f} "
        f"cells_outside={report.cells_outside}"
    )
    return _aligned(rows) + tail


def rubin_payload(report: RubinAuditReport) -> dict:
    return {
        "type": "rubin_audit",
        "x": to_jsonable(report.x),
        "mar": report.mar,
        "oar": report.oar,
        "distinct": report.distinct,
        "theorems": [
            {
                "theorem": a.theorem,
                "hypothesis": a.hypothesis_true,
                "conclusion": a.conclusion_true,
                "counterexample": a.counterexample(),
            }
            for a in report.audits
        ],
    }


def rubin_human(report: RubinAuditReport) -> str:
    head = _aligned(
        [
            ["x", _compact(report.x)],
            ["mar", report.mar],
            ["oar", report.oar],
            ["distinct", report.distinct],
        ]
    )
    rows = [["theorem", "hypothesis", "conclusion", "counterexample"]]
    for a in report.audits:
        rows.append(
            [a.theorem, a.hypothesis_true, a.conclusion_true, a.counterexample()]
        )
    return head + "\n\n" + _aligned(rows)


def emit_report(report, json_form: bool = False) -> str:
    """Render any engine report; canonical JSON under json_form."""
    if isinstance(report, ClassificationReport):
        payload, human = classification_payload(report), classification_human(report)
    elif isinstance(report, McReport):
        payload, human = mc_payload(report), mc_human(report)
    elif isinstance(report, RubinAuditReport):
        payload, human = rubin_payload(report), rubin_human(report)
    elif isinstance(report, LikelihoodTable):
        payload = {
            "type": "likelihood",
            "x": to_jsonable(report.x),
            "entries": [[to_jsonable(p), to_jsonable(v)] for p, v in report.entries],
        }
        human = _aligned(
            [["point", "likelihood"]]
            + [[_compact(p), _frac(v)] for p, v in report.entries]
        )
    elif isinstance(report, dict):
        payload, human = report, _aligned([[k, _compact(v)] for k, v in report.items()])
    else:
        payload, human = to_jsonable(report), str(report)
    return machine_json(payload) if json_form else human


def _frac(value) -> str:
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    return str(value)


def _compact(value) -> str:
    return json.dumps(to_jsonable(value), sort_keys=True, separators=(",", ":"))
