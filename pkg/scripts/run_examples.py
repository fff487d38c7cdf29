#!/usr/bin/env python3
"""Classify every catalog example under all three inference types and
print one verdict row per (example, inference) pair.

Usage: python scripts/run_examples.py [--json]
"""

import argparse
import json
import sys

from ignorability_lab.catalog import CATALOG
from ignorability_lab.ignorance import Family
from ignorability_lab.inference import (
    BAYESIAN,
    FREQUENTIST,
    LIKELIHOOD_BASED,
    classify,
    default_estimator,
)
from ignorability_lab.modelfile import parse_model
from ignorability_lab.reports import to_jsonable


def verdicts_for(name: str) -> dict:
    build = parse_model(CATALOG[name]).build()
    split = (build.v, build.v_bar)
    out = {}
    rep = classify(
        build.model, split, build.scheme, LIKELIHOOD_BASED, build.target
    )
    out["likelihood"] = (rep.verdict, rep.alpha)
    rep = classify(
        build.model,
        split,
        build.scheme,
        FREQUENTIST,
        build.target,
        estimator=default_estimator(build.scheme),
    )
    out["frequentist"] = (rep.verdict, None)
    # Bayesian verdicts are per observation; sweep them all
    family = Family.from_survey_model(build.model, build.scheme)
    bayes = "ignorable"
    for x in family.observation_support():
        rep = classify(
            build.model, split, build.scheme, BAYESIAN, build.target, x=x
        )
        if rep.verdict != "ignorable":
            bayes = "informative"
            break
    out["bayes"] = (bayes, None)
    return out


def main() -> int:
    parser = argparse.ArgumentParser()
    parser.add_argument("--json", action="store_true")
    args = parser.parse_args()
    rows = []
    for name in sorted(CATALOG):
        try:
            results = verdicts_for(name)
        except Exception as err:  # some targets do not fit every inference
            rows.append((name, "-", f"skipped: {err}", ""))
            continue
        for inference, (verdict, alpha) in results.items():
            rows.append((name, inference, verdict, alpha))
    if args.json:
        print(
            json.dumps(
                [
                    {
                        "example": n,
                        "inference": i,
                        "verdict": v,
                        "alpha": to_jsonable(a),
                    }
                    for n, i, v, a in rows
                ],
                indent=1,
            )
        )
        return 0
    width = max(len(r[0]) for r in rows)
    for name, inference, verdict, alpha in rows:
        tail = f"  alpha={alpha}" if alpha else ""
        print(f"{name.ljust(width)}  {inference:<12} {verdict}{tail}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
