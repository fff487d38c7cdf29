"""Command-line front end.

Commands:
  check       classify a nuisance process as ignorable or informative
  enumerate   dump the exact joint and observation distributions
  inclusion   inclusion probabilities, selection expectations, size identities
  audit-rubin evaluate the missing-data theorems on the model
  mc-verify   seeded simulation cross-check against the exact engine
  examples    emit the built-in example catalog

Exit codes: 0 success, 1 verdict contradicts --expect, 2 input error.
Observation literals are JSON: values-only `[1,0]`, values-and-mapping
`[[1,0],[2,1]]`; strings of the form "p/q" are read as exact rationals.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction

from .catalog import CATALOG
from .exactprob import EngineError, canonical_key
from .ignorance import Family
from .inference import (
    BAYESIAN,
    FREQUENTIST,
    IGNORABLE,
    LIKELIHOOD_BASED,
    check_mar,
    check_oar,
    classify,
    default_estimator,
    rubin_theorem_audit,
)
from .ignorance import dirac_fix, marginal_family, single_arbitrary
from .mc import compare_exact_vs_mc
from .modelfile import ModelFileError, parse_model
from .reports import emit_report, machine_json, to_jsonable
from .sampling import (
    VALUES_AND_MAPPING,
    VALUES_MAPPING_DESIGN,
    build_joint,
    expected_distinct_size,
    expected_size,
    inclusion_probabilities,
    observation_distribution,
    selection_expectations,
    validate_observation,
)

_RATIONAL = re.compile(r"^-?\d+/\d+$")

POLICIES = {
    "dirac": dirac_fix,
    "arbitrary": single_arbitrary,
    "marginal": marginal_family,
}


def _decode_literal(value):
    if isinstance(value, list):
        return tuple(_decode_literal(v) for v in value)
    if isinstance(value, str) and _RATIONAL.match(value):
        return Fraction(value)
    if isinstance(value, float):
        raise EngineError(f"float {value!r} in an observation literal; use \"p/q\"")
    return value


def parse_observation_literal(text: str):
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as err:
        raise EngineError(f"observation literal is not valid JSON: {err}") from None
    return _decode_literal(raw)


def _load(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as err:
        raise EngineError(f"cannot read model file: {err}") from None
    return parse_model(text).build()


def _grid_label(model, text):
    if text is None:
        return None
    value = Fraction(text) if _RATIONAL.match(text) or text.lstrip("-").isdigit() else text
    if text.lstrip("-").isdigit():
        value = int(text)
    return value


def _find_point(model, theta_text, phi_text):
    if theta_text is None and phi_text is None:
        return model.grid[0]
    wanted_theta = _grid_label(model, theta_text) if theta_text else None
    wanted_phi = _grid_label(model, phi_text) if phi_text else None
    for theta, phi in model.grid:
        if wanted_theta is not None and canonical_key(theta) != canonical_key(wanted_theta):
            continue
        if wanted_phi is not None and canonical_key(phi) != canonical_key(wanted_phi):
            continue
        return (theta, phi)
    raise EngineError(
        f"grid point (theta={theta_text!r}, phi={phi_text!r}) not in the model"
    )


def _all_x(build):
    family = Family.from_survey_model(build.model, build.scheme)
    return family.observation_support()


def _with_rubin_conditions(build, report, x, mar_variant):
    """Append missing-at-random / observed-at-random flags when the model
    and scheme are in the shape those checks require; skip quietly when not."""
    from dataclasses import replace

    from .inference import NotRubinShape

    if build.scheme.kind not in (VALUES_AND_MAPPING, VALUES_MAPPING_DESIGN):
        return report
    try:
        if x is None or mar_variant == "uniform":
            mar = check_mar(build.model, None, build.scheme, variant="uniform")
            oar = all(
                check_oar(build.model, o, build.scheme) for o in _all_x(build)
            )
            variant = "uniform"
        else:
            mar = check_mar(build.model, x, build.scheme)
            oar = check_oar(build.model, x, build.scheme)
            variant = "local"
    except NotRubinShape:
        return report
    extra = (("mar", mar), ("oar", oar), ("mar_variant", variant))
    return replace(report, flags=report.flags + extra)


def cmd_check(args) -> int:
    build = _load(args.model)
    inference = {
        "likelihood": LIKELIHOOD_BASED,
        "frequentist": FREQUENTIST,
        "bayes": BAYESIAN,
    }[args.inference]
    policy = POLICIES[args.policy]()
    split = (build.v, build.v_bar)
    estimator = default_estimator(build.scheme) if inference == FREQUENTIST else None

    if args.x is not None:
        xs = [parse_observation_literal(args.x)]
        validate_observation(build.model, build.scheme, xs[0])
    elif inference == BAYESIAN:
        xs = list(_all_x(build))  # posterior checks are per observation
    else:
        # likelihood without a concrete x runs in uniform mode (one alpha
        # jointly across all observations), which is what --all-x means
        xs = [None]

    if inference == FREQUENTIST:
        xs = [None]  # estimator-distribution families are observation-free

    reports = []
    for x in xs:
        reports.append(
            classify(
                build.model,
                split,
                build.scheme,
                inference,
                build.target,
                x=x,
                policy=policy,
                estimator=estimator,
            )
        )
    reports = [
        _with_rubin_conditions(build, r, x, args.mar_variant)
        for x, r in zip(xs, reports)
    ]
    informative = [r for r in reports if r.verdict != IGNORABLE]
    headline = informative[0] if informative else reports[0]
    verdict = headline.verdict if not informative else informative[0].verdict
    overall = "informative" if informative else "ignorable"

    if args.json:
        from .reports import classification_payload

        payload = classification_payload(headline)
        payload["verdict"] = overall
        if len(reports) > 1:
            payload["observations_checked"] = len(reports)
            payload["informative_observations"] = len(informative)
        print(machine_json(payload))
    else:
        if len(reports) > 1:
            print(
                f"checked {len(reports)} observations: "
                f"{len(informative)} informative"
            )
        print(emit_report(headline))
        if informative:
            print(f"\noverall verdict: {overall}")
    if args.expect and args.expect != overall:
        return 1
    return 0


def cmd_enumerate(args) -> int:
    build = _load(args.model)
    theta, phi = _find_point(build.model, args.theta, args.phi)
    joint = build_joint(build.model, theta, phi)
    obs = observation_distribution(build.model, theta, phi, build.scheme)
    payload = {
        "type": "enumeration",
        "theta": to_jsonable(theta),
        "phi": to_jsonable(phi),
        "joint": to_jsonable(joint),
        "observation": to_jsonable(obs),
    }
    if args.json:
        print(machine_json(payload))
    else:
        print(f"grid point theta={theta} phi={phi}")
        print("\nworlds (y | z | r -> mass):")
        for w, mass in joint.items:
            print(f"  {w.y} | {w.z} | {w.r} -> {mass}")
        print("\nobservations:")
        for o, mass in obs.items:
            print(f"  {json.dumps(to_jsonable(o))} -> {mass}")
    return 0


def cmd_inclusion(args) -> int:
    build = _load(args.model)
    m = build.model
    pop = m.population
    blocks = []
    phis = m.phis if m.phis else (None,)
    for phi in phis:
        kernel = m.design_for(phi)
        for z, delta in kernel.entries:
            pi = inclusion_probabilities(delta, pop)
            ups = selection_expectations(delta, pop)
            blocks.append(
                {
                    "phi": to_jsonable(phi),
                    "z": to_jsonable(z),
                    "pi": to_jsonable(pi),
                    "upsilon": to_jsonable(ups),
                    "sum_pi": to_jsonable(sum(pi, Fraction(0))),
                    "expected_distinct_size": to_jsonable(expected_distinct_size(delta)),
                    "sum_upsilon": to_jsonable(sum(ups, Fraction(0))),
                    "expected_size": to_jsonable(expected_size(delta)),
                }
            )
    payload = {"type": "inclusion", "population": to_jsonable(pop.labels), "designs": blocks}
    if args.json:
        print(machine_json(payload))
    else:
        for b in blocks:
            print(f"phi={b['phi']} z={b['z']}")
            for k, pi_k, u_k in zip(pop.labels, b["pi"], b["upsilon"]):
                print(f"  unit {k}: pi={pi_k} upsilon={u_k}")
            print(
                f"  sum pi = {b['sum_pi']} = expected distinct size "
                f"{b['expected_distinct_size']}; sum upsilon = {b['sum_upsilon']} "
                f"= expected size {b['expected_size']}"
            )
    return 0


def cmd_audit_rubin(args) -> int:
    build = _load(args.model)
    if build.scheme.kind not in (VALUES_AND_MAPPING, VALUES_MAPPING_DESIGN):
        raise EngineError(
            "audit-rubin needs an observation scheme exposing the mapping"
        )
    if args.x is not None:
        xs = [parse_observation_literal(args.x)]
    else:
        xs = list(_all_x(build))
    reports = [rubin_theorem_audit(build.model, x, build.scheme) for x in xs]
    counterexamples = sum(
        1 for r in reports for a in r.audits if a.counterexample()
    )
    if args.json:
        from .reports import rubin_payload

        print(
            machine_json(
                {
                    "type": "rubin_audit_sweep",
                    "observations": len(reports),
                    "counterexamples": counterexamples,
                    "audits": [rubin_payload(r) for r in reports],
                }
            )
        )
    else:
        for r in reports:
            print(emit_report(r))
            print()
        print(f"observations audited: {len(reports)}; counterexamples: {counterexamples}")
    return 0


def cmd_mc_verify(args) -> int:
    build = _load(args.model)
    theta, phi = _find_point(build.model, args.theta, args.phi)
    report = compare_exact_vs_mc(
        build.model,
        theta,
        phi,
        scheme=build.scheme,
        draws=args.draws,
        seed=args.seed,
    )
    print(emit_report(report, json_form=args.json))
    return 0


def cmd_examples(args) -> int:
    if args.name:
        if args.name not in CATALOG:
            raise EngineError(
                f"unknown example {args.name!r}; choose from {', '.join(CATALOG)}"
            )
        print(CATALOG[args.name], end="")
        return 0
    if args.dir:
        import os

        os.makedirs(args.dir, exist_ok=True)
        for name, text in CATALOG.items():
            path = os.path.join(args.dir, f"{name}.model")
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(text)
            print(path)
        return 0
    for name, text in CATALOG.items():
        print(f"# --- {name} ---")
        print(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ignorability-lab",
        description="exact ignorable-vs-informative classification of "
        "selection and missingness processes on finite models",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="classify the nuisance process")
    p.add_argument("model")
    p.add_argument(
        "--inference",
        choices=("likelihood", "frequentist", "bayes"),
        default="likelihood",
    )
    p.add_argument("--policy", choices=tuple(POLICIES), default="dirac")
    p.add_argument("--x", help="observation literal (JSON)")
    p.add_argument("--all-x", action="store_true", help="sweep every observation")
    p.add_argument("--mar-variant", choices=("local", "uniform"), default="local")
    p.add_argument("--expect", choices=("ignorable", "informative"))
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("enumerate", help="dump joint and observation laws")
    p.add_argument("model")
    p.add_argument("--theta")
    p.add_argument("--phi")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_enumerate)

    p = sub.add_parser("inclusion", help="inclusion probabilities and size identities")
    p.add_argument("model")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_inclusion)

    p = sub.add_parser("audit-rubin", help="evaluate the missing-data theorems")
    p.add_argument("model")
    p.add_argument("--x", help="observation literal (JSON)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_audit_rubin)

    p = sub.add_parser("mc-verify", help="simulation cross-check")
    p.add_argument("model")
    p.add_argument("--draws", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--theta")
    p.add_argument("--phi")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_mc_verify)

    p = sub.add_parser("examples", help="emit the built-in example catalog")
    p.add_argument("--name")
    p.add_argument("--dir")
    p.set_defaults(fn=cmd_examples)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except ModelFileError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except EngineError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
