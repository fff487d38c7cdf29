"""Exact finite probability kernel.

Distributions over explicit finite supports with rational weights that sum
to exactly 1.  Everything downstream (sampling designs, likelihoods, the
ignorable/informative classifier) is built on the operations here, and the
classifier's verdicts are equalities of distributions, so no floating point
is allowed anywhere in this module.  Weights are `fractions.Fraction`.

Outcomes can be any "canonical value": None, bool, int, Fraction, str,
tuples of canonical values, or objects exposing a ``canonical_key()``
method.  A canonical value has a total order (see `canonical_key`), which
gives every support a unique normal form and makes distribution equality
structural.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable

DEFAULT_SUPPORT_CAP = 10**6
SUPPORT_CAP_ENV = "IGNORABILITY_LAB_MAX_SUPPORT"


class EngineError(Exception):
    """Base class for all engine errors."""


class NonUnitMass(EngineError):
    """Weights of a distribution do not sum to exactly 1."""


class NegativeWeight(EngineError):
    """A distribution weight is negative."""


class ZeroProbabilityEvent(EngineError):
    """Conditioning on an event of exactly zero mass."""


class MissingKernelEntry(EngineError):
    """A kernel was applied to a value it is not defined on."""


class IncomparableOutcomes(EngineError):
    """An outcome is not a canonical value (e.g. a float or a dict)."""


class ModelTooLarge(EngineError):
    """An operation would build a support larger than the configured cap."""


def support_cap() -> int:
    """Current support-size guardrail (env `IGNORABILITY_LAB_MAX_SUPPORT`)."""
    raw = os.environ.get(SUPPORT_CAP_ENV)
    if raw is None:
        return DEFAULT_SUPPORT_CAP
    return int(raw)


def check_size(n: int, what: str = "support") -> None:
    cap = support_cap()
    if n > cap:
        raise ModelTooLarge(f"{what} of size {n} exceeds cap {cap}")


def as_rational(value) -> Fraction:
    """Coerce to an exact Fraction.  Floats are rejected, never rounded."""
    if isinstance(value, bool):
        raise IncomparableOutcomes("bool is not a probability value")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise IncomparableOutcomes(
        f"exact rational required, got {type(value).__name__}: {value!r}"
    )


def canonical_key(value):
    """Total-order key for canonical values.

    Ranks: None < numbers < strings < tuples < keyed objects.  Tuples are
    compared elementwise by key, so nested structures order lexicographically
    over their structural encoding.
    """
    if value is None:
        return (0,)
    if isinstance(value, bool):
        return (1, Fraction(int(value)))
    if isinstance(value, (int, Fraction)):
        return (1, Fraction(value))
    if isinstance(value, str):
        return (2, value)
    if isinstance(value, (tuple, list)):
        return (3, tuple(canonical_key(v) for v in value))
    method = getattr(value, "canonical_key", None)
    if method is not None:
        return method()
    raise IncomparableOutcomes(
        f"outcome {value!r} of type {type(value).__name__} has no canonical order"
    )


@dataclass(frozen=True)
class FiniteDist:
    """Exact probability distribution on a finite support.

    `items` is the canonical form: pairs (outcome, weight) with distinct
    outcomes, strictly positive Fraction weights summing to 1, sorted by
    `canonical_key` of the outcome.  Use `dist_new` (or the helpers below)
    rather than the raw constructor.
    """

    items: tuple

    def support(self) -> tuple:
        return tuple(o for o, _ in self.items)

    def weights(self) -> tuple:
        return tuple(w for _, w in self.items)

    def mass(self, outcome) -> Fraction:
        key = canonical_key(outcome)
        for o, w in self.items:
            if canonical_key(o) == key:
                return w
        return Fraction(0)

    def event_mass(self, event: Callable) -> Fraction:
        return sum((w for o, w in self.items if event(o)), Fraction(0))

    def to_mapping(self) -> dict:
        return dict(self.items)

    def __len__(self) -> int:
        return len(self.items)

    def canonical_key(self):
        return (4, "FiniteDist", canonical_key(tuple(self.items)))

    def __repr__(self) -> str:
        body = ", ".join(f"{o!r}: {w}" for o, w in self.items)
        return f"FiniteDist({{{body}}})"


def dist_new(pairs: Iterable) -> FiniteDist:
    """Build a distribution from (outcome, weight) pairs.

    Duplicate outcomes are merged by summing weights; zero-weight atoms are
    dropped from the canonical form.  Raises NegativeWeight or NonUnitMass.
    """
    pairs = list(pairs)
    check_size(len(pairs))
    merged: dict = {}
    originals: dict = {}
    for outcome, weight in pairs:
        w = as_rational(weight)
        if w < 0:
            raise NegativeWeight(f"weight {w} of outcome {outcome!r}")
        key = canonical_key(outcome)
        if key in merged:
            merged[key] += w
        else:
            merged[key] = w
            originals[key] = outcome
    total = sum(merged.values(), Fraction(0))
    if total != 1:
        raise NonUnitMass(f"weights sum to {total}, expected 1")
    items = tuple(
        (originals[key], merged[key]) for key in sorted(merged) if merged[key] > 0
    )
    return FiniteDist(items)


def point_mass(outcome) -> FiniteDist:
    return dist_new([(outcome, Fraction(1))])


def uniform(outcomes: Iterable) -> FiniteDist:
    outcomes = list(outcomes)
    if not outcomes:
        raise NonUnitMass("uniform distribution needs a nonempty support")
    w = Fraction(1, len(outcomes))
    return dist_new([(o, w) for o in outcomes])


def bernoulli(p) -> FiniteDist:
    """Distribution on {0, 1} with mass p at 1."""
    p = as_rational(p)
    return dist_new([(0, 1 - p), (1, p)])


def pushforward(d: FiniteDist, f: Callable) -> FiniteDist:
    """Image distribution: weight of b is the mass of f-preimage of b."""
    return dist_new([(f(o), w) for o, w in d.items])


def condition(d: FiniteDist, event: Callable) -> FiniteDist:
    """Restrict to an event of positive mass and renormalize."""
    kept = [(o, w) for o, w in d.items if event(o)]
    total = sum((w for _, w in kept), Fraction(0))
    if total == 0:
        raise ZeroProbabilityEvent("conditioning event has zero mass")
    return dist_new([(o, w / total) for o, w in kept])


@dataclass(frozen=True)
class Kernel:
    """Finite association from input values to distributions.

    `entries` is the canonical table.  `rule` is an optional fallback used
    by design constructors whose input space is not known up front (e.g.
    value-dependent selection); models materialize rule-backed kernels into
    explicit tables over their actual input support.
    """

    entries: tuple  # ((input, FiniteDist), ...) sorted by input key
    rule: Callable | None = field(default=None, compare=False)

    @staticmethod
    def from_mapping(mapping, rule: Callable | None = None) -> "Kernel":
        pairs = list(mapping.items() if hasattr(mapping, "items") else mapping)
        pairs.sort(key=lambda kv: canonical_key(kv[0]))
        seen = set()
        for value, dist in pairs:
            key = canonical_key(value)
            if key in seen:
                raise IncomparableOutcomes(f"duplicate kernel input {value!r}")
            seen.add(key)
            if not isinstance(dist, FiniteDist):
                raise MissingKernelEntry(f"kernel value for {value!r} is not a FiniteDist")
        return Kernel(tuple(pairs), rule)

    @staticmethod
    def from_function(inputs: Iterable, fn: Callable) -> "Kernel":
        return Kernel.from_mapping({value: fn(value) for value in inputs})

    @staticmethod
    def from_rule(rule: Callable) -> "Kernel":
        return Kernel((), rule)

    def inputs(self) -> tuple:
        return tuple(v for v, _ in self.entries)

    def get(self, value) -> FiniteDist:
        key = canonical_key(value)
        for v, dist in self.entries:
            if canonical_key(v) == key:
                return dist
        if self.rule is not None:
            dist = self.rule(value)
            if not isinstance(dist, FiniteDist):
                raise MissingKernelEntry(f"kernel rule returned non-distribution for {value!r}")
            return dist
        raise MissingKernelEntry(f"kernel has no entry for {value!r}")

    def materialize(self, inputs: Iterable) -> "Kernel":
        """Explicit finite table over `inputs`.

        The rule is kept as a fallback so structural probes (signal
        completions outside the realized support) stay answerable."""
        return Kernel.from_mapping(
            {value: self.get(value) for value in inputs}, rule=self.rule
        )

    def canonical_key(self):
        return (4, "Kernel", canonical_key(tuple(self.entries)))


def constant_kernel(dist: FiniteDist) -> Kernel:
    """Kernel returning the same distribution for every input."""
    return Kernel.from_rule(lambda _value: dist)


def mix(outer: FiniteDist, k: Kernel) -> FiniteDist:
    """Compound distribution: weight(b) = sum_a outer(a) * k(a)(b)."""
    pairs = []
    for a, w in outer.items:
        inner = k.get(a)
        check_size(len(pairs) + len(inner.items), "mixture support")
        pairs.extend((b, w * wb) for b, wb in inner.items)
    return dist_new(pairs)


def joint(outer: FiniteDist, k: Kernel) -> FiniteDist:
    """Joint distribution of (a, b) with a ~ outer and b ~ k(a)."""
    pairs = []
    for a, w in outer.items:
        inner = k.get(a)
        check_size(len(pairs) + len(inner.items), "joint support")
        pairs.extend(((a, b), w * wb) for b, wb in inner.items)
    return dist_new(pairs)


def product(a: FiniteDist, b: FiniteDist) -> FiniteDist:
    """Independent product on pairs; both marginals recover the factors."""
    check_size(len(a.items) * len(b.items), "product support")
    return dist_new(
        [((oa, ob), wa * wb) for oa, wa in a.items for ob, wb in b.items]
    )


def expectation(d: FiniteDist, f: Callable) -> Fraction:
    return sum((as_rational(f(o)) * w for o, w in d.items), Fraction(0))


def dist_eq(a: FiniteDist, b: FiniteDist) -> bool:
    """Structural equality of canonical forms."""
    ka = tuple((canonical_key(o), w) for o, w in a.items)
    kb = tuple((canonical_key(o), w) for o, w in b.items)
    return ka == kb


def total_variation(a: FiniteDist, b: FiniteDist) -> Fraction:
    ma = {canonical_key(o): w for o, w in a.items}
    mb = {canonical_key(o): w for o, w in b.items}
    keys = set(ma) | set(mb)
    diff = sum(
        (abs(ma.get(k, Fraction(0)) - mb.get(k, Fraction(0))) for k in keys),
        Fraction(0),
    )
    return diff / 2
