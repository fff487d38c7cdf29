"""Seeded simulation cross-check against the exact engine.

The pseudo-random source is SplitMix64 used as a pure counter-based
generator: draw i of stream `seed` is

    u64(seed, i) = mix64((seed + (i + 1) * 0x9E3779B97F4A7C15) mod 2^64)
    u(seed, i)   = u64(seed, i) / 2^64

where mix64 is the standard SplitMix64 finalizer.  Worlds are drawn by
inverse CDF over the canonical support order, comparing the exact rational
cumulative weights against u as the exact rational u64/2^64, so streams
are bit-reproducible and independent of platform float behaviour.  Floats
appear only at the comparison boundary of the report.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .exactprob import FiniteDist, canonical_key
from .sampling import (
    ObservationScheme,
    SurveyModel,
    WorldState,
    build_joint,
    observation_distribution,
    observe,
)

GOLDEN_GAMMA = 0x9E3779B97F4A7C15
MASK64 = (1 << 64) - 1


def mix64(value: int) -> int:
    z = value & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def u64(seed: int, index: int) -> int:
    return mix64((seed + (index + 1) * GOLDEN_GAMMA) & MASK64)


def _thresholds(dist: FiniteDist):
    """Integer draw thresholds: atom i is selected iff u64 <= T_i and
    u64 > T_{i-1}.  T_i = ceil(cum_i * 2^64) - 1 makes the integer
    comparison exactly equivalent to cum_i > u64 / 2^64."""
    acc = Fraction(0)
    outcomes = []
    cutoffs = []
    for outcome, weight in dist.items:
        acc += weight
        outcomes.append(outcome)
        cutoffs.append(math.ceil(acc * (1 << 64)) - 1)
    return outcomes, cutoffs


def _draw_index(cutoffs, value: int) -> int:
    import bisect

    return bisect.bisect_left(cutoffs, value)


def sample_world(
    m: SurveyModel, theta, phi=None, seed: int = 0, index: int = 0
) -> WorldState:
    """Deterministic world draw: inverse CDF of the exact joint at draw
    `index` of stream `seed`."""
    outcomes, cutoffs = _thresholds(build_joint(m, theta, phi))
    return outcomes[_draw_index(cutoffs, u64(seed, index))]


@dataclass(frozen=True)
class McCell:
    outcome: object
    exact: Fraction
    count: int
    draws: int

    @property
    def frequency(self) -> float:
        return self.count / self.draws

    @property
    def band(self) -> float:
        p = float(self.exact)
        return 3.0 * math.sqrt(p * (1.0 - p) / self.draws)

    @property
    def deviation(self) -> float:
        return abs(self.frequency - float(self.exact))

    @property
    def within(self) -> bool:
        return self.deviation <= self.band


@dataclass(frozen=True)
class McReport:
    draws: int
    seed: int
    cells: tuple
    max_abs_deviation: float
    three_sigma_bound: float

    @property
    def cells_outside(self) -> int:
        return sum(1 for c in self.cells if not c.within)

    @property
    def all_within(self) -> bool:
        return self.cells_outside == 0


def compare_exact_vs_mc(
    m: SurveyModel,
    theta,
    phi=None,
    scheme: ObservationScheme | None = None,
    draws: int = 10_000,
    seed: int = 0,
) -> McReport:
    """Empirical observation frequencies of `draws` seeded worlds against
    the exact observation distribution, with a three-sigma binomial band
    per outcome."""
    if draws < 1:
        raise ValueError("draws must be at least 1")
    from .sampling import values_only

    scheme = scheme or values_only()
    exact = observation_distribution(m, theta, phi, scheme)
    joint = build_joint(m, theta, phi)
    design = (
        m.design_for(phi) if scheme.kind == "values_and_sampled_weights" else None
    )
    # observations precomputed per world atom; each draw is an index lookup
    outcomes, cutoffs = _thresholds(joint)
    obs_of = [
        canonical_key(observe(w, scheme, m.population, design=design))
        for w in outcomes
    ]
    counts: dict = {}
    for i in range(draws):
        key = obs_of[_draw_index(cutoffs, u64(seed, i))]
        counts[key] = counts.get(key, 0) + 1
    cells = []
    for outcome, weight in exact.items:
        key = canonical_key(outcome)
        cells.append(
            McCell(outcome=outcome, exact=weight, count=counts.get(key, 0), draws=draws)
        )
    max_dev = max((c.deviation for c in cells), default=0.0)
    bound = max((c.band for c in cells), default=0.0)
    return McReport(
        draws=draws,
        seed=seed,
        cells=tuple(cells),
        max_abs_deviation=max_dev,
        three_sigma_bound=bound,
    )
