"""Finite survey-sampling models: populations, signals, selections, designs.

A world is a triple (y, z, r): the signal y (one value per population unit,
stored as a tuple in population order), the design-variable value z, and the
realized selection mapping r (a tuple of unit labels, one per draw; r may
repeat labels when selection is with replacement).

The model family is indexed by a finite grid of (theta, phi) pairs.  For
each theta the signal law is a joint distribution over (y, z); for each phi
the design is a kernel mapping z to a distribution over selection mappings.
The defining structural constraint is that the selection kernel reads only
z, never y directly.  Value-dependent selections (select-the-max and other
informative mechanisms) are expressed by making z contain y, recorded in
the `z_contains_y` flag.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable

from .exactprob import (
    EngineError,
    FiniteDist,
    Kernel,
    canonical_key,
    check_size,
    dist_new,
    pushforward,
)


class GridMiss(EngineError):
    """A (theta, phi) pair outside the model grid."""


class UnknownObservation(EngineError):
    """An observation literal malformed for the scheme or alphabet."""


@dataclass(frozen=True)
class Population:
    """Finite ordered set of unit labels."""

    labels: tuple

    def __post_init__(self):
        if len(self.labels) < 1:
            raise EngineError("population must have at least one unit")
        if len(set(self.labels)) != len(self.labels):
            raise EngineError("population labels must be distinct")

    @property
    def size(self) -> int:
        return len(self.labels)

    def index(self, label) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise EngineError(f"unknown unit label {label!r}") from None

    def canonical_key(self):
        return (4, "Population", canonical_key(self.labels))


@dataclass(frozen=True)
class WorldState:
    """One elementary outcome: signal, design-variable value, selection."""

    y: tuple
    z: object
    r: tuple

    def canonical_key(self):
        return (4, "WorldState", canonical_key((self.y, self.z, self.r)))


def is_injective(r: tuple) -> bool:
    return len(set(r)) == len(r)


def drawn_values(world: WorldState, population: Population) -> tuple:
    """T[Y]: the signal evaluated along the selection, in draw order."""
    return tuple(world.y[population.index(k)] for k in world.r)


def indicator_vector(r: tuple, population: Population) -> tuple:
    """Per-unit membership indicator I: 1 iff the unit was drawn at all."""
    image = set(r)
    return tuple(1 if k in image else 0 for k in population.labels)


def count_vector(r: tuple, population: Population) -> tuple:
    """Per-unit draw count J; sums to the number of draws."""
    return tuple(sum(1 for drawn in r if drawn == k) for k in population.labels)


def inclusion_probabilities(delta: FiniteDist, population: Population) -> tuple:
    """pi_k = P(unit k in the sample) under the realized design delta."""
    out = []
    for k in population.labels:
        out.append(sum((w for r, w in delta.items if k in r), Fraction(0)))
    return tuple(out)


def selection_expectations(delta: FiniteDist, population: Population) -> tuple:
    """upsilon_k = expected number of times unit k is drawn under delta."""
    out = []
    for k in population.labels:
        out.append(
            sum((w * sum(1 for d in r if d == k) for r, w in delta.items), Fraction(0))
        )
    return tuple(out)


def _drawn_units(delta: FiniteDist) -> tuple:
    return tuple(sorted({k for r, _ in delta.items for k in r}, key=canonical_key))


def expected_distinct_size(delta: FiniteDist) -> Fraction:
    """Expected number of distinct sampled units; equals sum of pi_k."""
    value = sum((w * len(set(r)) for r, w in delta.items), Fraction(0))
    units = _drawn_units(delta)
    if units:
        pi = inclusion_probabilities(delta, Population(units))
        assert value == sum(pi, Fraction(0))
    return value


def expected_size(delta: FiniteDist) -> Fraction:
    """Expected number of draws; equals sum of upsilon_k."""
    value = sum((w * len(r) for r, w in delta.items), Fraction(0))
    units = _drawn_units(delta)
    if units:
        ups = selection_expectations(delta, Population(units))
        assert value == sum(ups, Fraction(0))
    return value


VALUES_ONLY = "values_only"
VALUES_AND_MAPPING = "values_and_mapping"
VALUES_MAPPING_DESIGN = "values_mapping_design"
VALUES_AND_SAMPLED_WEIGHTS = "values_and_sampled_weights"
CUSTOM = "custom"

SCHEME_KINDS = (
    VALUES_ONLY,
    VALUES_AND_MAPPING,
    VALUES_MAPPING_DESIGN,
    VALUES_AND_SAMPLED_WEIGHTS,
)


@dataclass(frozen=True)
class ObservationScheme:
    """What the statistician sees: a deterministic function of (T[Y], T, Z).

    `unordered` sorts the drawn-values tuple (labels and draw order both
    unidentifiable); it applies to the values-only scheme.
    """

    kind: str
    unordered: bool = False
    custom: Callable | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.kind == CUSTOM:
            if self.custom is None:
                raise EngineError("custom scheme needs an observation function")
        elif self.kind not in SCHEME_KINDS:
            raise EngineError(f"unknown observation scheme {self.kind!r}")

    def canonical_key(self):
        return (4, "ObservationScheme", canonical_key((self.kind, int(self.unordered))))


def values_only(unordered: bool = False) -> ObservationScheme:
    return ObservationScheme(VALUES_ONLY, unordered=unordered)


def values_and_mapping() -> ObservationScheme:
    return ObservationScheme(VALUES_AND_MAPPING)


def values_mapping_design() -> ObservationScheme:
    return ObservationScheme(VALUES_MAPPING_DESIGN)


def values_and_sampled_weights() -> ObservationScheme:
    return ObservationScheme(VALUES_AND_SAMPLED_WEIGHTS)


def custom_scheme(fn: Callable) -> ObservationScheme:
    return ObservationScheme(CUSTOM, custom=fn)


def observe(
    world: WorldState,
    scheme: ObservationScheme,
    population: Population,
    design: Kernel | None = None,
) -> object:
    """Apply the observation scheme to one world.

    The sampled-weights scheme pairs each drawn value with the inclusion
    probability of the drawn unit computed from the realized design
    delta = design(z); it therefore needs the design kernel.
    """
    values = drawn_values(world, population)
    if scheme.kind == CUSTOM:
        return scheme.custom(world)
    if scheme.kind == VALUES_ONLY:
        if scheme.unordered:
            return tuple(sorted(values, key=canonical_key))
        return values
    if scheme.kind == VALUES_AND_MAPPING:
        return (values, world.r)
    if scheme.kind == VALUES_MAPPING_DESIGN:
        return (values, world.r, world.z)
    if scheme.kind == VALUES_AND_SAMPLED_WEIGHTS:
        if design is None:
            raise EngineError("sampled-weights scheme needs the design kernel")
        pi = inclusion_probabilities(design.get(world.z), population)
        return tuple((v, pi[population.index(k)]) for v, k in zip(values, world.r))
    raise EngineError(f"unknown observation scheme {scheme.kind!r}")


def iid_signal_dist(
    population: Population, unit_dist: FiniteDist, z_of: Callable | None = None
) -> FiniteDist:
    """Joint (y, z) law for independent identically distributed unit values.

    `z_of` maps the signal tuple to the design-variable value it carries
    (identity for value-dependent designs, a constant for the rest)."""
    import itertools

    z_of = z_of or (lambda y: None)
    check_size(len(unit_dist.items) ** population.size, "signal support")
    pairs = []
    for combo in itertools.product(unit_dist.items, repeat=population.size):
        y = tuple(v for v, _ in combo)
        weight = Fraction(1)
        for _v, w in combo:
            weight *= w
        pairs.append(((y, z_of(y)), weight))
    return dist_new(pairs)


def signal_dist_from_table(
    table, z_of: Callable | None = None
) -> FiniteDist:
    """Joint (y, z) law from explicit (signal tuple, weight) pairs."""
    z_of = z_of or (lambda y: None)
    return dist_new([((tuple(y), z_of(tuple(y))), w) for y, w in table])


def _normalize_grid(thetas, phis, grid):
    if grid is not None:
        out = []
        for pair in grid:
            theta, phi = pair
            if theta not in thetas:
                raise GridMiss(f"grid theta {theta!r} not in theta grid")
            if phis and phi not in phis:
                raise GridMiss(f"grid phi {phi!r} not in phi grid")
            out.append((theta, phi))
        return tuple(out)
    if phis:
        return tuple((t, p) for t in thetas for p in phis)
    return tuple((t, None) for t in thetas)


@dataclass(frozen=True)
class SurveyModel:
    """Parameter-indexed family of world distributions.

    Fields are normalized by `SurveyModel.create`: grids are tuples, kernels
    are materialized over the z values the signal laws can produce, and the
    grid is the explicit list of live (theta, phi) pairs (phi is None when
    there is no nuisance grid).
    """

    population: Population
    thetas: tuple
    signal_law: dict  # theta -> FiniteDist over (y, z) pairs
    design: Kernel | None = None
    phis: tuple = ()
    design_law: dict | None = None  # phi -> Kernel
    grid: tuple = ()
    z_contains_y: bool = False
    alphabet: tuple = ()

    @staticmethod
    def create(
        population: Population,
        thetas: Iterable,
        signal_law,
        design: Kernel | None = None,
        phis: Iterable = (),
        design_law=None,
        grid=None,
        z_contains_y: bool = False,
    ) -> "SurveyModel":
        thetas = tuple(thetas)
        phis = tuple(phis)
        if not thetas:
            raise GridMiss("theta grid is empty")
        if design is None and design_law is None:
            raise EngineError("model needs a design kernel or a per-phi design law")
        if phis and design_law is None:
            raise EngineError("phi grid given without a design law")
        laws = {}
        z_values = []
        z_keys = set()
        value_set = {}
        n = population.size
        for theta in thetas:
            law = signal_law[theta] if not callable(signal_law) else signal_law(theta)
            if not isinstance(law, FiniteDist):
                raise EngineError(f"signal law for {theta!r} is not a FiniteDist")
            for (y, z), _w in law.items:
                if len(y) != n:
                    raise EngineError(
                        f"signal {y!r} does not cover the population exactly"
                    )
                for v in y:
                    value_set.setdefault(canonical_key(v), v)
                zk = canonical_key(z)
                if zk not in z_keys:
                    z_keys.add(zk)
                    z_values.append(z)
            laws[theta] = law
        alphabet = tuple(value_set[k] for k in sorted(value_set))
        if design is not None:
            design = design.materialize(z_values)
        materialized_law = None
        if design_law is not None:
            materialized_law = {}
            for phi in phis if phis else ():
                kern = design_law[phi] if not callable(design_law) else design_law(phi)
                materialized_law[phi] = kern.materialize(z_values)
        return SurveyModel(
            population=population,
            thetas=thetas,
            signal_law=laws,
            design=design,
            phis=phis,
            design_law=materialized_law,
            grid=_normalize_grid(thetas, phis, grid),
            z_contains_y=z_contains_y,
            alphabet=alphabet,
        )

    def design_for(self, phi=None) -> Kernel:
        if phi is None:
            if self.design is None:
                raise GridMiss("model has per-phi designs; phi required")
            return self.design
        if self.design_law is None or phi not in self.design_law:
            raise GridMiss(f"phi {phi!r} not in design law")
        return self.design_law[phi]

    def check_point(self, theta, phi=None) -> tuple:
        point = (theta, phi)
        if point not in self.grid:
            raise GridMiss(f"grid point {point!r} not in model grid")
        return point

    def world_space(self) -> tuple:
        """The structural world space: every (y, z) the signal laws can
        produce combined with every selection mapping any design can
        produce, including zero-probability combinations.

        Splits are classified here rather than on the positive-mass
        support: a deterministic selection (take-the-max) couples y and r
        almost surely, but the underlying space still varies them freely,
        which is what makes the signal/selection pair a distinct
        complement and gives the ignored model its plain marginals.
        """
        yz_keyed = {}
        for theta in self.thetas:
            for (y, z), _w in self.signal_law[theta].items:
                yz_keyed.setdefault(canonical_key((y, z)), (y, z))
        mappings = {}
        kernels = (
            [self.design]
            if self.design is not None
            else [self.design_law[phi] for phi in self.phis]
        )
        for kernel in kernels:
            for _z, delta in kernel.entries:
                for r, _w in delta.items:
                    mappings.setdefault(canonical_key(r), r)
        check_size(len(yz_keyed) * len(mappings), "world space")
        worlds = [
            WorldState(y, z, mappings[rk])
            for _k, (y, z) in sorted(yz_keyed.items())
            for rk in sorted(mappings)
        ]
        return tuple(sorted(worlds, key=canonical_key))


def build_joint(m: SurveyModel, theta, phi=None) -> FiniteDist:
    """Exact joint law of the world under one grid point.

    By construction the conditional law of r given (y, z) is the design
    kernel at z, so the structural constraint 'selection reads only z'
    holds for every model built without the z-contains-y opt-in.
    """
    m.check_point(theta, phi)
    sig = m.signal_law[theta]
    design = m.design_for(phi)
    pairs = []
    for (y, z), w in sig.items:
        delta = design.get(z)
        check_size(len(pairs) + len(delta.items), "world support")
        pairs.extend((WorldState(y, z, r), w * wr) for r, wr in delta.items)
    return dist_new(pairs)


def observation_distribution(
    m: SurveyModel, theta, phi=None, scheme: ObservationScheme = None
) -> FiniteDist:
    """Pushforward of the joint world law through the observation scheme."""
    if scheme is None:
        scheme = values_only()
    design = m.design_for(phi) if scheme.kind == VALUES_AND_SAMPLED_WEIGHTS else None
    world = build_joint(m, theta, phi)
    return pushforward(
        world, lambda w: observe(w, scheme, m.population, design=design)
    )


def validate_observation(m: SurveyModel, scheme: ObservationScheme, x) -> None:
    """Structural sanity check of an observation literal.

    Accepts any observation shaped for the scheme with values from the
    signal alphabet and units from the population; an impossible-but-well-
    formed observation is fine (its likelihood is simply zero everywhere).
    """
    alphabet_keys = {canonical_key(v) for v in m.alphabet}

    def check_values(values):
        if not isinstance(values, tuple):
            raise UnknownObservation(f"values part must be a tuple, got {values!r}")
        for v in values:
            if canonical_key(v) not in alphabet_keys:
                raise UnknownObservation(f"value {v!r} not in the signal alphabet")

    def check_mapping(r):
        if not isinstance(r, tuple):
            raise UnknownObservation(f"mapping part must be a tuple, got {r!r}")
        for k in r:
            if k not in m.population.labels:
                raise UnknownObservation(f"unit {k!r} not in the population")

    if scheme.kind == VALUES_ONLY:
        check_values(x)
    elif scheme.kind == VALUES_AND_MAPPING:
        if not isinstance(x, tuple) or len(x) != 2:
            raise UnknownObservation("expected (values, mapping)")
        check_values(x[0])
        check_mapping(x[1])
        if len(x[0]) != len(x[1]):
            raise UnknownObservation("values and mapping lengths differ")
    elif scheme.kind == VALUES_MAPPING_DESIGN:
        if not isinstance(x, tuple) or len(x) != 3:
            raise UnknownObservation("expected (values, mapping, z)")
        check_values(x[0])
        check_mapping(x[1])
        if len(x[0]) != len(x[1]):
            raise UnknownObservation("values and mapping lengths differ")
    elif scheme.kind == VALUES_AND_SAMPLED_WEIGHTS:
        if not isinstance(x, tuple):
            raise UnknownObservation("expected tuple of (value, weight) pairs")
        for pair in x:
            if not isinstance(pair, tuple) or len(pair) != 2:
                raise UnknownObservation("expected (value, weight) pairs")
            check_values((pair[0],))
