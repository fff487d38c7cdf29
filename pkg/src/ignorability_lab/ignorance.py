"""Splitting a model into a process of interest and a nuisance process,
and transforming the model to ignore the nuisance.

A split is a pair of random variables (v, v_bar) on the model's world
support.  v_bar complements v when the value pair (v(w), v_bar(w))
identifies w; the complement is distinct when every combination of a
v-value and a v_bar-value is realized, i.e. the joint image is the full
product of the images.

Ignoring v_bar rebuilds each model distribution so that all stochastic
dependence between v and v_bar is severed: for each nuisance value, the
law of v is conditioned on the compatibility set Phi(v_bar-value), paired
with that value, mapped back to a world, and mixed against a nuisance
distribution chosen by policy (fix it, pick one arbitrary law, or reuse
each model's own marginal).  On a distinct complement this reduces to the
product of the two marginals.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable

from .exactprob import (
    EngineError,
    FiniteDist,
    canonical_key,
    dist_eq,
    dist_new,
    point_mass,
    pushforward,
    uniform,
)
from .sampling import (
    ObservationScheme,
    SurveyModel,
    build_joint,
    drawn_values,
    observe,
)

COMPLEMENT = "complement"
DISTINCT_COMPLEMENT = "distinct_complement"
NOT_COMPLEMENT = "not_complement"


class NotAComplement(EngineError):
    """The split does not jointly separate the world support."""


class ZeroMassPhiSet(EngineError):
    """Some model law puts zero mass on a compatibility set."""


class ValueNotInImage(EngineError):
    """A nuisance value outside the image of the nuisance variable."""


class TargetNotTransformable(EngineError):
    """No natural counterpart of the target exists in the ignored model."""


@dataclass(frozen=True)
class RandomVariableRef:
    """Named evaluator on world states."""

    name: str
    fn: Callable = field(compare=False)

    def __call__(self, world):
        return self.fn(world)

    def canonical_key(self):
        return (4, "RandomVariableRef", canonical_key(self.name))


def signal_rv() -> RandomVariableRef:
    return RandomVariableRef("signal", lambda w: w.y)


def design_variable_rv() -> RandomVariableRef:
    return RandomVariableRef("design_variable", lambda w: w.z)


def selection_rv() -> RandomVariableRef:
    return RandomVariableRef("selection", lambda w: w.r)


def values_on_sample_rv(population) -> RandomVariableRef:
    return RandomVariableRef(
        "values_on_sample", lambda w: drawn_values(w, population)
    )


def composite_rv(refs: Iterable[RandomVariableRef]) -> RandomVariableRef:
    refs = tuple(refs)
    if len(refs) == 1:
        return refs[0]
    name = "(" + ",".join(r.name for r in refs) + ")"
    return RandomVariableRef(name, lambda w: tuple(r(w) for r in refs))


@dataclass(frozen=True)
class ProcessSplit:
    """A (v, v_bar) pair with its computed complement status and the world
    support it was classified on."""

    v: RandomVariableRef
    v_bar: RandomVariableRef
    status: str
    support: tuple = field(compare=False)

    def is_complement(self) -> bool:
        return self.status in (COMPLEMENT, DISTINCT_COMPLEMENT)


def variation_independent(h: Callable, h_prime: Callable, support: Iterable) -> bool:
    """Literal image-product test: image(h, h') == image(h) x image(h')."""
    support = list(support)
    pairs = {(canonical_key(h(w)), canonical_key(h_prime(w))) for w in support}
    left = {k for k, _ in pairs}
    right = {k for _, k in pairs}
    return len(pairs) == len(left) * len(right)


def classify_split(
    support: Iterable, v: RandomVariableRef, v_bar: RandomVariableRef
) -> ProcessSplit:
    """Compute the complement status of (v, v_bar) on a world support."""
    support = tuple(support)
    seen: dict = {}
    injective = True
    for w in support:
        pair = (canonical_key(v(w)), canonical_key(v_bar(w)))
        if pair in seen and canonical_key(seen[pair]) != canonical_key(w):
            injective = False
            break
        seen[pair] = w
    if not injective:
        status = NOT_COMPLEMENT
    elif variation_independent(v, v_bar, support):
        status = DISTINCT_COMPLEMENT
    else:
        status = COMPLEMENT
    return ProcessSplit(v=v, v_bar=v_bar, status=status, support=support)


def phi_set(v_bar_value, split: ProcessSplit) -> tuple:
    """Compatibility set for a nuisance value: all worlds whose v-value
    co-occurs (somewhere on the support) with that nuisance value."""
    key = canonical_key(v_bar_value)
    matching = [w for w in split.support if canonical_key(split.v_bar(w)) == key]
    if not matching:
        raise ValueNotInImage(f"{v_bar_value!r} not in the image of {split.v_bar.name}")
    v_keys = {canonical_key(split.v(w)) for w in matching}
    return tuple(w for w in split.support if canonical_key(split.v(w)) in v_keys)


def _reconstructor(split: ProcessSplit) -> dict:
    """The inverse of w -> (v(w), v_bar(w)), as a lookup table."""
    table = {}
    for w in split.support:
        table[(canonical_key(split.v(w)), canonical_key(split.v_bar(w)))] = w
    return table


def atrandomize(
    P: FiniteDist, split: ProcessSplit, nuisance: FiniteDist | None = None
) -> FiniteDist:
    """Sever the dependence between v and v_bar in one distribution.

    The nuisance marginal defaults to P's own.  On a distinct complement
    the result is the product of the marginals mapped back to worlds, and
    the operator is idempotent there.
    """
    if not split.is_complement():
        raise NotAComplement(
            f"({split.v.name}, {split.v_bar.name}) does not separate the support"
        )
    if nuisance is None:
        nuisance = pushforward(P, split.v_bar)
    table = _reconstructor(split)
    pairs = []
    for v_bar_value, outer_w in nuisance.items:
        phi = phi_set(v_bar_value, split)
        phi_keys = {canonical_key(w) for w in phi}
        conditioned = _condition_on_keys(P, phi_keys, split, v_bar_value)
        vb_key = canonical_key(v_bar_value)
        for w, inner_w in conditioned.items:
            target = table[(canonical_key(split.v(w)), vb_key)]
            pairs.append((target, outer_w * inner_w))
    return dist_new(pairs)


def _condition_on_keys(P, phi_keys, split, v_bar_value) -> FiniteDist:
    kept = [(w, mass) for w, mass in P.items if canonical_key(w) in phi_keys]
    total = sum((mass for _, mass in kept), Fraction(0))
    if total == 0:
        raise ZeroMassPhiSet(
            f"compatibility set of {split.v_bar.name}={v_bar_value!r} has zero mass"
        )
    return dist_new([(w, mass / total) for w, mass in kept])


DIRAC_FIX = "dirac_fix"
SINGLE_ARBITRARY = "single_arbitrary"
MARGINAL_FAMILY = "marginal_family"


@dataclass(frozen=True)
class NuisancePolicy:
    """How the ignored model re-randomizes the nuisance process.

    dirac_fix treats the nuisance as fixed (one Dirac law per nuisance
    value); single_arbitrary uses one distribution on the nuisance image
    (uniform unless given); marginal_family reuses each model law's own
    nuisance marginal.
    """

    kind: str
    dist: FiniteDist | None = None

    def __post_init__(self):
        if self.kind not in (DIRAC_FIX, SINGLE_ARBITRARY, MARGINAL_FAMILY):
            raise EngineError(f"unknown nuisance policy {self.kind!r}")


def dirac_fix() -> NuisancePolicy:
    return NuisancePolicy(DIRAC_FIX)


def single_arbitrary(dist: FiniteDist | None = None) -> NuisancePolicy:
    return NuisancePolicy(SINGLE_ARBITRARY, dist)


def marginal_family() -> NuisancePolicy:
    return NuisancePolicy(MARGINAL_FAMILY)


class Family:
    """A finite labeled family of exact world distributions.

    This is the general object the equivalence tests operate on: the
    original survey model induces one (labels are (theta, phi) grid
    points), and ignoring a process produces another over the same world
    support (labels are (original label, nuisance index) pairs).
    """

    def __init__(self, points, laws, obs_fns, support=None, space=None, flags=None):
        self.points = tuple(points)
        self.laws = dict(laws)
        self.obs_fns = dict(obs_fns)
        if support is None:
            keyed = {}
            for p in self.points:
                for w, _m in self.laws[p].items:
                    keyed.setdefault(canonical_key(w), w)
            support = tuple(keyed[k] for k in sorted(keyed))
        self.support = tuple(support)
        # the measurable space may be larger than the union of supports:
        # zero-probability worlds still shape complements and Phi-sets
        self.space = tuple(space) if space is not None else self.support
        self.flags = dict(flags or {})
        self._obs_cache: dict = {}

    @staticmethod
    def from_survey_model(m: SurveyModel, scheme: ObservationScheme) -> "Family":
        laws = {}
        obs_fns = {}
        for theta, phi in m.grid:
            point = (theta, phi)
            laws[point] = build_joint(m, theta, phi)
            design = m.design_for(phi) if scheme.kind == "values_and_sampled_weights" else None
            obs_fns[point] = _observe_closure(scheme, m.population, design)
        flags = {"z_contains_y": m.z_contains_y}
        return Family(m.grid, laws, obs_fns, space=m.world_space(), flags=flags)

    def law(self, point) -> FiniteDist:
        return self.laws[point]

    def observation_dist(self, point) -> FiniteDist:
        if point not in self._obs_cache:
            self._obs_cache[point] = pushforward(
                self.laws[point], self.obs_fns[point]
            )
        return self._obs_cache[point]

    def observation_support(self) -> tuple:
        keyed = {}
        for p in self.points:
            for x, _m in self.observation_dist(p).items:
                keyed.setdefault(canonical_key(x), x)
        return tuple(keyed[k] for k in sorted(keyed))

    def marginal(self, point, rv: RandomVariableRef) -> FiniteDist:
        return pushforward(self.laws[point], rv)


def _observe_closure(scheme, population, design):
    return lambda w: observe(w, scheme, population, design=design)


def make_split(
    family: Family, v: RandomVariableRef, v_bar: RandomVariableRef
) -> ProcessSplit:
    """Classify (v, v_bar) on the family's world space.

    The space is model-global (never per parameter point) and structural:
    it includes zero-probability worlds, so an almost-sure coupling such
    as a deterministic selection does not change the complement status."""
    return classify_split(family.space, v, v_bar)


def ignore_model(
    family: Family, split: ProcessSplit, policy: NuisancePolicy
) -> Family:
    """The family obtained after ignoring the nuisance process.

    New labels are (original label, nuisance index) pairs; the nuisance
    index is the fixed value under dirac_fix, the marker "arbitrary" under
    single_arbitrary, and the donor label under marginal_family.  Requires
    every original law to put positive mass on every compatibility set.
    """
    if not split.is_complement():
        raise NotAComplement(
            f"({split.v.name}, {split.v_bar.name}) does not separate the support"
        )
    image_keyed = {}
    for w in split.support:
        value = split.v_bar(w)
        image_keyed.setdefault(canonical_key(value), value)
    image = [image_keyed[k] for k in sorted(image_keyed)]

    for point in family.points:
        law = family.laws[point]
        for value in image:
            phi_keys = {canonical_key(w) for w in phi_set(value, split)}
            if not any(canonical_key(w) in phi_keys for w, _ in law.items):
                raise ZeroMassPhiSet(
                    f"law at {point!r} has zero mass on the compatibility set "
                    f"of {split.v_bar.name}={value!r}"
                )

    # (original point, nuisance index, nuisance law) triples; the grid of
    # the ignored family is the set of (point, index) pairs
    if policy.kind == DIRAC_FIX:
        triples = [
            (point, value, point_mass(value))
            for point in family.points
            for value in image
        ]
    elif policy.kind == SINGLE_ARBITRARY:
        dist = policy.dist if policy.dist is not None else uniform(image)
        for value, _w in dist.items:
            if canonical_key(value) not in image_keyed:
                raise ValueNotInImage(
                    f"arbitrary nuisance law puts mass outside the image of "
                    f"{split.v_bar.name}"
                )
        triples = [(point, "arbitrary", dist) for point in family.points]
    else:
        # each law re-randomized against its own nuisance marginal; under a
        # distinct complement this is the product of the two marginals, so
        # an already-independent family is returned unchanged
        triples = [
            (point, point, pushforward(family.laws[point], split.v_bar))
            for point in family.points
        ]

    points = []
    laws = {}
    obs_fns = {}
    for point, index, nuisance in triples:
        new_point = (point, index)
        points.append(new_point)
        laws[new_point] = atrandomize(family.laws[point], split, nuisance)
        obs_fns[new_point] = family.obs_fns[point]
    flags = dict(family.flags)
    flags["ignored"] = {
        "nuisance": split.v_bar.name,
        "policy": policy.kind,
        "split_status": split.status,
    }
    if policy.kind == SINGLE_ARBITRARY and policy.dist is None:
        flags["ignored"]["arbitrary_default"] = "uniform over the nuisance image"
    return Family(points, laws, obs_fns, support=family.support, flags=flags)


@dataclass(frozen=True)
class Predictand:
    """Target that is a function of the world only (prediction)."""

    name: str
    fn: Callable = field(compare=False)


@dataclass(frozen=True)
class MarginalFunctional:
    """Target that is a function of the law of one random variable
    (estimation of a feature of the signal model, typically)."""

    name: str
    var: RandomVariableRef
    fn: Callable = field(compare=False)


@dataclass(frozen=True)
class ParameterFunction:
    """Target that is a function of the family point label itself."""

    name: str
    fn: Callable = field(compare=False)


def target_values(target, family: Family) -> dict:
    """Evaluate a point-indexed target on every family point.

    Predictands are world functions, not point functions; they have no
    per-point value and cannot index likelihood or estimator tables.
    """
    if isinstance(target, MarginalFunctional):
        return {
            p: target.fn(family.marginal(p, target.var)) for p in family.points
        }
    if isinstance(target, ParameterFunction):
        return {p: target.fn(p) for p in family.points}
    raise TargetNotTransformable(
        f"target {getattr(target, 'name', target)!r} has no per-point value"
    )


def transform_target(target, family: Family, ignored: Family):
    """Natural counterpart of the target in the ignored family.

    A predictand transfers unchanged; a marginal functional is the same
    formula applied to the ignored laws; a function of the label only
    survives when every ignored law coincides with some original law (the
    restriction case), and raises otherwise.
    """
    if isinstance(target, (Predictand, MarginalFunctional)):
        return target
    if isinstance(target, ParameterFunction):
        mapping = {}
        originals = [(p, family.laws[p]) for p in family.points]
        for q in ignored.points:
            law = ignored.laws[q]
            matches = [p for p, orig in originals if dist_eq(orig, law)]
            if not matches:
                raise TargetNotTransformable(
                    f"ignored law at {q!r} equals no original law; the label "
                    f"target does not restrict"
                )
            values = {canonical_key(target.fn(p)): target.fn(p) for p in matches}
            if len(values) > 1:
                raise TargetNotTransformable(
                    f"ignored law at {q!r} matches originals with conflicting "
                    f"target values"
                )
            mapping[q] = next(iter(values.values()))
        return ParameterFunction(
            name=target.name + "_restricted", fn=lambda q: mapping[q]
        )
    raise TargetNotTransformable(f"unsupported target {target!r}")
