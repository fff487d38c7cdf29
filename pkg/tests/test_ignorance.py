"""Complement machinery, compatibility sets, and the ignore transformation."""

from fractions import Fraction as F

import pytest

from ignorability_lab.exactprob import (
    bernoulli,
    dist_eq,
    dist_new,
    point_mass,
    product,
    pushforward,
    uniform,
)
from ignorability_lab.designs import constant, srs_wor
from ignorability_lab.ignorance import (
    COMPLEMENT,
    DISTINCT_COMPLEMENT,
    NOT_COMPLEMENT,
    Family,
    MarginalFunctional,
    ParameterFunction,
    Predictand,
    RandomVariableRef,
    TargetNotTransformable,
    ValueNotInImage,
    ZeroMassPhiSet,
    atrandomize,
    classify_split,
    dirac_fix,
    ignore_model,
    make_split,
    marginal_family,
    phi_set,
    selection_rv,
    single_arbitrary,
    target_values,
    transform_target,
    variation_independent,
)
from ignorability_lab.sampling import (
    Population,
    SurveyModel,
    iid_signal_dist,
    values_and_mapping,
)

first = RandomVariableRef("first", lambda w: w[0])
second = RandomVariableRef("second", lambda w: w[1])

THREE_POINT = ((0, 0), (0, 1), (1, 0))
SQUARE = ((0, 0), (0, 1), (1, 0), (1, 1))


class TestClassifySplit:
    def test_three_point_is_plain_complement(self):
        split = classify_split(THREE_POINT, first, second)
        assert split.status == COMPLEMENT

    def test_square_is_distinct(self):
        split = classify_split(SQUARE, first, second)
        assert split.status == DISTINCT_COMPLEMENT

    def test_identity_with_constant(self):
        ident = RandomVariableRef("identity", lambda w: w)
        const = RandomVariableRef("constant", lambda w: "c")
        split = classify_split(THREE_POINT, ident, const)
        assert split.status == DISTINCT_COMPLEMENT

    def test_not_complement(self):
        # both variables read the same coordinate: pairs cannot separate
        split = classify_split(SQUARE, first, first)
        assert split.status == NOT_COMPLEMENT


class TestVariationIndependence:
    def test_full_product(self):
        assert variation_independent(lambda w: w[0], lambda w: w[1], SQUARE)

    def test_three_point(self):
        assert not variation_independent(lambda w: w[0], lambda w: w[1], THREE_POINT)

    def test_equal_nonconstant_maps(self):
        assert not variation_independent(lambda w: w[0], lambda w: w[0], SQUARE)


class TestPhiSet:
    def test_distinct_split_gives_whole_support(self):
        split = classify_split(SQUARE, first, second)
        for value in (0, 1):
            assert set(phi_set(value, split)) == set(SQUARE)

    def test_identity_v_unwinds_to_preimage(self):
        ident = RandomVariableRef("identity", lambda w: w)
        split = classify_split(SQUARE, ident, second)
        assert set(phi_set(1, split)) == {(0, 1), (1, 1)}

    def test_three_point_chain(self):
        # worlds with second=1 have first=0; first=0 also occurs at (0,0)
        split = classify_split(THREE_POINT, first, second)
        assert set(phi_set(1, split)) == {(0, 0), (0, 1)}
        assert set(phi_set(0, split)) == set(THREE_POINT)

    def test_value_not_in_image(self):
        split = classify_split(THREE_POINT, first, second)
        with pytest.raises(ValueNotInImage):
            phi_set(7, split)


class TestAtrandomize:
    def test_product_measure_is_fixed_point(self):
        P = product(bernoulli(F(1, 3)), bernoulli(F(1, 4)))
        split = classify_split(P.support(), first, second)
        assert dist_eq(atrandomize(P, split), P)

    def test_point_mass(self):
        P = point_mass((1, 0))
        split = classify_split(P.support(), first, second)
        assert dist_eq(atrandomize(P, split), P)

    def test_three_point_redistribution(self):
        # hand enumeration: Phi(0) is the whole support, Phi(1)={(0,0),(0,1)};
        # mixing the conditioned first-coordinate laws against the second
        # marginal (2/3, 1/3) gives 4/9, 1/3, 2/9
        P = uniform(THREE_POINT)
        split = classify_split(THREE_POINT, first, second)
        got = atrandomize(P, split)
        want = dist_new([((0, 0), F(4, 9)), ((0, 1), F(1, 3)), ((1, 0), F(2, 9))])
        assert dist_eq(got, want)

    def test_distinct_split_idempotent_and_product(self):
        P = dist_new(
            [((0, 0), F(1, 8)), ((0, 1), F(3, 8)), ((1, 0), F(1, 4)), ((1, 1), F(1, 4))]
        )
        split = classify_split(P.support(), first, second)
        once = atrandomize(P, split)
        margins = product(pushforward(P, first), pushforward(P, second))
        assert dist_eq(once, margins)
        assert dist_eq(atrandomize(once, split), once)

    def test_zero_mass_phi(self):
        # support has (1, 1) but this law never reaches first=1
        split = classify_split(((0, 0), (1, 1)), first, second)
        P = dist_new([((0, 0), F(1))])
        with pytest.raises(ZeroMassPhiSet):
            atrandomize(P, split, nuisance=uniform([0, 1]))


def two_by_two_family():
    """Two correlated laws on the square and their projections."""
    laws = {
        "p": dist_new(
            [((0, 0), F(1, 2)), ((0, 1), F(1, 6)), ((1, 0), F(1, 6)), ((1, 1), F(1, 6))]
        ),
        "q": dist_new(
            [((0, 0), F(1, 4)), ((0, 1), F(1, 4)), ((1, 0), F(1, 4)), ((1, 1), F(1, 4))]
        ),
    }
    obs = {k: (lambda w: w[0]) for k in laws}
    return Family(("p", "q"), laws, obs)


class TestIgnoreModel:
    def test_dirac_fix_grid_and_laws(self):
        fam = two_by_two_family()
        split = make_split(fam, first, second)
        ignored = ignore_model(fam, split, dirac_fix())
        assert ignored.points == (("p", 0), ("p", 1), ("q", 0), ("q", 1))
        # fixing the nuisance at 1: first-law conditioned on Phi(1)=support,
        # second pinned at 1
        law = ignored.laws[("p", 1)]
        assert dist_eq(
            pushforward(law, second), point_mass(1)
        )
        assert dist_eq(
            pushforward(law, first), pushforward(fam.laws["p"], first)
        )

    def test_marginal_family_keeps_margins_and_independence(self):
        fam = two_by_two_family()
        split = make_split(fam, first, second)
        ignored = ignore_model(fam, split, marginal_family())
        for label in ("p", "q"):
            law = ignored.laws[(label, label)]
            pv = pushforward(fam.laws[label], first)
            pvb = pushforward(fam.laws[label], second)
            assert dist_eq(pushforward(law, first), pv)
            assert dist_eq(pushforward(law, second), pvb)
            assert dist_eq(law, product(pv, pvb))

    def test_independent_family_is_unchanged_by_marginal_policy(self):
        laws = {
            "p": product(bernoulli(F(1, 3)), bernoulli(F(1, 2))),
            "q": product(bernoulli(F(2, 3)), bernoulli(F(1, 2))),
        }
        fam = Family(("p", "q"), laws, {k: (lambda w: w[0]) for k in laws})
        split = make_split(fam, first, second)
        ignored = ignore_model(fam, split, marginal_family())
        for label in ("p", "q"):
            assert dist_eq(ignored.laws[(label, label)], laws[label])

    def test_single_arbitrary_default_uniform(self):
        fam = two_by_two_family()
        split = make_split(fam, first, second)
        ignored = ignore_model(fam, split, single_arbitrary())
        law = ignored.laws[("p", "arbitrary")]
        assert dist_eq(pushforward(law, second), uniform([0, 1]))
        assert ignored.flags["ignored"]["arbitrary_default"].startswith("uniform")

    def test_fixed_population_ignore(self):
        # ignoring (signal, design variable) with a fixed nuisance yields
        # the design-based families: point-mass signal laws, design law kept
        pop = Population((1, 2))
        m = SurveyModel.create(
            population=pop,
            thetas=(F(1, 3),),
            signal_law={F(1, 3): iid_signal_dist(pop, bernoulli(F(1, 3)))},
            design=constant(srs_wor(1, pop)),
        )
        fam = Family.from_survey_model(m, values_and_mapping())
        y_and_z = RandomVariableRef("signal_and_z", lambda w: (w.y, w.z))
        split = make_split(fam, selection_rv(), y_and_z)
        ignored = ignore_model(fam, split, dirac_fix())
        for (point, (y, z)) in ignored.points:
            law = ignored.laws[(point, (y, z))]
            assert dist_eq(pushforward(law, lambda w: w.y), point_mass(y))
            assert dist_eq(
                pushforward(law, lambda w: w.r), srs_wor(1, pop)
            )


class TestDistinctSplitAlgebra:
    def test_pair_reconstruction_is_bijective(self):
        # on a distinct split the value pair determines the world and every
        # pair of values is realized
        support = SQUARE
        split = classify_split(support, first, second)
        assert split.status == DISTINCT_COMPLEMENT
        pairs = {(split.v(w), split.v_bar(w)) for w in support}
        assert len(pairs) == len(support)
        assert pairs == {(a, b) for a in (0, 1) for b in (0, 1)}

    def test_marginal_policy_set_equality_for_independent_family(self):
        # distinct margins per law: pairing each law with its own nuisance
        # marginal returns exactly the original family
        laws = {
            "p": product(bernoulli(F(1, 3)), bernoulli(F(1, 4))),
            "q": product(bernoulli(F(2, 3)), bernoulli(F(3, 4))),
        }
        fam = Family(("p", "q"), laws, {k: (lambda w: w[0]) for k in laws})
        split = make_split(fam, first, second)
        ignored = ignore_model(fam, split, marginal_family())
        assert ignored.points == (("p", "p"), ("q", "q"))
        got = {canonical_key_of(d) for d in ignored.laws.values()}
        want = {canonical_key_of(d) for d in laws.values()}
        assert got == want


def canonical_key_of(dist):
    from ignorability_lab.exactprob import canonical_key

    return canonical_key(dist)


from hypothesis import given
import hypothesis.strategies as st


class TestAtrandomizeProperties:
    @given(st.lists(st.integers(1, 9), min_size=4, max_size=4))
    def test_distinct_split_idempotence(self, loads):
        total = sum(loads)
        P = dist_new([(w, F(n, total)) for w, n in zip(SQUARE, loads)])
        split = classify_split(SQUARE, first, second)
        once = atrandomize(P, split)
        assert dist_eq(atrandomize(once, split), once)

    @given(st.lists(st.integers(1, 9), min_size=3, max_size=3))
    def test_three_point_mass_conservation(self, loads):
        total = sum(loads)
        P = dist_new([(w, F(n, total)) for w, n in zip(THREE_POINT, loads)])
        split = classify_split(THREE_POINT, first, second)
        out = atrandomize(P, split)
        assert sum(out.weights(), F(0)) == 1
        # the law of the process of interest within each nuisance class is
        # preserved up to the compatibility conditioning; total first-
        # marginal support never grows
        assert set(pushforward(out, first).support()) <= set(
            pushforward(P, first).support()
        )


class TestTargets:
    def test_predictand_passes_through(self):
        fam = two_by_two_family()
        split = make_split(fam, first, second)
        ignored = ignore_model(fam, split, dirac_fix())
        t = Predictand("first_coord", lambda w: w[0])
        assert transform_target(t, fam, ignored) is t

    def test_marginal_functional_same_formula(self):
        fam = two_by_two_family()
        split = make_split(fam, first, second)
        ignored = ignore_model(fam, split, marginal_family())
        t = MarginalFunctional("first_law", first, lambda d: d)
        values = target_values(t, fam)
        starred = target_values(transform_target(t, fam, ignored), ignored)
        for label in ("p", "q"):
            assert dist_eq(values[label], starred[(label, label)])

    def test_parameter_function_restriction_fails_off_family(self):
        fam = two_by_two_family()
        split = make_split(fam, first, second)
        ignored = ignore_model(fam, split, dirac_fix())
        t = ParameterFunction("index", lambda p: p)
        with pytest.raises(TargetNotTransformable):
            transform_target(t, fam, ignored)

    def test_parameter_function_restriction_succeeds_on_subset(self):
        laws = {
            "p": product(bernoulli(F(1, 3)), bernoulli(F(1, 2))),
            "q": product(bernoulli(F(2, 3)), bernoulli(F(1, 2))),
        }
        fam = Family(("p", "q"), laws, {k: (lambda w: w[0]) for k in laws})
        split = make_split(fam, first, second)
        ignored = ignore_model(fam, split, marginal_family())
        t = ParameterFunction("index", lambda p: p)
        t_star = transform_target(t, fam, ignored)
        assert t_star.fn(("p", "p")) == "p"
        assert t_star.fn(("q", "q")) == "q"

    def test_predictand_has_no_point_value(self):
        fam = two_by_two_family()
        with pytest.raises(TargetNotTransformable):
            target_values(Predictand("w0", lambda w: w[0]), fam)
