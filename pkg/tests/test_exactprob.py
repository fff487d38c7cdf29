"""Exact-probability kernel: frozen examples and algebraic properties."""

from fractions import Fraction as F

import pytest
from hypothesis import given
import hypothesis.strategies as st

from ignorability_lab.exactprob import (
    IncomparableOutcomes,
    Kernel,
    MissingKernelEntry,
    ModelTooLarge,
    NegativeWeight,
    NonUnitMass,
    ZeroProbabilityEvent,
    bernoulli,
    canonical_key,
    condition,
    dist_eq,
    dist_new,
    expectation,
    joint,
    mix,
    point_mass,
    product,
    pushforward,
    total_variation,
    uniform,
)


def weights_strategy(max_atoms=6):
    """Positive integer loads normalized to exact rational weights."""
    return st.lists(st.integers(1, 9), min_size=1, max_size=max_atoms)


def dist_from_loads(loads, outcomes=None):
    total = sum(loads)
    if outcomes is None:
        outcomes = range(len(loads))
    return dist_new([(o, F(w, total)) for o, w in zip(outcomes, loads)])


class TestDistNew:
    def test_uniform_coin(self):
        d = dist_new([("H", F(1, 2)), ("T", F(1, 2))])
        assert d.mass("H") == F(1, 2)
        assert d.mass("T") == F(1, 2)

    def test_duplicates_merge(self):
        d = dist_new([("a", F(1, 3)), ("a", F(1, 3)), ("b", F(1, 3))])
        assert d.mass("a") == F(2, 3)
        assert d.mass("b") == F(1, 3)
        assert len(d) == 2

    def test_mass_deficit(self):
        with pytest.raises(NonUnitMass):
            dist_new([("a", F(1, 2))])

    def test_mass_excess(self):
        with pytest.raises(NonUnitMass):
            dist_new([("a", F(1, 2)), ("b", F(2, 3))])

    def test_negative_weight(self):
        with pytest.raises(NegativeWeight):
            dist_new([("a", F(3, 2)), ("b", F(-1, 2))])

    def test_zero_atoms_dropped(self):
        d = dist_new([("a", F(1)), ("b", F(0))])
        assert d.support() == ("a",)

    def test_float_weight_rejected(self):
        with pytest.raises(IncomparableOutcomes):
            dist_new([("a", 0.5), ("b", 0.5)])

    def test_float_outcome_rejected(self):
        with pytest.raises(IncomparableOutcomes):
            dist_new([(0.5, F(1))])

    def test_support_cap(self, monkeypatch):
        monkeypatch.setenv("IGNORABILITY_LAB_MAX_SUPPORT", "3")
        with pytest.raises(ModelTooLarge):
            uniform(range(4))
        assert len(uniform(range(3))) == 3


class TestPushforward:
    def test_parity_of_uniform(self):
        d = uniform([1, 2, 3, 4])
        f = lambda n: "even" if n % 2 == 0 else "odd"
        assert dist_eq(
            pushforward(d, f), dist_new([("even", F(1, 2)), ("odd", F(1, 2))])
        )

    def test_identity(self):
        d = dist_from_loads([1, 2, 3])
        assert dist_eq(pushforward(d, lambda o: o), d)

    def test_max_of_two_uniform(self):
        # frozen by enumerating all 4 pairs: max=1 only for (1,1)
        d = uniform([(a, b) for a in (1, 2) for b in (1, 2)])
        pushed = pushforward(d, lambda p: max(p))
        assert dist_eq(pushed, dist_new([(1, F(1, 4)), (2, F(3, 4))]))

    @given(weights_strategy())
    def test_functoriality(self, loads):
        d = dist_from_loads(loads)
        f = lambda n: n % 3
        g = lambda n: n * 2
        assert dist_eq(
            pushforward(pushforward(d, f), g), pushforward(d, lambda n: g(f(n)))
        )


class TestCondition:
    def test_uniform_tail(self):
        d = uniform([1, 2, 3, 4])
        assert dist_eq(condition(d, lambda n: n > 2), uniform([3, 4]))

    def test_always_true(self):
        d = dist_from_loads([2, 5, 1])
        assert dist_eq(condition(d, lambda _: True), d)

    def test_zero_probability_event(self):
        d = dist_new([("a", F(1, 2)), ("b", F(1, 2))])
        with pytest.raises(ZeroProbabilityEvent):
            condition(d, lambda o: o == "c")

    @given(weights_strategy())
    def test_chain_rule(self, loads):
        # conditioning then scaling back by the event mass restores the
        # distribution on the event
        d = dist_from_loads(loads)
        event = lambda n: n % 2 == 0
        mass = d.event_mass(event)
        if mass == 0:
            return
        restricted = condition(d, event)
        for o in restricted.support():
            assert restricted.mass(o) * mass == d.mass(o)


class TestProduct:
    def test_two_fair_coins(self):
        d = product(bernoulli(F(1, 2)), bernoulli(F(1, 2)))
        assert dist_eq(d, uniform([(a, b) for a in (0, 1) for b in (0, 1)]))

    def test_point_mass_relabel(self):
        d = dist_from_loads([1, 3])
        paired = product(d, point_mass("z"))
        assert dist_eq(pushforward(paired, lambda p: p[0]), d)

    def test_weight_product(self):
        d = product(bernoulli(F(1, 3)), bernoulli(F(1, 4)))
        assert d.mass((1, 1)) == F(1, 12)

    @given(weights_strategy(4), weights_strategy(4))
    def test_marginals(self, la, lb):
        a = dist_from_loads(la)
        b = dist_from_loads(lb, outcomes=[f"b{i}" for i in range(len(lb))])
        p = product(a, b)
        assert dist_eq(pushforward(p, lambda q: q[0]), a)
        assert dist_eq(pushforward(p, lambda q: q[1]), b)


class TestMixJoint:
    def test_mix_point_outer(self):
        k = Kernel.from_mapping({"a": bernoulli(F(1, 3)), "b": bernoulli(F(1, 2))})
        assert dist_eq(mix(point_mass("a"), k), bernoulli(F(1, 3)))

    def test_mix_identical_kernels(self):
        inner = dist_from_loads([1, 2, 1])
        k = Kernel.from_mapping({"a": inner, "b": inner})
        assert dist_eq(mix(uniform(["a", "b"]), k), inner)

    def test_mix_point_kernels(self):
        k = Kernel.from_mapping({"z1": point_mass("r1"), "z2": point_mass("r2")})
        mixed = mix(uniform(["z1", "z2"]), k)
        assert dist_eq(mixed, uniform(["r1", "r2"]))

    def test_missing_entry(self):
        k = Kernel.from_mapping({"a": bernoulli(F(1, 2))})
        with pytest.raises(MissingKernelEntry):
            mix(uniform(["a", "b"]), k)

    def test_joint_point_outer(self):
        k = Kernel.from_mapping({"a": bernoulli(F(1, 2))})
        j = joint(point_mass("a"), k)
        assert dist_eq(j, dist_new([(("a", 0), F(1, 2)), (("a", 1), F(1, 2))]))

    def test_joint_independent_kernel_is_product(self):
        outer = dist_from_loads([1, 3])
        inner = bernoulli(F(1, 3))
        k = Kernel.from_mapping({0: inner, 1: inner})
        assert dist_eq(joint(outer, k), product(outer, inner))

    def test_joint_two_by_two_table(self):
        # frozen 2x2 table: outer {0: 1/4, 1: 3/4}, k(0)=Bern(1/2), k(1)=Bern(1/3)
        outer = dist_new([(0, F(1, 4)), (1, F(3, 4))])
        k = Kernel.from_mapping({0: bernoulli(F(1, 2)), 1: bernoulli(F(1, 3))})
        j = joint(outer, k)
        assert j.mass((0, 0)) == F(1, 8)
        assert j.mass((0, 1)) == F(1, 8)
        assert j.mass((1, 0)) == F(1, 2)
        assert j.mass((1, 1)) == F(1, 4)

    @given(weights_strategy(3), weights_strategy(3), weights_strategy(3))
    def test_joint_mix_condition_coherence(self, lo, l1, l2):
        outer = dist_from_loads(lo[:2] if len(lo) > 2 else lo)
        inners = [dist_from_loads(l1), dist_from_loads(l2)]
        k = Kernel.from_mapping(
            {o: inners[i % 2] for i, o in enumerate(outer.support())}
        )
        j = joint(outer, k)
        assert dist_eq(pushforward(j, lambda p: p[0]), outer)
        for o in outer.support():
            second = pushforward(
                condition(j, lambda p, _o=o: p[0] == _o), lambda p: p[1]
            )
            assert dist_eq(second, k.get(o))

    @given(weights_strategy())
    def test_bayes_reconstruction(self, loads):
        # splitting by an indicator and mixing back reconstructs the law
        d = dist_from_loads(loads)
        event = lambda n: n % 2 == 0
        mass = d.event_mass(event)
        if mass == 0 or mass == 1:
            return
        outer = dist_new([(True, mass), (False, 1 - mass)])
        k = Kernel.from_mapping(
            {
                True: condition(d, event),
                False: condition(d, lambda n: not event(n)),
            }
        )
        assert dist_eq(mix(outer, k), d)


class TestExpectation:
    def test_uniform_binary(self):
        assert expectation(uniform([0, 1]), lambda n: n) == F(1, 2)

    def test_point(self):
        assert expectation(point_mass(7), lambda n: n) == 7

    def test_weighted(self):
        d = dist_new([(0, F(1, 4)), (2, F(3, 4))])
        assert expectation(d, lambda n: n) == F(3, 2)


class TestEqualityAndTV:
    def test_self_equal(self):
        d = dist_from_loads([1, 2, 3])
        assert dist_eq(d, d)
        assert total_variation(d, d) == 0

    def test_bernoullis(self):
        a, b = bernoulli(F(1, 2)), bernoulli(F(1, 3))
        assert not dist_eq(a, b)
        assert total_variation(a, b) == F(1, 6)

    def test_permuted_supports(self):
        a = dist_new([("x", F(1, 3)), ("y", F(2, 3))])
        b = dist_new([("y", F(2, 3)), ("x", F(1, 3))])
        assert dist_eq(a, b)
        assert a == b  # canonical form makes structural equality hold too

    @given(weights_strategy(), weights_strategy())
    def test_tv_zero_iff_equal(self, la, lb):
        a, b = dist_from_loads(la), dist_from_loads(lb)
        assert (total_variation(a, b) == 0) == dist_eq(a, b)

    @given(weights_strategy())
    def test_mass_conservation(self, loads):
        d = dist_from_loads(loads)
        assert sum(d.weights(), F(0)) == 1


class TestCanonicalKey:
    def test_total_order_across_types(self):
        values = [None, 0, F(1, 2), 1, "a", (1, 2), ("a",)]
        keys = [canonical_key(v) for v in values]
        assert sorted(keys) == keys

    def test_nested(self):
        assert canonical_key((1, (2, "x"))) == canonical_key((1, (2, "x")))
        assert canonical_key((1,)) != canonical_key((1, 1))

    def test_dict_rejected(self):
        with pytest.raises(IncomparableOutcomes):
            canonical_key({"a": 1})

    def test_dist_as_outcome(self):
        outer = uniform([bernoulli(F(1, 2)), bernoulli(F(1, 3))])
        assert len(outer) == 2
