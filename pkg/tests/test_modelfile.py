"""Model document parser and emitter: golden corpus round-trips and
located diagnostics."""

from fractions import Fraction as F

import pytest

from ignorability_lab.catalog import CATALOG
from ignorability_lab.ignorance import MarginalFunctional, ParameterFunction
from ignorability_lab.modelfile import (
    BadRational,
    ModelSyntaxError,
    SchemaError,
    UnknownDesignVariant,
    emit_model,
    parse_model,
)

MINIMAL = CATALOG["srs_wor_minimal"]


class TestValidDocuments:
    def test_minimal_parses(self):
        doc = parse_model(MINIMAL)
        assert doc.units == (1, 2)
        assert doc.thetas == (F(1, 3), F(2, 3))
        assert doc.variant == "srs_wor"
        assert doc.n == 1
        assert doc.scheme_kind == "values_only"

    @pytest.mark.parametrize("name", sorted(CATALOG))
    def test_catalog_round_trip(self, name):
        doc = parse_model(CATALOG[name])
        assert parse_model(emit_model(doc)) == doc

    @pytest.mark.parametrize("name", sorted(CATALOG))
    def test_catalog_builds(self, name):
        build = parse_model(CATALOG[name]).build()
        assert build.model.grid

    def test_emit_is_deterministic(self):
        doc = parse_model(CATALOG["bernoulli_mixture"])
        assert emit_model(doc) == emit_model(doc)

    def test_comments_and_blank_lines_ignored(self):
        text = MINIMAL.replace("[grids]", "# leading comment\n\n[grids]")
        assert parse_model(text) == parse_model(MINIMAL)

    def test_default_split_and_target(self):
        doc = parse_model(MINIMAL)
        assert doc.split_v == ("signal",)
        assert doc.split_v_bar == ("selection",)
        assert doc.target_kind == "signal_law"

    def test_target_and_split_build(self):
        build = parse_model(CATALOG["srs_wor_n3"]).build()
        assert isinstance(build.target, MarginalFunctional)
        assert build.v.name == "signal"
        assert "selection" in build.v_bar.name

    def test_grid_label_target(self):
        build = parse_model(CATALOG["census"]).build()
        assert isinstance(build.target, ParameterFunction)


def expect_error(text, error_type, fragment=None):
    with pytest.raises(error_type) as info:
        parse_model(text)
    err = info.value
    assert err.line >= 1 and err.col >= 1
    if fragment:
        assert fragment in str(err)
    return err


class TestInvalidDocuments:
    def test_decimal_rational(self):
        text = MINIMAL.replace("theta = 1/3 2/3", "theta = 0.5 2/3")
        err = expect_error(text, BadRational, "use 1/2")
        assert err.line == 5

    def test_duplicate_unit(self):
        text = MINIMAL.replace("units = 1 2", "units = 1 1")
        expect_error(text, SchemaError, "duplicate unit label 1")

    def test_unknown_design_variant(self):
        text = MINIMAL.replace("variant = srs_wor", "variant = cluster")
        expect_error(text, UnknownDesignVariant, "cluster")

    def test_unknown_section(self):
        expect_error(MINIMAL + "\n[weights]\nw = 1\n", SchemaError, "unknown section")

    def test_missing_population(self):
        text = MINIMAL.replace("[population]\nunits = 1 2\n", "")
        expect_error(text, SchemaError, "missing required section")

    def test_missing_design_n(self):
        text = MINIMAL.replace("n = 1\n", "")
        expect_error(text, SchemaError, "needs a sample size")

    def test_unknown_scheme(self):
        text = MINIMAL.replace("scheme = values_only", "scheme = everything")
        expect_error(text, SchemaError, "unknown observation scheme")

    def test_signal_mass_not_unit(self):
        text = MINIMAL.replace("iid 1/3 = 0:2/3 1:1/3", "iid 1/3 = 0:2/3 1:1/2")
        expect_error(text, SchemaError, "sum to")

    def test_signal_value_outside_alphabet(self):
        text = MINIMAL.replace("iid 1/3 = 0:2/3 1:1/3", "iid 1/3 = 0:2/3 7:1/3")
        expect_error(text, SchemaError, "not in the alphabet")

    def test_law_for_unknown_theta(self):
        text = MINIMAL.replace("iid 1/3", "iid 1/5")
        expect_error(text, SchemaError, "unknown theta")

    def test_missing_law_for_theta(self):
        text = MINIMAL.replace("iid 2/3 = 0:1/3 1:2/3\n", "")
        expect_error(text, SchemaError, "no signal law")

    def test_unknown_split_selector(self):
        text = MINIMAL + "\n[split]\nv = signal\nv_bar = weather\n"
        expect_error(text, SchemaError, "unknown split selector")

    def test_unknown_target_kind(self):
        text = MINIMAL + "\n[target]\nkind = variance\n"
        expect_error(text, SchemaError, "unknown target kind")

    def test_target_unit_not_in_population(self):
        text = MINIMAL + "\n[target]\nkind = unit_expectation\nunit = 9\n"
        expect_error(text, SchemaError, "not in the population")

    def test_syntax_no_equals(self):
        text = MINIMAL.replace("units = 1 2", "units 1 2")
        expect_error(text, ModelSyntaxError, "key")

    def test_content_before_section(self):
        expect_error("units = 1 2\n", ModelSyntaxError, "before any section")

    def test_duplicate_key(self):
        text = MINIMAL.replace("n = 1", "n = 1\nn = 2")
        expect_error(text, SchemaError, "duplicate key")

    def test_duplicate_section(self):
        expect_error(MINIMAL + "\n[design]\nvariant = srs_wor\n", SchemaError, "duplicate section")

    def test_gamma_outside_grid(self):
        text = CATALOG["bernoulli_mixture"].replace(
            "gamma = 1/3:1/3 1/2:1/2", "gamma = 1/3:1/3 1/5:1/2"
        )
        expect_error(text, SchemaError, "not in the theta grid")

    def test_mixture_weights_wrong_arity(self):
        text = CATALOG["bernoulli_mixture"].replace(
            "weights 1/3 = 1/6 1/6 2/3", "weights 1/3 = 1/6 1/6"
        )
        expect_error(text, SchemaError, "one weight per component")

    def test_negative_mass(self):
        text = MINIMAL.replace("p = 1/2", "p = 1/2")  # no-op guard
        text = MINIMAL.replace("iid 1/3 = 0:2/3 1:1/3", "iid 1/3 = 0:4/3 1:-1/3")
        expect_error(text, SchemaError, "negative mass")

    def test_error_location_is_exact(self):
        text = MINIMAL.replace("theta = 1/3 2/3", "theta = 1/3 0.25")
        err = expect_error(text, BadRational, "use 1/4")
        assert err.line == 5
        assert err.col == 13
