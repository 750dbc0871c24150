import numpy as np
import pytest

from splitoct.fields import FieldSpec
from splitoct.patho import PathoMap
from splitoct.ratfunc2 import rf_parse
from splitoct.suites import (
    alternative_pairs_suite,
    axiom_suites,
    basis_pattern_suite,
    hua_ratfunc_suite,
    hua_suite,
    make_rng,
    patho_suite,
    witness_checks,
    witness_suite,
)


def test_make_rng_streams_are_reproducible_and_distinct():
    a = make_rng(1, 0).integers(0, 1 << 30, 5)
    assert np.array_equal(a, make_rng(1, 0).integers(0, 1 << 30, 5))
    assert not np.array_equal(a, make_rng(1, 1).integers(0, 1 << 30, 5))


@pytest.mark.parametrize("field", [FieldSpec(2), FieldSpec(3)], ids=str)
def test_basis_patterns_exhaustive(field):
    res = basis_pattern_suite(field)
    assert res["passed"] and res["exhaustive"]
    assert res["checked"] == 512 * field.order ** 3


def test_gf2_pairs_are_exhaustive():
    res = alternative_pairs_suite(FieldSpec(2), make_rng(1), 10)
    assert res["mode"] == "exhaustive" and res["checked"] == 256 * 256


def test_axiom_suites_deterministic():
    a = axiom_suites(FieldSpec(3), 7, 500)
    b = axiom_suites(FieldSpec(3), 7, 500)
    assert a == b and all(s["passed"] for s in a)


def test_hua_reports_rate():
    res = hua_suite(FieldSpec(5), make_rng(1), 200)
    assert res["passed"] and res["checked"] == 200
    assert 0 < res["inapplicable_rate"] < 1
    assert res["drawn"] >= 200


def test_hua_ratfunc():
    res = hua_ratfunc_suite(make_rng(2), 20)
    assert res["passed"] and res["checked"] == 20


def test_failures_are_reported(monkeypatch):
    import splitoct.suites as suites

    # a deliberately broken product makes the suite fail with a counterexample
    real = suites.PrimeAlgebra.mul

    def broken(self, X, Y):
        out = real(self, X, Y)
        out[:, 0] = (out[:, 0] + 1) % self.p
        return out

    monkeypatch.setattr(suites.PrimeAlgebra, "mul", broken)
    res = suites.moufang_suite(FieldSpec(3), make_rng(1), 50)
    assert not res["passed"] and len(res["counterexample"]) == 3


@pytest.mark.parametrize("field", [FieldSpec(5), FieldSpec(2, 2)], ids=str)
def test_witnesses(field):
    res = witness_suite(field)
    assert res["passed"], res.get("counterexample")
    steps = {r["step"].split("[")[0] for r in witness_checks(field)}
    assert {"odd.1", "odd.3", "odd.4"} <= steps
    if field.p == 2:
        assert {"even.1", "even.3", "even.5"} <= steps


def test_patho_suite_small():
    m = PathoMap(rf_parse("1/(t+1)"), rf_parse("t^3"))
    res = patho_suite(m, make_rng(1), additive=200, identity=200, welldef=50, square=50)
    assert all(r["passed"] for r in res)
    names = [r["name"] for r in res]
    assert names == ["additivity", "identity", "well_defined", "square_law", "anchors", "non_linearity_witness"]
    assert res[-1]["fires"]


def test_patho_suite_linear_member_does_not_fire():
    m = PathoMap(rf_parse("1"), rf_parse("t"))
    res = patho_suite(m, make_rng(1), additive=10, identity=10, welldef=10, square=10)
    assert res[-1]["passed"] and not res[-1]["fires"]
