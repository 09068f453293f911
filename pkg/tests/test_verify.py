import json

import pytest

from tauq.config import ConfigError, SuiteConfig, parse_config
from tauq.courant import standard
from tauq.liealgebroid import EPS, ONE
from tauq.report import SCHEMA, PropertyResult, SuiteResult, VerificationReport, mismatch, run_property
from tauq.sampling import derived_rng, monomials, sample_form, sample_poly
from tauq.symcore import VectorField, lie_derivative
from tauq.textfmt import parse_form
from tauq.transgression import MARK, sample_degree, sample_tau, sample_term, shape_degrees, tau_build
from tauq.verify import SUITES, lie_derivative_coordinates, run, selected_suites


# -- sampling -----------------------------------------------------------------

def test_derived_rng_depends_on_every_label():
    a = derived_rng(1, "suite", "prop", 0).random()
    assert a == derived_rng(1, "suite", "prop", 0).random()
    assert a != derived_rng(1, "suite", "prop", 1).random()
    assert a != derived_rng(2, "suite", "prop", 0).random()
    assert a != derived_rng(1, "other", "prop", 0).random()


def test_monomials_respect_degree_bound():
    ms = monomials(2, 2)
    assert len(ms) == 6 and all(sum(m) <= 2 for m in ms)


def test_form_samples_are_homogeneous_or_zero():
    rng = derived_rng(0)
    for k in range(4):
        f = sample_form(3, k, rng, 2)
        assert f.degrees() in ((), (k,))
    assert sample_form(3, 4, rng).is_zero()
    assert sample_form(3, -1, rng).is_zero()


def test_poly_samples_respect_degree_bound():
    rng = derived_rng(0)
    for _ in range(20):
        p = sample_poly(3, rng, 1)
        assert all(sum(m) <= 1 for m in p.terms)


def test_tau_samples_live_in_the_requested_degree():
    tau = tau_build(standard(2))
    rng = derived_rng(9)
    for _ in range(10):
        d = sample_degree(tau, rng)
        assert -tau.k <= d <= tau.n
        e = sample_tau(tau, d, rng, 1)
        assert set(tau.degree_parts(e)) <= {d}


def test_sample_term_shapes():
    tau = tau_build(standard(2))
    rng = derived_rng(2)
    assert set(sample_term(tau, MARK, rng, 1)) <= {MARK}
    assert all(k[0] == EPS for k in sample_term(tau, EPS, rng, 1))
    assert shape_degrees(tau, ONE) == (0, 2)
    assert shape_degrees(tau, EPS) == (-1, 1)
    assert shape_degrees(tau, MARK) == (-2, 0)


# -- report model ---------------------------------------------------------------

def test_run_property_stops_at_first_failure():
    calls = []

    def check(rng):
        calls.append(1)
        return {"why": "no"} if len(calls) == 3 else None

    r = run_property(0, "s", "p", "statement", 10, check)
    assert not r.passed and r.sample_index == 2 and r.samples == 3
    assert r.to_json()["counterexample"] == {"why": "no"}


def test_mismatch_renders_both_sides_and_inputs():
    a, b = parse_form("x dy", 2), parse_form("dy", 2)
    assert mismatch(a, a) is None
    cex = mismatch(a, b, str, form=a, label="tag")
    assert cex == {"form": "x dy", "label": "tag", "lhs": str(a), "rhs": str(b)}


def test_negative_control_inverts_suite_status():
    failing = [PropertyResult("p", "s", 1, False, {"x": "1"}, 0)]
    assert not SuiteResult("a", failing).ok
    assert SuiteResult("a", failing, expect_failure=True).ok
    assert not SuiteResult("a", [PropertyResult("p", "s", 1, True)], expect_failure=True).ok


def test_report_json_layout():
    rep = VerificationReport({"seed": 0}, [SuiteResult("a", [PropertyResult("p", "s", 4, True)])])
    doc = json.loads(rep.dumps())
    assert doc["schema"] == SCHEMA and doc["ok"] is True
    assert doc["suites"][0] == {
        "suite": "a",
        "negative_control": False,
        "ok": True,
        "properties": [{"name": "p", "statement": "s", "samples": 4, "passed": True}],
    }


# -- suite selection and runs -------------------------------------------------------

def test_selection_follows_registry_and_family():
    names = [s.name for s in selected_suites([], "standard")]
    assert names == [n for n in SUITES if n != "quadratic-model"]
    assert "connection" not in [s.name for s in selected_suites(["all"], "quadratic")]
    assert [s.name for s in selected_suites(["roundtrip", "cartan", "roundtrip"], "standard")] == ["roundtrip", "cartan"]


def test_lie_derivative_oracle_agrees_with_cartan():
    xi = VectorField.coord(2, 0).scale(parse_form("x*y", 2).function_part())
    a = parse_form("y dx + x^2 dy", 2)
    assert lie_derivative_coordinates(xi, a) == lie_derivative(xi, a)


def test_courant_axioms_on_standard_plane():
    rep = run(SuiteConfig(suites=["courant-axioms"], samples=50, max_poly_degree=2))
    (s,) = rep.suites
    assert s.ok and len(s.properties) == 9
    assert all(p.samples == 50 for p in s.properties)


def test_tau_jacobi_on_twisted_space():
    cfg = parse_config("family = twisted\nchart_dim = 3\ntwist_potential = x*y dx^dz\nsuites = tau-jacobi\nsamples = 3\nmax_poly_degree = 1\n")
    rep = run(cfg)
    assert rep.ok and rep.config["structure"]["twist"] == "-x dx^dy^dz"


def test_negative_controls_fail_as_expected():
    rep = run(SuiteConfig(suites=["courant-negative", "marking-negative"], samples=10, max_poly_degree=1))
    for s in rep.suites:
        assert s.expect_failure and not s.passed and s.ok
    neg = rep.suites[0]
    assert [p.name for p in neg.properties if not p.passed] == ["bracket-jacobi"]


def test_inapplicable_suite_raises():
    with pytest.raises(ConfigError):
        run(SuiteConfig(family="quadratic", suites=["connection"]))


def test_reports_are_reproducible():
    cfg = SuiteConfig(suites=["tau-leibniz", "roundtrip"], samples=3, seed=17)
    assert run(cfg).dumps() == run(cfg).dumps()
    other = SuiteConfig(suites=["tau-leibniz", "roundtrip"], samples=3, seed=18)
    assert run(other).ok
