import json
import math
import os
from pathlib import Path

import jsonschema
import numpy as np
import pytest

import pyreact as r

SCHEMAS = Path(os.environ.get("REACT_SCHEMAS", Path(__file__).resolve().parents[2] / "schemas"))


def schema(name):
    return json.loads((SCHEMAS / f"{name}.json").read_text())


def test_interval_three_way():
    band = r.Hypothesis.band([1.0], 0.0, 0.5)
    assert r.decide(r.IntervalRegion(-0.2, 0.3), band) == r.Decision.ACCEPT
    assert r.decide(r.IntervalRegion(0.6, 1.2), band) == r.Decision.REJECT
    assert r.decide(r.IntervalRegion(0.2, 0.9), band) == r.Decision.AGNOSTIC
    assert r.Decision.AGNOSTIC.value_ == 0.5


def test_closed_boundary_is_accept():
    band = r.Hypothesis.band([1.0], 0.0, 0.5)
    assert r.decide(r.IntervalRegion(-0.5, 0.5), band) == r.Decision.ACCEPT
    assert r.decide(r.IntervalRegion(-0.5, 0.5), band.complement()) == r.Decision.REJECT


def test_ellipsoid_extent_matches_closed_form():
    prec = np.array([[4.0, 1.0], [1.0, 2.0]])
    e = r.EllipsoidRegion([1.0, -1.0], prec, 3.0)
    w = np.array([1.0, -1.0])
    half = math.sqrt(3.0 * w @ np.linalg.solve(prec, w))
    ext = r.contrast_extent(e, w)
    assert ext.lower == pytest.approx(2.0 - half, abs=1e-12)
    assert ext.upper == pytest.approx(2.0 + half, abs=1e-12)


def test_family_is_coherent_and_serializes():
    rng = np.random.default_rng(3)
    groups = [list(rng.normal(m, 1.0, 40)) for m in (0.0, 0.1, 0.9)]
    e = r.mean_vector_ellipsoid(groups, 0.95)
    results = r.decide_family(e, r.pairwise_family(3, 0.5))
    assert len(results) == 4
    assert r.coherence_violations(results) == []
    for res in results:
        jsonschema.validate(json.loads(res.to_json()), schema("test_result"))


def test_hypothesis_json_roundtrip():
    hs = [
        r.Hypothesis.band([1.0, -1.0], 0.2, 0.5),
        r.Hypothesis.half_space([2.0], 1.0, r.Direction.AT_LEAST, closed=False),
        r.Hypothesis.interval(-math.inf, 0.3),
        r.Hypothesis.max_pairwise(0.5, 3).complement(),
    ]
    for h in hs:
        doc = json.loads(h.to_json())
        jsonschema.validate(doc, schema("hypothesis"))
        assert r.Hypothesis.from_json(h.to_json()) == h


def test_subset():
    narrow = r.Hypothesis.band([1.0], 0.0, 0.2)
    wide = r.Hypothesis.band([1.0], 0.0, 0.5)
    assert r.is_subset(narrow, wide) is True
    assert r.is_subset(wide, narrow) is False


def test_tost_matches_accept():
    rng = np.random.default_rng(11)
    a, b = list(rng.normal(0.05, 1, 80)), list(rng.normal(0, 1, 80))
    alpha, delta = 0.05, 0.6
    accept = r.decide(r.welch_interval(a, b, 1 - 2 * alpha), r.Hypothesis.band([1.0], 0.0, delta))
    assert r.tost(a, b, delta, alpha) == (accept == r.Decision.ACCEPT)


def test_meta_fixed_random_identity():
    studies = [r.Study("A", 10, 100, 12, 100), r.Study("B", 11, 90, 10, 95)]
    fixed, rand = r.fixed_effects(studies), r.random_effects(studies)
    assert rand.tau_sq == 0.0
    assert rand.effect == fixed.effect and rand.variance == fixed.variance
    doc = json.loads(r.forest_json(studies, r.nnt_to_delta(6)))
    jsonschema.validate(doc, schema("forest"))
    assert doc["region"] == [-1.0, 1 / 6]


def test_zero_cell_correction_affects_variance_only():
    eff, var = r.risk_difference(r.Study("Z", 0, 20, 2, 20))
    assert eff == pytest.approx(-0.1)
    assert var == pytest.approx((0.5 * 20.5) / 21**3 + (2.5 * 18.5) / 21**3)


def test_simulation_report():
    s = r.Scenario([0.0, 0.0], [1.0, 1.0], [30, 30], 0.5)
    rep = r.simulate_error_rates(s, 2000, 5)
    jsonschema.validate(json.loads(rep.to_json()), schema("error_rate_report"))
    jsonschema.validate(json.loads(s.to_json()), schema("scenario"))
    assert rep.type_i <= 0.05 + 3 * math.sqrt(0.05 * 0.95 / 2000)
    assert rep.accept_rate + rep.reject_rate + rep.agnostic_rate == pytest.approx(1.0)
    again = r.simulate_error_rates(s, 2000, 5)
    assert again.accept_rate == rep.accept_rate


def test_bayes_decisions_carry_probability():
    prior = r.NIG(0.0, 1.0, 3.0, 3.0)
    rng = np.random.default_rng(7)
    posts = [r.nig_update(prior, list(rng.normal(m, 1, 30))) for m in (0.0, 0.0, 2.0)]
    out = r.bayes_decide(posts, r.pairwise_family(3, 1.0), draws=20000, seed=4)
    for decision, prob in out:
        if decision == r.Decision.ACCEPT:
            assert prob >= 0.95 - 0.01
        if decision == r.Decision.REJECT:
            assert prob <= 0.05 + 0.01
    lo, hi = r.risk_difference_hpd(30, 100, 10, 100, draws=20000)
    assert 0.0 < lo < 0.2 < hi < 0.4


def test_errors_are_typed():
    with pytest.raises(r.ReactError, match="NegativeDelta"):
        r.Hypothesis.band([1.0], 0.0, -1.0)
    with pytest.raises(r.ReactError):
        r.Study("bad", 5, 3, 1, 10)


def test_cli_exit_codes(tmp_path):
    csv = tmp_path / "g.csv"
    csv.write_text("group,value\na,1\na,2\na,3\nb,2\nb,3\nb,5\n")
    out = r.cli_json("test", "--delta", "1", csv)
    assert out["decision"] in ("accept", "agnostic", "reject")
    code, _, err = r.cli("test", csv)
    assert code == 2 and "--delta" in err
    code, _, _ = r.cli("test", "--delta", "1", tmp_path / "missing.csv")
    assert code == 2
