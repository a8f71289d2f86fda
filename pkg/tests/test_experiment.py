"""Averaging scans: config validation, frozen level values, report plumbing."""

import dataclasses
import json
import math
from fractions import Fraction

import pytest

from lcentral.afe import exponent_window
from lcentral.experiment import (ExperimentConfig, ExperimentReport,
                                 doubled_cutoff_gap, envelope_terms,
                                 report_from_json, report_to_json,
                                 run_lav_experiment)


@pytest.fixture(scope="module")
def scan12():
    return run_lav_experiment(ExperimentConfig(n_lo=1, n_hi=2))


def test_config_rejects_bad_exponent():
    # theta = 0, eps = 0.01, |Delta| = 2: admissible window is about (1.02, 2.94)
    with pytest.raises(ValueError, match="window"):
        run_lav_experiment(ExperimentConfig(a=3.0))
    with pytest.raises(ValueError, match="window"):
        run_lav_experiment(ExperimentConfig(a=1.0))


def test_config_rejects_degenerate_inputs():
    with pytest.raises(ValueError, match="odd"):
        run_lav_experiment(ExperimentConfig(p=2))
    with pytest.raises(ValueError, match="n_lo"):
        run_lav_experiment(ExperimentConfig(n_lo=0))
    with pytest.raises(ValueError, match="n_lo"):
        run_lav_experiment(ExperimentConfig(n_lo=2, n_hi=1))
    with pytest.raises(ValueError, match="eps"):
        run_lav_experiment(ExperimentConfig(eps=0.0))


def test_window_nonempty_at_best_known_exponent():
    lo, hi = exponent_window(Fraction(7, 64), 2)
    assert lo < hi
    assert lo == Fraction(46, 39) and hi == Fraction(96, 39)


def test_envelope_terms_decay():
    t1 = envelope_terms(5, 1, 0.0, 0.01, 2.0, 2)
    assert t1 == pytest.approx((5 ** -0.245, 5 ** -0.48, 5 ** -0.5))
    t2 = envelope_terms(5, 2, 0.0, 0.01, 2.0, 2)
    assert all(b < a < 1.0 for a, b in zip(t1, t2))


def test_scan_frozen_rows(scan12):
    r1, r2 = scan12.rows
    assert (r1.n, r1.conductor, r1.orbit_size) == (1, 25, 4)
    assert (r2.n, r2.conductor, r2.orbit_size) == (2, 125, 20)
    assert r1.lav_re == pytest.approx(1.1328540440214652, abs=1e-9)
    assert abs(r1.lav_im) < 1e-12
    assert r2.lav_re == pytest.approx(1.8737658256, abs=1e-6)
    assert r1.deviation == pytest.approx(0.132854, abs=1e-5)
    assert r2.deviation == pytest.approx(0.873766, abs=1e-5)
    for row in scan12.rows:
        assert row.error is None
        assert row.route_gap < 1e-12
        assert all(row.flags) and len(row.flags) == row.orbit_size
        assert row.min_abs_value > 1e-3
        assert row.seconds >= 0.0
        assert row.main_term_re == pytest.approx(1.0, abs=1e-3)
    assert scan12.field_label == "rationals"
    assert scan12.form_label == "delta"
    assert (scan12.n0, scan12.delta_order) == (0, 2)
    assert scan12.window == pytest.approx((1.0196078, 2.9411765))
    assert "not the limit" in scan12.note


def test_scan_threads_match_serial(scan12):
    rep = run_lav_experiment(ExperimentConfig(n_lo=1, n_hi=2, threads=2))
    for serial, threaded in zip(scan12.rows, rep.rows):
        assert dataclasses.replace(serial, seconds=0.0) == \
            dataclasses.replace(threaded, seconds=0.0)


def test_explicit_prime_generator_matches_default(scan12):
    rep = run_lav_experiment(ExperimentConfig(n_lo=1, n_hi=1, pi_coords=(5,)))
    assert dataclasses.replace(rep.rows[0], seconds=0.0) == \
        dataclasses.replace(scan12.rows[0], seconds=0.0)


def test_report_round_trip(scan12, tmp_path):
    text = report_to_json(scan12)
    assert report_from_json(text) == scan12
    # and through a file, the way the CLI writes it
    out = tmp_path / "scan.json"
    rep = run_lav_experiment(ExperimentConfig(n_lo=1, n_hi=1, out=str(out)))
    assert report_from_json(out.read_text()) == rep
    doc = json.loads(text)
    assert [row["n"] for row in doc["rows"]] == [1, 2]


def test_failed_row_is_reported_not_raised():
    rep = run_lav_experiment(ExperimentConfig(n_lo=1, n_hi=1, route_tol=1e-18))
    row = rep.rows[0]
    assert row.error is not None and "routes disagree" in row.error
    assert math.isnan(row.lav_re)
    assert row.flags == ()


def test_doubled_cutoffs_stay_within_error_estimate():
    gap, err = doubled_cutoff_gap(ExperimentConfig(n_lo=1, n_hi=1))
    assert gap <= err
