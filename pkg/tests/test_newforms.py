from fractions import Fraction

import numpy as np
import pytest

from lcentral.newforms import (NewformData, builtin_newform,
                               dual_coefficient_array, newform_load,
                               ramanujan_violations)
from lcentral.tau import tau_table

DELTA = builtin_newform("delta", 2000)
PRIMES = [p for p in range(2, 2001)
          if all(p % q for q in range(2, int(p ** 0.5) + 1))]


def prime_doc(**overrides):
    doc = {
        "label": "delta-from-primes",
        "field_label": "rationals",
        "weight_vector": [12],
        "m_vector": [0],
        "type_J": [0],
        "level_norm": 1,
        "nebentypus": "trivial",
        "n0": 0,
        "theta": "0",
        "atkin_lehner": -1,
        "prime_eigenvalues": {str(p): DELTA.coeff_of_norm(p) for p in PRIMES},
    }
    doc.update(overrides)
    return doc


def test_builtin_delta_properties():
    assert DELTA.label == "delta"
    assert DELTA.scalar_weight == 12
    assert DELTA.gamma_shifts == (0,)
    assert DELTA.eta == -1 and DELTA.n0 == 0 and DELTA.theta == 0
    assert DELTA.level_norm == 1 and DELTA.nebentypus == "trivial"
    assert DELTA.limit == 2000
    assert DELTA.coeff_of_norm(1) == 1


def test_coeff_lookup():
    assert DELTA.coeff(6) == -6048  # tau(2) tau(3) by multiplicativity
    assert DELTA.coeff(Fraction(6)) == -6048
    assert DELTA.coeff(Fraction(1, 2)) == 0  # non-integral argument
    with pytest.raises(IndexError):
        DELTA.coeff_of_norm(0)
    with pytest.raises(IndexError):
        DELTA.coeff_of_norm(2001)


def test_coefficient_array_layout():
    arr = DELTA.coefficient_array(10)
    assert arr.shape == (11,) and arr[0] == 0.0
    assert arr[2] == -24.0
    assert np.array_equal(dual_coefficient_array(DELTA, 10), -arr)


def test_prime_expansion_reproduces_eta_product():
    form = newform_load(prime_doc(), limit=2000)
    assert form.coefficients == tau_table(2000)
    assert form.type_j == (0,)


def test_loader_passthrough_and_builtin_names():
    assert newform_load(DELTA) is DELTA
    assert newform_load("weight12-level1", limit=50).coeff_of_norm(2) == -24
    with pytest.raises(ValueError):
        newform_load("no-such-form")


def test_missing_prime_reported():
    doc = prime_doc(prime_eigenvalues={"2": -24})
    with pytest.raises(ValueError, match=r"prime ideal \(3\)"):
        newform_load(doc, limit=10)


def test_prime_bound_violation_reported():
    doc = prime_doc(prime_eigenvalues={"2": 10 ** 6, "3": 252})
    with pytest.raises(ValueError, match=r"ideal \(2\)"):
        newform_load(doc, limit=5)


def test_full_table_verification():
    good = {"label": "t", "weight_vector": [12], "atkin_lehner": -1,
            "coefficients": tau_table(100)[1:]}
    form = newform_load(good)
    assert form.coeff_of_norm(100) == tau_table(100)[100]

    broken_mult = dict(good, coefficients=[1, -24, 252, -1472, 4830, -6000])
    with pytest.raises(ValueError, match=r"ideal \(6\)"):
        newform_load(broken_mult)

    broken_hecke = dict(good, coefficients=[1, -24, 252, -1400, 4830, -6048])
    with pytest.raises(ValueError, match=r"ideal \(4\)"):
        newform_load(broken_hecke)

    not_normalized = dict(good, coefficients=[2, -24, 252])
    with pytest.raises(ValueError, match=r"a\(1\)"):
        newform_load(not_normalized)


def test_header_validation():
    with pytest.raises(ValueError, match="atkin_lehner"):
        newform_load(prime_doc(atkin_lehner=3), limit=10)
    with pytest.raises(ValueError, match="theta"):
        newform_load(prime_doc(theta="1/2"), limit=10)
    with pytest.raises(ValueError, match="missing"):
        doc = prime_doc()
        del doc["prime_eigenvalues"]
        newform_load(doc, limit=10)


def test_scalar_weight_rejects_non_parallel():
    form = NewformData(label="x", field_label="quadratic-sqrt2", weight=(2, 4),
                       gamma_shifts=(0, 1), level_norm=1, nebentypus="trivial",
                       eta=1, n0=0, theta=Fraction(0), coefficients=[0, 1])
    with pytest.raises(ValueError):
        form.scalar_weight


def test_ramanujan_scan_clean_for_delta():
    assert ramanujan_violations(DELTA, degree=1) == []


def test_theta_tightens_the_bound():
    # with theta = 0 the scan is the sharp Deligne bound; a fake form whose
    # a(2) sits just above it must be flagged
    form = NewformData(label="x", field_label="rationals", weight=(12,),
                       gamma_shifts=(0,), level_norm=1, nebentypus="trivial",
                       eta=1, n0=0, theta=Fraction(0),
                       coefficients=[0, 1, 2 * 46 ** 1 + 2896, 0])
    assert 2 in ramanujan_violations(form, degree=1)
