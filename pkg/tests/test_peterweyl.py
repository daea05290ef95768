"""Coefficient calculus: synthesis, translations, superselection classes."""

import numpy as np
import pytest

from affinetop.peterweyl import (
    ParityClass,
    PWCoeffs,
    antipode,
    left_translate,
    parity_class,
    right_translate,
    synth,
)
from affinetop.rotation import HalfInt, build_rot_rep, su2_compose, wigner_D

TWO_PI_Z = (0.0, 0.0, 2.0 * np.pi)


def random_coeffs(rng, twice_js) -> PWCoeffs:
    terms = {}
    for t in twice_js:
        dim = t + 1
        terms[HalfInt(t)] = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return PWCoeffs(terms)


def test_constant_function():
    coeffs = PWCoeffs({0: [[1.0]]})
    for k in [(0, 0, 0), (0.3, -1.0, 0.2), TWO_PI_Z]:
        assert synth(coeffs, k) == pytest.approx(1.0, abs=1e-14)


def test_trace_identity_term():
    coeffs = PWCoeffs({HalfInt(1): np.eye(2)})
    assert synth(coeffs, (0, 0, 0)) == pytest.approx(2.0, abs=1e-14)
    assert synth(coeffs, TWO_PI_Z) == pytest.approx(-2.0, abs=1e-12)


def test_shape_validation():
    with pytest.raises(ValueError):
        PWCoeffs({HalfInt(1): np.eye(3)})


def test_synth_linear_in_coeffs():
    rng = np.random.default_rng(3)
    a = random_coeffs(rng, [0, 1, 2])
    b = random_coeffs(rng, [0, 1, 2])
    combined = PWCoeffs(
        {j: 2.0 * a.terms[j] + 3.0 * b.terms[j] for j in a.terms}
    )
    k = rng.normal(size=3)
    assert synth(combined, k) == pytest.approx(2.0 * synth(a, k) + 3.0 * synth(b, k), rel=1e-12)


def test_translate_by_identity_is_identity():
    rng = np.random.default_rng(4)
    coeffs = random_coeffs(rng, [0, 2, 3])
    assert left_translate(coeffs, (0, 0, 0)) == coeffs
    assert right_translate(coeffs, (0, 0, 0)) == coeffs


def test_left_translate_of_identity_coeff():
    rng = np.random.default_rng(5)
    v = rng.normal(size=3)
    coeffs = PWCoeffs({HalfInt(1): np.eye(2)})
    rep = build_rot_rep(3, HalfInt(1))
    shifted = left_translate(coeffs, v)
    np.testing.assert_allclose(shifted.terms[HalfInt(1)], wigner_D(rep, v), atol=1e-13)


def test_translations_against_sampled_composition():
    rng = np.random.default_rng(6)
    coeffs = random_coeffs(rng, [0, 1, 2, 3, 4])
    v = rng.normal(size=3)
    left = left_translate(coeffs, v)
    right = right_translate(coeffs, v)
    for _ in range(20):
        k = rng.normal(size=3)
        assert synth(left, k) == pytest.approx(synth(coeffs, su2_compose(v, k)), rel=1e-10, abs=1e-10)
        assert synth(right, k) == pytest.approx(synth(coeffs, su2_compose(k, v)), rel=1e-10, abs=1e-10)


def test_left_and_right_translations_commute():
    rng = np.random.default_rng(7)
    coeffs = random_coeffs(rng, [1, 3])
    v = rng.normal(size=3)
    w = rng.normal(size=3)
    one = left_translate(right_translate(coeffs, w), v)
    two = right_translate(left_translate(coeffs, v), w)
    for j in one.terms:
        np.testing.assert_allclose(one.terms[j], two.terms[j], atol=1e-12)


@pytest.mark.parametrize(
    "twice_js,expected",
    [
        ([1, 3], ParityClass.FERMIONIC),
        ([0, 4], ParityClass.BOSONIC),
        ([0, 1], ParityClass.MIXED),
        ([], ParityClass.ZERO),
    ],
)
def test_parity_classification(twice_js, expected):
    rng = np.random.default_rng(8)
    coeffs = random_coeffs(rng, twice_js)
    assert parity_class(coeffs) is expected


def test_zero_matrices_do_not_count():
    coeffs = PWCoeffs({HalfInt(0): [[1.0]], HalfInt(1): np.zeros((2, 2))})
    assert parity_class(coeffs) is ParityClass.BOSONIC


def test_projective_density_for_pure_classes():
    rng = np.random.default_rng(9)
    for twice_js in ([0, 2], [1, 3]):
        coeffs = random_coeffs(rng, twice_js)
        for _ in range(10):
            k = rng.normal(size=3)
            a = abs(synth(coeffs, k)) ** 2
            b = abs(synth(coeffs, antipode(k))) ** 2
            assert a == pytest.approx(b, rel=1e-10, abs=1e-10)


def test_projective_density_fails_for_mixed():
    rng = np.random.default_rng(10)
    coeffs = random_coeffs(rng, [0, 1])
    k = rng.normal(size=3)
    a = abs(synth(coeffs, k)) ** 2
    b = abs(synth(coeffs, antipode(k))) ** 2
    assert abs(a - b) > 1e-6
