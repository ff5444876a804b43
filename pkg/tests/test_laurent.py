"""Data model and grid arithmetic for matrix Laurent polynomials."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from specfact.laurent import (
    HermitianLaurentPolynomial,
    MatrixPolynomial,
    SampledMatrixFunction,
    coefficients_from_samples,
    default_grid_size,
    evaluate_at,
    multiply_by_adjoint,
    sample_on_grid,
    unit_circle_grid,
)


def scalar_laurent(*values):
    return HermitianLaurentPolynomial(np.array(values, dtype=complex).reshape(-1, 1, 1))


def scalar_poly(*values):
    return MatrixPolynomial(np.array(values, dtype=complex).reshape(-1, 1, 1))


def random_poly(rng, r, m):
    return MatrixPolynomial(rng.standard_normal((m + 1, r, r))
                            + 1j * rng.standard_normal((m + 1, r, r)))


def horner_reference(coeffs, z):
    """Independent oracle: plain power-sum evaluation."""
    total = np.zeros_like(coeffs[0])
    for n, c in enumerate(coeffs):
        total = total + c * z**n
    return total


class TestEvaluateAt:
    def test_constant_laurent(self):
        S = scalar_laurent(4.0)
        assert evaluate_at(S, 1j) == pytest.approx(np.array([[4.0]]))

    def test_matrix_polynomial_at_one(self):
        x = MatrixPolynomial(np.array([np.eye(2), [[0, 0], [1, 0]]], dtype=complex))
        assert evaluate_at(x, 1.0) == pytest.approx(np.array([[1, 0], [1, 1]]))

    def test_scalar_laurent_at_minus_one(self):
        S = scalar_laurent(5.0, 2.0)
        assert evaluate_at(S, -1.0) == pytest.approx(np.array([[1.0]]))

    def test_rejects_nonfinite_point(self):
        with pytest.raises(ValueError):
            evaluate_at(scalar_poly(1.0), complex("nan"))

    def test_laurent_requires_unit_modulus(self):
        with pytest.raises(ValueError, match=r"\|z\| = 1"):
            evaluate_at(scalar_laurent(5.0, 2.0), 0.5)

    def test_matches_power_sum_oracle(self):
        rng = np.random.default_rng(3)
        x = random_poly(rng, 3, 5)
        for z in (0.3 - 0.7j, 1.0, np.exp(0.4j)):
            expected = horner_reference(x.coeffs, z)
            assert np.max(np.abs(evaluate_at(x, z) - expected)) < 1e-12

    def test_linearity(self):
        rng = np.random.default_rng(4)
        a = rng.standard_normal((4, 2, 2)) + 1j * rng.standard_normal((4, 2, 2))
        b = rng.standard_normal((4, 2, 2)) + 1j * rng.standard_normal((4, 2, 2))
        z = np.exp(1.3j)
        lhs = evaluate_at(MatrixPolynomial(a + b), z)
        rhs = evaluate_at(MatrixPolynomial(a), z) + evaluate_at(MatrixPolynomial(b), z)
        assert np.max(np.abs(lhs - rhs)) < 1e-12


class TestSampleOnGrid:
    def test_scalar_example_k4(self):
        S = scalar_laurent(5.0, 2.0)
        samples = sample_on_grid(S, 4).samples[:, 0, 0]
        assert samples == pytest.approx(np.array([9, 5, 1, 5]), abs=1e-12)

    def test_identity_polynomial(self):
        x = MatrixPolynomial(np.eye(3, dtype=complex)[None])
        samples = sample_on_grid(x, 16).samples
        assert np.max(np.abs(samples - np.eye(3))) < 1e-14

    def test_matches_pointwise_horner(self):
        rng = np.random.default_rng(7)
        x = random_poly(rng, 2, 6)
        K = 64
        samples = sample_on_grid(x, K).samples
        grid = unit_circle_grid(K)
        for j in (0, 5, 31, 63):
            expected = horner_reference(x.coeffs, grid[j])
            assert np.max(np.abs(samples[j] - expected)) < 1e-12

    def test_rejects_non_power_of_two(self):
        with pytest.raises(ValueError, match="power of two"):
            sample_on_grid(scalar_poly(1.0), 12)

    def test_rejects_aliasing_grid(self):
        S = scalar_laurent(*np.r_[4.0, np.ones(5)])
        with pytest.raises(ValueError, match="alias"):
            sample_on_grid(S, 8)


class TestCoefficientsFromSamples:
    def test_scalar_window(self):
        S = scalar_laurent(5.0, 2.0)
        coeffs = coefficients_from_samples(sample_on_grid(S, 8), -1, 1)[:, 0, 0]
        assert coeffs == pytest.approx(np.array([2, 5, 2]), abs=1e-13)

    def test_constant_identity(self):
        x = MatrixPolynomial(np.eye(2, dtype=complex)[None])
        coeffs = coefficients_from_samples(sample_on_grid(x, 8), 0, 0)
        assert np.max(np.abs(coeffs[0] - np.eye(2))) < 1e-14

    def test_round_trip_random_degree_three(self):
        rng = np.random.default_rng(11)
        x = random_poly(rng, 2, 3)
        coeffs = coefficients_from_samples(sample_on_grid(x, 16), 0, 3)
        assert np.max(np.abs(coeffs - x.coeffs)) < 1e-12

    def test_rejects_window_wider_than_grid(self):
        f = sample_on_grid(scalar_poly(1.0, 1.0), 8)
        with pytest.raises(ValueError, match="wider"):
            coefficients_from_samples(f, -4, 4)


class TestMultiplyByAdjoint:
    def test_scalar(self):
        S = multiply_by_adjoint(scalar_poly(2.0, 1.0))
        assert S.coeffs[:, 0, 0] == pytest.approx(np.array([5.0, 2.0]))

    def test_two_by_two(self):
        x = MatrixPolynomial(np.array([np.eye(2), [[0, 0], [1, 0]]], dtype=complex))
        S = multiply_by_adjoint(x)
        assert S.coeffs[0] == pytest.approx(np.array([[1, 0], [0, 2]]))
        assert S.coeffs[1] == pytest.approx(np.array([[0, 0], [1, 0]]))

    def test_matches_pointwise_product(self):
        rng = np.random.default_rng(13)
        x = random_poly(rng, 3, 4)
        K = 64
        S_samples = sample_on_grid(multiply_by_adjoint(x), K).samples
        x_samples = sample_on_grid(x, K).samples
        product = x_samples @ x_samples.conj().transpose(0, 2, 1)
        scale = np.max(np.abs(S_samples))
        assert np.max(np.abs(S_samples - product)) < 1e-10 * scale

    def test_rejects_zero_polynomial(self):
        with pytest.raises(ValueError, match="zero"):
            multiply_by_adjoint(scalar_poly(0.0))


class TestInvariants:
    def test_sigma0_must_be_hermitian(self):
        with pytest.raises(ValueError, match="Hermitian"):
            HermitianLaurentPolynomial(np.array([[[0, 1], [0, 0]]], dtype=complex))

    def test_rejects_nonfinite_coefficients(self):
        with pytest.raises(ValueError, match="finite"):
            MatrixPolynomial(np.array([[[np.inf]]], dtype=complex))

    def test_rejects_nonsquare(self):
        with pytest.raises(ValueError):
            MatrixPolynomial(np.zeros((2, 2, 3), dtype=complex))

    def test_degree_is_trimmed(self):
        x = MatrixPolynomial(np.array([[[1.0]], [[1e-30]]], dtype=complex))
        assert x.m == 0

    def test_tiny_but_uniform_scale_is_kept(self):
        x = MatrixPolynomial(np.array([[[1e-20]], [[1e-20]]], dtype=complex))
        assert x.m == 1

    def test_sampled_function_validates_grid(self):
        with pytest.raises(ValueError, match="power of two"):
            SampledMatrixFunction(np.zeros((3, 1, 1), dtype=complex))

    def test_default_grid_size(self):
        assert default_grid_size(0) == 8
        assert default_grid_size(3) == 32
        assert default_grid_size(4) == 64


@st.composite
def polynomial_stacks(draw):
    r = draw(st.integers(min_value=1, max_value=3))
    m = draw(st.integers(min_value=0, max_value=4))
    seed = draw(st.integers(min_value=0, max_value=2**31))
    rng = np.random.default_rng(seed)
    return rng.standard_normal((m + 1, r, r)) + 1j * rng.standard_normal((m + 1, r, r))


@settings(max_examples=40, deadline=None)
@given(stack=polynomial_stacks(), pad=st.integers(min_value=0, max_value=2))
def test_sampling_round_trip_property(stack, pad):
    x = MatrixPolynomial(stack)
    K = default_grid_size(x.m) << pad
    coeffs = coefficients_from_samples(sample_on_grid(x, K), 0, x.m)
    assert np.max(np.abs(coeffs - x.coeffs)) < 1e-12 * max(1.0, np.max(np.abs(x.coeffs)))


@settings(max_examples=40, deadline=None)
@given(stack=polynomial_stacks())
def test_grid_samples_of_spectra_are_hermitian(stack):
    S = multiply_by_adjoint(MatrixPolynomial(stack))
    samples = sample_on_grid(S, default_grid_size(S.m)).samples
    for value in samples:
        gap = np.linalg.norm(value - value.conj().T)
        assert gap <= 1e-10 * (1.0 + np.linalg.norm(value))


@settings(max_examples=40, deadline=None)
@given(stack=polynomial_stacks())
def test_induced_spectra_are_positive_semidefinite(stack):
    S = multiply_by_adjoint(MatrixPolynomial(stack))
    samples = sample_on_grid(S, default_grid_size(S.m)).samples
    for value in samples:
        hermitized = 0.5 * (value + value.conj().T)
        min_eig = np.linalg.eigvalsh(hermitized)[0]
        assert min_eig >= -1e-10 * np.linalg.norm(value)
