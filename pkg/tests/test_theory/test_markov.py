"""Tests for the Markov correlation model, its closed-form KLT and the DCT limit."""

import numpy as np
import pytest

from dctnet.errors import ParameterError, SingularModelError
from dctnet.theory.markov import (
    EigenvalueForm,
    MarkovModel,
    build_correlation_matrix,
    compare_klt_dct,
    dct_limit_basis,
    frequency_equation,
    klt_eigensystem,
    klt_eigenvector,
    markov_eigenvalues,
    matching_form,
    solve_omega_roots,
)


# ── Model validation ─────────────────────────────────────────────


class TestMarkovModel:
    def test_r_one_is_singular(self) -> None:
        with pytest.raises(SingularModelError):
            MarkovModel(r=1.0, length=8)

    def test_singular_is_a_parameter_error(self) -> None:
        with pytest.raises(ParameterError):
            MarkovModel(r=1.0, length=8)

    @pytest.mark.parametrize("r", [-0.1, 1.5])
    def test_r_out_of_range(self, r: float) -> None:
        with pytest.raises(ParameterError):
            MarkovModel(r=r, length=8)

    @pytest.mark.parametrize("length", [0, 1])
    def test_length_too_small(self, length: int) -> None:
        with pytest.raises(ParameterError):
            MarkovModel(r=0.5, length=length)

    def test_r_zero_is_identity(self) -> None:
        corr = build_correlation_matrix(MarkovModel(r=0.0, length=4))
        np.testing.assert_array_equal(corr, np.eye(4))


class TestCorrelationMatrix:
    def test_toeplitz_entries(self) -> None:
        corr = build_correlation_matrix(MarkovModel(r=0.5, length=4))
        assert corr[0, 3] == pytest.approx(0.125)
        assert corr[2, 1] == pytest.approx(0.5)
        np.testing.assert_array_equal(corr, corr.T)
        np.testing.assert_array_equal(np.diag(corr), np.ones(4))


# ── Frequency roots ──────────────────────────────────────────────


class TestOmegaRoots:
    @pytest.mark.parametrize("length", [2, 4, 8, 16])
    @pytest.mark.parametrize("r", [0.5, 0.9, 0.99])
    def test_exactly_n_sorted_roots(self, r: float, length: int) -> None:
        model = MarkovModel(r=r, length=length)
        roots = solve_omega_roots(model)
        assert roots.shape == (length,)
        assert np.all(np.diff(roots) > 0)
        assert np.all((roots > 0) & (roots < np.pi))

    def test_roots_zero_the_equation(self) -> None:
        model = MarkovModel(r=0.9, length=8)
        roots = solve_omega_roots(model)
        np.testing.assert_allclose(frequency_equation(roots, model), 0.0, atol=1e-8)

    def test_r_zero_rejected(self) -> None:
        with pytest.raises(ParameterError):
            solve_omega_roots(MarkovModel(r=0.0, length=4))

    def test_roots_approach_dct_frequencies(self) -> None:
        roots = solve_omega_roots(MarkovModel(r=0.9999, length=8))
        assert abs(roots[0]) < 0.05
        assert np.max(np.abs(roots[1:] - np.arange(1, 8) * np.pi / 8)) < 1e-2


# ── Closed-form eigen-system ─────────────────────────────────────


class TestEigenvalueForms:
    def test_standard_numerator_matches_numeric_spectrum(self) -> None:
        form, errors = matching_form(MarkovModel(r=0.9, length=8))
        assert form is EigenvalueForm.STANDARD
        assert errors[EigenvalueForm.STANDARD] < 1e-8
        assert errors[EigenvalueForm.PRINTED] > 1e-3

    def test_formula_values(self) -> None:
        model = MarkovModel(r=0.5, length=4)
        values = markov_eigenvalues(model, np.array([0.0]), EigenvalueForm.PRINTED)
        assert values[0] == pytest.approx(0.5 / 0.25)


class TestKltEigensystem:
    def test_vectors_are_eigenvectors(self) -> None:
        model = MarkovModel(r=0.9, length=8)
        system = klt_eigensystem(model)
        corr = build_correlation_matrix(model)
        residual = corr @ system.eigenvectors - system.eigenvectors * system.eigenvalues[None, :]
        assert np.abs(residual).max() < 1e-8

    def test_vectors_are_orthonormal(self) -> None:
        vectors = klt_eigensystem(MarkovModel(r=0.95, length=8)).eigenvectors
        np.testing.assert_allclose(vectors.T @ vectors, np.eye(8), atol=1e-8)

    def test_eigenvector_index_checked(self) -> None:
        with pytest.raises(ParameterError):
            klt_eigenvector(MarkovModel(r=0.9, length=4), 4)

    def test_arrays_are_read_only(self) -> None:
        system = klt_eigensystem(MarkovModel(r=0.9, length=4))
        with pytest.raises(ValueError):
            system.eigenvalues[0] = 0.0


class TestDctLimitBasis:
    def test_dc_is_constant(self) -> None:
        np.testing.assert_allclose(dct_limit_basis(4, 0), np.full(4, 0.5))

    def test_orthonormal_rows(self) -> None:
        basis = np.stack([dct_limit_basis(6, n) for n in range(6)])
        np.testing.assert_allclose(basis @ basis.T, np.eye(6), atol=1e-12)

    def test_index_checked(self) -> None:
        with pytest.raises(ParameterError):
            dct_limit_basis(4, 4)


# ── KLT -> DCT convergence ───────────────────────────────────────


class TestKltDctConvergence:
    @pytest.mark.parametrize("length", [4, 8, 16])
    def test_min_cos_monotone_in_r(self, length: int) -> None:
        mins = [compare_klt_dct(MarkovModel(r=r, length=length)).min_cos for r in (0.9, 0.99, 0.999)]
        assert mins[0] <= mins[1] <= mins[2]
        assert mins[2] >= 0.995

    def test_r_0999_n8_passes_cli_threshold(self) -> None:
        report = compare_klt_dct(MarkovModel(r=0.999, length=8))
        assert report.min_cos >= 0.999
        assert len(report.rows) == 8

    def test_lambda0_tends_to_length(self) -> None:
        report = compare_klt_dct(MarkovModel(r=0.999, length=8))
        assert report.lambda0_over_length == pytest.approx(1.0, abs=0.01)


class TestEigenvalueOrdering:
    def test_decreasing_over_sorted_roots(self) -> None:
        report = compare_klt_dct(MarkovModel(r=0.9, length=100))
        assert report.eigenvalues_decreasing is True
        assert report.numerator_match == "1 - r^2"
        assert report.order_consistent is True
        assert report.max_closed_form_residual < 1e-6

    def test_report_text_names_the_numerator(self) -> None:
        text = compare_klt_dct(MarkovModel(r=0.9, length=8)).to_text()
        assert "1 - r^2" in text
