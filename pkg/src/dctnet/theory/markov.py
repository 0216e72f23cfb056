"""First-order Markov correlation model, its closed-form KLT, and the DCT limit.

The dense symmetric eigensolver is treated as ground truth throughout: the
closed-form eigenvalue expression is evaluated in both numerator forms
(``1 - r`` and ``1 - r^2``) and :func:`compare_klt_dct` reports which one
reproduces the numeric spectrum.

Root finding for the transcendental frequency equation
``tan(N w) = -(1 - r^2) sin w / ((1 + r^2) cos w - 2 r)`` works on a
pole-free reformulation. Multiplying through by ``cos(N w) / sin w`` gives::

    g(w) = U_{N-1}(cos w) * ((1 + r^2) cos w - 2 r) + (1 - r^2) cos(N w)

where ``U_{N-1}`` is the Chebyshev polynomial of the second kind
(``sin(N w) / sin w``). ``g`` is continuous on ``[0, pi]``, nonzero at both
ends, and has exactly N roots inside.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

import numpy as np
from scipy import fft, linalg, optimize, special

from dctnet.errors import ParameterError, RootCountError, SingularModelError
from dctnet.linalg import fix_sign, sorted_eigh
from dctnet.output.schema import KltReport, KltRow

logger = logging.getLogger(__name__)

GRID_POINTS_PER_ROOT = 50
ROOT_XTOL = 1e-12


class EigenvalueForm(str, Enum):
    """Numerator of the closed-form eigenvalue expression."""

    PRINTED = "1 - r"
    STANDARD = "1 - r^2"


@dataclass(frozen=True)
class MarkovModel:
    """Stationary first-order Markov signal model.

    Attributes:
        r: Correlation coefficient between neighbouring samples, ``0 <= r < 1``.
        length: Signal length N, at least 2.
    """

    r: float
    length: int

    def __post_init__(self) -> None:
        if isinstance(self.length, bool) or int(self.length) != self.length or self.length < 2:
            raise ParameterError(f"Signal length must be an integer >= 2, got {self.length}", name="length")
        if not 0.0 <= self.r <= 1.0:
            raise ParameterError(f"Correlation must satisfy 0 <= r <= 1, got {self.r}", name="r")
        if self.r == 1.0:
            raise SingularModelError()


@dataclass(frozen=True)
class KltEigenSystem:
    """Closed-form KLT of a Markov model.

    ``eigenvectors[:, n]`` belongs to ``omegas[n]`` and ``eigenvalues[n]``;
    frequencies ascend, so eigenvalues descend.
    """

    omegas: np.ndarray
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    form: EigenvalueForm


def build_correlation_matrix(model: MarkovModel) -> np.ndarray:
    """Toeplitz correlation matrix with entries ``r ** |i - j|``."""
    return linalg.toeplitz(model.r ** np.arange(model.length, dtype=np.float64))


def frequency_equation(omega: np.ndarray | float, model: MarkovModel) -> np.ndarray | float:
    """Evaluate the pole-free frequency function ``g`` (see module docstring)."""
    r, n = model.r, model.length
    c = np.cos(omega)
    return special.eval_chebyu(n - 1, c) * ((1.0 + r * r) * c - 2.0 * r) + (1.0 - r * r) * np.cos(n * omega)


def solve_omega_roots(
    model: MarkovModel,
    *,
    grid_factor: int = GRID_POINTS_PER_ROOT,
    xtol: float = ROOT_XTOL,
) -> np.ndarray:
    """Find the N roots of the frequency equation in ``(0, pi)``, ascending.

    Scans a uniform grid of ``grid_factor * N`` cells for sign changes and
    refines each bracket with Brent's method to ``xtol``.

    Raises:
        ParameterError: If ``r`` is not strictly between 0 and 1.
        RootCountError: If the scan does not bracket exactly N roots.
    """
    if not 0.0 < model.r < 1.0:
        raise ParameterError(f"Root solving requires 0 < r < 1, got {model.r}", name="r")

    grid = np.linspace(0.0, np.pi, grid_factor * model.length + 1)
    values = frequency_equation(grid, model)
    hits = np.flatnonzero((values[:-1] * values[1:] < 0.0) | (values[:-1] == 0.0))

    roots: list[float] = []
    brackets: list[tuple[float, float]] = []
    for i in hits:
        a, b = float(grid[i]), float(grid[i + 1])
        brackets.append((a, b))
        if values[i] == 0.0:
            roots.append(a)
            continue
        roots.append(optimize.brentq(frequency_equation, a, b, args=(model,), xtol=xtol))

    logger.debug("r=%s N=%d: %d brackets on %d grid cells", model.r, model.length, len(brackets), grid.size - 1)
    if len(roots) != model.length:
        raise RootCountError(
            f"Expected {model.length} roots of the frequency equation in (0, pi)",
            expected=model.length,
            found=len(roots),
            brackets=brackets,
        )
    return np.sort(np.asarray(roots))


def markov_eigenvalues(
    model: MarkovModel,
    omegas: np.ndarray,
    form: EigenvalueForm = EigenvalueForm.STANDARD,
) -> np.ndarray:
    """Closed-form eigenvalues at the given frequencies."""
    r = model.r
    numerator = 1.0 - r if form is EigenvalueForm.PRINTED else 1.0 - r * r
    return numerator / (1.0 - 2.0 * r * np.cos(omegas) + r * r)


def _relative_error(candidate: np.ndarray, reference: np.ndarray) -> float:
    cand = np.sort(candidate)[::-1]
    ref = np.sort(reference)[::-1]
    return float(np.max(np.abs(cand - ref) / np.abs(ref)))


def matching_form(model: MarkovModel) -> tuple[EigenvalueForm, dict[EigenvalueForm, float]]:
    """Decide which eigenvalue numerator reproduces the numeric spectrum.

    Returns:
        The best-matching form and the max relative error of every form.
    """
    omegas = solve_omega_roots(model)
    numeric = linalg.eigvalsh(build_correlation_matrix(model))
    errors = {form: _relative_error(markov_eigenvalues(model, omegas, form), numeric) for form in EigenvalueForm}
    best = min(errors, key=errors.__getitem__)
    return best, errors


@lru_cache(maxsize=64)
def klt_eigensystem(model: MarkovModel) -> KltEigenSystem:
    """Closed-form eigen-system, using the numerically validated eigenvalue form."""
    omegas = solve_omega_roots(model)
    form, _ = matching_form(model)
    eigenvalues = markov_eigenvalues(model, omegas, form)

    n_len = model.length
    m = np.arange(n_len, dtype=np.float64)[:, None]
    n = np.arange(n_len, dtype=np.float64)[None, :]
    scale = np.sqrt(2.0 / (n_len + eigenvalues))[None, :]
    vectors = scale * np.sin(omegas[None, :] * (m - (n_len - 1) / 2.0) + (n + 1.0) * np.pi / 2.0)
    vectors /= np.linalg.norm(vectors, axis=0, keepdims=True)
    for j in range(n_len):
        vectors[:, j] = fix_sign(vectors[:, j])

    omegas.setflags(write=False)
    eigenvalues.setflags(write=False)
    vectors.setflags(write=False)
    return KltEigenSystem(omegas=omegas, eigenvalues=eigenvalues, eigenvectors=vectors, form=form)


def klt_eigenvector(model: MarkovModel, n: int) -> np.ndarray:
    """The n-th closed-form KLT eigenvector (n-th smallest frequency)."""
    if not 0 <= n < model.length:
        raise ParameterError(f"Eigenvector index must be in [0, {model.length - 1}], got {n}", name="n")
    return klt_eigensystem(model).eigenvectors[:, n].copy()


@lru_cache(maxsize=64)
def _dct_matrix(length: int) -> np.ndarray:
    matrix = fft.dct(np.eye(length), type=2, norm="ortho", axis=0)
    matrix.setflags(write=False)
    return matrix


def dct_limit_basis(length: int, n: int) -> np.ndarray:
    """Orthonormal 1D DCT-II basis vector ``n`` of the given length."""
    if length < 1:
        raise ParameterError(f"Length must be >= 1, got {length}", name="length")
    if not 0 <= n < length:
        raise ParameterError(f"Basis index must be in [0, {length - 1}], got {n}", name="n")
    return _dct_matrix(length)[n].copy()


def compare_klt_dct(model: MarkovModel) -> KltReport:
    """Compare the numeric KLT of the Markov model against DCT bases.

    Eigenvectors from the dense solver, sorted by descending eigenvalue, are
    compared against DCT bases sorted by ascending frequency using the
    sign-invariant ``|cos|``. The report also carries the eigenvalue-form
    check, closed-form residuals, and the eigenvalue/frequency ordering checks.
    """
    corr = build_correlation_matrix(model)
    numeric_values, numeric_vectors = sorted_eigh(corr)
    system = klt_eigensystem(model)
    _, form_errors = matching_form(model)

    dct = _dct_matrix(model.length)
    cosines = np.abs(np.einsum("mn,nm->n", numeric_vectors, dct))

    residuals = np.linalg.norm(
        corr @ system.eigenvectors - system.eigenvectors * system.eigenvalues[None, :], axis=0
    )
    overlap = np.abs(numeric_vectors.T @ system.eigenvectors)
    order_consistent = bool(np.array_equal(np.argmax(overlap, axis=1), np.arange(model.length)))

    rows = [
        KltRow(
            n=n,
            omega=float(system.omegas[n]),
            lambda_formula=float(system.eigenvalues[n]),
            lambda_numeric=float(numeric_values[n]),
            cos_similarity=float(cosines[n]),
        )
        for n in range(model.length)
    ]
    return KltReport(
        r=model.r,
        length=model.length,
        numerator_match=system.form.value,
        printed_relative_error=form_errors[EigenvalueForm.PRINTED],
        standard_relative_error=form_errors[EigenvalueForm.STANDARD],
        min_cos=float(cosines.min()),
        mean_cos=float(cosines.mean()),
        eigenvalues_decreasing=bool(np.all(np.diff(system.eigenvalues) < 0.0)),
        order_consistent=order_consistent,
        max_closed_form_residual=float(residuals.max()),
        lambda0_numeric=float(numeric_values[0]),
        lambda0_over_length=float(numeric_values[0] / model.length),
        rows=rows,
    )
