"""Markov-model KLT theory and its DCT limit."""

from dctnet.theory.markov import (
    EigenvalueForm,
    KltEigenSystem,
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

__all__ = [
    "EigenvalueForm",
    "KltEigenSystem",
    "MarkovModel",
    "build_correlation_matrix",
    "compare_klt_dct",
    "dct_limit_basis",
    "frequency_equation",
    "klt_eigensystem",
    "klt_eigenvector",
    "markov_eigenvalues",
    "matching_form",
    "solve_omega_roots",
]
