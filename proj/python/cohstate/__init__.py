"""Coherent states for discrete spectra."""

from ._core import (
    Error,
    Spectrum,
    autocorrelation,
    canonical_one_form,
    coefficients,
    diagonal_residuals,
    evolve,
    hydrogen_normalization_closed,
    mean_energy,
    normalization_sq,
    overlap,
    rho,
    variance_v,
    verify,
)

__all__ = [
    "Error",
    "Spectrum",
    "autocorrelation",
    "canonical_one_form",
    "coefficients",
    "diagonal_residuals",
    "evolve",
    "hydrogen_normalization_closed",
    "mean_energy",
    "normalization_sq",
    "overlap",
    "rho",
    "variance_v",
    "verify",
]
