"""Numerical tolerances and capacity limits."""

from __future__ import annotations

from dataclasses import dataclass

# Largest qubit count any constructor accepts.
N_MAX = 14
# Largest qubit count for which full spectra are computed densely.
FULL_SPECTRUM_MAX = 10


@dataclass(frozen=True)
class Tolerances:
    """Floating point thresholds standing in for exact comparisons.

    ``herm`` is a max elementwise deviation, ``psd`` bounds how negative the
    smallest eigenvalue of a state (or of a partial transpose) may be while
    still counting as positive.
    """

    herm: float = 1e-10
    psd: float = 1e-9
    eig: float = 1e-9
    trace: float = 1e-12
    norm: float = 1e-12


DEFAULT_TOLERANCES = Tolerances()
# Largest qubit count for which sweeps build dense states.
DENSE_STATE_MAX = 12
