"""State constructors: GHZ, white-noise GHZ mixtures, Dür bound entangled states.

Random product, separable and general mixed states are provided as test
inputs for the PPT criteria.
"""

from __future__ import annotations

import enum

import numpy as np

from pptineq.config import N_MAX
from pptineq.errors import CapacityError, DomainError
from pptineq.qmat import DensityOperator, PureState

__all__ = [
    "GhzSign",
    "ghz",
    "noisy_ghz",
    "dur_state",
    "basis_projector",
    "random_product_state",
    "random_separable_state",
    "random_density_matrix",
]


class GhzSign(str, enum.Enum):
    PLUS = "plus"
    MINUS = "minus"


def _check_n(n: int, minimum: int = 1) -> None:
    if n < minimum:
        raise DomainError(f"need at least {minimum} qubits, got {n}")
    if n > N_MAX:
        raise CapacityError(f"{n} qubits exceeds N_max={N_MAX}")


def ghz(n: int, sign: GhzSign | str = GhzSign.PLUS) -> PureState:
    """``(|0...0> +- |1...1>) / sqrt(2)`` on ``n`` qubits."""
    _check_n(n)
    sign = GhzSign(sign)
    amps = np.zeros(1 << n, dtype=np.complex128)
    amps[0] = 1 / np.sqrt(2)
    amps[-1] = (1 if sign is GhzSign.PLUS else -1) / np.sqrt(2)
    return PureState(amps, n)


def noisy_ghz(n: int, visibility: float) -> DensityOperator:
    """``V |psi+><psi+| + (1 - V) I / 2^n``."""
    _check_n(n, 2)
    v = float(visibility)
    if not 0.0 <= v <= 1.0:
        raise DomainError(f"visibility must lie in [0, 1], got {visibility}")
    psi = ghz(n).amplitudes
    dim = 1 << n
    mat = v * np.outer(psi, psi.conj()) + (1 - v) * np.eye(dim) / dim
    return DensityOperator(mat, n)


def basis_projector(n: int, index: int) -> np.ndarray:
    """``|index><index|`` as a dense matrix."""
    mat = np.zeros((1 << n, 1 << n), dtype=np.complex128)
    mat[index, index] = 1.0
    return mat


def dur_state(n: int) -> DensityOperator:
    """Dür's N-qubit bound entangled state.

    ``1/(N+1) (|psi+><psi+| + 1/2 sum_k (P_k + P~_k))`` where ``P_k`` projects
    onto the basis state with a single 1 on qubit ``k`` (0-indexed) and
    ``P~_k`` onto its bitwise complement.
    """
    _check_n(n, 3)
    full = (1 << n) - 1
    psi = ghz(n).amplitudes
    acc = np.outer(psi, psi.conj())
    for k in range(n):
        single = 1 << (n - 1 - k)
        # P_k and its complement are diagonal basis projectors
        acc[single, single] += 0.5
        acc[full ^ single, full ^ single] += 0.5
    return DensityOperator(acc / (n + 1), n)


def _haar_qubit(rng: np.random.Generator) -> np.ndarray:
    z = rng.normal(size=2) + 1j * rng.normal(size=2)
    return z / np.linalg.norm(z)


def _product_matrix(n: int, rng: np.random.Generator) -> np.ndarray:
    vec = np.ones(1, dtype=np.complex128)
    for _ in range(n):
        vec = np.kron(vec, _haar_qubit(rng))
    vec /= np.linalg.norm(vec)
    return np.outer(vec, vec.conj())


def random_product_state(n: int, seed: int) -> DensityOperator:
    """Tensor product of ``n`` Haar-random pure qubit states."""
    _check_n(n)
    rng = np.random.default_rng(seed)
    return DensityOperator(_product_matrix(n, rng), n)


def random_separable_state(n: int, terms: int, seed: int) -> DensityOperator:
    """Convex mixture of ``terms`` random product states with Dirichlet(1, ..., 1) weights."""
    _check_n(n)
    if terms < 1:
        raise DomainError(f"need at least one term, got {terms}")
    rng = np.random.default_rng(seed)
    weights = rng.dirichlet(np.ones(terms))
    mat = sum(w * _product_matrix(n, rng) for w in weights)
    mat = mat / np.trace(mat).real
    return DensityOperator(mat, n)


def random_density_matrix(n: int, seed: int, rank: int | None = None) -> DensityOperator:
    """Random mixed state ``G G^dag / Tr`` from a complex Ginibre ``G`` (full rank by default)."""
    _check_n(n)
    dim = 1 << n
    rank = dim if rank is None else rank
    if not 1 <= rank <= dim:
        raise DomainError(f"rank must lie in [1, {dim}], got {rank}")
    rng = np.random.default_rng(seed)
    g = rng.normal(size=(dim, rank)) + 1j * rng.normal(size=(dim, rank))
    mat = g @ g.conj().T
    mat = (mat + mat.conj().T) / 2
    return DensityOperator(mat / np.trace(mat).real, n)
