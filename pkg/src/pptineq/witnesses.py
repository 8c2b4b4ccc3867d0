"""GHZ-diagonal witness operators and the p-PPT GHZ functional.

Every witness here has the form ``c_N (|psi+><psi+| - |psi-><psi-|)`` and is
bounded by 1 in absolute value under its hypothesis (local realism for the
three Bell operators, positivity of every partial transpose for the PPT
operator). Only the prefactor ``c_N`` differs between kinds.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from pptineq.config import DEFAULT_TOLERANCES, N_MAX, Tolerances
from pptineq.errors import CapacityError, DomainError
from pptineq.qmat import DensityOperator, HermitianOperator, expectation
from pptineq.states import GhzSign, ghz

__all__ = [
    "WitnessKind",
    "WitnessOperator",
    "witness_coefficient",
    "build_witness",
    "ghz_interference_value",
    "p_ppt_ghz_functional",
]


class WitnessKind(str, enum.Enum):
    MERMIN2 = "mermin2"
    THREE_SETTING = "threeSetting"
    CONTINUOUS = "continuous"
    PPT_OPERATOR = "pptOperator"


def witness_coefficient(kind: WitnessKind | str, n: int) -> float:
    """Prefactor of the GHZ interference operator for ``kind`` at ``n`` qubits."""
    kind = WitnessKind(kind)
    if kind is WitnessKind.MERMIN2:
        return 2.0 ** ((n - 1) / 2)
    if kind is WitnessKind.THREE_SETTING:
        return 1.5**n / math.sqrt(3.0)
    if kind is WitnessKind.CONTINUOUS:
        return 0.5 * (math.pi / 2) ** n
    return 2.0 ** (n - 1)


def _interference_matrix(n: int) -> np.ndarray:
    plus, minus = ghz(n, GhzSign.PLUS).amplitudes, ghz(n, GhzSign.MINUS).amplitudes
    return np.outer(plus, plus.conj()) - np.outer(minus, minus.conj())


@dataclass(frozen=True)
class WitnessOperator:
    """A GHZ-diagonal witness in structured form; ``op`` is the dense matrix built on demand."""

    kind: WitnessKind
    n_qubits: int
    coefficient: float
    classical_bound: float = 1.0

    @cached_property
    def op(self) -> HermitianOperator:
        return HermitianOperator(self.coefficient * _interference_matrix(self.n_qubits), self.n_qubits)

    def expectation(self, rho: DensityOperator) -> float:
        """Structured evaluation: coefficient times the GHZ interference value."""
        if rho.n_qubits != self.n_qubits:
            raise DomainError(f"witness acts on {self.n_qubits} qubits, state has {rho.n_qubits}")
        return self.coefficient * ghz_interference_value(rho)

    def dense_expectation(self, rho: DensityOperator) -> float:
        return expectation(self.op, rho)


def build_witness(kind: WitnessKind | str, n: int) -> WitnessOperator:
    if n < 2:
        raise DomainError(f"witnesses need at least 2 qubits, got {n}")
    if n > N_MAX:
        raise CapacityError(f"{n} qubits exceeds N_max={N_MAX}")
    kind = WitnessKind(kind)
    return WitnessOperator(kind, n, witness_coefficient(kind, n))


def _ghz_fidelities(rho: DensityOperator) -> tuple[float, float]:
    # <psi+-|rho|psi+-> only touches the corner entries of rho.
    m = rho.matrix
    last = m.shape[0] - 1
    diag = float(m[0, 0].real + m[last, last].real) / 2
    coherence = float(m[0, last].real)
    return diag + coherence, diag - coherence


def ghz_interference_value(rho: DensityOperator) -> float:
    """``Tr[(|psi+><psi+| - |psi-><psi-|) rho]``, equal to ``2 Re rho[0, 2^N - 1]``."""
    f_plus, f_minus = _ghz_fidelities(rho)
    return f_plus - f_minus


def p_ppt_ghz_functional(rho: DensityOperator, p: int, leading: GhzSign | str = GhzSign.PLUS) -> float:
    """``Tr[(|psi+-><psi+-| - (1 - 2^(2-p)) |psi-+><psi-+|) rho]``.

    ``leading`` picks which GHZ projector carries the unit weight. Every
    p-PPT state keeps this at most ``2^(1-p)``.
    """
    if not 2 <= p <= rho.n_qubits:
        raise DomainError(f"p must lie in [2, {rho.n_qubits}], got {p}")
    f_plus, f_minus = _ghz_fidelities(rho)
    if GhzSign(leading) is GhzSign.MINUS:
        f_plus, f_minus = f_minus, f_plus
    return f_plus - (1 - 2.0 ** (2 - p)) * f_minus


def ghz_diagonal_check(witness: WitnessOperator, rho: DensityOperator, tol: Tolerances = DEFAULT_TOLERANCES) -> bool:
    """True when the structured and dense evaluations agree within ``tol.eig``."""
    return abs(witness.expectation(rho) - witness.dense_expectation(rho)) <= tol.eig
