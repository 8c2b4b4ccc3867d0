"""Bipartition PPT signatures and the inequality evaluators built on them."""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field

import numpy as np

from pptineq.config import DEFAULT_TOLERANCES, FULL_SPECTRUM_MAX, N_MAX, Tolerances
from pptineq.errors import CapacityError, DomainError, NumericalError
from pptineq.qmat import (
    DensityOperator,
    hermitian_eigenvalues,
    min_eigenvalue,
    partial_transpose,
    pauli_string_expectation,
    qubit_mask,
)
from pptineq.states import GhzSign
from pptineq.witnesses import WitnessKind, build_witness, p_ppt_ghz_functional

__all__ = [
    "Bipartition",
    "CutRecord",
    "PptSignature",
    "Criterion",
    "CriterionReport",
    "AcinReport",
    "enumerate_bipartitions",
    "ppt_signature",
    "evaluate_ppt_inequality",
    "evaluate_mermin_ppt_bound",
    "evaluate_p_ppt_ghz",
    "zukowski_brukner_sum",
    "acin_consistency_check",
]


@dataclass(frozen=True, order=True)
class Bipartition:
    """A cut ``A | B`` of the qubits; ``side_a`` always contains qubit 0."""

    side_a: tuple[int, ...]
    n_qubits: int

    def __post_init__(self):
        side = tuple(sorted(self.side_a))
        object.__setattr__(self, "side_a", side)
        if not side or side[0] != 0 or len(side) >= self.n_qubits:
            raise DomainError(f"{side} is not a canonical cut of {self.n_qubits} qubits")
        qubit_mask(side, self.n_qubits)

    @property
    def side_b(self) -> tuple[int, ...]:
        return tuple(q for q in range(self.n_qubits) if q not in self.side_a)

    @property
    def mask(self) -> int:
        """Side A as a set bitmask, qubit ``q`` at bit ``q``; used for canonical ordering."""
        return sum(1 << q for q in self.side_a)

    def __str__(self) -> str:
        return "".join(map(str, self.side_a)) + "|" + "".join(map(str, self.side_b))


@dataclass(frozen=True)
class CutRecord:
    bipartition: Bipartition
    min_eigenvalue: float
    is_ppt: bool


@dataclass(frozen=True)
class PptSignature:
    records: tuple[CutRecord, ...]

    @property
    def all_ppt(self) -> bool:
        return all(r.is_ppt for r in self.records)

    @property
    def npt_cuts(self) -> list[Bipartition]:
        return [r.bipartition for r in self.records if not r.is_ppt]


class Criterion(str, enum.Enum):
    PPT_INEQUALITY = "pptInequality"
    MERMIN_PPT_BOUND = "merminPptBound"
    P_PPT_GHZ = "pPptGhz"
    ZUKOWSKI_BRUKNER = "zukowskiBrukner"


@dataclass(frozen=True)
class CriterionReport:
    criterion: Criterion
    value: float
    bound: float
    violated: bool
    margin: float


@dataclass(frozen=True)
class AcinReport:
    violated_ppt_inequality: bool
    has_npt_cut: bool
    consistent: bool
    signature: PptSignature | None = field(default=None, repr=False)


def _report(criterion: Criterion, value: float, bound: float, tol: Tolerances) -> CriterionReport:
    value = float(value)
    return CriterionReport(criterion, value, bound, bool(value > bound + tol.eig), value - bound)


def enumerate_bipartitions(n: int) -> list[Bipartition]:
    """All ``2^(n-1) - 1`` cuts with qubit 0 on side A, ascending by :attr:`Bipartition.mask`."""
    if n < 2:
        raise DomainError(f"bipartitions need at least 2 qubits, got {n}")
    if n > N_MAX:
        raise CapacityError(f"{n} qubits exceeds N_max={N_MAX}")
    # odd masks below 2^n - 1: qubit 0 in A, B non-empty
    return [
        Bipartition(tuple(q for q in range(n) if mask >> q & 1), n) for mask in range(1, (1 << n) - 1, 2)
    ]


def _cut_min_eigenvalue(rho: DensityOperator, cut: Bipartition, self_check: bool, tol: Tolerances) -> float:
    pt = partial_transpose(rho, cut.side_a)
    if rho.n_qubits <= FULL_SPECTRUM_MAX:
        spec = hermitian_eigenvalues(pt, tol=tol)
        if self_check:
            spec_c = hermitian_eigenvalues(partial_transpose(rho, cut.side_b), tol=tol)
            gap = float(np.max(np.abs(spec - spec_c)))
            if gap > tol.eig:
                raise NumericalError(
                    f"complementary-cut spectra differ by {gap:.3e} on cut {cut}", bipartition=cut
                )
        return float(spec[0])
    lam = min_eigenvalue(pt, method="lanczos", tol=tol)
    if self_check:
        lam_c = min_eigenvalue(partial_transpose(rho, cut.side_b), method="lanczos", tol=tol)
        if abs(lam - lam_c) > tol.eig:
            raise NumericalError(
                f"complementary-cut minimum eigenvalues differ by {abs(lam - lam_c):.3e} on cut {cut}",
                bipartition=cut,
            )
    return lam


def ppt_signature(
    rho: DensityOperator, *, self_check: bool = True, tol: Tolerances = DEFAULT_TOLERANCES
) -> PptSignature:
    """PPT verdict and minimum partial-transpose eigenvalue for every canonical cut.

    A cut counts as PPT when ``lambda_min >= -tol.psd``; exact zeros are
    positive. With ``self_check`` the complementary transpose ``T_{B}`` is
    diagonalized too and must reproduce the spectrum of ``T_{A}``.
    """
    records = []
    for cut in enumerate_bipartitions(rho.n_qubits):
        try:
            lam = _cut_min_eigenvalue(rho, cut, self_check, tol)
        except NumericalError as exc:
            if exc.bipartition is None:
                exc.bipartition = cut
                exc.args = (f"{exc.args[0]} (cut {cut})",)
            raise
        records.append(CutRecord(cut, lam, bool(lam >= -tol.psd)))
    return PptSignature(tuple(records))


def _witness_value(kind: WitnessKind, rho: DensityOperator, method: str) -> float:
    w = build_witness(kind, rho.n_qubits)
    if method == "dense":
        return w.dense_expectation(rho)
    if method != "structured":
        raise DomainError(f"unknown evaluation method {method!r}")
    return w.expectation(rho)


def evaluate_ppt_inequality(
    rho: DensityOperator, *, method: str = "structured", tol: Tolerances = DEFAULT_TOLERANCES
) -> CriterionReport:
    """``|<P_N>| <= 1``, satisfied by every state that is PPT across all cuts."""
    value = abs(_witness_value(WitnessKind.PPT_OPERATOR, rho, method))
    return _report(Criterion.PPT_INEQUALITY, value, 1.0, tol)


def evaluate_mermin_ppt_bound(
    rho: DensityOperator, *, method: str = "structured", tol: Tolerances = DEFAULT_TOLERANCES
) -> CriterionReport:
    """``|<B_N>| <= 2^(-(N-1)/2)``: the Bell-Mermin value reachable by N-PPT states."""
    value = abs(_witness_value(WitnessKind.MERMIN2, rho, method))
    return _report(Criterion.MERMIN_PPT_BOUND, value, 2.0 ** (-(rho.n_qubits - 1) / 2), tol)


def evaluate_p_ppt_ghz(
    rho: DensityOperator, p: int, *, tol: Tolerances = DEFAULT_TOLERANCES
) -> tuple[CriterionReport, CriterionReport]:
    """Both sign variants of the p-PPT GHZ inequality, ``(leading plus, leading minus)``."""
    bound = 2.0 ** (1 - p)
    return tuple(
        _report(Criterion.P_PPT_GHZ, p_ppt_ghz_functional(rho, p, sign), bound, tol)
        for sign in (GhzSign.PLUS, GhzSign.MINUS)
    )


def zukowski_brukner_sum(rho: DensityOperator, *, method: str = "sparse") -> float:
    """Sum of squared correlations over all ``2^N`` strings of ``sigma_x`` / ``sigma_y``.

    A value at most 1 means every two-setting Bell experiment on the state
    has a local realistic model.
    """
    return float(
        sum(
            pauli_string_expectation(rho, settings, method=method) ** 2
            for settings in itertools.product("xy", repeat=rho.n_qubits)
        )
    )


def zukowski_brukner_report(rho: DensityOperator, *, tol: Tolerances = DEFAULT_TOLERANCES) -> CriterionReport:
    return _report(Criterion.ZUKOWSKI_BRUKNER, zukowski_brukner_sum(rho), 1.0, tol)


def acin_consistency_check(rho: DensityOperator, *, tol: Tolerances = DEFAULT_TOLERANCES) -> AcinReport:
    """A violated PPT inequality must come with at least one NPT cut."""
    if rho.n_qubits > FULL_SPECTRUM_MAX:
        raise CapacityError(f"consistency check needs full spectra, limited to {FULL_SPECTRUM_MAX} qubits")
    violated = evaluate_ppt_inequality(rho, tol=tol).violated
    sig = ppt_signature(rho, tol=tol)
    has_npt = not sig.all_ppt
    return AcinReport(violated, has_npt, (not violated) or has_npt, sig)
