"""Dense operator algebra on N-qubit Hilbert spaces.

Index convention: basis index ``i`` encodes ``|q_0 q_1 ... q_{N-1}>`` with
qubit 0 as the most significant bit, so qubit ``k`` is bit ``N-1-k`` of ``i``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence, Union

import numpy as np
import scipy.linalg as sla

from pptineq.config import DEFAULT_TOLERANCES, FULL_SPECTRUM_MAX, N_MAX, Tolerances
from pptineq.errors import CapacityError, DomainError, NumericalError

__all__ = [
    "HermitianOperator",
    "DensityOperator",
    "PureState",
    "kron",
    "partial_transpose",
    "hermitian_eigenvalues",
    "jacobi_eigenvalues",
    "min_eigenvalue",
    "lanczos_min_eigenvalue",
    "pauli_string_expectation",
    "expectation",
    "qubit_mask",
    "is_psd",
    "check_subset",
]


def _n_qubits_for(dim: int) -> int:
    n = int(dim).bit_length() - 1
    if dim < 2 or (1 << n) != dim:
        raise DomainError(f"dimension {dim} is not a power of two >= 2")
    return n


def _check_capacity(n: int) -> None:
    if n > N_MAX:
        raise CapacityError(f"{n} qubits exceeds N_max={N_MAX}")


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr = np.array(arr, dtype=np.complex128, copy=True)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class HermitianOperator:
    """A Hermitian ``2^N x 2^N`` matrix with its qubit count attached."""

    matrix: np.ndarray
    n_qubits: int

    def __post_init__(self):
        mat = _frozen(self.matrix)
        _check_capacity(self.n_qubits)
        dim = 1 << self.n_qubits
        if mat.shape != (dim, dim):
            raise DomainError(f"expected a {dim}x{dim} matrix for {self.n_qubits} qubits, got {mat.shape}")
        if not np.all(np.isfinite(mat)):
            raise DomainError("matrix contains NaN or Inf")
        object.__setattr__(self, "matrix", mat)
        self._validate(DEFAULT_TOLERANCES)

    def _validate(self, tol: Tolerances) -> None:
        dev = np.max(np.abs(self.matrix - self.matrix.conj().T)) if self.matrix.size else 0.0
        if dev > tol.herm:
            raise DomainError(f"operator is not Hermitian (max deviation {dev:.3e})")

    @classmethod
    def from_array(cls, matrix) -> "HermitianOperator":
        matrix = np.asarray(matrix)
        return cls(matrix, _n_qubits_for(matrix.shape[0]))

    @property
    def dim(self) -> int:
        return 1 << self.n_qubits

    def trace(self) -> complex:
        return complex(np.trace(self.matrix))


@dataclass(frozen=True, eq=False)
class DensityOperator(HermitianOperator):
    """A quantum state: Hermitian, unit trace and positive semidefinite."""

    def _validate(self, tol: Tolerances) -> None:
        super()._validate(tol)
        tr = np.trace(self.matrix)
        if abs(tr - 1) > tol.trace:
            raise DomainError(f"state does not have unit trace (Tr = {tr:.15g})")
        if not is_psd(self.matrix, tol.psd):
            raise DomainError(f"state is not positive semidefinite (lambda_min below -{tol.psd:g})")


@dataclass(frozen=True, eq=False)
class PureState:
    """A normalized state vector of length ``2^N``."""

    amplitudes: np.ndarray
    n_qubits: int

    def __post_init__(self):
        vec = _frozen(self.amplitudes)
        _check_capacity(self.n_qubits)
        if vec.shape != (1 << self.n_qubits,):
            raise DomainError(f"expected {1 << self.n_qubits} amplitudes, got shape {vec.shape}")
        if not np.all(np.isfinite(vec)):
            raise DomainError("amplitudes contain NaN or Inf")
        norm2 = float(np.vdot(vec, vec).real)
        if abs(norm2 - 1) > DEFAULT_TOLERANCES.norm:
            raise DomainError(f"state is not normalized (|psi|^2 = {norm2:.15g})")
        object.__setattr__(self, "amplitudes", vec)

    @classmethod
    def from_array(cls, amplitudes) -> "PureState":
        amplitudes = np.asarray(amplitudes)
        return cls(amplitudes, _n_qubits_for(amplitudes.shape[0]))

    def projector(self) -> DensityOperator:
        return DensityOperator(np.outer(self.amplitudes, self.amplitudes.conj()), self.n_qubits)

    def inner(self, other: "PureState") -> complex:
        return complex(np.vdot(self.amplitudes, other.amplitudes))


Operand = Union[HermitianOperator, np.ndarray]


def _matrix(op: Operand) -> np.ndarray:
    if isinstance(op, HermitianOperator):
        return op.matrix
    mat = np.asarray(op, dtype=np.complex128)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise DomainError(f"expected a square matrix, got shape {mat.shape}")
    return mat


def kron(a, b):
    """Tensor product ``a (x) b``; the qubits of ``b`` follow those of ``a``.

    Works on pairs of :class:`PureState` or pairs of operators. Two density
    operators give a density operator.
    """
    _check_capacity(a.n_qubits + b.n_qubits)
    n = a.n_qubits + b.n_qubits
    if isinstance(a, PureState) and isinstance(b, PureState):
        return PureState(np.kron(a.amplitudes, b.amplitudes), n)
    if isinstance(a, HermitianOperator) and isinstance(b, HermitianOperator):
        cls = DensityOperator if isinstance(a, DensityOperator) and isinstance(b, DensityOperator) else HermitianOperator
        return cls(np.kron(a.matrix, b.matrix), n)
    raise DomainError(f"cannot take kron of {type(a).__name__} and {type(b).__name__}")


def check_subset(subset: Iterable[int], n_qubits: int) -> tuple[int, ...]:
    members = tuple(sorted(int(q) for q in subset))
    if len(set(members)) != len(members):
        raise DomainError(f"duplicate qubit index in {members}")
    for q in members:
        if not 0 <= q < n_qubits:
            raise DomainError(f"qubit index {q} out of range for {n_qubits} qubits")
    return members


def qubit_mask(subset: Iterable[int], n_qubits: int) -> int:
    """Bitmask over basis indices selecting the qubits in ``subset``."""
    mask = 0
    for q in check_subset(subset, n_qubits):
        mask |= 1 << (n_qubits - 1 - q)
    return mask


def partial_transpose(rho: HermitianOperator, subset: Iterable[int]) -> HermitianOperator:
    """Transpose the tensor factors listed in ``subset``.

    Entry ``[i, j]`` of the result is ``rho[i', j']`` where ``i'`` and ``j'``
    are ``i`` and ``j`` with their bits at the ``subset`` positions exchanged.
    No arithmetic is performed, so the map is an exact involution.
    """
    n = rho.n_qubits
    members = check_subset(subset, n)
    tensor = rho.matrix.reshape((2,) * (2 * n))
    axes = list(range(2 * n))
    for q in members:
        axes[q], axes[n + q] = axes[n + q], axes[q]
    out = np.ascontiguousarray(tensor.transpose(axes)).reshape(rho.dim, rho.dim)
    return HermitianOperator(out, n)


def is_psd(matrix, atol: float) -> bool:
    """``lambda_min(matrix) >= -atol``, decided by a Cholesky factorization of ``matrix + atol I``."""
    a = np.asarray(matrix, dtype=np.complex128)
    try:
        sla.cholesky(a + atol * np.eye(a.shape[0]), lower=True, check_finite=False)
    except sla.LinAlgError:
        return False
    return True


def _check_hermitian(mat: np.ndarray, tol: Tolerances) -> None:
    dev = np.max(np.abs(mat - mat.conj().T)) if mat.size else 0.0
    if dev > tol.herm:
        raise DomainError(f"operator is not Hermitian (max deviation {dev:.3e})")


def jacobi_eigenvalues(matrix, *, max_sweeps: int = 100, rtol: float = 1e-12) -> np.ndarray:
    """Eigenvalues of a Hermitian matrix by cyclic complex Jacobi rotations.

    Each rotation first removes the phase of the pivot ``a_pq`` with a
    diagonal unitary, then applies the real symmetric Jacobi rotation.
    Stops once the off-diagonal Frobenius norm is at most ``rtol * ||A||_F``.
    """
    a = np.array(matrix, dtype=np.complex128, copy=True)
    n = a.shape[0]
    scale = np.linalg.norm(a)
    if scale == 0.0 or n == 1:
        return np.sort(np.diag(a).real)
    target = rtol * scale

    def off_norm() -> float:
        return float(np.sqrt(max(np.linalg.norm(a) ** 2 - np.sum(np.abs(np.diag(a)) ** 2), 0.0)))

    for sweep in range(max_sweeps + 1):
        if off_norm() <= target:
            return np.sort(np.diag(a).real)
        if sweep == max_sweeps:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag <= 1e-300:
                    continue
                phase = apq / mag
                theta = (a[q, q].real - a[p, p].real) / (2.0 * mag)
                t = (1.0 if theta >= 0 else -1.0) / (abs(theta) + np.hypot(1.0, theta))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                rot = np.array([[c, s], [-s * phase.conjugate(), c * phase.conjugate()]])
                idx = [p, q]
                a[:, idx] = a[:, idx] @ rot
                a[idx, :] = rot.conj().T @ a[idx, :]
                a[p, q] = a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
    raise NumericalError(
        f"Jacobi eigensolver did not converge in {max_sweeps} sweeps (off-norm {off_norm():.3e})",
        iterations=max_sweeps,
    )


def hermitian_eigenvalues(op: Operand, *, method: str = "lapack", tol: Tolerances = DEFAULT_TOLERANCES) -> np.ndarray:
    """All eigenvalues of a Hermitian operator, ascending.

    ``method`` is ``"lapack"`` (divide and conquer via numpy) or ``"jacobi"``.
    Capped at :data:`FULL_SPECTRUM_MAX` qubits.
    """
    mat = _matrix(op)
    _check_hermitian(mat, tol)
    if mat.shape[0] > 1 << FULL_SPECTRUM_MAX:
        raise CapacityError(f"full spectrum limited to {FULL_SPECTRUM_MAX} qubits")
    if method == "jacobi":
        return jacobi_eigenvalues(mat)
    if method != "lapack":
        raise DomainError(f"unknown eigenvalue method {method!r}")
    try:
        return np.linalg.eigvalsh(mat)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"eigvalsh failed: {exc}") from exc


def min_eigenvalue(op: Operand, *, method: str = "auto", tol: Tolerances = DEFAULT_TOLERANCES) -> float:
    """Smallest eigenvalue.

    ``"auto"`` uses the full spectrum up to :data:`FULL_SPECTRUM_MAX` qubits
    and Lanczos above that; ``"full"`` and ``"lanczos"`` force one.
    """
    mat = _matrix(op)
    dim = mat.shape[0]
    if method == "auto":
        method = "full" if dim <= 1 << FULL_SPECTRUM_MAX else "lanczos"
    if method == "full":
        return float(hermitian_eigenvalues(mat, tol=tol)[0])
    if method != "lanczos":
        raise DomainError(f"unknown eigenvalue method {method!r}")
    _check_hermitian(mat, tol)
    return lanczos_min_eigenvalue(mat)


def lanczos_min_eigenvalue(matrix, *, max_iter: int | None = None, atol: float = 1e-11, seed: int = 0) -> float:
    """Smallest eigenvalue by Lanczos with full reorthogonalization.

    Stops on an invariant subspace (``beta`` ~ 0) or once the residual norm
    of the lowest Ritz pair is below ``atol``, which bounds its distance to
    an eigenvalue. The start vector is seeded,
    so results are reproducible.
    """
    a = np.asarray(matrix, dtype=np.complex128)
    dim = a.shape[0]
    scale = float(np.linalg.norm(a))
    if scale == 0.0:
        return 0.0
    if dim <= 64:
        return float(np.linalg.eigvalsh(a)[0])
    max_iter = min(dim, 1000) if max_iter is None else max_iter
    rng = np.random.default_rng(seed)
    v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    basis = np.zeros((max_iter + 1, dim), dtype=np.complex128)
    basis[0] = v / np.linalg.norm(v)
    alphas: list[float] = []
    betas: list[float] = []
    lam = np.inf
    for k in range(max_iter):
        w = a @ basis[k]
        alphas.append(float(np.vdot(basis[k], w).real))
        q = basis[: k + 1]
        for _ in range(2):
            w -= q.T @ (q.conj() @ w)
        beta = float(np.linalg.norm(w))
        if k == 0:
            theta, vecs = np.array(alphas), np.ones((1, 1))
        else:
            theta, vecs = sla.eigh_tridiagonal(np.array(alphas), np.array(betas))
        lam = float(theta[0])
        if beta <= 1e-14 * scale or beta * abs(vecs[-1, 0]) <= atol:
            return lam
        betas.append(beta)
        basis[k + 1] = w / beta
    raise NumericalError(
        f"Lanczos did not converge in {max_iter} iterations (last estimate {lam:.6g})", iterations=max_iter
    )


_SINGLE_PAULIS = {
    "i": np.eye(2, dtype=np.complex128),
    "x": np.array([[0, 1], [1, 0]], dtype=np.complex128),
    "y": np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    "z": np.array([[1, 0], [0, -1]], dtype=np.complex128),
}


def _parse_settings(settings: Sequence[str] | str, n: int) -> list[str]:
    labels = [str(s).lower() for s in settings]
    if len(labels) != n:
        raise DomainError(f"expected {n} Pauli labels, got {len(labels)}")
    for lab in labels:
        if lab not in _SINGLE_PAULIS:
            raise DomainError(f"invalid Pauli axis label {lab!r}")
    return labels


def pauli_string_expectation(rho: HermitianOperator, settings: Sequence[str] | str, *, method: str = "sparse") -> float:
    """``Tr[rho (sigma_{s_0} (x) ... (x) sigma_{s_{N-1}})]`` for labels in ``x, y, z, i``.

    The sparse path uses that a Pauli string maps ``|j>`` to
    ``phase(j) |j ^ flip>``, giving an O(2^N) sum over ``rho[j, j ^ flip]``.
    The dense path builds the full Kronecker product.
    """
    n = rho.n_qubits
    labels = _parse_settings(settings, n)
    mat = rho.matrix
    if method == "dense":
        op = np.ones((1, 1), dtype=np.complex128)
        for lab in labels:
            op = np.kron(op, _SINGLE_PAULIS[lab])
        val = np.sum(mat * op.T)
    elif method == "sparse":
        j = np.arange(1 << n)
        flip = 0
        phase = np.ones(1 << n, dtype=np.complex128)
        for q, lab in enumerate(labels):
            bit = 1 << (n - 1 - q)
            is_one = (j & bit) != 0
            if lab in ("x", "y"):
                flip |= bit
            if lab == "y":
                # sigma_y|0> = i|1>, sigma_y|1> = -i|0>
                phase *= np.where(is_one, -1j, 1j)
            elif lab == "z":
                phase *= np.where(is_one, -1.0, 1.0)
        val = np.sum(phase * mat[j, j ^ flip])
    else:
        raise DomainError(f"unknown Pauli expectation method {method!r}")
    return float(val.real)


def expectation(op: Operand, rho: Operand, *, tol: Tolerances = DEFAULT_TOLERANCES) -> float:
    """``Tr(op rho)`` by a dense elementwise contraction; must be real."""
    a, b = _matrix(op), _matrix(rho)
    if a.shape != b.shape:
        raise DomainError(f"dimension mismatch: {a.shape} vs {b.shape}")
    val = np.sum(a * b.T)
    if abs(val.imag) > tol.eig:
        raise NumericalError(f"expectation has imaginary part {val.imag:.3e}")
    return float(val.real)
