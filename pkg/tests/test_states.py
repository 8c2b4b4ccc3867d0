import numpy as np
import pytest

from pptineq.errors import CapacityError, DomainError
from pptineq.qmat import hermitian_eigenvalues, partial_transpose
from pptineq.states import (
    GhzSign,
    dur_state,
    ghz,
    noisy_ghz,
    random_density_matrix,
    random_product_state,
    random_separable_state,
)
from pptineq.witnesses import WitnessKind, build_witness


def dur_closed_form(n: int) -> np.ndarray:
    """Entries 1/(2(N+1)) on the GHZ corners and on the 2N single-excitation diagonals."""
    dim, full = 1 << n, (1 << n) - 1
    out = np.zeros((dim, dim))
    w = 1 / (2 * (n + 1))
    for i, j in [(0, 0), (full, full), (0, full), (full, 0)]:
        out[i, j] = w
    for k in range(n):
        s = 1 << k
        out[s, s] = out[full ^ s, full ^ s] = w
    return out


def assert_valid_state(rho):
    m = rho.matrix
    assert np.max(np.abs(m - m.conj().T)) <= 1e-10
    assert abs(np.trace(m) - 1) <= 1e-12
    assert hermitian_eigenvalues(m)[0] >= -1e-9


def test_ghz_one_qubit():
    np.testing.assert_allclose(ghz(1).amplitudes, np.array([1, 1]) / np.sqrt(2))


def test_ghz_orthogonal():
    for n in (1, 3, 6):
        assert abs(ghz(n, "plus").inner(ghz(n, GhzSign.MINUS))) < 1e-15


def test_ghz3_amplitudes():
    a = ghz(3).amplitudes
    assert a[0] == pytest.approx(0.7071067811865476)
    assert a[7] == pytest.approx(0.7071067811865476)
    assert np.count_nonzero(a) == 2
    assert ghz(3, "minus").amplitudes[7] == pytest.approx(-0.7071067811865476)


def test_ghz_capacity():
    with pytest.raises(CapacityError):
        ghz(15)


def test_noisy_ghz_limits():
    np.testing.assert_allclose(noisy_ghz(3, 1.0).matrix, ghz(3).projector().matrix, atol=1e-15)
    np.testing.assert_allclose(noisy_ghz(3, 0.0).matrix, np.eye(8) / 8, atol=1e-15)


def test_noisy_ghz_rejects_bad_visibility():
    for v in (-0.1, 1.5):
        with pytest.raises(DomainError):
            noisy_ghz(3, v)


def test_noisy_ghz_at_local_realism_threshold():
    v = 2 ** (-(3 - 1) / 2)
    b3 = build_witness(WitnessKind.MERMIN2, 3)
    assert b3.dense_expectation(noisy_ghz(3, v)) == pytest.approx(1.0, abs=1e-9)


@pytest.mark.parametrize("n", range(3, 11))
def test_dur_unit_trace(n):
    assert abs(dur_state(n).trace() - 1) <= 1e-12


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_dur_matches_closed_form(n):
    np.testing.assert_allclose(dur_state(n).matrix, dur_closed_form(n), atol=1e-15)


def test_dur_ghz_weight():
    rho = dur_state(4)
    psi = ghz(4).amplitudes
    assert np.vdot(psi, rho.matrix @ psi).real == pytest.approx(1 / 5, abs=1e-12)


@pytest.mark.parametrize("n", [3, 4, 5, 6, 7])
def test_dur_bit_flip_symmetry(n):
    m = dur_state(n).matrix
    flip = (1 << n) - 1
    idx = np.arange(1 << n) ^ flip
    np.testing.assert_array_equal(m[np.ix_(idx, idx)], m)


def test_dur_rejects_small_n():
    for n in (1, 2):
        with pytest.raises(DomainError):
            dur_state(n)


def test_constructors_give_valid_states():
    states = [noisy_ghz(n, v) for n in (2, 4) for v in (0, 0.3, 1)]
    states += [dur_state(n) for n in (3, 5, 7)]
    states += [random_product_state(4, s) for s in range(3)]
    states += [random_separable_state(4, 5, s) for s in range(3)]
    states += [random_density_matrix(3, s, rank=2) for s in range(3)]
    for rho in states:
        assert_valid_state(rho)


def single_qubit_reduced(rho, k):
    n = rho.n_qubits
    t = rho.matrix.reshape((2,) * (2 * n))
    return np.einsum(t, list(range(n)) + [n + q if q == k else q for q in range(n)], [k, n + k])


def test_product_state_marginals_pure():
    rho = random_product_state(4, 11)
    for k in range(4):
        r = single_qubit_reduced(rho, k)
        assert np.trace(r @ r).real == pytest.approx(1.0, abs=1e-12)


def test_product_state_ppt_on_every_subset():
    rho = random_product_state(4, 3)
    for mask in range(16):
        subset = [q for q in range(4) if mask >> q & 1]
        assert hermitian_eigenvalues(partial_transpose(rho, subset))[0] >= -1e-9


def test_random_states_deterministic():
    np.testing.assert_array_equal(random_product_state(5, 42).matrix, random_product_state(5, 42).matrix)
    np.testing.assert_array_equal(random_separable_state(4, 3, 9).matrix, random_separable_state(4, 3, 9).matrix)
    assert not np.array_equal(random_product_state(5, 42).matrix, random_product_state(5, 43).matrix)


def test_separable_single_term_is_product():
    rho = random_separable_state(3, 1, 5)
    assert np.trace(rho.matrix @ rho.matrix).real == pytest.approx(1.0, abs=1e-12)


def test_separable_rejects_zero_terms():
    with pytest.raises(DomainError):
        random_separable_state(3, 0, 1)


def test_separable_ppt_inequality_holds():
    for n in range(3, 7):
        p_n = build_witness("pptOperator", n)
        for seed in range(100):
            rho = random_separable_state(n, 1 + seed % 4, seed)
            assert abs(p_n.expectation(rho)) <= 1 + 1e-9
