import math

import numpy as np
import pytest

from pptineq.errors import CapacityError, DomainError
from pptineq.qmat import hermitian_eigenvalues
from pptineq.states import dur_state, ghz, noisy_ghz, random_density_matrix, random_separable_state
from pptineq.witnesses import (
    WitnessKind,
    build_witness,
    ghz_interference_value,
    p_ppt_ghz_functional,
    witness_coefficient,
)
from pptineq.qmat import DensityOperator


def direct_coefficient(kind: str, n: int) -> float:
    """Products of exact factors rather than powers."""
    if kind == "mermin2":
        return math.sqrt(2) ** (n - 1)
    if kind == "threeSetting":
        return math.prod([3 / 2] * n) / math.sqrt(3)
    if kind == "continuous":
        return math.prod([math.pi / 2] * n) / 2
    return float(2 ** (n - 1))


def test_ppt_operator_coefficient_n4():
    assert build_witness("pptOperator", 4).coefficient == 8


def test_mermin3_spectrum():
    spec = hermitian_eigenvalues(build_witness("mermin2", 3).op)
    np.testing.assert_allclose(spec, [-2] + [0] * 6 + [2], atol=1e-12)


def test_continuous_n2():
    assert build_witness("continuous", 2).coefficient == pytest.approx(1.2337005501361697, rel=1e-15)


@pytest.mark.parametrize("kind", list(WitnessKind))
@pytest.mark.parametrize("n", range(2, 15))
def test_coefficients_closed_form(kind, n):
    assert witness_coefficient(kind, n) == pytest.approx(direct_coefficient(kind.value, n), rel=1e-12)


@pytest.mark.parametrize("kind", list(WitnessKind))
def test_witness_has_two_nonzero_eigenvalues(kind):
    w = build_witness(kind, 4)
    spec = hermitian_eigenvalues(w.op)
    nonzero = spec[np.abs(spec) > 1e-12]
    np.testing.assert_allclose(nonzero, [-w.coefficient, w.coefficient], rtol=1e-12)
    assert w.classical_bound == 1


def test_witness_dense_form():
    w = build_witness("threeSetting", 3)
    p, m = ghz(3, "plus").amplitudes, ghz(3, "minus").amplitudes
    expected = w.coefficient * (np.outer(p, p) - np.outer(m, m))
    assert np.max(np.abs(w.op.matrix - expected)) <= 1e-10


def test_build_witness_range():
    with pytest.raises(DomainError):
        build_witness("mermin2", 1)
    with pytest.raises(CapacityError):
        build_witness("mermin2", 15)
    with pytest.raises(ValueError):
        build_witness("nope", 3)


@pytest.mark.parametrize("n", range(2, 11))
def test_structured_matches_dense(n):
    states = [random_density_matrix(n, seed, rank=min(4, 1 << n)) for seed in range(2 if n > 8 else 20)]
    states.append(noisy_ghz(n, 0.7))
    for kind in WitnessKind:
        w = build_witness(kind, n)
        for rho in states:
            assert abs(w.dense_expectation(rho) - w.coefficient * ghz_interference_value(rho)) <= 1e-9


def test_interference_values():
    assert ghz_interference_value(ghz(3, "minus").projector()) == pytest.approx(-1.0, abs=1e-12)
    assert ghz_interference_value(dur_state(4)) == pytest.approx(1 / 5, abs=1e-12)
    assert ghz_interference_value(noisy_ghz(3, 0.37)) == pytest.approx(0.37, abs=1e-12)


def test_interference_value_bounded(random_states):
    for rho in random_states:
        assert abs(ghz_interference_value(rho)) <= 1 + 1e-12


def test_witness_rejects_mismatched_state():
    with pytest.raises(DomainError):
        build_witness("mermin2", 3).expectation(dur_state(4))


@pytest.mark.parametrize("n,p", [(2, 2), (3, 2), (3, 3), (5, 2), (5, 5)])
def test_p_ppt_functional_maximally_mixed(n, p):
    rho = DensityOperator(np.eye(1 << n) / (1 << n), n)
    expected = 2.0 ** (2 - p) / 2**n
    for sign in ("plus", "minus"):
        assert p_ppt_ghz_functional(rho, p, sign) == pytest.approx(expected, abs=1e-15)


def test_p_ppt_functional_ghz():
    for n in (2, 4):
        rho = ghz(n).projector()
        assert p_ppt_ghz_functional(rho, n, "plus") == pytest.approx(1.0, abs=1e-12)
        assert p_ppt_ghz_functional(rho, n, "minus") == pytest.approx(-(1 - 2.0 ** (2 - n)), abs=1e-12)


def test_p_ppt_functional_against_projectors():
    rho = random_density_matrix(3, 4)
    p_vec, m_vec = ghz(3, "plus").amplitudes, ghz(3, "minus").amplitudes
    fp = np.vdot(p_vec, rho.matrix @ p_vec).real
    fm = np.vdot(m_vec, rho.matrix @ m_vec).real
    assert p_ppt_ghz_functional(rho, 3, "plus") == pytest.approx(fp - 0.5 * fm, abs=1e-14)
    assert p_ppt_ghz_functional(rho, 3, "minus") == pytest.approx(fm - 0.5 * fp, abs=1e-14)


def test_p_ppt_functional_range():
    rho = dur_state(3)
    for p in (1, 4):
        with pytest.raises(DomainError):
            p_ppt_ghz_functional(rho, p)


def test_p_ppt_functional_separable_sound():
    for n in (3, 4, 5, 6):
        for seed in range(100):
            rho = random_separable_state(n, 1 + seed % 4, seed)
            for sign in ("plus", "minus"):
                assert p_ppt_ghz_functional(rho, n, sign) <= 2.0 ** (1 - n) + 1e-9
