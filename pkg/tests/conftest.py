import numpy as np
import pytest

from pptineq.states import random_density_matrix


@pytest.fixture
def rng():
    return np.random.default_rng(20240501)


def random_hermitian(n: int, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    dim = 1 << n
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return (a + a.conj().T) / 2


@pytest.fixture
def random_states():
    return [random_density_matrix(n, seed) for n in (2, 3, 4) for seed in range(3)]


_ACCEPTANCE: dict[str, tuple[bool, str]] = {}


@pytest.fixture
def acceptance():
    """Record one pass/fail line per acceptance criterion, then assert."""

    def record(key: str, title: str, failures: list[str]):
        ok = not failures
        detail = "" if ok else f" ({len(failures)} failures; first: {failures[0]})"
        _ACCEPTANCE[key] = (ok, f"{title}{detail}")
        assert ok, failures[:5]

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_ACCEPTANCE, key=lambda k: int(k.removeprefix("AC"))):
        ok, text = _ACCEPTANCE[key]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {key}  {text}")
