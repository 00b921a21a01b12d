"""Independent reference implementations used as test oracles.

Nothing here imports the simulator; gate matrices are built from truth tables
and Grover is run as plain reflections on the index space.
"""

import numpy as np
import pytest


def gate_matrix(kind, target, controls, width):
    """Dense unitary for one gate, bit q of a basis index being qubit q."""
    dim = 1 << width
    U = np.zeros((dim, dim), dtype=complex)
    for b in range(dim):
        if kind == "H":
            bit = (b >> target) & 1
            U[b & ~(1 << target), b] += 1 / np.sqrt(2)
            U[b | (1 << target), b] += (-1 if bit else 1) / np.sqrt(2)
        else:
            fire = all((b >> c) & 1 for c in controls)
            U[b ^ (1 << target) if fire else b, b] = 1
    return U


def ideal_grover(N, marked, k):
    """Index-register probabilities after k textbook Grover iterations."""
    s = np.full(N, 1 / np.sqrt(N))
    v = s.copy()
    for _ in range(k):
        v[list(marked)] *= -1
        v = 2 * s * (s @ v) - v
    return np.abs(v) ** 2


def random_state(rng, width):
    v = rng.normal(size=1 << width) + 1j * rng.normal(size=1 << width)
    return v / np.linalg.norm(v)


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
