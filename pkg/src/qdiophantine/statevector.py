"""Dense statevector simulation.

Basis index ``b`` encodes qubit ``q`` as bit ``(b >> q) & 1``.  Internally
the amplitudes are viewed as a rank-``width`` tensor of shape ``(2,)*width``
in C order, so qubit ``q`` lives on axis ``width - 1 - q``.  Gates are applied
by slicing that tensor: controls are pinned to 1 and the two halves along
the target axis are swapped (X family) or mixed (H).  No gate matrices are
ever built.
"""

from __future__ import annotations

import math
import os
from typing import Sequence

import numpy as np

from .circuit import Circuit, Gate

__all__ = [
    "DEFAULT_MAX_WIDTH",
    "MAX_WIDTH_ENV",
    "CapacityError",
    "StateVector",
    "new_zero_state",
    "apply_gate",
    "apply_circuit",
    "marginal_probabilities",
    "sample",
    "resolve_max_width",
]

DEFAULT_MAX_WIDTH = 30
MAX_WIDTH_ENV = "QDIOPHANTINE_MAX_WIDTH"

_SQRT_HALF = 1 / math.sqrt(2)
_BYTES_PER_AMPLITUDE = np.dtype(np.complex128).itemsize


class CapacityError(ValueError):
    """Requested state is wider than the configured memory guard allows."""


def resolve_max_width(max_width: int | None = None) -> int:
    if max_width is not None:
        return int(max_width)
    env = os.environ.get(MAX_WIDTH_ENV)
    return int(env) if env else DEFAULT_MAX_WIDTH


def _format_bytes(n: int) -> str:
    for unit in ("B", "KiB", "MiB", "GiB", "TiB"):
        if n < 1024 or unit == "TiB":
            return f"{n:g} {unit}"
        n /= 1024
    return f"{n} B"  # pragma: no cover


class StateVector:
    """``2**width`` complex amplitudes of a ``width``-qubit register."""

    def __init__(self, amplitudes, width: int | None = None):
        amps = np.ascontiguousarray(amplitudes, dtype=np.complex128).ravel()
        if width is None:
            width = int(amps.size).bit_length() - 1
        if width < 1 or amps.size != 1 << width:
            raise ValueError(f"need 2**width amplitudes, got {amps.size} for width {width}")
        self.width = width
        self.amplitudes = amps

    @classmethod
    def zero(cls, width: int, max_width: int | None = None) -> StateVector:
        limit = resolve_max_width(max_width)
        if not 1 <= width <= limit:
            need = _format_bytes(_BYTES_PER_AMPLITUDE * (1 << max(width, 0)))
            raise CapacityError(
                f"width {width} outside 1..{limit} (needs {need} of amplitudes; "
                f"raise the limit with max_width or ${MAX_WIDTH_ENV})"
            )
        amps = np.zeros(1 << width, dtype=np.complex128)
        amps[0] = 1
        return cls(amps, width)

    @classmethod
    def basis(cls, width: int, index: int, max_width: int | None = None) -> StateVector:
        state = cls.zero(width, max_width)
        state.amplitudes[0] = 0
        state.amplitudes[index] = 1
        return state

    def copy(self) -> StateVector:
        return StateVector(self.amplitudes.copy(), self.width)

    def _tensor(self) -> np.ndarray:
        return self.amplitudes.reshape((2,) * self.width)

    def _axis(self, qubit: int) -> int:
        return self.width - 1 - qubit

    def _check_qubits(self, qubits: Sequence[int]):
        for q in qubits:
            if not 0 <= q < self.width:
                raise IndexError(f"qubit {q} out of range for width {self.width}")
        if len(set(qubits)) != len(qubits):
            raise ValueError(f"duplicate qubit in {list(qubits)}")

    def apply_gate(self, gate: Gate) -> StateVector:
        self._check_qubits(gate.qubits)
        t = self._tensor()
        idx = [slice(None)] * self.width
        for c in gate.controls:
            idx[self._axis(c)] = 1
        ax = self._axis(gate.target)
        idx[ax] = 0
        lo = tuple(idx)
        idx[ax] = 1
        hi = tuple(idx)
        a = t[lo].copy()
        if gate.kind == "H":
            b = t[hi]
            t[lo] = (a + b) * _SQRT_HALF
            t[hi] = (a - b) * _SQRT_HALF
        else:
            t[lo] = t[hi]
            t[hi] = a
        return self

    def apply_circuit(self, circuit: Circuit) -> StateVector:
        if circuit.width > self.width:
            raise ValueError(f"circuit width {circuit.width} exceeds state width {self.width}")
        for gate in circuit.gates:
            self.apply_gate(gate)
        return self

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def marginal_array(self, qubits: Sequence[int]) -> np.ndarray:
        """Marginal over ``qubits`` as a flat array; entry ``j`` has qubits[0] as
        the most significant bit of ``j``."""
        qubits = list(qubits)
        self._check_qubits(qubits)
        p = self.probabilities().reshape((2,) * self.width)
        keep = [self._axis(q) for q in qubits]
        drop = tuple(a for a in range(self.width) if a not in keep)
        p = p.sum(axis=drop)
        # sum leaves the kept axes in ascending order; put them in display order
        remaining = sorted(keep)
        p = np.transpose(p, [remaining.index(a) for a in keep])
        return p.reshape(-1)

    def marginal_probabilities(self, qubits: Sequence[int]) -> dict[str, float]:
        p = self.marginal_array(qubits)
        k = len(qubits)
        return {format(j, f"0{k}b"): float(p[j]) for j in range(p.size)}

    def sample(self, qubits: Sequence[int], shots: int, seed: int | None = None) -> dict[str, int]:
        if shots < 1:
            raise ValueError("shots must be at least 1")
        p = self.marginal_array(qubits)
        p = p / p.sum()
        counts = np.random.default_rng(seed).multinomial(shots, p)
        k = len(qubits)
        return {format(j, f"0{k}b"): int(c) for j, c in enumerate(counts) if c}

    def __repr__(self):
        return f"StateVector(width={self.width})"


def new_zero_state(width: int, max_width: int | None = None) -> StateVector:
    return StateVector.zero(width, max_width)


def apply_gate(state: StateVector, gate: Gate) -> StateVector:
    return state.apply_gate(gate)


def apply_circuit(state: StateVector, circuit: Circuit) -> StateVector:
    return state.apply_circuit(circuit)


def marginal_probabilities(state: StateVector, qubits: Sequence[int]) -> dict[str, float]:
    return state.marginal_probabilities(qubits)


def sample(state: StateVector, qubits: Sequence[int], shots: int, seed: int | None = None) -> dict[str, int]:
    return state.sample(qubits, shots, seed)
