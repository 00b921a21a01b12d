"""Flat gate-list circuit representation.

Only the gates needed for the Grover construction are supported: Hadamard,
NOT, and the controlled-NOT family (CX, CCX and the multi-controlled MCX).
All of them are self-inverse, so the adjoint of a circuit is just its gate
list reversed.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

__all__ = [
    "GATE_KINDS",
    "Gate",
    "Circuit",
    "GateCounts",
    "h",
    "x",
    "cx",
    "ccx",
    "mcx",
    "controlled_x",
    "adjoint",
    "gate_counts",
    "export_text",
]

GATE_KINDS = ("H", "X", "CX", "CCX", "MCX")

_ARITY = {"H": (0, 0), "X": (0, 0), "CX": (1, 1), "CCX": (2, 2), "MCX": (3, None)}


@dataclass(frozen=True)
class Gate:
    kind: str
    target: int
    controls: tuple[int, ...] = ()

    def __post_init__(self):
        if self.kind not in _ARITY:
            raise ValueError(f"unknown gate kind {self.kind!r}")
        object.__setattr__(self, "controls", tuple(int(c) for c in self.controls))
        lo, hi = _ARITY[self.kind]
        n = len(self.controls)
        if n < lo or (hi is not None and n > hi):
            raise ValueError(f"{self.kind} gate cannot take {n} controls")
        qubits = self.qubits
        if any(q < 0 for q in qubits):
            raise ValueError(f"negative qubit index in {self}")
        if len(set(qubits)) != len(qubits):
            raise ValueError(f"duplicate qubit in {self.kind} gate: {qubits}")

    @property
    def qubits(self) -> tuple[int, ...]:
        return self.controls + (self.target,)

    def __str__(self):
        if not self.controls:
            return f"{self.kind}({self.target})"
        ctrl = ",".join(map(str, self.controls))
        return f"{self.kind}({ctrl}->{self.target})"


def h(q: int) -> Gate:
    return Gate("H", q)


def x(q: int) -> Gate:
    return Gate("X", q)


def cx(control: int, target: int) -> Gate:
    return Gate("CX", target, (control,))


def ccx(c0: int, c1: int, target: int) -> Gate:
    return Gate("CCX", target, (c0, c1))


def mcx(controls: Sequence[int], target: int) -> Gate:
    return Gate("MCX", target, tuple(controls))


def controlled_x(controls: Sequence[int], target: int) -> Gate:
    """NOT on `target` controlled by any number of qubits, picking the kind by arity."""
    kind = {0: "X", 1: "CX", 2: "CCX"}.get(len(controls), "MCX")
    return Gate(kind, target, tuple(controls))


class GateCounts(dict):
    """Per-kind tally; every kind in GATE_KINDS is present, possibly as zero."""

    def __init__(self, counts: Mapping[str, int] | None = None):
        super().__init__({k: 0 for k in GATE_KINDS})
        if counts:
            self.update(counts)

    @property
    def total(self) -> int:
        return sum(self.values())


@dataclass(frozen=True)
class Circuit:
    """Ordered gates over a fixed number of qubits.

    ``barriers`` holds ``(position, label)`` pairs, where position is the
    number of gates preceding the barrier.  They are annotations only.
    """

    width: int
    gates: tuple[Gate, ...] = ()
    barriers: tuple[tuple[int, str], ...] = field(default=(), compare=False)

    def __post_init__(self):
        if self.width < 1:
            raise ValueError("circuit width must be at least 1")
        object.__setattr__(self, "gates", tuple(self.gates))
        object.__setattr__(self, "barriers", tuple(self.barriers))
        for g in self.gates:
            if max(g.qubits) >= self.width:
                raise ValueError(f"gate {g} exceeds circuit width {self.width}")
        for pos, _ in self.barriers:
            if not 0 <= pos <= len(self.gates):
                raise ValueError(f"barrier position {pos} out of range")

    def __len__(self):
        return len(self.gates)

    def __iter__(self):
        return iter(self.gates)

    def __add__(self, other: Circuit) -> Circuit:
        if not isinstance(other, Circuit):
            return NotImplemented
        offset = len(self.gates)
        return Circuit(
            max(self.width, other.width),
            self.gates + other.gates,
            self.barriers + tuple((p + offset, lab) for p, lab in other.barriers),
        )

    @classmethod
    def concat(cls, width: int, parts: Iterable[Circuit]) -> Circuit:
        out = cls(width)
        for part in parts:
            out = out + part
        return Circuit(width, out.gates, out.barriers)

    def adjoint(self) -> Circuit:
        return adjoint(self)

    def gate_counts(self) -> GateCounts:
        return gate_counts(self)

    def with_barrier(self, label: str) -> Circuit:
        return Circuit(self.width, self.gates, self.barriers + ((len(self.gates), label),))


def adjoint(circuit: Circuit) -> Circuit:
    # every supported gate is its own inverse
    n = len(circuit.gates)
    barriers = tuple((n - p, lab) for p, lab in reversed(circuit.barriers))
    return Circuit(circuit.width, tuple(reversed(circuit.gates)), barriers)


def gate_counts(circuit: Circuit) -> GateCounts:
    return GateCounts(Counter(g.kind for g in circuit.gates))


def _qubit_names(width: int, registers: Mapping[str, Sequence[int]] | None) -> dict[int, str]:
    if not registers:
        return {q: f"q[{q}]" for q in range(width)}
    names = {}
    for reg, qubits in registers.items():
        for i, q in enumerate(qubits):
            if q in names:
                raise ValueError(f"qubit {q} appears in more than one register")
            names[q] = f"{reg}[{i}]"
    missing = sorted(set(range(width)) - names.keys())
    if missing:
        raise ValueError(f"qubits {missing} are not covered by any register")
    return names


def export_text(circuit: Circuit, registers: Mapping[str, Sequence[int]] | None = None) -> str:
    """Render the circuit as an OpenQASM 3 listing, one gate per line.

    ``registers`` maps register names to their qubit indices (e.g. the
    mapping from ``RegisterLayout.registers()``); without it a single
    register ``q`` is declared.  Multi-controlled NOTs are written with a
    ``ctrl(k) @ x`` modifier.
    """
    names = _qubit_names(circuit.width, registers)
    lines = ["OPENQASM 3.0;", 'include "stdgates.inc";']
    if registers:
        for reg, qubits in registers.items():
            if qubits:
                lines.append(f"qubit[{len(qubits)}] {reg};")
    else:
        lines.append(f"qubit[{circuit.width}] q;")

    barrier_at: dict[int, list[str]] = {}
    for pos, label in circuit.barriers:
        barrier_at.setdefault(pos, []).append(label)
    all_qubits = ", ".join(names[q] for q in range(circuit.width))

    for i in range(len(circuit.gates) + 1):
        for label in barrier_at.get(i, ()):
            lines.append(f"barrier {all_qubits}; // {label}")
        if i == len(circuit.gates):
            break
        g = circuit.gates[i]
        operands = ", ".join(names[q] for q in g.qubits)
        if g.kind == "MCX":
            lines.append(f"ctrl({len(g.controls)}) @ x {operands};")
        else:
            lines.append(f"{g.kind.lower()} {operands};")
    return "\n".join(lines) + "\n"
