"""Register layout and the non-overwriting m-bit adder.

Numbers are stored most-significant-bit first: ``x_qubits[0]`` holds the top
bit of x and ``x_qubits[-1]`` the least significant one.  The sum register has
one extra bit for the carry out, so ``sum_qubits[0]`` is bit m of x + y.

The adder walks the bits from least to most significant.  Each stage writes
the sum bit with CNOTs from x, y and the incoming carry, and writes the
outgoing carry as the XOR of three Toffolis (the majority function).  The
top stage sends its carry straight into ``sum_qubits[0]``.  Carry ancillas
are left holding their carries; callers uncompute with the adjoint.
"""

from __future__ import annotations

import string
from dataclasses import dataclass

from .circuit import Circuit, Gate, ccx, cx

__all__ = [
    "RegisterLayout",
    "build_layout",
    "build_adder",
    "to_bits",
    "from_bits",
    "encode_inputs",
    "read_register",
]


@dataclass(frozen=True)
class RegisterLayout:
    m: int
    x_qubits: tuple[int, ...]
    y_qubits: tuple[int, ...]
    carry_qubits: tuple[int, ...]
    sum_qubits: tuple[int, ...]
    oracle_qubit: int

    def __post_init__(self):
        m = self.m
        if m < 1:
            raise ValueError("m must be at least 1")
        sizes = {
            "x_qubits": m, "y_qubits": m, "carry_qubits": m - 1, "sum_qubits": m + 1,
        }
        for name, size in sizes.items():
            if len(getattr(self, name)) != size:
                raise ValueError(f"{name} must hold {size} qubits for m={m}")
        every = self.all_qubits
        if sorted(every) != list(range(4 * m + 1)):
            raise ValueError("layout qubits must be distinct and cover 0..4m")

    @property
    def width(self) -> int:
        return 4 * self.m + 1

    @property
    def index_qubits(self) -> tuple[int, ...]:
        """x then y, in display order x0..x(m-1) y0..y(m-1)."""
        return self.x_qubits + self.y_qubits

    @property
    def work_qubits(self) -> tuple[int, ...]:
        return self.carry_qubits + self.sum_qubits

    @property
    def all_qubits(self) -> tuple[int, ...]:
        return self.index_qubits + self.work_qubits + (self.oracle_qubit,)

    def registers(self) -> dict[str, tuple[int, ...]]:
        return {
            "x": self.x_qubits,
            "y": self.y_qubits,
            "a": self.carry_qubits,
            "s": self.sum_qubits,
            "q": (self.oracle_qubit,),
        }


def build_layout(m: int) -> RegisterLayout:
    if m < 1:
        raise ValueError(f"m must be at least 1, got {m}")
    return RegisterLayout(
        m=m,
        x_qubits=tuple(range(m)),
        y_qubits=tuple(range(m, 2 * m)),
        carry_qubits=tuple(range(2 * m, 3 * m - 1)),
        sum_qubits=tuple(range(3 * m - 1, 4 * m)),
        oracle_qubit=4 * m,
    )


def _stage_label(t: int) -> str:
    return string.ascii_uppercase[t] if t < 26 else f"S{t}"


def build_adder(layout: RegisterLayout, barriers: bool = True) -> Circuit:
    """Circuit mapping |x, y, 0, 0> to |x, y, carries, x + y>.

    Uses 3m - 1 CNOTs and 3m - 2 Toffolis.  With ``barriers`` a labelled
    barrier (A, B, C, ...) closes each stage.
    """
    m = layout.m
    xs, ys, acc, ss = layout.x_qubits, layout.y_qubits, layout.carry_qubits, layout.sum_qubits
    gates: list[Gate] = []
    marks: list[tuple[int, str]] = []
    for t in range(m):
        xb, yb, sb = xs[m - 1 - t], ys[m - 1 - t], ss[m - t]
        carry_out = ss[0] if t == m - 1 else acc[t]
        gates += [cx(xb, sb), cx(yb, sb), ccx(xb, yb, carry_out)]
        if t > 0:
            carry_in = acc[t - 1]
            gates += [cx(carry_in, sb), ccx(xb, carry_in, carry_out), ccx(yb, carry_in, carry_out)]
        if barriers:
            marks.append((len(gates), _stage_label(t)))
    return Circuit(layout.width, tuple(gates), tuple(marks))


def to_bits(value: int, nbits: int) -> tuple[int, ...]:
    """MSB-first bits of ``value``."""
    if not 0 <= value < 1 << nbits:
        raise ValueError(f"{value} does not fit in {nbits} bits")
    return tuple((value >> (nbits - 1 - i)) & 1 for i in range(nbits))


def from_bits(bits) -> int:
    out = 0
    for b in bits:
        out = (out << 1) | int(b)
    return out


def encode_inputs(layout: RegisterLayout, x: int, y: int) -> int:
    """Basis index with x and y loaded and every other qubit at 0."""
    index = 0
    for reg, value in ((layout.x_qubits, x), (layout.y_qubits, y)):
        for q, b in zip(reg, to_bits(value, layout.m)):
            index |= b << q
    return index


def read_register(index: int, qubits) -> int:
    """Integer held by ``qubits`` (MSB first) in basis state ``index``."""
    return from_bits((index >> q) & 1 for q in qubits)
