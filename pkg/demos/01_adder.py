"""
Adding two numbers without overwriting them
===========================================

The search needs x + y in a register of its own, with x and y left intact
so the sum can be undone afterwards.  This script builds that adder for
3-bit inputs, prints the gate list stage by stage, and runs it on a few
inputs.
"""

from qdiophantine.arith import build_adder, build_layout, encode_inputs, read_register
from qdiophantine.circuit import gate_counts
from qdiophantine.statevector import StateVector

layout = build_layout(3)
print("x:", layout.x_qubits, " y:", layout.y_qubits, " carries:", layout.carry_qubits,
      " sum:", layout.sum_qubits, " oracle:", layout.oracle_qubit)

adder = build_adder(layout)

###############################################################################
# The barriers split the adder into one stage per bit, least significant first.

start = 0
for pos, label in adder.barriers:
    print(f"stage ending at {label}:", "  ".join(str(g) for g in adder.gates[start:pos]))
    start = pos

###############################################################################
# Run it on basis inputs.  The state stays a single basis state, so we just
# find the one nonzero amplitude and read the registers back out.

for xv, yv in [(5, 0), (3, 2), (7, 7)]:
    state = StateVector.basis(layout.width, encode_inputs(layout, xv, yv)).apply_circuit(adder)
    out = int(abs(state.amplitudes).argmax())
    sum_bits = "".join(str((out >> q) & 1) for q in layout.sum_qubits)
    print(f"{xv} + {yv}: sum register {sum_bits} = {read_register(out, layout.sum_qubits)}")

###############################################################################
# Gate counts grow linearly with the register width.

for m in range(1, 7):
    c = gate_counts(build_adder(build_layout(m)))
    print(f"m={m}: {c['CX']} CNOT, {c['CCX']} Toffoli, {4 * m + 1} qubits with the oracle qubit")
