"""
Shots and circuit export
========================

On hardware we would only see measurement counts.  Sampling the simulated
state with a fixed seed gives a reproducible histogram.  The full circuit can
also be written out as OpenQASM 3 for inspection in other tools.
"""

import tempfile
from pathlib import Path

from qdiophantine.arith import build_layout
from qdiophantine.circuit import export_text, gate_counts
from qdiophantine.grover import build_grover_circuit, run_grover

r = run_grover(3, 5, 2, shots=4096, seed=1)
for state, count in sorted(r.counts.items(), key=lambda kv: -kv[1])[:8]:
    print(f"{state}  {count:5d}  (exact {r.probabilities[state]:.4f})")

###############################################################################
# One Grover iteration as a QASM listing.

layout = build_layout(3)
circuit = build_grover_circuit(layout, 5, 1)
text = export_text(circuit, layout.registers())
path = Path(tempfile.gettempdir()) / "grover_x_plus_y_5.qasm"
path.write_text(text, encoding="utf-8")
print(f"\nwrote {path} ({len(text.splitlines())} lines)")
print("gate counts:", dict(gate_counts(circuit)))
print("\n".join(text.splitlines()[:10]))
