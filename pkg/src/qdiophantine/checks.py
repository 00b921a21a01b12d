"""Self-checks run by ``qdiophantine verify``.

Each check returns a ``CheckResult``.  They simulate whole superpositions at
once rather than looping over basis inputs, which keeps them usable at the
larger register widths the CLI accepts.
"""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

from . import analysis
from .arith import RegisterLayout, build_adder, build_layout, read_register
from .circuit import Circuit, h
from .grover import build_initializer, build_oracle, iterate_states, state_label
from .statevector import StateVector

__all__ = [
    "CheckResult",
    "ripple_carries",
    "check_adder_structure",
    "check_adder_exhaustive",
    "check_oracle_signs",
    "check_grover_run",
    "run_checks",
]

PROB_TOL = 1e-10
CLOSED_FORM_TOL = 1e-9


class CheckResult(NamedTuple):
    name: str
    passed: bool
    detail: str


def ripple_carries(x: int, y: int, m: int) -> list[int]:
    """Carry out of each bit position, least significant first."""
    out, carry = [], 0
    for t in range(m):
        xb, yb = (x >> t) & 1, (y >> t) & 1
        carry = (xb & yb) | (xb & carry) | (yb & carry)
        out.append(carry)
    return out


def check_adder_structure(layout: RegisterLayout, adder: Circuit) -> CheckResult:
    inputs = set(layout.index_qubits) | {layout.oracle_qubit}
    bad = [str(g) for g in adder.gates if g.target in inputs]
    return CheckResult("adder_preserves_inputs", not bad, "; ".join(bad) or "no gate targets x, y or q")


def check_adder_exhaustive(layout: RegisterLayout, adder: Circuit, max_width=None) -> CheckResult:
    """Run the adder on the uniform superposition of all (x, y).

    The adder is a permutation that never touches x or y, so each support
    element of the output is the image of the input with the same x, y.
    """
    m, N = layout.m, 1 << (2 * layout.m)
    state = StateVector.zero(layout.width, max_width)
    state.apply_circuit(Circuit(layout.width, tuple(h(q) for q in layout.index_qubits)))
    state.apply_circuit(adder)
    support = np.flatnonzero(state.probabilities() > 0.5 / N)
    failures = []
    if len(support) != N:
        failures.append(f"{len(support)} output basis states, expected {N}")
    for idx in support.tolist():
        xv = read_register(idx, layout.x_qubits)
        yv = read_register(idx, layout.y_qubits)
        sv = read_register(idx, layout.sum_qubits)
        carries = [(idx >> q) & 1 for q in layout.carry_qubits]
        if sv != xv + yv or carries != ripple_carries(xv, yv, m)[: m - 1]:
            failures.append(f"x={xv} y={yv}: sum={sv} carries={carries}")
        if (idx >> layout.oracle_qubit) & 1:
            failures.append(f"x={xv} y={yv}: oracle qubit flipped")
    detail = f"{N} inputs" if not failures else "; ".join(failures[:5])
    return CheckResult("adder_exhaustive", not failures, detail)


def check_oracle_signs(layout: RegisterLayout, n: int, adder: Circuit | None = None, max_width=None) -> CheckResult:
    """Oracle phase on every index state against the brute-force predicate."""
    m, N = layout.m, 1 << (2 * layout.m)
    state = StateVector.zero(layout.width, max_width).apply_circuit(build_initializer(layout))
    state.apply_circuit(build_oracle(layout, n, adder))
    expected_mag = 1 / math.sqrt(2 * N)
    solutions = analysis.brute_force_solutions(m, n)
    marked = set(solutions.pairs)
    failures = []
    for xv in range(1 << m):
        for yv in range(1 << m):
            idx = 0
            for q, b in zip(layout.index_qubits, state_label(m, xv, yv)):
                idx |= int(b) << q
            amp = state.amplitudes[idx]
            sign = -1 if (xv, yv) in marked else 1
            if abs(amp - sign * expected_mag) > PROB_TOL:
                failures.append(f"({xv},{yv}): amplitude {amp:.6g}, expected {sign * expected_mag:.6g}")
    detail = f"{N} index states, {solutions.M} marked" if not failures else "; ".join(failures[:5])
    return CheckResult("oracle_signs", not failures, detail)


def check_grover_run(layout: RegisterLayout, n: int, k_max: int = 8, adder=None, max_width=None) -> list[CheckResult]:
    """Closed-form agreement and uncomputation over k = 0..k_max."""
    m = layout.m
    found = analysis.brute_force_solutions(m, n)
    N = found.N
    work = list(layout.work_qubits)
    labels = [state_label(m, xv, yv) for xv, yv in found.pairs]
    closed_fail, clean_fail = [], []
    for k, state in enumerate(iterate_states(layout, n, max_width, adder)):
        if k > k_max:
            break
        if work:
            p_clean = state.marginal_array(work)[0]
            if abs(p_clean - 1) > PROB_TOL:
                clean_fail.append(f"k={k}: work registers clean with p={p_clean:.12g}")
        p_q = state.marginal_array([layout.oracle_qubit])
        if np.max(np.abs(p_q - 0.5)) > PROB_TOL:
            clean_fail.append(f"k={k}: oracle qubit marginal {p_q.tolist()}")
        if found.M:
            probs = state.marginal_probabilities(layout.index_qubits)
            got = sum(probs[s] for s in labels)
            want = analysis.predicted_success(N, found.M, k)
            if abs(got - want) > CLOSED_FORM_TOL:
                closed_fail.append(f"k={k}: simulated {got:.12g} vs closed form {want:.12g}")
    return [
        CheckResult("closed_form", not closed_fail,
                    "; ".join(closed_fail) or f"k=0..{k_max}, M={found.M}, N={N}"),
        CheckResult("uncomputation", not clean_fail, "; ".join(clean_fail) or f"k=0..{k_max}"),
    ]


def run_checks(m: int, n: int, k_max: int = 8, adder_hook=None, max_width=None) -> list[CheckResult]:
    """All checks at size ``m``.  ``adder_hook`` maps the built adder to a
    replacement, for fault injection."""
    layout = build_layout(m)
    adder = build_adder(layout)
    if adder_hook is not None:
        adder = adder_hook(adder)
    results = [
        check_adder_structure(layout, adder),
        check_adder_exhaustive(layout, adder, max_width),
    ]
    if n < 1 << (m + 1):
        results.append(check_oracle_signs(layout, n, adder, max_width))
        results += check_grover_run(layout, n, k_max, adder, max_width)
    else:
        results.append(CheckResult("oracle_signs", False, f"target {n} does not fit in {m + 1} sum bits"))
    return results
