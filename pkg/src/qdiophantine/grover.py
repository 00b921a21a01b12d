"""Grover search for x + y = n.

One iteration is ``oracle + diffuser``.  The oracle computes x + y into the
sum register, flips the oracle qubit when the sum equals n, then runs the
adder backwards.  Because the oracle qubit sits in |->, the flip shows up
as a sign on the marked index states.  The diffuser reflects the index
register about its uniform superposition by the same kickback trick.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, NamedTuple

from . import analysis
from .arith import RegisterLayout, build_adder, build_layout, to_bits
from .circuit import Circuit, controlled_x, h, x
from .statevector import StateVector

__all__ = [
    "DiffuserConditionError",
    "SearchProblem",
    "Solution",
    "GroverReport",
    "state_label",
    "build_initializer",
    "build_query",
    "build_oracle",
    "build_diffuser",
    "build_iteration",
    "build_grover_circuit",
    "iterate_states",
    "run_grover",
]


class DiffuserConditionError(ValueError):
    """Half or more of the index space is marked; the standard diffuser stops amplifying."""


@dataclass(frozen=True)
class SearchProblem:
    m: int
    n: int
    M: int

    @classmethod
    def create(cls, m: int, n: int) -> SearchProblem:
        if m < 1:
            raise ValueError(f"bits must be at least 1, got {m}")
        if n < 0:
            raise ValueError(f"target must be non-negative, got {n}")
        return cls(m, n, analysis.solution_count(m, n))

    @property
    def N(self) -> int:
        return 1 << (2 * self.m)


class Solution(NamedTuple):
    state: str
    x: int
    y: int
    probability: float


@dataclass
class GroverReport:
    problem: SearchProblem
    iterations: int
    probabilities: dict[str, float]
    success_probability: float
    predicted_success: float
    solutions: list[Solution]
    counts: dict[str, int] | None = None
    shots: int = 0
    seed: int | None = None
    forced: bool = field(default=False, repr=False)

    @property
    def histogram(self) -> dict[str, float]:
        """Sampled frequencies when shots were taken, exact probabilities otherwise."""
        if self.counts is None:
            return self.probabilities
        return {s: self.counts.get(s, 0) / self.shots for s in self.probabilities}


def state_label(m: int, x_val: int, y_val: int) -> str:
    """Display string x0..x(m-1) y0..y(m-1), as in '101000' for x=5, y=0."""
    return "".join(map(str, to_bits(x_val, m) + to_bits(y_val, m)))


def build_initializer(layout: RegisterLayout) -> Circuit:
    gates = [h(q) for q in layout.index_qubits]
    gates += [x(layout.oracle_qubit), h(layout.oracle_qubit)]
    return Circuit(layout.width, tuple(gates))


def build_query(layout: RegisterLayout, n: int) -> Circuit:
    """Flip the oracle qubit iff the sum register holds ``n``."""
    nbits = layout.m + 1
    if not 0 <= n < 1 << nbits:
        raise ValueError(f"target {n} is not representable in {nbits} sum bits")
    zeros = [q for q, b in zip(layout.sum_qubits, to_bits(n, nbits)) if b == 0]
    gates = [x(q) for q in zeros]
    gates.append(controlled_x(layout.sum_qubits, layout.oracle_qubit))
    gates += [x(q) for q in reversed(zeros)]
    return Circuit(layout.width, tuple(gates))


def build_oracle(layout: RegisterLayout, n: int, adder: Circuit | None = None) -> Circuit:
    """Adder, query, inverse adder.

    ``adder`` overrides the built adder; it exists so tests can inject a
    faulty one.
    """
    query = build_query(layout, n)
    if adder is None:
        adder = build_adder(layout)
    return Circuit.concat(layout.width, [adder, query, adder.adjoint()])


def build_diffuser(layout: RegisterLayout) -> Circuit:
    idx = layout.index_qubits
    gates = [h(q) for q in idx] + [x(q) for q in idx]
    gates.append(controlled_x(idx, layout.oracle_qubit))
    gates += [x(q) for q in idx] + [h(q) for q in idx]
    return Circuit(layout.width, tuple(gates))


def build_iteration(layout: RegisterLayout, n: int, adder: Circuit | None = None) -> Circuit:
    return build_oracle(layout, n, adder) + build_diffuser(layout)


def build_grover_circuit(layout: RegisterLayout, n: int, k: int) -> Circuit:
    """Initializer followed by ``k`` Grover iterations (no measurement)."""
    if k < 0:
        raise ValueError("iteration count must be non-negative")
    step = build_iteration(layout, n)
    return Circuit.concat(layout.width, [build_initializer(layout)] + [step] * k)


def iterate_states(
    layout: RegisterLayout,
    n: int,
    max_width: int | None = None,
    adder: Circuit | None = None,
) -> Iterator[StateVector]:
    """Yield the state after 0, 1, 2, ... iterations.  The same object is
    mutated between yields; copy it to keep a snapshot."""
    state = StateVector.zero(layout.width, max_width).apply_circuit(build_initializer(layout))
    step = build_iteration(layout, n, adder)
    while True:
        yield state
        state.apply_circuit(step)


def _schedule(problem: SearchProblem, k, force: bool) -> int:
    if k is None or k == "auto":
        if problem.M == 0:
            return 0
        if force and 2 * problem.M >= problem.N:
            return 1
        return analysis.optimal_iterations(problem.N, problem.M)
    k = int(k)
    if k < 0:
        raise ValueError("iteration count must be non-negative")
    return k


def run_grover(
    m: int,
    n: int,
    k: int | str | None = "auto",
    shots: int | None = None,
    seed: int | None = None,
    force: bool = False,
    max_width: int | None = None,
) -> GroverReport:
    """Build and simulate the full search for x + y = n over m-bit naturals.

    ``k="auto"`` picks floor(pi/4 * sqrt(N/M)).  If no pair sums to n the
    circuit is not run and the report comes back with M = 0 and an empty
    histogram.  Raises DiffuserConditionError when M >= N/2 unless
    ``force`` is set.
    """
    problem = SearchProblem.create(m, n)
    if 2 * problem.M >= problem.N and not force:
        raise DiffuserConditionError(
            f"{problem.M} of {problem.N} index states are solutions; the diffuser "
            "needs fewer than half (pass force=True to run anyway)"
        )
    iterations = _schedule(problem, k, force)
    if problem.M == 0:
        return GroverReport(problem, iterations, {}, 0.0, 0.0, [], shots=shots or 0, seed=seed)

    layout = build_layout(m)
    state = StateVector.zero(layout.width, max_width)
    state.apply_circuit(build_grover_circuit(layout, n, iterations))
    probs = state.marginal_probabilities(layout.index_qubits)

    found = analysis.brute_force_solutions(m, n)
    solutions = []
    for xv, yv in found.pairs:
        label = state_label(m, xv, yv)
        solutions.append(Solution(label, xv, yv, probs[label]))
    success = sum(s.probability for s in solutions)

    counts = None
    if shots:
        counts = state.sample(layout.index_qubits, shots, seed)
    return GroverReport(
        problem,
        iterations,
        probs,
        success,
        analysis.predicted_success(problem.N, problem.M, iterations),
        solutions,
        counts=counts,
        shots=shots or 0,
        seed=seed,
        forced=force,
    )
