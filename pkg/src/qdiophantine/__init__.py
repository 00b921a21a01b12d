"""Grover search for natural-number solutions of x + y = n.

The package is a small statevector simulator plus the circuit builders for
a non-overwriting adder, an equality oracle and the Grover diffuser.
"""

from .analysis import SolutionSet, brute_force_solutions, optimal_iterations, predicted_success
from .arith import RegisterLayout, build_adder, build_layout
from .circuit import Circuit, Gate, adjoint, export_text, gate_counts
from .grover import (
    DiffuserConditionError,
    GroverReport,
    build_diffuser,
    build_grover_circuit,
    build_initializer,
    build_oracle,
    build_query,
    run_grover,
)
from .statevector import CapacityError, StateVector, new_zero_state

__version__ = "0.1.0"
