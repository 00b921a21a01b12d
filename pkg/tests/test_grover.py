import math

import numpy as np
import pytest

from conftest import ideal_grover
from qdiophantine.analysis import brute_force_solutions, predicted_success
from qdiophantine.arith import build_layout, encode_inputs
from qdiophantine.circuit import Circuit, ccx, cx, h, mcx, x
from qdiophantine.grover import (
    DiffuserConditionError,
    build_diffuser,
    build_grover_circuit,
    build_initializer,
    build_oracle,
    build_query,
    iterate_states,
    run_grover,
    state_label,
)
from qdiophantine.statevector import CapacityError, StateVector

LAY3 = build_layout(3)


def minus_basis(layout, xv, yv):
    """|x, y, 0, 0> with the oracle qubit in |->."""
    s = StateVector.basis(layout.width, encode_inputs(layout, xv, yv))
    return s.apply_circuit(Circuit(layout.width, (x(layout.oracle_qubit), h(layout.oracle_qubit))))


def work_clean(state, layout):
    return state.marginal_array(list(layout.work_qubits))[0]


class TestInitializer:
    def test_m3(self):
        c = build_initializer(LAY3)
        assert c.gates == tuple(h(q) for q in range(6)) + (x(12), h(12))

    def test_m1(self):
        assert build_initializer(build_layout(1)).gates == (h(0), h(1), x(4), h(4))

    def test_marginals(self):
        s = StateVector.zero(13).apply_circuit(build_initializer(LAY3))
        for p in s.marginal_probabilities(LAY3.index_qubits).values():
            assert p == pytest.approx(1 / 64, abs=1e-15)
        q = s.marginal_probabilities([12])
        assert q["0"] == pytest.approx(0.5) and q["1"] == pytest.approx(0.5)
        assert work_clean(s, LAY3) == pytest.approx(1, abs=1e-15)
        # |-> has a negative amplitude on |1>
        assert s.amplitudes[1 << 12].real < 0 < s.amplitudes[0].real


class TestQuery:
    def test_target_five(self):
        c = build_query(LAY3, 5)
        assert c.gates == (x(8), x(10), mcx([8, 9, 10, 11], 12), x(10), x(8))

    def test_all_ones(self):
        assert build_query(LAY3, 15).gates == (mcx([8, 9, 10, 11], 12),)

    def test_zero(self):
        c = build_query(LAY3, 0)
        assert c.gates[:4] == tuple(x(q) for q in (8, 9, 10, 11))
        assert c.gates[5:] == tuple(x(q) for q in (11, 10, 9, 8))

    def test_m1_uses_toffoli(self):
        assert build_query(build_layout(1), 3).gates == (ccx(2, 3, 4),)

    @pytest.mark.parametrize("n", [-1, 16])
    def test_unrepresentable(self, n):
        with pytest.raises(ValueError):
            build_query(LAY3, n)


class TestOracle:
    def test_structure(self):
        oracle = build_oracle(LAY3, 5)
        assert len(oracle) == 15 + 5 + 15
        assert oracle.gates[15:20] == build_query(LAY3, 5).gates

    def test_flips_exactly_the_sum_five_states(self):
        s = StateVector.zero(13).apply_circuit(build_initializer(LAY3))
        before = s.amplitudes.copy()
        s.apply_circuit(build_oracle(LAY3, 5))
        flipped = set()
        for xv in range(8):
            for yv in range(8):
                idx = encode_inputs(LAY3, xv, yv)
                ratio = s.amplitudes[idx] / before[idx]
                assert abs(abs(ratio) - 1) < 1e-12
                if ratio.real < 0:
                    flipped.add(state_label(3, xv, yv))
        assert flipped == {"101000", "001100", "011010", "100001", "000101", "010011"}

    def test_non_solution_unchanged(self):
        s = minus_basis(LAY3, 1, 1)
        before = s.amplitudes.copy()
        s.apply_circuit(build_oracle(LAY3, 5))
        np.testing.assert_allclose(s.amplitudes, before, atol=1e-15)

    @pytest.mark.parametrize("m", [1, 2, 3])
    def test_sign_matches_brute_force(self, m):
        lay = build_layout(m)
        for n in range(1 << (m + 1)):
            oracle = build_oracle(lay, n)
            marked = set(brute_force_solutions(m, n).pairs)
            for xv in range(1 << m):
                for yv in range(1 << m):
                    s = minus_basis(lay, xv, yv)
                    before = s.amplitudes.copy()
                    s.apply_circuit(oracle)
                    sign = -1 if (xv, yv) in marked else 1
                    np.testing.assert_allclose(s.amplitudes, sign * before, rtol=0, atol=1e-12)

    def test_work_registers_cleared(self):
        oracle = build_oracle(LAY3, 5)
        for xv, yv in [(0, 0), (5, 0), (7, 7), (3, 6)]:
            s = minus_basis(LAY3, xv, yv).apply_circuit(oracle)
            assert work_clean(s, LAY3) == pytest.approx(1, abs=1e-12)


class TestDiffuser:
    def test_m3_sequence(self):
        idx = range(6)
        expected = tuple(h(q) for q in idx) + tuple(x(q) for q in idx) + (mcx(range(6), 12),)
        expected += tuple(x(q) for q in idx) + tuple(h(q) for q in idx)
        assert build_diffuser(LAY3).gates == expected

    def test_fixes_uniform_state(self):
        s = StateVector.zero(13).apply_circuit(build_initializer(LAY3))
        before = s.marginal_array(LAY3.index_qubits)
        s.apply_circuit(build_diffuser(LAY3))
        np.testing.assert_allclose(s.marginal_array(LAY3.index_qubits), before, rtol=0, atol=1e-12)

    def test_involution(self, rng):
        lay = build_layout(2)
        s = StateVector.zero(lay.width).apply_circuit(build_initializer(lay))
        # scramble the index register with a few gates
        s.apply_circuit(Circuit(lay.width, (h(0), cx(0, 2), x(1), h(3), ccx(1, 3, 0))))
        before = s.marginal_array(lay.index_qubits)
        d = build_diffuser(lay)
        s.apply_circuit(d).apply_circuit(d)
        np.testing.assert_allclose(s.marginal_array(lay.index_qubits), before, rtol=0, atol=1e-10)

    def test_reflection_about_uniform(self):
        # with the oracle qubit in |->, the diffuser acts as +-(2|s><s| - I) on the index register
        lay = build_layout(1)
        d = build_diffuser(lay)
        for xv in range(2):
            for yv in range(2):
                s = minus_basis(lay, xv, yv).apply_circuit(d)
                amps = s.marginal_array(lay.index_qubits)
                e = np.zeros(4)
                e[2 * xv + yv] = 1
                want = (2 * np.full(4, 0.25) - e) ** 2
                np.testing.assert_allclose(amps, want, atol=1e-12)


class TestRunGrover:
    def test_two_iterations(self):
        r = run_grover(3, 5, 2)
        assert r.iterations == 2
        assert {s.state for s in r.solutions} == {"101000", "001100", "011010", "100001", "000101", "010011"}
        assert r.success_probability >= 0.999
        for s in r.solutions:
            # sin^2(5 theta) / 6 from the closed form (mpmath)
            assert s.probability == pytest.approx(0.166629791259765625, abs=1e-12)
        others = [p for st, p in r.probabilities.items() if st not in {s.state for s in r.solutions}]
        assert max(others) < 1e-4

    def test_one_iteration(self):
        assert run_grover(3, 5, 1).success_probability == pytest.approx(0.64599609375, abs=1e-9)

    def test_zero_iterations(self):
        r = run_grover(3, 5, 0)
        assert r.success_probability == pytest.approx(0.09375, abs=1e-12)
        assert all(p == pytest.approx(1 / 64, abs=1e-12) for p in r.probabilities.values())

    def test_six_iterations(self):
        r6 = run_grover(3, 5, 6)
        assert r6.success_probability == pytest.approx(0.617300803570742573, abs=1e-9)
        assert abs(r6.success_probability - run_grover(3, 5, 1).success_probability) < 0.03

    def test_auto(self):
        assert run_grover(3, 5).iterations == 2
        assert run_grover(3, 0, "auto").iterations == 6

    def test_matches_matrix_grover(self):
        for m, n in [(2, 3), (3, 5), (3, 11)]:
            marked = [(xv << m) | yv for xv, yv in brute_force_solutions(m, n).pairs]
            for k in range(5):
                r = run_grover(m, n, k)
                want = ideal_grover(1 << (2 * m), marked, k)
                got = [r.probabilities[format(i, f"0{2 * m}b")] for i in range(1 << (2 * m))]
                np.testing.assert_allclose(got, want, rtol=0, atol=1e-12)

    def test_no_solutions(self):
        r = run_grover(3, 15, 2)
        assert r.problem.M == 0 and r.probabilities == {} and r.solutions == []

    def test_negative_target(self):
        with pytest.raises(ValueError):
            run_grover(3, -1)

    def test_majority_refused(self):
        with pytest.raises(DiffuserConditionError):
            run_grover(1, 1)

    def test_majority_forced(self):
        r = run_grover(1, 1, force=True)
        assert r.iterations == 1
        assert r.success_probability == pytest.approx(0.5, abs=1e-12)

    def test_capacity(self):
        with pytest.raises(CapacityError):
            run_grover(3, 5, max_width=12)

    def test_sampling(self):
        r = run_grover(3, 5, 2, shots=1000, seed=11)
        assert sum(r.counts.values()) == 1000
        assert r.counts == run_grover(3, 5, 2, shots=1000, seed=11).counts
        assert sum(r.histogram.values()) == pytest.approx(1)
        # exact numbers are still reported alongside the counts
        assert r.success_probability == pytest.approx(predicted_success(64, 6, 2), abs=1e-9)


class TestInvariants:
    @pytest.mark.parametrize("m", [1, 2, 3])
    def test_closed_form(self, m):
        lay = build_layout(m)
        N = 1 << (2 * m)
        for n in range(1 << (m + 1)):
            sols = brute_force_solutions(m, n)
            if not 0 < sols.M < N / 2:
                continue
            labels = [state_label(m, *p) for p in sols.pairs]
            for k, state in enumerate(iterate_states(lay, n)):
                if k > 8:
                    break
                probs = state.marginal_probabilities(lay.index_qubits)
                got = sum(probs[s] for s in labels)
                assert abs(got - predicted_success(N, sols.M, k)) < 1e-9
                sol_p = [probs[s] for s in labels]
                assert max(sol_p) - min(sol_p) < 1e-12
                if k == 1 and sols.M < N / 4:
                    assert got > sols.M / N

    def test_uncomputation_every_iteration(self):
        for k, state in enumerate(iterate_states(LAY3, 5)):
            if k > 4:
                break
            assert abs(work_clean(state, LAY3) - 1) < 1e-10
            np.testing.assert_allclose(state.marginal_array([12]), [0.5, 0.5], atol=1e-10)

    def test_circuit_equals_iterated(self):
        a = StateVector.zero(13).apply_circuit(build_grover_circuit(LAY3, 5, 3))
        it = iterate_states(LAY3, 5)
        for _ in range(4):
            b = next(it)
        np.testing.assert_array_equal(a.amplitudes, b.amplitudes)
