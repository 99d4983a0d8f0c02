import numpy as np
import pytest

from posim.algo import (
    BijectionTable,
    MINUS_STATE,
    MatchConvention,
    check_bijective,
    check_bit_balance,
    dense_bare_transform,
    dense_parallel_iteration,
    dense_permutation,
    dense_recip_transform,
    dense_sequential_iteration,
    dense_sequential_search,
    hadamard_layer,
    parity_dot,
    phase_aligned_deviation,
    run_parallel_iteration,
    run_sequential_iteration,
    verify_chain_rule,
    walsh_sign_matrix,
)
from posim.circuit import Circuit, CircuitBuilder
from posim.gates import maj_gate, recip_maj_gate
from posim.sim import CapacityError, Statevector
from posim.suites import maj_completion_table, sum_gate_table
from conftest import word


def test_parity_dot_basics():
    assert parity_dot(0, 0b1011) == 0
    assert parity_dot(0b101, 0b100) == 1
    assert parity_dot(0b111, 0b101) == 0


@pytest.mark.parametrize("n", range(1, 9))
def test_delta_identity(n):
    # summing the Walsh phases over all k collapses to the delta at x = 0
    size = 1 << n
    for x in range(size):
        total = sum((-1) ** parity_dot(k, x) for k in range(size))
        assert total == (size if x == 0 else 0)


def test_bijection_table_validation():
    with pytest.raises(ValueError):
        BijectionTable(2, (0, 1, 1, 3))
    table = BijectionTable(2, (2, 3, 0, 1))
    assert table.inverse()(2) == 0
    assert table.compose(table.inverse()).table == (0, 1, 2, 3)


def test_dense_recip_identity_is_identity():
    for n in (1, 2, 4):
        np.testing.assert_allclose(dense_recip_transform(BijectionTable.identity(n)),
                                   np.eye(1 << n), atol=1e-12)


def test_dense_recip_of_sum_gate_is_known_permutation():
    found = dense_recip_transform(sum_gate_table())
    expected = np.zeros((8, 8))
    for kap in range(8):
        k0, k1, k2 = kap & 1, (kap >> 1) & 1, (kap >> 2) & 1
        ka, kb, kc = k1 ^ k2, k2, k0 ^ k2
        expected[kap, kc | ka << 1 | kb << 2] = 1.0
    np.testing.assert_allclose(found, expected, atol=1e-12)


def test_dense_recip_unitarity(rng):
    f = BijectionTable.random(6, rng)
    mat = dense_recip_transform(f)
    np.testing.assert_allclose(mat @ mat.conj().T, np.eye(64), atol=1e-10)


def test_dense_recip_size_cap():
    with pytest.raises(CapacityError):
        dense_recip_transform(BijectionTable.identity(13))


def test_bare_transform_identity_is_hadamard():
    np.testing.assert_allclose(dense_bare_transform(BijectionTable.identity(1)),
                               np.array([[1, 1], [1, -1]]) / np.sqrt(2), atol=1e-15)


def test_bare_transform_relations(rng):
    for n in (2, 4, 6):
        f = BijectionTable.random(n, rng)
        bare = dense_bare_transform(f)
        h = walsh_sign_matrix(n) / np.sqrt(1 << n)
        np.testing.assert_allclose(bare @ h, dense_recip_transform(f), atol=1e-12)
        # B |x> = H |f(x)>
        for x in range(1 << n):
            np.testing.assert_allclose(bare[:, x], h[:, f(x)], atol=1e-12)


def test_chain_rule_identity_inner(rng):
    f = BijectionTable.random(4, rng)
    assert verify_chain_rule(f, BijectionTable.identity(4)) <= 1e-12


def test_chain_rule_random_pairs(rng):
    worst = 0.0
    for _ in range(100):
        f, g = BijectionTable.random(5, rng), BijectionTable.random(5, rng)
        worst = max(worst, verify_chain_rule(f, g))
    assert worst <= 1e-9


def test_chain_rule_size_mismatch():
    with pytest.raises(ValueError):
        verify_chain_rule(BijectionTable.identity(2), BijectionTable.identity(3))


def test_check_bijective_and_balance():
    assert check_bijective(maj_completion_table().table)
    assert check_bit_balance(maj_completion_table().table)
    assert not check_bijective([0] * 8)
    # any permutation is balanced on every bit
    assert check_bit_balance([3, 1, 0, 2])


def test_run_parallel_identity_oracle_one_qubit():
    # empty oracle and reciprocal circuits: f is the identity
    empty = Circuit(1, ())
    state = Statevector(1)
    state.apply_circuit(hadamard_layer(1, [0]))
    run_parallel_iteration(state, empty, empty, [0])
    assert abs(state.amps[0]) ** 2 >= 1 - 1e-9
    # and the all-ones convention lands on |1>
    state = Statevector(1)
    state.apply_circuit(hadamard_layer(1, [0]))
    run_parallel_iteration(state, empty, empty, [0], MatchConvention.ALL_ONES)
    assert abs(state.amps[1]) ** 2 >= 1 - 1e-9


def _wrapped_recip_maj(num_qubits=4):
    """Reciprocal majority circuit with its own |-> prep, acting |0>->|0> on
    the ancilla so it can sit inside a conjugation."""
    builder = CircuitBuilder(num_qubits)
    builder.x(3)
    builder.h(3)
    builder.extend(recip_maj_gate(0, 1, 2, 3))
    builder.h(3)
    builder.x(3)
    return builder.build()


def test_run_parallel_iteration_with_maj_circuits():
    oracle = maj_gate(word("a", 0, 1), word("b", 1, 1), word("c", 2, 1), num_qubits=4)
    recip = _wrapped_recip_maj()
    f = maj_completion_table()
    state = Statevector(4)
    state.apply_circuit(hadamard_layer(4, [0, 1, 2]))
    run_parallel_iteration(state, oracle, recip, [0, 1, 2])
    target = f.inverse()(0)
    assert abs(state.amps[target]) ** 2 >= 1 - 1e-9
    # phase comes out as pi * n / 4 for n = 3
    assert abs(np.angle(state.amps[target]) - 3 * np.pi / 4) <= 1e-6


def test_run_sequential_iterations_with_maj_circuits():
    oracle = maj_gate(word("a", 0, 1), word("b", 1, 1), word("c", 2, 1), num_qubits=4)
    recip = _wrapped_recip_maj()
    f = maj_completion_table()
    state = Statevector(4)
    state.apply_circuit(hadamard_layer(4, [0, 1, 2]))
    for ell in range(3):
        run_sequential_iteration(state, ell, oracle, recip, [0, 1, 2])
        # support after pass ell: exactly the inputs whose first ell+1
        # oracle bits vanish
        mask = (1 << (ell + 1)) - 1
        expected = {x for x in range(8) if (f(x) & mask) == 0}
        probs = np.abs(state.amps) ** 2
        support = {i & 7 for i in range(16) if probs[i] > 1e-9}
        assert support == expected
        assert len(support) == 1 << (3 - ell - 1)
    assert abs(state.amps[f.inverse()(0)]) ** 2 >= 1 - 1e-9


def test_sequential_bad_ell():
    empty = Circuit(2, ())
    with pytest.raises(ValueError):
        run_sequential_iteration(Statevector(2), 5, empty, empty, [0, 1])


def test_dense_sequential_matches_parallel(rng):
    for n in (2, 3, 4, 5):
        f = BijectionTable.random(n, rng)
        seq = dense_sequential_search(f)
        par = dense_parallel_iteration(f)
        assert abs(np.vdot(seq, par)) >= 1 - 1e-9


def test_dense_parallel_solution_and_phase(rng):
    for n in (2, 3, 4, 5):
        f = BijectionTable.random(n, rng)
        vec = dense_parallel_iteration(f)
        sol = f.inverse()(0)
        assert abs(vec[sol]) ** 2 >= 1 - 1e-9
        assert abs(np.angle(vec[sol] * np.exp(-1j * np.pi * n / 4))) <= 1e-6


def test_dense_sequential_halves_support(rng):
    f = BijectionTable.random(4, rng)
    vec = dense_sequential_iteration(f, 0)
    support = [x for x in range(16) if abs(vec[x]) > 1e-9]
    assert len(support) == 8


def test_phase_aligned_deviation_modes():
    a = np.diag([1, 1j]).astype(complex)
    b = np.exp(1j * 0.7) * a
    assert phase_aligned_deviation(b, a) <= 1e-12
    assert phase_aligned_deviation(np.eye(2, dtype=complex), a) > 0.5


def test_dense_permutation_columns():
    f = BijectionTable(2, (2, 0, 3, 1))
    p = dense_permutation(f)
    for x in range(4):
        assert p[f(x), x] == 1.0
    assert np.sum(p) == 4


def test_match_convention_parse():
    assert MatchConvention.parse("zeros") is MatchConvention.ALL_ZEROS
    assert MatchConvention.parse("ones") is MatchConvention.ALL_ONES
    with pytest.raises(ValueError):
        MatchConvention.parse("both")


def test_minus_state_constant():
    np.testing.assert_allclose(MINUS_STATE, [1 / np.sqrt(2), -1 / np.sqrt(2)])
