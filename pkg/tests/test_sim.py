import numpy as np
import pytest

import posim.sim as simmod
from posim.circuit import Circuit, CircuitBuilder, Gate
from posim.sim import CapacityError, Statevector, dense_unitary, new_state

SQ2 = 1.0 / np.sqrt(2.0)


def test_new_state_is_zero_ket():
    state = new_state(1)
    np.testing.assert_array_equal(state.amps, [1, 0])
    state = new_state(3)
    assert state.amps[0] == 1.0
    assert np.count_nonzero(state.amps) == 1


def test_new_state_capacity_error_under_16gib_budget():
    with pytest.raises(CapacityError):
        new_state(31, budget=16 * 2**30)


def test_new_state_hard_cap_at_30_qubits():
    with pytest.raises(CapacityError):
        new_state(31, budget=2**60)


def test_precision_dtypes():
    assert new_state(2).amps.dtype == np.complex128
    assert new_state(2, "single").amps.dtype == np.complex64
    with pytest.raises(ValueError):
        new_state(2, "half")


def test_hadamard_on_zero():
    state = new_state(1).apply(Gate("h", (0,)))
    np.testing.assert_allclose(state.amps, [SQ2, SQ2])


def test_s_gate_phases_one():
    state = new_state(1)
    state.set_basis_state(1)
    state.apply(Gate("s", (0,)))
    np.testing.assert_allclose(state.amps, [0, 1j])
    state.apply(Gate("sdg", (0,)))
    np.testing.assert_allclose(state.amps, [0, 1])


def test_phase_kickback_from_minus_state():
    # controls in |11>, target prepared |->: the branch picks up -1
    state = new_state(3)
    state.set_basis_state(0b011)
    state.apply(Gate("x", (2,)))
    state.apply(Gate("h", (2,)))  # target |-> on qubit 2
    state.apply(Gate("x", (2,), (0, 1)))
    state.apply(Gate("h", (2,)))
    state.apply(Gate("x", (2,)))
    np.testing.assert_allclose(state.amps[0b011], -1.0, atol=1e-12)


def test_apply_index_out_of_range():
    with pytest.raises(IndexError):
        new_state(2).apply(Gate("x", (5,)))


def test_apply_circuit_empty_and_hh():
    state = new_state(2)
    before = state.amps.copy()
    state.apply_circuit(Circuit(2, ()))
    np.testing.assert_array_equal(state.amps, before)
    builder = CircuitBuilder(2)
    builder.h(0)
    builder.barrier()
    builder.h(0)
    state.apply_circuit(builder.build())
    np.testing.assert_allclose(state.amps, before, atol=1e-12)


def test_sum_gate_circuit_on_basis_state():
    # wires (c, a, b) = qubits (0, 1, 2); input c=1, a=1, b=0; sum bit
    # b = a^b^c = 0, so the basis state is unchanged
    builder = CircuitBuilder(3)
    builder.x(2, [1])
    builder.x(2, [0])
    state = new_state(3)
    state.set_basis_state(0b011)
    state.apply_circuit(builder.build())
    assert np.argmax(np.abs(state.amps)) == 0b011


def test_register_distribution_uniform():
    state = new_state(2)
    state.apply(Gate("h", (0,))).apply(Gate("h", (1,)))
    dist = state.register_distribution([[0, 1]])
    assert set(dist) == {0, 1, 2, 3}
    np.testing.assert_allclose(sorted(dist.values()), [0.25] * 4)


def test_register_distribution_marginal():
    state = new_state(2).apply(Gate("h", (0,)))  # |+> (x) |0>
    dist = state.register_distribution([[1]])
    assert dist == pytest.approx({0: 1.0})


def test_register_distribution_tuple_keys_and_groups():
    state = new_state(3)
    state.set_basis_state(0b101)
    dist = state.register_distribution([[0, 1], [2]])
    assert dist == pytest.approx({(1, 1): 1.0})


def test_register_distribution_overlap_rejected():
    with pytest.raises(ValueError):
        new_state(2).register_distribution([[0], [0, 1]])


def test_register_distribution_sums_to_one(rng):
    state = new_state(5)
    amps = rng.normal(size=32) + 1j * rng.normal(size=32)
    state.amps[:] = amps / np.linalg.norm(amps)
    dist = state.register_distribution([[0, 2], [3]])
    assert abs(sum(dist.values()) - 1.0) < 1e-9


def test_dense_unitary_hadamard():
    builder = CircuitBuilder(1)
    builder.h(0)
    np.testing.assert_allclose(dense_unitary(builder.build()),
                               np.array([[SQ2, SQ2], [SQ2, -SQ2]]), atol=1e-15)


def test_dense_unitary_is_unitary(rng):
    builder = CircuitBuilder(4)
    for _ in range(30):
        kind = rng.choice(["x", "h", "s", "sdg", "z", "swap"])
        need = 2 if kind == "swap" else 1
        wires = rng.choice(4, size=need + int(rng.integers(0, 2)), replace=False)
        builder.append(Gate(kind, tuple(int(w) for w in wires[:need]),
                            tuple(int(w) for w in wires[need:])))
    mat = dense_unitary(builder.build())
    np.testing.assert_allclose(mat @ mat.conj().T, np.eye(16), atol=1e-10)


def test_dense_unitary_size_cap():
    with pytest.raises(CapacityError):
        dense_unitary(Circuit(13, ()))


@pytest.mark.parametrize("n", range(1, 7))
def test_little_endian_x_flips_bit_j(n):
    for j in range(n):
        for i in range(1 << n):
            state = new_state(n)
            state.set_basis_state(i)
            state.apply(Gate("x", (j,)))
            assert np.argmax(np.abs(state.amps)) == i ^ (1 << j)


def test_norm_preserved_on_random_circuit(rng):
    for precision, tol in (("double", 1e-9), ("single", 1e-4)):
        state = new_state(6, precision)
        for _ in range(200):
            kind = rng.choice(["x", "h", "s", "sdg", "z", "swap"])
            need = 2 if kind == "swap" else 1
            wires = rng.choice(6, size=need + int(rng.integers(0, 3)), replace=False)
            state.apply(Gate(kind, tuple(int(w) for w in wires[:need]),
                             tuple(int(w) for w in wires[need:])))
        assert abs(state.norm() - 1.0) <= tol


def test_kernel_and_slicing_paths_agree_bitwise(rng, monkeypatch):
    if not simmod.KERNELS_ENABLED:
        pytest.skip("numba kernels not active")
    for _ in range(10):
        n = int(rng.integers(2, 8))
        gates = []
        for _ in range(40):
            kind = rng.choice(["x", "h", "s", "sdg", "z", "swap"])
            need = 2 if kind == "swap" else 1
            size = min(n, need + int(rng.integers(0, 3)))
            wires = rng.choice(n, size=size, replace=False)
            gates.append(Gate(kind, tuple(int(w) for w in wires[:need]),
                              tuple(int(w) for w in wires[need:])))
        amps = rng.normal(size=1 << n) + 1j * rng.normal(size=1 << n)
        amps /= np.linalg.norm(amps)
        fast, slow = Statevector(n), Statevector(n)
        fast.amps[:] = amps
        slow.amps[:] = amps
        for gate in gates:
            fast.apply(gate)
        monkeypatch.setattr(simmod, "KERNELS_ENABLED", False)
        for gate in gates:
            slow.apply(gate)
        monkeypatch.undo()
        np.testing.assert_array_equal(fast.amps, slow.amps)


def test_memory_budget_env_override(monkeypatch):
    monkeypatch.setenv("POSIM_MEMORY_BUDGET", str(2**10))
    with pytest.raises(CapacityError):
        new_state(10)
    monkeypatch.delenv("POSIM_MEMORY_BUDGET")
    new_state(10)
