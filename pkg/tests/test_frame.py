import numpy as np
import pytest

from posim.algo import (
    MatchConvention,
    ZERO_STATE,
    circuit_data_unitary,
    dense_recip_transform,
    phase_aligned_deviation,
)
from posim.frame import (
    ProgramTape,
    TapeError,
    TapeParseError,
    calculate,
    emit_oracle_circuit,
    emit_recip_circuit,
    format_tape,
    parse_tape,
    partial_oracle_iteration,
    plan_layout,
    tape_bijection,
)
from posim.gf2 import ShiftType
from posim.programs import chain_tape, default_toyhash_seeds, toyhash_tape
from posim.sim import Statevector


def make_full_tape(width=2):
    """One of every instruction kind: shift temp, ch temp, const add,
    register add, maj temp, inline shift."""
    tape = ProgramTape()
    a = tape.register("a", width)
    b = tape.register("b", width)
    c = tape.register("c", width)
    d = tape.register("d", width)
    big = ShiftType(width, (0, 1, 3))
    if width == 1:
        sigma = ShiftType(width, (1,))
    else:
        sigma = ShiftType(width, (0, 1), (min(3, width - 1),))
    tape.add_shift(d, big, a)
    tape.add_ch(d, a, b, c)
    tape.add_const(d, 1)
    tape.add_reg(b, d)
    tape.add_maj(d, a, b, c)
    tape.shift_inline(a, sigma)
    return tape.seal()


def test_tape_validation():
    tape = ProgramTape()
    x = tape.register("x", 2)
    y = tape.register("y", 3)
    with pytest.raises(TapeError):
        tape.register("x", 2)
    with pytest.raises(TapeError):
        tape.add_reg(x, x)
    with pytest.raises(TapeError):
        tape.add_reg(x, y)  # width mismatch
    with pytest.raises(TapeError):
        tape.add_const(x, 4)
    with pytest.raises(TapeError):
        tape.shift_inline(x, ShiftType(2, (0, 1)))  # singular
    with pytest.raises(TapeError):
        tape.add_maj(x, x, x, x)
    other = ProgramTape()
    z = other.register("z", 2)
    with pytest.raises(TapeError):
        tape.add_reg(x, z)
    tape.seal()
    with pytest.raises(TapeError):
        tape.add_const(x, 1)


def test_calculate_chain_paper_values():
    tape = chain_tape(4)
    assert calculate(tape, {"x": 4, "y": 7}) == {"x": 4, "y": 1}


def test_calculate_toyhash_paper_values():
    tape = toyhash_tape(4)
    seeds = default_toyhash_seeds(4)
    assert seeds == {"a": 7, "b": 5, "c": 2, "d": 10, "W0": 8}
    assert calculate(tape, seeds) == {"a": 13, "b": 1, "c": 7, "d": 4, "W0": 10}


def test_calculate_empty_tape_returns_seeds():
    tape = ProgramTape()
    tape.register("x", 3)
    tape.seal()
    assert calculate(tape, {"x": 5}) == {"x": 5}


def test_calculate_missing_seed():
    tape = chain_tape(2)
    with pytest.raises(TapeError):
        calculate(tape, {"x": 1})


def test_calculate_temp_does_not_mutate_arguments():
    tape = ProgramTape()
    a = tape.register("a", 2)
    b = tape.register("b", 2)
    c = tape.register("c", 2)
    d = tape.register("d", 2)
    tape.add_maj(d, a, b, c)
    tape.add_ch(d, a, b, c)
    tape.add_shift(d, ShiftType(2, (1,)), a)
    tape.seal()
    out = calculate(tape, {"a": 1, "b": 2, "c": 3, "d": 0})
    assert (out["a"], out["b"], out["c"]) == (1, 2, 3)
    maj = (1 & 2) ^ (2 & 3) ^ (3 & 1)
    ch = ((1 & 2) ^ (~1 & 3)) & 3
    shift = ShiftType(2, (1,)).apply(1)
    assert out["d"] == (maj + ch + shift) % 4


def test_tape_bijection_is_permutation():
    bij = tape_bijection(make_full_tape(2))
    assert sorted(bij.table) == list(range(256)) or bij.num_bits == 8
    assert bij.num_bits == 8


def test_layout_shares_scratch_and_counts_qubits():
    layout = plan_layout(toyhash_tape(4))
    assert layout.num_qubits == 26
    assert len(layout.scratch_union) == 4
    assert layout.carry is not None and layout.minus_anc is not None
    layout = plan_layout(chain_tape(4))
    assert layout.num_qubits == 14


def test_emit_oracle_empty_tape():
    tape = ProgramTape()
    tape.register("x", 2)
    tape.seal()
    circuit, wires = emit_oracle_circuit(tape, {"x": 0})
    assert circuit.gates == []
    assert wires == (0, 1)


def test_emit_oracle_chain_basis_check():
    tape = chain_tape(4)
    circuit, wires = emit_oracle_circuit(tape, {"x": 4, "y": 1})
    state = Statevector(circuit.num_qubits)
    state.set_basis_state(4 | 7 << 4)  # |x=4, y=7>
    state.apply_circuit(circuit)
    out = int(np.argmax(np.abs(state.amps)))
    assert out == 0  # index wires all zero, ancillas restored
    assert wires == tuple(range(8))


@pytest.mark.parametrize("width", [1, 2])
def test_emit_oracle_exhaustive_equals_calculate_xor_target(width):
    tape = make_full_tape(width)
    n = tape.num_index_bits
    rng = np.random.default_rng(7)
    target_flat = int(rng.integers(0, 1 << n))
    names = [r.name for r in tape.registers]
    targets = {}
    offset = 0
    for name in names:
        w = next(r.width for r in tape.registers if r.name == name)
        targets[name] = (target_flat >> offset) & ((1 << w) - 1)
        offset += w
    circuit, wires = emit_oracle_circuit(tape, targets)
    bij = tape_bijection(tape)
    for x in range(1 << n):
        state = Statevector(circuit.num_qubits)
        state.set_basis_state(x)
        state.apply_circuit(circuit)
        out = int(np.argmax(np.abs(state.amps)))
        assert abs(state.amps[out]) ** 2 > 1 - 1e-9
        assert out == bij(x) ^ target_flat  # ancilla wires back to |0>


def test_emit_recip_empty_tape():
    tape = ProgramTape()
    tape.register("x", 2)
    tape.seal()
    circuit, wires = emit_recip_circuit(tape)
    assert circuit.gates == []
    assert wires == (0, 1)


def test_emit_recip_single_add_matches_dense():
    tape = ProgramTape()
    x = tape.register("x", 2)
    y = tape.register("y", 2)
    tape.add_reg(y, x)
    tape.seal()
    circuit, _ = emit_recip_circuit(tape)
    anc = {q: ZERO_STATE for q in range(4, circuit.num_qubits)}
    found = circuit_data_unitary(circuit, (0, 1, 2, 3), anc)
    ref = dense_recip_transform(tape_bijection(tape))
    assert phase_aligned_deviation(found, ref) <= 1e-9


def test_emit_recip_chain_w2_realizes_chain_rule():
    tape = chain_tape(2)
    circuit, _ = emit_recip_circuit(tape)
    anc = {q: ZERO_STATE for q in range(4, circuit.num_qubits)}
    found = circuit_data_unitary(circuit, (0, 1, 2, 3), anc)
    ref = dense_recip_transform(tape_bijection(tape))
    assert phase_aligned_deviation(found, ref) <= 1e-9


def test_emit_recip_full_tape_w1_matches_dense():
    tape = make_full_tape(1)
    circuit, _ = emit_recip_circuit(tape)
    n_idx = tape.num_index_bits
    anc = {q: ZERO_STATE for q in range(n_idx, circuit.num_qubits)}
    found = circuit_data_unitary(circuit, tuple(range(n_idx)), anc)
    ref = dense_recip_transform(tape_bijection(tape))
    assert phase_aligned_deviation(found, ref) <= 1e-9


def test_partial_oracle_iteration_chain_paper_case():
    result = partial_oracle_iteration(chain_tape(4), {"x": 4, "y": 1})
    (values, prob), = result.solutions()
    assert values == (4, 7)
    assert prob >= 0.999
    assert result.iterations == 1
    assert result.qubit_count == 14


def test_partial_oracle_iteration_seeded_toyhash_w2(rng):
    tape = toyhash_tape(2)
    names = [r.name for r in tape.registers]
    for _ in range(3):
        seeds = {name: int(rng.integers(0, 4)) for name in names}
        targets = calculate(tape, seeds)
        result = partial_oracle_iteration(tape, targets)
        best, prob = result.solutions()[0]
        assert best == tuple(seeds[name] for name in names)
        assert prob >= 0.999


def test_inversion_soundness_w2_chain_all_targets():
    tape = chain_tape(2)
    bij = tape_bijection(tape)
    for target in range(16):
        targets = {"x": target & 3, "y": target >> 2}
        result = partial_oracle_iteration(tape, targets)
        best, prob = result.solutions()[0]
        assert best[0] | best[1] << 2 == bij.inverse()(target)
        assert prob >= 0.999


def test_ancilla_hygiene_after_iteration():
    tape = toyhash_tape(2)
    targets = calculate(tape, {n.name: 1 for n in tape.registers})
    result = partial_oracle_iteration(tape, targets)
    layout = plan_layout(tape)
    extra = [q for q in range(layout.num_qubits) if q not in layout.index_qubits]
    dist = result.state.register_distribution([extra])
    assert dist == pytest.approx({0: 1.0}, abs=1e-9)


def test_sequential_mode_matches_parallel():
    tape = chain_tape(2)
    targets = {"x": 2, "y": 1}
    par = partial_oracle_iteration(tape, targets)
    seq = partial_oracle_iteration(tape, targets, mode="sequential")
    assert seq.iterations == 4
    assert par.solutions()[0][0] == seq.solutions()[0][0]
    assert seq.solutions()[0][1] >= 1 - 1e-9
    with pytest.raises(ValueError):
        partial_oracle_iteration(tape, targets, mode="sequential",
                                 convention=MatchConvention.ALL_ONES)


def test_tape_text_round_trip():
    tape = make_full_tape(2)
    text = format_tape(tape)
    parsed = parse_tape(text)
    assert format_tape(parsed) == text
    assert [type(i) for i in parsed.instructions] == [type(i) for i in tape.instructions]
    assert tape_bijection(parsed).table == tape_bijection(tape).table


def test_tape_text_chain_example():
    text = "reg x 4\nreg y 4\ny += x\ny <<~ (0,1,3)()\n"
    tape = parse_tape(text)
    assert calculate(tape, {"x": 4, "y": 7}) == {"x": 4, "y": 1}
    assert format_tape(tape) == text


def test_tape_parse_errors_carry_line_numbers():
    with pytest.raises(TapeParseError) as err:
        parse_tape("reg x 4\nx -= 3\n")
    assert err.value.lineno == 2
    with pytest.raises(TapeParseError) as err:
        parse_tape("reg x 4\ny += x\n")
    assert err.value.lineno == 2
    with pytest.raises(TapeParseError) as err:
        parse_tape("reg x 4\nx <<~ (0,1)()\n")  # singular shift
    assert err.value.lineno == 2


def test_emit_requires_sealed_tape():
    tape = ProgramTape()
    tape.register("x", 2)
    with pytest.raises(TapeError):
        emit_oracle_circuit(tape, {"x": 0})
    with pytest.raises(TapeError):
        calculate(tape, {"x": 0})


def test_target_validation():
    tape = chain_tape(2)
    with pytest.raises(TapeError):
        emit_oracle_circuit(tape, {"x": 1})  # y missing
    with pytest.raises(TapeError):
        emit_oracle_circuit(tape, {"x": 4, "y": 0})  # too wide
