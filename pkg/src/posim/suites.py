"""Deterministic verification suites cross-checking circuits against the
dense brute-force operators; runnable from the command line."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import gates
from .algo import (
    BijectionTable,
    MINUS_STATE,
    MatchConvention,
    PLUS_STATE,
    ZERO_STATE,
    check_bijective,
    check_bit_balance,
    circuit_data_unitary,
    dense_parallel_iteration,
    dense_recip_transform,
    dense_sequential_iteration,
    dense_sequential_search,
    hadamard_layer,
    max_deviation,
    phase_aligned_deviation,
    run_parallel_iteration,
    verify_chain_rule,
    walsh_sign_matrix,
)
from .circuit import Barrier, WordRef
from .frame import (
    emit_oracle_circuit,
    emit_recip_circuit,
    partial_oracle_iteration,
    plan_layout,
    tape_bijection,
)
from .gf2 import GF2Matrix, ShiftType, SingularMatrixError, invert, is_invertible, matrix_of
from .programs import chain_tape
from .sim import Statevector, dense_unitary


@dataclass
class CheckResult:
    name: str
    passed: bool
    deviation: float | None = None
    detail: str = ""

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        dev = "" if self.deviation is None else f"  max dev {self.deviation:.3e}"
        extra = f"  ({self.detail})" if self.detail else ""
        return f"[{tag}] {self.name}{dev}{extra}"


def _result(name, passed, deviation=None, detail=""):
    return CheckResult(name, bool(passed), deviation, detail)


# ---------------------------------------------------------------------------
# random generators shared by suites and tests


def random_shift_type(rng: np.random.Generator, width: int,
                      rotations_only: bool = False) -> ShiftType:
    n_rot = int(rng.integers(1, 6))
    rots = tuple(int(a) for a in rng.integers(-2 * width, 2 * width + 1, n_rot))
    shrs: tuple[int, ...] = ()
    # width 1 admits no windowed shifts at all
    if not rotations_only and width > 1 and rng.integers(0, 2):
        n_shr = int(rng.integers(1, 3))
        picks = []
        while len(picks) < n_shr:
            c = int(rng.integers(-width + 1, width))
            if c != 0:
                picks.append(c)
        shrs = tuple(picks)
    return ShiftType(width, rots, shrs)


def random_invertible_shift_type(rng: np.random.Generator, width: int) -> ShiftType:
    while True:
        mu = random_shift_type(rng, width)
        if is_invertible(mu):
            return mu


def _word(name: str, start: int, width: int) -> WordRef:
    return WordRef(name, tuple(range(start, start + width)))


def maj_completion_table() -> BijectionTable:
    def fn(x):
        a, b, c = x & 1, (x >> 1) & 1, (x >> 2) & 1
        f0 = (a & b) ^ (b & c) ^ (c & a)
        return f0 | (a ^ b) << 1 | (a ^ c) << 2

    return BijectionTable.from_function(3, fn)


def ch_completion_table() -> BijectionTable:
    def fn(x):
        a, b, c = x & 1, (x >> 1) & 1, (x >> 2) & 1
        f2 = (a & b) ^ ((1 - a) & c)
        return a | (b ^ c) << 1 | f2 << 2

    return BijectionTable.from_function(3, fn)


def sum_gate_table() -> BijectionTable:
    # wires (carry, a, b) = bits (0, 1, 2); b leaves carrying a^b^carry
    def fn(x):
        c, a, b = x & 1, (x >> 1) & 1, (x >> 2) & 1
        return c | a << 1 | (a ^ b ^ c) << 2

    return BijectionTable.from_function(3, fn)


def adder_bijection(width: int) -> BijectionTable:
    mask = (1 << width) - 1

    def fn(x):
        x1 = x & mask
        x2 = (x >> width) & mask
        return x1 | (((x1 + x2) & mask) << width)

    return BijectionTable.from_function(2 * width, fn)


def shift_bijection(mu: ShiftType) -> BijectionTable:
    return BijectionTable.from_function(mu.width, mu.apply)


def const_add_bijection(width: int, value: int) -> BijectionTable:
    mask = (1 << width) - 1
    return BijectionTable.from_function(width, lambda x: (x + value) & mask)


# ---------------------------------------------------------------------------
# gf2 suite


def _rotl(x: int, a: int, w: int) -> int:
    a %= w
    mask = (1 << w) - 1
    return ((x << a) | (x >> (w - a))) & mask


def suite_gf2(seed: int = 0) -> list[CheckResult]:
    rng = np.random.default_rng(seed)
    results = []

    table = invert(matrix_of(ShiftType(4, (0, -1), (-3,)))).columns()
    results.append(_result(
        "gf2/inverse-table", table == (7, 9, 11, 15),
        detail=f"columns {table}, expected (7, 9, 11, 15)"))

    ok = True
    count = 0
    width_cycle = list(range(2, 9))
    while count < 1000:
        width = width_cycle[count % len(width_cycle)]
        mu = random_invertible_shift_type(rng, width)
        m = matrix_of(mu)
        t = invert(m)
        if t @ m != GF2Matrix.identity(width) or m @ t != GF2Matrix.identity(width):
            ok = False
            break
        count += 1
    results.append(_result("gf2/inverse-roundtrip-matrix", ok,
                           detail=f"{count} random invertible types, widths 2-8"))

    ok = True
    for width in range(1, 7):
        for _ in range(4):
            mu = random_shift_type(rng, width)
            for x in range(1 << width):
                for y in range(1 << width):
                    if mu.apply(x ^ y) != mu.apply(x) ^ mu.apply(y):
                        ok = False
    results.append(_result("gf2/linearity", ok, detail="exhaustive w <= 6"))

    ok = True
    for width in range(1, 7):
        for a in range(-width, width + 1):
            mu = ShiftType(width, (-a,))
            for x in range(1 << width):
                if mu.apply(x) != _rotl(x, a, width):
                    ok = False
    results.append(_result("gf2/sign-interchange", ok,
                           detail="ROTR^-a == ROTL^a, exhaustive w <= 6"))

    ok = True
    for width in range(1, 7):
        for _ in range(8):
            mu = random_invertible_shift_type(rng, width)
            comp = mu.complement()
            if matrix_of(comp) != matrix_of(mu).transpose():
                ok = False
            t = invert(matrix_of(comp))
            for x in range(1 << width):
                if t.mul_vec(comp.apply(x)) != x:
                    ok = False
    results.append(_result("gf2/complement-inverse-roundtrip", ok,
                           detail="T . sigma_complement(x) == x, exhaustive w <= 6"))

    # Even rotation counts are always singular. Odd counts guarantee
    # invertibility only on power-of-two widths, where X^w - 1 degenerates to
    # (X - 1)^w over GF(2); w=3 with rotations (0,1,2) is the odd counterexample.
    ok = True
    checked = 0
    while checked < 1000:
        width = width_cycle[checked % len(width_cycle)]
        mu = random_shift_type(rng, width, rotations_only=True)
        odd = len(mu.rotr_amounts) % 2 == 1
        inv = is_invertible(mu)
        if not odd and inv:
            ok = False
        if odd and width in (2, 4, 8) and not inv:
            ok = False
        checked += 1
    if is_invertible(ShiftType(3, (0, 1, 2))):
        ok = False
    results.append(_result("gf2/rotation-parity-criterion", ok,
                           detail="1000 rotation-only types"))
    return results


# ---------------------------------------------------------------------------
# gates suite


def _simulate_basis(circuit, num_qubits: int, index: int) -> Statevector:
    state = Statevector(num_qubits)
    state.set_basis_state(index)
    return state.apply_circuit(circuit)


def _basis_output(circuit, num_qubits: int, index: int) -> tuple[int, float]:
    state = _simulate_basis(circuit, num_qubits, index)
    out = int(np.argmax(np.abs(state.amps)))
    return out, float(np.abs(state.amps[out]) ** 2)


def _truth_table_check(circuit, num_qubits: int, expected) -> bool:
    for x in range(1 << num_qubits):
        out, prob = _basis_output(circuit, num_qubits, x)
        if out != expected(x) or prob < 1.0 - 1e-12:
            return False
    return True


def _analytic_recip_maj() -> np.ndarray:
    out = np.zeros((8, 8), dtype=np.complex128)
    for k in range(8):
        ka, kb, kc = k & 1, (k >> 1) & 1, (k >> 2) & 1
        p = ka ^ kb ^ kc
        for kap in range(8):
            k0, k1, k2 = kap & 1, (kap >> 1) & 1, (kap >> 2) & 1
            if k0 != p:
                continue
            val = (1 if k1 == kb else 0) + \
                  ((-1) ** (kc ^ k2) if k1 == (p ^ kb) else 0)
            out[kap, k] = val / 2.0
    return out


def _analytic_recip_ch() -> np.ndarray:
    out = np.zeros((8, 8), dtype=np.complex128)
    for k in range(8):
        ka, kb, kc = k & 1, (k >> 1) & 1, (k >> 2) & 1
        p = kb ^ kc
        for kap in range(8):
            k0, k1, k2 = kap & 1, (kap >> 1) & 1, (kap >> 2) & 1
            if k2 != p:
                continue
            val = (1 if k0 == ka else 0) + \
                  ((-1) ** (kb ^ k1) if k0 == (p ^ ka) else 0)
            out[kap, k] = val / 2.0
    return out


def _analytic_recip_sum() -> np.ndarray:
    out = np.zeros((8, 8), dtype=np.complex128)
    for kap in range(8):
        k0, k1, k2 = kap & 1, (kap >> 1) & 1, (kap >> 2) & 1
        ka, kb, kc = k1 ^ k2, k2, k0 ^ k2
        out[kap, kc | ka << 1 | kb << 2] = 1.0
    return out


def suite_gates(seed: int = 0) -> list[CheckResult]:
    rng = np.random.default_rng(seed)
    results = []

    ok = True
    for width in (1, 2, 4):
        a, b, c = _word("a", 0, width), _word("b", width, width), _word("c", 2 * width, width)
        mask = (1 << width) - 1

        def maj_expected(x):
            av, bv, cv = x & mask, (x >> width) & mask, (x >> 2 * width) & mask
            f0 = (av & bv) ^ (bv & cv) ^ (cv & av)
            return f0 | (av ^ bv) << width | (av ^ cv) << (2 * width)

        def ch_expected(x):
            av, bv, cv = x & mask, (x >> width) & mask, (x >> 2 * width) & mask
            f2 = ((av & bv) ^ (~av & cv)) & mask
            return av | (bv ^ cv) << width | f2 << (2 * width)

        ok &= _truth_table_check(gates.maj_gate(a, b, c), 3 * width, maj_expected)
        ok &= _truth_table_check(gates.ch_gate(a, b, c), 3 * width, ch_expected)
    results.append(_result("gates/maj-ch-truth-tables", ok, detail="w in {1,2,4}"))

    ok = True
    for width in (1, 2, 3, 4):
        x1, x2 = _word("x1", 0, width), _word("x2", width, width)
        carry = 2 * width
        mask = (1 << width) - 1
        adder = gates.adder_gate(x1, x2, carry)

        def add_expected(x):
            p, q = x & mask, (x >> width) & mask
            cbit = (x >> (2 * width)) & 1
            if cbit:  # only defined for carry in |0>
                return x
            return p | (((p + q) & mask) << width)

        for x in range(1 << (2 * width)):
            out, prob = _basis_output(adder, 2 * width + 1, x)
            if out != add_expected(x) or prob < 1.0 - 1e-12:
                ok = False
    results.append(_result("gates/adder-truth-tables", ok,
                           detail="w <= 4, carry restored to |0>"))

    ok = True
    width = 4
    x = _word("x", 0, width)
    scratch = _word("s", width, width)
    carry = 2 * width
    for value in range(1 << width):
        circ = gates.const_adder_gate(x, value, scratch, carry)
        for v in range(1 << width):
            out, prob = _basis_output(circ, 2 * width + 1, v)
            if out != ((v + value) & 15) or prob < 1.0 - 1e-12:
                ok = False
    results.append(_result("gates/const-adder-truth-tables", ok, detail="w=4, all constants"))

    ok = True
    for mu in (ShiftType(4, (0, 1), (3,)), ShiftType(4, (0, 1, 3)), ShiftType(4, (0,))):
        circ = gates.shifter_inline_gate(mu, x, scratch)
        for v in range(16):
            out, prob = _basis_output(circ, 8, v)
            if out != mu.apply(v) or prob < 1.0 - 1e-12:
                ok = False
    results.append(_result("gates/shifter-truth-tables", ok, detail="w=4"))

    anc_minus = {3: MINUS_STATE}
    recip_maj = gates.recip_maj_gate(0, 1, 2, 3)
    found = circuit_data_unitary(recip_maj, (0, 1, 2), anc_minus)
    dev_dense = phase_aligned_deviation(found, dense_recip_transform(maj_completion_table()))
    dev_analytic = max_deviation(found, _analytic_recip_maj())
    results.append(_result("gates/recip-maj-dense", dev_dense <= 1e-9 and dev_analytic <= 1e-9,
                           max(dev_dense, dev_analytic)))

    recip_ch = gates.recip_ch_gate(0, 1, 2, 3)
    found = circuit_data_unitary(recip_ch, (0, 1, 2), anc_minus)
    dev_dense = phase_aligned_deviation(found, dense_recip_transform(ch_completion_table()))
    dev_analytic = max_deviation(found, _analytic_recip_ch())
    results.append(_result("gates/recip-ch-dense", dev_dense <= 1e-9 and dev_analytic <= 1e-9,
                           max(dev_dense, dev_analytic)))

    found = dense_unitary(gates.recip_sum_gate(0, 1, 2))
    dev_dense = max_deviation(found, dense_recip_transform(sum_gate_table()))
    dev_analytic = max_deviation(found, _analytic_recip_sum())
    results.append(_result("gates/recip-sum-dense", dev_dense <= 1e-12 and dev_analytic <= 1e-12,
                           max(dev_dense, dev_analytic)))

    worst = 0.0
    for width in (2, 3):
        k1, k2 = _word("k1", 0, width), _word("k2", width, width)
        carry, anc = 2 * width, 2 * width + 1
        circ = gates.recip_adder_gate(k1, k2, carry, anc)
        found = circuit_data_unitary(circ, tuple(range(2 * width)),
                                     {carry: PLUS_STATE, anc: MINUS_STATE})
        reference = dense_recip_transform(adder_bijection(width))
        worst = max(worst, phase_aligned_deviation(found, reference))
        direct_data = circuit_data_unitary(
            gates.adder_gate(k1, k2, carry, num_qubits=2 * width + 2),
            tuple(range(2 * width)), {carry: ZERO_STATE, anc: ZERO_STATE})
        h = walsh_sign_matrix(2 * width) / np.sqrt(1 << (2 * width))
        worst = max(worst, phase_aligned_deviation(found, h @ direct_data @ h))
    results.append(_result("gates/recip-adder-dense", worst <= 1e-9, worst, "w in {2,3}"))

    worst = 0.0
    shifter_cases = [ShiftType(4, (0, 1), (3,)), ShiftType(2, (1,)),
                     ShiftType(3, (2,)), ShiftType(3, (0, 1), (1,))]
    for mu in shifter_cases:
        if not is_invertible(mu):
            raise AssertionError(f"suite bug: {mu} not invertible")
        w = mu.width
        k, s = _word("k", 0, w), _word("s", w, w)
        circ = gates.recip_shifter_gate(mu, k, s)
        found = circuit_data_unitary(circ, tuple(range(w)),
                                     {q: ZERO_STATE for q in s})
        worst = max(worst, phase_aligned_deviation(
            found, dense_recip_transform(shift_bijection(mu))))
        direct_data = circuit_data_unitary(gates.shifter_inline_gate(mu, k, s),
                                           tuple(range(w)), {q: ZERO_STATE for q in s})
        h = walsh_sign_matrix(w) / np.sqrt(1 << w)
        worst = max(worst, phase_aligned_deviation(found, h @ direct_data @ h))
    results.append(_result("gates/recip-shifter-dense", worst <= 1e-10, worst))

    # stage-1 fan-out of the reciprocal shifter follows the inverse-matrix
    # columns of the complement type
    mu = ShiftType(4, (0, 1), (3,))
    circ = gates.recip_shifter_gate(mu, _word("k", 0, 4), _word("s", 4, 4))
    stage1 = []
    for op in circ.ops:
        if isinstance(op, Barrier):
            break
        stage1.append((op.controls[0], op.targets[0]))
    cols = invert(matrix_of(mu.complement())).columns()
    expected_stage1 = [(j, 4 + i) for j in range(4) for i in range(4)
                       if (cols[j] >> i) & 1]
    results.append(_result("gates/recip-shifter-fanout-pattern",
                           stage1 == expected_stage1,
                           detail=f"columns {cols}, expected (7, 9, 11, 15)"))

    worst = 0.0
    width = 4
    k, s = _word("k", 0, width), _word("s", width, width)
    carry = 2 * width
    for value in range(1 << width):
        circ = gates.recip_const_adder_gate(k, value, s, carry)
        found = circuit_data_unitary(circ, tuple(range(width)),
                                     {**{q: ZERO_STATE for q in s}, carry: ZERO_STATE})
        worst = max(worst, phase_aligned_deviation(
            found, dense_recip_transform(const_add_bijection(width, value))))
    results.append(_result("gates/recip-const-adder-dense", worst <= 1e-10, worst,
                           "w=4, all constants"))

    # ancilla restoration on random input states, w=4
    width = 4
    k1, k2 = _word("k1", 0, width), _word("k2", width, width)
    carry, anc = 2 * width, 2 * width + 1
    circ = gates.recip_adder_gate(k1, k2, carry, anc)
    worst = 0.0
    for _ in range(5):
        data = rng.normal(size=1 << (2 * width)) + 1j * rng.normal(size=1 << (2 * width))
        data /= np.linalg.norm(data)
        full = np.kron(MINUS_STATE, np.kron(PLUS_STATE, data)).astype(np.complex128)
        state = Statevector(2 * width + 2)
        state.amps[:] = full
        state.apply_circuit(circ)
        tensor = state.amps.reshape((2,) * (2 * width + 2))
        for q, vec in ((carry, PLUS_STATE), (anc, MINUS_STATE)):
            axis = (2 * width + 2) - 1 - q
            kept = np.tensordot(vec.conj(), tensor, axes=([0], [axis]))
            worst = max(worst, abs(1.0 - float(np.sum(np.abs(kept) ** 2))))
    results.append(_result("gates/recip-adder-ancilla-restoration", worst <= 1e-10, worst))

    maj_t, ch_t = maj_completion_table(), ch_completion_table()
    ok = (check_bijective(maj_t.table) and check_bit_balance(maj_t.table)
          and check_bijective(ch_t.table) and check_bit_balance(ch_t.table))
    results.append(_result("gates/completions-bijective-balanced", ok))
    return results


# ---------------------------------------------------------------------------
# chain rule suite


def suite_chain_rule(seed: int = 0) -> list[CheckResult]:
    rng = np.random.default_rng(seed)
    results = []

    f = BijectionTable.random(5, rng)
    dev = verify_chain_rule(f, BijectionTable.identity(5))
    results.append(_result("chain-rule/identity-inner", dev <= 1e-12, dev))

    dev = verify_chain_rule(maj_completion_table(), ch_completion_table())
    results.append(_result("chain-rule/maj-after-ch", dev <= 1e-10, dev))

    worst = 0.0
    for _ in range(100):
        worst = max(worst, verify_chain_rule(BijectionTable.random(5, rng),
                                             BijectionTable.random(5, rng)))
    results.append(_result("chain-rule/random-pairs", worst <= 1e-9, worst,
                           "100 pairs, n=5"))

    # the emitted reciprocal circuit of a composed program IS the chain rule
    # realized gate by gate
    tape = chain_tape(width=2)
    recip, _ = emit_recip_circuit(tape)
    index = tuple(range(4))
    anc = {q: ZERO_STATE for q in range(4, recip.num_qubits)}
    found = circuit_data_unitary(recip, index, anc)
    dev = phase_aligned_deviation(found, dense_recip_transform(tape_bijection(tape)))
    results.append(_result("chain-rule/circuit-chain-w2", dev <= 1e-9, dev))
    return results


# ---------------------------------------------------------------------------
# conventions suite


def _tv_distance(p: dict, q: dict) -> float:
    keys = set(p) | set(q)
    return 0.5 * sum(abs(p.get(k, 0.0) - q.get(k, 0.0)) for k in keys)


def _run_pipeline_with_recip_targets(tape, targets) -> dict:
    """Parallel iteration with the target layer kept on both sides."""
    layout = plan_layout(tape)
    oracle, _ = emit_oracle_circuit(tape, targets)
    recip, _ = emit_recip_circuit(tape, targets)
    state = Statevector(layout.num_qubits)
    state.apply_circuit(hadamard_layer(layout.num_qubits, layout.index_qubits))
    run_parallel_iteration(state, oracle, recip, layout.index_qubits)
    groups = {ref.name: ref.indices for ref in layout.index_refs}
    return state.register_distribution(groups)


def suite_conventions(seed: int = 0) -> list[CheckResult]:
    rng = np.random.default_rng(seed)
    results = []

    ok = True
    worst = 1.0
    for n in (2, 3, 4, 5):
        for _ in range(5):
            f = BijectionTable.random(n, rng)
            vec = dense_parallel_iteration(f, MatchConvention.ALL_ZEROS)
            p = abs(vec[f.inverse()(0)]) ** 2
            worst = min(worst, p)
            if p < 1.0 - 1e-9:
                ok = False
    results.append(_result("conventions/dense-all-zeros", ok, 1.0 - worst,
                           "random bijections n <= 5"))

    ok = True
    worst = 1.0
    for n in (2, 3, 4, 5):
        for _ in range(5):
            f = BijectionTable.random(n, rng)
            vec = dense_parallel_iteration(f, MatchConvention.ALL_ONES)
            p = abs(vec[f.inverse()(f.size - 1)]) ** 2
            worst = min(worst, p)
            if p < 0.999:
                ok = False
    results.append(_result("conventions/dense-all-ones", ok, 1.0 - worst,
                           "returns f^-1(1...1)"))

    # all-ones convention at the circuit level: searching g(x) = t by
    # pointing the oracle at the complement of t and flipping the S layer
    tape = chain_tape(width=2)
    bij = tape_bijection(tape)
    ok = True
    for _ in range(8):
        target = int(rng.integers(0, 16))
        expect = bij.inverse()(target)
        flipped = {"x": (~target & 3), "y": (~target >> 2) & 3}
        result = partial_oracle_iteration(tape, flipped,
                                          convention=MatchConvention.ALL_ONES)
        best, prob = result.solutions()[0]
        got = best[0] | best[1] << 2
        if got != expect or prob < 0.999:
            ok = False
    results.append(_result("conventions/circuit-ones-chain-w2", ok))

    worst = 0.0
    for _ in range(50):
        target = int(rng.integers(0, 16))
        targets = {"x": target & 3, "y": (target >> 2) & 3}
        direct_only = partial_oracle_iteration(tape, targets).distribution
        both_sides = _run_pipeline_with_recip_targets(tape, targets)
        worst = max(worst, _tv_distance(direct_only, both_sides))
    results.append(_result("conventions/target-independence", worst <= 1e-9, worst,
                           "50 random targets, w=2 chain"))
    return results


# ---------------------------------------------------------------------------
# sequential suite


def suite_sequential(seed: int = 0) -> list[CheckResult]:
    rng = np.random.default_rng(seed)
    results = []

    ok = True
    worst = 0.0
    for n in (2, 3, 4, 5):
        for _ in range(5):
            f = BijectionTable.random(n, rng)
            seq = dense_sequential_search(f)
            par = dense_parallel_iteration(f)
            overlap = abs(np.vdot(seq, par))
            worst = max(worst, 1.0 - overlap)
            if overlap < 1.0 - 1e-9:
                ok = False
    results.append(_result("sequential/dense-seq-vs-parallel", ok, worst,
                           "overlap up to global phase, n <= 5"))

    ok = True
    for n in (3, 4):
        f = BijectionTable.random(n, rng)
        vec = None
        for ell in range(n):
            vec = dense_sequential_iteration(f, ell, vec)
            support = {x for x in range(f.size) if abs(vec[x]) > 1e-9}
            mask = (1 << (ell + 1)) - 1
            expected = {x for x in range(f.size) if (f(x) & mask) == 0}
            if support != expected or len(support) != 1 << (n - ell - 1):
                ok = False
    results.append(_result("sequential/support-halving", ok,
                           detail="support after pass ell is {x : f(x) bits 0..ell zero}"))

    ok = True
    for table in (maj_completion_table(), ch_completion_table(), sum_gate_table()):
        vec = dense_sequential_iteration(table, 0)
        support = {x for x in range(8) if abs(vec[x]) > 1e-9}
        if len(support) != 4:
            ok = False
    results.append(_result("sequential/library-3bit-halving", ok))

    tape = chain_tape(width=2)
    bij = tape_bijection(tape)
    ok = True
    for _ in range(4):
        target = int(rng.integers(0, 16))
        targets = {"x": target & 3, "y": (target >> 2) & 3}
        result = partial_oracle_iteration(tape, targets, mode="sequential")
        best, prob = result.solutions()[0]
        got = best[0] | best[1] << 2
        if got != bij.inverse()(target) or prob < 1.0 - 1e-9:
            ok = False
    results.append(_result("sequential/circuit-seq-chain-w2", ok))

    # parallelized output phase relative to the solution state is pi*n/4
    ok = True
    worst = 0.0
    for n in (2, 3, 4, 5):
        f = BijectionTable.random(n, rng)
        vec = dense_parallel_iteration(f)
        amp = vec[f.inverse()(0)]
        delta = abs(np.angle(amp * np.exp(-1j * np.pi * n / 4.0)))
        worst = max(worst, delta)
        if delta > 1e-6:
            ok = False
    results.append(_result("sequential/parallel-phase", ok, worst,
                           "arg of solution amplitude vs pi*n/4"))
    return results


SUITES = {
    "gf2": suite_gf2,
    "gates": suite_gates,
    "chain-rule": suite_chain_rule,
    "conventions": suite_conventions,
    "sequential": suite_sequential,
}


def run_suite(name: str, seed: int = 0) -> list[CheckResult]:
    try:
        fn = SUITES[name]
    except KeyError:
        raise ValueError(f"unknown suite {name!r}; choose from {sorted(SUITES)}") from None
    return fn(seed)
