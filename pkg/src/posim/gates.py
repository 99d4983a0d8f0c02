"""Circuit builders for the elementary in-place oracle operations and their
reciprocal-space counterparts.

Direct builders compute classical functions on basis states with X/CNOT/MCX
and SWAP only. Each reciprocal builder implements the reciprocal transform of
its direct partner: restricted to the data wires, with the phase ancilla in
|-> and the reciprocal carry in |+>, its unitary equals the Hadamard
conjugation H U H of the direct unitary.
"""

from __future__ import annotations

from .circuit import Circuit, CircuitBuilder, WordRef, adjoint
from .gf2 import GF2Matrix, ShiftType, invert, matrix_of


def _wire_ref(name: str, wire: int) -> WordRef:
    return WordRef(name, (wire,))


def _natural_size(num_qubits, *wires: int) -> int:
    need = max(wires) + 1
    if num_qubits is None:
        return need
    if num_qubits < need:
        raise ValueError(f"num_qubits={num_qubits} too small for wires up to {need - 1}")
    return num_qubits


def _check_widths(*refs: WordRef) -> int:
    widths = {r.width for r in refs}
    if len(widths) != 1:
        raise ValueError(f"width mismatch: {[f'{r.name}:{r.width}' for r in refs]}")
    return widths.pop()


def maj_gate(a: WordRef, b: WordRef, c: WordRef, *, num_qubits: int | None = None) -> Circuit:
    """Bitwise majority completion: wires (a, b, c) leave carrying
    (Maj(a,b,c), a^b, a^c)."""
    w = _check_widths(a, b, c)
    builder = CircuitBuilder(_natural_size(num_qubits, *a, *b, *c))
    for ref in (a, b, c):
        builder.add_ref(ref, "index")
    for j in range(w):
        builder.x(b[j], [a[j]])
        builder.x(c[j], [a[j]])
        builder.x(a[j], [b[j], c[j]])
    return builder.build()


def ch_gate(a: WordRef, b: WordRef, c: WordRef, *, num_qubits: int | None = None) -> Circuit:
    """Bitwise choose completion: wires (a, b, c) leave carrying
    (a, b^c, Ch(a,b,c))."""
    w = _check_widths(a, b, c)
    builder = CircuitBuilder(_natural_size(num_qubits, *a, *b, *c))
    for ref in (a, b, c):
        builder.add_ref(ref, "index")
    for j in range(w):
        builder.x(b[j], [c[j]])
        builder.x(c[j], [a[j], b[j]])
    return builder.build()


def sum_gate(carry: int, a: int, b: int, *, num_qubits: int | None = None) -> Circuit:
    """Single-bit sum: wire b leaves carrying a ^ b ^ carry."""
    builder = CircuitBuilder(_natural_size(num_qubits, carry, a, b))
    builder.add_ref(_wire_ref("carry", carry), "carry")
    builder.add_ref(_wire_ref("a", a), "index")
    builder.add_ref(_wire_ref("b", b), "index")
    builder.x(b, [a])
    builder.x(b, [carry])
    return builder.build()


def carry_gate(carry: int, x1: int, x2: int, *, num_qubits: int | None = None) -> Circuit:
    """Majority wiring with the carry on the output wire: carry leaves as
    Maj(carry, x1, x2); x1 and x2 are left unclean until uncomputed."""
    builder = CircuitBuilder(_natural_size(num_qubits, carry, x1, x2))
    builder.add_ref(_wire_ref("carry", carry), "carry")
    builder.add_ref(_wire_ref("x1", x1), "index")
    builder.add_ref(_wire_ref("x2", x2), "index")
    builder.x(x1, [carry])
    builder.x(x2, [carry])
    builder.x(carry, [x1, x2])
    return builder.build()


def _carry_ops(builder: CircuitBuilder, carry: int, x1: int, x2: int) -> None:
    builder.x(x1, [carry])
    builder.x(x2, [carry])
    builder.x(carry, [x1, x2])


def _carry_ops_adjoint(builder: CircuitBuilder, carry: int, x1: int, x2: int) -> None:
    builder.x(carry, [x1, x2])
    builder.x(x2, [carry])
    builder.x(x1, [carry])


def adder_gate(x1: WordRef, x2: WordRef, carry: int, *,
               num_qubits: int | None = None) -> Circuit:
    """In-place modular adder: x2 := (x1 + x2) mod 2^w, x1 unchanged.

    The carry wire must enter |0> and is restored. Gate order for width w:
    C(0)..C(w-2), S(w-1), then C^(j), S(j) for j = w-2 down to 0.
    """
    w = _check_widths(x1, x2)
    builder = CircuitBuilder(_natural_size(num_qubits, *x1, *x2, carry))
    builder.add_ref(x1, "index")
    builder.add_ref(x2, "index")
    builder.add_ref(_wire_ref("carry", carry), "carry")
    for j in range(w - 1):
        _carry_ops(builder, carry, x1[j], x2[j])
    builder.x(x2[w - 1], [x1[w - 1]])
    builder.x(x2[w - 1], [carry])
    for j in range(w - 2, -1, -1):
        _carry_ops_adjoint(builder, carry, x1[j], x2[j])
        builder.x(x2[j], [x1[j]])
        builder.x(x2[j], [carry])
    return builder.build()


def const_adder_gate(x: WordRef, value: int, scratch: WordRef, carry: int, *,
                     num_qubits: int | None = None) -> Circuit:
    """x := (x + value) mod 2^w via X-encoding value into |0> scratch."""
    w = _check_widths(x, scratch)
    if not 0 <= value < (1 << w):
        raise ValueError(f"constant {value} does not fit in {w} bits")
    builder = CircuitBuilder(_natural_size(num_qubits, *x, *scratch, carry))
    builder.add_ref(x, "index")
    builder.add_ref(scratch, "scratch")
    builder.add_ref(_wire_ref("carry", carry), "carry")
    encode = [j for j in range(w) if (value >> j) & 1]
    for j in encode:
        builder.x(scratch[j])
    builder.extend(adder_gate(scratch, x, carry))
    for j in encode:
        builder.x(scratch[j])
    return builder.build()


def _fanout_stage(builder: CircuitBuilder, matrix: GF2Matrix,
                  sources: WordRef, targets: WordRef) -> None:
    # One CNOT per set bit: column j of the matrix lists the targets fed by
    # source wire j.
    for j in range(matrix.width):
        column = matrix.column(j)
        for i in range(matrix.width):
            if (column >> i) & 1:
                builder.x(targets[i], [sources[j]])


def _linear_map_circuit(builder: CircuitBuilder, forward: GF2Matrix,
                        backward: GF2Matrix, data: WordRef, scratch: WordRef) -> None:
    """Fan out scratch := forward . data, uncompute data via backward, swap."""
    _fanout_stage(builder, forward, data, scratch)
    builder.barrier()
    # backward columns feed data wires from the freshly computed scratch
    for i in range(backward.width):
        column = backward.column(i)
        for j in range(backward.width):
            if (column >> j) & 1:
                builder.x(data[j], [scratch[i]])
    builder.barrier()
    for j in range(data.width):
        builder.swap(data[j], scratch[j])


def shifter_inline_gate(mu: ShiftType, x: WordRef, scratch: WordRef, *,
                        num_qubits: int | None = None) -> Circuit:
    """x := sigma_mu(x) in place; scratch enters and leaves |0>.

    Same fan-out / uncompute / swap template as the reciprocal shifter, with
    the forward matrix of mu and its inverse. Raises SingularMatrixError for
    non-invertible mu.
    """
    w = _check_widths(x, scratch)
    if mu.width != w:
        raise ValueError(f"shift width {mu.width} != register width {w}")
    forward = matrix_of(mu)
    backward = invert(forward)
    builder = CircuitBuilder(_natural_size(num_qubits, *x, *scratch))
    builder.add_ref(x, "index")
    builder.add_ref(scratch, "scratch")
    _linear_map_circuit(builder, forward, backward, x, scratch)
    return builder.build()


def recip_shifter_gate(mu: ShiftType, k: WordRef, scratch: WordRef, *,
                       num_qubits: int | None = None) -> Circuit:
    """Reciprocal bit shifter: kappa = sigma^-1 of the complement type applied
    to k, computed by CNOT fan-out from the inverse matrix, uncompute from the
    complement's forward matrix, then swaps."""
    w = _check_widths(k, scratch)
    if mu.width != w:
        raise ValueError(f"shift width {mu.width} != register width {w}")
    comp = matrix_of(mu.complement())
    builder = CircuitBuilder(_natural_size(num_qubits, *k, *scratch))
    builder.add_ref(k, "index")
    builder.add_ref(scratch, "scratch")
    _linear_map_circuit(builder, invert(comp), comp, k, scratch)
    return builder.build()


def recip_maj_gate(ka: int, kb: int, kc: int, minus_anc: int, *,
                   num_qubits: int | None = None) -> Circuit:
    """Reciprocal majority gate; minus_anc must enter |-> and is never
    entangled afterwards. Wire ka leaves carrying kappa_0, the parity
    ka^kb^kc (the reciprocal carry when used inside the adder)."""
    builder = CircuitBuilder(_natural_size(num_qubits, ka, kb, kc, minus_anc))
    builder.add_ref(_wire_ref("ka", ka), "index")
    builder.add_ref(_wire_ref("kb", kb), "index")
    builder.add_ref(_wire_ref("kc", kc), "index")
    builder.add_ref(_wire_ref("anc", minus_anc), "phase_ancilla")
    builder.x(ka, [kb])
    builder.x(ka, [kc])
    builder.x(minus_anc, [ka, kb, kc])
    builder.h(kb, [ka])
    builder.h(kc, [ka])
    builder.x(minus_anc, [ka, kb, kc])
    builder.swap(kb, kc, [ka])
    return builder.build()


def recip_ch_gate(ka: int, kb: int, kc: int, minus_anc: int, *,
                  num_qubits: int | None = None) -> Circuit:
    """Reciprocal choose gate; kc leaves carrying the parity kb^kc."""
    builder = CircuitBuilder(_natural_size(num_qubits, ka, kb, kc, minus_anc))
    builder.add_ref(_wire_ref("ka", ka), "index")
    builder.add_ref(_wire_ref("kb", kb), "index")
    builder.add_ref(_wire_ref("kc", kc), "index")
    builder.add_ref(_wire_ref("anc", minus_anc), "phase_ancilla")
    builder.x(kc, [kb])
    builder.x(minus_anc, [ka, kb, kc])
    builder.h(ka, [kc])
    builder.h(kb, [kc])
    builder.x(minus_anc, [ka, kb, kc])
    builder.swap(ka, kb, [kc])
    return builder.build()


def recip_sum_gate(kc: int, ka: int, kb: int, *, num_qubits: int | None = None) -> Circuit:
    """Reciprocal sum gate: the exact permutation
    (kappa_0, kappa_1, kappa_2) = (kb^kc, kb^ka, kb) on wires (kc, ka, kb)."""
    builder = CircuitBuilder(_natural_size(num_qubits, kc, ka, kb))
    builder.add_ref(_wire_ref("kc", kc), "carry")
    builder.add_ref(_wire_ref("ka", ka), "index")
    builder.add_ref(_wire_ref("kb", kb), "index")
    builder.x(ka, [kb])
    builder.x(kc, [kb])
    return builder.build()


def recip_carry_gate(carry: int, k1: int, k2: int, minus_anc: int, *,
                     num_qubits: int | None = None) -> Circuit:
    """Reciprocal carry: the reciprocal majority gate with the reciprocal
    carry on the ka / kappa_0 wire."""
    return recip_maj_gate(carry, k1, k2, minus_anc, num_qubits=num_qubits)


def _recip_carry_ops(builder: CircuitBuilder, carry: int, k1: int, k2: int,
                     anc: int) -> None:
    builder.x(carry, [k1])
    builder.x(carry, [k2])
    builder.x(anc, [carry, k1, k2])
    builder.h(k1, [carry])
    builder.h(k2, [carry])
    builder.x(anc, [carry, k1, k2])
    builder.swap(k1, k2, [carry])


def _recip_carry_ops_adjoint(builder: CircuitBuilder, carry: int, k1: int, k2: int,
                             anc: int) -> None:
    builder.swap(k1, k2, [carry])
    builder.x(anc, [carry, k1, k2])
    builder.h(k2, [carry])
    builder.h(k1, [carry])
    builder.x(anc, [carry, k1, k2])
    builder.x(carry, [k2])
    builder.x(carry, [k1])


def recip_adder_gate(k1: WordRef, k2: WordRef, carry: int, minus_anc: int, *,
                     num_qubits: int | None = None) -> Circuit:
    """Reciprocal modular adder mirroring the direct adder layout, with the
    reciprocal carry and sum gates in place of C and S.

    The carry wire must enter |+> and the ancilla |->; both leave unentangled
    in those states (verified empirically by the test suite).
    """
    w = _check_widths(k1, k2)
    builder = CircuitBuilder(_natural_size(num_qubits, *k1, *k2, carry, minus_anc))
    builder.add_ref(k1, "index")
    builder.add_ref(k2, "index")
    builder.add_ref(_wire_ref("carry", carry), "carry")
    builder.add_ref(_wire_ref("anc", minus_anc), "phase_ancilla")
    for j in range(w - 1):
        _recip_carry_ops(builder, carry, k1[j], k2[j], minus_anc)
    builder.x(k1[w - 1], [k2[w - 1]])
    builder.x(carry, [k2[w - 1]])
    for j in range(w - 2, -1, -1):
        _recip_carry_ops_adjoint(builder, carry, k1[j], k2[j], minus_anc)
        builder.x(k1[j], [k2[j]])
        builder.x(carry, [k2[j]])
    return builder.build()


def recip_const_adder_gate(k: WordRef, value: int, scratch: WordRef, carry: int, *,
                           num_qubits: int | None = None) -> Circuit:
    """Reciprocal constant adder: Hadamard-sandwich the direct constant adder.

    The inner adder runs in direct space, so the carry enters |0> here, not
    |+>.
    """
    w = _check_widths(k, scratch)
    if not 0 <= value < (1 << w):
        raise ValueError(f"constant {value} does not fit in {w} bits")
    builder = CircuitBuilder(_natural_size(num_qubits, *k, *scratch, carry))
    builder.add_ref(k, "index")
    builder.add_ref(scratch, "scratch")
    builder.add_ref(_wire_ref("carry", carry), "carry")
    for j in range(w):
        builder.h(k[j])
    builder.extend(const_adder_gate(k, value, scratch, carry))
    for j in range(w):
        builder.h(k[j])
    return builder.build()


def adjoint_gate(circuit: Circuit) -> Circuit:
    """Convenience re-export; reciprocal temporaries uncompute with this."""
    return adjoint(circuit)
