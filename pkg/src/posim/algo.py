"""Partial-oracle search drivers and dense brute-force reference operators.

The reciprocal transform of a bijection f on n bits is the unitary with
entries R[kappa, k] = (1/2^n) sum_x (-1)^(kappa.f(x) xor x.k), where u.v is
the parity of the bitwise AND. It represents the oracle in the basis reached
by the Walsh-Hadamard transform. The dense constructors here evaluate that
defining sum directly and serve as the verification oracles for every circuit
emitted elsewhere in the package.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .circuit import Circuit, CircuitBuilder, Gate, adjoint, compose, conjugate
from .sim import DENSE_MAX_QUBITS, CapacityError, Statevector


def parity_dot(u: int, v: int) -> int:
    """Parity of the bitwise AND; the phase e^{i 2 pi u.v} equals
    (-1)^parity_dot(u, v)."""
    return (u & v).bit_count() & 1


class MatchConvention(enum.Enum):
    ALL_ZEROS = "zeros"
    ALL_ONES = "ones"

    @classmethod
    def parse(cls, text: str) -> "MatchConvention":
        for member in cls:
            if member.value == text:
                return member
        raise ValueError(f"unknown match convention {text!r}")


@dataclass(frozen=True)
class BijectionTable:
    """A permutation of {0..2^n-1} used as an n-bit in-place oracle function."""

    num_bits: int
    table: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "table", tuple(self.table))
        size = 1 << self.num_bits
        if len(self.table) != size or sorted(self.table) != list(range(size)):
            raise ValueError("table is not a permutation of 0..2^n-1")

    def __call__(self, x: int) -> int:
        return self.table[x]

    @property
    def size(self) -> int:
        return 1 << self.num_bits

    @classmethod
    def identity(cls, num_bits: int) -> "BijectionTable":
        return cls(num_bits, tuple(range(1 << num_bits)))

    @classmethod
    def from_function(cls, num_bits: int, fn: Callable[[int], int]) -> "BijectionTable":
        return cls(num_bits, tuple(fn(x) for x in range(1 << num_bits)))

    @classmethod
    def random(cls, num_bits: int, rng: np.random.Generator) -> "BijectionTable":
        return cls(num_bits, tuple(int(v) for v in rng.permutation(1 << num_bits)))

    def inverse(self) -> "BijectionTable":
        inv = [0] * self.size
        for x, y in enumerate(self.table):
            inv[y] = x
        return BijectionTable(self.num_bits, tuple(inv))

    def compose(self, inner: "BijectionTable") -> "BijectionTable":
        """self after inner: x -> self(inner(x))."""
        if inner.num_bits != self.num_bits:
            raise ValueError("size mismatch")
        return BijectionTable(self.num_bits, tuple(self.table[y] for y in inner.table))

    def xor_target(self, target: int) -> "BijectionTable":
        return BijectionTable(self.num_bits, tuple(y ^ target for y in self.table))


def check_bijective(table: Sequence[int]) -> bool:
    return sorted(table) == list(range(len(table)))


def check_bit_balance(table: Sequence[int]) -> bool:
    """Every output bit is 0 on exactly half of the inputs."""
    size = len(table)
    bits = max(size - 1, 1).bit_length()
    for j in range(bits):
        zeros = sum(1 for y in table if not (y >> j) & 1)
        if zeros != size // 2:
            return False
    return True


def _check_dense_size(n: int) -> None:
    if n > DENSE_MAX_QUBITS:
        raise CapacityError(f"dense operators capped at {DENSE_MAX_QUBITS} bits, got {n}")


def walsh_sign_matrix(n: int) -> np.ndarray:
    """The +-1 matrix W[i, j] = (-1)^parity_dot(i, j); H^(x)n = W / sqrt(2^n)."""
    _check_dense_size(n)
    idx = np.arange(1 << n, dtype=np.uint32)
    pops = np.bitwise_count(np.bitwise_and.outer(idx, idx))
    return np.where(pops & 1, -1.0, 1.0)


def dense_permutation(f: BijectionTable) -> np.ndarray:
    """Permutation matrix P with P |x> = |f(x)>."""
    _check_dense_size(f.num_bits)
    P = np.zeros((f.size, f.size), dtype=np.complex128)
    P[np.asarray(f.table), np.arange(f.size)] = 1.0
    return P


def dense_recip_transform(f: BijectionTable) -> np.ndarray:
    """Brute-force reciprocal transform from the defining sum over x."""
    _check_dense_size(f.num_bits)
    W = walsh_sign_matrix(f.num_bits)
    # entry (kappa, k) = (1/N) sum_x W[kappa, f(x)] W[x, k]
    left = W[:, np.asarray(f.table)]
    return (left @ W).astype(np.complex128) / f.size


def dense_bare_transform(f: BijectionTable) -> np.ndarray:
    """Direct-to-reciprocal operator B with B |x> = H^(x)n |f(x)>;
    satisfies R[f] = B[f] H^(x)n."""
    _check_dense_size(f.num_bits)
    W = walsh_sign_matrix(f.num_bits)
    return W[:, np.asarray(f.table)].astype(np.complex128) / np.sqrt(f.size)


def verify_chain_rule(f: BijectionTable, g: BijectionTable) -> float:
    """Max entrywise deviation of R[f o g] from R[f] R[g]."""
    if f.num_bits != g.num_bits:
        raise ValueError("size mismatch")
    composed = dense_recip_transform(f.compose(g))
    product = dense_recip_transform(f) @ dense_recip_transform(g)
    return float(np.max(np.abs(composed - product)))


def max_deviation(a: np.ndarray, b: np.ndarray) -> float:
    return float(np.max(np.abs(np.asarray(a) - np.asarray(b))))


def phase_aligned_deviation(found: np.ndarray, reference: np.ndarray) -> float:
    """Max entrywise deviation after aligning a global phase.

    The phase is read off at the reference's largest-magnitude entry; use
    max_deviation for the exact mode (permutation-valued comparisons).
    """
    found = np.asarray(found)
    reference = np.asarray(reference)
    spot = np.unravel_index(np.argmax(np.abs(reference)), reference.shape)
    if abs(found[spot]) < 1e-14:
        return float("inf")
    phase = reference[spot] / found[spot]
    phase /= abs(phase)
    return float(np.max(np.abs(found * phase - reference)))


# ---------------------------------------------------------------------------
# circuit-level iteration drivers


def _phase_layer(num_qubits: int, wires: Sequence[int], kind: str) -> Circuit:
    builder = CircuitBuilder(num_qubits)
    for q in wires:
        builder.append(Gate(kind, (q,)))
    return builder.build()


def hadamard_layer(num_qubits: int, wires: Sequence[int]) -> Circuit:
    return _phase_layer(num_qubits, wires, "h")


def build_parallel_iteration(oracle_circuit: Circuit, recip_circuit: Circuit,
                             index_qubits: Sequence[int],
                             convention: MatchConvention = MatchConvention.ALL_ZEROS,
                             ) -> Circuit:
    """One parallelized partial-oracle iteration as a single circuit.

    In application order: the direct phase block (oracle conjugating an S
    layer on the index wires), a Hadamard layer, the reciprocal phase block
    (reciprocal circuit conjugating an S layer, or S-dagger for the all-ones
    convention), and a final Hadamard layer. Applied to the uniform
    superposition it leaves e^{i pi n / 4} |f^-1(0...0)> for all-zeros
    matching.
    """
    if oracle_circuit.num_qubits != recip_circuit.num_qubits:
        raise ValueError("oracle and reciprocal circuits disagree on qubit count")
    n = oracle_circuit.num_qubits
    s_kind = "s" if convention is MatchConvention.ALL_ZEROS else "sdg"
    return compose(
        conjugate(oracle_circuit, _phase_layer(n, index_qubits, "s")),
        hadamard_layer(n, index_qubits),
        conjugate(recip_circuit, _phase_layer(n, index_qubits, s_kind)),
        hadamard_layer(n, index_qubits),
    )


def run_parallel_iteration(state: Statevector, oracle_circuit: Circuit,
                           recip_circuit: Circuit, index_qubits: Sequence[int],
                           convention: MatchConvention = MatchConvention.ALL_ZEROS,
                           ) -> Statevector:
    circuit = build_parallel_iteration(oracle_circuit, recip_circuit,
                                       index_qubits, convention)
    return state.apply_circuit(circuit)


def build_sequential_iteration(ell: int, oracle_circuit: Circuit,
                               recip_circuit: Circuit, index_qubits: Sequence[int],
                               f_wires: Sequence[int] | None = None,
                               kappa_wires: Sequence[int] | None = None) -> Circuit:
    """One sequential iteration: the S phases touch only the wire carrying
    oracle bit ell (direct side) and reciprocal bit ell (reciprocal side).

    The wire maps come from the emitters; when omitted the index wires are
    assumed to carry the output bits in order.
    """
    n = oracle_circuit.num_qubits
    f_wires = tuple(index_qubits) if f_wires is None else tuple(f_wires)
    kappa_wires = tuple(index_qubits) if kappa_wires is None else tuple(kappa_wires)
    if not 0 <= ell < len(f_wires):
        raise ValueError(f"oracle bit index {ell} out of range")
    return compose(
        conjugate(oracle_circuit, _phase_layer(n, [f_wires[ell]], "s")),
        hadamard_layer(n, index_qubits),
        conjugate(recip_circuit, _phase_layer(n, [kappa_wires[ell]], "s")),
        hadamard_layer(n, index_qubits),
    )


def run_sequential_iteration(state: Statevector, ell: int, oracle_circuit: Circuit,
                             recip_circuit: Circuit, index_qubits: Sequence[int],
                             f_wires: Sequence[int] | None = None,
                             kappa_wires: Sequence[int] | None = None) -> Statevector:
    circuit = build_sequential_iteration(ell, oracle_circuit, recip_circuit,
                                         index_qubits, f_wires, kappa_wires)
    return state.apply_circuit(circuit)


# ---------------------------------------------------------------------------
# dense iteration drivers (independent of the circuit emitters)


def _uniform(n: int) -> np.ndarray:
    size = 1 << n
    return np.full(size, 1.0 / np.sqrt(size), dtype=np.complex128)


def dense_parallel_iteration(f: BijectionTable,
                             convention: MatchConvention = MatchConvention.ALL_ZEROS,
                             state: np.ndarray | None = None) -> np.ndarray:
    """Apply one parallelized iteration with dense operators, starting from
    the uniform superposition unless a state is given."""
    n = f.num_bits
    _check_dense_size(n)
    vec = _uniform(n) if state is None else np.asarray(state, dtype=np.complex128).copy()
    x = np.arange(f.size, dtype=np.uint32)
    fx = np.asarray(f.table, dtype=np.uint32)
    i_powers = np.array([1.0, 1.0j, -1.0, -1.0j])
    vec *= i_powers[np.bitwise_count(fx) % 4]
    H = walsh_sign_matrix(n) / np.sqrt(f.size)
    R = dense_recip_transform(f)
    vec = R @ (H @ vec)
    kappa_powers = i_powers if convention is MatchConvention.ALL_ZEROS else i_powers.conj()
    vec *= kappa_powers[np.bitwise_count(x) % 4]
    vec = H @ (R.conj().T @ vec)
    return vec


def dense_sequential_iteration(f: BijectionTable, ell: int,
                               state: np.ndarray | None = None) -> np.ndarray:
    """Apply the single-bit iteration for oracle bit ell with dense operators."""
    n = f.num_bits
    _check_dense_size(n)
    if not 0 <= ell < n:
        raise ValueError(f"oracle bit index {ell} out of range")
    vec = _uniform(n) if state is None else np.asarray(state, dtype=np.complex128).copy()
    fx = np.asarray(f.table)
    x = np.arange(f.size)
    vec = vec * np.where((fx >> ell) & 1, 1j, 1.0)
    H = walsh_sign_matrix(n) / np.sqrt(f.size)
    R = dense_recip_transform(f)
    vec = R @ (H @ vec)
    vec *= np.where((x >> ell) & 1, 1j, 1.0)
    vec = H @ (R.conj().T @ vec)
    return vec


def dense_sequential_search(f: BijectionTable) -> np.ndarray:
    """Run all n sequential iterations from the uniform superposition."""
    vec = _uniform(f.num_bits)
    for ell in range(f.num_bits):
        vec = dense_sequential_iteration(f, ell, vec)
    return vec


def circuit_data_unitary(circuit: Circuit, data_qubits: Sequence[int],
                         ancilla_states: dict[int, np.ndarray] | None = None,
                         ) -> np.ndarray:
    """Unitary restricted to data wires, with each ancilla wire prepared in
    and projected back onto a fixed single-qubit state.

    Built column by column from simulations. If the circuit entangles or
    moves an ancilla the result is not unitary, which the dense checks catch.
    """
    ancilla_states = dict(ancilla_states or {})
    data = tuple(data_qubits)
    n = circuit.num_qubits
    covered = set(data) | set(ancilla_states)
    if covered != set(range(n)):
        missing = sorted(set(range(n)) - covered)
        raise ValueError(f"wires {missing} are neither data nor ancilla")
    if len(data) > DENSE_MAX_QUBITS:
        raise CapacityError("restricted unitary capped at 12 data qubits")
    dim = 1 << len(data)
    out = np.zeros((dim, dim), dtype=np.complex128)
    anc_sorted = sorted(ancilla_states)
    anc_axes = [n - 1 - q for q in anc_sorted]
    data_axes = [ax for ax in range(n) if ax not in set(anc_axes)]
    # after contraction the remaining axes are the data wires, descending
    rest = sorted(data, reverse=True)
    row_of = np.empty(dim, dtype=np.intp)
    for flat_idx in range(dim):
        row = 0
        for pos, q in enumerate(rest):
            bit = (flat_idx >> (len(rest) - 1 - pos)) & 1
            row |= bit << data.index(q)
        row_of[flat_idx] = row
    for col in range(dim):
        state = Statevector(n)
        vec = np.array([1.0 + 0.0j])
        for q in range(n - 1, -1, -1):
            if q in ancilla_states:
                factor = np.asarray(ancilla_states[q], dtype=np.complex128)
            else:
                bit = (col >> data.index(q)) & 1
                factor = np.array([1.0 - bit, bit], dtype=np.complex128)
            vec = np.kron(vec, factor)
        state.amps[:] = vec
        state.apply_circuit(circuit)
        tensor = state.amps.reshape((2,) * n).transpose(anc_axes + data_axes)
        for q in anc_sorted:
            vecq = np.asarray(ancilla_states[q], dtype=np.complex128).conj()
            tensor = np.tensordot(vecq, tensor, axes=([0], [0]))
        out[row_of, col] = tensor.reshape(-1)
    return out


MINUS_STATE = np.array([1.0, -1.0]) / np.sqrt(2.0)
PLUS_STATE = np.array([1.0, 1.0]) / np.sqrt(2.0)
ZERO_STATE = np.array([1.0, 0.0])
