"""Dense statevector simulator for the circuit IR gate set.

Qubit 0 is the least-significant bit of the basis-state index (little-endian).
Gates are applied by slicing the amplitude array as a rank-n tensor: control
wires select the all-ones sub-block, so an m-control gate only touches
2^(n-m-1) amplitude pairs and never materializes a matrix. Applications are
bitwise-deterministic for a fixed precision.
"""

from __future__ import annotations

import os
from typing import Mapping, Sequence, Union

import numpy as np

from .circuit import Barrier, Circuit, Gate

try:
    from . import _kernels
except ImportError:  # pragma: no cover - numba is optional
    _kernels = None

# Flat stride kernels when numba is present; the numpy slicing path below is
# the reference implementation and stays available for cross-checking.
KERNELS_ENABLED = _kernels is not None and not os.environ.get("POSIM_NO_NUMBA")

PRECISION_DTYPES = {"double": np.complex128, "single": np.complex64}
NORM_TOLERANCE = {"double": 1e-9, "single": 1e-4}

MAX_QUBITS = 30
DENSE_MAX_QUBITS = 12

DEFAULT_MEMORY_BUDGET = 16 * 2**30
MEMORY_BUDGET_ENV = "POSIM_MEMORY_BUDGET"

PROBABILITY_FLOOR = 1e-12  # distribution entries below this are float dust


class CapacityError(Exception):
    """State would not fit the configured memory budget."""


def memory_budget() -> int:
    """Budget in bytes; overridable through POSIM_MEMORY_BUDGET."""
    raw = os.environ.get(MEMORY_BUDGET_ENV)
    return int(raw) if raw else DEFAULT_MEMORY_BUDGET


class Statevector:
    """Dense complex amplitudes over n qubits, exclusively owned by one run."""

    def __init__(self, num_qubits: int, precision: str = "double", *,
                 budget: int | None = None):
        if precision not in PRECISION_DTYPES:
            raise ValueError(f"unknown precision {precision!r}")
        if num_qubits < 1:
            raise ValueError("need at least one qubit")
        dtype = PRECISION_DTYPES[precision]
        budget = memory_budget() if budget is None else budget
        need = (1 << num_qubits) * np.dtype(dtype).itemsize
        if need > budget:
            raise CapacityError(
                f"{num_qubits} qubits need {need} bytes of amplitudes, "
                f"budget is {budget}"
            )
        if num_qubits > MAX_QUBITS:
            raise CapacityError(f"{num_qubits} qubits exceeds the {MAX_QUBITS}-qubit cap")
        self.num_qubits = num_qubits
        self.precision = precision
        self.amps = np.zeros(1 << num_qubits, dtype=dtype)
        self.amps[0] = 1.0

    def copy(self) -> "Statevector":
        out = Statevector.__new__(Statevector)
        out.num_qubits = self.num_qubits
        out.precision = self.precision
        out.amps = self.amps.copy()
        return out

    def set_basis_state(self, index: int) -> "Statevector":
        if not 0 <= index < self.amps.size:
            raise IndexError(f"basis index {index} out of range")
        self.amps[:] = 0.0
        self.amps[index] = 1.0
        return self

    def norm(self) -> float:
        return float(np.sqrt(np.sum(np.abs(self.amps) ** 2, dtype=np.float64)))

    def apply(self, gate: Gate) -> "Statevector":
        if any(q >= self.num_qubits for q in gate.qubits):
            raise IndexError(f"{gate} out of range for {self.num_qubits} qubits")
        _apply_gate(self.amps, self.num_qubits, gate)
        return self

    def apply_circuit(self, circuit: Circuit) -> "Statevector":
        if circuit.num_qubits != self.num_qubits:
            raise ValueError(
                f"circuit has {circuit.num_qubits} qubits, state has {self.num_qubits}"
            )
        for op in circuit.ops:
            if isinstance(op, Barrier):
                continue
            _apply_gate(self.amps, self.num_qubits, op)
        return self

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amps) ** 2

    def register_distribution(
        self, qubit_groups: Union[Sequence[Sequence[int]], Mapping[str, Sequence[int]]]
    ) -> dict:
        """Marginal probability over the listed qubit groups, tracing out the rest.

        Within a group the j-th listed wire is bit j of the group value. Keys
        are ints for a single group and value tuples otherwise; entries below
        1e-12 are dropped. Probabilities sum to 1 within the norm tolerance.
        """
        if isinstance(qubit_groups, Mapping):
            groups = [tuple(v) for v in qubit_groups.values()]
        else:
            groups = [tuple(g) for g in qubit_groups]
        flat = [q for g in groups for q in g]
        if len(set(flat)) != len(flat):
            raise ValueError("qubit groups overlap")
        if any(not 0 <= q < self.num_qubits for q in flat):
            raise IndexError("qubit group index out of range")
        n = self.num_qubits
        keep = set(flat)
        probs = np.abs(self.amps) ** 2
        traced = tuple(n - 1 - q for q in range(n) if q not in keep)
        marg = probs.reshape((2,) * n).sum(axis=traced, dtype=np.float64)
        kept_qubits = sorted(keep, reverse=True)  # remaining tensor axis order
        result: dict = {}
        for midx in np.argwhere(marg > PROBABILITY_FLOOR):
            bits = {kept_qubits[i]: int(b) for i, b in enumerate(midx)}
            values = tuple(
                sum(bits[q] << j for j, q in enumerate(group)) for group in groups
            )
            key = values[0] if len(groups) == 1 else values
            result[key] = float(marg[tuple(midx)])
        return result


def new_state(num_qubits: int, precision: str = "double", *,
              budget: int | None = None) -> Statevector:
    """|0...0> over num_qubits wires, subject to the memory budget."""
    return Statevector(num_qubits, precision, budget=budget)


def dense_unitary(circuit: Circuit) -> np.ndarray:
    """2^n x 2^n matrix of the circuit, column x = circuit applied to |x>.

    Capped at 12 qubits; this is the brute-force verification path, not the
    simulation path.
    """
    n = circuit.num_qubits
    if n > DENSE_MAX_QUBITS:
        raise CapacityError(f"dense unitary capped at {DENSE_MAX_QUBITS} qubits, got {n}")
    dim = 1 << n
    # Batch all basis states: row index decomposes into qubit axes, the
    # trailing axis enumerates columns, so one pass applies the gate to every
    # column at once.
    mat = np.eye(dim, dtype=np.complex128)
    for op in circuit.ops:
        if isinstance(op, Barrier):
            continue
        _apply_gate(mat, n, op)
    return mat


def _axis(n: int, qubit: int) -> int:
    return n - 1 - qubit


def _target_slices(view: np.ndarray, axis: int):
    i0 = [slice(None)] * view.ndim
    i0[axis] = slice(0, 1)
    i1 = list(i0)
    i1[axis] = slice(1, 2)
    return view[tuple(i0)], view[tuple(i1)]


_PHASE_FACTORS = {"s": 1.0j, "sdg": -1.0j, "z": -1.0 + 0.0j}


def _low_masks(wires: Sequence[int]) -> np.ndarray:
    return np.array([(1 << q) - 1 for q in sorted(wires)], dtype=np.int64)


def _apply_gate_kernels(amps: np.ndarray, gate: Gate) -> None:
    ctrl = 0
    for c in gate.controls:
        ctrl |= 1 << c
    kind = gate.kind
    masks = _low_masks(gate.qubits)
    if kind == "x":
        _kernels.kern_x(amps, 1 << gate.targets[0], masks, ctrl)
    elif kind == "h":
        _kernels.kern_h(amps, 1 << gate.targets[0], masks, ctrl)
    elif kind == "swap":
        _kernels.kern_swap(amps, 1 << gate.targets[0], 1 << gate.targets[1], masks, ctrl)
    else:
        _kernels.kern_phase(amps, masks, ctrl | (1 << gate.targets[0]),
                            _PHASE_FACTORS[kind])


def _apply_gate(arr: np.ndarray, n: int, gate: Gate) -> None:
    """Apply one gate in place to an array whose leading axes are the qubits.

    arr is (2^n,) for states or (2^n, m) for batched columns. Control axes
    are narrowed with length-1 slices so no axis renumbering is needed.
    """
    if KERNELS_ENABLED and arr.ndim == 1:
        _apply_gate_kernels(arr, gate)
        return
    tensor = arr.reshape((2,) * n + arr.shape[1:])
    idx = [slice(None)] * tensor.ndim
    for c in gate.controls:
        idx[_axis(n, c)] = slice(1, 2)
    view = tensor[tuple(idx)]
    kind = gate.kind
    if kind == "x":
        a0, a1 = _target_slices(view, _axis(n, gate.targets[0]))
        tmp = a0.copy()
        a0[...] = a1
        a1[...] = tmp
    elif kind == "h":
        a0, a1 = _target_slices(view, _axis(n, gate.targets[0]))
        inv_sqrt2 = 1.0 / np.sqrt(2.0)
        lo = (a0 + a1) * inv_sqrt2
        hi = (a0 - a1) * inv_sqrt2
        a0[...] = lo
        a1[...] = hi
    elif kind == "s":
        _, a1 = _target_slices(view, _axis(n, gate.targets[0]))
        a1 *= 1j
    elif kind == "sdg":
        _, a1 = _target_slices(view, _axis(n, gate.targets[0]))
        a1 *= -1j
    elif kind == "z":
        _, a1 = _target_slices(view, _axis(n, gate.targets[0]))
        a1 *= -1.0
    elif kind == "swap":
        qa, qb = gate.targets
        i01 = [slice(None)] * view.ndim
        i01[_axis(n, qa)] = slice(0, 1)
        i01[_axis(n, qb)] = slice(1, 2)
        i10 = [slice(None)] * view.ndim
        i10[_axis(n, qa)] = slice(1, 2)
        i10[_axis(n, qb)] = slice(0, 1)
        a, b = view[tuple(i01)], view[tuple(i10)]
        tmp = a.copy()
        a[...] = b
        b[...] = tmp
    else:  # pragma: no cover - Gate validates kinds
        raise ValueError(f"unknown gate kind {kind!r}")
