"""Reversible-circuit IR: gates with arbitrary controls, register layout,
adjoint and conjugation, and a line-oriented portable text format."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence, Union

GATE_KINDS = ("x", "h", "s", "sdg", "z", "swap")
REGISTER_ROLES = ("index", "carry", "phase_ancilla", "scratch")

_INVERSE_KIND = {"s": "sdg", "sdg": "s"}

FORMAT_HEADER = "qcircuit v1"


class CircuitError(ValueError):
    """Malformed gate, register, or circuit."""


@dataclass(frozen=True)
class Gate:
    """One gate application: `kind` on `targets`, active when all `controls` are 1."""

    kind: str
    targets: tuple[int, ...]
    controls: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "targets", tuple(self.targets))
        object.__setattr__(self, "controls", tuple(self.controls))
        if self.kind not in GATE_KINDS:
            raise CircuitError(f"unknown gate kind {self.kind!r}")
        want = 2 if self.kind == "swap" else 1
        if len(self.targets) != want:
            raise CircuitError(f"{self.kind} takes {want} target(s), got {self.targets}")
        touched = self.targets + self.controls
        if len(set(touched)) != len(touched):
            raise CircuitError(f"targets/controls overlap in {self}")
        if any(q < 0 for q in touched):
            raise CircuitError(f"negative qubit index in {self}")

    @property
    def qubits(self) -> tuple[int, ...]:
        return self.targets + self.controls

    def inverse(self) -> "Gate":
        return Gate(_INVERSE_KIND.get(self.kind, self.kind), self.targets, self.controls)


@dataclass(frozen=True)
class Barrier:
    """Display-only separator; a semantic no-op."""


Op = Union[Gate, Barrier]


@dataclass(frozen=True)
class WordRef:
    """Named group of wires holding a bit word, least-significant wire first."""

    name: str
    indices: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "indices", tuple(self.indices))
        if not self.indices:
            raise CircuitError(f"register {self.name!r} has no wires")
        if any(b <= a for a, b in zip(self.indices, self.indices[1:])):
            raise CircuitError(f"register {self.name!r} indices must be ascending")

    @property
    def width(self) -> int:
        return len(self.indices)

    def __getitem__(self, j: int) -> int:
        return self.indices[j]

    def __iter__(self):
        return iter(self.indices)


@dataclass(frozen=True)
class RegisterLayout:
    """Ordered, disjoint named registers with their roles.

    Preparation discipline by role: scratch wires enter and leave circuits
    in |0>, a reciprocal carry rests in |+> while in use, and a phase
    ancilla rests in |->. The discipline is enforced by simulation tests,
    not by the IR.
    """

    entries: tuple[tuple[WordRef, str], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(self.entries))
        seen: set[int] = set()
        names: set[str] = set()
        for ref, role in self.entries:
            if role not in REGISTER_ROLES:
                raise CircuitError(f"unknown register role {role!r}")
            if ref.name in names:
                raise CircuitError(f"duplicate register name {ref.name!r}")
            names.add(ref.name)
            overlap = seen.intersection(ref.indices)
            if overlap:
                raise CircuitError(f"register {ref.name!r} reuses wires {sorted(overlap)}")
            seen.update(ref.indices)

    def names(self) -> list[str]:
        return [ref.name for ref, _ in self.entries]

    def get(self, name: str) -> WordRef:
        for ref, _ in self.entries:
            if ref.name == name:
                return ref
        raise KeyError(name)

    def role(self, name: str) -> str:
        for ref, role in self.entries:
            if ref.name == name:
                return role
        raise KeyError(name)


@dataclass(frozen=True)
class Circuit:
    """Immutable gate list over a fixed number of wires."""

    num_qubits: int
    ops: tuple[Op, ...]
    layout: RegisterLayout = field(default_factory=RegisterLayout)

    def __post_init__(self):
        object.__setattr__(self, "ops", tuple(self.ops))
        for op in self.ops:
            if isinstance(op, Gate) and any(q >= self.num_qubits for q in op.qubits):
                raise CircuitError(f"{op} exceeds {self.num_qubits} qubits")
        for ref, _ in self.layout.entries:
            if any(q >= self.num_qubits for q in ref.indices):
                raise CircuitError(f"register {ref.name!r} exceeds {self.num_qubits} qubits")

    @property
    def gates(self) -> list[Gate]:
        return [op for op in self.ops if isinstance(op, Gate)]

    def gate_counts(self) -> dict[str, int]:
        counts: dict[str, int] = {}
        for op in self.ops:
            if isinstance(op, Gate):
                counts[op.kind] = counts.get(op.kind, 0) + 1
        return counts


class CircuitBuilder:
    """Single-owner accumulator for a Circuit; finalize with build()."""

    def __init__(self, num_qubits: int):
        if num_qubits < 1:
            raise CircuitError("need at least one qubit")
        self.num_qubits = num_qubits
        self._ops: list[Op] = []
        self._entries: list[tuple[WordRef, str]] = []

    def register(self, name: str, indices: Sequence[int], role: str = "index") -> WordRef:
        ref = WordRef(name, tuple(indices))
        self.add_ref(ref, role)
        return ref

    def add_ref(self, ref: WordRef, role: str = "index") -> WordRef:
        RegisterLayout(tuple(self._entries) + ((ref, role),))  # validates
        self._entries.append((ref, role))
        return ref

    def append(self, op: Op) -> None:
        if isinstance(op, Gate) and any(q >= self.num_qubits for q in op.qubits):
            raise CircuitError(f"{op} exceeds {self.num_qubits} qubits")
        self._ops.append(op)

    def x(self, target: int, controls: Sequence[int] = ()) -> None:
        self.append(Gate("x", (target,), tuple(controls)))

    def h(self, target: int, controls: Sequence[int] = ()) -> None:
        self.append(Gate("h", (target,), tuple(controls)))

    def s(self, target: int, controls: Sequence[int] = ()) -> None:
        self.append(Gate("s", (target,), tuple(controls)))

    def sdg(self, target: int, controls: Sequence[int] = ()) -> None:
        self.append(Gate("sdg", (target,), tuple(controls)))

    def z(self, target: int, controls: Sequence[int] = ()) -> None:
        self.append(Gate("z", (target,), tuple(controls)))

    def swap(self, a: int, b: int, controls: Sequence[int] = ()) -> None:
        self.append(Gate("swap", (a, b), tuple(controls)))

    def barrier(self) -> None:
        self.append(Barrier())

    def extend(self, sub: Circuit) -> None:
        """Inline another circuit's ops; its layout is discarded."""
        if sub.num_qubits > self.num_qubits:
            raise CircuitError(
                f"cannot inline {sub.num_qubits}-qubit circuit into {self.num_qubits} qubits"
            )
        self._ops.extend(sub.ops)

    def build(self) -> Circuit:
        entries = tuple(self._entries)
        if not entries:
            entries = ((WordRef("q", tuple(range(self.num_qubits))), "index"),)
        return Circuit(self.num_qubits, tuple(self._ops), RegisterLayout(entries))


class AncillaPool:
    """Hands out ancilla wires past a fixed base; released wires are reused.

    The |0> discipline on released scratch is asserted by simulation tests
    (per-release dense checks would be unaffordable at 26 qubits).
    """

    def __init__(self, first_index: int):
        self._next = first_index
        self._free: list[int] = []

    def allocate(self, count: int) -> tuple[int, ...]:
        out = []
        while self._free and len(out) < count:
            out.append(self._free.pop())
        while len(out) < count:
            out.append(self._next)
            self._next += 1
        return tuple(sorted(out))

    def release(self, wires: Iterable[int]) -> None:
        self._free.extend(wires)

    @property
    def high_water(self) -> int:
        return self._next


def adjoint(circuit: Circuit) -> Circuit:
    """Reverse the op list and invert each gate (S <-> Sdg, others self-inverse)."""
    ops = []
    for op in reversed(circuit.ops):
        ops.append(op.inverse() if isinstance(op, Gate) else op)
    return Circuit(circuit.num_qubits, tuple(ops), circuit.layout)


def compose(*circuits: Circuit) -> Circuit:
    """Concatenate circuits in application order; layout comes from the first."""
    if not circuits:
        raise CircuitError("compose needs at least one circuit")
    n = max(c.num_qubits for c in circuits)
    ops: list[Op] = []
    for c in circuits:
        ops.extend(c.ops)
    return Circuit(n, tuple(ops), circuits[0].layout)


def conjugate(body: Circuit, inner: Circuit) -> Circuit:
    """Compute/act/uncompute: apply body, then inner, then adjoint(body)."""
    if body.num_qubits != inner.num_qubits:
        raise CircuitError(
            f"size mismatch: body has {body.num_qubits} qubits, inner {inner.num_qubits}"
        )
    if not body.ops:
        return inner
    ops = body.ops + inner.ops + adjoint(body).ops
    return Circuit(body.num_qubits, ops, body.layout)


def export_portable(circuit: Circuit) -> str:
    """Serialize to the portable text format; byte-identical across runs.

    Layout: a `qcircuit v1 qubits=N` header, one `reg <name> <role> <wires...>`
    line per register in declaration order, then one line per op. Gates are
    `kind targets... | controls...`; barriers are kept as `# barrier` comments.
    """
    lines = [f"{FORMAT_HEADER} qubits={circuit.num_qubits}"]
    for ref, role in circuit.layout.entries:
        lines.append(f"reg {ref.name} {role} " + " ".join(str(i) for i in ref.indices))
    for op in circuit.ops:
        if isinstance(op, Barrier):
            lines.append("# barrier")
        else:
            targets = " ".join(str(t) for t in op.targets)
            controls = " ".join(str(c) for c in op.controls)
            lines.append(f"{op.kind} {targets} |" + (f" {controls}" if controls else ""))
    return "\n".join(lines) + "\n"


def parse_portable(text: str) -> Circuit:
    """Parse the portable format back into a Circuit; inverse of export_portable."""
    lines = text.splitlines()
    if not lines or not lines[0].startswith(FORMAT_HEADER):
        raise CircuitError(f"missing {FORMAT_HEADER!r} header")
    header = lines[0].split()
    try:
        num_qubits = int(header[2].removeprefix("qubits="))
    except (IndexError, ValueError):
        raise CircuitError(f"bad header line: {lines[0]!r}") from None
    entries: list[tuple[WordRef, str]] = []
    ops: list[Op] = []
    for lineno, raw in enumerate(lines[1:], start=2):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            if line == "# barrier":
                ops.append(Barrier())
            continue
        fields = line.split()
        if fields[0] == "reg":
            if len(fields) < 4:
                raise CircuitError(f"line {lineno}: bad register declaration {raw!r}")
            name, role = fields[1], fields[2]
            entries.append((WordRef(name, tuple(int(i) for i in fields[3:])), role))
            continue
        if "|" not in fields:
            raise CircuitError(f"line {lineno}: gate line lacks '|' separator: {raw!r}")
        split = fields.index("|")
        try:
            targets = tuple(int(t) for t in fields[1:split])
            controls = tuple(int(c) for c in fields[split + 1:])
        except ValueError:
            raise CircuitError(f"line {lineno}: bad qubit index in {raw!r}") from None
        ops.append(Gate(fields[0], targets, controls))
    return Circuit(num_qubits, tuple(ops), RegisterLayout(tuple(entries)))
