"""Program tapes: one oracle definition drives a classical interpreter, a
direct-circuit emitter, a reciprocal-circuit emitter, and the search pipeline.

A tape lists named index registers and an ordered sequence of in-place
instructions (register add, constant add, temporary add, inline shift). The
reciprocal emitter walks the same instruction order substituting reciprocal
primitives; the chain rule for the reciprocal transform is what makes that
gate-by-gate substitution correct.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Mapping, NamedTuple, Sequence, Union

from .algo import (
    BijectionTable,
    MatchConvention,
    build_parallel_iteration,
    build_sequential_iteration,
    hadamard_layer,
)
from .circuit import AncillaPool, Circuit, CircuitBuilder, WordRef, conjugate
from .gf2 import ShiftType, is_invertible
from . import gates
from .sim import Statevector


class TapeError(ValueError):
    """Invalid tape construction or evaluation."""


@dataclass(frozen=True)
class FrameRegister:
    """Named w-bit index register; part of the searched space."""

    name: str
    width: int

    def __post_init__(self):
        if self.width < 1:
            raise TapeError(f"register {self.name!r} needs width >= 1")


@dataclass(frozen=True)
class MajTemp:
    a: FrameRegister
    b: FrameRegister
    c: FrameRegister

    @property
    def args(self):
        return (self.a, self.b, self.c)


@dataclass(frozen=True)
class ChTemp:
    a: FrameRegister
    b: FrameRegister
    c: FrameRegister

    @property
    def args(self):
        return (self.a, self.b, self.c)


@dataclass(frozen=True)
class ShiftTemp:
    mu: ShiftType
    source: FrameRegister

    @property
    def args(self):
        return (self.source,)


TempExpr = Union[MajTemp, ChTemp, ShiftTemp]


@dataclass(frozen=True)
class AddReg:
    dst: FrameRegister
    src: FrameRegister


@dataclass(frozen=True)
class AddConst:
    dst: FrameRegister
    value: int


@dataclass(frozen=True)
class AddTemp:
    dst: FrameRegister
    temp: TempExpr


@dataclass(frozen=True)
class ShiftInline:
    reg: FrameRegister
    mu: ShiftType


Instruction = Union[AddReg, AddConst, AddTemp, ShiftInline]


class ProgramTape:
    """Append-only instruction record; immutable once sealed."""

    def __init__(self):
        self._registers: list[FrameRegister] = []
        self._instructions: list[Instruction] = []
        self._sealed = False

    @property
    def registers(self) -> tuple[FrameRegister, ...]:
        return tuple(self._registers)

    @property
    def instructions(self) -> tuple[Instruction, ...]:
        return tuple(self._instructions)

    @property
    def sealed(self) -> bool:
        return self._sealed

    @property
    def num_index_bits(self) -> int:
        return sum(r.width for r in self._registers)

    def seal(self) -> "ProgramTape":
        self._sealed = True
        return self

    def register(self, name: str, width: int) -> FrameRegister:
        self._mutable()
        if any(r.name == name for r in self._registers):
            raise TapeError(f"duplicate register name {name!r}")
        reg = FrameRegister(name, width)
        self._registers.append(reg)
        return reg

    def _mutable(self):
        if self._sealed:
            raise TapeError("tape is sealed")

    def _known(self, *regs: FrameRegister):
        for reg in regs:
            if reg not in self._registers:
                raise TapeError(f"register {reg.name!r} not declared on this tape")

    def add_reg(self, dst: FrameRegister, src: FrameRegister) -> None:
        """dst := (dst + src) mod 2^w."""
        self._mutable()
        self._known(dst, src)
        if dst == src:
            raise TapeError("source and destination must differ")
        if dst.width != src.width:
            raise TapeError("register widths must match")
        self._instructions.append(AddReg(dst, src))

    def add_const(self, dst: FrameRegister, value: int) -> None:
        """dst := (dst + value) mod 2^w."""
        self._mutable()
        self._known(dst)
        if not 0 <= value < (1 << dst.width):
            raise TapeError(f"constant {value} does not fit in {dst.width} bits")
        self._instructions.append(AddConst(dst, value))

    def add_temp(self, dst: FrameRegister, temp: TempExpr) -> None:
        self._mutable()
        self._known(dst, *temp.args)
        if dst in temp.args:
            raise TapeError("temporary arguments must differ from the destination")
        if len(set(temp.args)) != len(temp.args):
            raise TapeError("temporary arguments must be distinct registers")
        widths = {dst.width, *(r.width for r in temp.args)}
        if len(widths) != 1:
            raise TapeError("register widths must match")
        if isinstance(temp, ShiftTemp):
            self._check_shift(temp.mu, temp.source)
        self._instructions.append(AddTemp(dst, temp))

    def add_maj(self, dst, a, b, c) -> None:
        """dst := dst + Maj(a, b, c); the arguments are left unchanged."""
        self.add_temp(dst, MajTemp(a, b, c))

    def add_ch(self, dst, a, b, c) -> None:
        """dst := dst + Ch(a, b, c); the arguments are left unchanged."""
        self.add_temp(dst, ChTemp(a, b, c))

    def add_shift(self, dst, mu: ShiftType, source) -> None:
        """dst := dst + sigma_mu(source); source is left unchanged."""
        self.add_temp(dst, ShiftTemp(mu, source))

    def shift_inline(self, reg: FrameRegister, mu: ShiftType) -> None:
        """reg := sigma_mu(reg) in place."""
        self._mutable()
        self._known(reg)
        self._check_shift(mu, reg)
        self._instructions.append(ShiftInline(reg, mu))

    def _check_shift(self, mu: ShiftType, reg: FrameRegister):
        if mu.width != reg.width:
            raise TapeError(f"shift width {mu.width} != register width {reg.width}")
        if not is_invertible(mu):
            raise TapeError(f"shift type {mu} is not invertible")


def _normalize_values(tape: ProgramTape, values: Mapping, what: str) -> dict[str, int]:
    named: dict[str, int] = {}
    for key, value in values.items():
        named[key.name if isinstance(key, FrameRegister) else str(key)] = int(value)
    out = {}
    for reg in tape.registers:
        if reg.name not in named:
            raise TapeError(f"missing {what} for register {reg.name!r}")
        v = named[reg.name]
        if not 0 <= v < (1 << reg.width):
            raise TapeError(f"{what} {v} does not fit register {reg.name!r}")
        out[reg.name] = v
    return out


def _temp_value(temp: TempExpr, vals: dict[str, int], width: int) -> int:
    mask = (1 << width) - 1
    if isinstance(temp, MajTemp):
        a, b, c = (vals[r.name] for r in temp.args)
        return ((a & b) ^ (b & c) ^ (c & a)) & mask
    if isinstance(temp, ChTemp):
        a, b, c = (vals[r.name] for r in temp.args)
        return ((a & b) ^ (~a & c)) & mask
    return temp.mu.apply(vals[temp.source.name])


def calculate(tape: ProgramTape, seeds: Mapping) -> dict[str, int]:
    """Interpret the tape classically with modulo-2^w arithmetic.

    Temporary adds read their argument registers without mutating them;
    inline shifts replace the register value.
    """
    if not tape.sealed:
        raise TapeError("seal the tape before evaluating it")
    vals = _normalize_values(tape, seeds, "seed")
    for instr in tape.instructions:
        if isinstance(instr, AddReg):
            mask = (1 << instr.dst.width) - 1
            vals[instr.dst.name] = (vals[instr.dst.name] + vals[instr.src.name]) & mask
        elif isinstance(instr, AddConst):
            mask = (1 << instr.dst.width) - 1
            vals[instr.dst.name] = (vals[instr.dst.name] + instr.value) & mask
        elif isinstance(instr, AddTemp):
            mask = (1 << instr.dst.width) - 1
            t = _temp_value(instr.temp, vals, instr.dst.width)
            vals[instr.dst.name] = (vals[instr.dst.name] + t) & mask
        else:
            vals[instr.reg.name] = instr.mu.apply(vals[instr.reg.name])
    return vals


def tape_bijection(tape: ProgramTape) -> BijectionTable:
    """The tape's classical function as a flat bijection on all index bits,
    registers packed little-endian in declaration order."""
    n = tape.num_index_bits
    widths = [(r.name, r.width) for r in tape.registers]

    def fn(x: int) -> int:
        seeds = {}
        offset = 0
        for name, w in widths:
            seeds[name] = (x >> offset) & ((1 << w) - 1)
            offset += w
        vals = calculate(tape, seeds)
        out = 0
        offset = 0
        for name, w in widths:
            out |= vals[name] << offset
            offset += w
        return out

    return BijectionTable.from_function(n, fn)


# ---------------------------------------------------------------------------
# layout planning


@dataclass(frozen=True)
class TapeLayout:
    """Wire assignment shared by both emitters: index registers first, then
    the persistent carry and phase ancilla, then pooled scratch."""

    num_qubits: int
    index_refs: tuple[WordRef, ...]
    carry: int | None
    minus_anc: int | None
    scratch_for: tuple[tuple[int, ...], ...]  # per instruction, may be empty
    scratch_union: tuple[int, ...]

    @property
    def index_qubits(self) -> tuple[int, ...]:
        return tuple(q for ref in self.index_refs for q in ref.indices)

    def ref(self, reg: FrameRegister) -> WordRef:
        for r in self.index_refs:
            if r.name == reg.name:
                return r
        raise KeyError(reg.name)


def _scratch_width(instr: Instruction) -> int:
    if isinstance(instr, AddConst):
        return instr.dst.width
    if isinstance(instr, AddTemp) and isinstance(instr.temp, ShiftTemp):
        return instr.temp.source.width
    if isinstance(instr, ShiftInline):
        return instr.reg.width
    return 0


def plan_layout(tape: ProgramTape) -> TapeLayout:
    if not tape.sealed:
        raise TapeError("seal the tape before emitting circuits")
    refs = []
    base = 0
    for reg in tape.registers:
        refs.append(WordRef(reg.name, tuple(range(base, base + reg.width))))
        base += reg.width
    pool = AncillaPool(base)
    needs_carry = any(not isinstance(i, ShiftInline) for i in tape.instructions)
    needs_anc = any(isinstance(i, (AddReg, AddTemp)) for i in tape.instructions)
    carry = pool.allocate(1)[0] if needs_carry else None
    anc = pool.allocate(1)[0] if needs_anc else None
    scratch_for = []
    union: set[int] = set()
    for instr in tape.instructions:
        w = _scratch_width(instr)
        wires = pool.allocate(w) if w else ()
        scratch_for.append(wires)
        union.update(wires)
        pool.release(wires)
    return TapeLayout(
        num_qubits=max(pool.high_water, 1),
        index_refs=tuple(refs),
        carry=carry,
        minus_anc=anc,
        scratch_for=tuple(scratch_for),
        scratch_union=tuple(sorted(union)),
    )


def _session_builder(tape: ProgramTape, layout: TapeLayout) -> CircuitBuilder:
    builder = CircuitBuilder(layout.num_qubits)
    for ref in layout.index_refs:
        builder.add_ref(ref, "index")
    if layout.carry is not None:
        builder.register("carry", (layout.carry,), "carry")
    if layout.minus_anc is not None:
        builder.register("anc", (layout.minus_anc,), "phase_ancilla")
    if layout.scratch_union:
        builder.register("scratch", layout.scratch_union, "scratch")
    return builder


class EmittedCircuit(NamedTuple):
    circuit: Circuit
    output_wires: tuple[int, ...]


def _temp_wiring(tape_layout: TapeLayout, temp: TempExpr, scratch: tuple[int, ...]):
    """Return (direct compute circuit factory, reciprocal compute circuit
    factory, output register ref) for a temporary expression."""
    n = tape_layout.num_qubits
    if isinstance(temp, MajTemp):
        a, b, c = (tape_layout.ref(r) for r in temp.args)

        def direct():
            return gates.maj_gate(a, b, c, num_qubits=n)

        def recip():
            builder = CircuitBuilder(n)
            for j in range(a.width):
                builder.extend(gates.recip_maj_gate(
                    a[j], b[j], c[j], tape_layout.minus_anc, num_qubits=n))
            return builder.build()

        return direct, recip, a  # majority output lands on the a wires
    if isinstance(temp, ChTemp):
        a, b, c = (tape_layout.ref(r) for r in temp.args)

        def direct():
            return gates.ch_gate(a, b, c, num_qubits=n)

        def recip():
            builder = CircuitBuilder(n)
            for j in range(a.width):
                builder.extend(gates.recip_ch_gate(
                    a[j], b[j], c[j], tape_layout.minus_anc, num_qubits=n))
            return builder.build()

        return direct, recip, c  # choose output lands on the c wires
    src = tape_layout.ref(temp.source)
    scratch_ref = WordRef("scratch", scratch)

    def direct():
        return gates.shifter_inline_gate(temp.mu, src, scratch_ref, num_qubits=n)

    def recip():
        return gates.recip_shifter_gate(temp.mu, src, scratch_ref, num_qubits=n)

    return direct, recip, src


def emit_oracle_circuit(tape: ProgramTape, targets: Mapping) -> EmittedCircuit:
    """Direct oracle circuit: tape instructions in order, then X on every
    index wire whose target bit is 1. On basis input x the index wires leave
    carrying calculate(x) XOR target."""
    layout = plan_layout(tape)
    target_vals = _normalize_values(tape, targets, "target")
    builder = _session_builder(tape, layout)
    n = layout.num_qubits
    for instr, scratch in zip(tape.instructions, layout.scratch_for):
        if isinstance(instr, AddReg):
            builder.extend(gates.adder_gate(
                layout.ref(instr.src), layout.ref(instr.dst), layout.carry,
                num_qubits=n))
        elif isinstance(instr, AddConst):
            builder.extend(gates.const_adder_gate(
                layout.ref(instr.dst), instr.value, WordRef("scratch", scratch),
                layout.carry, num_qubits=n))
        elif isinstance(instr, AddTemp):
            direct, _, out = _temp_wiring(layout, instr.temp, scratch)
            adder = gates.adder_gate(out, layout.ref(instr.dst), layout.carry,
                                     num_qubits=n)
            builder.extend(conjugate(direct(), adder))
        else:
            builder.extend(gates.shifter_inline_gate(
                instr.mu, layout.ref(instr.reg), WordRef("scratch", scratch),
                num_qubits=n))
        builder.barrier()
    for ref in layout.index_refs:
        value = target_vals[ref.name]
        for j in range(ref.width):
            if (value >> j) & 1:
                builder.x(ref[j])
    return EmittedCircuit(builder.build(), layout.index_qubits)


def emit_recip_circuit(tape: ProgramTape, targets: Mapping | None = None,
                       ) -> EmittedCircuit:
    """Reciprocal oracle circuit: same instruction order with reciprocal
    primitives substituted.

    The phase ancilla is prepared |-> once at the start and returned to |0>
    at the end; the carry wire is Hadamard-wrapped into |+> around each
    reciprocal adder so that it rests in |0> and can serve the direct adder
    inside reciprocal constant adds. Targets are omitted by default since
    they cancel between the transform and its adjoint; passing them appends
    the equivalent Z layer so the cancellation itself can be verified.
    """
    layout = plan_layout(tape)
    builder = _session_builder(tape, layout)
    n = layout.num_qubits
    anc = layout.minus_anc
    if anc is not None:
        builder.x(anc)
        builder.h(anc)
        builder.barrier()

    def recip_add(src_ref: WordRef, dst_ref: WordRef) -> Circuit:
        wrap = CircuitBuilder(n)
        wrap.h(layout.carry)
        wrap.extend(gates.recip_adder_gate(src_ref, dst_ref, layout.carry, anc,
                                           num_qubits=n))
        wrap.h(layout.carry)
        return wrap.build()

    for instr, scratch in zip(tape.instructions, layout.scratch_for):
        if isinstance(instr, AddReg):
            builder.extend(recip_add(layout.ref(instr.src), layout.ref(instr.dst)))
        elif isinstance(instr, AddConst):
            builder.extend(gates.recip_const_adder_gate(
                layout.ref(instr.dst), instr.value, WordRef("scratch", scratch),
                layout.carry, num_qubits=n))
        elif isinstance(instr, AddTemp):
            _, recip, out = _temp_wiring(layout, instr.temp, scratch)
            builder.extend(conjugate(recip(), recip_add(out, layout.ref(instr.dst))))
        else:
            builder.extend(gates.recip_shifter_gate(
                instr.mu, layout.ref(instr.reg), WordRef("scratch", scratch),
                num_qubits=n))
        builder.barrier()
    if targets is not None:
        target_vals = _normalize_values(tape, targets, "target")
        for ref in layout.index_refs:
            value = target_vals[ref.name]
            for j in range(ref.width):
                if (value >> j) & 1:
                    builder.z(ref[j])
    if anc is not None:
        builder.h(anc)
        builder.x(anc)
    return EmittedCircuit(builder.build(), layout.index_qubits)


# ---------------------------------------------------------------------------
# full pipeline


@dataclass
class IterationResult:
    """Outcome of a search run over a tape."""

    distribution: dict
    state: Statevector
    qubit_count: int
    gate_counts: dict[str, int]
    iterations: int
    register_names: tuple[str, ...] = field(default_factory=tuple)

    def solutions(self) -> list[tuple[tuple[int, ...], float]]:
        """(register values, probability) pairs, highest probability first."""
        items = []
        for key, prob in self.distribution.items():
            values = key if isinstance(key, tuple) else (key,)
            items.append((values, prob))
        items.sort(key=lambda kv: (-kv[1], kv[0]))
        return items


def build_pipeline_circuit(tape: ProgramTape, targets: Mapping,
                           convention: MatchConvention = MatchConvention.ALL_ZEROS,
                           mode: str = "parallel") -> Circuit:
    """The complete search circuit: the initial Hadamard layer followed by
    the parallel iteration (or the n sequential iterations)."""
    layout = plan_layout(tape)
    oracle, f_wires = emit_oracle_circuit(tape, targets)
    recip, kappa_wires = emit_recip_circuit(tape)
    index = layout.index_qubits
    pieces = [hadamard_layer(layout.num_qubits, index)]
    if mode == "parallel":
        pieces.append(build_parallel_iteration(oracle, recip, index, convention))
    elif mode == "sequential":
        if convention is not MatchConvention.ALL_ZEROS:
            raise ValueError("sequential mode implements the all-zeros convention")
        for ell in range(len(index)):
            pieces.append(build_sequential_iteration(
                ell, oracle, recip, index, f_wires, kappa_wires))
    else:
        raise ValueError(f"unknown mode {mode!r}")
    circuit = pieces[0]
    for piece in pieces[1:]:
        circuit = Circuit(circuit.num_qubits, circuit.ops + piece.ops, circuit.layout)
    return circuit


def partial_oracle_iteration(tape: ProgramTape, targets: Mapping, *,
                             convention: MatchConvention = MatchConvention.ALL_ZEROS,
                             mode: str = "parallel", precision: str = "double",
                             budget: int | None = None) -> IterationResult:
    """Allocate the registers and ancillas, run the search, and return the
    measurement distribution over the index registers."""
    layout = plan_layout(tape)
    circuit = build_pipeline_circuit(tape, targets, convention, mode)
    state = Statevector(layout.num_qubits, precision, budget=budget)
    state.apply_circuit(circuit)
    groups = {ref.name: ref.indices for ref in layout.index_refs}
    distribution = state.register_distribution(groups)
    return IterationResult(
        distribution=distribution,
        state=state,
        qubit_count=layout.num_qubits,
        gate_counts=circuit.gate_counts(),
        iterations=1 if mode == "parallel" else len(layout.index_qubits),
        register_names=tuple(r.name for r in tape.registers),
    )


# ---------------------------------------------------------------------------
# tape description files


class TapeParseError(ValueError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


_SHIFT_LITERAL = r"\([^()]*\)\s*(?:\([^()]*\))?"
_RE_REG = re.compile(r"reg\s+(\w+)\s+(\d+)$")
_RE_ADD_REG = re.compile(r"(\w+)\s*\+=\s*(\w+)$")
_RE_ADD_CONST = re.compile(r"(\w+)\s*\+=\s*(\d+)$")
_RE_ADD_FN = re.compile(r"(\w+)\s*\+=\s*(maj|ch)\(\s*(\w+)\s*,\s*(\w+)\s*,\s*(\w+)\s*\)$")
_RE_ADD_SHIFT = re.compile(rf"(\w+)\s*\+=\s*shift\(\s*({_SHIFT_LITERAL})\s*,\s*(\w+)\s*\)$")
_RE_INLINE = re.compile(rf"(\w+)\s*<<~\s*({_SHIFT_LITERAL})$")


def parse_tape(text: str) -> ProgramTape:
    """Parse a tape description file into a sealed ProgramTape.

    The surface syntax mirrors the instruction set: `reg d 4`, `d += a`,
    `d += 11`, `d += maj(a,b,c)`, `d += ch(a,b,c)`,
    `d += shift((0,1,3)(), a)`, and `W0 <<~ (0,1)(3)` for an inline shift.
    `#` starts a comment.
    """
    tape = ProgramTape()
    by_name: dict[str, FrameRegister] = {}

    def lookup(lineno, name):
        if name not in by_name:
            raise TapeParseError(lineno, f"unknown register {name!r}")
        return by_name[name]

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            if m := _RE_REG.fullmatch(line):
                by_name[m.group(1)] = tape.register(m.group(1), int(m.group(2)))
            elif m := _RE_ADD_CONST.fullmatch(line):
                tape.add_const(lookup(lineno, m.group(1)), int(m.group(2)))
            elif m := _RE_ADD_FN.fullmatch(line):
                dst = lookup(lineno, m.group(1))
                args = [lookup(lineno, m.group(i)) for i in (3, 4, 5)]
                if m.group(2) == "maj":
                    tape.add_maj(dst, *args)
                else:
                    tape.add_ch(dst, *args)
            elif m := _RE_ADD_SHIFT.fullmatch(line):
                dst = lookup(lineno, m.group(1))
                src = lookup(lineno, m.group(3))
                tape.add_shift(dst, ShiftType.parse(m.group(2), src.width), src)
            elif m := _RE_ADD_REG.fullmatch(line):
                tape.add_reg(lookup(lineno, m.group(1)), lookup(lineno, m.group(2)))
            elif m := _RE_INLINE.fullmatch(line):
                reg = lookup(lineno, m.group(1))
                tape.shift_inline(reg, ShiftType.parse(m.group(2), reg.width))
            else:
                raise TapeParseError(lineno, f"cannot parse {raw.strip()!r}")
        except (TapeError, ValueError) as exc:
            if isinstance(exc, TapeParseError):
                raise
            raise TapeParseError(lineno, str(exc)) from exc
    return tape.seal()


def format_tape(tape: ProgramTape) -> str:
    """Render a tape in the description-file syntax; parse_tape round-trips it."""
    lines = [f"reg {r.name} {r.width}" for r in tape.registers]
    for instr in tape.instructions:
        if isinstance(instr, AddReg):
            lines.append(f"{instr.dst.name} += {instr.src.name}")
        elif isinstance(instr, AddConst):
            lines.append(f"{instr.dst.name} += {instr.value}")
        elif isinstance(instr, AddTemp):
            t = instr.temp
            if isinstance(t, MajTemp):
                lines.append(f"{instr.dst.name} += maj({t.a.name},{t.b.name},{t.c.name})")
            elif isinstance(t, ChTemp):
                lines.append(f"{instr.dst.name} += ch({t.a.name},{t.b.name},{t.c.name})")
            else:
                lines.append(f"{instr.dst.name} += shift({t.mu}, {t.source.name})")
        else:
            lines.append(f"{instr.reg.name} <<~ {instr.mu}")
    return "\n".join(lines) + "\n"
