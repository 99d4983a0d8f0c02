"""posim: partial-oracle quantum search with reciprocal-space circuits.

A statevector simulator, a reversible-circuit IR, GF(2) shift algebra,
direct and reciprocal gate builders, dense brute-force reference transforms,
and a program-tape layer that turns one oracle definition into a classical
interpreter, a direct circuit, a reciprocal circuit, and a single-iteration
search.
"""

from .algo import (
    BijectionTable,
    MatchConvention,
    circuit_data_unitary,
    dense_bare_transform,
    dense_parallel_iteration,
    dense_recip_transform,
    dense_sequential_search,
    parity_dot,
    phase_aligned_deviation,
    run_parallel_iteration,
    run_sequential_iteration,
    verify_chain_rule,
)
from .circuit import (
    Barrier,
    Circuit,
    CircuitBuilder,
    Gate,
    RegisterLayout,
    WordRef,
    adjoint,
    compose,
    conjugate,
    export_portable,
    parse_portable,
)
from .frame import (
    FrameRegister,
    ProgramTape,
    calculate,
    emit_oracle_circuit,
    emit_recip_circuit,
    format_tape,
    parse_tape,
    partial_oracle_iteration,
    tape_bijection,
)
from .gf2 import GF2Matrix, ShiftType, SingularMatrixError, invert, is_invertible, matrix_of
from .programs import chain_tape, default_toyhash_seeds, toyhash_tape
from .sim import CapacityError, Statevector, dense_unitary, new_state

__version__ = "0.1.0"

__all__ = [
    "Barrier",
    "BijectionTable",
    "CapacityError",
    "Circuit",
    "CircuitBuilder",
    "FrameRegister",
    "GF2Matrix",
    "Gate",
    "MatchConvention",
    "ProgramTape",
    "RegisterLayout",
    "ShiftType",
    "SingularMatrixError",
    "Statevector",
    "WordRef",
    "adjoint",
    "calculate",
    "chain_tape",
    "circuit_data_unitary",
    "compose",
    "conjugate",
    "default_toyhash_seeds",
    "dense_bare_transform",
    "dense_parallel_iteration",
    "dense_recip_transform",
    "dense_sequential_search",
    "dense_unitary",
    "emit_oracle_circuit",
    "emit_recip_circuit",
    "export_portable",
    "format_tape",
    "invert",
    "is_invertible",
    "matrix_of",
    "new_state",
    "parity_dot",
    "parse_portable",
    "parse_tape",
    "partial_oracle_iteration",
    "phase_aligned_deviation",
    "run_parallel_iteration",
    "run_sequential_iteration",
    "tape_bijection",
    "toyhash_tape",
    "verify_chain_rule",
]
