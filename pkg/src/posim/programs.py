"""Builtin search programs: the two-register add-then-shift chain and the
scaled-down hash round function."""

from __future__ import annotations

from .frame import FrameRegister, ProgramTape
from .gf2 import ShiftType

# First sixteen SHA-256 round constants (fractional parts of cube roots of
# the first primes, FIPS 180-4); the toy hash truncates them to the register
# width.
SHA256_K = (
    0x428A2F98, 0x71374491, 0xB5C0FBCF, 0xE9B5DBA5,
    0x3956C25B, 0x59F111F1, 0x923F82A4, 0xAB1C5ED5,
    0xD807AA98, 0x12835B01, 0x243185BE, 0x550C7DC3,
    0x72BE5D74, 0x80DEB1FE, 0x9BDC06A7, 0xC19BF174,
)

# First four SHA-256 initial hash words, used as the default working-variable
# seeds.
SHA256_H0 = (0x6A09E667, 0xBB67AE85, 0x3C6EF372, 0xA54FF53A)


def chain_shift(width: int) -> ShiftType:
    return ShiftType(width, (0, 1, 3))


def chain_tape(width: int = 4) -> ProgramTape:
    """y := sigma_(0,1,3)()(x + y), x unchanged."""
    tape = ProgramTape()
    x = tape.register("x", width)
    y = tape.register("y", width)
    tape.add_reg(y, x)
    tape.shift_inline(y, chain_shift(width))
    return tape.seal()


def toyhash_shifts(width: int) -> tuple[ShiftType, ShiftType]:
    """(big sigma, small sigma) of the toy hash round.

    The windowed-shift amount must stay below the register width, so the
    scaled-down widths clamp it; width 4 keeps the original (0,1)(3).
    """
    return ShiftType(width, (0, 1, 3)), ShiftType(width, (0, 1), (min(3, width - 1),))


def toyhash_tape(width: int = 4, rounds: int = 4) -> ProgramTape:
    """Four working variables a..d plus one message word W0, updated in place.

    Each round folds the old d into the new chaining value, so register roles
    rotate by index instead of moving any quantum data: after the round the
    (a, b, c, d) names point one register earlier.
    """
    if not 0 <= rounds <= len(SHA256_K):
        raise ValueError(f"rounds must be in 0..{len(SHA256_K)}")
    mask = (1 << width) - 1
    big_sigma, small_sigma = toyhash_shifts(width)
    tape = ProgramTape()
    work = [tape.register(name, width) for name in ("a", "b", "c", "d")]
    w0 = tape.register("W0", width)
    a_i, b_i, c_i, d_i = 0, 1, 2, 3
    for t in range(rounds):
        a, b, c, d = work[a_i], work[b_i], work[c_i], work[d_i]
        tape.add_shift(d, big_sigma, a)
        tape.add_ch(d, a, b, c)
        tape.add_const(d, SHA256_K[t] & mask)
        tape.add_reg(d, w0)
        tape.add_reg(b, d)
        tape.add_maj(d, a, b, c)
        tape.shift_inline(w0, small_sigma)
        a_i, b_i, c_i, d_i = (a_i - 1) % 4, (b_i - 1) % 4, (c_i - 1) % 4, (d_i - 1) % 4
    return tape.seal()


def default_toyhash_seeds(width: int) -> dict[str, int]:
    """Working variables from the truncated initial hash words, message word
    from the letter 'H'."""
    mask = (1 << width) - 1
    seeds = {name: h & mask for name, h in zip("abcd", SHA256_H0)}
    seeds["W0"] = ord("H") & mask
    return seeds


BUILTIN_PROGRAMS = {
    "chain": chain_tape,
    "toyhash": toyhash_tape,
}
