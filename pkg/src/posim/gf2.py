"""Shift-function algebra over GF(2).

A shift type mu = (a,b,...)(l,...) denotes the XOR of right-rotations by the
first group of amounts and windowed right-shifts by the second group, acting
on w-bit words. Rotation amounts may be any integers (negative rotates left);
shift amounts c must satisfy -w < c < w, c != 0 (negative shifts left).
Bit j of the result is x_{(j+a) mod w} for a rotation and x_{j+c} (when that
index lies in 0..w-1, else 0) for a shift. Every such map is linear over
GF(2), so it has a w x w bit matrix whose column j is the image of 2^j.
"""

from __future__ import annotations

import re
from dataclasses import dataclass


class SingularMatrixError(ValueError):
    """The bit matrix has no inverse; the shift type cannot be reversed."""


def rotr(x: int, amount: int, width: int) -> int:
    a = amount % width
    mask = (1 << width) - 1
    return ((x >> a) | (x << (width - a))) & mask


def shr(x: int, amount: int, width: int) -> int:
    # Heaviside window: source bits outside 0..w-1 contribute 0.
    mask = (1 << width) - 1
    if amount >= 0:
        return (x >> amount) & mask
    return (x << -amount) & mask


@dataclass(frozen=True)
class ShiftType:
    """Shift specification mu = (rotr amounts)(shr amounts) on w-bit words."""

    width: int
    rotr_amounts: tuple[int, ...] = ()
    shr_amounts: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "rotr_amounts", tuple(self.rotr_amounts))
        object.__setattr__(self, "shr_amounts", tuple(self.shr_amounts))
        if self.width < 1:
            raise ValueError("shift width must be >= 1")
        for c in self.shr_amounts:
            if c == 0 or not -self.width < c < self.width:
                raise ValueError(
                    f"shr amount {c} outside (-{self.width}, {self.width}) or zero"
                )

    def apply(self, x: int) -> int:
        if not 0 <= x < (1 << self.width):
            raise ValueError(f"{x} does not fit in {self.width} bits")
        out = 0
        for a in self.rotr_amounts:
            out ^= rotr(x, a, self.width)
        for c in self.shr_amounts:
            out ^= shr(x, c, self.width)
        return out

    def complement(self) -> "ShiftType":
        """Negate every amount; the transpose map (used by reciprocal shifters)."""
        return ShiftType(
            self.width,
            tuple(-a for a in self.rotr_amounts),
            tuple(-c for c in self.shr_amounts),
        )

    def __str__(self) -> str:
        left = ",".join(str(a) for a in self.rotr_amounts)
        right = ",".join(str(c) for c in self.shr_amounts)
        return f"({left})({right})"

    @classmethod
    def parse(cls, text: str, width: int) -> "ShiftType":
        """Parse the literal syntax, e.g. `(0,1)(3)`; the second group may be
        empty or omitted entirely."""
        m = re.fullmatch(r"\s*\(([^()]*)\)\s*(?:\(([^()]*)\))?\s*", text)
        if not m:
            raise ValueError(f"bad shift type syntax: {text!r}")

        def amounts(group):
            if group is None or not group.strip():
                return ()
            return tuple(int(tok) for tok in group.split(","))

        return cls(width, amounts(m.group(1)), amounts(m.group(2)))


def shift_apply(mu: ShiftType, x: int) -> int:
    return mu.apply(x)


def complement(mu: ShiftType) -> ShiftType:
    return mu.complement()


@dataclass(frozen=True)
class GF2Matrix:
    """Square bit matrix; row i is bit-packed with bit j holding entry (i, j)."""

    width: int
    rows: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(self.rows))
        if len(self.rows) != self.width:
            raise ValueError("row count must equal width")
        if any(r >> self.width for r in self.rows):
            raise ValueError("row wider than matrix")

    @classmethod
    def identity(cls, width: int) -> "GF2Matrix":
        return cls(width, tuple(1 << i for i in range(width)))

    @classmethod
    def from_columns(cls, width: int, columns) -> "GF2Matrix":
        columns = tuple(columns)
        rows = tuple(
            sum(((columns[j] >> i) & 1) << j for j in range(width))
            for i in range(width)
        )
        return cls(width, rows)

    def column(self, j: int) -> int:
        return sum(((self.rows[i] >> j) & 1) << i for i in range(self.width))

    def columns(self) -> tuple[int, ...]:
        return tuple(self.column(j) for j in range(self.width))

    def mul_vec(self, x: int) -> int:
        return sum((bin(self.rows[i] & x).count("1") & 1) << i for i in range(self.width))

    def __matmul__(self, other: "GF2Matrix") -> "GF2Matrix":
        if self.width != other.width:
            raise ValueError("width mismatch")
        return GF2Matrix.from_columns(
            self.width, tuple(self.mul_vec(c) for c in other.columns())
        )

    def transpose(self) -> "GF2Matrix":
        return GF2Matrix.from_columns(self.width, self.rows)

    def invert(self) -> "GF2Matrix":
        """Gauss-Jordan elimination on bit-packed rows, pivoting per column.

        Raises SingularMatrixError when no pivot exists; callers must refuse
        to build reciprocal shifters for such a shift type.
        """
        w = self.width
        aug = [self.rows[i] | (1 << (w + i)) for i in range(w)]
        for col in range(w):
            pivot = next((r for r in range(col, w) if (aug[r] >> col) & 1), None)
            if pivot is None:
                raise SingularMatrixError(f"no pivot in column {col}")
            aug[col], aug[pivot] = aug[pivot], aug[col]
            for r in range(w):
                if r != col and (aug[r] >> col) & 1:
                    aug[r] ^= aug[col]
        return GF2Matrix(w, tuple(row >> w for row in aug))


def matrix_of(mu: ShiftType) -> GF2Matrix:
    """Forward matrix M with column j = sigma_mu(2^j); M.mul_vec == mu.apply."""
    return GF2Matrix.from_columns(
        mu.width, tuple(mu.apply(1 << j) for j in range(mu.width))
    )


def invert(m: GF2Matrix) -> GF2Matrix:
    return m.invert()


def is_invertible(mu: ShiftType) -> bool:
    try:
        matrix_of(mu).invert()
        return True
    except SingularMatrixError:
        return False
