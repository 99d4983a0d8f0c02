import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from posim.gf2 import (
    GF2Matrix,
    ShiftType,
    SingularMatrixError,
    invert,
    is_invertible,
    matrix_of,
)
from posim.suites import random_invertible_shift_type, random_shift_type


def test_identity_shift():
    mu = ShiftType(4, (0,))
    for x in range(16):
        assert mu.apply(x) == x


def test_paper_shift_values():
    # the chain program's target derivation and the w=4 worked example
    assert ShiftType(4, (0, 1, 3)).apply(11) == 1
    assert ShiftType(4, (0, 1), (3,)).apply(1) == 9


def test_complement():
    mu = ShiftType(4, (0, 1), (3,))
    assert mu.complement() == ShiftType(4, (0, -1), (-3,))
    assert mu.complement().complement() == mu
    assert ShiftType(4, (0, 1, 3)).complement() == ShiftType(4, (0, -1, -3))


def test_shift_validation():
    with pytest.raises(ValueError):
        ShiftType(0, (1,))
    with pytest.raises(ValueError):
        ShiftType(4, (), (0,))
    with pytest.raises(ValueError):
        ShiftType(4, (), (4,))
    with pytest.raises(ValueError):
        ShiftType(4, (1,)).apply(16)


def test_parse_and_str_round_trip():
    mu = ShiftType.parse("(0,1)(3)", 4)
    assert mu == ShiftType(4, (0, 1), (3,))
    assert str(mu) == "(0,1)(3)"
    assert ShiftType.parse("(0,1,3)()", 4) == ShiftType(4, (0, 1, 3))
    assert ShiftType.parse("(0,-1)(-3)", 4) == ShiftType(4, (0, -1), (-3,))
    assert ShiftType.parse(" (2) ", 4) == ShiftType(4, (2,))
    with pytest.raises(ValueError):
        ShiftType.parse("0,1)(3", 4)


def test_duplicate_amounts_cancel_pairwise():
    # (0,0,1) reduces to (1); duplicates are kept in the type but XOR out
    mu = ShiftType(4, (0, 0, 1))
    ref = ShiftType(4, (1,))
    for x in range(16):
        assert mu.apply(x) == ref.apply(x)


def test_matrix_of_identity_and_columns():
    assert matrix_of(ShiftType(3, (0,))) == GF2Matrix.identity(3)
    m = matrix_of(ShiftType(4, (0, 1), (3,)))
    assert m.column(0) == 9  # sigma(1) = 1001


@given(st.data())
@settings(max_examples=80, deadline=None)
def test_matrix_matches_apply_and_linearity(data):
    width = data.draw(st.integers(1, 8))
    seed = data.draw(st.integers(0, 2**31))
    import numpy as np

    mu = random_shift_type(np.random.default_rng(seed), width)
    m = matrix_of(mu)
    x = data.draw(st.integers(0, (1 << width) - 1))
    y = data.draw(st.integers(0, (1 << width) - 1))
    assert m.mul_vec(x) == mu.apply(x)
    assert mu.apply(x ^ y) == mu.apply(x) ^ mu.apply(y)


def test_invert_identity():
    assert invert(GF2Matrix.identity(5)) == GF2Matrix.identity(5)


def test_paper_inverse_table():
    # inverse of the complement type (0,-1)(-3) at w=4, read MSB-first:
    # 0111, 1001, 1011, 1111
    t = invert(matrix_of(ShiftType(4, (0, -1), (-3,))))
    assert t.columns() == (7, 9, 11, 15)


def test_even_rotation_count_is_singular():
    with pytest.raises(SingularMatrixError):
        invert(matrix_of(ShiftType(4, (0, 1))))
    assert not is_invertible(ShiftType(4, (0, 1)))


def test_odd_count_insufficient_off_power_of_two():
    # three rotations on w=3 hit the (X^2+X+1) factor of X^3 - 1
    assert not is_invertible(ShiftType(3, (0, 1, 2)))


def test_rotation_only_parity_criterion(rng):
    for trial in range(300):
        width = int(rng.integers(2, 9))
        mu = random_shift_type(rng, width, rotations_only=True)
        odd = len(mu.rotr_amounts) % 2 == 1
        if not odd:
            assert not is_invertible(mu)
        elif width in (2, 4, 8):
            assert is_invertible(mu)


def test_inverse_round_trip(rng):
    for _ in range(60):
        width = int(rng.integers(1, 7))
        mu = random_invertible_shift_type(rng, width)
        t = invert(matrix_of(mu))
        for x in range(1 << width):
            assert t.mul_vec(mu.apply(x)) == x
            assert mu.apply(t.mul_vec(x)) == x


def test_complement_matrix_is_transpose(rng):
    # the dot-product lemma kappa . sigma_mu(x) = sigma_complement(kappa) . x
    # in matrix form
    for _ in range(40):
        width = int(rng.integers(1, 9))
        mu = random_shift_type(rng, width)
        assert matrix_of(mu.complement()) == matrix_of(mu).transpose()


def test_matmul_and_singular_error_paths():
    m = matrix_of(ShiftType(4, (0, 1), (3,)))
    t = invert(m)
    assert (t @ m) == GF2Matrix.identity(4)
    assert (m @ t) == GF2Matrix.identity(4)
    with pytest.raises(ValueError):
        m @ GF2Matrix.identity(3)
