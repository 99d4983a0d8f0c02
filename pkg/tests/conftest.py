import numpy as np
import pytest

from posim.circuit import WordRef


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def word(name: str, start: int, width: int) -> WordRef:
    return WordRef(name, tuple(range(start, start + width)))


def basis_index(assignments: dict[int, int]) -> int:
    return sum(bit << q for q, bit in assignments.items())
