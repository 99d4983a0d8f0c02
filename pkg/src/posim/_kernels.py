"""Numba stride kernels for gate application on flat amplitude arrays.

Each kernel walks a compressed counter and expands it by inserting one zero
bit per special wire (targets plus controls, ascending), then ORs in the
control bits, so only amplitudes the gate actually touches are visited. The
touched pairs are disjoint, keeping results bitwise-deterministic. sim.py
falls back to the numpy slicing path when numba is unavailable (or
POSIM_NO_NUMBA is set).
"""

import numpy as np
from numba import njit

_INV_SQRT2 = 1.0 / np.sqrt(2.0)


@njit(cache=True, inline="always")
def _expand(j, low_masks):
    for m in low_masks:
        j = ((j & ~m) << 1) | (j & m)
    return j


@njit(cache=True)
def kern_x(amps, t_bit, low_masks, set_mask):
    for j in range(amps.size >> len(low_masks)):
        i0 = _expand(j, low_masks) | set_mask
        i1 = i0 | t_bit
        tmp = amps[i0]
        amps[i0] = amps[i1]
        amps[i1] = tmp


@njit(cache=True)
def kern_h(amps, t_bit, low_masks, set_mask):
    for j in range(amps.size >> len(low_masks)):
        i0 = _expand(j, low_masks) | set_mask
        i1 = i0 | t_bit
        a0 = amps[i0]
        a1 = amps[i1]
        amps[i0] = (a0 + a1) * _INV_SQRT2
        amps[i1] = (a0 - a1) * _INV_SQRT2


@njit(cache=True)
def kern_phase(amps, low_masks, set_mask, factor):
    # set_mask includes the target bit, so every visited index gets the phase
    for j in range(amps.size >> len(low_masks)):
        i1 = _expand(j, low_masks) | set_mask
        amps[i1] = amps[i1] * factor


@njit(cache=True)
def kern_swap(amps, a_bit, b_bit, low_masks, set_mask):
    # visit the (a=1, b=0) block; partner index flips both target bits
    for j in range(amps.size >> len(low_masks)):
        i10 = _expand(j, low_masks) | set_mask | a_bit
        i01 = (i10 ^ a_bit) | b_bit
        tmp = amps[i10]
        amps[i10] = amps[i01]
        amps[i01] = tmp
