"""Invert a scaled-down hash round function in one search iteration.

The round mixes four working variables and a message word with modular adds,
Ch, Maj, and bit shifts (the same ingredient list as a real compression
function, shrunk to 4-bit words). Width 2 runs in well under a second; the
width-4 version is the full 26-qubit computation and takes minutes.
"""

import time

from posim import calculate, default_toyhash_seeds, partial_oracle_iteration, toyhash_tape

# --- width 2: instant ---
tape = toyhash_tape(width=2)
seeds = {"a": 3, "b": 1, "c": 2, "d": 2, "W0": 0}
target = calculate(tape, seeds)
print(f"width 2: g{tuple(seeds.values())} = {tuple(target.values())}")

start = time.perf_counter()
result = partial_oracle_iteration(tape, target)
values, prob = result.solutions()[0]
print(f"width 2: recovered {values} with p = {prob:.9f} "
      f"on {result.qubit_count} qubits in {time.perf_counter() - start:.2f} s")
assert values == tuple(seeds.values())

# --- width 4: the full-size toy hash ---
# Seeds are the truncated initial hash words plus the letter 'H'; the target
# below is their image. Expect a multi-minute run over 2^26 amplitudes.
tape4 = toyhash_tape(width=4)
seeds4 = default_toyhash_seeds(4)
target4 = calculate(tape4, seeds4)
print(f"width 4: g{tuple(seeds4.values())} = {tuple(target4.values())}")
print("width 4 searches 2^20 index states on 26 qubits; expect minutes.")

if input("run the width-4 inversion now? [y/N] ").strip().lower() == "y":
    start = time.perf_counter()
    result = partial_oracle_iteration(tape4, target4)
    values, prob = result.solutions()[0]
    print(f"width 4: recovered {values} with p = {prob:.9f} "
          f"in {time.perf_counter() - start:.0f} s")
