"""Invert a two-step operation chain in a single search iteration.

The program is: y := sigma_(0,1,3)()(x + y) with x unchanged, on two 4-bit
registers. Given a target output, one parallelized partial-oracle iteration
concentrates all amplitude on the unique preimage.
"""

from posim import calculate, chain_tape, partial_oracle_iteration

tape = chain_tape(width=4)

# Forward direction: seeds (4, 7) hash to (4, 1).
seeds = {"x": 4, "y": 7}
target = calculate(tape, seeds)
print(f"g(x=4, y=7) = {target}")

# Inverse direction: search for the preimage of (4, 1). The index space has
# 2^8 = 256 states; a plain amplitude-amplification search would need about
# sqrt(256) = 16 oracle queries, but the partial-oracle pipeline finds the
# answer in ONE iteration with probability 1.
result = partial_oracle_iteration(tape, target)
print(f"qubits used: {result.qubit_count}")
print(f"iterations:  {result.iterations}")
for values, prob in result.solutions():
    print(f"solution (x, y) = {values}   p = {prob:.9f}")

assert result.solutions()[0][0] == (4, 7)

# Every target tuple works the same way; try a few more.
for target_pair in ({"x": 9, "y": 0}, {"x": 0, "y": 15}, {"x": 3, "y": 3}):
    result = partial_oracle_iteration(tape, target_pair)
    values, prob = result.solutions()[0]
    check = calculate(tape, {"x": values[0], "y": values[1]})
    print(f"target {tuple(target_pair.values())} -> preimage {values} "
          f"(g(preimage) = {tuple(check.values())}, p = {prob:.6f})")
