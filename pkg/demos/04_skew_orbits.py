"""
Relative degrees along a base orbit
===================================

The skew product (y, z) -> (y^2, y z^3) over P^1. Fiber maps are composed along
the orbit of a random base point; the degree should not depend on that point.
"""

import random

from dyndeg import ProductSystem, SkewSystem, abc_sequences, parse_map, relative_sequence_orbit

sk = SkewSystem.parse("x0^2, x1^2", "z0^3, y1*z1^3", l=1, m=1)
print("generic fiber degree:", sk.generic_fiber_degree())

for seed in (1, 2, 3):
    rel = relative_sequence_orbit(sk, 8, rng=random.Random(seed))
    print(f"base point y = {rel.base_point[0]}: {list(rel.values)}")

# for a genuine product the intersection numbers are explicit
prod = ProductSystem(parse_map("x0^2, x1^2", 1), parse_map("x0^3, x1^3", 1))
t = abc_sequences(prod, 1, 6)
print("b_1(n):", list(t.b))  # 2^n + 2*3^n
print("c_1(n):", list(t.c))  # 2^n
