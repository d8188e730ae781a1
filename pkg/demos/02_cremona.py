"""
The standard Cremona involution
===============================

[x0 : x1 : x2] -> [x1 x2 : x0 x2 : x0 x1] is quadratic but squares to the identity,
so its degree sequence oscillates and the first dynamical degree is 1.
"""

import random

from dyndeg import compose, conjugate, degree_sequence_d1, estimate_d1, parse_map

sigma = parse_map("x1*x2, x0*x2, x0*x1", 2)
print("sigma       :", sigma)

sq = compose(sigma, sigma)
print("sigma o sigma:", sq)  # the cubic common factor x0 x1 x2 has been divided out

seq = degree_sequence_d1(sigma, 8)
print("degrees     :", list(seq))
print("estimate, upper bound:", estimate_d1(seq))

# a random linear change of coordinates does not change d_1
rng = random.Random(3)
while True:
    M = [[rng.randint(-2, 2) for _ in range(3)] for _ in range(3)]
    try:
        tau = conjugate(sigma, M)
        break
    except ValueError:
        pass  # singular M, draw again
print("conjugate degrees:", list(degree_sequence_d1(tau, 4)))
