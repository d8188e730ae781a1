"""
Degree growth of a monomial map
===============================

x -> x^2 y, y -> x y. The exponent matrix is [[2, 1], [1, 1]].
"""

import numpy as np

from dyndeg import ExponentMatrix, degree_sequence, delta_p, dynamical_degrees_exact

A = ExponentMatrix.from_rows([[2, 1], [1, 1]])

# degrees of the iterates, straight from the powers of A
seq = degree_sequence(A, 1, 12)
print("deg f^n:", list(seq))

# they are Fibonacci numbers F_{2n+2}, so the ratio tends to the square of the golden ratio
ratios = np.array(seq.values[1:]) / np.array(seq.values[:-1])
print("ratios :", np.round(ratios, 8))

prof = dynamical_degrees_exact(A)
print("d_p    :", prof.values)  # (1, phi^2, 1)

# the same numbers come out of mixed volumes of the Newton polytope
print("delta_1 via mixed volume:", delta_p(A, 1, "mixed-volume"))
print("delta_2 = |det A|       :", delta_p(A, 2))
