"""
Degrees of a triangular monomial system
=======================================

A block lower triangular exponent matrix is a map of P^1 x P^2 preserving the
projection to P^1. Its degrees split into base degrees and relative degrees.
"""

from dyndeg import MonomialTriangularSystem, system_profiles, verify_product_formula

A = [[3, 0, 0],
     [1, 2, 1],
     [4, 1, 1]]
sys_ = MonomialTriangularSystem(A, l=1)
B, D = sys_.blocks
print("base block    :", B.tolist())
print("fiber block   :", D.tolist())

pr = system_profiles(sys_)
print("total d_p     :", [round(v, 6) for v in pr.total])
print("base d_j      :", [round(v, 6) for v in pr.base])
print("relative d_j  :", [round(v, 6) for v in pr.relative])

rep = verify_product_formula(pr.total, pr.base, pr.relative)
for c in rep.checks:
    # which split j attains the maximum of d_j(base) * d_{p-j}(relative)
    print(f"p={c.p}: {c.status:6s} witnesses {c.witnesses} residual {c.residual:.1e}")
