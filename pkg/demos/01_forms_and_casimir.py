"""Tour of symmetrising forms, dual bases and Casimir elements.

Run from the repository root:  python demos/01_forms_and_casimir.py
"""

from fractions import Fraction

import symorders as so
from symorders.builders import (
    hecke_rank1,
    rank2_embedding,
    rank2_order,
    s3_group_algebra,
)
from symorders.forms import gram_matrix
from symorders.padic import scalar_to_str


def show(v):
    return "(" + ", ".join(scalar_to_str(x) for x in v) + ")"


# A group algebra carries its standard form: value 1 at the identity.
A, s = s3_group_algebra(p=3)
print("group algebra on three points, dim", A.dim)
print("  standard form symmetrising:", so.is_symmetrising(A, s))
z = so.casimir(A, s)
print("  Casimir element:", show(z), " (6 times the unit)")

# Twisting by a central unit divides the Casimir element by it.
twisted = so.twist_form(A, s, A.scalar(2))
print("  after twisting by 2:", show(so.casimir(A, twisted)))

# The rank-2 local family inside K x K: basis (1,1), (0, p^m).
for m, p in [(1, 2), (2, 2)]:
    R, sr = rank2_order(m, p)
    emb = rank2_embedding(m, p)
    d = so.dual_basis(R, sr)
    print(f"rank-2 order, depth {m}, p = {p}")
    print("  dual basis in split coordinates:",
          show(emb @ d.element(0)), show(emb @ d.element(1)))
    print("  Casimir in split coordinates:", show(emb @ so.casimir(R, sr)))

# The rank-1 Hecke order: the form picks out the T_1 coefficient and the
# dual basis rescales T_s by 1/q.
H, sh = hecke_rank1(q=3, p=2)
print("Hecke order with q = 3")
print("  Gram matrix:")
for row in gram_matrix(H, sh):
    print("   ", show(row))
print("  Casimir element:", show(so.casimir(H, sh)))

# The regular character is usually NOT symmetrising: its Gram matrix
# picks up p-powers, one per basis element here.
rho = so.regular_character_form(A)
print("regular character symmetrising:", so.is_symmetrising(A, rho))
print("  but divided by 3 it is:", so.is_symmetrising(A, rho.scale(Fraction(1, 3))))
