"""How many distinct unit-vector columns can an invertible row transform produce?

Over a field this is the rank.  Over Z and Z/n it can exceed what plain
unit pivoting finds, because gcd combinations of non-units can create a unit.
"""

from ringcert import ZZ, IndexedMatrix, Ring, reduce, t_max_bruteforce, unit_column_capacity
from ringcert.echelon import greedy_unit_pivots

M = IndexedMatrix.from_rows(ZZ, [[2], [3]])
res = reduce(M)
print("column (2, 3) over Z: capacity", res.t)
print("  Q  =", res.Q.to_lists())
print("  QM =", res.reduced.to_lists())

Z6 = Ring.mod(6)
N = IndexedMatrix.from_rows(Z6, [[2], [3]])
print("\nsame column over Z/6")
print("  unit pivoting finds ", greedy_unit_pivots(N))
print("  exact capacity      ", unit_column_capacity(N))
print("  brute force over GL ", t_max_bruteforce(N))

D = IndexedMatrix.from_rows(ZZ, [[2, 0], [0, 3]])
print("\ndiag(2, 3) over Z has capacity", unit_column_capacity(D))
