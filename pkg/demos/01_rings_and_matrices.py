"""Arithmetic over Z, Z/n, GF(p) and Q, and labelled matrices on top of it."""

from fractions import Fraction

from ringcert import QQ, ZZ, IndexedMatrix, Ring

Z6 = Ring.mod(6)

print("In Z/6, 2 * 3 =", Z6(2) * Z6(3))
print("5 is a unit in Z/6 with inverse", Z6(5).try_inverse())
print("2 is a unit in Z/6?", Z6(2).is_unit())
print("1/2 + 1/3 in Q =", QQ(Fraction(1, 2)) + QQ(Fraction(1, 3)))

# Rows and columns keep their labels through submatrices.
M = IndexedMatrix(ZZ, rows=[1, 2, 5], cols=[2, 4, 7], data=[[1, 1, 0], [1, 0, 3], [0, 2, 1]])
sub = M.submatrix([2, 5], [4, 7])
print("\nM[{2,5},{4,7}] has rows", sub.rows, "and cols", sub.cols)
print("its determinant is", sub.determinant())

A = IndexedMatrix.from_rows(ZZ, [[1, 1], [1, 0]])
print("\ninverse of [[1,1],[1,0]] over Z:", A.inverse().to_lists())

# Over Z/6 a non-zero determinant is not enough: it has to be a unit.
B = IndexedMatrix.from_rows(Z6, [[2, 1], [1, 2]])
print("det [[2,1],[1,2]] over Z/6 =", B.determinant(), "-> invertible?", B.is_invertible())
