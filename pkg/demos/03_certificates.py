"""Certificates for matrices with no invertible transversal submatrix.

Every block of columns may contribute at most one column to a square
submatrix.  When none of those submatrices is invertible, `certify` returns
an invertible Q and a row set A' such that QM is in reduced echelon form and
fewer than |A'| blocks have a column whose entries on A' contain a unit but
no non-zero non-unit.
"""

from ringcert import (
    ColumnPartition, HypothesisFailure, IndexedMatrix, Ring, certify, to_theorem_form,
    verify_certificate,
)
from ringcert.engine import build_connection_graph, distance_reducing_swap
from ringcert.transversal import make_admissible

GF2 = Ring.gf(2)


def show(label, M, part):
    cert = certify(M, part)
    print(f"{label}: branch {cert.branch.value}, A' = {cert.a_prime}, m = {cert.m}")
    print("  QM =", (cert.Q @ M).to_lists())
    print("  independent check:", verify_certificate(M, part, cert).diagnostic)
    Q2, m = to_theorem_form(cert, M)
    print(f"  with A' moved to the bottom, the last {m} rows of Q'M are", (Q2 @ M).to_lists()[-m:])


show("all-ones", IndexedMatrix.from_rows(GF2, [[1, 1, 1, 1], [1, 1, 1, 1]]),
     ColumnPartition([[1, 2], [3, 4]]))
show("unit columns in one block", IndexedMatrix.from_rows(GF2, [[1, 0, 0], [0, 1, 0]]),
     ColumnPartition([[1, 2], [3]]))

try:
    certify(IndexedMatrix.identity(GF2, [1, 2]), ColumnPartition([[1], [2]]))
except HypothesisFailure as exc:
    print("\nidentity with singleton blocks: invertible transversal on columns", exc.columns)

# A set of the second kind and the swap that shortens its connection distance.
Z4 = Ring.mod(4)
M = IndexedMatrix.from_rows(Z4, [[1, 3, 0, 2, 1, 2], [1, 1, 3, 1, 3, 2], [1, 3, 3, 0, 3, 1]])
part = ColumnPartition([[1, 4], [3, 6], [2, 5]])
adm = make_admissible(M, part, (1, 3, 6))
graph = build_connection_graph(M, part, adm)
print(f"\nP = {adm.columns}: weights {adm.weights}, connection distance {graph.distance}")
new, new_graph, path, removed = distance_reducing_swap(M, part, adm, graph)
print(f"swap along {[tuple(a) for a in path]}: drop column {removed}, add {path[-1].column}")
print(f"P' = {new.columns}: weights {new.weights}, connection distance {new_graph.distance}")
