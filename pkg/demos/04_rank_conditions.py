"""Over a field, independent partial transversals and the null-row form.

A size-k partial transversal with independent columns exists exactly when
every family of blocks has enough rank.  When no full one exists, a
violating family yields Q whose last m rows of QM vanish on all but at most
m - 1 blocks.
"""

from ringcert import ColumnPartition, IndexedMatrix, Ring, corollary_nullrow_form, rado_condition

GF3 = Ring.gf(3)
M = IndexedMatrix.from_rows(GF3, [[1, 2, 0, 1, 0], [2, 1, 0, 2, 0], [0, 0, 1, 0, 1]])
part = ColumnPartition([[1, 2], [3, 5], [4]])

for k in range(4):
    r = rado_condition(M, part, k)
    if r.holds:
        print(f"k = {k}: independent transversal {r.witness_transversal}")
    else:
        print(f"k = {k}: blocks {r.violating_family} have too little rank")

form = corollary_nullrow_form(M, part)
print("\nnull-row form: m =", form.m)
print("QM =", (form.Q @ M).to_lists())
print("blocks still non-zero in the last rows:", form.nonnull_blocks)
