"""Walk through A = F_2 x F_2 x F_4 inside GF(4).

For each degree u we print the decomposition of u, the code parameters,
the closed-form count of minimum-weight codewords, and then confirm the
count by generating the codewords as group orbits.
"""

from __future__ import annotations

from nestedac import NestedProduct, FieldCtx, code_summary, count_minwt, enumerate_min_weight

F = FieldCtx(2, 2)
A = NestedProduct.from_sizes(F, [2, 2, 4])
print(f"A has n = {A.n} points, blocks {A.block_sizes}, K = {A.K}")

for u in range(1, A.K + 1):
    s = code_summary(A, u)
    rep = count_minwt(A, u)
    words = enumerate_min_weight(A, u)
    split = " + ".join(str(v) for v in rep.per_k.values())
    print(
        f"u={u}  (j,l)=({rep.j},{rep.ell})  |C|=4^{s.dim:<2d} delta={s.mindist}  "
        f"formula {split} = {rep.total}, orbits give {len(words)}"
    )

# every codeword found has exactly the minimum weight
u = 4
weights = {c.weight for c in enumerate_min_weight(A, u)}
print(f"weights seen at u={u}: {sorted(weights)}")
