"""Subfields of GF(9) and the larger product F_3 x F_9.

The two coordinates live in different subfields, so the minimum-weight
count jumps between regimes as u moves past d_1 - 1.
"""

from __future__ import annotations

from nestedac import FieldCtx, NestedProduct, count_minwt, min_distance

F = FieldCtx(3, 2)
print("subfield sizes:", F.subfield_sizes)
print("defining polynomial (low to high):", list(F.poly))

A = NestedProduct.from_sizes(F, [3, 9])
for u in range(1, A.K + 1):
    rep = count_minwt(A, u)
    dec = rep.decomposition
    print(f"u={u:2d} j={dec.j} l={dec.ell} delta={min_distance(A, u):2d} |N|={rep.total:5d} per k={rep.per_k}")
