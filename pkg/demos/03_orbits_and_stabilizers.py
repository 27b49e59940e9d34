"""Orbit sizes times stabilizer sizes recover the order of the acting group."""

from __future__ import annotations

from nestedac import FieldCtx, NestedProduct, stabilizer_order
from nestedac.groups import aff_group_order, ga_order, orbit_array, seeds

F = FieldCtx(2, 2)
A = NestedProduct.from_sizes(F, [2, 2, 4])
print(f"|Aff(A)| = {aff_group_order(A)}, |G_A| = {ga_order(A)}")

for u in range(1, A.K + 1):
    for k, omega, h in seeds(A, u, all_k=True):
        c = h.evaluate()
        o, s = len(orbit_array(c)), stabilizer_order(c)
        print(f"u={u} k={k} Omega={sorted(omega)}  orbit {o:4d} x stabilizer {s:5d} = {o * s}")
