"""When every coordinate uses the full field the codes are Reed-Muller codes,
and a single coordinate gives Reed-Solomon codes. The general count agrees
with the classical formulas and with brute-force scans."""

from __future__ import annotations

from nestedac import FieldCtx, NestedProduct, count_minwt, rm_count, rs_count
from nestedac.codes import generator_matrix, min_weight_count, rs_generator, scan_histogram

F = FieldCtx(3)
A = NestedProduct.from_sizes(F, [3, 3])
print("Reed-Muller over GF(3), m = 2")
for u in range(0, A.K + 1):
    _, scanned = min_weight_count(scan_histogram(F, generator_matrix(A, u)))
    print(f"  u={u}: general {count_minwt(A, u).total:3d}  classical {rm_count(3, u, 2):3d}  scan {scanned:3d}")

F = FieldCtx(2, 3)
print("Reed-Solomon over GF(8), n = 8")
for k in range(1, 9):
    _, scanned = min_weight_count(scan_histogram(F, rs_generator(F, 8, k)))
    general = count_minwt(NestedProduct.from_sizes(F, [8]), k - 1).total
    print(f"  k={k}: general {general:4d}  classical {rs_count(8, 8, k):4d}  scan {scanned:4d}")
