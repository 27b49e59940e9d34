"""The affine Cartesian code AC_q(u, A): parameters, dual, brute-force scans."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb
from typing import Iterator, Sequence

import numpy as np

from .domain import NestedProduct
from .errors import DegreeOutOfRange, TooLarge
from .gf import FieldCtx
from .poly import ReducedPoly

DEFAULT_SCAN_CAP = 2**24


def monomial_basis(prod: NestedProduct, u: int) -> list[tuple[int, ...]]:
    """Exponent vectors with e_i <= d_i - 1 and total degree <= u."""
    if u < 0:
        return []
    out = [e for e in itertools.product(*(range(d) for d in prod.d)) if sum(e) <= u]
    out.sort(key=lambda e: (sum(e), e))
    return out


def _binom(a: int, b: int) -> int:
    # zero whenever the lower index is negative
    if b < 0 or a < 0 or b > a:
        return 0
    return comb(a, b)


def dimension(prod: NestedProduct, u: int) -> int:
    """Alternating binomial sum over subsets of the coordinate sizes."""
    if not 0 <= u <= prod.K:
        raise DegreeOutOfRange(f"u={u} outside [0, {prod.K}]")
    m = prod.m
    total = 0
    for size in range(m + 1):
        for subset in itertools.combinations(prod.d, size):
            D = sum(subset)
            total += (-1) ** size * _binom(m + u - D, u - D)
    return total


def min_distance(prod: NestedProduct, u: int) -> int:
    if not 0 <= u <= prod.K:
        raise DegreeOutOfRange(f"u={u} outside [0, {prod.K}]")
    if u == 0:
        return prod.n
    dec = prod.decompose_u(u)
    tail = 1
    for d in prod.d[dec.j + 1:]:
        tail *= d
    return dec.target * tail


@dataclass(frozen=True)
class CodeSummary:
    prod: NestedProduct
    u: int
    n: int
    dim: int
    mindist: int


def code_summary(prod: NestedProduct, u: int) -> CodeSummary:
    return CodeSummary(prod, u, prod.n, dimension(prod, u), min_distance(prod, u))


def generator_matrix(prod: NestedProduct, u: int) -> np.ndarray:
    """Rows are the evaluations of the monomial basis of degree <= u."""
    rows = [ReducedPoly.monomial(prod, e).evaluate().values for e in monomial_basis(prod, u)]
    if not rows:
        return np.zeros((0, prod.n), dtype=prod.ctx.dtype)
    return np.stack(rows)


def dual_scaling(prod: NestedProduct) -> np.ndarray:
    """w_j = (prod_i g_i'(P_j))^{-1} with g_i(X) = X^{d_i} - X.

    g_i'(X) = d_i X^{d_i - 1} - 1, with d_i read in characteristic p.
    """
    F = prod.ctx
    pts = prod.point_array
    acc = np.ones(prod.n, dtype=np.int64)
    for i, d in enumerate(prod.d):
        lead = F.from_int(d)
        deriv = F.add_arr(F.mul_arr(lead, F.pow_arr(pts[:, i], d - 1)), F.neg_one)
        acc = F.mul_arr(acc, deriv)
    if np.any(acc == 0):
        raise AssertionError("g' vanishes on A")
    return F.pow_arr(acc, -1)


def dual_generator(prod: NestedProduct, u: int) -> np.ndarray:
    """Generator rows of AC(u)^perp as w-scaled rows of AC(K - u - 1)."""
    F = prod.ctx
    G = generator_matrix(prod, prod.K - u - 1)
    return F.mul_arr(G, dual_scaling(prod)[None, :]).astype(F.dtype) if len(G) else G


# ---------------------------------------------------------------------------
# brute-force scans

class _VecArith:
    """Addition on the additive (base-p digit) encoding of field elements."""

    def __init__(self, ctx: FieldCtx):
        self.ctx = ctx
        p, q = ctx.p, ctx.q
        self.dtype = ctx.dtype
        self.table = None
        if p != 2 and q <= 256:
            a = np.arange(q)
            self.table = self._digit_add(a[:, None], a[None, :]).astype(self.dtype)

    def _digit_add(self, a, b):
        p, R = self.ctx.p, self.ctx.R
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        scale = 1
        for _ in range(R):
            out += ((a // scale % p + b // scale % p) % p) * scale
            scale *= p
        return out

    def add(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.ctx.p == 2:
            return np.bitwise_xor(a, b)
        if self.table is not None:
            return self.table[a, b]
        return self._digit_add(a, b).astype(self.dtype)

    def scaled_rows(self, G: np.ndarray) -> np.ndarray:
        """vec(c * row) for every row and every field code c: shape (k, q, n)."""
        F = self.ctx
        codes = np.arange(F.q)
        prod = F.mul_arr(codes[None, :, None], np.asarray(G, dtype=np.int64)[:, None, :])
        return F.code_to_vec[prod].astype(self.dtype)


def _span_chunks(arith: _VecArith, scaled: np.ndarray, n: int, chunk: int = 2**16) -> Iterator[np.ndarray]:
    """Every vector of the span of the rows behind ``scaled``, exactly once."""
    k = scaled.shape[0]
    q = arith.ctx.q
    h = 0
    while h < k and q ** (h + 1) <= chunk:
        h += 1
    head = np.zeros((1, n), dtype=arith.dtype)
    for i in range(h):
        head = arith.add(head[None, :, :], scaled[i][:, None, :]).reshape(-1, n)
    tail = list(range(h, k))
    for coeffs in itertools.product(range(q), repeat=len(tail)):
        t = np.zeros(n, dtype=arith.dtype)
        for i, c in zip(tail, coeffs):
            if c:
                t = arith.add(t, scaled[i][c])
        yield arith.add(head, t[None, :])


def _direct_histogram(ctx: FieldCtx, G: np.ndarray, n: int) -> list[int]:
    arith = _VecArith(ctx)
    k = G.shape[0]
    hist = np.zeros(n + 1, dtype=np.int64)
    if k:
        scaled = arith.scaled_rows(G)
        for lead in range(k):
            base = scaled[lead][1]
            for block in _span_chunks(arith, scaled[lead + 1:], n):
                v = arith.add(block, base[None, :])
                hist += np.bincount(np.count_nonzero(v, axis=1), minlength=n + 1)
    out = [int(x) * (ctx.q - 1) for x in hist]
    out[0] += 1
    return out


def krawtchouk(i: int, j: int, n: int, q: int) -> int:
    return sum((-1) ** s * (q - 1) ** (i - s) * comb(j, s) * comb(n - j, i - s) for s in range(i + 1))


def macwilliams(dual_hist: Sequence[int], n: int, q: int) -> list[int]:
    """Weight distribution of C from that of its dual (exact integers)."""
    size = sum(dual_hist)
    out = []
    for i in range(n + 1):
        num = sum(b * krawtchouk(i, j, n, q) for j, b in enumerate(dual_hist) if b)
        if num % size:
            raise AssertionError("MacWilliams transform is not integral")
        out.append(num // size)
    return out


def scan_histogram(ctx: FieldCtx, G: np.ndarray, cap: int = DEFAULT_SCAN_CAP, route: str = "auto") -> list[int]:
    """Weight histogram (index = weight) of the row space of G, by brute force.

    ``route`` is "direct" (enumerate the code), "dual" (enumerate a
    null-space basis of G and apply MacWilliams) or "auto".
    """
    G = np.asarray(G)
    n = G.shape[1]
    F = ctx
    k = F.rank(G.tolist()) if len(G) else 0
    if k < len(G):
        G = np.array(F.row_reduce(G.tolist())[0], dtype=np.int64)
    direct_ok = F.q**k <= cap
    dual_ok = F.q ** (n - k) <= cap
    if route == "auto":
        route = "direct" if direct_ok or not dual_ok else "dual"
        if not direct_ok and not dual_ok:
            raise TooLarge(f"neither q^{k} nor q^{n - k} codewords fit the scan cap {cap}")
    if route == "direct":
        if not direct_ok:
            raise TooLarge(f"{F.q}^{k} codewords exceed the scan cap {cap}")
        return _direct_histogram(F, G, n)
    if route == "dual":
        if not dual_ok:
            raise TooLarge(f"{F.q}^{n - k} dual codewords exceed the scan cap {cap}")
        H = np.array(F.nullspace(G.tolist(), n), dtype=np.int64).reshape(-1, n)
        return macwilliams(_direct_histogram(F, H, n), n, F.q)
    raise ValueError(f"unknown route {route!r}")


def _as_dict(hist: Sequence[int]) -> dict[int, int]:
    return {w: c for w, c in enumerate(hist) if c}


def weight_distribution(prod: NestedProduct, u: int, cap: int = DEFAULT_SCAN_CAP, route: str = "auto") -> dict[int, int]:
    """Full weight histogram of AC_q(u, A), including weight 0."""
    return _as_dict(scan_histogram(prod.ctx, generator_matrix(prod, u), cap, route))


def exhaustive_min_weight(prod: NestedProduct, u: int, cap: int = DEFAULT_SCAN_CAP, route: str = "auto") -> tuple[int, int]:
    """(minimum nonzero weight, number of codewords of that weight)."""
    dist = weight_distribution(prod, u, cap, route)
    w = min(x for x in dist if x > 0)
    return w, dist[w]


def rs_generator(ctx: FieldCtx, n: int, k: int) -> np.ndarray:
    """RS_q(k, n) evaluated at the first n elements 0, 1, g, g^2, ..."""
    pts = np.arange(n)
    return np.stack([ctx.pow_arr(pts, e) for e in range(k)]).astype(ctx.dtype)


def min_weight_count(hist: Sequence[int]) -> tuple[int, int]:
    w = next(i for i, c in enumerate(hist) if i > 0 and c)
    return w, hist[w]
