"""The affine group of a nested domain and its action on codewords.

G is the group of invertible block-lower-triangular matrices whose row i
has entries in the subfield of coordinate i and vanishes past column
s_{t_i}.  Aff(A) = {X -> MX + b : M in G, b in A}, and the product group
G_A = GF(q)^* x Aff(A) acts on codewords by (gamma, sigma) . c_f =
gamma * c_{f o sigma}.

Minimum-weight codewords are produced as G_A-orbits of the seed
polynomials h_k^Omega.  Orbits are computed either by applying every
element of Aff(A) through precomputed point permutations ("group") or by
breadth-first closure under a generating set ("closure").
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterable, Iterator, Sequence

import numpy as np

from .domain import NestedProduct, UDecomposition
from .errors import DegreeOutOfRange, InvalidTransform, KOutOfRange, OmegaNotInSubfield, SizeOutOfRange, TooLarge
from .gf import FieldCtx
from .poly import Codeword, ReducedPoly, build_h

DEFAULT_ORBIT_CAP = 10**8
# largest |Aff(A)| for which the full permutation table is materialized
GROUP_TABLE_LIMIT = 250_000


# ---------------------------------------------------------------------------
# the matrix group G

def _row_block(prod: NestedProduct, i: int) -> int:
    """Block index t_i for 0-based row i."""
    return prod.block_of(i + 1)


def is_in_G(prod: NestedProduct, M) -> bool:
    F = prod.ctx
    try:
        M = np.asarray(M, dtype=np.int64)
    except (TypeError, ValueError):
        return False
    m = prod.m
    if M.shape != (m, m) or np.any(M < 0) or np.any(M >= F.q):
        return False
    for i in range(m):
        t = _row_block(prod, i)
        limit = prod.s[t]
        d = prod.d[i]
        for j in range(m):
            x = int(M[i, j])
            if j >= limit and x:
                return False
            if not F.in_subfield(x, d):
                return False
    return F.rank(M.tolist()) == m


def aff_group_order(prod: NestedProduct) -> int:
    total = 1
    for i in range(1, prod.lam + 1):
        d = prod.block_sizes[i - 1]
        mu = prod.mu[i - 1]
        total *= d ** (mu * (prod.s[i - 1] + 1))
        for t in range(mu):
            total *= d**mu - d**t
    return total


def g_order(prod: NestedProduct) -> int:
    """|G| = |Aff(A)| / |A|."""
    return aff_group_order(prod) // prod.n


def ga_order(prod: NestedProduct) -> int:
    """|G_A| = (q - 1) |Aff(A)|."""
    return (prod.ctx.q - 1) * aff_group_order(prod)


def _vec_add(F: FieldCtx, a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(F.add(x, y) for x, y in zip(a, b))


def _gl(F: FieldCtx, d: int, mu: int) -> list[tuple[tuple[int, ...], ...]]:
    """All of GL(mu, F_d) as tuples of rows."""
    elems = F.subfield_elements(d)
    vectors = list(itertools.product(elems, repeat=mu))
    out: list[tuple[tuple[int, ...], ...]] = []

    def rec(rows: list[tuple[int, ...]], span: frozenset) -> None:
        if len(rows) == mu:
            out.append(tuple(rows))
            return
        for v in vectors:
            if v in span:
                continue
            if len(rows) + 1 < mu:
                scaled = [tuple(F.mul(c, x) for x in v) for c in elems]
                new_span = frozenset(_vec_add(F, s, w) for s in span for w in scaled)
            else:
                new_span = span
            rec(rows + [v], new_span)

    rec([], frozenset({(0,) * mu}))
    return out


def enumerate_G(prod: NestedProduct, cap: int | None = None) -> Iterator[np.ndarray]:
    """Every element of G exactly once, as read-only m x m code arrays."""
    size = g_order(prod)
    if cap is not None and size > cap:
        raise TooLarge(f"|G| = {size} exceeds cap {cap}")
    F = prod.ctx
    m = prod.m
    per_block = []
    for t in range(1, prod.lam + 1):
        d, mu, left = prod.block_sizes[t - 1], prod.mu[t - 1], prod.s[t - 1]
        fills = list(itertools.product(F.subfield_elements(d), repeat=mu * left))
        per_block.append((_gl(F, d, mu), fills, mu, left))
    choices = [itertools.product(gl, fills) for gl, fills, _, _ in per_block]
    for combo in itertools.product(*[list(c) for c in choices]):
        M = np.zeros((m, m), dtype=np.int64)
        for t, ((diag, fill), (_, _, mu, left)) in enumerate(zip(combo, per_block), start=1):
            r0 = prod.s[t - 1]
            if left:
                M[r0:r0 + mu, :left] = np.asarray(fill, dtype=np.int64).reshape(mu, left)
            M[r0:r0 + mu, r0:r0 + mu] = np.asarray(diag, dtype=np.int64)
        M.setflags(write=False)
        yield M


# ---------------------------------------------------------------------------
# affine maps and group elements

def _matvec(F: FieldCtx, M: np.ndarray, v: Sequence[int]) -> list[int]:
    return [F.sum(F.mul(int(M[i, j]), int(v[j])) for j in range(len(v))) for i in range(M.shape[0])]


def _matmul(F: FieldCtx, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    m = A.shape[0]
    out = np.zeros((m, m), dtype=np.int64)
    for i in range(m):
        for j in range(m):
            out[i, j] = F.sum(F.mul(int(A[i, k]), int(B[k, j])) for k in range(m))
    return out


class AffineTransform:
    """sigma(X) = M X + b restricted to A, with M in G and b in A."""

    __slots__ = ("prod", "matrix", "shift", "_perm")

    def __init__(self, prod: NestedProduct, matrix, shift=None, check: bool = True):
        M = np.array(matrix, dtype=np.int64)
        b = np.zeros(prod.m, dtype=np.int64) if shift is None else np.array(shift, dtype=np.int64)
        if check:
            if not is_in_G(prod, M):
                raise InvalidTransform("matrix is not block lower triangular over the subfield tower")
            if b.shape != (prod.m,) or not prod.contains(b.tolist()):
                raise InvalidTransform("shift is not a point of A")
        M.setflags(write=False)
        b.setflags(write=False)
        self.prod = prod
        self.matrix = M
        self.shift = b
        self._perm = None

    @classmethod
    def identity(cls, prod: NestedProduct) -> "AffineTransform":
        return cls(prod, np.eye(prod.m, dtype=np.int64), check=False)

    @classmethod
    def translation(cls, prod: NestedProduct, b) -> "AffineTransform":
        return cls(prod, np.eye(prod.m, dtype=np.int64), b)

    def __call__(self, point: Sequence[int]) -> tuple[int, ...]:
        F = self.prod.ctx
        y = _matvec(F, self.matrix, [int(x) for x in point])
        return tuple(F.add(a, int(b)) for a, b in zip(y, self.shift))

    def apply(self, pts) -> np.ndarray:
        """Images of an (..., m) array of points."""
        F = self.prod.ctx
        pts = np.asarray(pts, dtype=np.int64)
        out = np.zeros(pts.shape, dtype=np.int64)
        for i in range(self.prod.m):
            acc = np.full(pts.shape[:-1], self.shift[i], dtype=np.int64)
            for j in range(self.prod.m):
                if self.matrix[i, j]:
                    acc = F.add_arr(acc, F.mul_arr(self.matrix[i, j], pts[..., j]))
            out[..., i] = acc
        return out

    def permutation(self) -> np.ndarray:
        """perm[i] = index of sigma(P_i) in the point order."""
        if self._perm is None:
            perm = self.prod.point_index(self.apply(self.prod.point_array))
            if np.any(perm < 0):
                raise InvalidTransform("transform does not map A into A")
            perm.setflags(write=False)
            self._perm = perm
        return self._perm

    def then(self, other: "AffineTransform") -> "AffineTransform":
        """The map X -> self(other(X))."""
        F = self.prod.ctx
        M = _matmul(F, self.matrix, other.matrix)
        b = [F.add(x, int(y)) for x, y in zip(_matvec(F, self.matrix, other.shift.tolist()), self.shift)]
        return AffineTransform(self.prod, M, b, check=False)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, AffineTransform)
            and self.prod == other.prod
            and np.array_equal(self.matrix, other.matrix)
            and np.array_equal(self.shift, other.shift)
        )

    def __hash__(self) -> int:
        return hash((self.matrix.tobytes(), self.shift.tobytes()))

    def __repr__(self) -> str:
        return f"AffineTransform(M={self.matrix.tolist()}, b={self.shift.tolist()})"


@dataclass(frozen=True)
class GroupElem:
    """(gamma, sigma) in GF(q)^* x Aff(A)."""

    scalar: int
    transform: AffineTransform

    def __post_init__(self):
        if self.scalar == 0:
            raise InvalidTransform("the scalar part must be nonzero")

    @classmethod
    def identity(cls, prod: NestedProduct) -> "GroupElem":
        return cls(1, AffineTransform.identity(prod))

    @property
    def prod(self) -> NestedProduct:
        return self.transform.prod


def compose(g2: GroupElem, g1: GroupElem) -> GroupElem:
    """The element acting as g2 after g1: (gamma2 gamma1, sigma1 o sigma2)."""
    F = g1.prod.ctx
    return GroupElem(F.mul(g2.scalar, g1.scalar), g1.transform.then(g2.transform))


def act(g: GroupElem, f: ReducedPoly) -> ReducedPoly:
    """gamma * f(M X + b), reduced."""
    if g.prod != f.prod:
        raise InvalidTransform("group element and polynomial live on different domains")
    return f.compose_affine(g.transform).scale(g.scalar)


def act_codeword(g: GroupElem, c: Codeword) -> Codeword:
    if g.prod != c.prod:
        raise InvalidTransform("group element and codeword live on different domains")
    F = c.prod.ctx
    return Codeword(c.prod, F.mul_arr(c.values[g.transform.permutation()], g.scalar))


def random_element(prod: NestedProduct, rng: np.random.Generator) -> GroupElem:
    """A uniformly random element of G_A."""
    F = prod.ctx
    m = prod.m
    rows = [np.array(F.subfield_elements(d), dtype=np.int64) for d in prod.d]
    while True:
        M = np.zeros((m, m), dtype=np.int64)
        for i in range(m):
            limit = prod.s[_row_block(prod, i)]
            M[i, :limit] = rng.choice(rows[i], size=limit)
        if F.rank(M.tolist()) == m:
            break
    b = [int(rng.choice(r)) for r in rows]
    return GroupElem(int(rng.integers(1, F.q)), AffineTransform(prod, M, b, check=False))


def generators(prod: NestedProduct) -> list[GroupElem]:
    """A generating set of G_A.

    Diagonal scalings by subfield generators, elementary matrices I + E_ij
    allowed by the block pattern, unit translations, and the scalar g.
    Identity elements (which occur over GF(2)) are dropped.
    """
    F = prod.ctx
    m = prod.m
    out: list[GroupElem] = []
    if F.q > 2:
        out.append(GroupElem(F.primitive, AffineTransform.identity(prod)))
    for i in range(m):
        d = prod.d[i]
        if d > 2:
            M = np.eye(m, dtype=np.int64)
            M[i, i] = F.subfield_generator(d)
            out.append(GroupElem(1, AffineTransform(prod, M)))
    for i in range(m):
        limit = prod.s[_row_block(prod, i)]
        for j in range(limit):
            if j != i:
                M = np.eye(m, dtype=np.int64)
                M[i, j] = 1
                out.append(GroupElem(1, AffineTransform(prod, M)))
    for i in range(m):
        b = [0] * m
        b[i] = 1
        out.append(GroupElem(1, AffineTransform.translation(prod, b)))
    return out


# ---------------------------------------------------------------------------
# permutation tables

@lru_cache(maxsize=8)
def _translation_table(prod: NestedProduct) -> np.ndarray:
    """trans[b, x] = index of P_x + P_b."""
    F = prod.ctx
    P = prod.point_array
    sums = F.add_arr(P[:, None, :], P[None, :, :])
    return prod.point_index(sums).astype(np.int32)


def linear_permutations(prod: NestedProduct, mats: np.ndarray, chunk: int = 4096) -> np.ndarray:
    """lin[g, x] = index of M_g P_x for a stack of matrices in G."""
    F = prod.ctx
    P = prod.point_array
    m = prod.m
    mats = np.asarray(mats, dtype=np.int64).reshape(-1, m, m)
    out = np.empty((len(mats), prod.n), dtype=np.int32)
    for lo in range(0, len(mats), chunk):
        Ms = mats[lo:lo + chunk]
        img = np.zeros((len(Ms), prod.n, m), dtype=np.int64)
        for i in range(m):
            acc = np.zeros((len(Ms), prod.n), dtype=np.int64)
            for j in range(m):
                acc = F.add_arr(acc, F.mul_arr(Ms[:, i, j][:, None], P[None, :, j]))
            img[:, :, i] = acc
        out[lo:lo + chunk] = prod.point_index(img)
    return out


@lru_cache(maxsize=4)
def affine_permutations(prod: NestedProduct, limit: int = GROUP_TABLE_LIMIT) -> np.ndarray:
    """Point permutations of every element of Aff(A), shape (|Aff|, n).

    Row g * n + b is X -> M_g X + P_b with M_g the g-th element of
    enumerate_G.
    """
    size = aff_group_order(prod)
    if size > limit:
        raise TooLarge(f"|Aff(A)| = {size} exceeds the permutation-table limit {limit}")
    mats = np.stack(list(enumerate_G(prod)))
    lin = linear_permutations(prod, mats)
    trans = _translation_table(prod)
    perms = trans[:, lin].transpose(1, 0, 2).reshape(-1, prod.n)
    perms.setflags(write=False)
    return perms


def enumerate_aff(prod: NestedProduct, cap: int | None = None) -> Iterator[AffineTransform]:
    size = aff_group_order(prod)
    if cap is not None and size > cap:
        raise TooLarge(f"|Aff(A)| = {size} exceeds cap {cap}")
    pts = prod.points()
    for M in enumerate_G(prod):
        for b in pts:
            yield AffineTransform(prod, M, b, check=False)


# ---------------------------------------------------------------------------
# one-dimensional stabilizers

def _subfield_ops(ctx: FieldCtx, d: int) -> tuple[list[int], list[int]]:
    elems = ctx.subfield_elements(d)
    return elems, [a for a in elems if a]


def stab_delta_omega(ctx: FieldCtx, d_k: int, omega: Iterable[int]) -> list[tuple[int, int]]:
    """All (a, b) over the size-d_k subfield with a * Omega + b = Omega."""
    omega = frozenset(int(w) for w in omega)
    elems, units = _subfield_ops(ctx, d_k)
    for w in omega:
        if not ctx.in_subfield(w, d_k):
            raise OmegaNotInSubfield(f"{ctx.symbol(w)} is not in GF({d_k})")
    out = []
    for a in units:
        for b in elems:
            if frozenset(ctx.add(ctx.mul(a, w), b) for w in omega) == omega:
                out.append((a, b))
    return out


def orbit_reps_omega(ctx: FieldCtx, d_k: int, s: int) -> list[tuple[tuple[int, ...], int]]:
    """One representative per AGL(1, F_{d_k})-orbit on s-subsets, with orbit size."""
    if not 0 <= s <= d_k:
        raise SizeOutOfRange(f"subset size {s} outside [0, {d_k}]")
    elems, units = _subfield_ops(ctx, d_k)
    seen: set[frozenset] = set()
    reps = []
    for combo in itertools.combinations(elems, s):
        key = frozenset(combo)
        if key in seen:
            continue
        orbit = {frozenset(ctx.add(ctx.mul(a, w), b) for w in combo) for a in units for b in elems}
        seen |= orbit
        reps.append((combo, len(orbit)))
    return reps


def reciprocal_stabilizer_sum(ctx: FieldCtx, d_k: int, s: int) -> Fraction:
    """Sum over orbit representatives of 1 / |Delta_Omega|."""
    return sum((Fraction(1, len(stab_delta_omega(ctx, d_k, rep))) for rep, _ in orbit_reps_omega(ctx, d_k, s)), Fraction(0))


# ---------------------------------------------------------------------------
# orbits

def _void_rows(arr: np.ndarray) -> np.ndarray:
    arr = np.ascontiguousarray(arr)
    return arr.view(np.dtype((np.void, arr.dtype.itemsize * arr.shape[1]))).ravel()


def unique_rows(arr: np.ndarray) -> np.ndarray:
    if len(arr) == 0:
        return arr
    _, idx = np.unique(_void_rows(arr), return_index=True)
    return arr[np.sort(idx)]


def _scalar_closure(F: FieldCtx, rows: np.ndarray) -> np.ndarray:
    if F.q == 2 or len(rows) == 0:
        return rows
    blocks = [F.mul_arr(rows, gamma).astype(rows.dtype) for gamma in range(1, F.q)]
    return unique_rows(np.concatenate(blocks))


def _aff_orbit_group(prod: NestedProduct, values: np.ndarray) -> np.ndarray:
    perms = affine_permutations(prod)
    return unique_rows(values[perms])


def _aff_orbit_closure(prod: NestedProduct, values: np.ndarray, cap: int) -> np.ndarray:
    perms = [g.transform.permutation() for g in generators(prod) if g.scalar == 1]
    seen = {values.tobytes()}
    found = [values[None, :]]
    frontier = values[None, :]
    work = 0
    while len(frontier):
        work += len(frontier) * len(perms)
        if work > cap:
            raise TooLarge(f"orbit closure exceeded {cap} group-element applications")
        images = unique_rows(np.concatenate([frontier[:, p] for p in perms]))
        fresh = [row for row, key in zip(images, _void_rows(images)) if key.tobytes() not in seen]
        for row in fresh:
            seen.add(row.tobytes())
        frontier = np.array(fresh, dtype=values.dtype).reshape(-1, prod.n)
        found.append(frontier)
    return np.concatenate(found)


def choose_method(prod: NestedProduct, method: str = "auto") -> str:
    if method == "auto":
        return "group" if aff_group_order(prod) <= GROUP_TABLE_LIMIT else "closure"
    if method not in ("group", "closure"):
        raise ValueError(f"unknown orbit method {method!r}")
    return method


def orbit_array(c: Codeword, method: str = "auto", cap: int = DEFAULT_ORBIT_CAP) -> np.ndarray:
    """The G_A-orbit of c as a (N, n) array of distinct codewords."""
    prod = c.prod
    method = choose_method(prod, method)
    values = np.ascontiguousarray(c.values)
    if method == "group":
        if ga_order(prod) > cap:
            raise TooLarge(f"|G_A| = {ga_order(prod)} exceeds cap {cap}")
        rows = _aff_orbit_group(prod, values)
    else:
        rows = _aff_orbit_closure(prod, values, cap)
    return _scalar_closure(prod.ctx, rows)


def orbit(c: Codeword, method: str = "auto", cap: int = DEFAULT_ORBIT_CAP) -> set[Codeword]:
    return {Codeword(c.prod, row) for row in orbit_array(c, method, cap)}


def stabilizer_order(c: Codeword) -> int:
    """|{(gamma, sigma) in G_A : gamma * c o sigma = c}|, by brute force."""
    prod = c.prod
    F = prod.ctx
    images = np.asarray(c.values, dtype=np.int64)[affine_permutations(prod)]
    target = np.asarray(c.values, dtype=np.int64)
    total = 0
    for gamma in range(1, F.q):
        total += int(np.count_nonzero(np.all(F.mul_arr(images, gamma) == target, axis=1)))
    return total


# ---------------------------------------------------------------------------
# minimum-weight codewords

def seed_indices(prod: NestedProduct, dec: UDecomposition, all_k: bool = False) -> list[int]:
    """Coordinates k used as seeds: j+1 and the last coordinate of each lower block."""
    if dec.top:
        return list(range(1, dec.j + 2)) if all_k else [dec.j + 1]
    if all_k:
        return list(range(dec.k0, dec.j + 2))
    t0 = prod.block_of(dec.k0)
    return [prod.s[t] for t in range(t0, dec.r)] + [dec.j + 1]


def seeds(
    prod: NestedProduct, u: int, all_k: bool = False, all_omegas: bool = False
) -> list[tuple[int, tuple[int, ...], ReducedPoly]]:
    """(k, Omega, h_k^Omega) for every seed polynomial used at degree u."""
    dec = prod.decompose_u(u)
    F = prod.ctx
    out = []
    for k in seed_indices(prod, dec, all_k):
        dk = prod.d[k - 1]
        if dec.top:
            omegas = [tuple(w for w in F.subfield_elements(dk) if w)]
        elif all_omegas:
            omegas = list(itertools.combinations(F.subfield_elements(dk), dk - dec.target))
        else:
            omegas = [rep for rep, _ in orbit_reps_omega(F, dk, dk - dec.target)]
        for om in omegas:
            out.append((k, om, build_h(prod, dec, k, om)))
    return out


def min_weight_by_k(
    prod: NestedProduct,
    u: int,
    method: str = "auto",
    cap: int = DEFAULT_ORBIT_CAP,
    all_k: bool = False,
    all_omegas: bool = False,
) -> dict[int, np.ndarray]:
    """N^{(k)} as arrays of distinct codewords, keyed by seed coordinate k."""
    out: dict[int, list[np.ndarray]] = {}
    for k, _, h in seeds(prod, u, all_k, all_omegas):
        out.setdefault(k, []).append(orbit_array(h.evaluate(), method, cap))
    return {k: unique_rows(np.concatenate(v)) for k, v in out.items()}


def min_weight_array(
    prod: NestedProduct, u: int, method: str = "auto", cap: int = DEFAULT_ORBIT_CAP
) -> np.ndarray:
    """All minimum-weight codewords of AC_q(u, A) as an (N, n) array."""
    F = prod.ctx
    if u == -1:
        return np.zeros((0, prod.n), dtype=F.dtype)
    if u == 0:
        return np.stack([np.full(prod.n, gamma, dtype=F.dtype) for gamma in range(1, F.q)])
    if not 1 <= u <= prod.K:
        raise DegreeOutOfRange(f"u={u} outside [-1, {prod.K}]")
    parts = min_weight_by_k(prod, u, method, cap)
    return unique_rows(np.concatenate(list(parts.values())))


def enumerate_min_weight(
    prod: NestedProduct, u: int, method: str = "auto", cap: int = DEFAULT_ORBIT_CAP
) -> set[Codeword]:
    return {Codeword(prod, row) for row in min_weight_array(prod, u, method, cap)}
