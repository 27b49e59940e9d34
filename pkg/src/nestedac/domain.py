"""Nested Cartesian domains A = F_1^mu_1 x ... x F_lambda^mu_lambda.

Coordinates and blocks are numbered from 1 in every public signature,
following the usual notation (k, t_k, s_t, j + 1, k0); tuples and arrays
stay 0-based.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from .errors import ACError, DegreeOutOfRange, EmptyBlock, IndexOutOfRange, NotASubfieldSize, NotNested
from .gf import FieldCtx


def _log_p(d: int, p: int) -> int:
    r = 0
    while d > 1:
        d //= p
        r += 1
    return r


@dataclass(frozen=True)
class UDecomposition:
    """u = sum_{i<=j} (d_i - 1) + ell, with 0 <= j < m and 0 < ell <= d_{j+1} - 1.

    ``r`` is the block of coordinate j + 1, ``k0`` the least k with
    d_k >= d_{j+1} - ell, and ``d_next`` is d_{j+1}.
    """

    u: int
    j: int
    ell: int
    r: int
    k0: int
    d_next: int

    @property
    def top(self) -> bool:
        """True in the ell = d_{j+1} - 1 regime."""
        return self.ell == self.d_next - 1

    @property
    def target(self) -> int:
        """d_{j+1} - ell, the number of surviving values on coordinate k."""
        return self.d_next - self.ell


class NestedProduct:
    """The domain A over ``ctx`` given as (subfield size, multiplicity) blocks."""

    def __init__(self, ctx: FieldCtx, blocks: Sequence[tuple[int, int]]):
        blocks = [(int(d), int(mu)) for d, mu in blocks]
        if not blocks:
            raise EmptyBlock("at least one block is required")
        for i, (d, mu) in enumerate(blocks):
            if mu < 1:
                raise EmptyBlock(f"block {i + 1} has multiplicity {mu}")
            if d not in ctx.subfield_sizes:
                raise NotASubfieldSize(f"{d} is not a subfield size of GF({ctx.q})")
            if d < 2:
                raise NotASubfieldSize("coordinate sets need at least two elements")
        for (d1, _), (d2, _) in zip(blocks, blocks[1:]):
            if d2 <= d1:
                raise NotNested(f"block sizes must strictly increase, got {d1} then {d2}")
            # d = p^r; nested subfields need r1 | r2
            if _log_p(d2, ctx.p) % _log_p(d1, ctx.p):
                raise NotNested(f"GF({d1}) is not a subfield of GF({d2})")
        self.ctx = ctx
        self.blocks = tuple(blocks)
        self.lam = len(blocks)
        self.mu = tuple(mu for _, mu in blocks)
        self.block_sizes = tuple(d for d, _ in blocks)
        s = [0]
        for mu in self.mu:
            s.append(s[-1] + mu)
        self.s = tuple(s)
        self.m = s[-1]
        self.d = tuple(d for d, mu in blocks for _ in range(mu))
        self.n = int(np.prod(self.d, dtype=object))
        self.K = sum(d - 1 for d in self.d)

    @classmethod
    def from_sizes(cls, ctx: FieldCtx, sizes: Sequence[int]) -> "NestedProduct":
        """Build from per-coordinate sizes, e.g. ``[2, 2, 4]``."""
        sizes = [int(x) for x in sizes]
        if not sizes:
            raise EmptyBlock("empty product")
        if any(b < a for a, b in zip(sizes, sizes[1:])):
            raise NotNested(f"coordinate sizes must be nondecreasing: {sizes}")
        blocks: list[tuple[int, int]] = []
        for d in sizes:
            if blocks and blocks[-1][0] == d:
                blocks[-1] = (d, blocks[-1][1] + 1)
            else:
                blocks.append((d, 1))
        return cls(ctx, blocks)

    @classmethod
    def parse(cls, ctx: FieldCtx, spec: str) -> "NestedProduct":
        try:
            sizes = [int(x) for x in spec.split(",") if x.strip()]
        except ValueError:
            raise ACError(f"bad product spec {spec!r}; expected e.g. 2,2,4") from None
        return cls.from_sizes(ctx, sizes)

    def __repr__(self) -> str:
        return f"NestedProduct(GF({self.ctx.q}), d={self.d})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, NestedProduct) and self.ctx == other.ctx and self.d == other.d

    def __hash__(self) -> int:
        return hash((self.ctx, self.d))

    @property
    def spec(self) -> str:
        return ",".join(map(str, self.d))

    # -- points -----------------------------------------------------------

    @cached_property
    def point_array(self) -> np.ndarray:
        """n x m array of element codes, last coordinate varying fastest."""
        cols = [np.array(self.ctx.subfield_elements(d), dtype=np.int64) for d in self.d]
        grids = np.meshgrid(*cols, indexing="ij")
        arr = np.stack([g.reshape(-1) for g in grids], axis=1)
        arr.setflags(write=False)
        return arr

    def points(self) -> list[tuple[int, ...]]:
        return [tuple(int(x) for x in row) for row in self.point_array]

    @cached_property
    def _strides(self) -> np.ndarray:
        strides = np.ones(self.m, dtype=np.int64)
        for i in range(self.m - 2, -1, -1):
            strides[i] = strides[i + 1] * self.d[i + 1]
        return strides

    @cached_property
    def _positions(self) -> list[np.ndarray]:
        return [self.ctx.subfield_position(d) for d in self.d]

    def point_index(self, pts) -> np.ndarray:
        """Indices of points (array of shape (..., m)) in the point order.

        Entries outside their coordinate's subfield give -1.
        """
        pts = np.asarray(pts, dtype=np.int64)
        idx = np.zeros(pts.shape[:-1], dtype=np.int64)
        bad = np.zeros(pts.shape[:-1], dtype=bool)
        for i in range(self.m):
            pos = self._positions[i][pts[..., i]]
            bad |= pos < 0
            idx += pos * self._strides[i]
        return np.where(bad, -1, idx)

    def contains(self, point: Sequence[int]) -> bool:
        return len(point) == self.m and all(self.ctx.in_subfield(int(x), d) for x, d in zip(point, self.d))

    # -- block bookkeeping ------------------------------------------------

    def block_of(self, k: int) -> int:
        """The block t_k with s_{t-1} < k <= s_t (k is 1-based)."""
        if not 1 <= k <= self.m:
            raise IndexOutOfRange(f"coordinate {k} outside [1, {self.m}]")
        for t in range(1, self.lam + 1):
            if k <= self.s[t]:
                return t
        raise AssertionError

    def coord_size(self, k: int) -> int:
        if not 1 <= k <= self.m:
            raise IndexOutOfRange(f"coordinate {k} outside [1, {self.m}]")
        return self.d[k - 1]

    def decompose_u(self, u: int) -> UDecomposition:
        if not 1 <= u <= self.K:
            raise DegreeOutOfRange(f"u={u} outside [1, {self.K}]")
        acc = 0
        for j in range(self.m):
            dj1 = self.d[j]
            if u <= acc + dj1 - 1:
                ell = u - acc
                target = dj1 - ell
                k0 = next(k for k in range(1, j + 2) if self.d[k - 1] >= target)
                return UDecomposition(u=u, j=j, ell=ell, r=self.block_of(j + 1), k0=k0, d_next=dj1)
            acc += dj1 - 1
        raise AssertionError
