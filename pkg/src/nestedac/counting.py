"""Closed-form counts of minimum-weight codewords.

All counts are Python ints, so nothing overflows.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb, prod as _prod

from .domain import NestedProduct, UDecomposition
from .errors import BadParameters, DegreeOutOfRange, KOutOfRange


def q_binomial(m: int, t: int, q: int) -> int:
    """Number of t-dimensional subspaces of F_q^m (0 outside 0 <= t <= m)."""
    if t < 0 or t > m:
        return 0
    num = den = 1
    for i in range(t):
        num *= q ** (m - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


@dataclass(frozen=True)
class MinWtReport:
    """|N_q(u, A)| together with its split over seed coordinates.

    ``per_k`` maps the representative coordinate of each contributing block
    to |N^{(k)}|.  ``k0`` follows the tabulated convention: in the
    ell = d_{j+1} - 1 regime the only seed is k = j + 1 and that is what
    is reported; ``decomposition.k0`` keeps the defining value.
    """

    u: int
    q: int
    decomposition: UDecomposition | None
    per_k: dict[int, int] = field(default_factory=dict)
    total: int = 0

    @property
    def j(self) -> int | None:
        return None if self.decomposition is None else self.decomposition.j

    @property
    def ell(self) -> int | None:
        return None if self.decomposition is None else self.decomposition.ell

    @property
    def k0(self) -> int | None:
        dec = self.decomposition
        if dec is None:
            return None
        return dec.j + 1 if dec.top else dec.k0

    def to_json(self) -> dict:
        return {
            "u": self.u,
            "j": self.j,
            "ell": self.ell,
            "k0": self.k0,
            "per_k": {str(k): str(v) for k, v in self.per_k.items()},
            "total": str(self.total),
        }


def _top_count(prod: NestedProduct, dec: UDecomposition) -> int:
    q = prod.ctx.q
    r = dec.r
    return (
        (q - 1)
        * _prod(prod.d[: dec.j + 1])
        * q_binomial(prod.mu[r - 1], dec.j + 1 - prod.s[r - 1], dec.d_next)
    )


def count_minwt_k(prod: NestedProduct, dec: UDecomposition, k: int) -> int:
    """|N^{(k)}(u, A)| for k0 <= k <= j+1 in the ell < d_{j+1} - 1 regime."""
    if dec.top:
        raise KOutOfRange("the ell = d_{j+1} - 1 regime has no per-coordinate split")
    if not dec.k0 <= k <= dec.j + 1:
        raise KOutOfRange(f"k={k} outside [{dec.k0}, {dec.j + 1}]")
    q = prod.ctx.q
    j1 = dec.j + 1
    r = dec.r
    dk = prod.d[k - 1]
    tk = prod.block_of(k)
    others = _prod(d for i, d in enumerate(prod.d[:j1], start=1) if i != k)
    choose = comb(dk, dec.target)
    if tk == r:
        return (
            (q - 1)
            * others
            * q_binomial(prod.mu[r - 1], dec.j - prod.s[r - 1], dec.d_next)
            * q_binomial(prod.s[r] - dec.j, 1, dk)
            * choose
        )
    upper = _prod(prod.d[prod.s[tk]:j1])
    return (
        (q - 1)
        * others
        * upper
        * q_binomial(prod.mu[r - 1], j1 - prod.s[r - 1], dec.d_next)
        * q_binomial(prod.mu[tk - 1], 1, dk)
        * choose
    )


def count_minwt(prod: NestedProduct, u: int) -> MinWtReport:
    q = prod.ctx.q
    if u == -1:
        return MinWtReport(u, q, None, {}, 0)
    if u == 0:
        return MinWtReport(u, q, None, {}, q - 1)
    if not 1 <= u <= prod.K:
        raise DegreeOutOfRange(f"u={u} outside [-1, {prod.K}]")
    dec = prod.decompose_u(u)
    if dec.top:
        total = _top_count(prod, dec)
        return MinWtReport(u, q, dec, {dec.j + 1: total}, total)
    t0 = prod.block_of(dec.k0)
    ks = [prod.s[t] for t in range(t0, dec.r)] + [dec.j + 1]
    per_k = {k: count_minwt_k(prod, dec, k) for k in ks}
    return MinWtReport(u, q, dec, per_k, sum(per_k.values()))


def rs_count(q: int, n: int, k_dim: int) -> int:
    """Minimum-weight codewords of a Reed-Solomon code RS_q(k, n)."""
    if not 1 <= k_dim <= n <= q:
        raise BadParameters(f"need 1 <= k <= n <= q, got k={k_dim}, n={n}, q={q}")
    return (q - 1) * comb(n, n - k_dim + 1)


def rm_count(q: int, u: int, m: int) -> int:
    """Minimum-weight codewords of the generalized Reed-Muller code RM_q(u, m)."""
    if m < 1 or q < 2:
        raise BadParameters(f"need m >= 1 and q >= 2, got m={m}, q={q}")
    if not 0 <= u <= m * (q - 1):
        raise DegreeOutOfRange(f"u={u} outside [0, {m * (q - 1)}]")
    t, s = divmod(u, q - 1)
    base = (q - 1) * q**t * q_binomial(m, t, q)
    if s == 0:
        return base
    return base * q_binomial(m - t, 1, q) * comb(q, s)
