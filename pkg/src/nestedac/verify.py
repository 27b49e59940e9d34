"""Cross-checks between the closed forms, the orbit construction and scans."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

import numpy as np

from .codes import DEFAULT_SCAN_CAP, dimension, exhaustive_min_weight, min_distance, monomial_basis
from .counting import count_minwt, rm_count, rs_count
from .domain import NestedProduct
from .errors import TooLarge
from .gf import FieldCtx
from .groups import DEFAULT_ORBIT_CAP, GroupElem, act_codeword, compose, generators, min_weight_array
from .poly import Codeword

DESK_FIELDS = ((2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2))


def nested_size_sequences(ctx: FieldCtx, max_m: int = 3, max_n: int = 64) -> list[tuple[int, ...]]:
    """Nondecreasing coordinate-size sequences drawn from one subfield chain."""
    sizes = ctx.subfield_sizes
    out = []
    for m in range(1, max_m + 1):
        for seq in itertools.combinations_with_replacement(sizes, m):
            if int(np.prod(seq)) > max_n:
                continue
            degs = [_degree(d, ctx.p) for d in seq]
            if all(b % a == 0 for a, b in zip(degs, degs[1:])):
                out.append(tuple(seq))
    return out


def _degree(d: int, p: int) -> int:
    r = 0
    while d > 1:
        d //= p
        r += 1
    return r


def desk_family(max_m: int = 3, max_n: int = 64, fields=DESK_FIELDS) -> list[NestedProduct]:
    """Every nested product over GF(q), q <= 9, with m <= max_m and n <= max_n."""
    out = []
    for p, R in fields:
        ctx = FieldCtx(p, R)
        for seq in nested_size_sequences(ctx, max_m, max_n):
            out.append(NestedProduct.from_sizes(ctx, seq))
    return out


@dataclass
class VerifyRow:
    u: int
    formula: int
    enumerated: int | None
    scanned: int | None
    mindist: int
    scan_weight: int | None
    specialization: int | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        vals = [v for v in (self.enumerated, self.scanned, self.specialization) if v is not None]
        weights_ok = self.scan_weight is None or self.scan_weight == self.mindist
        return all(v == self.formula for v in vals) and weights_ok and not self.notes


def specialization_count(prod: NestedProduct, u: int) -> int | None:
    """The Reed-Solomon or Reed-Muller count when A is one of those domains."""
    q = prod.ctx.q
    if prod.lam == 1 and prod.block_sizes[0] == q:
        return rm_count(q, u, prod.m)
    if prod.m == 1 and u + 1 <= prod.n:
        return rs_count(q, prod.n, u + 1)
    return None


def _random_element(gens: list[GroupElem], rng: random.Random, prod: NestedProduct) -> GroupElem:
    g = GroupElem.identity(prod)
    for _ in range(rng.randint(1, 8)):
        g = compose(rng.choice(gens), g)
    return g


def verify_u(
    prod: NestedProduct,
    u: int,
    scan_cap: int = DEFAULT_SCAN_CAP,
    orbit_cap: int = DEFAULT_ORBIT_CAP,
    method: str = "auto",
    seed: int | None = 0,
    samples: int = 4,
) -> VerifyRow:
    formula = count_minwt(prod, u).total
    delta = min_distance(prod, u)
    notes = []
    try:
        words = min_weight_array(prod, u, method, orbit_cap)
        enumerated = len(words)
        if enumerated and np.any(np.count_nonzero(words, axis=1) != delta):
            notes.append("enumerated codeword of wrong weight")
    except TooLarge:
        words, enumerated = None, None
    try:
        scan_weight, scanned = exhaustive_min_weight(prod, u, scan_cap)
    except TooLarge:
        scan_weight, scanned = None, None
    if seed is not None and words is not None and len(words) and u >= 1:
        rng = random.Random(seed * 1_000_003 + u)
        gens = generators(prod)
        keys = {row.tobytes() for row in words}
        for _ in range(samples):
            c = Codeword(prod, words[rng.randrange(len(words))])
            img = act_codeword(_random_element(gens, rng, prod), c)
            if img.key() not in keys:
                notes.append("orbit not closed under the group action")
                break
    spec = specialization_count(prod, u) if u >= 1 else None
    return VerifyRow(u, formula, enumerated, scanned, delta, scan_weight, spec, notes)


def verify_range(prod: NestedProduct, us, **kwargs) -> list[VerifyRow]:
    return [verify_u(prod, u, **kwargs) for u in us]


def dimension_matches_basis(prod: NestedProduct, u: int) -> bool:
    return dimension(prod, u) == len(monomial_basis(prod, u))
