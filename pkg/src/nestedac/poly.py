"""Reduced polynomials on a nested domain and their evaluation codewords.

A polynomial is kept as a sparse map from exponent tuples to nonzero
field codes, with every exponent e_i < d_i.  Reduction uses
X_i^{d_i} = X_i, which holds on all of F_{t_i}.
"""

from __future__ import annotations

import re
from typing import Iterable, Mapping, Sequence

import numpy as np

from .domain import NestedProduct, UDecomposition
from .errors import ACError, BadOmegaSize, InvalidTransform, KOutOfRange, OmegaNotInSubfield

#: degree of the zero polynomial
ZERO_DEGREE = float("-inf")


def reduce_exponent(e: int, d: int) -> int:
    if e < d:
        return e
    return 1 + (e - 1) % (d - 1)


class ReducedPoly:
    """Canonical representative of a function A -> GF(q)."""

    __slots__ = ("prod", "terms")

    def __init__(self, prod: NestedProduct, terms: Mapping[tuple[int, ...], int] | None = None):
        self.prod = prod
        self.terms: dict[tuple[int, ...], int] = {}
        for exps, c in (terms or {}).items():
            if c == 0:
                continue
            if len(exps) != prod.m or any(not 0 <= e < d for e, d in zip(exps, prod.d)):
                raise ACError(f"exponent vector {exps} is not reduced for d={prod.d}")
            self.terms[tuple(exps)] = int(c)

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, prod: NestedProduct) -> "ReducedPoly":
        return cls(prod)

    @classmethod
    def const(cls, prod: NestedProduct, c: int) -> "ReducedPoly":
        return cls(prod, {(0,) * prod.m: c})

    @classmethod
    def var(cls, prod: NestedProduct, i: int) -> "ReducedPoly":
        """The coordinate function X_i (1-based)."""
        exps = [0] * prod.m
        exps[i - 1] = 1
        return cls(prod, {tuple(exps): 1})

    @classmethod
    def monomial(cls, prod: NestedProduct, exps: Sequence[int], c: int = 1) -> "ReducedPoly":
        return reduce(prod, {tuple(exps): c})

    # -- basic properties -------------------------------------------------

    @property
    def ctx(self):
        return self.prod.ctx

    @property
    def degree(self):
        if not self.terms:
            return ZERO_DEGREE
        return max(sum(e) for e in self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ReducedPoly) and self.prod == other.prod and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.prod, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        return f"ReducedPoly({self.to_text()})"

    # -- arithmetic -------------------------------------------------------

    def _check(self, other: "ReducedPoly") -> None:
        if not isinstance(other, ReducedPoly) or other.prod != self.prod:
            raise ACError("polynomials live on different domains")

    def __add__(self, other: "ReducedPoly") -> "ReducedPoly":
        self._check(other)
        F = self.ctx
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = F.add(out.get(e, 0), c)
        return ReducedPoly(self.prod, out)

    def __neg__(self) -> "ReducedPoly":
        return self.scale(self.ctx.neg_one)

    def __sub__(self, other: "ReducedPoly") -> "ReducedPoly":
        return self + (-other)

    def scale(self, c: int) -> "ReducedPoly":
        F = self.ctx
        return ReducedPoly(self.prod, {e: F.mul(c, v) for e, v in self.terms.items()})

    def __mul__(self, other: "ReducedPoly") -> "ReducedPoly":
        self._check(other)
        F = self.ctx
        d = self.prod.d
        out: dict[tuple[int, ...], int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(reduce_exponent(a + b, di) for a, b, di in zip(e1, e2, d))
                out[e] = F.add(out.get(e, 0), F.mul(c1, c2))
        return ReducedPoly(self.prod, out)

    def __pow__(self, k: int) -> "ReducedPoly":
        result = ReducedPoly.const(self.prod, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- evaluation -------------------------------------------------------

    def __call__(self, point: Sequence[int]) -> int:
        F = self.ctx
        acc = 0
        for exps, c in self.terms.items():
            v = c
            for x, e in zip(point, exps):
                v = F.mul(v, F.pow(int(x), e))
            acc = F.add(acc, v)
        return acc

    def evaluate(self) -> "Codeword":
        F = self.ctx
        pts = self.prod.point_array
        n = pts.shape[0]
        cache: dict[tuple[int, int], np.ndarray] = {}
        values = np.zeros(n, dtype=np.int64)
        for exps, c in self.terms.items():
            col = np.full(n, c, dtype=np.int64)
            for i, e in enumerate(exps):
                if e:
                    if (i, e) not in cache:
                        cache[(i, e)] = F.pow_arr(pts[:, i], e)
                    col = F.mul_arr(col, cache[(i, e)])
            values = F.add_arr(values, col)
        return Codeword(self.prod, values)

    def compose_affine(self, T) -> "ReducedPoly":
        """Reduced form of X -> f(M X + b) for an affine transform T = (M, b)."""
        prod = self.prod
        if getattr(T, "prod", None) != prod:
            raise InvalidTransform("transform belongs to a different domain")
        M, b = T.matrix, T.shift
        # L_i = sum_j M[i, j] X_j + b_i
        linear = []
        for i in range(prod.m):
            terms = {}
            for j in range(prod.m):
                if M[i][j]:
                    e = [0] * prod.m
                    e[j] = 1
                    terms[tuple(e)] = int(M[i][j])
            if b[i]:
                terms[(0,) * prod.m] = int(b[i])
            linear.append(ReducedPoly(prod, terms))
        powers: dict[tuple[int, int], ReducedPoly] = {}

        def lin_pow(i: int, e: int) -> ReducedPoly:
            if (i, e) not in powers:
                powers[(i, e)] = linear[i] if e == 1 else lin_pow(i, e - 1) * linear[i]
            return powers[(i, e)]

        out = ReducedPoly.zero(prod)
        one = ReducedPoly.const(prod, 1)
        for exps, c in self.terms.items():
            term = one
            for i, e in enumerate(exps):
                if e:
                    term = term * lin_pow(i, e)
            out = out + term.scale(c)
        return out

    # -- text -------------------------------------------------------------

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        F = self.ctx
        parts = []
        for exps in sorted(self.terms, key=lambda e: (-sum(e), [-x for x in e])):
            factors = [F.symbol(self.terms[exps])]
            for i, e in enumerate(exps):
                if e == 1:
                    factors.append(f"X{i + 1}")
                elif e > 1:
                    factors.append(f"X{i + 1}^{e}")
            parts.append("*".join(factors))
        return " + ".join(parts)

    @classmethod
    def parse(cls, prod: NestedProduct, text: str) -> "ReducedPoly":
        """Parse ``c*X1^e1*X2^e2 + ...`` (coefficients 0, 1, g, g^k)."""
        F = prod.ctx
        raw: list[tuple[tuple[int, ...], int]] = []
        text = text.strip()
        if text in ("", "0"):
            return cls.zero(prod)
        for term in text.split("+"):
            coef = 1
            exps = [0] * prod.m
            for factor in term.split("*"):
                factor = factor.strip()
                m = re.fullmatch(r"X(\d+)(?:\^(\d+))?", factor)
                if m:
                    i = int(m.group(1))
                    if not 1 <= i <= prod.m:
                        raise ACError(f"variable X{i} outside X1..X{prod.m}")
                    exps[i - 1] += int(m.group(2) or 1)
                else:
                    coef = F.mul(coef, F.parse_symbol(factor))
            raw.append((tuple(exps), coef))
        return reduce(prod, raw)


def reduce(prod: NestedProduct, raw) -> ReducedPoly:
    """Reduce arbitrary exponents with X_i^{d_i} -> X_i and collect terms.

    ``raw`` is a mapping or an iterable of (exponents, coefficient) pairs.
    """
    F = prod.ctx
    items = raw.items() if isinstance(raw, Mapping) else raw
    out: dict[tuple[int, ...], int] = {}
    for exps, c in items:
        if len(exps) != prod.m:
            raise ACError(f"exponent vector {exps} has wrong length")
        if any(e < 0 for e in exps):
            raise ACError(f"negative exponent in {exps}")
        e = tuple(reduce_exponent(int(x), d) for x, d in zip(exps, prod.d))
        out[e] = F.add(out.get(e, 0), int(c))
    return ReducedPoly(prod, out)


class Codeword:
    """Values of a function on the points of A, in point order."""

    __slots__ = ("prod", "values")

    def __init__(self, prod: NestedProduct, values):
        values = np.asarray(values).astype(prod.ctx.dtype)
        if values.shape != (prod.n,):
            raise ACError(f"codeword length {values.shape} != n={prod.n}")
        values.setflags(write=False)
        self.prod = prod
        self.values = values

    @property
    def weight(self) -> int:
        return int(np.count_nonzero(self.values))

    def support(self) -> np.ndarray:
        return np.flatnonzero(self.values)

    def key(self) -> bytes:
        return self.values.tobytes()

    def scale(self, c: int) -> "Codeword":
        return Codeword(self.prod, self.prod.ctx.mul_arr(self.values, c))

    def __add__(self, other: "Codeword") -> "Codeword":
        return Codeword(self.prod, self.prod.ctx.add_arr(self.values, other.values))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Codeword) and self.prod == other.prod and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __len__(self) -> int:
        return self.prod.n

    def __repr__(self) -> str:
        return f"Codeword(weight={self.weight}, {self.to_text()})"

    def to_text(self) -> str:
        F = self.prod.ctx
        return ",".join(F.symbol(int(v)) for v in self.values)


def interpolate(c: Codeword) -> ReducedPoly:
    """The unique reduced polynomial whose evaluation is ``c``."""
    prod = c.prod
    F = prod.ctx
    vals = np.asarray(c.values, dtype=np.int64).reshape(prod.d)
    inverses: dict[int, np.ndarray] = {}
    for axis, d in enumerate(prod.d):
        if d not in inverses:
            xs = F.subfield_elements(d)
            V = [[F.pow(x, e) for e in range(d)] for x in xs]
            inverses[d] = np.array(F.inverse(V), dtype=np.int64)
        Vinv = inverses[d]
        moved = np.moveaxis(vals, axis, 0)
        out = np.zeros_like(moved)
        for e in range(d):
            acc = np.zeros(moved.shape[1:], dtype=np.int64)
            for x in range(d):
                if Vinv[e, x]:
                    acc = F.add_arr(acc, F.mul_arr(Vinv[e, x], moved[x]))
            out[e] = acc
        vals = np.moveaxis(out, 0, axis)
    terms = {tuple(int(i) for i in idx): int(v) for idx, v in np.ndenumerate(vals) if v}
    return ReducedPoly(prod, terms)


def weight(c: Codeword) -> int:
    return c.weight


def support(c: Codeword) -> set[int]:
    return set(int(i) for i in c.support())


def build_h(prod: NestedProduct, dec: UDecomposition, k: int, omega: Iterable[int]) -> ReducedPoly:
    """prod_{i<=j+1, i!=k} (1 - X_i^{d_i-1}) * prod_{w in omega} (X_k - w)."""
    F = prod.ctx
    if not dec.k0 <= k <= dec.j + 1 or prod.d[k - 1] < dec.target:
        raise KOutOfRange(f"k={k} not admissible for u={dec.u} (k0={dec.k0}, j+1={dec.j + 1})")
    omega = list(dict.fromkeys(int(w) for w in omega))
    dk = prod.d[k - 1]
    if len(omega) != dk - dec.target:
        raise BadOmegaSize(f"|Omega| must be {dk - dec.target}, got {len(omega)}")
    for w in omega:
        if not F.in_subfield(w, dk):
            raise OmegaNotInSubfield(f"{F.symbol(w)} is not in GF({dk})")
    one = ReducedPoly.const(prod, 1)
    h = one
    for i in range(1, dec.j + 2):
        if i == k:
            continue
        e = [0] * prod.m
        e[i - 1] = prod.d[i - 1] - 1
        h = h * (one - ReducedPoly(prod, {tuple(e): 1}))
    xk = ReducedPoly.var(prod, k)
    for w in omega:
        h = h * (xk - ReducedPoly.const(prod, w))
    return h
