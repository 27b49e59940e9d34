"""Finite fields GF(p^R) in discrete-log form, with their subfield lattice.

Elements are plain Python ints ("codes"):

    0      the zero element
    e + 1  the power g^e of the fixed primitive element g, 0 <= e <= q - 2

so multiplication is exponent addition and ``1`` is the unit.  Addition
goes through a Zech-style table ``onep[c] = code(1 + elem(c))``, using
``a + b = a * (1 + b/a)``.

The defining polynomial defaults to the Conway polynomial, computed on
demand.  With Conway polynomials the subfield of size d = p^r is
generated by g_d = g^((q-1)/(d-1)), and the canonical embedding of
GF(p^r) sends its own primitive element to g_d.
"""

from __future__ import annotations

import itertools
import math
import re
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    ACError,
    ExponentOutOfRange,
    FieldTooLarge,
    NotASubfieldSize,
    NotIrreducible,
    NotPrime,
)

MAX_FIELD = 2**20


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


# ---------------------------------------------------------------------------
# dense polynomials over GF(p), coefficient lists low-to-high

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a: list[int], f: Sequence[int], p: int) -> list[int]:
    a = _trim(list(a))
    n = len(f) - 1
    inv_lead = pow(f[-1], -1, p)
    while len(a) - 1 >= n:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - n
        for i, fi in enumerate(f):
            a[shift + i] = (a[shift + i] - c * fi) % p
        _trim(a)
    return a


def _pmul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _trim(out)


def _ppowmod(a: Sequence[int], e: int, f: Sequence[int], p: int) -> list[int]:
    result = [1]
    base = _pmod(list(a), f, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, p), f, p)
        base = _pmod(_pmul(base, base, p), f, p)
        e >>= 1
    return result


def _psub(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)]
    return _trim(out)


def _pgcd(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def is_irreducible(f: Sequence[int], p: int) -> bool:
    """Rabin's test for a polynomial over GF(p), coefficients low-to-high."""
    f = _trim(list(f))
    n = len(f) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    x = [0, 1]
    if _psub(_ppowmod(x, p**n, f, p), x, p):
        return False
    for ell in prime_factors(n):
        h = _psub(_ppowmod(x, p ** (n // ell), f, p), x, p)
        if len(_pgcd(f, h, p)) != 1:
            return False
    return True


def _x_is_primitive(f: Sequence[int], p: int) -> bool:
    n = len(f) - 1
    order = p**n - 1
    if n == 1:
        a = (-f[0] * pow(f[1], -1, p)) % p
        return a != 0 and all(pow(a, order // ell, p) != 1 for ell in prime_factors(order))
    x = [0, 1]
    if _ppowmod(x, order, f, p) != [1]:
        return False
    return all(_ppowmod(x, order // ell, f, p) != [1] for ell in prime_factors(order))


def _peval_at(c: Sequence[int], root: list[int], f: Sequence[int], p: int) -> list[int]:
    acc: list[int] = []
    for coef in reversed(c):
        acc = _psub(_pmod(_pmul(acc, root, p), f, p), [(-coef) % p], p)
    return acc


@lru_cache(maxsize=None)
def conway_polynomial(p: int, n: int) -> tuple[int, ...]:
    """Conway polynomial of degree n over GF(p), coefficients low-to-high.

    Searches monic primitive polynomials in Conway order and keeps the
    first whose root is compatible with every proper-subfield Conway
    polynomial.
    """
    if not is_prime(p):
        raise NotPrime(p)
    if n == 1:
        order = p - 1
        for a in range(1, p):
            if p == 2 or all(pow(a, order // ell, p) != 1 for ell in prime_factors(order)):
                return ((-a) % p, 1)
    sub = [(m, conway_polynomial(p, m)) for m in divisors(n) if m < n]
    for s in itertools.product(range(p), repeat=n):
        # s = (s_{n-1}, ..., s_0) with a_i = (-1)^(n-i) s_i
        coeffs = [0] * n
        for pos, si in enumerate(s):
            i = n - 1 - pos
            coeffs[i] = si if (n - i) % 2 == 0 else (-si) % p
        if coeffs[0] == 0:
            continue
        f = coeffs + [1]
        if not _x_is_primitive(f, p):
            continue
        ok = True
        for m, cm in sub:
            root = _ppowmod([0, 1], (p**n - 1) // (p**m - 1), f, p)
            if _peval_at(cm, root, f, p):
                ok = False
                break
        if ok:
            return tuple(f)
    raise AssertionError(f"no Conway polynomial found for ({p}, {n})")


# ---------------------------------------------------------------------------

class FieldCtx:
    """The field GF(p^R) with log/antilog tables.

    Parameters
    ----------
    p : prime characteristic
    R : extension degree over GF(p)
    poly : optional monic irreducible polynomial of degree R, coefficients
        low-to-high.  Defaults to the Conway polynomial.
    """

    def __init__(self, p: int, R: int = 1, poly: Sequence[int] | None = None):
        if not is_prime(p):
            raise NotPrime(f"{p} is not prime")
        if R < 1:
            raise ACError(f"extension degree must be positive, got {R}")
        if p**R > MAX_FIELD:
            raise FieldTooLarge(f"{p}^{R} exceeds {MAX_FIELD}")
        self.p = p
        self.R = R
        self.q = p**R
        if poly is None:
            poly = conway_polynomial(p, R)
        poly = [int(c) % p for c in poly]
        _trim(poly)
        if len(poly) != R + 1:
            raise NotIrreducible(f"polynomial {poly} does not have degree {R}")
        lead_inv = pow(poly[-1], -1, p)
        poly = [c * lead_inv % p for c in poly]
        if not is_irreducible(poly, p):
            raise NotIrreducible(f"{poly} is reducible over GF({p})")
        self.poly = tuple(poly)
        self.dtype = np.uint8 if self.q <= 256 else (np.uint16 if self.q <= 65536 else np.uint32)
        self._build_tables()

    # -- construction ------------------------------------------------------

    def _vec_digits(self, v: int) -> list[int]:
        p = self.p
        return [(v // p**i) % p for i in range(self.R)]

    def _digits_vec(self, d: Sequence[int]) -> int:
        return sum(int(c) * self.p**i for i, c in enumerate(d))

    def _vmul(self, u: int, v: int) -> int:
        prod = _pmod(_pmul(_trim(self._vec_digits(u)), _trim(self._vec_digits(v)), self.p), self.poly, self.p)
        return self._digits_vec(prod)

    def _build_tables(self) -> None:
        p, R, q = self.p, self.R, self.q
        order = q - 1
        exp_vec = [0] * order
        if _x_is_primitive(self.poly, p):
            if R == 1:
                a = (-self.poly[0]) % p
                v = 1
                for e in range(order):
                    exp_vec[e] = v
                    v = v * a % p
            else:
                f = self.poly
                d = [1] + [0] * (R - 1)
                for e in range(order):
                    exp_vec[e] = self._digits_vec(d)
                    top = d[-1]
                    d = [0] + d[:-1]
                    if top:
                        d = [(d[i] - top * f[i]) % p for i in range(R)]
        else:
            g = self._find_primitive_vec()
            v = 1
            for e in range(order):
                exp_vec[e] = v
                v = self._vmul(v, g)
        self.exp_vec = np.array(exp_vec, dtype=np.int64)
        code_to_vec = np.zeros(q, dtype=np.int64)
        code_to_vec[1:] = self.exp_vec
        vec_to_code = np.zeros(q, dtype=np.int64)
        vec_to_code[self.exp_vec] = np.arange(1, q)
        self.code_to_vec = code_to_vec
        self.vec_to_code = vec_to_code
        low = code_to_vec % p
        onep_vec = code_to_vec - low + (low + 1) % p
        self.onep = vec_to_code[onep_vec]
        self._onep = self.onep.tolist()
        self.neg_one = 1 if p == 2 else order // 2 + 1
        self.primitive = 2 if q > 2 else 1

    def _find_primitive_vec(self) -> int:
        order = self.q - 1
        factors = prime_factors(order)
        for g in range(2, self.q):
            def power(e: int) -> int:
                r, b = 1, g
                while e:
                    if e & 1:
                        r = self._vmul(r, b)
                    b = self._vmul(b, b)
                    e >>= 1
                return r
            if power(order) == 1 and all(power(order // ell) != 1 for ell in factors):
                return g
        raise AssertionError("no primitive element")

    # -- identity ----------------------------------------------------------

    def __repr__(self) -> str:
        return f"FieldCtx(GF({self.p}^{self.R}), poly={list(self.poly)})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FieldCtx) and (self.p, self.R, self.poly) == (other.p, other.R, other.poly)

    def __hash__(self) -> int:
        return hash((self.p, self.R, self.poly))

    # -- scalar arithmetic on codes ---------------------------------------

    zero = 0
    one = 1

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return (a + b - 2) % (self.q - 1) + 1

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return (1 - a) % (self.q - 1) + 1

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def add(self, a: int, b: int) -> int:
        if a == 0:
            return b
        if b == 0:
            return a
        ratio = (b - a) % (self.q - 1) + 1
        return self.mul(a, self._onep[ratio])

    def neg(self, a: int) -> int:
        return self.mul(a, self.neg_one)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def pow(self, a: int, k: int) -> int:
        if a == 0:
            if k < 0:
                raise ZeroDivisionError("zero to a negative power")
            return 1 if k == 0 else 0
        return ((a - 1) * k) % (self.q - 1) + 1

    def from_int(self, i: int) -> int:
        """Image of the integer i in the prime field."""
        return int(self.vec_to_code[i % self.p])

    def sum(self, values: Iterable[int]) -> int:
        acc = 0
        for v in values:
            acc = self.add(acc, v)
        return acc

    # -- vectorized arithmetic --------------------------------------------

    def mul_arr(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        out = (a + b - 2) % (self.q - 1) + 1
        return np.where((a == 0) | (b == 0), 0, out)

    def add_arr(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        ratio = (b - a) % (self.q - 1) + 1
        out = self.mul_arr(a, self.onep[ratio])
        return np.where(a == 0, b, np.where(b == 0, a, out))

    def neg_arr(self, a) -> np.ndarray:
        return self.mul_arr(a, self.neg_one)

    def pow_arr(self, a, k: int) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        out = ((a - 1) * k) % (self.q - 1) + 1
        return np.where(a == 0, 1 if k == 0 else 0, out)

    # -- subfields --------------------------------------------------------

    @property
    def subfield_sizes(self) -> list[int]:
        return [self.p**r for r in divisors(self.R)]

    def _check_subfield(self, d: int) -> int:
        if d not in self.subfield_sizes:
            raise NotASubfieldSize(f"{d} is not a subfield size of GF({self.q})")
        return (self.q - 1) // (d - 1)

    def subfield_generator(self, d: int) -> int:
        step = self._check_subfield(d)
        return 1 + step if d > 2 else 1

    def subfield_elements(self, d: int) -> list[int]:
        """0 followed by g_d^0, g_d^1, ... for g_d = g^((q-1)/(d-1))."""
        step = self._check_subfield(d)
        return [0] + [1 + k * step for k in range(d - 1)]

    def in_subfield(self, a: int, d: int) -> bool:
        step = self._check_subfield(d)
        return a == 0 or (a - 1) % step == 0

    def subfield_position(self, d: int) -> np.ndarray:
        """Lookup array: code -> index in subfield_elements(d), or -1."""
        pos = np.full(self.q, -1, dtype=np.int64)
        pos[self.subfield_elements(d)] = np.arange(d)
        return pos

    def elements(self) -> list[int]:
        return list(range(self.q))

    def power_sum(self, d: int, s: int) -> int:
        """Sum of a^s over the subfield of size d, for 0 <= s <= d - 1."""
        self._check_subfield(d)
        if not 0 <= s <= d - 1:
            raise ExponentOutOfRange(f"exponent {s} outside [0, {d - 1}]")
        return self.neg_one if s == d - 1 else 0

    # -- text -------------------------------------------------------------

    def symbol(self, a: int) -> str:
        if a == 0:
            return "0"
        if a == 1:
            return "1"
        return f"g^{a - 1}"

    def parse_symbol(self, s: str) -> int:
        s = s.strip()
        if s == "0":
            return 0
        if s == "1":
            return 1
        if s == "g":
            return self.primitive
        m = re.fullmatch(r"g\^(-?\d+)", s)
        if m:
            return int(m.group(1)) % (self.q - 1) + 1
        raise ACError(f"cannot parse field element {s!r}")

    # -- linear algebra ---------------------------------------------------

    def row_reduce(self, rows: Sequence[Sequence[int]]) -> tuple[list[list[int]], list[int]]:
        """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
        M = [list(map(int, r)) for r in rows]
        pivots: list[int] = []
        if not M:
            return [], []
        ncols = len(M[0])
        r = 0
        for c in range(ncols):
            piv = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
            if piv is None:
                continue
            M[r], M[piv] = M[piv], M[r]
            inv = self.inv(M[r][c])
            M[r] = [self.mul(inv, x) for x in M[r]]
            for i in range(len(M)):
                if i != r and M[i][c] != 0:
                    f = M[i][c]
                    M[i] = [self.sub(x, self.mul(f, y)) for x, y in zip(M[i], M[r])]
            pivots.append(c)
            r += 1
            if r == len(M):
                break
        return M[:r], pivots

    def rank(self, rows: Sequence[Sequence[int]]) -> int:
        return len(self.row_reduce(rows)[1])

    def inverse(self, rows: Sequence[Sequence[int]]) -> list[list[int]]:
        n = len(rows)
        aug = [list(map(int, r)) + [1 if i == j else 0 for j in range(n)] for i, r in enumerate(rows)]
        R, pivots = self.row_reduce(aug)
        if pivots[:n] != list(range(n)) or len(R) < n:
            raise ZeroDivisionError("singular matrix")
        return [r[n:] for r in R]

    def nullspace(self, rows: Sequence[Sequence[int]], ncols: int) -> list[list[int]]:
        """Basis of {x : rows . x = 0}."""
        R, pivots = self.row_reduce(rows) if rows else ([], [])
        free = [c for c in range(ncols) if c not in pivots]
        basis = []
        for fc in free:
            x = [0] * ncols
            x[fc] = 1
            for row, pc in zip(R, pivots):
                x[pc] = self.neg(row[fc])
            basis.append(x)
        return basis


def embedding(small: FieldCtx, big: FieldCtx) -> np.ndarray:
    """Field homomorphism GF(p^r) -> GF(p^R) as a code lookup array.

    The generator of ``small`` goes to the first primitive element of the
    size-p^r subfield of ``big`` that is a root of small's defining
    polynomial; with Conway polynomials on both sides this is g_d itself.
    """
    if small.p != big.p or big.R % small.R:
        raise NotASubfieldSize(f"GF({small.q}) does not embed in GF({big.q})")
    d = small.q
    step = (big.q - 1) // (d - 1)
    image_gen = None
    for k in range(1, d):
        if math.gcd(k, d - 1) != 1 and d > 2:
            continue
        cand = 1 + k * step if d > 2 else 1
        acc = 0
        for c in reversed(small.poly):
            acc = big.add(big.mul(acc, cand), big.from_int(c))
        if acc == 0:
            image_gen = cand
            break
    assert image_gen is not None
    table = np.zeros(d, dtype=np.int64)
    for e in range(d - 1):
        table[e + 1] = big.pow(image_gen, e)
    return table


_FIELD_RE = re.compile(r"\s*(\d+)\s*(?:\^\s*(\d+))?\s*$")


def parse_field(spec: str, poly_table: dict[tuple[int, int], Sequence[int]] | None = None) -> FieldCtx:
    """Build a field from a spec string such as ``"2^2"`` or ``"7"``."""
    m = _FIELD_RE.match(spec)
    if not m:
        raise ACError(f"bad field spec {spec!r}; expected p^R")
    p, R = int(m.group(1)), int(m.group(2) or 1)
    poly = (poly_table or {}).get((p, R))
    return FieldCtx(p, R, poly)


def load_poly_table(path) -> dict[tuple[int, int], tuple[int, ...]]:
    """Read override polynomials, one field per line: ``p R c0 c1 ... cR``."""
    table = {}
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            parts = [int(x) for x in line.split()]
            if len(parts) < 3:
                raise ACError(f"{path}:{lineno}: expected 'p R c0 ... cR'")
            p, R, coeffs = parts[0], parts[1], parts[2:]
            if len(coeffs) != R + 1:
                raise ACError(f"{path}:{lineno}: need {R + 1} coefficients, got {len(coeffs)}")
            table[(p, R)] = tuple(coeffs)
    return table
