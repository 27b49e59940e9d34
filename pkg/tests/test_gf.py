from __future__ import annotations

import numpy as np
import pytest

from nestedac.errors import ExponentOutOfRange, FieldTooLarge, NotASubfieldSize, NotIrreducible, NotPrime
from nestedac.gf import (
    FieldCtx,
    conway_polynomial,
    embedding,
    is_irreducible,
    load_poly_table,
    parse_field,
)
from oracles import oracle_for

# Conway polynomials, coefficients low-to-high, from the standard tables.
KNOWN_CONWAY = {
    (2, 1): (1, 1),
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (2, 6): (1, 1, 0, 1, 1, 0, 1),
    (2, 8): (1, 0, 1, 1, 1, 0, 0, 0, 1),
    (3, 1): (1, 1),
    (3, 2): (2, 2, 1),
    (3, 3): (1, 2, 0, 1),
    (3, 4): (2, 0, 0, 2, 1),
    (5, 2): (2, 4, 1),
    (7, 2): (3, 6, 1),
}


@pytest.mark.parametrize("pR,poly", sorted(KNOWN_CONWAY.items()))
def test_conway_matches_table(pR, poly):
    assert conway_polynomial(*pR) == poly


@pytest.mark.parametrize("p,R", [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (2, 4), (5, 2), (7, 1)])
def test_arithmetic_matches_polynomial_oracle(p, R):
    F = FieldCtx(p, R)
    O = oracle_for(F)
    a = np.arange(F.q)
    A, B = np.meshgrid(a, a, indexing="ij")
    assert np.array_equal(O.to_int(F.add_arr(A, B)), O.add(O.to_int(A), O.to_int(B)))
    assert np.array_equal(O.to_int(F.mul_arr(A, B)), O.mul(O.to_int(A), O.to_int(B)))
    assert np.array_equal(O.to_int(F.neg_arr(a)), O.neg(O.to_int(a)))


def test_scalar_and_array_ops_agree():
    F = FieldCtx(3, 2)
    for a in range(F.q):
        for b in range(F.q):
            assert F.add(a, b) == int(F.add_arr(a, b))
            assert F.mul(a, b) == int(F.mul_arr(a, b))
            assert F.sub(F.add(a, b), b) == a
            if b:
                assert F.mul(F.div(a, b), b) == a


def test_inverse_and_powers():
    F = FieldCtx(2, 3)
    for a in range(1, F.q):
        assert F.mul(a, F.inv(a)) == 1
        assert F.pow(a, F.q - 1) == 1
        assert F.pow(a, -1) == F.inv(a)
    assert F.pow(0, 0) == 1 and F.pow(0, 5) == 0
    with pytest.raises(ZeroDivisionError):
        F.inv(0)


def test_from_int_is_prime_field_image():
    F = FieldCtx(3, 2)
    assert F.from_int(0) == 0 and F.from_int(1) == 1
    assert F.from_int(2) == F.neg_one
    assert F.from_int(3) == 0
    assert F.add(F.from_int(2), F.from_int(2)) == F.from_int(1)


def test_subfields():
    F = FieldCtx(2, 6)
    assert F.subfield_sizes == [2, 4, 8, 64]
    for d in F.subfield_sizes:
        elems = F.subfield_elements(d)
        assert len(elems) == d and elems[0] == 0
        S = set(elems)
        # closed under both operations
        assert all(F.add(x, y) in S and F.mul(x, y) in S for x in elems for y in elems)
        assert all(F.in_subfield(x, d) for x in elems)
        assert sum(F.in_subfield(x, d) for x in range(F.q)) == d
    with pytest.raises(NotASubfieldSize):
        F.subfield_elements(16)


def test_subfield_generator_has_right_order():
    F = FieldCtx(3, 2)
    g3 = F.subfield_generator(3)
    assert F.pow(g3, 2) == 1 and g3 != 1
    assert F.subfield_generator(9) == F.primitive


@pytest.mark.parametrize("p,R", [(2, 2), (3, 2), (2, 3), (5, 1)])
def test_power_sums(p, R):
    F = FieldCtx(p, R)
    for d in F.subfield_sizes:
        for s in range(d):
            brute = F.sum(F.pow(a, s) for a in F.subfield_elements(d))
            assert F.power_sum(d, s) == brute
    with pytest.raises(ExponentOutOfRange):
        F.power_sum(F.q, F.q)


def test_embedding_is_a_homomorphism_onto_the_subfield():
    small, big = FieldCtx(2, 2), FieldCtx(2, 4)
    phi = embedding(small, big)
    assert sorted(phi.tolist()) == sorted(big.subfield_elements(4))
    for a in range(4):
        for b in range(4):
            assert phi[small.add(a, b)] == big.add(int(phi[a]), int(phi[b]))
            assert phi[small.mul(a, b)] == big.mul(int(phi[a]), int(phi[b]))
    # with Conway polynomials the generator lands on g_d
    assert phi[small.primitive] == big.subfield_generator(4)


def test_symbols_round_trip():
    F = FieldCtx(3, 2)
    for a in range(F.q):
        assert F.parse_symbol(F.symbol(a)) == a
    assert F.symbol(0) == "0" and F.symbol(1) == "1" and F.symbol(2) == "g^1"


def test_linear_algebra():
    F = FieldCtx(2, 2)
    rows = [[1, 2, 3], [1, 3, 0]]
    assert F.rank(rows) == 2
    null = F.nullspace(rows, 3)
    assert len(null) == 1
    for r in rows:
        assert F.sum(F.mul(a, b) for a, b in zip(r, null[0])) == 0
    inv = F.inverse([[1, 2], [0, 3]])
    M = [[1, 2], [0, 3]]
    prod = [[F.sum(F.mul(M[i][k], inv[k][j]) for k in range(2)) for j in range(2)] for i in range(2)]
    assert prod == [[1, 0], [0, 1]]


def test_errors():
    with pytest.raises(NotPrime):
        FieldCtx(6)
    with pytest.raises(FieldTooLarge):
        FieldCtx(2, 21)
    with pytest.raises(NotIrreducible):
        FieldCtx(2, 2, poly=(1, 0, 1))
    assert not is_irreducible([0, 0, 1], 3)


def test_custom_polynomial_and_table(tmp_path):
    # x^4 + x^3 + 1 is primitive but not the Conway polynomial
    F = FieldCtx(2, 4, poly=(1, 0, 0, 1, 1))
    O = oracle_for(F)
    a = np.arange(16)
    A, B = np.meshgrid(a, a, indexing="ij")
    assert np.array_equal(O.to_int(F.mul_arr(A, B)), O.mul(O.to_int(A), O.to_int(B)))
    path = tmp_path / "polys.txt"
    path.write_text("# override\n2 4 1 0 0 1 1\n")
    table = load_poly_table(path)
    assert parse_field("2^4", table) == F
    assert parse_field("2^4") == FieldCtx(2, 4)
    assert parse_field("7").q == 7


def test_non_primitive_polynomial_still_works():
    # x^4 + x^3 + x^2 + x + 1 is irreducible with x of order 5
    F = FieldCtx(2, 4, poly=(1, 1, 1, 1, 1))
    assert len({F.pow(F.primitive, e) for e in range(15)}) == 15
    assert all(F.mul(a, F.inv(a)) == 1 for a in range(1, 16))
