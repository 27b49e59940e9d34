from __future__ import annotations

import numpy as np
import pytest

from nestedac.codes import (
    code_summary,
    dimension,
    dual_generator,
    dual_scaling,
    exhaustive_min_weight,
    generator_matrix,
    krawtchouk,
    macwilliams,
    min_distance,
    monomial_basis,
    rs_generator,
    scan_histogram,
    weight_distribution,
)
from nestedac.domain import NestedProduct
from nestedac.errors import DegreeOutOfRange, TooLarge
from nestedac.gf import FieldCtx
from oracles import naive_weight_distribution

F2, F3, F4, F9 = FieldCtx(2), FieldCtx(3), FieldCtx(2, 2), FieldCtx(3, 2)
T1 = NestedProduct.from_sizes(F4, [2, 2, 4])
T2 = NestedProduct.from_sizes(F9, [3, 9])


def test_first_table_parameters():
    dims = [dimension(T1, u) for u in range(6)]
    assert dims == [1, 4, 8, 12, 15, 16]
    assert [min_distance(T1, u) for u in range(6)] == [16, 8, 4, 3, 2, 1]


def test_second_table_parameters():
    assert [dimension(T2, u) for u in range(1, 11)] == [3, 6, 9, 12, 15, 18, 21, 24, 26, 27]
    assert [min_distance(T2, u) for u in range(1, 11)] == [18, 9, 8, 7, 6, 5, 4, 3, 2, 1]


def test_dimension_counts_monomials():
    P = NestedProduct.from_sizes(F9, [3, 3, 9])
    for u in range(P.K + 1):
        assert dimension(P, u) == len(monomial_basis(P, u))
    assert dimension(P, P.K) == P.n


def test_parameter_range():
    with pytest.raises(DegreeOutOfRange):
        dimension(T1, 6)
    with pytest.raises(DegreeOutOfRange):
        min_distance(T1, -1)


def test_summary():
    s = code_summary(T1, 4)
    assert (s.n, s.dim, s.mindist) == (16, 15, 2)


@pytest.mark.parametrize(
    "prod,u",
    [
        (NestedProduct.from_sizes(F4, [2, 2, 4]), 1),
        (NestedProduct.from_sizes(F4, [2, 4]), 2),
        (NestedProduct.from_sizes(F3, [3, 3]), 2),
        (NestedProduct.from_sizes(F2, [2, 2, 2]), 2),
    ],
)
def test_scan_matches_naive_oracle(prod, u):
    assert weight_distribution(prod, u) == naive_weight_distribution(prod, u)


def test_small_distribution():
    P = NestedProduct.from_sizes(F2, [2, 2])
    assert weight_distribution(P, 1) == {0: 1, 2: 6, 4: 1}


@pytest.mark.parametrize("u", [1, 2, 3])
def test_direct_and_dual_routes_agree(u):
    G = generator_matrix(T1, u)
    direct = scan_histogram(F4, G, route="direct")
    dual = scan_histogram(F4, G, route="dual")
    assert direct == dual
    assert sum(direct) == 4 ** dimension(T1, u)


def test_scan_cap():
    with pytest.raises(TooLarge):
        exhaustive_min_weight(T2, 4)
    with pytest.raises(TooLarge):
        scan_histogram(F4, generator_matrix(T1, 3), cap=10, route="direct")


def test_dual_is_orthogonal_with_complementary_dimension():
    for P in (T1, T2, NestedProduct.from_sizes(F3, [3, 3])):
        w = dual_scaling(P)
        assert np.all(w != 0)
        for u in range(P.K):
            G = generator_matrix(P, u)
            H = dual_generator(P, u)
            assert len(G) + len(H) == P.n
            for g in G:
                for h in H:
                    assert P.ctx.sum(P.ctx.mul(int(a), int(b)) for a, b in zip(g, h)) == 0


def test_dual_scaling_is_a_global_sign():
    # g_i'(x) = d_i x^{d_i - 1} - 1 = -1 on every point, in characteristic p
    for P in (T1, T2):
        w = dual_scaling(P)
        sign = 1 if P.m % 2 == 0 else P.ctx.neg_one
        assert np.all(w == sign)


def test_macwilliams_identity_on_hamming_like_code():
    # [3,1] repetition over GF(2) and its [3,2] dual
    rep = [1, 0, 0, 1]
    assert macwilliams(rep, 3, 2) == [1, 0, 3, 0]
    assert krawtchouk(0, 2, 3, 2) == 1


def test_rs_generator_minimum_weight():
    F = FieldCtx(5)
    G = rs_generator(F, 5, 2)
    w, count = exhaustive_min_weight(NestedProduct.from_sizes(F, [5]), 1)
    hist = scan_histogram(F, G)
    assert (w, count) == (4, hist[4])
