from __future__ import annotations

import random
from fractions import Fraction
from math import comb

import numpy as np
import pytest

from nestedac.codes import exhaustive_min_weight, min_distance
from nestedac.domain import NestedProduct
from nestedac.errors import InvalidTransform, OmegaNotInSubfield, SizeOutOfRange, TooLarge
from nestedac.gf import FieldCtx
from nestedac.groups import (
    AffineTransform,
    GroupElem,
    act,
    act_codeword,
    aff_group_order,
    affine_permutations,
    compose,
    enumerate_aff,
    enumerate_G,
    enumerate_min_weight,
    g_order,
    ga_order,
    generators,
    is_in_G,
    min_weight_array,
    min_weight_by_k,
    orbit_array,
    orbit_reps_omega,
    reciprocal_stabilizer_sum,
    seeds,
    stab_delta_omega,
    stabilizer_order,
    unique_rows,
)
from nestedac.poly import ReducedPoly, interpolate
from oracles import brute_aff_count

F2, F4, F9 = FieldCtx(2), FieldCtx(2, 2), FieldCtx(3, 2)
T1 = NestedProduct.from_sizes(F4, [2, 2, 4])
T2 = NestedProduct.from_sizes(F9, [3, 9])


def test_is_in_G():
    P = NestedProduct.from_sizes(F4, [2, 4])
    assert is_in_G(P, np.eye(2, dtype=int))
    # entry (1, 2) = g violates both the subfield and the triangular pattern
    assert not is_in_G(P, [[1, 2], [0, 1]])
    assert not is_in_G(P, [[1, 1], [0, 1]])
    assert is_in_G(P, [[1, 0], [3, 2]])
    assert not is_in_G(P, [[0, 0], [1, 1]])
    Q = NestedProduct.from_sizes(F2, [2, 2])
    assert all(is_in_G(Q, M) for M in enumerate_G(Q))
    assert not is_in_G(Q, [[1, 1]])


def test_group_orders():
    assert aff_group_order(NestedProduct.from_sizes(F4, [2, 4])) == 96
    assert aff_group_order(NestedProduct.from_sizes(F2, [2, 2])) == 24
    for q, F in [(2, F2), (4, F4), (9, F9)]:
        assert aff_group_order(NestedProduct.from_sizes(F, [q])) == q * (q - 1)
    assert ga_order(T1) == 3 * aff_group_order(T1)


@pytest.mark.parametrize(
    "ctx,sizes",
    [(F2, [2, 2]), (F4, [2, 4]), (F4, [2, 2]), (F4, [4]), (F9, [3]), (F9, [9]), (F4, [2])],
)
def test_aff_order_matches_full_matrix_oracle(ctx, sizes):
    """Count every affine map of GF(q)^m that permutes A, with no structural assumption."""
    P = NestedProduct.from_sizes(ctx, sizes)
    assert brute_aff_count(P) == aff_group_order(P)


@pytest.mark.parametrize("ctx,sizes", [(F2, [2, 2]), (F4, [2, 4]), (F4, [2, 2, 4]), (F9, [3, 9]), (F9, [3, 3])])
def test_enumerate_G(ctx, sizes):
    P = NestedProduct.from_sizes(ctx, sizes)
    mats = list(enumerate_G(P))
    assert len(mats) == g_order(P)
    assert len({M.tobytes() for M in mats}) == len(mats)
    assert all(is_in_G(P, M) for M in mats)
    with pytest.raises(TooLarge):
        list(enumerate_G(P, cap=len(mats) - 1))


def test_enumerate_aff_maps_are_bijections():
    P = NestedProduct.from_sizes(F4, [2, 4])
    maps = list(enumerate_aff(P))
    assert len(maps) == 96
    for T in maps:
        assert sorted(T.permutation().tolist()) == list(range(P.n))
    perms = affine_permutations(P)
    assert perms.shape == (96, P.n)
    assert len(unique_rows(perms)) == 96


def test_affine_transform_validation():
    with pytest.raises(InvalidTransform):
        AffineTransform(T1, [[2, 0, 0], [0, 1, 0], [0, 0, 1]])
    with pytest.raises(InvalidTransform):
        AffineTransform.translation(T1, [2, 0, 0])
    with pytest.raises(InvalidTransform):
        GroupElem(0, AffineTransform.identity(T1))


def test_pointwise_application():
    T = AffineTransform(T1, [[1, 0, 0], [1, 1, 0], [0, 1, 2]], [1, 0, 3])
    for i, pt in enumerate(T1.points()):
        assert T1.point_index([T(pt)])[0] == T.permutation()[i]


def _random_elem(rng: random.Random, P: NestedProduct) -> GroupElem:
    gens = generators(P)
    g = GroupElem.identity(P)
    for _ in range(rng.randint(0, 6)):
        g = compose(rng.choice(gens), g)
    return g


@pytest.mark.parametrize("P", [T1, T2])
def test_action_axioms(P):
    rng = random.Random(7)
    f = ReducedPoly.parse(P, "X1*X2 + g^1*X1 + 1")
    assert act(GroupElem.identity(P), f) == f
    for _ in range(20):
        g1, g2 = _random_elem(rng, P), _random_elem(rng, P)
        lhs = act(g2, act(g1, f))
        assert lhs == act(compose(g2, g1), f)
        c = f.evaluate()
        assert act_codeword(g2, act_codeword(g1, c)) == act_codeword(compose(g2, g1), c)
        # polynomial action and codeword action agree
        assert act(g1, f).evaluate() == act_codeword(g1, c)
        assert act(g1, f).evaluate().weight == c.weight
        assert act(g1, f).degree <= f.degree


def test_generators_generate_G_A():
    P = NestedProduct.from_sizes(F4, [2, 4])
    gens = [(g.scalar, g.transform.permutation()) for g in generators(P)]
    start = (1, tuple(range(P.n)))
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for gamma, perm in frontier:
            for s, p in gens:
                elem = (F4.mul(gamma, s), tuple(np.asarray(perm)[p].tolist()))
                if elem not in seen:
                    seen.add(elem)
                    nxt.append(elem)
        frontier = nxt
    assert len(seen) == ga_order(P)


def test_stab_delta_omega():
    assert len(stab_delta_omega(F4, 4, [])) == 12
    assert len(stab_delta_omega(F4, 4, F4.subfield_elements(4))) == 12
    assert stab_delta_omega(F4, 4, [0]) == [(a, 0) for a in (1, 2, 3)]
    with pytest.raises(OmegaNotInSubfield):
        stab_delta_omega(F9, 3, [2])


def test_orbit_reps_omega():
    reps = orbit_reps_omega(F4, 4, 1)
    assert len(reps) == 1 and reps[0][1] == 4
    assert sum(size for _, size in orbit_reps_omega(F4, 4, 2)) == 6
    for s in range(10):
        assert sum(size for _, size in orbit_reps_omega(F9, 9, s)) == comb(9, s)
        assert reciprocal_stabilizer_sum(F9, 9, s) == Fraction(comb(9, s), 72)
    with pytest.raises(SizeOutOfRange):
        orbit_reps_omega(F4, 4, 5)


@pytest.mark.parametrize("u,expected", [(1, 18), (2, 12), (3, 48), (4, 360), (5, 48)])
def test_first_table_enumeration(u, expected):
    words = enumerate_min_weight(T1, u)
    assert len(words) == expected
    assert all(c.weight == min_distance(T1, u) for c in words)
    assert all(interpolate(c).degree <= u for c in words)
    w, count = exhaustive_min_weight(T1, u)
    assert (w, count) == (min_distance(T1, u), expected)


def test_first_table_split():
    parts = min_weight_by_k(T1, 4)
    assert {k: len(v) for k, v in parts.items()} == {2: 288, 3: 72}


def test_second_table_last_row():
    assert len(enumerate_min_weight(T2, 10)) == 216


def test_small_degrees():
    assert len(min_weight_array(T1, 0)) == 3
    assert len(min_weight_array(T1, -1)) == 0


def test_closure_equals_full_group():
    for P, us in [(T1, range(1, 6)), (T2, (1, 3, 8, 9))]:
        for u in us:
            a = min_weight_array(P, u, method="group")
            b = min_weight_array(P, u, method="closure")
            assert {r.tobytes() for r in a} == {r.tobytes() for r in b}


def test_orbit_cap():
    h = seeds(T1, 4)[0][2].evaluate()
    with pytest.raises(TooLarge):
        orbit_array(h, method="group", cap=10)
    with pytest.raises(TooLarge):
        orbit_array(h, method="closure", cap=10)


def test_k_sets_follow_block_structure():
    parts = min_weight_by_k(T1, 4, all_k=True)
    sets = {k: {r.tobytes() for r in v} for k, v in parts.items()}
    assert sets[1] == sets[2]
    assert not (sets[1] & sets[3])


def test_all_omegas_gives_same_set():
    for u in (3, 4):
        reps = min_weight_array(T1, u)
        parts = min_weight_by_k(T1, u, all_omegas=True)
        full = unique_rows(np.concatenate(list(parts.values())))
        assert {r.tobytes() for r in reps} == {r.tobytes() for r in full}


@pytest.mark.parametrize("u", [1, 2, 3, 4, 5])
def test_orbit_stabilizer(u):
    for _, _, h in seeds(T1, u, all_k=True, all_omegas=True):
        c = h.evaluate()
        assert len(orbit_array(c)) * stabilizer_order(c) == ga_order(T1)
