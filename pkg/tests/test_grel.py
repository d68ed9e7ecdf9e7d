from fractions import Fraction as F

import pytest
from hypothesis import given

from conftest import brute_compose, pos, relation_pairs, relation_triples, relations
from qdt.gallery import get
from qdt.grel import (
    Carrier,
    GRel,
    UnaryFn,
    apply_net,
    apply_set,
    char_rel,
    compose,
    identity_rel,
    infty_rel,
    join,
    kan_left,
    kan_right,
    leq,
    meet,
    opposite,
    ratio,
    relation_pairs as zero_pairs,
    symmetrize,
    uniform_leq,
    uniformity_compose,
    zero_rel,
    zero_relation,
)
from qdt.nets import NetProfile
from qdt.xreal import INF, ZERO

G3, Q3 = get("G3"), get("Q3")


def test_compose_identity_and_frozen_value():
    assert compose(Q3, identity_rel(Q3.source)) == Q3
    assert compose(G3, G3).at("1", "0") == 1
    assert leq(G3, compose(G3, G3))


def test_compose_rejects_mismatch():
    with pytest.raises(ValueError):
        compose(G3, get("Q4"))


def test_opposite_examples():
    assert opposite(opposite(G3)) == G3
    m = get("METRIC3")
    assert opposite(m) == m
    assert opposite(Q3).at("0", "1/2") == Q3.at("1/2", "0") == F(1, 2)
    assert opposite(Q3).at("0", "1") == 1


def test_lattice_examples():
    assert join(G3, zero_rel(G3.source)) == G3
    assert meet(G3, infty_rel(G3.source)) == G3
    assert symmetrize(Q3).at("0", "1") == 1
    assert symmetrize(Q3).at("1/2", "0") == F(1, 2)


def test_kan_examples():
    assert kan_right(G3, G3) == Q3
    assert kan_left(G3, G3) == Q3
    ident = identity_rel(G3.source)
    assert kan_right(G3, ident) == G3
    assert kan_left(ident, G3) == G3


def test_zero_relation_of_q3_is_the_usual_order():
    le = char_rel(Q3.source, Q3.source, lambda i, j: i <= j)
    assert zero_relation(Q3) == le
    assert zero_relation(zero_rel(Q3.source)) == zero_rel(Q3.source)


def test_uniform_leq_examples():
    c = Carrier.range(3)
    g = UnaryFn(c, (ZERO, F(1), F(2)))
    f = UnaryFn(c, (ZERO, F(2), F(4)))
    assert uniform_leq(f, f)
    assert uniform_leq(f, g) and uniform_leq(g, f)
    zero = UnaryFn(c, (ZERO, ZERO, ZERO))
    one = UnaryFn(c, (ZERO, F(1), ZERO))
    assert not uniform_leq(one, zero)


def test_apply_examples():
    assert apply_set([], G3, "sup").values == (0, 0, 0)
    assert apply_set([], G3, "inf").values == (INF, INF, INF)
    Y = G3.source.subset(["1/2", "1"])
    assert apply_set(Y, G3, "sup")(0) == 1
    assert apply_net(NetProfile.constant(2), G3, "limsup").values == G3.table[2]


def test_json_round_trip():
    for d in (G3, Q3, get("X3NR")):
        assert GRel.from_json(d.to_json()) == d
    with pytest.raises(ValueError):
        GRel.from_json({"carrier": ["a"], "matrix": [["-1"]]})
    with pytest.raises(ValueError):
        GRel.from_json({"carrier": ["a", "b"], "matrix": [["0", "0"]]})


@given(relation_pairs())
def test_compose_matches_brute_force(pair):
    d, e = pair
    assert [list(r) for r in compose(d, e).table] == brute_compose(d, e)


@given(relation_triples())
def test_compose_associative_and_op_reverses(t):
    d, e, f = t
    assert compose(compose(d, e), f) == compose(d, compose(e, f))
    assert opposite(compose(d, e)) == compose(opposite(e), opposite(d))


@given(relation_triples())
def test_compose_monotone(t):
    d, e, f = t
    lo, hi = meet(d, e), join(d, e)
    assert leq(compose(lo, f), compose(hi, f))
    assert leq(compose(f, lo), compose(f, hi))


@given(relation_pairs())
def test_kan_right_formula(pair):
    d, e = pair
    K = kan_right(d, e)
    n = d.n
    for x in range(n):
        for y in range(n):
            assert K.table[x][y] == max([pos(d.table[x][z], e.table[y][z]) for z in range(n)] + [ZERO])


@given(relation_triples())
def test_kan_adjunction_chain(t):
    f, d, e = t
    a = leq(kan_right(f, e), d)
    b = leq(f, compose(d, e))
    c = leq(kan_left(d, f), e)
    assert a == b == c


@given(relations(max_size=3))
def test_ratio_bound(d):
    f = UnaryFn(d.source, d.table[0])
    g = UnaryFn(d.source, d.column(0))
    for x in range(d.n):
        assert f(x) <= ratio(f, g, g(x))


@given(relation_pairs())
def test_zero_relations_compose_inside(pair):
    d, e = pair
    both = {(x, y) for x, z in zero_pairs(d) for z2, y in zero_pairs(e) if z == z2}
    assert both <= zero_pairs(compose(d, e))


@given(relation_pairs())
def test_uniformity_compose_is_composition_with_zero_order(pair):
    e, d = pair
    assert uniformity_compose(e, d) == compose(e, zero_relation(d))
