from fractions import Fraction as F
from itertools import combinations

from hypothesis import given
from hypothesis import strategies as st

from conftest import distances, pos, relations
from qdt.gallery import get
from qdt.grel import Carrier, GRel, char_rel, compose, leq, restrict, zero_rel
from qdt.metric import (
    ball,
    ball_lower_reflexivization,
    ball_upper_reflexivization,
    check_hemiprop,
    check_reflexrestrict,
    classify,
    compose_through,
    generated_topology,
    hole,
    is_distance,
    quotient_equivalent,
    reflexivize_lower,
    reflexivize_upper,
)
from qdt.xreal import INF, ZERO

G3, Q3 = get("G3"), get("Q3")


def test_classify_examples():
    q = classify(Q3)
    assert q.is_hemimetric and q.is_quasimetric and not q.is_metric
    g = classify(G3)
    assert g.is_distance and not g.is_reflexive
    assert G3.at("1/2", "1/2") == F(1, 4)
    assert classify(zero_rel(Carrier.range(3))).is_hemimetric


def test_reflexivization_examples():
    assert reflexivize_upper(G3) == reflexivize_lower(G3) == Q3
    assert reflexivize_upper(Q3) == Q3
    s = get("STRICT3")
    assert reflexivize_lower(s) == char_rel(s.source, s.source, lambda i, j: i <= j)


def test_worked_example_on_larger_grids():
    for n in (3, 5, 11):
        assert reflexivize_upper(get(f"G{n}")) == get(f"Q{n}")
        assert reflexivize_lower(get(f"G{n}")) == get(f"Q{n}")


def test_hemiprop_examples():
    assert check_hemiprop(G3).status == "holds"
    rep = check_hemiprop(Q3)
    assert rep["hemi: d = upper <=> d = lower <=> hemimetric"]
    bad = GRel.square(Carrier.range(3), [[0, 0, 1], [1, 0, 0], [1, 1, 0]])
    assert not is_distance(bad)
    rep = check_hemiprop(bad)
    assert rep.status == "holds"
    assert not leq(reflexivize_upper(bad), bad)
    assert any("upper <= d fails" in n for n in rep.notes)


def test_quotient_examples():
    collapse = GRel.square(Carrier.of("ab"), [[0, 0], [0, 0]])
    q, m = quotient_equivalent(collapse)
    assert q.n == 1 and m == [0, 0]
    q, m = quotient_equivalent(Q3)
    assert q == Q3 and m == [0, 1, 2]
    dup = GRel.square(Carrier.of("abc"), [[0, 1, 1], [2, 0, 0], [2, 0, 0]])
    q, m = quotient_equivalent(dup)
    assert q.n == 2 and m == [0, 1, 1]


def test_ball_and_hole_examples():
    one = G3.source.index("1")
    assert ball(G3, one, F(1, 2), "upper") == {one}
    assert ball(G3, one, INF, "upper") == frozenset(range(3))
    assert hole(G3, one, F(1, 4), "upper") == frozenset()


def _brute_topology(d: GRel, kinds):
    vals = sorted({v for row in d.table for v in row} | {ZERO, INF})
    radii = set(vals) | {F(k, 8) for k in range(0, 41)} | {INF}
    sub = set()
    for c in range(d.n):
        for r in radii:
            if "upper-ball" in kinds:
                sub.add(frozenset(x for x in range(d.n) if d.table[c][x] < r))
            if "lower-ball" in kinds:
                sub.add(frozenset(x for x in range(d.n) if d.table[x][c] < r))
            if "upper-hole" in kinds:
                sub.add(frozenset(x for x in range(d.n) if d.table[x][c] > r))
            if "lower-hole" in kinds:
                sub.add(frozenset(x for x in range(d.n) if d.table[c][x] > r))
    full = frozenset(range(d.n))
    base = {full}
    for k in range(1, len(sub) + 1):
        for combo in combinations(sub, k):
            base.add(frozenset.intersection(*combo))
        if k > 3:
            break
    opens = {frozenset()}
    changed = True
    while changed:
        changed = False
        for a in list(opens):
            for b in base:
                if a | b not in opens:
                    opens.add(a | b)
                    changed = True
    return opens


def test_topology_examples():
    full = frozenset(range(3))
    assert generated_topology(Q3, []) == {frozenset(), full}
    ups = generated_topology(Q3, ["upper-ball"])
    chain_ups = {frozenset(range(k, 3)) for k in range(4)}
    assert ups == chain_ups
    kinds = ["upper-ball", "lower-ball", "upper-hole", "lower-hole"]
    assert generated_topology(G3, kinds) == _brute_topology(G3, kinds)


def test_reflexrestrict_examples():
    # Y = X is trivial only when d o d = d, as for a hemimetric
    assert check_reflexrestrict(Q3, range(3)).status == "holds"
    assert check_reflexrestrict(G3, range(3)).status == "not-applicable"
    # G3 through {0, 1}: min(x, 1 - y) exceeds x(1 - y) at (1/2, 1/2)
    Y = sorted(G3.source.subset(["0", "1"]))
    h = G3.source.index("1/2")
    assert compose_through(G3, Y, G3).table[h][h] == F(1, 2) > G3.table[h][h]
    assert check_reflexrestrict(G3, Y).status == "not-applicable"
    # a proper Y can satisfy the hypothesis only off the zero diagonal
    x3 = get("X3NR")
    assert check_reflexrestrict(x3, x3.source.subset(["b"])).status == "holds"
    path = GRel.square(Carrier.of("abc"), [[0, 1, 2], [1, 0, 1], [2, 1, 0]])
    assert check_reflexrestrict(path, [0, 2]).status == "not-applicable"


@given(distances(max_size=4), st.data())
def test_reflexrestrict_never_fails(d, data):
    Y = data.draw(st.sets(st.integers(0, d.n - 1), min_size=1))
    rep = check_reflexrestrict(d, Y)
    assert rep.status != "counterexample"
    if rep.status == "holds":
        assert reflexivize_lower(restrict(d, sorted(Y))) == restrict(reflexivize_lower(d), sorted(Y))


@given(relations())
def test_reflexivizations_are_hemimetrics(d):
    assert classify(reflexivize_upper(d)).is_hemimetric
    assert classify(reflexivize_lower(d)).is_hemimetric


@given(relations())
def test_upper_formula_matches_brute_force(d):
    up = reflexivize_upper(d)
    for x in range(d.n):
        for y in range(d.n):
            assert up.table[x][y] == max(pos(d.table[x][z], d.table[y][z]) for z in range(d.n))


@given(relations())
def test_dis_and_ref_equivalences(d):
    up, lo = reflexivize_upper(d), reflexivize_lower(d)
    tri = leq(d, compose(d, d))
    assert leq(up, d) == leq(lo, d) == tri
    diag = all(d.table[i][i] == 0 for i in range(d.n))
    assert leq(d, up) == leq(d, lo) == diag


@given(distances())
def test_distance_factorizes(d):
    assert compose(reflexivize_upper(d), d) == d
    assert compose(d, reflexivize_lower(d)) == d


@given(distances(max_size=3))
def test_balls_recover_reflexivizations(d):
    assert ball_upper_reflexivization(d) == reflexivize_upper(d)
    assert ball_lower_reflexivization(d) == reflexivize_lower(d)
