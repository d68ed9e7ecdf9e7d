from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import distances, relation_pairs, subsets
from qdt.gallery import get
from qdt.grel import Carrier, GRel
from qdt.hausdorff import (
    canonical_profiles,
    check_dHhemi,
    check_hausdorffprop,
    check_hausfunc,
    check_pdcomp,
    check_universality,
    complete_predomain,
    default_family,
    hausdorff_lower,
    hausdorff_upper,
    sampled_family,
)
from qdt.nets import NetProfile, is_cauchy
from qdt.order import is_max_continuous
from qdt.xreal import INF, ZERO

G3, Q3, X3 = get("G3"), get("Q3"), get("X3NR")
F12 = Fraction(1, 2)
METRIC = GRel.square(Carrier.of("ab"), [[0, 1], [1, 0]])


def brute_upper(d, Y, Z):
    return min((max((d.table[y][z] for y in Y), default=ZERO) for z in Z), default=INF)


def brute_lower(d, Y, Z):
    return max((min((d.table[y][z] for z in Z), default=INF) for y in Y), default=ZERO)


def test_upper_examples():
    U = hausdorff_upper(Q3)
    assert U.value({0, 2}, {1}) == F12
    for x in range(3):
        for y in range(3):
            assert U.value({x}, {y}) == Q3.table[x][y]
    assert hausdorff_upper(METRIC).value({0, 1}, {0, 1}) == 1


def test_lower_examples():
    L = hausdorff_lower(Q3)
    assert L.value({0, 2}, {1}) == F12
    assert L.value(set(), {1}) == 0
    assert L.consistent_with(Q3)


def test_family_defaults():
    fam, exhaustive = default_family(Q3.source)
    assert exhaustive and len(fam) == 8
    big = Carrier.range(10)
    fam, exhaustive = default_family(big)
    assert not exhaustive
    assert frozenset() in fam.members and frozenset(range(10)) in fam.members
    assert sampled_family(big, seed=3) == sampled_family(big, seed=3)


def test_hausfunc_examples():
    assert check_hausfunc(Q3, Q3).status == "holds"
    eq = GRel.square(Q3.source, [[0 if i == j else INF for j in range(3)] for i in range(3)])
    assert check_hausfunc(Q3, eq).status == "holds"


def test_hausdorffprop_examples():
    for d in (Q3, G3, X3):
        assert check_hausdorffprop(d).status == "holds"


def test_completion_of_q3():
    c = complete_predomain(Q3)
    assert c.report.status == "holds"
    labels = c.hausdorff.family.labels()
    assert [labels[i] for i in c.embedding] == [["0"], ["0", "1/2"], ["0", "1/2", "1"]]
    assert c.hausdorff.values.table[c.embedding[2]][c.embedding[1]] == F12


def test_completion_of_x3nr_is_strictly_below_d():
    c = complete_predomain(X3)
    assert c.hausdorff.family.labels()[c.embedding[0]] == ["b", "c"]
    D, e = c.hausdorff.values, c.embedding
    cells = [(x, y) for x in range(3) for y in range(3)]
    assert all(D.table[e[x]][e[y]] <= X3.table[x][y] for x, y in cells)
    assert any(D.table[e[x]][e[y]] < X3.table[x][y] for x, y in cells)
    assert c.report["down-set distance = d on a predomain"] is None


def test_completion_of_point():
    one = GRel.square(Carrier.of("a"), [[0]])
    c = complete_predomain(one)
    assert c.hausdorff.family.labels() == [["a"]] and c.report.ok


def test_completion_rejects_non_continuous():
    with pytest.raises(ValueError, match="max-continuous"):
        complete_predomain(G3)


def test_universality_examples():
    assert check_universality([0, 1, 2], Q3).status == "holds"
    rows = [[Q3.table[min(i, 2)][min(j, 2)] for j in range(4)] for i in range(4)]
    twin = GRel.square(Carrier.of(["0", "1/2", "1", "1'"]), rows)
    assert check_universality(range(4), twin).status == "holds"
    assert check_universality([0, 2], Q3).status == "not-applicable"


def test_pdcomp_examples():
    q = check_pdcomp(Q3)
    assert q.ok and q.clauses[0].note == "fact: true"
    x = check_pdcomp(X3)
    assert x.ok and x.clauses[0].note == "fact: false"


def test_dhhemi_examples():
    assert check_dHhemi(METRIC)["d^H has zero diagonal on directed subsets"]
    # the ascending profile's tail is a single reflexive point, which is op-Cauchy too
    ascending = NetProfile.of([2], [0, 1])
    assert is_cauchy(ascending, Q3)
    rep = check_dHhemi(Q3, [ascending])
    assert rep.status == "holds" and rep["d^H has zero diagonal on directed subsets"]
    one = GRel.square(Carrier.of("a"), [[0]])
    assert check_dHhemi(one).status == "holds"


@given(distances(1, 3))
def test_tables_match_brute_force(d):
    U, L = hausdorff_upper(d), hausdorff_lower(d)
    for Y in subsets(d.n):
        for Z in subsets(d.n):
            assert U.value(Y, Z) == brute_upper(d, Y, Z)
            assert L.value(Y, Z) == brute_lower(d, Y, Z)


@given(distances(1, 4))
def test_lower_below_upper(d):
    U, L = hausdorff_upper(d), hausdorff_lower(d)
    m = len(U.family)
    assert all(L.values.table[i][j] <= U.values.table[i][j] for i in range(m) for j in range(m))


@given(relation_pairs(1, 3))
def test_hausfunc_holds(pair):
    d, e = pair
    assert check_hausfunc(d, e).ok


@given(distances(1, 3))
def test_hausdorffprop_holds(d):
    assert check_hausdorffprop(d).ok


@given(distances(1, 4))
def test_completion_on_continuous_instances(d):
    if is_max_continuous(d):
        assert complete_predomain(d).report.ok
        assert check_pdcomp(d).ok


@given(distances(1, 4))
def test_dhhemi_consistent(d):
    assert check_dHhemi(d, canonical_profiles(d)).ok


@given(distances(1, 4), st.sets(st.integers(0, 3)))
def test_universality_consistent(d, B):
    B = [b for b in B if b < d.n]
    assert check_universality(B, d).ok

