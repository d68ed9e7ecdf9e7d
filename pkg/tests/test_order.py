from hypothesis import given
from hypothesis import strategies as st

from conftest import brute_directed, brute_max, brute_sup, distances, relations, subsets
from qdt.gallery import get
from qdt.grel import GRel
from qdt.metric import reflexivize_lower
from qdt.order import (
    check_FdY,
    check_YdYd,
    check_basis,
    check_directed_nets,
    check_supmax,
    check_supmaxrelations,
    d_max_set,
    d_sup_set,
    directed_subsets,
    ideal_closure,
    ideals,
    interpolation_report,
    is_ball_hole_complete,
    is_basis,
    is_directed,
    is_final,
    is_ideal,
    is_max_complete,
    is_max_continuous,
    is_sup_complete,
    max_complete_by_states,
    max_continuous_by_states,
    strict_below,
)

G3, Q3, X3, SPLIT = get("G3"), get("Q3"), get("X3NR"), get("SPLIT")


def brute_strict(d):
    lo = reflexivize_lower(d)
    n = d.n
    return [[{z for z in range(n) if lo.table[y][z] == 0} <= {z for z in range(n) if d.table[x][z] == 0} for y in range(n)] for x in range(n)]


def brute_max_continuous(d, B=None):
    n = d.n
    B = frozenset(range(n)) if B is None else frozenset(B)
    dirs = [Y for Y in subsets(n) if Y and Y <= B and brute_directed(Y, d)]
    return all(any(x in brute_max(Y, d) for Y in dirs) for x in range(n))


@st.composite
def subset_cases(draw, dist=True):
    d = draw(distances(1, 4) if dist else relations(1, 4))
    Y = frozenset(draw(st.sets(st.integers(0, d.n - 1))))
    return d, Y


def test_directed_examples():
    assert is_directed({1, 2}, G3)
    assert not is_directed({0, 1}, G3)
    assert not is_directed(set(), G3)


def test_ideal_examples():
    assert ideal_closure({2}, G3) == {0, 1, 2}
    assert not is_ideal(set(), G3)


def test_closure_is_least_ideal():
    for d in (G3, Q3, X3):
        ids = ideals(d)
        for Y in directed_subsets(d):
            cl = ideal_closure(Y, d)
            assert cl in ids
            assert all(cl <= I for I in ids if Y <= I)


def test_sup_max_examples():
    assert d_max_set({1, 2}, G3) == {2}
    assert d_sup_set({1, 2}, G3) == {2}
    assert d_max_set({1, 2}, X3) == {0, 1, 2}
    assert 0 in d_max_set({1, 2}, X3) and X3.table[0][0] == 1


def test_strict_below_examples():
    chain3 = get("CHAIN3")
    assert strict_below(chain3) == chain3
    leq = [[i <= j for j in range(3)] for i in range(3)]
    assert [[v == 0 for v in row] for row in strict_below(Q3).table] == leq


def test_completeness_examples():
    assert is_max_complete(G3)
    assert is_max_complete(Q3) and is_sup_complete(Q3)
    assert is_ball_hole_complete(G3)
    m = GRel.square(get("METRIC2").source, [[0, 1], [1, 0]])
    assert all(is_ball_hole_complete(m, k) for k in ("••", "•◦", "◦•", "◦◦"))


def test_split_tail_is_max_complete_but_not_ball_hole_complete():
    # a non-distance: the finite reduction needs the triangle inequality
    assert is_max_complete(SPLIT)
    verdict = is_ball_hole_complete(SPLIT)
    assert not verdict and verdict.witness == {1, 2}


def test_continuity_examples():
    assert is_max_continuous(Q3)
    g = is_max_continuous(G3)
    assert not g and g.witness == 1
    assert is_max_continuous(X3)


def test_basis_examples():
    assert is_basis({0, 1, 2}, Q3)
    b = is_basis({0, 2}, Q3)
    assert not b and b.witness == 1
    assert is_basis({1, 2}, X3)
    assert check_basis({1, 2}, X3).ok


def test_interpolation_examples():
    for d in (Q3, G3, X3):
        assert interpolation_report(d).ok
    q = interpolation_report(Q3).facts
    assert q["max continuous"] and q["max complete"]
    g = interpolation_report(G3).facts
    assert g["max complete"] and not g["max continuous"]


@given(subset_cases(dist=False))
def test_directed_matches_definition(case):
    d, Y = case
    assert is_directed(Y, d) == brute_directed(Y, d)


@given(subset_cases(dist=False))
def test_sup_and_max_sets_match_brute_force(case):
    d, Y = case
    assert d_max_set(Y, d) == brute_max(Y, d)
    assert d_sup_set(Y, d) == brute_sup(Y, d)


@given(relations(1, 4))
def test_strict_below_matches_inclusion(d):
    s = strict_below(d)
    assert [[v == 0 for v in row] for row in s.table] == brute_strict(d)


@given(distances(1, 4))
def test_strict_below_inside_leq_on_distances(d):
    s = strict_below(d)
    assert all(d.table[x][y] == 0 for x in range(d.n) for y in range(d.n) if s.table[x][y] == 0)


@given(relations(1, 4))
def test_final_matches_definition(d):
    for Y in subsets(d.n):
        assert is_final(Y, d) == all(any(d.table[y][z] == 0 for z in Y) for y in Y)


@given(distances(1, 4))
def test_max_continuity_matches_enumeration(d):
    assert bool(is_max_continuous(d)) == brute_max_continuous(d)
    assert bool(max_continuous_by_states(d)) == brute_max_continuous(d)


@given(distances(1, 4))
def test_completeness_agrees_with_state_search(d):
    assert bool(is_max_complete(d)) == bool(max_complete_by_states(d))
    assert bool(is_max_complete(d)) == bool(is_ball_hole_complete(d, "•◦"))
    assert bool(is_sup_complete(d)) == bool(is_ball_hole_complete(d, "◦◦"))


@given(distances(1, 4), st.sets(st.integers(0, 3)))
def test_basis_matches_enumeration(d, B):
    B = frozenset(b for b in B if b < d.n)
    assert bool(is_basis(B, d)) == brute_max_continuous(d, B)


@given(subset_cases())
def test_subset_identities(case):
    d, Y = case
    for check in (check_FdY, check_YdYd, check_supmax, check_supmaxrelations, check_directed_nets):
        assert check(d, Y).ok, check.__name__


@given(distances(1, 4))
def test_interpolation_report_has_no_contradiction(d):
    assert interpolation_report(d).ok
