import pytest
from hypothesis import given, settings

from conftest import DETERMINANTS, K13A1, corpus_codes, grids, random_grids
from gridforge.codec import parse_dt
from gridforge.diagram import PlanarDiagram, realize
from gridforge.grid import GridDiagram, grid_to_diagram
from gridforge.invariants import (
    Verdict,
    alexander,
    bracket,
    bracket_state_sum,
    kauffman_jones,
    same_knot_up_to_mirror,
    simplify,
)
from gridforge.laurent import LaurentPoly

P = LaurentPoly.parse
UNKNOT = PlanarDiagram(())
TREFOIL = realize(parse_dt("4 6 2"))
FIGURE8 = realize(parse_dt("4 6 8 2"))

# published values (Rolfsen table); Jones up to t <-> 1/t
ALEXANDER = {
    "3_1": "1*t^1 - 1*t^0 + 1*t^-1",
    "4_1": "1*t^1 - 3*t^0 + 1*t^-1",
    "5_1": "1*t^2 - 1*t^1 + 1*t^0 - 1*t^-1 + 1*t^-2",
    "5_2": "2*t^1 - 3*t^0 + 2*t^-1",
    "6_1": "2*t^1 - 5*t^0 + 2*t^-1",
    "6_2": "1*t^2 - 3*t^1 + 3*t^0 - 3*t^-1 + 1*t^-2",
    "6_3": "1*t^2 - 3*t^1 + 5*t^0 - 3*t^-1 + 1*t^-2",
    "7_1": "1*t^3 - 1*t^2 + 1*t^1 - 1*t^0 + 1*t^-1 - 1*t^-2 + 1*t^-3",
    "7_2": "3*t^1 - 5*t^0 + 3*t^-1",
    "7_4": "4*t^1 - 7*t^0 + 4*t^-1",
    "8_18": "1*t^3 - 5*t^2 + 10*t^1 - 13*t^0 + 10*t^-1 - 5*t^-2 + 1*t^-3",
}
JONES = {
    "3_1": "-1*t^4 + 1*t^3 + 1*t^1",
    "4_1": "1*t^2 - 1*t^1 + 1*t^0 - 1*t^-1 + 1*t^-2",
    "5_1": "-1*t^7 + 1*t^6 - 1*t^5 + 1*t^4 + 1*t^2",
    "6_1": "1*t^2 - 1*t^1 + 2*t^0 - 2*t^-1 + 1*t^-2 - 1*t^-3 + 1*t^-4",
}

CORPUS = {c.name: c for c in corpus_codes()}


def test_simplify_unknot_unchanged():
    assert simplify(UNKNOT) == UNKNOT


def test_simplify_kink():
    assert simplify(realize(parse_dt("2"))).n_crossings == 0
    assert simplify(realize(parse_dt("4 2"))).n_crossings == 0


def test_simplify_trefoil_grid():
    g = GridDiagram(((1, 3), (2, 4), (3, 5), (1, 4), (2, 5)))
    assert simplify(grid_to_diagram(g)).n_crossings == 3


def test_simplify_leaves_reduced_alternating_alone():
    d = realize(parse_dt(K13A1))
    assert simplify(d) == d


@settings(max_examples=60, deadline=None)
@given(grids())
def test_simplify_preserves_invariants(g):
    d = grid_to_diagram(g)
    s = simplify(d)
    assert s.n_crossings <= d.n_crossings
    assert alexander(s) == alexander(d)
    if d.n_crossings <= 14:
        assert kauffman_jones(s, 14) == kauffman_jones(d, 14)


def test_alexander_unknot():
    assert alexander(UNKNOT) == 1


def test_alexander_trefoil_by_hand():
    # Fox matrix of the trefoil is circulant in (1 - t, t, -1); a 2x2 minor is
    # (1 - t)^2 + t = 1 - t + t^2, which is t - 1 + 1/t up to a unit
    t = LaurentPoly.monomial(1)
    minor = (1 - t) * (1 - t) - t * LaurentPoly.const(-1)
    assert minor.shift(-1) == alexander(TREFOIL) == P("1*t^1 - 1*t^0 + 1*t^-1")


@pytest.mark.parametrize("name", sorted(ALEXANDER))
def test_alexander_published(name):
    assert alexander(realize(CORPUS[name])) == P(ALEXANDER[name])


@pytest.mark.parametrize("name", sorted(JONES))
def test_jones_published(name):
    v = kauffman_jones(realize(CORPUS[name]))
    assert v in (P(JONES[name]), P(JONES[name]).invert())


def test_alexander_normalization():
    for code in corpus_codes():
        a = alexander(realize(code))
        assert a == a.invert()
        assert a.leading() > 0
        assert abs(a.evaluate(1)) == 1


@pytest.mark.parametrize("name", sorted(DETERMINANTS))
def test_determinant_is_tabulated_and_odd(name):
    det = abs(alexander(realize(CORPUS[name])).evaluate(-1))
    assert det == DETERMINANTS[name] and det % 2 == 1


def test_corpus_entries_are_distinct_knots():
    seen = set()
    for code in corpus_codes():
        v = kauffman_jones(realize(code), 20)
        key = frozenset((v, v.invert()))
        assert key not in seen
        seen.add(key)


def test_bracket_of_empty_diagram():
    assert bracket_state_sum(UNKNOT) == 1
    assert bracket(UNKNOT) == 1
    assert kauffman_jones(UNKNOT) == 1


def test_right_handed_trefoil_jones():
    d = TREFOIL if TREFOIL.writhe() == 3 else TREFOIL.mirror()
    assert kauffman_jones(d) == P("-1*t^4 + 1*t^3 + 1*t^1")


def test_mirror_inverts_jones():
    assert kauffman_jones(TREFOIL.mirror()) == kauffman_jones(TREFOIL).invert()


@pytest.mark.parametrize("code", corpus_codes(), ids=lambda c: c.name)
def test_bracket_matches_state_sum_on_corpus(code):
    d = realize(code)
    assert bracket(d) == bracket_state_sum(d)


def test_bracket_matches_state_sum_on_grids():
    checked = 0
    for g in random_grids(80, seed=11, max_n=9):
        d = grid_to_diagram(g)
        if 0 < d.n_crossings <= 13:
            assert bracket(d) == bracket_state_sum(d)
            checked += 1
    assert checked >= 30


def test_jones_threshold_skips():
    big = GridDiagram(((2, 6), (11, 12), (1, 10), (3, 8), (7, 14), (5, 9), (2, 14), (9, 12),
                       (4, 13), (5, 13), (4, 8), (3, 10), (1, 7), (6, 11)))
    d = grid_to_diagram(big)
    assert d.n_crossings >= 30
    assert kauffman_jones(d, 18) is None
    assert kauffman_jones(d, 40) is not None


def test_verdict_trefoil_and_mirror():
    c = same_knot_up_to_mirror(TREFOIL, TREFOIL.mirror())
    assert c.verdict == Verdict.CONSISTENT and c.mirrored is True
    c = same_knot_up_to_mirror(TREFOIL, TREFOIL)
    assert c.verdict == Verdict.CONSISTENT and c.mirrored is False


def test_verdict_trefoil_vs_figure_eight():
    c = same_knot_up_to_mirror(TREFOIL, FIGURE8)
    assert c.verdict == Verdict.DISTINGUISHED
    assert c.alexander == (P("1*t^1 - 1*t^0 + 1*t^-1"), P("1*t^1 - 3*t^0 + 1*t^-1"))


def test_verdict_unknot():
    assert same_knot_up_to_mirror(UNKNOT, UNKNOT).verdict == Verdict.CONSISTENT


def test_verdict_jones_separates_equal_alexander():
    granny = realize(parse_dt("4 6 2 10 12 8"))
    square = realize(parse_dt("4 6 2 -10 -12 -8"))
    c = same_knot_up_to_mirror(granny, square)
    assert c.alexander[0] == c.alexander[1]
    assert c.verdict == Verdict.DISTINGUISHED


def test_verdict_weak():
    d = realize(CORPUS["8_18"])
    assert same_knot_up_to_mirror(d, d, jones_threshold=4).verdict == Verdict.CONSISTENT_WEAK
    small = realize(CORPUS["3_1"])
    c = same_knot_up_to_mirror(small, realize(CORPUS["8_18"]), jones_threshold=4)
    assert c.verdict == Verdict.DISTINGUISHED  # Alexander differs first
    g = GridDiagram(((1, 3), (2, 4), (3, 5), (1, 4), (2, 5)))
    big_trefoil = grid_to_diagram(g)
    c = same_knot_up_to_mirror(small, big_trefoil, jones_threshold=3)
    assert c.verdict == Verdict.CONSISTENT
    c = same_knot_up_to_mirror(small, realize(parse_dt("4 6 2 10 12 8")).mirror(), 3)
    assert c.verdict == Verdict.DISTINGUISHED


def test_one_sided_jones_is_weak():
    d = realize(parse_dt(K13A1))
    g = GridDiagram(((2, 7), (1, 3), (2, 14), (4, 15), (1, 14), (3, 12), (5, 13), (12, 15),
                     (4, 10), (6, 11), (10, 13), (5, 8), (7, 9), (8, 11), (6, 9)))
    c = same_knot_up_to_mirror(d, grid_to_diagram(g), jones_threshold=13)
    assert c.crossings[0] == 13 and c.crossings[1] > 13
    assert c.verdict == Verdict.CONSISTENT_WEAK
    assert "skipped" in c.summary()
