import pytest
from hypothesis import given, strategies as st

from conftest import K13A1, corpus_codes
from gridforge.codec import (
    DTCode,
    DTCodeError,
    canonicalize,
    dt_pairing,
    extract_dt,
    parse_dt,
    read_table,
    render_dt,
)
from gridforge.diagram import realize


def test_parse_13a1():
    code = parse_dt(K13A1)
    assert code.name == "13a1"
    assert code.crossings == 13
    assert code.entries == (4, 8, 10, 14, 2, 16, 20, 6, 22, 24, 12, 26, 18)


def test_parse_trefoil_without_name():
    code = parse_dt("4 6 2")
    assert code.name is None and code.entries == (4, 6, 2)


@pytest.mark.parametrize("text", ["[4, 6, 2]", "4,6,2", "  4\t6 2  "])
def test_parse_separators(text):
    assert parse_dt(text).entries == (4, 6, 2)


def test_name_with_underscore_is_not_an_integer():
    assert parse_dt("3_1 4 6 2").name == "3_1"


def test_uniform_negative_signs_normalized():
    assert parse_dt("-4 -6 -2").entries == (4, 6, 2)


def test_mixed_signs_kept():
    assert parse_dt("4 -6 2").entries == (4, -6, 2)


@pytest.mark.parametrize("text, fragment", [
    ("4 8 2", "not exactly"),
    ("4 4 2", "duplicate"),
    ("4 5 2", "even"),
    ("", "empty"),
    ("   ", "empty"),
    ("knot", "no entries"),
    ("4 x 2", "non-integer"),
])
def test_parse_errors(text, fragment):
    with pytest.raises(DTCodeError, match=fragment):
        parse_dt(text)


def test_dt_pairing_13a1():
    pairs = dt_pairing(parse_dt(K13A1))
    assert (1, 4) in pairs and (9, 2) in pairs
    assert sorted(x for p in pairs for x in p) == list(range(1, 27))


def test_dt_pairing_single_crossing():
    assert dt_pairing(DTCode((2,))) == {(1, 2)}


def test_read_table_skips_comments_and_blanks():
    lines = ["# header", "", "3_1 4 6 2  # trefoil", "   ", "4_1 4 6 8 2"]
    got = list(read_table(lines))
    assert [(n, c.name) for n, c in got] == [(3, "3_1"), (5, "4_1")]


def test_read_table_reports_line_number():
    with pytest.raises(DTCodeError, match="line 2"):
        list(read_table(["4 6 2", "4 8 2"]))


@st.composite
def codes(draw):
    c = draw(st.integers(1, 12))
    evens = draw(st.permutations(range(2, 2 * c + 1, 2)))
    signs = draw(st.lists(st.booleans(), min_size=c, max_size=c))
    name = draw(st.one_of(st.none(), st.from_regex(r"[a-z][a-z0-9_]{0,5}", fullmatch=True)))
    entries = [e if s else -e for e, s in zip(evens, signs)]
    if entries and all(e < 0 for e in entries):
        entries = [-e for e in entries]
    return DTCode(tuple(entries), name)


@given(codes())
def test_render_parse_roundtrip(code):
    assert parse_dt(render_dt(code)) == code


def _brute_canonical_trefoil():
    # independent oracle: renumber passages of the standard trefoil from every
    # start in both directions and rebuild the pairing by hand
    crossing_of = [0, 1, 2, 0, 1, 2]  # passages 1..6 of the standard trefoil
    best = None
    for direction in (1, -1):
        for s in range(6):
            order = [crossing_of[(s + direction * i) % 6] for i in range(6)]
            partner = {}
            for pos, x in enumerate(order, 1):
                partner.setdefault(x, []).append(pos)
            entries = []
            for odd in range(1, 6, 2):
                x = order[odd - 1]
                a, b = partner[x]
                entries.append(b if a == odd else a)
            cand = tuple(entries)
            best = cand if best is None or cand < best else best
    return best


def test_extract_trefoil_against_brute_force():
    assert _brute_canonical_trefoil() == (4, 6, 2)
    assert extract_dt(realize(parse_dt("4 6 2"))).entries == (4, 6, 2)


def test_extract_13a1_roundtrip():
    code = parse_dt(K13A1)
    assert extract_dt(realize(code)).entries == canonicalize(code).entries


def test_extract_empty_diagram():
    from gridforge.diagram import PlanarDiagram
    assert extract_dt(PlanarDiagram(())).entries == ()


def test_extract_invariant_under_relabeling():
    d = realize(parse_dt(K13A1))
    ref = extract_dt(d)
    for start in range(1, d.n_edges + 1, 5):
        for rev in (False, True):
            assert extract_dt(d.relabel(start, rev)) == ref


@pytest.mark.parametrize("code", corpus_codes(), ids=lambda c: c.name)
def test_roundtrip_corpus(code):
    assert extract_dt(realize(code)).entries == canonicalize(code).entries


def test_canonicalize_is_idempotent():
    for code in corpus_codes():
        once = canonicalize(code)
        assert canonicalize(once) == once
