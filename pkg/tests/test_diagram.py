from collections import Counter

import pytest

from conftest import K13A1, K13A1_REGIONS, corpus_codes
from gridforge.codec import parse_dt
from gridforge.diagram import (
    PlanarDiagram,
    RealizationError,
    check_reduced_prime,
    dump,
    realize,
    regions,
)


def _rotations_key(seq):
    seq = list(seq)
    return min(tuple(seq[i:] + seq[:i]) for i in range(len(seq)))


def test_13a1_counts():
    d = realize(parse_dt(K13A1))
    assert (d.n_crossings, d.n_edges, len(regions(d))) == (13, 26, 15)


def test_13a1_regions_match_golden():
    rs = regions(realize(parse_dt(K13A1)))
    got = sorted(_rotations_key(r.boundary) for r in rs)
    want = sorted(_rotations_key(r) for r in K13A1_REGIONS)
    assert got == want


def test_13a1_unbounded_region():
    rs = regions(realize(parse_dt(K13A1)))
    outer = [r for r in rs if r.orientation == -1]
    assert len(outer) == 1
    assert _rotations_key(outer[0].boundary) == _rotations_key([-3, -7, -13, -19, -23, 26])


def test_trefoil_regions():
    rs = regions(realize(parse_dt("4 6 2")))
    assert len(rs) == 5
    assert sorted(len(r) for r in rs) == [2, 2, 2, 3, 3]


def test_unknot_regions():
    assert len(regions(PlanarDiagram(()))) == 2


def test_single_crossing_is_a_kink():
    d = realize(parse_dt("2"))
    assert check_reduced_prime(d).kind == "kink"
    assert check_reduced_prime(d).label == 1


def test_13a1_is_reduced_prime():
    assert check_reduced_prime(realize(parse_dt(K13A1))).ok


def _has_block_split(pairs, n):
    # brute force: a proper cyclic interval holding both ends of every chord it touches
    for length in range(2, n - 1):
        for s in range(1, n + 1):
            block = {(s - 1 + i) % n + 1 for i in range(length)}
            if all((a in block) == (b in block) for a, b in pairs):
                return True
    return False


def test_granny_knot_is_composite():
    pairs = {(1, 4), (3, 6), (5, 2)} | {(7, 10), (9, 12), (11, 8)}
    assert _has_block_split(pairs, 12)
    d = realize(parse_dt("4 6 2 10 12 8"))
    assert check_reduced_prime(d).kind == "composite"


def _interleave(p, q):
    a, b = sorted(p)
    return (a < q[0] < b) != (a < q[1] < b)


def test_non_realizable_code():
    code = parse_dt("4 6 8 10 2")
    chords = [(2 * k + 1, e) for k, e in enumerate(code.entries)]
    # planarity obstruction: two disjoint chords sharing an odd number of
    # interleaving chords
    odd_pair = any(
        not _interleave(p, q)
        and sum(_interleave(p, r) and _interleave(q, r) for r in chords) % 2
        for p in chords for q in chords if p < q
    )
    assert odd_pair
    with pytest.raises(RealizationError) as info:
        realize(code)
    assert info.value.chords


def test_realize_is_deterministic():
    code = parse_dt(K13A1)
    assert realize(code) == realize(code)


def test_dump_lists_each_crossing():
    d = realize(parse_dt("4 6 2"))
    lines = dump(d).splitlines()
    assert len(lines) == 3 and all("over=1,3" in line for line in lines)


@pytest.mark.parametrize("code", corpus_codes(), ids=lambda c: c.name)
def test_structure_corpus(code):
    d = realize(code)
    rs = regions(d)
    v, e, f = d.n_crossings, d.n_edges, len(rs)
    assert v - e + f == 2
    assert sum(len(r) for r in rs) == 2 * e
    assert sum(r.orientation == -1 for r in rs) == 1
    darts = Counter(h for r in rs for h in r.boundary)
    assert all(darts[k] == 1 and darts[-k] == 1 for k in range(1, e + 1))
    assert d.is_alternating()
    assert check_reduced_prime(d).ok


def test_mirror_flips_writhe():
    d = realize(parse_dt("4 6 2"))
    assert d.mirror().writhe() == -d.writhe()
    assert d.mirror().mirror() == d
