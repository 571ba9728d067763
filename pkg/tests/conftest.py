import random
from pathlib import Path

import pytest
from hypothesis import strategies as st

from gridforge.codec import parse_dt, read_table
from gridforge.grid import GridDiagram

DATA = Path(__file__).resolve().parents[1] / "src" / "gridforge" / "data"
CORPUS_FILE = DATA / "alternating_3_8.txt"

K13A1 = "13a1 4 8 10 14 2 16 20 6 22 24 12 26 18"
K13A1_TREE = (-25, -22, 18, -21, -16, 12, -15, -10, 6, -9, -4, 2)
K13A1_SPOKES = ((2, 7), (1, 3), (2, 14), (4, 15), (1, 14), (3, 12), (5, 13), (12, 15),
                (4, 10), (6, 11), (10, 13), (5, 8), (7, 9), (8, 11), (6, 9))
K13A1_REGIONS = [
    [2, 8], [6, 14], [12, 20], [18, 24], [-1, 4, -9], [1, -8, 3], [-5, 10, -15],
    [-11, 16, -21], [-17, 22, -25], [-18, 25, 23], [-4, -26, -22, -16, -10],
    [-6, 15, 11, -20, 13], [-12, 21, 17, -24, 19], [-2, 9, 5, -14, 7],
    [-3, -7, -13, -19, -23, 26],
]
K13A1_TRACE = (0, -1, 1, -2, 2, 3, -3, 4, 5, -4, 6, 7, -5, 8, -6)

# |Delta(-1)| for the table entries, in table order
DETERMINANTS = dict(zip(
    "3_1 4_1 5_1 5_2 6_1 6_2 6_3 7_1 7_2 7_3 7_4 7_5 7_6 7_7 8_1 8_2 8_3 8_4 8_5 8_6 "
    "8_7 8_8 8_9 8_10 8_11 8_12 8_13 8_14 8_15 8_16 8_17 8_18".split(),
    [3, 5, 5, 7, 9, 11, 13, 7, 11, 13, 15, 17, 19, 21, 13, 17, 17, 19, 21, 23, 23, 25,
     25, 27, 27, 29, 29, 31, 33, 35, 37, 45],
))


def corpus_codes(with_13a1=True):
    codes = [c for _, c in read_table(CORPUS_FILE.read_text().splitlines())]
    if with_13a1:
        codes.append(parse_dt(K13A1))
    return codes


@pytest.fixture(scope="session")
def corpus():
    return corpus_codes()


def grid_from_cycle(cols_order, heights):
    """Column cols_order[k] spans heights[k]..heights[k+1] (cyclically)."""
    n = len(cols_order)
    cols = [None] * n
    for k in range(n):
        cols[cols_order[k]] = (heights[k], heights[(k + 1) % n])
    return GridDiagram(tuple(cols))


@st.composite
def grids(draw, min_n=2, max_n=10):
    n = draw(st.integers(min_n, max_n))
    p = draw(st.permutations(range(n)))
    q = draw(st.permutations(range(1, n + 1)))
    return grid_from_cycle(p, q)


def random_grids(count, seed=20240601, max_n=10):
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        n = rng.randint(2, max_n)
        p, q = list(range(n)), list(range(1, n + 1))
        rng.shuffle(p)
        rng.shuffle(q)
        out.append(grid_from_cycle(p, q))
    return out


# one line per acceptance criterion, filled in by test_acceptance.py
ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[k])
