"""Hypothesis strategies for random valid graphs."""

import math

from hypothesis import strategies as st

from numbers_game import validate
from numbers_game.scalars import EGCM

# Coxeter labels, with 0 standing for an amplitude product >= 4
LABELS = [3, 3, 3, 3, 4, 4, 5, 6, 7, 10, 0]
BIG_PRODUCTS = [4.0, 4.5, 6.25]


def _amplitude(label, big):
    if label == 0:
        return math.sqrt(big)
    return 2 * math.cos(math.pi / label)


@st.composite
def egcm_graphs(draw, max_n=8, trees_only=False, symmetric=False):
    n = draw(st.integers(1, max_n))
    rows = [[2.0 if i == j else 0.0 for j in range(n)] for i in range(n)]
    pairs = [(draw(st.integers(0, v - 1)), v) for v in range(1, n)]
    if not trees_only:
        extra = draw(st.integers(0, 2))
        for _ in range(extra):
            if n >= 3:
                a = draw(st.integers(0, n - 1))
                b = draw(st.integers(0, n - 1))
                if a != b and (min(a, b), max(a, b)) not in {(min(p), max(p)) for p in pairs}:
                    pairs.append((a, b))
    for a, b in pairs:
        label = draw(st.sampled_from(LABELS))
        c = _amplitude(label, draw(st.sampled_from(BIG_PRODUCTS)))
        r = 1.0 if symmetric else draw(st.sampled_from([1.0, 1.0, 0.5, 2.0, 3.0]))
        rows[a][b] = -r * c
        rows[b][a] = -c / r
    return validate(rows, EGCM)


@st.composite
def gcm_graphs(draw, max_n=5, connected=True):
    n = draw(st.integers(1, max_n))
    rows = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    pairs = [(draw(st.integers(0, v - 1)), v) for v in range(1, n)] if connected else []
    for i in range(n):
        for j in range(i + 1, n):
            if (i, j) not in pairs and draw(st.integers(0, 4)) == 0:
                pairs.append((i, j))
    for a, b in pairs:
        rows[a][b] = -draw(st.integers(1, 3))
        rows[b][a] = -draw(st.integers(1, 3))
    return validate(rows)
