import itertools
import math

import pytest
from hypothesis import given, strategies as st

from numbers_game import catalog, coxeter_matrix, is_reduced, longest_length, orbit, validate
from numbers_game.coxeter import expected_order, word_to_firings
from numbers_game.errors import CapExceeded, NotFiniteType, NotStronglyDominant

from oracles import bfs_depths, reflect_vec


def test_coxeter_matrix_examples():
    assert coxeter_matrix(catalog("A2")) == ((1, 3), (3, 1))
    assert coxeter_matrix(catalog("B2"))[0][1] == 4
    assert coxeter_matrix(validate([[2, 0], [0, 2]]))[0][1] == 2
    h3 = coxeter_matrix(catalog("calH3"))
    assert h3 == ((1, 5, 2), (5, 1, 3), (2, 3, 1))
    assert coxeter_matrix(catalog("affA~1"))[0][1] == math.inf


def test_word_order():
    assert word_to_firings([2, 0, 1]) == [1, 0, 2]


def test_reduced_examples():
    assert is_reduced(catalog("A2"), [0, 1, 0])
    assert not is_reduced(catalog("A2"), [0, 0])
    assert not is_reduced(catalog("B2"), [0, 1, 0, 1, 0])
    assert is_reduced(catalog("B2"), [0, 1, 0, 1])
    assert is_reduced(catalog("A2"), [])
    with pytest.raises(ValueError):
        is_reduced(catalog("A2"), [2])


@pytest.mark.parametrize(
    "cid, seed, size, length",
    [("A2", None, 6, 3), ("B2", None, 8, 4), ("G2", (1, 2), 12, 6), ("A3", None, 24, 6),
     ("I2(5)", None, 10, 5), ("calH3", None, 120, 15), ("B3", None, 48, 9), ("D4", None, 192, 12),
     ("F4", None, 1152, 24)],
)
def test_orbit_sizes(cid, seed, size, length):
    out = orbit(catalog(cid), seed)
    assert (out.size, out.longest_length, out.infinite) == (size, length, False)


def test_orbit_matches_bfs_oracle():
    for cid in ("A2", "B2", "G2", "A3", "C3"):
        g = catalog(cid)
        depths = bfs_depths(g.matrix, g.ones())
        out = orbit(g, keep_positions=True)
        assert out.depths == depths


def test_orbit_special_cases():
    assert orbit(catalog("affA~2")).infinite
    assert orbit(catalog("affA~2")).to_dict()["size"] == "Infinite"
    with pytest.raises(NotStronglyDominant):
        orbit(catalog("A2"), (1, 0))
    with pytest.raises(CapExceeded):
        orbit(catalog("A3"), cap=10)
    with pytest.raises(CapExceeded):
        orbit(catalog("E8"))
    assert expected_order(catalog("E8")) == 696729600


def test_threaded_orbit_is_identical():
    g = catalog("calH3")
    one = orbit(g, keep_positions=True)
    many = orbit(g, keep_positions=True, threads=4)
    assert one.positions == many.positions and one.depths == many.depths


def test_approx_orbit_points_are_distinct():
    out = orbit(catalog("calH3"), keep_positions=True)
    pts = out.positions
    for a, b in itertools.combinations(pts, 2):
        assert max(abs(x - y) for x, y in zip(a, b)) > 1e-7


def test_longest_length_examples():
    assert longest_length(catalog("A4")) == 10
    assert longest_length(catalog("F4")) == 24
    assert longest_length(catalog("D4")) == 12
    with pytest.raises(NotFiniteType):
        longest_length(catalog("affD~4"))


@pytest.mark.parametrize("m", range(4, 13))
def test_dihedral_law(m):
    out = orbit(catalog(f"I2({m})"))
    assert (out.size, out.longest_length) == (2 * m, m)
    assert longest_length(catalog(f"I2({m})")) == m


@pytest.mark.parametrize("cid", ["A2", "B2", "G2", "A3"])
def test_reduced_words_match_orbit_depth(cid):
    g = catalog(cid)
    depth = bfs_depths(g.matrix, g.ones())
    seed = tuple(g.ones())
    max_len = 8 if g.n == 2 else 6
    for length in range(max_len + 1):
        for word in itertools.product(range(g.n), repeat=length):
            lam = seed
            for i in reversed(word):
                lam = reflect_vec(g.matrix, lam, i)
            assert is_reduced(g, list(word)) == (depth[lam] == length), word


RANK3 = ["A1", "A2", "A3", "B2", "B3", "C3", "G2", "calH3", "I2(7)"]


@given(st.sampled_from(RANK3), st.data())
def test_orbit_size_is_seed_independent(cid, data):
    g = catalog(cid)
    ref = orbit(g).size
    seed = data.draw(st.lists(st.integers(1, 9), min_size=g.n, max_size=g.n))
    assert orbit(g, seed).size == ref


@given(st.sampled_from(["A3", "B3", "D4", "G2", "calH3"]), st.data())
def test_reduced_words_are_deletion_stable(cid, data):
    g = catalog(cid)
    word = data.draw(st.lists(st.integers(0, g.n - 1), max_size=10))
    if not is_reduced(g, word):
        return
    for k in range(len(word) + 1):
        assert is_reduced(g, word[:k])
        assert is_reduced(g, word[k:])
