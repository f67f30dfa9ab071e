import json

import pytest
from hypothesis import given, strategies as st

from numbers_game import catalog, check_m_structure, infer_finite_type, j_components, validate, validate_poset, weight
from numbers_game.errors import (
    ColorOutOfRange,
    CycleDetected,
    DuplicateCover,
    IndexMismatch,
    NotRanked,
    StructureNotVerified,
    UnknownElement,
)
from numbers_game.serialize import poset_from_json, poset_to_json

from conftest import fixture_path
from oracles import chain_weights

A2 = catalog("A2")
B2 = catalog("B2")


def load(name):
    with open(fixture_path(name)) as fh:
        return json.load(fh)


def chain(colors, n):
    elems = [f"x{k}" for k in range(len(colors) + 1)]
    covers = [(elems[k], elems[k + 1], c) for k, c in enumerate(colors)]
    return validate_poset(elems, covers, n)


def test_chain_is_valid(a2_chain_raw):
    p = poset_from_json(a2_chain_raw)
    assert p.length == 2
    assert p.covers == (("x0", "x1", 0), ("x1", "x2", 1))
    assert poset_to_json(p) == {k: a2_chain_raw[k] for k in ("n", "elements", "covers")}


def test_two_cycle():
    with pytest.raises(CycleDetected):
        validate_poset(["x", "y"], [("x", "y", 0), ("y", "x", 0)], 1)


def test_skipping_cover_is_not_ranked():
    covers = [("a", "b", 0), ("a", "c", 0), ("c", "d", 0), ("b", "d", 0), ("a", "d", 0)]
    with pytest.raises(NotRanked):
        validate_poset("abcd", covers, 1)


def test_input_errors():
    with pytest.raises(ColorOutOfRange):
        validate_poset(["x", "y"], [("x", "y", 2)], 2)
    with pytest.raises(UnknownElement):
        validate_poset(["x"], [("x", "y", 0)], 1)
    with pytest.raises(DuplicateCover):
        validate_poset(["x", "y"], [("x", "y", 0), ("x", "y", 1)], 2)
    with pytest.raises(CycleDetected):
        validate_poset(["x"], [("x", "x", 0)], 1)
    with pytest.raises(NotRanked):
        validate_poset(["x", "y"], [("x", "y", 0)], 1, rank={"x": 0, "y": 2})


def test_j_components():
    p = chain([0, 1], 2)
    assert j_components(p, {0}) == [("x0", "x1"), ("x2",)]
    assert j_components(p, {0, 1}) == [("x0", "x1", "x2")]
    assert j_components(p, set()) == [("x0",), ("x1",), ("x2",)]


def test_weights():
    p = chain([0, 1], 2)
    assert [weight(p, x) for x in p.elements] == [(-1, 0), (1, -1), (0, 1)]
    single = validate_poset(["s"], [], 3)
    assert weight(single, "s") == (0, 0, 0)
    with pytest.raises(UnknownElement):
        weight(p, "nope")


def test_structure_examples():
    assert check_m_structure(chain([0, 1], 2), A2).ok
    bad = check_m_structure(chain([0, 0], 2), A2)
    assert not bad.ok and [v["edge"] for v in bad.violations] == [0, 1]
    for length in range(1, 7):
        assert check_m_structure(chain([0] * length, 1), catalog("A1")).ok
    with pytest.raises(IndexMismatch):
        check_m_structure(chain([0, 1], 2), catalog("A3"))


def test_report_fields():
    rep = check_m_structure(chain([0, 1], 2), A2)
    assert rep.colors_used == [0, 1] and rep.surjective and rep.all_sufficient
    assert rep.to_dict()["ranked_component_failures"] == []


def test_inference_examples():
    inf = infer_finite_type(chain([0, 1], 2), A2)
    assert [c.catalog_id for c in inf.classifications] == ["A2"]
    assert inf.chain == ["x2", "x1", "x0"]
    assert inf.fired == [1, 0]
    assert inf.weights == [(0, 1), (1, -1), (-1, 0)]
    a1 = infer_finite_type(chain([0, 0], 1), catalog("A1"))
    assert a1.classifications[0].catalog_id == "A1" and a1.weights[0] == (2,)
    b2 = infer_finite_type(poset_from_json(load("b2_orbit_poset.json")), B2)
    assert b2.chain == ["z3", "z2", "z1", "z0"]


def test_inference_needs_sufficient_coloring():
    g = validate([[2, 0], [0, 2]])
    p = chain([0, 0], 2)
    assert check_m_structure(p, g).ok
    with pytest.raises(StructureNotVerified):
        infer_finite_type(p, g)
    with pytest.raises(StructureNotVerified):
        infer_finite_type(chain([0, 0], 2), A2)


# ---------------------------------------------------------------------------
# bundled fixtures and their mutations

POSITIVE = [("a2_chain.json", A2), ("a1_chain.json", catalog("A1")), ("b2_orbit_poset.json", B2)]


def _mutations(raw):
    covers = raw["covers"]
    for k in range(len(covers)):
        for c in range(1, raw["n"] + 1):
            if c != covers[k][2]:
                new = [list(cv) for cv in covers]
                new[k][2] = c
                yield "recolor", dict(raw, covers=new)
        yield "delete", dict(raw, covers=[cv for j, cv in enumerate(covers) if j != k])


@pytest.mark.parametrize("name, g", POSITIVE, ids=[n for n, _ in POSITIVE])
def test_positive_fixtures_pass(name, g):
    p = poset_from_json(load(name))
    assert check_m_structure(p, g).ok
    infer_finite_type(p, g)


@pytest.mark.parametrize("name, g", [POSITIVE[0], POSITIVE[2]], ids=["a2", "b2"])
def test_mutations_fail_with_located_violations(name, g):
    raw = load(name)
    for kind, mutated in _mutations(raw):
        p = poset_from_json(mutated)
        rep = check_m_structure(p, g)
        assert not rep.ok, (kind, mutated)
        assert rep.violations
        for v in rep.violations:
            assert tuple(v["cover"]) == p.covers[v["edge"]]
            assert tuple(v["expected"]) != tuple(v["actual"])


def test_a2_cover_deletions_give_one_violation():
    raw = load("a2_chain.json")
    for kind, mutated in _mutations(raw):
        if kind == "delete":
            assert len(check_m_structure(poset_from_json(mutated), A2).violations) == 1


# ---------------------------------------------------------------------------
# random ranked posets


@st.composite
def ranked_posets(draw, n_colors=3):
    layers = draw(st.lists(st.integers(1, 3), min_size=1, max_size=5))
    elems, covers, prev = [], [], []
    for r, width in enumerate(layers):
        cur = [f"e{r}_{k}" for k in range(width)]
        for x in cur:
            if prev:
                parents = draw(st.sets(st.sampled_from(prev), min_size=1))
                for s in sorted(parents):
                    covers.append((s, x, draw(st.integers(0, n_colors - 1))))
        elems += cur
        prev = cur
    return validate_poset(elems, covers, n_colors)


@given(ranked_posets())
def test_weights_match_oracle_and_parity(p):
    ref = chain_weights(p.elements, p.covers, p.n)
    for x in p.elements:
        w = weight(p, x)
        assert w == ref[x]
        for i in range(p.n):
            comp = p.component(i, x)
            length = max(p.rank[y] for y in comp) - min(p.rank[y] for y in comp)
            assert (w[i] - length) % 2 == 0


@given(st.lists(st.integers(0, 2), min_size=1, max_size=8))
def test_chain_components_are_antisymmetric(colors):
    p = chain(colors, 3)
    for i in range(3):
        for comp in j_components(p, {i}):
            bottom, top = comp[0], comp[-1]
            assert weight(p, top)[i] == -weight(p, bottom)[i]


@given(st.sampled_from(["A2", "A3", "B2", "B3", "C3", "G2", "D4"]), st.data())
def test_descent_on_game_posets(cid, data):
    # the firing graph of a game from a dominant weight is an M-structure chain
    from numbers_game import play

    g = catalog(cid)
    lam = data.draw(st.lists(st.integers(0, 2), min_size=g.n, max_size=g.n).filter(any))
    out = play(g, lam)
    if len(set(out.trace.fired)) < g.n:
        return
    k = len(out.trace.fired)
    elems = [f"p{j}" for j in range(k + 1)]
    covers = [(elems[k - j], elems[k - j - 1], i) for j, i in enumerate(out.trace.fired)]
    p = validate_poset(elems, covers, g.n)
    rep = check_m_structure(p, g)
    if not rep.ok:
        return
    inf = infer_finite_type(p, g)
    ranks = [p.rank[x] for x in inf.chain]
    assert all(a > b for a, b in zip(ranks, ranks[1:]))
    assert len(inf.chain) <= p.length + 1
    assert all(c.admissible for c in inf.classifications)
