"""Structural recognition of admissible graphs and of the affine obstructions.

Recognition walks a fixed decision tree on a connected graph:

1. an edge with amplitude product >= 4 (an A~1 subgraph),
2. a cycle,
3. a label >= 6 edge with a neighbouring edge (G~2 family),
4. two labeled (m >= 4) edges (C~ family),
5. one labeled edge plus a branch node (B~ family),
6. a single labeled edge on a path, matched by leg lengths,
7. simply-laced trees, matched by branch degree and leg lengths.

Every inadmissible verdict carries a witness: a family name and a node list
that induces an obstruction subgraph. ``id`` is filled in when the witness is
the whole graph and matches a catalog entry exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

from .catalog import parse_id, positive_root_count
from .errors import BudgetExceeded, NotConnected
from .graph import (
    INFINITY,
    AmplitudeGraph,
    connected_components,
    coxeter_label,
    induced_subgraph,
    is_connected,
)
from .scalars import GCM

FINITE_TYPE = "FiniteType"
ECOXETER = "ECoxeter"
INADMISSIBLE = "Inadmissible"


@dataclass(frozen=True)
class Classification:
    verdict: str
    catalog_id: Optional[str]
    nodes: tuple
    witness: Optional[dict] = field(default=None, compare=False)

    @property
    def admissible(self) -> bool:
        return self.verdict != INADMISSIBLE

    def to_dict(self):
        out = {"verdict": self.verdict, "id": self.catalog_id, "nodes": list(self.nodes)}
        if self.witness is not None:
            out["witness"] = dict(self.witness)
        return out


def _admissible(g, gcm_id, e_id):
    if g.kind == GCM:
        return FINITE_TYPE, gcm_id, None
    return ECOXETER, e_id, None


def _obstruction(g, family, nodes, exact_id=None, **extra):
    nodes = list(nodes)
    whole = sorted(nodes) == list(range(g.n))
    witness = {"family": family, "nodes": nodes, "id": exact_id if whole else None}
    witness.update(extra)
    return INADMISSIBLE, witness["id"], witness


def _find_cycle(g):
    parent = {0: None}
    stack = [(0, None)]
    while stack:
        v, par = stack.pop()
        for w in g.neighbors[v]:
            if w == par:
                continue
            if w in parent:
                # unwind both ancestor chains to the meeting point
                path_v, x = [], v
                anc_w = []
                y = w
                while y is not None:
                    anc_w.append(y)
                    y = parent[y]
                while x not in anc_w:
                    path_v.append(x)
                    x = parent[x]
                meet = x
                path_w = anc_w[: anc_w.index(meet)]
                return path_v + [meet] + list(reversed(path_w))
            parent[w] = v
            stack.append((w, v))
    return None


def _tree_path(g, a, b):
    parent = {a: None}
    queue = [a]
    for v in queue:
        if v == b:
            break
        for w in g.neighbors[v]:
            if w not in parent:
                parent[w] = v
                queue.append(w)
    path = [b]
    while path[-1] != a:
        path.append(parent[path[-1]])
    return path[::-1]


def _leg(g, start, away_from):
    """Nodes reached walking from ``start`` away from ``away_from`` along a chain."""
    leg, prev, cur = [], away_from, start
    while True:
        leg.append(cur)
        nxt = [w for w in g.neighbors[cur] if w != prev]
        if len(nxt) != 1:
            return leg
        prev, cur = cur, nxt[0]


def _abs(x):
    return -x if x < 0 else x


_G2_TABLE = {(1, 3, 1, 1): 1, (1, 3, 1, 2): 2, (1, 3, 1, 3): 3,
             (3, 1, 1, 1): 4, (1, 3, 2, 1): 5, (1, 3, 3, 1): 6}


def _g2_variant(g, x, y, z):
    for a, b, c in ((x, y, z), (z, y, x)):
        key = tuple(int(_abs(g.matrix[p][q])) for p, q in ((a, b), (b, a), (b, c), (c, b)))
        if key in _G2_TABLE:
            return _G2_TABLE[key]
    return None


def _recognize(g: AmplitudeGraph):
    n = g.n
    gcm = g.kind == GCM
    if n == 1:
        return _admissible(g, "A1", "calA1")
    labels = {e: coxeter_label(g, *e) for e in g.edges}

    # 1. products >= 4
    for (i, j), m in labels.items():
        if m == INFINITY:
            p = float(g.product(i, j))
            exact = "affA~1" if abs(p - 4) <= 1e-9 else None
            return _obstruction(g, "AffA", [i, j], exact, edge=[i, j], product=p)

    # 2. cycles
    if len(g.edges) >= n:
        cyc = _find_cycle(g)
        k = len(cyc)
        cyc_edges = [tuple(sorted((cyc[t], cyc[(t + 1) % k]))) for t in range(k)]
        plain = all(labels[e] == 3 for e in cyc_edges)
        whole = k == n and len(g.edges) == n
        if plain:
            return _obstruction(g, "AffA", cyc, f"affA~{k - 1}" if whole else None)
        exact = None
        if k == 3 and whole and gcm:
            exact = _small_cycle_id(g, labels)
        return _obstruction(g, "SmallCycle" if k == 3 else "AffA", cyc, exact)

    # the graph is now a tree
    labeled = sorted(e for e, m in labels.items() if m >= 4)
    branch = [v for v in range(n) if g.degree(v) >= 3]

    # 3. label >= 6 next to another edge
    for u, v in labeled:
        m = labels[(u, v)]
        if m < 6:
            continue
        for a, b in ((u, v), (v, u)):
            others = [w for w in g.neighbors[a] if w != b]
            if others:
                nodes = [b, a, others[0]]
                exact = None
                if n == 3 and m == 6:
                    if gcm:
                        var = _g2_variant(g, b, a, others[0])
                        exact = f"affG~2.{var}" if var else None
                    elif labels[tuple(sorted((a, others[0])))] == 3:
                        exact = "affG~2.1"
                return _obstruction(g, "AffG2", nodes, exact)

    # 4. two labeled edges
    if len(labeled) >= 2:
        (u1, v1), (u2, v2) = labeled[0], labeled[1]
        path = max((_tree_path(g, a, b) for a in (u1, v1) for b in (u2, v2)), key=len)
        exact = None
        whole_path = len(path) == n and all(g.degree(v) <= 2 for v in range(n))
        if whole_path and len(labeled) == 2:
            ends = {tuple(sorted(path[:2])), tuple(sorted(path[-2:]))}
            if ends == set(labeled) and all(labels[e] == 4 for e in labeled):
                if gcm:
                    long_ends = sum(
                        _abs(g.matrix[e][f]) == 2 for e, f in ((path[0], path[1]), (path[-1], path[-2]))
                    )
                    fam = {2: "C", 0: "B'", 1: "C'"}[long_ends]
                    exact = f"aff{fam}~{n - 1}"
                else:
                    exact = f"affC~{n - 1}"
        return _obstruction(g, "AffC", path, exact)

    # 5. one labeled edge plus a branch node
    if labeled and branch:
        u, v = labeled[0]
        c = min(branch, key=lambda b: (min(len(_tree_path(g, b, u)), len(_tree_path(g, b, v))), b))
        pu, pv = _tree_path(g, c, u), _tree_path(g, c, v)
        path = pu + [v] if len(pu) < len(pv) else pv + [u]
        extra = [w for w in g.neighbors[c] if w not in path][:2]
        nodes = [extra[0]] + path + [extra[1]]
        exact = None
        if len(nodes) == n and labels[(u, v)] == 4:
            if gcm:
                end, prev = path[-1], path[-2]
                fam = "C''" if _abs(g.matrix[end][prev]) == 2 else "B"
                exact = f"aff{fam}~{n - 1}"
            else:
                exact = f"affB~{n - 1}"
        return _obstruction(g, "AffB", nodes, exact)

    # 6. a single labeled edge on a path
    if labeled:
        u, v = labeled[0]
        m = labels[(u, v)]
        leg_u = _leg(g, u, v)[1:]
        leg_v = _leg(g, v, u)[1:]
        x, y, lx, ly = (u, v, leg_u, leg_v) if len(leg_u) <= len(leg_v) else (v, u, leg_v, leg_u)
        a, b = len(lx), len(ly)
        if a >= 1:
            if m == 4:
                if (a, b) == (1, 1):
                    return _admissible(g, "F4", "calF4")
                nodes = [lx[0], x, y, ly[0], ly[1]]
                exact = None
                if n == 5:
                    if gcm:
                        exact = "affF~4" if _abs(g.matrix[y][x]) == 2 else "affF'~4"
                    else:
                        exact = "affF~4"
                return _obstruction(g, "AffF4", nodes, exact)
            return _obstruction(g, "AffH3", [lx[0], x, y, ly[0]], "affH~3" if m == 5 else None)
        if m == 4:
            if n == 2:
                return _admissible(g, "B2", "I2(4)")
            fam = "B" if _abs(g.matrix[x][y]) == 1 else "C"
            return _admissible(g, f"{fam}{n}", f"calB{n}")
        if m == 5:
            if b <= 2:
                return _admissible(g, None, {0: "I2(5)", 1: "calH3", 2: "calH4"}[b])
            return _obstruction(g, "AffH4", [x, y] + ly[:3], "affH~4")
        # m >= 6 on a lone edge
        return _admissible(g, "G2" if m == 6 else None, f"I2({m})")

    # 7. simply laced trees
    big = [v for v in range(n) if g.degree(v) >= 4]
    if big:
        c = big[0]
        nb = list(g.neighbors[c][:4])
        return _obstruction(g, "AffD", [nb[0], c, nb[1], nb[2], nb[3]], "affD~4")
    if len(branch) >= 2:
        c1, c2 = min(
            ((p, q) for p in branch for q in branch if p < q),
            key=lambda pq: (len(_tree_path(g, *pq)), pq),
        )
        path = _tree_path(g, c1, c2)
        e1 = [w for w in g.neighbors[c1] if w not in path][:2]
        e2 = [w for w in g.neighbors[c2] if w not in path][:2]
        # catalog order: path a1, c1, ..., c2, a2; then the leaf on c1, the leaf on c2
        nodes = [e1[0]] + path + [e2[0]] + [e1[1], e2[1]]
        return _obstruction(g, "AffD", nodes, f"affD~{n - 1}")
    if not branch:
        return _admissible(g, f"A{n}", f"calA{n}")
    c = branch[0]
    legs = sorted((_leg(g, w, c) for w in g.neighbors[c]), key=len)
    p, q, r = (len(leg) for leg in legs)
    if (p, q) == (1, 1):
        return _admissible(g, f"D{n}", f"calD{n}")
    if (p, q) == (1, 2) and r <= 4:
        e = {2: "E6", 3: "E7", 4: "E8"}[r]
        return _admissible(g, e, "cal" + e)
    if (p, q) == (1, 2):
        nodes = legs[1][::-1] + [c] + legs[2][:5] + legs[0]
        return _obstruction(g, "AffE8", nodes, "affE~8")
    if p == 1:
        nodes = legs[1][:3][::-1] + [c] + legs[2][:3] + legs[0]
        return _obstruction(g, "AffE7", nodes, "affE~7")
    nodes = legs[0][:2][::-1] + [c] + legs[1][:2] + legs[2][:2]
    return _obstruction(g, "AffE6", nodes, "affE~6")


def _small_cycle_id(g, labels):
    plain = sorted(e for e in g.edges if labels[e] == 3)
    if not plain:
        return None
    a, b = plain[0]
    (c,) = set(range(3)) - {a, b}
    vals = [-g.matrix[a][c], -g.matrix[c][a], -g.matrix[b][c], -g.matrix[c][b]]
    return "affCycle({},{},{},{})".format(*(int(v) for v in vals))


def recognize(g: AmplitudeGraph) -> Classification:
    """Classify a connected graph by structure alone."""
    if not is_connected(g):
        raise NotConnected("recognize needs a connected graph; use classify_components")
    verdict, cid, witness = _recognize(g)
    return Classification(verdict, cid, tuple(range(g.n)), witness)


@lru_cache(maxsize=4096)
def classify_components(g: AmplitudeGraph) -> tuple:
    """Classification of each connected component, node ids in the original numbering."""
    out = []
    for comp in connected_components(g):
        verdict, cid, witness = _recognize(induced_subgraph(g, comp))
        if witness is not None:
            witness = dict(witness)
            witness["nodes"] = [comp[v] for v in witness["nodes"]]
            for key in ("edge",):
                if key in witness:
                    witness[key] = [comp[v] for v in witness[key]]
        out.append(Classification(verdict, cid, tuple(comp), witness))
    return tuple(out)


def is_admissible(g: AmplitudeGraph):
    """(admissible?, Classification) for a connected graph."""
    cls = recognize(g)
    return cls.admissible, cls


@lru_cache(maxsize=4096)
def finite_positive_roots(g: AmplitudeGraph) -> Optional[int]:
    """Total positive-root count when every component is finite type, else None."""
    total = 0
    for cls in classify_components(g):
        if not cls.admissible:
            return None
        total += positive_root_count(parse_id(cls.catalog_id))
    return total


def cross_validate(g: AmplitudeGraph, budget: int = 10**4, strict: bool = False) -> dict:
    """Compare structure, spectrum and play from every fundamental position.

    Play never reports divergence from a step limit; a game that neither
    converges nor carries a certificate is "inconclusive" (BudgetExceeded
    with ``strict``).
    """
    from .engine import play
    from .spectral import SUB, certify_divergence, trichotomy

    cls = recognize(g)
    tri = trichotomy(g)[0]
    games = []
    for i in range(g.n):
        start = g.fundamental(i)
        cert = certify_divergence(g, start)
        if cert is not None:
            games.append({"node": i, "result": "divergent"})
            continue
        out = play(g, start, limit=budget, certify=False)
        if out.converged:
            games.append({"node": i, "result": "converged", "steps": out.steps})
        else:
            games.append({"node": i, "result": "inconclusive", "steps": out.steps})
    results = {gm["result"] for gm in games}
    if "inconclusive" in results:
        empirical = "inconclusive"
        if strict:
            raise BudgetExceeded(f"budget {budget} too small to settle every fundamental game")
    elif results == {"converged"}:
        empirical = "convergent"
    else:
        empirical = "divergent"
    structural = cls.admissible
    spectral_ok = tri == SUB
    agree = structural == spectral_ok and empirical == ("convergent" if structural else "divergent")
    return {
        "classification": cls.to_dict(),
        "trichotomy": tri,
        "empirical": empirical,
        "games": games,
        "agree": agree,
    }
