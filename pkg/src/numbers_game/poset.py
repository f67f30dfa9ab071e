"""Edge-colored ranked posets and the M-structure check.

For a color i, the i-component of x is the connected piece of the poset
containing x after deleting every cover of another color. With rho_i(x) the
rank of x inside that piece and l_i(x) the piece's length, the weight of x
has coordinates m_i(x) = 2 rho_i(x) - l_i(x). The poset has M-structure when
every color-i cover s -> t satisfies wt(s) + (row i of M) = wt(t).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional, Sequence

from .errors import (
    ColorOutOfRange,
    ComponentNotRanked,
    CycleDetected,
    DescentFailed,
    DuplicateCover,
    IndexMismatch,
    NotRanked,
    StructureNotVerified,
    UnknownElement,
)
from .graph import AmplitudeGraph, connected_components


@dataclass(frozen=True)
class EdgeColoredPoset:
    n: int
    elements: tuple
    covers: tuple  # (s, t, color), colors 0-based
    rank: dict = field(compare=False)

    @property
    def length(self) -> int:
        return max(self.rank.values()) if self.rank else 0

    @cached_property
    def index(self) -> dict:
        return {x: k for k, x in enumerate(self.elements)}

    @cached_property
    def _comp_cache(self) -> dict:
        return {}

    def component(self, i: int, x) -> tuple:
        """The i-component containing x, as a tuple in element order."""
        table = self._comp_cache.get(i)
        if table is None:
            table = {}
            for comp in j_components(self, {i}):
                for y in comp:
                    table[y] = comp
            self._comp_cache[i] = table
        return table[x]


def validate_poset(elements: Sequence, covers: Sequence, n: int, rank: Optional[dict] = None) -> EdgeColoredPoset:
    """Check colors, acyclicity and rankedness; compute ranks unless given.

    Computed ranks start at 0 on every connected piece of the Hasse diagram.
    A cover that skips a rank (for instance a transitive edge) is rejected
    with NotRanked rather than silently removed.
    """
    elements = tuple(elements)
    if len(set(elements)) != len(elements):
        raise DuplicateCover("element ids must be distinct")
    known = set(elements)
    seen_pairs = set()
    clean = []
    for cov in covers:
        s, t, c = cov
        if s not in known or t not in known:
            raise UnknownElement(f"cover {s!r} -> {t!r} uses an unknown element", s=s, t=t)
        if not isinstance(c, int) or not 0 <= c < n:
            raise ColorOutOfRange(f"color {c!r} is outside 0..{n - 1}", color=c)
        if s == t:
            raise CycleDetected(f"self-cover at {s!r}", element=s)
        if (s, t) in seen_pairs:
            raise DuplicateCover(f"cover {s!r} -> {t!r} listed twice", s=s, t=t)
        seen_pairs.add((s, t))
        clean.append((s, t, c))

    # acyclicity (Kahn)
    indeg = {x: 0 for x in elements}
    out = {x: [] for x in elements}
    for s, t, _ in clean:
        indeg[t] += 1
        out[s].append(t)
    queue = [x for x in elements if indeg[x] == 0]
    done = 0
    for x in queue:
        done += 1
        for t in out[x]:
            indeg[t] -= 1
            if indeg[t] == 0:
                queue.append(t)
    if done != len(elements):
        raise CycleDetected("the cover relation has a directed cycle")

    if rank is None:
        rank = _compute_ranks(elements, clean)
    else:
        rank = dict(rank)
        if set(rank) != known:
            raise NotRanked(None, None)
        for s, t, _ in clean:
            if rank[t] != rank[s] + 1:
                raise NotRanked(s, t)
        values = set(rank.values())
        if values != set(range(max(values) + 1)):
            raise NotRanked(None, None)
    return EdgeColoredPoset(n, elements, tuple(clean), rank)


def _compute_ranks(elements, covers) -> dict:
    adj = {x: [] for x in elements}
    for s, t, _ in covers:
        adj[s].append((t, 1, s, t))
        adj[t].append((s, -1, s, t))
    rank = {}
    for root in elements:
        if root in rank:
            continue
        piece = {root: 0}
        stack = [root]
        while stack:
            v = stack.pop()
            for w, step, s, t in adj[v]:
                want = piece[v] + step
                if w in piece:
                    if piece[w] != want:
                        raise NotRanked(s, t)
                else:
                    piece[w] = want
                    stack.append(w)
        low = min(piece.values())
        for x, r in piece.items():
            rank[x] = r - low
    return rank


def j_components(p: EdgeColoredPoset, colors) -> list:
    """Connected components after keeping only covers colored in ``colors``."""
    colors = set(colors)
    parent = {x: x for x in p.elements}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for s, t, c in p.covers:
        if c in colors:
            a, b = find(s), find(t)
            if a != b:
                parent[a] = b
    groups = {}
    for x in p.elements:
        groups.setdefault(find(x), []).append(x)
    comps = [tuple(g) for g in groups.values()]
    comps.sort(key=lambda comp: p.index[comp[0]])
    return comps


def _component_span(p: EdgeColoredPoset, i: int, comp):
    ranks = [p.rank[y] for y in comp]
    low, high = min(ranks), max(ranks)
    if set(ranks) != set(range(low, high + 1)):
        raise ComponentNotRanked(f"{i}-component {list(comp)} skips a rank", color=i,
                                 component=list(comp))
    return low, high - low


def weight(p: EdgeColoredPoset, x) -> tuple:
    """(m_1(x), ..., m_n(x)) with m_i = 2 rho_i - l_i."""
    if x not in p.index:
        raise UnknownElement(f"unknown element {x!r}", element=x)
    out = []
    for i in range(p.n):
        comp = p.component(i, x)
        low, length = _component_span(p, i, comp)
        out.append(2 * (p.rank[x] - low) - length)
    return tuple(out)


@dataclass
class StructureReport:
    ok: bool
    violations: list
    colors_used: list
    sufficiently_surjective: list
    surjective: bool
    ranked_component_failures: list

    @property
    def all_sufficient(self) -> bool:
        return all(entry["ok"] for entry in self.sufficiently_surjective)

    def to_dict(self):
        return {
            "ok": self.ok,
            "violations": self.violations,
            "colors_used": self.colors_used,
            "sufficiently_surjective": self.sufficiently_surjective,
            "surjective": self.surjective,
            "ranked_component_failures": self.ranked_component_failures,
        }


def check_m_structure(p: EdgeColoredPoset, g: AmplitudeGraph) -> StructureReport:
    """Verify wt(s) + alpha_i = wt(t) on every color-i cover, alpha_i = row i of M."""
    if p.n != g.n:
        raise IndexMismatch(f"poset uses {p.n} colors but the graph has {g.n} nodes",
                            poset_n=p.n, graph_n=g.n)
    failures = []
    for i in range(p.n):
        for comp in j_components(p, {i}):
            try:
                _component_span(p, i, comp)
            except ComponentNotRanked:
                failures.append({"color": i, "component": list(comp)})
    violations = []
    if not failures:
        weights = {x: weight(p, x) for x in p.elements}
        for k, (s, t, i) in enumerate(p.covers):
            expected = tuple(a + g.matrix[i][j] for j, a in enumerate(weights[s]))
            if expected != weights[t]:
                violations.append({
                    "edge": k,
                    "cover": [s, t, i],
                    "expected": [int(v) if v == int(v) else float(v) for v in expected],
                    "actual": list(weights[t]),
                })
    used = sorted({c for _, _, c in p.covers})
    suff = []
    for comp in connected_components(g):
        hit = [c for c in comp if c in used]
        suff.append({"nodes": comp, "ok": bool(hit)})
    return StructureReport(
        ok=not violations and not failures,
        violations=violations,
        colors_used=used,
        sufficiently_surjective=suff,
        surjective=len(used) == g.n,
        ranked_component_failures=failures,
    )


@dataclass
class Inference:
    classifications: list
    chain: list
    fired: list
    weights: list

    def to_dict(self):
        return {
            "classifications": [c.to_dict() for c in self.classifications],
            "chain": list(self.chain),
            "fired": list(self.fired),
            "weights": [list(w) for w in self.weights],
        }


def infer_finite_type(p: EdgeColoredPoset, g: AmplitudeGraph) -> Inference:
    """Conclude finite type from a verified M-structure poset, with descent evidence.

    Starting at the lowest-index element of top rank, play the game from its
    weight with the lowest-index policy. Each firing of node i is matched by
    the lowest-index element of the current i-component at the mirrored
    i-rank; its weight must equal the new position.
    """
    from .classify import classify_components
    from .engine import legal_moves, reflect

    report = check_m_structure(p, g)
    if not report.ok:
        raise StructureNotVerified("the poset does not have M-structure")
    if not report.all_sufficient:
        raise StructureNotVerified("the coloring is not sufficiently surjective")
    if not p.covers:
        raise StructureNotVerified("the poset has no covers")

    classes = list(classify_components(g))
    for cls in classes:
        if not cls.admissible:
            raise DescentFailed(0, f"component {list(cls.nodes)} classifies as {cls.verdict}")

    top = p.length
    current = next(x for x in p.elements if p.rank[x] == top)
    lam = g.position(weight(p, current))
    chain, fired, weights = [current], [], [tuple(lam)]
    step = 0
    while True:
        legal = legal_moves(g, lam)
        if not legal:
            break
        step += 1
        if step > top + 1:
            raise DescentFailed(step - 1, "descent did not terminate within the poset length")
        i = legal[0]
        comp = p.component(i, current)
        low, length = _component_span(p, i, comp)
        mirror = length - (p.rank[current] - low)
        cands = [y for y in comp if p.rank[y] - low == mirror and p.rank[y] < p.rank[current]]
        if not cands:
            raise DescentFailed(step - 1)
        nxt = cands[0]
        lam = reflect(g, lam, i)
        if tuple(weight(p, nxt)) != tuple(lam):
            raise DescentFailed(step - 1, f"weight of {nxt!r} does not match the game position")
        chain.append(nxt)
        fired.append(i)
        weights.append(tuple(lam))
        current = nxt
    return Inference(classes, chain, fired, weights)
