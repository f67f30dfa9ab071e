"""Coxeter matrices, reduced words and orbit enumeration.

A word ``s_{i_p} ... s_{i_2} s_{i_1}`` is stored left to right as the list
``[i_p, ..., i_2, i_1]``; its rightmost letter ``i_1`` is fired first.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence

from .catalog import group_order, parse_id
from .classify import classify_components
from .engine import play, reflect, replay
from .errors import CapExceeded, IllegalFiringAt, NotFiniteType, NotStronglyDominant, OrbitCollision
from .graph import AmplitudeGraph, coxeter_label
from .scalars import EPS_ZERO, GCM

DEFAULT_CAP = 10_000
GRID = 1e-9
AUDIT = 1e-7


def coxeter_matrix(g: AmplitudeGraph) -> tuple:
    """m_ii = 1, m_ij = coxeter_label(g, i, j); ``math.inf`` stands for infinity."""
    return tuple(
        tuple(1 if i == j else coxeter_label(g, i, j) for j in range(g.n)) for i in range(g.n)
    )


def word_to_firings(word: Sequence[int]) -> list:
    """Firing order of a word: the rightmost letter first."""
    return list(reversed(list(word)))


def is_reduced(g: AmplitudeGraph, word: Sequence[int]) -> bool:
    """True iff the word, read right to left, is a legal game from the all-ones position."""
    if any(not 0 <= i < g.n for i in word):
        raise ValueError(f"word letters must lie in 0..{g.n - 1}")
    try:
        replay(g, g.ones(), word_to_firings(word))
    except IllegalFiringAt:
        return False
    return True


@dataclass
class OrbitResult:
    size: Optional[int]
    longest_length: Optional[int]
    infinite: bool = False
    positions: Optional[list] = None
    depths: Optional[dict] = None

    def to_dict(self):
        out = {"size": "Infinite" if self.infinite else self.size,
               "longest_length": self.longest_length,
               "infinite": self.infinite}
        return out


def expected_order(g: AmplitudeGraph) -> Optional[int]:
    """|W| from the classification, or None when some component is not finite type."""
    total = 1
    for cls in classify_components(g):
        if not cls.admissible:
            return None
        total *= group_order(parse_id(cls.catalog_id))
    return total


class _ApproxIndex:
    """Quantized dictionary for float positions.

    Keys round each coordinate to a 1e-9 grid. A coordinate close to a
    rounding boundary is also looked up under its neighbouring key, so two
    representations of the same point never land in different cells.
    """

    def __init__(self):
        self.table = {}

    @staticmethod
    def _candidates(pos):
        keys = [()]
        for x in pos:
            q = x / GRID
            r = round(q)
            opts = [r]
            frac = q - math.floor(q)
            if abs(frac - 0.5) < 0.05:
                opts.append(math.floor(q) if r != math.floor(q) else math.floor(q) + 1)
            keys = [k + (o,) for k in keys for o in opts]
        return keys

    def find(self, pos):
        for key in self._candidates(pos):
            hit = self.table.get(key)
            if hit is not None:
                if max(abs(a - b) for a, b in zip(hit, pos)) >= AUDIT:
                    raise OrbitCollision(f"quantized key collision between {hit} and {pos}")
                return hit
        return None

    def add(self, pos):
        self.table[tuple(round(x / GRID) for x in pos)] = pos


def _neighbours(g, pos):
    out = []
    exact = g.kind == GCM
    for i in range(g.n):
        v = pos[i]
        if v == 0 or (not exact and abs(v) <= EPS_ZERO):
            continue
        out.append(reflect(g, pos, i))
    return out


def orbit(
    g: AmplitudeGraph,
    seed=None,
    cap: int = DEFAULT_CAP,
    keep_positions: bool = False,
    threads: int = 1,
) -> OrbitResult:
    """Breadth-first enumeration of the orbit of a strongly dominant position.

    Every firing map is applied regardless of sign. Orbits of finite-type
    graphs have |W| elements; other graphs return ``infinite=True`` without
    enumerating. ``threads > 1`` expands each frontier in parallel and merges
    in frontier order, so the result equals the sequential one.
    """
    seed = g.ones() if seed is None else g.position(seed)
    if not all(v > (0 if g.kind == GCM else EPS_ZERO) for v in seed):
        raise NotStronglyDominant("orbit seeds must be strictly positive at every node")
    order = expected_order(g)
    if order is None:
        return OrbitResult(None, None, infinite=True)
    if order > cap:
        raise CapExceeded(cap, f"orbit has {order} elements, above the cap {cap}")

    exact = g.kind == GCM
    if exact:
        seen = {seed: 0}
        lookup = seen.get
        remember = seen.__setitem__
    else:
        index = _ApproxIndex()
        seen = {}
        index.add(seed)
        seen[seed] = 0

        def lookup(pos):
            return index.find(pos)

        def remember(pos, depth):
            index.add(pos)
            seen[pos] = depth

    frontier = [seed]
    depth = 0
    pool = ThreadPoolExecutor(threads) if threads > 1 else None
    try:
        while frontier:
            if pool is not None:
                chunks = [frontier[k::threads] for k in range(threads)]
                parts = list(pool.map(lambda ch: [_neighbours(g, p) for p in ch], chunks))
                expanded = [None] * len(frontier)
                for k, part in enumerate(parts):
                    expanded[k::threads] = part
            else:
                expanded = [_neighbours(g, p) for p in frontier]
            nxt = []
            for nbrs in expanded:
                for q in nbrs:
                    if lookup(q) is None:
                        remember(q, depth + 1)
                        nxt.append(q)
                        if len(seen) > cap:
                            raise CapExceeded(cap)
            if nxt:
                depth += 1
            frontier = nxt
    finally:
        if pool is not None:
            pool.shutdown()

    positions = list(seen) if keep_positions else None
    return OrbitResult(len(seen), depth, False, positions, dict(seen) if keep_positions else None)


def longest_length(g: AmplitudeGraph) -> int:
    """Length of the longest element: the game length from the all-ones position."""
    for cls in classify_components(g):
        if not cls.admissible:
            raise NotFiniteType(f"component {list(cls.nodes)} is not of finite type")
    out = play(g, g.ones(), certify=False)
    if not out.converged:
        raise NotFiniteType("the all-ones game did not converge")
    return out.steps
