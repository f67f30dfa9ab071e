"""GCM and E-GCM graphs: validation, components, subgraphs, Coxeter labels."""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .errors import (
    AsymmetricZeroPattern,
    DiagonalNotTwo,
    EmptySubset,
    IllegalAmplitudeProduct,
    MalformedMatrix,
    ModeMismatch,
    NonIntegerGcmEntry,
    PositiveOffDiagonal,
)
from .scalars import EGCM, GCM, KINDS, coerce, to_approx

EPS_AMP = 1e-9
MAX_LABEL = 1000
INFINITY = math.inf

# 4cos^2(pi/k) for k = 3..MAX_LABEL, increasing in k
_LABEL_KS = list(range(3, MAX_LABEL + 1))
_LABEL_PRODUCTS = [4 * math.cos(math.pi / k) ** 2 for k in _LABEL_KS]
_EXACT_LABELS = {0: 2, 1: 3, 2: 4, 3: 6}


def label_for_product(product: float):
    """Coxeter label for an amplitude product, or None if the product is illegal.

    Returns 2 for a zero product, k when the product is 4cos^2(pi/k) within
    EPS_AMP (nearest k in 3..MAX_LABEL), and ``math.inf`` for products at or
    above 4 - EPS_AMP.
    """
    if product == 0:
        return 2
    if product >= 4 - EPS_AMP:
        return INFINITY
    pos = bisect.bisect_left(_LABEL_PRODUCTS, product)
    best = None
    for idx in (pos - 1, pos):
        if 0 <= idx < len(_LABEL_PRODUCTS):
            err = abs(_LABEL_PRODUCTS[idx] - product)
            if err <= EPS_AMP and (best is None or err < best[0]):
                best = (err, _LABEL_KS[idx])
    return None if best is None else best[1]


def amplitude_for_label(m) -> float:
    """Symmetric amplitude magnitude 2cos(pi/m); 2 for m = infinity."""
    if m == INFINITY:
        return 2.0
    return 2 * math.cos(math.pi / m)


@dataclass(frozen=True)
class AmplitudeGraph:
    """A validated amplitude matrix with its underlying simple graph.

    Build instances through :func:`validate` or the catalog; the constructor
    itself does not check the GCM/E-GCM axioms.
    """

    matrix: tuple
    kind: str

    @property
    def n(self) -> int:
        return len(self.matrix)

    @property
    def node_ids(self) -> range:
        return range(self.n)

    def __getitem__(self, ij):
        i, j = ij
        return self.matrix[i][j]

    @cached_property
    def edges(self) -> tuple:
        return tuple(
            (i, j)
            for i in range(self.n)
            for j in range(i + 1, self.n)
            if self.matrix[i][j] != 0
        )

    @cached_property
    def neighbors(self) -> tuple:
        nbrs = [[] for _ in range(self.n)]
        for i, j in self.edges:
            nbrs[i].append(j)
            nbrs[j].append(i)
        return tuple(tuple(sorted(v)) for v in nbrs)

    def degree(self, i: int) -> int:
        return len(self.neighbors[i])

    def product(self, i: int, j: int):
        return self.matrix[i][j] * self.matrix[j][i]

    @property
    def is_exact(self) -> bool:
        return self.kind == GCM

    def rows(self) -> list:
        return [list(row) for row in self.matrix]

    def float_matrix(self) -> list:
        return [[float(x) for x in row] for row in self.matrix]

    def position(self, values) -> tuple:
        """Coerce ``values`` into a position for this graph's arithmetic mode."""
        values = tuple(values)
        if len(values) != self.n:
            raise ModeMismatch(
                f"position has {len(values)} entries but the graph has {self.n} nodes"
            )
        if self.kind == GCM and any(isinstance(v, float) for v in values):
            if not all(float(v).is_integer() for v in values):
                raise ModeMismatch("float values cannot enter an exact (GCM) computation")
        if self.kind == EGCM and any(isinstance(v, Fraction) for v in values):
            raise ModeMismatch("rational values cannot enter an approx (E-GCM) computation")
        return tuple(coerce(v, self.kind) for v in values)

    def ones(self) -> tuple:
        return self.position([1] * self.n)

    def fundamental(self, i: int) -> tuple:
        return self.position([1 if j == i else 0 for j in range(self.n)])

    def zero(self) -> tuple:
        return self.position([0] * self.n)


def validate(matrix: Sequence[Sequence], kind: str = GCM) -> AmplitudeGraph:
    """Check the GCM (or E-GCM) axioms and return the graph."""
    if kind not in KINDS:
        raise ValueError(f"kind must be one of {KINDS}, got {kind!r}")
    rows = [list(r) for r in matrix]
    n = len(rows)
    if n == 0 or any(len(r) != n for r in rows):
        raise MalformedMatrix("amplitude matrix must be square with n >= 1")

    if kind == GCM:
        conv = []
        for i, row in enumerate(rows):
            out = []
            for j, x in enumerate(row):
                try:
                    q = coerce(x, GCM)
                except (ValueError, TypeError):
                    raise NonIntegerGcmEntry(i, j) from None
                if q.denominator != 1:
                    raise NonIntegerGcmEntry(i, j)
                out.append(q)
            conv.append(tuple(out))
    else:
        conv = [tuple(to_approx(x) for x in row) for row in rows]

    for i in range(n):
        if conv[i][i] != 2:
            raise DiagonalNotTwo(i)
    for i in range(n):
        for j in range(n):
            if i != j and conv[i][j] > 0:
                raise PositiveOffDiagonal(i, j)
    for i in range(n):
        for j in range(n):
            if i != j and conv[i][j] != 0 and conv[j][i] == 0:
                raise AsymmetricZeroPattern(i, j)
    if kind == EGCM:
        for i in range(n):
            for j in range(i + 1, n):
                p = conv[i][j] * conv[j][i]
                if p != 0 and label_for_product(p) is None:
                    raise IllegalAmplitudeProduct(i, j, p)
    return AmplitudeGraph(tuple(conv), kind)


def connected_components(g: AmplitudeGraph) -> list:
    """Partition of the nodes into connected components, each sorted, ordered by least node."""
    seen = [False] * g.n
    comps = []
    for start in range(g.n):
        if seen[start]:
            continue
        seen[start] = True
        stack, comp = [start], []
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in g.neighbors[v]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def is_connected(g: AmplitudeGraph) -> bool:
    return len(connected_components(g)) == 1


def induced_subgraph(g: AmplitudeGraph, nodes) -> AmplitudeGraph:
    """Principal submatrix on ``nodes``, in the order given."""
    nodes = list(nodes)
    if not nodes:
        raise EmptySubset("subgraph node set is empty")
    if len(set(nodes)) != len(nodes) or any(not 0 <= v < g.n for v in nodes):
        raise EmptySubset(f"invalid node subset {nodes!r}")
    return AmplitudeGraph(
        tuple(tuple(g.matrix[i][j] for j in nodes) for i in nodes), g.kind
    )


def coxeter_label(g: AmplitudeGraph, i: int, j: int):
    """m_ij: 2 without an edge, k when the product is 4cos^2(pi/k), else infinity."""
    if i == j:
        raise ValueError("coxeter_label needs two distinct nodes")
    p = g.product(i, j)
    if g.kind == GCM:
        p = int(p)
        return _EXACT_LABELS.get(p, INFINITY)
    m = label_for_product(p)
    if m is None:
        # only reachable for graphs built without validate()
        return INFINITY
    return m


def is_acyclic(g: AmplitudeGraph) -> bool:
    return len(g.edges) == g.n - len(connected_components(g))


def symmetrized(g: AmplitudeGraph) -> AmplitudeGraph:
    """E-GCM with M_ij = M_ji = -sqrt(M_ij M_ji): same products, symmetric amplitudes."""
    n = g.n
    rows = [[0.0] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = 2.0
    for i, j in g.edges:
        c = -math.sqrt(float(g.product(i, j)))
        rows[i][j] = rows[j][i] = c
    return validate(rows, EGCM)


def as_egcm(g: AmplitudeGraph) -> AmplitudeGraph:
    """Same amplitudes, played in float (approx) mode."""
    if g.kind == EGCM:
        return g
    return validate(g.float_matrix(), EGCM)


def as_gcm(g: AmplitudeGraph) -> AmplitudeGraph:
    """Exact copy of a graph whose amplitudes are all integers."""
    if g.kind == GCM:
        return g
    rows = []
    for row in g.matrix:
        out = []
        for x in row:
            r = round(x)
            if abs(x - r) > EPS_AMP:
                raise ModeMismatch("graph has non-integer amplitudes; exact mode needs a GCM")
            out.append(r)
        rows.append(out)
    return validate(rows, GCM)
