"""Firing rule, game play, replay and the conserved quadratic form."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence

import numpy as np

from . import linalg
from .errors import IllegalFiring, IllegalFiringAt, NotATree, NotSubcritical, NumericOverflow
from .graph import AmplitudeGraph, is_acyclic, is_connected
from .scalars import EGCM, EPS_ZERO, GCM, is_positive

CONVERGED = "converged"
DIVERGENT = "divergent"
EXHAUSTED = "exhausted"

FALLBACK_LIMIT = 10**4

# Approx games are homogeneous, so a diverging position may be divided by an
# exact power of two without changing which nodes are fireable.
_RESCALE_BITS = 512
_RESCALE_AT = 2.0**600


def legal_moves(g: AmplitudeGraph, position) -> list:
    """Nodes holding a strictly positive number, in increasing order."""
    return [i for i, v in enumerate(position) if is_positive(v, g.kind)]


def fire(g: AmplitudeGraph, position, i: int) -> tuple:
    """lambda_j -> lambda_j - M_ij * lambda_i for every j."""
    position = g.position(position)
    if not is_positive(position[i], g.kind):
        raise IllegalFiring(i)
    return _apply(g, position, i)


def _apply(g: AmplitudeGraph, position, i: int) -> tuple:
    row = g.matrix[i]
    li = position[i]
    out = list(position)
    out[i] = -li
    for j in g.neighbors[i]:
        out[j] = position[j] - row[j] * li
    return tuple(out)


def reflect(g: AmplitudeGraph, position, i: int) -> tuple:
    """The firing map applied regardless of sign (the linear reflection s_i)."""
    return _apply(g, position, i)


# ---------------------------------------------------------------------------
# policies

Policy = Callable[[list], int]


def lowest_policy() -> Policy:
    return lambda legal: legal[0]


def random_policy(seed: int) -> Policy:
    rng = random.Random(seed)
    return lambda legal: legal[rng.randrange(len(legal))]


def make_policy(spec) -> Policy:
    """Accepts a callable, ``"lowest"`` or ``"random:<seed>"``."""
    if callable(spec):
        return spec
    if spec is None or spec == "lowest":
        return lowest_policy()
    if isinstance(spec, str) and spec.startswith("random:"):
        return random_policy(int(spec.split(":", 1)[1]))
    raise ValueError(f"unknown policy {spec!r}; use 'lowest' or 'random:<seed>'")


# ---------------------------------------------------------------------------
# games

@dataclass
class GameTrace:
    start: tuple
    fired: list = field(default_factory=list)
    positions: Optional[list] = None


@dataclass
class GameOutcome:
    status: str
    position: tuple
    steps: int
    trace: GameTrace
    certificate: object = None
    limit: Optional[int] = None
    # approx games: ``position`` times 2**scale_log2 is the true position
    scale_log2: int = 0

    @property
    def converged(self) -> bool:
        return self.status == CONVERGED

    @property
    def terminal(self):
        return self.position if self.converged else None


def default_limit(g: AmplitudeGraph) -> int:
    """10 x (number of positive roots) for finite types, else 10^4."""
    from .classify import finite_positive_roots

    roots = finite_positive_roots(g)
    return FALLBACK_LIMIT if roots is None else max(10 * roots, 1)


def _fast_state(g: AmplitudeGraph, position):
    """Integer state for exact games whose numbers are all integers (much faster than Fraction)."""
    if g.kind == GCM and all(v.denominator == 1 for v in position):
        rows = [[int(x) for x in row] for row in g.matrix]
        return rows, [int(v) for v in position], True
    return [list(row) for row in g.matrix], list(position), False


def play(
    g: AmplitudeGraph,
    position,
    policy="lowest",
    limit: Optional[int] = None,
    keep_positions: bool = False,
    certify: bool = True,
) -> GameOutcome:
    """Fire until no node is positive, a divergence certificate applies, or ``limit`` firings.

    With ``certify`` the spectral certificate is consulted once, before the
    first firing. Approx positions that grow past 2**600 are rescaled by
    2**-512 (``scale_log2`` records the total); the zero threshold then
    applies to the rescaled numbers.
    """
    start = g.position(position)
    if limit is None:
        limit = default_limit(g)
    if limit < 0:
        raise ValueError("limit must be >= 0")
    choose = make_policy(policy)
    trace = GameTrace(start, [], [start] if keep_positions else None)

    if certify and any(is_positive(v, g.kind) for v in start):
        from .spectral import certify_divergence

        cert = certify_divergence(g, start)
        if cert is not None:
            return GameOutcome(DIVERGENT, start, 0, trace, certificate=cert)

    rows, lam, as_int = _fast_state(g, start)
    nbrs = g.neighbors
    n = g.n
    approx = g.kind == EGCM
    fired = trace.fired
    thresh = EPS_ZERO if approx else 0
    wrap = (lambda v: tuple(Fraction(x) for x in v)) if as_int else tuple
    lowest = policy in (None, "lowest")
    # legality flags, refreshed only where a firing changed the numbers
    flags = [v > thresh for v in lam]
    steps = 0
    scale = 0
    while True:
        if True not in flags:
            return GameOutcome(CONVERGED, wrap(lam), steps, trace, scale_log2=scale)
        if steps >= limit:
            return GameOutcome(EXHAUSTED, wrap(lam), steps, trace, limit=limit, scale_log2=scale)
        if lowest:
            i = flags.index(True)
        else:
            i = choose([k for k in range(n) if flags[k]])
        li = lam[i]
        row = rows[i]
        lam[i] = -li
        flags[i] = False
        for j in nbrs[i]:
            v = lam[j] - row[j] * li
            lam[j] = v
            flags[j] = v > thresh
        if approx and abs(li) > _RESCALE_AT:
            top = max(abs(v) for v in lam)
            if not math.isfinite(top):
                raise NumericOverflow(f"position overflowed after {steps + 1} firings")
            lam = [math.ldexp(v, -_RESCALE_BITS) for v in lam]
            scale += _RESCALE_BITS
            flags = [v > thresh for v in lam]
        fired.append(i)
        steps += 1
        if keep_positions:
            trace.positions.append(wrap(lam) if not scale else tuple(math.ldexp(v, scale) for v in lam))


def replay(g: AmplitudeGraph, position, fired: Sequence[int]) -> tuple:
    """Apply ``fired`` in order; IllegalFiringAt(step, node) names the first bad firing."""
    lam = g.position(position)
    for step, i in enumerate(fired):
        if not 0 <= i < g.n or not is_positive(lam[i], g.kind):
            raise IllegalFiringAt(step, i)
        lam = _apply(g, lam, i)
    return lam


def replay_positions(g: AmplitudeGraph, position, fired: Sequence[int]) -> list:
    """Every intermediate position of a legal firing sequence, start included."""
    lam = g.position(position)
    out = [lam]
    for step, i in enumerate(fired):
        if not 0 <= i < g.n or not is_positive(lam[i], g.kind):
            raise IllegalFiringAt(step, i)
        lam = _apply(g, lam, i)
        out.append(lam)
    return out


# ---------------------------------------------------------------------------
# conserved quadratic form

def symmetrizer(g: AmplitudeGraph) -> list:
    """Diagonal of D with D B^{-1} symmetric (B = -M^T), D_00 = 1.

    Along a tree edge i - j this needs D_jj / D_ii = M_ji / M_ij.
    """
    if not is_connected(g) or not is_acyclic(g):
        raise NotATree("the conserved form needs a connected tree")
    one = g.matrix[0][0] / 2
    d = [None] * g.n
    d[0] = one
    stack = [0]
    while stack:
        i = stack.pop()
        for j in g.neighbors[i]:
            if d[j] is None:
                d[j] = d[i] * g.matrix[j][i] / g.matrix[i][j]
                stack.append(j)
    return d


def conserved_form(g: AmplitudeGraph) -> tuple:
    """Q = D B^{-1} with B = -M^T, for a subcritical tree.

    mu^T Q mu is unchanged by every firing. Q is symmetric and negative
    definite (-Q is positive definite); Q = [[-1/2]] for A1.
    """
    d = symmetrizer(g)
    from .spectral import SUB, trichotomy

    if trichotomy(g)[0] != SUB:
        raise NotSubcritical("the conserved form needs Perron root < 2")
    n = g.n
    if g.kind == GCM:
        b = [[-g.matrix[j][i] for j in range(n)] for i in range(n)]
        binv = linalg.inverse(b)
        q = [[d[i] * binv[i][j] for j in range(n)] for i in range(n)]
        return tuple(tuple(row) for row in q)
    b = -np.array(g.matrix, dtype=float).T
    q = np.diag(d) @ np.linalg.inv(b)
    q = (q + q.T) / 2
    return tuple(tuple(float(x) for x in row) for row in q)


def quadratic_value(q, position):
    """mu^T Q mu."""
    n = len(position)
    if isinstance(q[0][0], Fraction):
        return sum((position[i] * q[i][j] * position[j] for i in range(n) for j in range(n)), Fraction(0))
    return math.fsum(float(position[i]) * q[i][j] * float(position[j]) for i in range(n) for j in range(n))
