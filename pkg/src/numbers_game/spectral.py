"""Perron root and vector of A = 2E - M, criticality, divergence certificates.

For a fired node i the pairing with the Perron vector changes by
``lambda_i * nu_i * (rho - 2)``, so on a component with rho >= 2 a positive
pairing can never drop to zero: some node stays fireable forever.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional

import numpy as np

from .errors import NoConvergence, NotACycle, NotConnected
from .graph import AmplitudeGraph, connected_components, induced_subgraph
from .linalg import kernel_vector, leading_minors
from .scalars import GCM

EPS_EIG = 1e-12
EPS_SPEC = 1e-8
MAX_ITER = 10**6
# float pairings must clear this fraction of sum |nu_i lambda_i| to count as positive
PAIRING_RTOL = 1e-9

SUB = "SubCritical"
CRITICAL = "Critical"
SUPER = "SuperCritical"


@dataclass(frozen=True)
class SpectralReport:
    rho: float
    nu: tuple
    trichotomy: str
    iterations: int
    # exact kernel vector of M, set for Critical integer graphs
    nu_exact: Optional[tuple] = None

    def to_dict(self):
        out = {
            "rho": self.rho,
            "nu": list(self.nu),
            "trichotomy": self.trichotomy,
            "iterations": self.iterations,
        }
        if self.nu_exact is not None:
            out["nu_exact"] = [str(x) for x in self.nu_exact]
        return out


@dataclass(frozen=True)
class DivergenceCertificate:
    component: tuple
    nu: tuple
    rho: float
    pairing: object

    def to_dict(self):
        return {
            "component": list(self.component),
            "nu": [x if isinstance(x, float) else str(x) for x in self.nu],
            "rho": self.rho,
            "pairing": self.pairing if isinstance(self.pairing, float) else str(self.pairing),
        }


def firing_matrix_A(g: AmplitudeGraph) -> tuple:
    """A = 2E - M: the off-diagonal of -M with a zero diagonal."""
    zero = g.matrix[0][0] * 0
    return tuple(
        tuple(zero if i == j else -g.matrix[i][j] for j in range(g.n)) for i in range(g.n)
    )


def _classify_rho(rho: float) -> str:
    if rho < 2 - EPS_SPEC:
        return SUB
    if rho > 2 + EPS_SPEC:
        return SUPER
    return CRITICAL


def _is_connected_matrix(a: np.ndarray) -> bool:
    n = a.shape[0]
    seen = {0}
    stack = [0]
    while stack:
        v = stack.pop()
        for w in range(n):
            if w not in seen and (a[v, w] != 0 or a[w, v] != 0):
                seen.add(w)
                stack.append(w)
    return len(seen) == n


def _power_iteration(a: np.ndarray, tol: float, max_iter: int):
    n = a.shape[0]
    shifted = a + np.eye(n)
    x = np.ones(n)
    prev = None
    for it in range(1, max_iter + 1):
        y = shifted @ x
        x = y / y.max()
        ax = a @ x
        est = float(ax @ x / (x @ x))
        # a coarse residual guard keeps symmetric plateaus from stopping early
        if prev is not None and abs(est - prev) < tol and np.abs(ax - est * x).max() < 1e-6:
            return est, x, it
        prev = est
    raise NoConvergence(max_iter)


def _polish(a: np.ndarray, rho: float, x: np.ndarray, tol: float):
    """A few inverse-iteration steps so the residual meets ``tol``."""
    n = a.shape[0]

    def residual(r, v):
        return np.abs(a @ v - r * v).max()

    best = (residual(rho, x), rho, x)
    for _ in range(5):
        if best[0] < tol * np.abs(best[2]).max():
            break
        shift = best[1] * (1 + 1e-14) + 1e-300
        try:
            z = np.linalg.solve(a - shift * np.eye(n), best[2])
        except np.linalg.LinAlgError:
            break
        if not np.all(np.isfinite(z)) or not np.any(z):
            break
        z = z / z[np.argmax(np.abs(z))]
        r = float((a @ z) @ z / (z @ z))
        res = residual(r, z)
        if res < best[0]:
            best = (res, r, z)
    return best[1], best[2]


def perron(g_or_a, tol: float = EPS_EIG, max_iter: int = MAX_ITER) -> SpectralReport:
    """Perron root and vector of a connected graph's A (or of a square nonnegative matrix)."""
    exact = None
    if isinstance(g_or_a, AmplitudeGraph):
        g = g_or_a
        a = np.array(firing_matrix_A(g), dtype=float)
        if g.kind == GCM:
            exact = g
    else:
        a = np.array(g_or_a, dtype=float)
    n = a.shape[0]
    if n == 1:
        return SpectralReport(0.0, (1.0,), SUB, 0)
    if not _is_connected_matrix(a):
        raise NotConnected("perron needs a connected graph; decompose it first")
    rho, x, its = _power_iteration(a, tol, max_iter)
    rho, x = _polish(a, rho, x, tol)
    x = x / x.max()
    label = _classify_rho(rho)
    nu_exact = None
    if exact is not None:
        label = _exact_trichotomy(exact)
        if label == CRITICAL:
            nu_exact = _exact_kernel(exact)
    return SpectralReport(float(rho), tuple(float(v) for v in x), label, its, nu_exact)


def _exact_trichotomy(g: AmplitudeGraph) -> str:
    """Exact test for a connected integer graph, via M = 2I - A (a Z-matrix).

    All leading principal minors of M positive means rho(A) < 2. With the
    minors of orders 1..n-1 positive and det M = 0, 2 is an eigenvalue above
    the Perron root of every leading block, which forces rho(A) = 2.
    """
    minors = leading_minors(g.matrix)
    if all(d > 0 for d in minors):
        return SUB
    if minors[-1] == 0 and all(d > 0 for d in minors[:-1]):
        return CRITICAL
    return SUPER


def _exact_kernel(g: AmplitudeGraph) -> tuple:
    v = kernel_vector(g.matrix)
    top = max(v, key=abs)
    v = [x / top for x in v]
    return tuple(v)


@lru_cache(maxsize=4096)
def component_reports(g: AmplitudeGraph) -> tuple:
    """((nodes, SpectralReport), ...) for each connected component."""
    out = []
    for comp in connected_components(g):
        out.append((tuple(comp), perron(induced_subgraph(g, comp))))
    return tuple(out)


def trichotomy(g: AmplitudeGraph) -> list:
    """SubCritical / Critical / SuperCritical for each component, in component order."""
    return [rep.trichotomy for _, rep in component_reports(g)]


def certify_divergence(g: AmplitudeGraph, position) -> Optional[DivergenceCertificate]:
    """Certificate that every game from ``position`` diverges, or None."""
    position = g.position(position)
    for comp, rep in component_reports(g):
        if rep.trichotomy == SUB:
            continue
        lam = [position[v] for v in comp]
        if rep.nu_exact is not None:
            nu = rep.nu_exact
            pairing = sum((a * b for a, b in zip(nu, lam)), Fraction(0))
            ok = pairing > 0
        else:
            nu = rep.nu
            terms = [a * float(b) for a, b in zip(nu, lam)]
            pairing = math.fsum(terms)
            ok = pairing > PAIRING_RTOL * math.fsum(abs(t) for t in terms)
        if ok:
            return DivergenceCertificate(comp, tuple(nu), rep.rho, pairing)
    return None


def pairing(nu, position):
    """nu^T lambda in the scalar type of ``nu``."""
    if nu and isinstance(nu[0], Fraction):
        return sum((a * b for a, b in zip(nu, position)), Fraction(0))
    return math.fsum(a * float(b) for a, b in zip(nu, position))


def cycle_charpoly_shift(g: AmplitudeGraph):
    """(Pi, 2 - Pi - 1/Pi) for a cycle numbered consecutively around it.

    Pi = (-1)^n M_12 M_23 ... M_n1. The shift is the constant separating the
    characteristic polynomial of A from that of its symmetrization, and is
    never positive.
    """
    n = g.n
    if n < 3 or len(g.edges) != n:
        raise NotACycle("graph is not a single cycle")
    for i in range(n):
        if g.matrix[i][(i + 1) % n] == 0 or g.degree(i) != 2:
            raise NotACycle("nodes are not numbered consecutively around a cycle")
    prod = g.matrix[0][0] * 0 + 1
    for i in range(n):
        prod *= g.matrix[i][(i + 1) % n]
    big_pi = (-1) ** n * prod
    return big_pi, 2 - big_pi - 1 / big_pi
