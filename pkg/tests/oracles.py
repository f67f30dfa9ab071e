"""Reference computations that share no code with the package.

Each oracle uses a different algorithm from the production path: dense
eigensolvers instead of power iteration, matrix-vector reflections instead of
the sparse firing update, breadth-first potentials instead of union-find spans.
"""

from collections import deque
from fractions import Fraction

import numpy as np


def eigen_rho(a):
    """Largest real part among the eigenvalues of a square matrix."""
    return float(max(np.linalg.eigvals(np.array(a, dtype=float)).real))


def eigen_perron(a):
    """(rho, nu) from a dense eigensolver, nu scaled to max entry 1."""
    vals, vecs = np.linalg.eig(np.array(a, dtype=float))
    k = int(np.argmax(vals.real))
    v = vecs[:, k].real
    v = v / v[np.argmax(np.abs(v))]
    return float(vals[k].real), v / v.max()


def reflect_vec(rows, lam, i):
    """lambda - lambda_i * M^T e_i, written as a full matrix-vector update."""
    n = len(rows)
    mt_ei = [rows[i][j] for j in range(n)]
    return tuple(lam[j] - lam[i] * mt_ei[j] for j in range(n))


def bfs_depths(rows, seed):
    """Depth of every orbit point under the all-signs reflection action."""
    rows = [[Fraction(x) for x in r] for r in rows]
    seed = tuple(Fraction(x) for x in seed)
    depth = {seed: 0}
    queue = deque([seed])
    while queue:
        lam = queue.popleft()
        for i in range(len(rows)):
            nxt = reflect_vec(rows, lam, i)
            if nxt not in depth:
                depth[nxt] = depth[lam] + 1
                queue.append(nxt)
    return depth


def word_depth(rows, seed, word):
    """Orbit depth of the element named by ``word`` (rightmost letter applied first)."""
    depth = bfs_depths(rows, seed)
    lam = tuple(Fraction(x) for x in seed)
    for i in reversed(word):
        lam = reflect_vec([[Fraction(x) for x in r] for r in rows], lam, i)
    return depth[lam]


def chain_weights(elements, covers, n):
    """Weights from first principles.

    For each color i, flood-fill the undirected color-i covers, giving every
    element a potential that goes up by one along each cover; the local rank
    is the potential minus the piece's minimum and the length is its spread.
    """
    out = {x: [0] * n for x in elements}
    for i in range(n):
        adj = {x: [] for x in elements}
        for s, t, c in covers:
            if c == i:
                adj[s].append((t, 1))
                adj[t].append((s, -1))
        seen = set()
        for x in elements:
            if x in seen:
                continue
            pot = {x: 0}
            queue = deque([x])
            while queue:
                v = queue.popleft()
                for w, step in adj[v]:
                    if w not in pot:
                        pot[w] = pot[v] + step
                        queue.append(w)
            seen |= set(pot)
            low, high = min(pot.values()), max(pot.values())
            for v, h in pot.items():
                out[v][i] = 2 * (h - low) - (high - low)
    return {x: tuple(w) for x, w in out.items()}


def no_product_match(target, kmax=10**6, tol=1e-9):
    """True when no k in 3..kmax has 4 cos^2(pi/k) within tol of target."""
    k = np.arange(3, kmax + 1, dtype=float)
    vals = 4 * np.cos(np.pi / k) ** 2
    return bool(np.all(np.abs(vals - target) > tol))
