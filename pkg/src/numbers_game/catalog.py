"""Named GCM / E-GCM graphs.

Node numbering (0-based here, 1-based on the command line) is frozen:

* paths run left to right; off-path (branch) nodes come last,
* ``D_n``: path ``0..n-2`` plus node ``n-1`` hanging off node ``n-3``,
* ``E_6/E_7/E_8``: path of 5/6/7 nodes plus one node hanging off node 2,
* ``B_n``/``C_n`` (n >= 3) carry the double edge on the last pair and follow
  the Humphreys orientation: ``B_n`` has ``M[n-2][n-1] = -2``, ``C_n`` has
  ``M[n-1][n-2] = -2``. ``B_2`` is ``[[2,-1],[-2,2]]`` (p = 1, q = 2),
* ``F_4`` is ``0 - 1 => 2 - 3`` with ``M[1][2] = -2``; ``G_2`` is ``[[2,-1],[-3,2]]``.

Affine ids follow the convention that the family ``X~n`` has ``n + 1`` nodes.
The integer (GCM) variants are the rows of the inadmissible-graph catalog;
their E-GCM form is the symmetric graph with the same amplitude products:

=================  =====================================================
``affA~n``         cycle on n+1 nodes (``affA~1`` has product 4)
``affB~n``         fork + path, double edge at the end, ``M[n-2][n-1] = -2``
``affB'~n``        path, double edges at both ends, short roots at the ends
``affC~n``         path, double edges at both ends, long roots at the ends
``affC'~n``        path, double edges oriented the same way
                   (``M[0][1] = M[n-1][n] = -1``)
``affC''~n``       fork + path, double edge at the end, ``M[n-1][n-2] = -2``
``affD~n``         two forks
``affE~6/7/8``     tripods with legs (2,2,2), (1,3,3), (1,2,5)
``affF~4``         5-path, double edge between nodes 1 and 2, ``M[2][1] = -2``
``affF'~4``        same shape, ``M[1][2] = -2``
``affG~2.v``       six 3-node variants with a triple edge on nodes 0-1
``affH~3/4``       E-GCM only: label 5 inside a 4-path / at the end of a 5-path
``affCycle(p1,q1,p2,q2)``  triangle a-b-c with plain edge a-b,
                   ``M[a][c] = -p1, M[c][a] = -q1, M[b][c] = -p2, M[c][b] = -q2``
=================  =====================================================
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Optional

from .errors import RankOutOfRange, UnknownCatalogId
from .graph import AmplitudeGraph, amplitude_for_label, symmetrized, validate
from .scalars import EGCM, GCM

FINITE = ("A", "B", "C", "D", "E6", "E7", "E8", "F4", "G2")
ECOXETER = ("CalA", "CalB", "CalD", "CalE6", "CalE7", "CalE8", "CalF4", "CalH3", "CalH4", "CalI2")
AFFINE = (
    "AffA", "AffB", "AffBprime", "AffC", "AffCprime", "AffCdprime", "AffD",
    "AffE6", "AffE7", "AffE8", "AffF4", "AffFprime4", "AffG2", "AffH3", "AffH4",
    "SmallCycle",
)

# minimum rank, or the fixed rank for exceptional families
_MIN_RANK = {
    "A": 1, "B": 2, "C": 3, "D": 4,
    "CalA": 1, "CalB": 3, "CalD": 4,
    "AffA": 1, "AffB": 3, "AffBprime": 2, "AffC": 2, "AffCprime": 2, "AffCdprime": 3,
    "AffD": 4,
}
_FIXED_RANK = {
    "E6": 6, "E7": 7, "E8": 8, "F4": 4, "G2": 2,
    "CalE6": 6, "CalE7": 7, "CalE8": 8, "CalF4": 4, "CalH3": 3, "CalH4": 4, "CalI2": 2,
    # affine ranks are the subscript; node count is rank + 1
    "AffE6": 6, "AffE7": 7, "AffE8": 8, "AffF4": 4, "AffFprime4": 4, "AffG2": 2,
    "AffH3": 3, "AffH4": 4, "SmallCycle": 2,
}
_EGCM_ONLY = {"CalA", "CalB", "CalD", "CalE6", "CalE7", "CalE8", "CalF4", "CalH3",
              "CalH4", "CalI2", "AffH3", "AffH4"}


@dataclass(frozen=True)
class CatalogId:
    family: str
    rank: Optional[int] = None
    m: Optional[int] = None
    variant: Optional[int] = None
    params: Optional[tuple] = None

    def __post_init__(self):
        fam = self.family
        if fam not in FINITE + ECOXETER + AFFINE:
            raise UnknownCatalogId(f"unknown catalog family {fam!r}")
        if fam in _FIXED_RANK:
            if self.rank is not None and self.rank != _FIXED_RANK[fam]:
                raise RankOutOfRange(f"{fam} has fixed rank {_FIXED_RANK[fam]}")
            object.__setattr__(self, "rank", _FIXED_RANK[fam])
        else:
            if self.rank is None or self.rank < _MIN_RANK[fam]:
                raise RankOutOfRange(f"{fam} needs rank >= {_MIN_RANK[fam]}, got {self.rank}")
        if fam == "CalI2":
            if self.m is None or self.m < 4:
                raise RankOutOfRange(f"I2(m) needs 4 <= m < infinity, got {self.m}")
        if fam == "AffG2":
            v = 1 if self.variant is None else self.variant
            if not 1 <= v <= 6:
                raise RankOutOfRange(f"affG~2 variants are 1..6, got {v}")
            object.__setattr__(self, "variant", v)
        if fam == "SmallCycle":
            p = tuple(self.params or (1, 1, 1, 1))
            if len(p) != 4 or any(int(x) != x or x < 1 for x in p):
                raise RankOutOfRange("affCycle needs four positive integers p1,q1,p2,q2")
            object.__setattr__(self, "params", tuple(int(x) for x in p))

    @property
    def is_affine(self) -> bool:
        return self.family in AFFINE

    @property
    def num_nodes(self) -> int:
        if self.family == "SmallCycle":
            return 3
        if self.is_affine:
            return self.rank + 1
        return self.rank

    @property
    def default_kind(self) -> str:
        return EGCM if self.family in _EGCM_ONLY else GCM

    def __str__(self):
        return format_id(self)


# ---------------------------------------------------------------------------
# id strings

_AFF_NAMES = {
    "a": "AffA", "b": "AffB", "b'": "AffBprime", "c": "AffC", "c'": "AffCprime",
    "c''": "AffCdprime", "d": "AffD",
}
_AFF_LETTER = {v: k.upper() for k, v in _AFF_NAMES.items()}


def parse_id(text: str) -> CatalogId:
    """Parse a case-insensitive catalog id such as ``B4``, ``I2(7)``, ``affC~3``."""
    s = text.strip().lower().replace(" ", "")
    if m := re.fullmatch(r"([abcd])(\d+)", s):
        return CatalogId(m[1].upper(), int(m[2]))
    if s in ("e6", "e7", "e8", "f4", "g2"):
        return CatalogId(s.upper())
    if m := re.fullmatch(r"cal([abd])(\d+)", s):
        return CatalogId("Cal" + m[1].upper(), int(m[2]))
    if m := re.fullmatch(r"cal(e6|e7|e8|f4|h3|h4)", s):
        return CatalogId("Cal" + m[1].upper())
    if s in ("h3", "h4"):
        return CatalogId("Cal" + s.upper())
    if m := re.fullmatch(r"(?:cal)?i2\((\d+)\)", s):
        return CatalogId("CalI2", m=int(m[1]))
    if m := re.fullmatch(r"aff([abcd]'{0,2})~?(\d+)", s):
        fam = _AFF_NAMES.get(m[1])
        if fam is not None:
            return CatalogId(fam, int(m[2]))
    if m := re.fullmatch(r"affe~?([678])", s):
        return CatalogId("AffE" + m[1])
    if m := re.fullmatch(r"aff(f'?)~?4", s):
        return CatalogId("AffF4" if m[1] == "f" else "AffFprime4")
    if m := re.fullmatch(r"affg~?2(?:\.(\d+))?", s):
        return CatalogId("AffG2", variant=int(m[1]) if m[1] else 1)
    if m := re.fullmatch(r"affh~?([34])", s):
        return CatalogId("AffH" + m[1])
    if m := re.fullmatch(r"affcycle\((\d+),(\d+),(\d+),(\d+)\)", s):
        return CatalogId("SmallCycle", params=tuple(int(x) for x in m.groups()))
    raise UnknownCatalogId(f"unknown catalog id {text!r}")


def format_id(cid: CatalogId) -> str:
    fam = cid.family
    if fam in ("A", "B", "C", "D"):
        return f"{fam}{cid.rank}"
    if fam in FINITE:
        return fam
    if fam == "CalI2":
        return f"I2({cid.m})"
    if fam in ("CalA", "CalB", "CalD"):
        return f"cal{fam[3:]}{cid.rank}"
    if fam in ECOXETER:
        return "cal" + fam[3:]
    if fam in _AFF_LETTER:
        return f"aff{_AFF_LETTER[fam]}~{cid.rank}"
    if fam in ("AffE6", "AffE7", "AffE8"):
        return f"affE~{fam[-1]}"
    if fam == "AffF4":
        return "affF~4"
    if fam == "AffFprime4":
        return "affF'~4"
    if fam == "AffG2":
        return f"affG~2.{cid.variant}"
    if fam in ("AffH3", "AffH4"):
        return f"affH~{fam[-1]}"
    return "affCycle({},{},{},{})".format(*cid.params)


# ---------------------------------------------------------------------------
# builders

def _blank(n, fill=0):
    return [[2 if i == j else fill for j in range(n)] for i in range(n)]


def _edge(rows, i, j, mij, mji=None):
    rows[i][j] = -mij
    rows[j][i] = -(mij if mji is None else mji)


def _path(n):
    rows = _blank(n)
    for i in range(n - 1):
        _edge(rows, i, i + 1, 1)
    return rows


def _tripod(path_len, branch_at, arm=1):
    """Path 0..path_len-1 plus an arm of ``arm`` nodes hanging off ``branch_at``."""
    n = path_len + arm
    rows = _path(path_len)
    rows = [r + [0] * arm for r in rows] + [[0] * n for _ in range(arm)]
    for k in range(arm):
        rows[path_len + k][path_len + k] = 2
    prev = branch_at
    for k in range(arm):
        _edge(rows, prev, path_len + k, 1)
        prev = path_len + k
    return rows


def _aff_fork(n, end_long):
    """Fork + path with a double edge at the end (n + 1 nodes)."""
    rows = _blank(n + 1)
    for i in range(n - 1):
        _edge(rows, i, i + 1, 1)
    _edge(rows, 1, n, 1)
    if end_long:
        _edge(rows, n - 2, n - 1, 1, 2)
    else:
        _edge(rows, n - 2, n - 1, 2, 1)
    return rows


def _aff_double_path(n, first, last):
    """Path on n + 1 nodes; ``first``/``last`` give (|M_01|, |M_10|) and (|M_{n-1,n}|, |M_{n,n-1}|)."""
    rows = _path(n + 1)
    _edge(rows, 0, 1, *first)
    _edge(rows, n - 1, n, *last)
    return rows


_G2_VARIANTS = {
    1: ((1, 3), (1, 1)),
    2: ((1, 3), (1, 2)),
    3: ((1, 3), (1, 3)),
    4: ((3, 1), (1, 1)),
    5: ((1, 3), (2, 1)),
    6: ((1, 3), (3, 1)),
}


def _integer_rows(cid: CatalogId):
    fam, n = cid.family, cid.rank
    if fam == "A":
        return _path(n)
    if fam == "B":
        if n == 2:
            return [[2, -1], [-2, 2]]
        rows = _path(n)
        _edge(rows, n - 2, n - 1, 2, 1)
        return rows
    if fam == "C":
        rows = _path(n)
        _edge(rows, n - 2, n - 1, 1, 2)
        return rows
    if fam == "D":
        return _tripod(n - 1, n - 3)
    if fam == "E6":
        return _tripod(5, 2)
    if fam == "E7":
        return _tripod(6, 2)
    if fam == "E8":
        return _tripod(7, 2)
    if fam == "F4":
        rows = _path(4)
        _edge(rows, 1, 2, 2, 1)
        return rows
    if fam == "G2":
        return [[2, -1], [-3, 2]]
    if fam == "AffA":
        if n == 1:
            return [[2, -2], [-2, 2]]
        rows = _path(n + 1)
        _edge(rows, n, 0, 1)
        return rows
    if fam == "AffB":
        return _aff_fork(n, end_long=False)
    if fam == "AffCdprime":
        return _aff_fork(n, end_long=True)
    if fam == "AffBprime":
        return _aff_double_path(n, (1, 2), (2, 1))
    if fam == "AffC":
        return _aff_double_path(n, (2, 1), (1, 2))
    if fam == "AffCprime":
        return _aff_double_path(n, (1, 2), (1, 2))
    if fam == "AffD":
        rows = _blank(n + 1)
        for i in range(n - 2):
            _edge(rows, i, i + 1, 1)
        _edge(rows, 1, n - 1, 1)
        _edge(rows, n - 3, n, 1)
        return rows
    if fam == "AffE6":
        return _tripod(5, 2, arm=2)
    if fam == "AffE7":
        return _tripod(7, 3)
    if fam == "AffE8":
        return _tripod(8, 2)
    if fam in ("AffF4", "AffFprime4"):
        rows = _path(5)
        if fam == "AffF4":
            _edge(rows, 1, 2, 1, 2)
        else:
            _edge(rows, 1, 2, 2, 1)
        return rows
    if fam == "AffG2":
        (a, b), (c, d) = _G2_VARIANTS[cid.variant]
        rows = _path(3)
        _edge(rows, 0, 1, a, b)
        _edge(rows, 1, 2, c, d)
        return rows
    if fam == "SmallCycle":
        p1, q1, p2, q2 = cid.params
        rows = _blank(3)
        _edge(rows, 0, 1, 1)
        _edge(rows, 0, 2, p1, q1)
        _edge(rows, 1, 2, p2, q2)
        return rows
    return None


def _labeled_edges(cid: CatalogId):
    """(n, [(i, j, m), ...]) for the E-GCM-only families."""
    fam, n = cid.family, cid.rank
    path = lambda k: [(i, i + 1, 3) for i in range(k - 1)]  # noqa: E731
    if fam == "CalA":
        return n, path(n)
    if fam == "CalB":
        edges = path(n)
        edges[-1] = (n - 2, n - 1, 4)
        return n, edges
    if fam == "CalD":
        return n, path(n - 1) + [(n - 3, n - 1, 3)]
    if fam in ("CalE6", "CalE7", "CalE8"):
        k = int(fam[-1])
        return k, path(k - 1) + [(2, k - 1, 3)]
    if fam == "CalF4":
        return 4, [(0, 1, 3), (1, 2, 4), (2, 3, 3)]
    if fam == "CalH3":
        return 3, [(0, 1, 5), (1, 2, 3)]
    if fam == "CalH4":
        return 4, [(0, 1, 5), (1, 2, 3), (2, 3, 3)]
    if fam == "CalI2":
        return 2, [(0, 1, cid.m)]
    if fam == "AffH3":
        return 4, [(0, 1, 3), (1, 2, 5), (2, 3, 3)]
    if fam == "AffH4":
        return 5, [(0, 1, 5), (1, 2, 3), (2, 3, 3), (3, 4, 3)]
    raise UnknownCatalogId(f"no E-GCM construction for {fam}")


def catalog(cid, kind: Optional[str] = None, ratios: Optional[dict] = None) -> AmplitudeGraph:
    """Build a named graph.

    ``cid`` may be a :class:`CatalogId` or an id string. ``kind`` defaults to
    the family's natural regime (GCM when an integer realization exists).
    In E-GCM mode the amplitudes are symmetric, ``M_ij = M_ji = -2cos(pi/m)``,
    unless ``ratios`` maps an edge ``(i, j)`` to r > 0, which sets
    ``M_ij = -r*c`` and ``M_ji = -c/r``.
    """
    if isinstance(cid, str):
        cid = parse_id(cid)
    kind = kind or cid.default_kind
    if kind == GCM:
        if cid.family in _EGCM_ONLY:
            raise UnknownCatalogId(f"{format_id(cid)} has no integer (GCM) realization")
        if ratios:
            raise ValueError("asymmetry ratios apply to E-GCM graphs only")
        return validate(_integer_rows(cid), GCM)

    if cid.family in _EGCM_ONLY:
        n, edges = _labeled_edges(cid)
        rows = [[2.0 if i == j else 0.0 for j in range(n)] for i in range(n)]
        for i, j, m in edges:
            c = amplitude_for_label(m)
            rows[i][j] = rows[j][i] = -c
        g = validate(rows, EGCM)
    else:
        g = symmetrized(validate(_integer_rows(cid), GCM))
    if ratios:
        rows = g.rows()
        for (i, j), r in ratios.items():
            if r <= 0 or rows[i][j] == 0:
                raise ValueError(f"bad asymmetry ratio {r!r} for edge ({i},{j})")
            c = math.sqrt(rows[i][j] * rows[j][i])
            rows[i][j], rows[j][i] = -r * c, -c / r
        g = validate(rows, EGCM)
    return g


# ---------------------------------------------------------------------------
# finite-type facts

def positive_root_count(cid: CatalogId) -> int:
    """Length of the longest Coxeter group element for a finite (or E-Coxeter) type."""
    fam, n = cid.family, cid.rank
    table = {"E6": 36, "E7": 63, "E8": 120, "F4": 24, "G2": 6, "CalE6": 36,
             "CalE7": 63, "CalE8": 120, "CalF4": 24, "CalH3": 15, "CalH4": 60}
    if fam in table:
        return table[fam]
    if fam in ("A", "CalA"):
        return n * (n + 1) // 2
    if fam in ("B", "C", "CalB"):
        return n * n
    if fam in ("D", "CalD"):
        return n * (n - 1)
    if fam == "CalI2":
        return cid.m
    raise ValueError(f"{format_id(cid)} is not a finite type")


def group_order(cid: CatalogId) -> int:
    fam, n = cid.family, cid.rank
    table = {"E6": 51840, "E7": 2903040, "E8": 696729600, "F4": 1152, "G2": 12,
             "CalE6": 51840, "CalE7": 2903040, "CalE8": 696729600, "CalF4": 1152,
             "CalH3": 120, "CalH4": 14400}
    if fam in table:
        return table[fam]
    if fam in ("A", "CalA"):
        return math.factorial(n + 1)
    if fam in ("B", "C", "CalB"):
        return 2 ** n * math.factorial(n)
    if fam in ("D", "CalD"):
        return 2 ** (n - 1) * math.factorial(n)
    if fam == "CalI2":
        return 2 * cid.m
    raise ValueError(f"{format_id(cid)} is not a finite type")


def family_table() -> list:
    """Descriptions used by ``catalog-list``."""
    out = []
    for fam in FINITE + ECOXETER + AFFINE:
        entry = {"family": fam, "default_kind": EGCM if fam in _EGCM_ONLY else GCM}
        if fam in _FIXED_RANK:
            entry["rank"] = _FIXED_RANK[fam]
        else:
            entry["min_rank"] = _MIN_RANK[fam]
        if fam == "CalI2":
            entry["m"] = "4 <= m < inf"
        if fam == "AffG2":
            entry["variants"] = list(range(1, 7))
        out.append(entry)
    return out


def sample_ids(max_rank: int = 6) -> list:
    """A representative list of concrete catalog ids (finite, E-Coxeter, affine)."""
    ids = []
    for fam in ("A", "B", "C", "D", "CalA", "CalB", "CalD"):
        for r in range(_MIN_RANK[fam], max_rank + 1):
            ids.append(CatalogId(fam, r))
    for fam in ("E6", "E7", "E8", "F4", "G2", "CalE6", "CalE7", "CalE8", "CalF4",
                "CalH3", "CalH4"):
        ids.append(CatalogId(fam))
    for m in range(4, 13):
        ids.append(CatalogId("CalI2", m=m))
    return ids + affine_ids(max_rank)


def affine_ids(max_rank: int = 6) -> list:
    ids = []
    for fam in ("AffA", "AffB", "AffBprime", "AffC", "AffCprime", "AffCdprime", "AffD"):
        for r in range(_MIN_RANK[fam], max_rank + 1):
            ids.append(CatalogId(fam, r))
    for fam in ("AffE6", "AffE7", "AffE8", "AffF4", "AffFprime4", "AffH3", "AffH4"):
        ids.append(CatalogId(fam))
    for v in range(1, 7):
        ids.append(CatalogId("AffG2", variant=v))
    for p in ((1, 1, 1, 1), (1, 2, 1, 1), (2, 1, 1, 2), (1, 3, 2, 1), (3, 1, 1, 3)):
        ids.append(CatalogId("SmallCycle", params=p))
    return ids
