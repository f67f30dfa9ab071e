"""Exception types raised by the numbers-game toolkit.

Every domain error carries a machine-readable ``code`` and a ``payload``
dict so the CLI can emit it as JSON. Node and step indices in payloads are
0-based, like the rest of the Python API.
"""


INDEX_KEYS = ("i", "j", "node", "step", "color")


class NumbersGameError(Exception):
    code = "error"
    # message pattern over payload fields, re-rendered when indices are shifted
    template = None

    def __init__(self, message="", **payload):
        self.payload = payload
        self._templated = not message and self.template is not None
        if self._templated:
            message = self.template.format(**payload)
        super().__init__(message or self.code)

    def to_dict(self, base=0):
        """Payload with index fields shifted to ``base`` (0 or 1)."""
        payload = dict(self.payload)
        if base:
            for key in INDEX_KEYS:
                if isinstance(payload.get(key), int):
                    payload[key] += base
        message = str(self)
        if base and self._templated:
            message = self.template.format(**payload)
        return {"error": self.code, "message": message, **payload}


# graph validation / catalog

class GraphError(NumbersGameError):
    code = "graph_error"


class DiagonalNotTwo(GraphError):
    code = "diagonal_not_two"

    template = "diagonal entry at node {i} is not 2"

    def __init__(self, i):
        super().__init__(i=i)


class PositiveOffDiagonal(GraphError):
    code = "positive_off_diagonal"

    template = "off-diagonal entry ({i},{j}) is positive"

    def __init__(self, i, j):
        super().__init__(i=i, j=j)


class AsymmetricZeroPattern(GraphError):
    code = "asymmetric_zero_pattern"

    template = "entry ({i},{j}) is nonzero but ({j},{i}) is zero"

    def __init__(self, i, j):
        super().__init__(i=i, j=j)


class NonIntegerGcmEntry(GraphError):
    code = "non_integer_gcm_entry"

    template = "GCM entry ({i},{j}) is not an integer"

    def __init__(self, i, j):
        super().__init__(i=i, j=j)


class IllegalAmplitudeProduct(GraphError):
    code = "illegal_amplitude_product"

    template = ("amplitude product {product!r} on edge ({i},{j}) is neither >= 4 "
                "nor 4cos^2(pi/k) for an integer k >= 3")

    def __init__(self, i, j, product):
        super().__init__(i=i, j=j, product=float(product))


class MalformedMatrix(GraphError):
    code = "malformed_matrix"


class RankOutOfRange(GraphError):
    code = "rank_out_of_range"


class UnknownCatalogId(GraphError):
    code = "unknown_catalog_id"


class EmptySubset(GraphError):
    code = "empty_subset"


class ModeMismatch(NumbersGameError):
    code = "mode_mismatch"


class NotConnected(NumbersGameError):
    code = "not_connected"


# engine

class IllegalFiring(NumbersGameError):
    code = "illegal_firing"

    template = "node {node} does not hold a positive number"

    def __init__(self, node):
        super().__init__(node=node)


class IllegalFiringAt(NumbersGameError):
    code = "illegal_firing_at"

    template = "firing at step {step} (node {node}) is illegal"

    def __init__(self, step, node):
        super().__init__(step=step, node=node)


class NumericOverflow(NumbersGameError):
    code = "numeric_overflow"


class NotATree(NumbersGameError):
    code = "not_a_tree"


class NotSubcritical(NumbersGameError):
    code = "not_subcritical"


# spectral

class NoConvergence(NumbersGameError):
    code = "no_convergence"

    template = "power iteration did not converge within {limit} steps"

    def __init__(self, limit):
        super().__init__(limit=limit)


class NotACycle(NumbersGameError):
    code = "not_a_cycle"


# classify / coxeter

class BudgetExceeded(NumbersGameError):
    code = "budget_exceeded"


class NotFiniteType(NumbersGameError):
    code = "not_finite_type"


class CapExceeded(NumbersGameError):
    code = "cap_exceeded"

    template = "orbit enumeration exceeded cap {cap}"

    def __init__(self, cap, message=""):
        super().__init__(message, cap=cap)


class NotStronglyDominant(NumbersGameError):
    code = "not_strongly_dominant"


class OrbitCollision(NumbersGameError):
    code = "orbit_collision"


# poset

class PosetError(NumbersGameError):
    code = "poset_error"


class CycleDetected(PosetError):
    code = "cycle_detected"


class NotRanked(PosetError):
    code = "not_ranked"

    template = "cover {s!r} -> {t!r} breaks the rank function"

    def __init__(self, s, t):
        super().__init__(s=s, t=t)


class ColorOutOfRange(PosetError):
    code = "color_out_of_range"


class DuplicateCover(PosetError):
    code = "duplicate_cover"


class UnknownElement(PosetError):
    code = "unknown_element"


class ComponentNotRanked(PosetError):
    code = "component_not_ranked"


class IndexMismatch(PosetError):
    code = "index_mismatch"


class StructureNotVerified(PosetError):
    code = "structure_not_verified"


class DescentFailed(PosetError):
    code = "descent_failed"

    template = "descent failed at step {step}"

    def __init__(self, step, message=""):
        super().__init__(message, step=step)
