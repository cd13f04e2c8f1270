"""Ground metrics on identified elements and the average-distance family on finite sets.

Elements carry an opaque id and a payload. Set algebra (union, intersection,
difference) works on ids only; the ground metric compares payloads. Keeping
the two apart is what lets a pseudo-metric (two distinct ids at distance
zero) coexist with honest set semantics: ``average_metric`` stays
well-defined and merely inherits the pseudo behaviour.

The distance family on finite sets:

* ``group_average``       mean of all cross-distances, s(A,B) / (|A| |B|)
* ``average_metric``      s(A,B\\A) / (|A∪B| |A|) + s(A\\B,B) / (|A∪B| |B|),
                          a true metric whenever the ground distance is one
* ``semi_metric``         (s(A,B) - s(A∩B,A∩B)) / (|A| |B|), triangle
                          inequality not guaranteed
* ``hausdorff``           max over both directed sup-inf distances
* ``jaccard``             |A△B| / |A∪B|, the discrete-metric special case of
                          ``average_metric``
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Iterable, Iterator, Mapping, Sequence

from .errors import (
    DomainError,
    EmptySetError,
    ParameterError,
    RegistryMismatchError,
    UnknownIdError,
)

ElementId = str | int


def _id_sort_key(eid: ElementId) -> tuple:
    # Mixed int/str ids must still sort deterministically.
    return (isinstance(eid, str), eid)


@dataclass(frozen=True)
class Element:
    """An identity-bearing point: equality and set algebra use the id only."""

    id: ElementId
    payload: Any = None


class ElementRegistry:
    """Id -> element table shared by the finite sets built over it.

    Treated as read-only once sets exist; nothing here mutates after
    construction-time ``add`` calls, so concurrent reads are safe.
    """

    def __init__(self, elements: Mapping[ElementId, Any] | None = None):
        self._elements: dict[ElementId, Element] = {}
        if elements:
            for eid, payload in elements.items():
                self.add(eid, payload)

    def add(self, eid: ElementId, payload: Any = None) -> Element:
        if eid in self._elements:
            raise ParameterError(f"duplicate element id: {eid!r}")
        if isinstance(payload, (list, tuple)):
            payload = tuple(float(v) for v in payload)
        elif isinstance(payload, (int, float)) and not isinstance(payload, bool):
            payload = (float(payload),)
        element = Element(eid, payload)
        self._elements[eid] = element
        return element

    def element(self, eid: ElementId) -> Element:
        try:
            return self._elements[eid]
        except KeyError:
            raise UnknownIdError(f"unknown element id: {eid!r}") from None

    def ids(self) -> tuple[ElementId, ...]:
        return tuple(sorted(self._elements, key=_id_sort_key))

    def set_of(self, members: Iterable[ElementId]) -> "FiniteSet":
        return FiniteSet(self, tuple(members))

    def universe(self) -> "FiniteSet":
        return FiniteSet(self, self.ids())

    def __contains__(self, eid: ElementId) -> bool:
        return eid in self._elements

    def __len__(self) -> int:
        return len(self._elements)


@dataclass(frozen=True)
class FiniteSet:
    """A deduplicated, canonically ordered set of element ids over a registry.

    Members are stored sorted, so two sets with equal membership compare (and
    hash) equal. Empty sets are constructible because pairwise sums accept
    them; every metric operation rejects them explicitly.
    """

    registry: ElementRegistry
    members: tuple[ElementId, ...]

    def __post_init__(self):
        canonical = tuple(sorted(set(self.members), key=_id_sort_key))
        for eid in canonical:
            if eid not in self.registry:
                raise UnknownIdError(f"set member not registered: {eid!r}")
        object.__setattr__(self, "members", canonical)
        object.__setattr__(self, "_idset", frozenset(canonical))

    @property
    def ids(self) -> frozenset:
        return self._idset  # type: ignore[attr-defined]

    def elements(self) -> list[Element]:
        return [self.registry.element(eid) for eid in self.members]

    def union(self, other: "FiniteSet") -> "FiniteSet":
        _require_same_registry("union", self, other)
        return FiniteSet(self.registry, self.members + other.members)

    def intersection(self, other: "FiniteSet") -> "FiniteSet":
        _require_same_registry("intersection", self, other)
        return FiniteSet(self.registry, tuple(self.ids & other.ids))

    def difference(self, other: "FiniteSet") -> "FiniteSet":
        _require_same_registry("difference", self, other)
        return FiniteSet(self.registry, tuple(self.ids - other.ids))

    def symmetric_difference(self, other: "FiniteSet") -> "FiniteSet":
        _require_same_registry("symmetric_difference", self, other)
        return FiniteSet(self.registry, tuple(self.ids ^ other.ids))

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[ElementId]:
        return iter(self.members)

    def __contains__(self, eid: ElementId) -> bool:
        return eid in self.ids

    def __repr__(self) -> str:
        inner = ", ".join(repr(m) for m in self.members)
        return f"{{{inner}}}"


# ---------------------------------------------------------------------------
# Ground metrics
# ---------------------------------------------------------------------------


class BaseMetric:
    """Ground distance between elements; subclasses implement ``distance``."""

    def distance(self, x: Element, y: Element) -> float:
        raise NotImplementedError


def _vector_pair(x: Element, y: Element) -> tuple[tuple[float, ...], tuple[float, ...]]:
    px, py = x.payload, y.payload
    if not isinstance(px, tuple) or not isinstance(py, tuple):
        raise DomainError(
            f"vector metric needs numeric payloads, got {x.id!r}/{y.id!r}"
        )
    if len(px) != len(py):
        raise DomainError(
            f"dimension mismatch: {x.id!r} has {len(px)} coordinates, "
            f"{y.id!r} has {len(py)}"
        )
    return px, py


@dataclass(frozen=True)
class DiscreteMetric(BaseMetric):
    """d(x,y) = 0 when the ids coincide, else a fixed positive scale."""

    lam: float = 1.0

    def __post_init__(self):
        if not self.lam > 0:
            raise ParameterError(f"discrete scale must be positive, got {self.lam}")

    def distance(self, x: Element, y: Element) -> float:
        return 0.0 if x.id == y.id else self.lam


@dataclass(frozen=True)
class EuclideanMetric(BaseMetric):
    def distance(self, x: Element, y: Element) -> float:
        px, py = _vector_pair(x, y)
        return math.dist(px, py)


@dataclass(frozen=True)
class LpMetric(BaseMetric):
    """L_p distance on vector payloads, p >= 1."""

    p: float = 2.0

    def __post_init__(self):
        if not self.p >= 1:
            raise ParameterError(f"lp metric needs p >= 1, got {self.p}")

    def distance(self, x: Element, y: Element) -> float:
        px, py = _vector_pair(x, y)
        return sum(abs(a - b) ** self.p for a, b in zip(px, py)) ** (1.0 / self.p)


class MatrixMetric(BaseMetric):
    """Explicit symmetric distance table over ids, axiom-checked on load.

    A table flagged ``pseudo`` may contain off-diagonal zeros (distinct ids
    at distance zero); non-negativity, zero diagonal, symmetry and the
    triangle inequality are enforced either way.
    """

    def __init__(
        self,
        ids: Sequence[ElementId],
        values: Sequence[Sequence[float]],
        pseudo: bool = False,
        tolerance: float = 1e-12,
    ):
        ids = tuple(ids)
        if len(set(ids)) != len(ids):
            raise ParameterError("matrix metric ids must be unique")
        n = len(ids)
        if n == 0:
            raise ParameterError("matrix metric needs at least one id")
        rows = tuple(tuple(float(v) for v in row) for row in values)
        if len(rows) != n or any(len(row) != n for row in rows):
            raise ParameterError(f"matrix metric table must be {n}x{n}")
        for i in range(n):
            if abs(rows[i][i]) > tolerance:
                raise ParameterError(f"nonzero self-distance for id {ids[i]!r}")
            for j in range(n):
                if rows[i][j] < -tolerance:
                    raise ParameterError(
                        f"negative distance between {ids[i]!r} and {ids[j]!r}"
                    )
                if abs(rows[i][j] - rows[j][i]) > tolerance:
                    raise ParameterError(
                        f"asymmetric table at {ids[i]!r}/{ids[j]!r}"
                    )
                if i != j and not pseudo and rows[i][j] <= tolerance:
                    raise ParameterError(
                        f"zero distance between distinct ids {ids[i]!r} and "
                        f"{ids[j]!r}; flag the table as pseudo to allow it"
                    )
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    if rows[i][k] > rows[i][j] + rows[j][k] + tolerance:
                        raise ParameterError(
                            "triangle inequality fails for ids "
                            f"({ids[i]!r}, {ids[j]!r}, {ids[k]!r})"
                        )
        self.ids = ids
        self.pseudo = pseudo
        self._index = {eid: k for k, eid in enumerate(ids)}
        self._rows = rows

    def distance(self, x: Element, y: Element) -> float:
        try:
            return self._rows[self._index[x.id]][self._index[y.id]]
        except KeyError as exc:
            raise UnknownIdError(f"id not in distance table: {exc.args[0]!r}") from None


# ---------------------------------------------------------------------------
# Validation helpers
# ---------------------------------------------------------------------------


def _require_same_registry(op: str, *sets: FiniteSet) -> None:
    first = sets[0].registry
    for s in sets[1:]:
        if s.registry is not first:
            raise RegistryMismatchError(f"{op} requires sets over one registry")


def _require_nonempty(op: str, *sets: FiniteSet) -> None:
    for s in sets:
        if not s.members:
            raise EmptySetError(f"{op} requires non-empty sets")


# ---------------------------------------------------------------------------
# Distances
# ---------------------------------------------------------------------------


def base_distance(m: BaseMetric, x: Element, y: Element) -> float:
    """Ground distance between two elements."""
    return m.distance(x, y)


def point_set_distance(m: BaseMetric, x: Element, a: FiniteSet) -> float:
    """min over members of ``a`` of the ground distance to ``x``."""
    _require_nonempty("point_set_distance", a)
    return min(m.distance(x, e) for e in a.elements())


def min_cross_distance(m: BaseMetric, a: FiniteSet, b: FiniteSet) -> float:
    """min over all cross pairs; zero as soon as the sets share an id."""
    _require_same_registry("min_cross_distance", a, b)
    _require_nonempty("min_cross_distance", a, b)
    eb = b.elements()
    return min(m.distance(x, y) for x in a.elements() for y in eb)


def pair_sum(m: BaseMetric, a: FiniteSet, b: FiniteSet) -> float:
    """Sum of all pairwise ground distances; empty operands contribute 0.

    Additive over disjoint decompositions of either side, which is what the
    average-based distances lean on.
    """
    _require_same_registry("pair_sum", a, b)
    if not a.members or not b.members:
        return 0.0
    eb = b.elements()
    return math.fsum(m.distance(x, y) for x in a.elements() for y in eb)


def _triangle_surplus_raw(m: BaseMetric, a: FiniteSet, b: FiniteSet, c: FiniteSet) -> float:
    return (
        len(c) * pair_sum(m, a, b)
        + len(a) * pair_sum(m, b, c)
        - len(b) * pair_sum(m, a, c)
    )


def triangle_surplus(m: BaseMetric, a: FiniteSet, b: FiniteSet, c: FiniteSet) -> float:
    """|C|·s(A,B) + |A|·s(B,C) − |B|·s(A,C), signed.

    Non-negative whenever the ground distance satisfies the triangle
    inequality; deliberately not clamped so violations of a non-metric
    ground distance stay visible.
    """
    _require_same_registry("triangle_surplus", a, b, c)
    _require_nonempty("triangle_surplus", a, b, c)
    return _triangle_surplus_raw(m, a, b, c)


def group_average(m: BaseMetric, a: FiniteSet, b: FiniteSet) -> float:
    """Mean cross-distance s(A,B) / (|A| |B|); self-distance may be nonzero."""
    _require_same_registry("group_average", a, b)
    _require_nonempty("group_average", a, b)
    return pair_sum(m, a, b) / (len(a) * len(b))


def average_metric(m: BaseMetric, a: FiniteSet, b: FiniteSet) -> float:
    """Average-distance metric on non-empty finite sets.

        f(A,B) = s(A, B\\A) / (|A∪B| |A|) + s(A\\B, B) / (|A∪B| |B|)

    Restricting the sums to the set differences is what restores the
    identity axiom that ``group_average`` lacks: f(A,B) = 0 iff A = B. On
    singletons f({a},{b}) equals the ground distance, and for disjoint sets
    it coincides with ``group_average``.
    """
    _require_same_registry("average_metric", a, b)
    _require_nonempty("average_metric", a, b)
    n_union = len(a.ids | b.ids)
    total = 0.0
    b_only = b.difference(a)
    if b_only.members:
        total += pair_sum(m, a, b_only) / (n_union * len(a))
    a_only = a.difference(b)
    if a_only.members:
        total += pair_sum(m, a_only, b) / (n_union * len(b))
    return total


def semi_metric(m: BaseMetric, a: FiniteSet, b: FiniteSet) -> float:
    """(s(A,B) − s(A∩B, A∩B)) / (|A| |B|).

    Non-negative, zero on equal sets, symmetric; the triangle inequality is
    not guaranteed (see the chained-overlap sampler in ``axioms`` for the
    family of counterexamples).
    """
    _require_same_registry("semi_metric", a, b)
    _require_nonempty("semi_metric", a, b)
    shared = a.intersection(b)
    return (pair_sum(m, a, b) - pair_sum(m, shared, shared)) / (len(a) * len(b))


def hausdorff(m: BaseMetric, a: FiniteSet, b: FiniteSet) -> float:
    """max of the two directed max-min distances."""
    _require_same_registry("hausdorff", a, b)
    _require_nonempty("hausdorff", a, b)
    ea, eb = a.elements(), b.elements()
    d_ab = max(min(m.distance(x, y) for y in eb) for x in ea)
    d_ba = max(min(m.distance(y, x) for x in ea) for y in eb)
    return max(d_ab, d_ba)


def jaccard(a: FiniteSet, b: FiniteSet) -> float:
    """|A△B| / |A∪B| in [0,1]; needs a non-empty union."""
    _require_same_registry("jaccard", a, b)
    union = a.ids | b.ids
    if not union:
        raise EmptySetError("jaccard requires a non-empty union")
    return len(a.ids ^ b.ids) / len(union)


def symdiff_cardinality(a: FiniteSet, b: FiniteSet) -> int:
    """Number of ids in exactly one of the two sets."""
    return len(a.ids ^ b.ids)
