"""Measure-based distances on unions of real intervals, sampled estimation,
and fuzzy-set distances via level cuts.

The group-average distance generalizes from sums to integrals: for interval
unions A, B with Lebesgue measure mu and ground distance |x - y|,

    g(A,B) = (1 / (mu(A) mu(B))) * double integral of |x - y|,
    f(A,B) = mu(B\\A)/mu(A∪B) * g(A, B\\A) + mu(A\\B)/mu(A∪B) * g(A\\B, B).

The double integral over a box has an elementary antiderivative, so both are
evaluated exactly per part pair (no quadrature). Coefficients of zero
measure short-circuit their g term, so a 0/0 is never formed.

For single intervals the metric collapses to a closed form in the endpoint
gaps; without containment it is exactly the distance between the interval
centers. Under discrete ground-distance semantics the construction is the
Steinhaus distance mu(A△B)/mu(A∪B).

``estimate_average_metric`` approximates the set metric for large or
continuous populations: sample a superset, intersect the sample with each
set, and evaluate the finite-set metric on the intersections.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping, Union

import numpy as np

from .core import (
    BaseMetric,
    ElementId,
    ElementRegistry,
    FiniteSet,
    average_metric,
)
from .errors import (
    DomainError,
    NullMeasureError,
    ParameterError,
    SamplingError,
)


@dataclass(frozen=True)
class Interval:
    """Closed real interval [lo, hi]."""

    lo: float
    hi: float

    def __post_init__(self):
        object.__setattr__(self, "lo", float(self.lo))
        object.__setattr__(self, "hi", float(self.hi))
        if self.lo > self.hi:
            raise ParameterError(f"interval bounds out of order: [{self.lo}, {self.hi}]")

    @property
    def length(self) -> float:
        return self.hi - self.lo

    @property
    def center(self) -> float:
        return (self.lo + self.hi) / 2.0

    def contains(self, x: float) -> bool:
        return self.lo <= x <= self.hi


IntervalLike = Union[Interval, tuple, list]


def _as_interval(obj: IntervalLike) -> Interval:
    if isinstance(obj, Interval):
        return obj
    lo, hi = obj
    return Interval(lo, hi)


@dataclass(frozen=True)
class IntervalUnion:
    """Disjoint, sorted union of positive-length intervals.

    Overlapping or touching input parts are merged and degenerate (single
    point) parts dropped, so the stored parts are canonical. A union may be
    empty or of zero measure as a set-algebra result; measure-based
    distances reject such operands explicitly.
    """

    parts: tuple[Interval, ...]

    def __post_init__(self):
        object.__setattr__(self, "parts", _canonical_parts(self.parts))

    @classmethod
    def of(cls, parts: Iterable[IntervalLike]) -> "IntervalUnion":
        return cls(tuple(_as_interval(p) for p in parts))

    @property
    def measure(self) -> float:
        return math.fsum(p.length for p in self.parts)

    @property
    def lo(self) -> float:
        if not self.parts:
            raise NullMeasureError("empty interval union has no bounds")
        return self.parts[0].lo

    @property
    def hi(self) -> float:
        if not self.parts:
            raise NullMeasureError("empty interval union has no bounds")
        return self.parts[-1].hi

    def contains(self, x: float) -> bool:
        k = bisect.bisect_right([p.lo for p in self.parts], x)
        return k > 0 and x <= self.parts[k - 1].hi

    def union(self, other: "IntervalUnion") -> "IntervalUnion":
        return IntervalUnion(self.parts + other.parts)

    def intersection(self, other: "IntervalUnion") -> "IntervalUnion":
        pieces = []
        for a in self.parts:
            for b in other.parts:
                lo, hi = max(a.lo, b.lo), min(a.hi, b.hi)
                if lo < hi:
                    pieces.append(Interval(lo, hi))
        return IntervalUnion(tuple(pieces))

    def difference(self, other: "IntervalUnion") -> "IntervalUnion":
        pieces = []
        for a in self.parts:
            segments = [(a.lo, a.hi)]
            for b in other.parts:
                nxt = []
                for lo, hi in segments:
                    if b.hi <= lo or b.lo >= hi:
                        nxt.append((lo, hi))
                        continue
                    if b.lo > lo:
                        nxt.append((lo, b.lo))
                    if b.hi < hi:
                        nxt.append((b.hi, hi))
                segments = nxt
            pieces.extend(Interval(lo, hi) for lo, hi in segments if lo < hi)
        return IntervalUnion(tuple(pieces))

    def symmetric_difference(self, other: "IntervalUnion") -> "IntervalUnion":
        return self.difference(other).union(other.difference(self))

    def __repr__(self) -> str:
        inner = " ∪ ".join(f"[{p.lo:g}, {p.hi:g}]" for p in self.parts)
        return inner or "∅"


def _canonical_parts(parts: Iterable[Interval]) -> tuple[Interval, ...]:
    live = sorted((p for p in parts if p.length > 0), key=lambda p: (p.lo, p.hi))
    merged: list[Interval] = []
    for p in live:
        if merged and p.lo <= merged[-1].hi:
            if p.hi > merged[-1].hi:
                merged[-1] = Interval(merged[-1].lo, p.hi)
        else:
            merged.append(p)
    return tuple(merged)


# ---------------------------------------------------------------------------
# Exact measure-based distances
# ---------------------------------------------------------------------------


def _box_abs_integral(a1: float, a2: float, b1: float, b2: float) -> float:
    # Double integral of |x - y| over [a1,a2] x [b1,b2]. The telescoped
    # antiderivative (four cubic terms) cancels catastrophically when one
    # interval is far shorter than the endpoint gaps, so the integral is
    # assembled from non-negative pieces instead: disjoint boxes contribute
    # area times the center gap, and an overlap contributes its exact
    # shared-square integral length^3 / 3.
    if a2 <= b1:
        return (a2 - a1) * (b2 - b1) * ((b1 - a2) + (a2 - a1) / 2 + (b2 - b1) / 2)
    if b2 <= a1:
        return (a2 - a1) * (b2 - b1) * ((a1 - b2) + (a2 - a1) / 2 + (b2 - b1) / 2)
    o1, o2 = max(a1, b1), min(a2, b2)
    total = (o2 - o1) ** 3 / 3.0
    parts_a = ((a1, o1), (o1, o2), (o2, a2))
    parts_b = ((b1, o1), (o1, o2), (o2, b2))
    for i, (xa, ya) in enumerate(parts_a):
        if ya <= xa:
            continue
        for j, (xb, yb) in enumerate(parts_b):
            if yb <= xb or (i == 1 and j == 1):
                continue
            total += _box_abs_integral(xa, ya, xb, yb)  # sub-pairs are disjoint
    return total


def interval_group_average(a: IntervalUnion, b: IntervalUnion) -> float:
    """Mean of |x - y| over x in ``a``, y in ``b``, computed exactly."""
    mu_a, mu_b = a.measure, b.measure
    if mu_a == 0.0 or mu_b == 0.0:
        raise NullMeasureError("interval_group_average requires positive measure")
    total = math.fsum(
        _box_abs_integral(pa.lo, pa.hi, pb.lo, pb.hi)
        for pa in a.parts
        for pb in b.parts
    )
    # divide sequentially: mu_a * mu_b can underflow for very short parts
    return total / mu_a / mu_b


def interval_average_metric(a: IntervalUnion, b: IntervalUnion) -> float:
    """Measure-based average-distance metric on interval unions.

    Difference terms with zero measure contribute zero through their
    vanishing coefficient, so their group average is never evaluated.
    """
    union = a.union(b)
    mu_union = union.measure
    if mu_union == 0.0:
        raise NullMeasureError("interval_average_metric requires a non-null union")
    total = 0.0
    b_only = b.difference(a)
    if b_only.measure > 0.0:
        total += (b_only.measure / mu_union) * interval_group_average(a, b_only)
    a_only = a.difference(b)
    if a_only.measure > 0.0:
        total += (a_only.measure / mu_union) * interval_group_average(a_only, b)
    return total


def interval_metric_closed_form(a: Interval, b: Interval) -> float:
    """Closed form of the interval metric for two single intervals.

    With s = |sup A - sup B| and i = |inf A - inf B|:

        f(A,B) = (s + i)/2 - s*i / (sup(A∪B) - inf(A∪B))   if one interval
                                                            properly contains
                                                            the other,
        f(A,B) = |center(A) - center(B)|                    otherwise.

    Without containment the endpoint gaps share a sign, so (s + i)/2 is
    exactly the center distance; it is computed in that form to keep the
    equality bit-exact. Degenerate intervals are rejected.
    """
    if a.length == 0.0 or b.length == 0.0:
        raise DomainError("interval_metric_closed_form requires non-degenerate intervals")
    if a == b:
        return 0.0
    sup_gap = abs(a.hi - b.hi)
    inf_gap = abs(a.lo - b.lo)
    a_in_b = b.lo <= a.lo and a.hi <= b.hi
    b_in_a = a.lo <= b.lo and b.hi <= a.hi
    if a_in_b or b_in_a:  # proper containment: a == b was handled above
        span = max(a.hi, b.hi) - min(a.lo, b.lo)
        return (sup_gap + inf_gap) / 2.0 - sup_gap * inf_gap / span
    return abs(a.center - b.center)


def steinhaus(a: IntervalUnion, b: IntervalUnion) -> float:
    """mu(A△B) / mu(A∪B): the measure-theoretic Jaccard distance."""
    mu_union = a.union(b).measure
    if mu_union == 0.0:
        raise NullMeasureError("steinhaus requires a non-null union")
    return a.symmetric_difference(b).measure / mu_union


# ---------------------------------------------------------------------------
# Estimation by sampling
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SamplePlan:
    """How to draw the sample: the population (an interval union or a finite
    set over a registry), the sample count, the seed, and the mode
    ("random" for seeded uniform draws, "systematic" for an equal-measure
    grid)."""

    population: Union[IntervalUnion, FiniteSet]
    n: int
    seed: int = 0
    mode: str = "random"

    def __post_init__(self):
        if self.n < 1:
            raise ParameterError(f"sample count must be >= 1, got {self.n}")
        if self.mode not in ("random", "systematic"):
            raise ParameterError(f"unknown sampling mode {self.mode!r}")


@dataclass(frozen=True)
class EstimateResult:
    value: float
    size_a: int
    size_b: int


Membership = Union[IntervalUnion, FiniteSet, Callable[[float], bool]]


def _member_test(membership: Membership) -> Callable:
    if isinstance(membership, IntervalUnion):
        return membership.contains
    if isinstance(membership, FiniteSet):
        return membership.__contains__
    return membership


def _sample_interval_points(population: IntervalUnion, plan: SamplePlan) -> np.ndarray:
    total = population.measure
    if total == 0.0:
        raise NullMeasureError("sampling population has zero measure")
    lengths = np.array([p.length for p in population.parts])
    offsets = np.concatenate(([0.0], np.cumsum(lengths)))
    los = np.array([p.lo for p in population.parts])
    if plan.mode == "random":
        u = np.random.default_rng(plan.seed).random(plan.n) * total
    else:
        u = (np.arange(plan.n) + 0.5) / plan.n * total
    idx = np.clip(np.searchsorted(offsets, u, side="right") - 1, 0, len(lengths) - 1)
    points = los[idx] + (u - offsets[idx])
    return np.unique(points)


def _abs_cross_sum(xs: np.ndarray, ys: np.ndarray) -> float:
    # Sum over all pairs of |x - y| in O((m+n) log n) via prefix sums.
    ys = np.sort(ys)
    prefix = np.concatenate(([0.0], np.cumsum(ys)))
    pos = np.searchsorted(ys, xs, side="right")
    total_y = prefix[-1]
    n_y = len(ys)
    left = xs * pos - prefix[pos]
    right = (total_y - prefix[pos]) - xs * (n_y - pos)
    return float(np.sum(left + right))


def _average_metric_1d(xs: np.ndarray, ys: np.ndarray) -> float:
    # Finite-set average metric over sorted unique 1-d points with d = |x-y|.
    union_size = len(np.union1d(xs, ys))
    b_only = np.setdiff1d(ys, xs, assume_unique=True)
    a_only = np.setdiff1d(xs, ys, assume_unique=True)
    total = 0.0
    if b_only.size:
        total += _abs_cross_sum(xs, b_only) / (union_size * len(xs))
    if a_only.size:
        total += _abs_cross_sum(a_only, ys) / (union_size * len(ys))
    return total


def estimate_average_metric(
    a: Membership,
    b: Membership,
    plan: SamplePlan,
    metric: BaseMetric | None = None,
) -> EstimateResult:
    """Sampled approximation of the average-distance metric.

    Draws the plan's sample from the population, forms the finite sets
    S∩A and S∩B, and returns the exact finite-set metric on those, together
    with their sizes. Deterministic for a fixed seed. Raises if either
    intersection comes out empty; an empty sample is reported, never papered
    over.
    """
    if isinstance(plan.population, IntervalUnion):
        points = _sample_interval_points(plan.population, plan)
        in_a = _member_test(a)
        in_b = _member_test(b)
        mask_a = np.fromiter((in_a(float(x)) for x in points), bool, len(points))
        mask_b = np.fromiter((in_b(float(x)) for x in points), bool, len(points))
        sample_a = points[mask_a]
        sample_b = points[mask_b]
        if sample_a.size == 0 or sample_b.size == 0:
            raise SamplingError(
                f"sample missed a set entirely (|S∩A|={sample_a.size}, "
                f"|S∩B|={sample_b.size}); increase n or fix the population"
            )
        value = _average_metric_1d(sample_a, sample_b)
        return EstimateResult(value, int(sample_a.size), int(sample_b.size))

    population: FiniteSet = plan.population
    if metric is None:
        raise ParameterError("finite-population estimation needs a ground metric")
    if not isinstance(a, FiniteSet) or not isinstance(b, FiniteSet):
        raise ParameterError("finite-population estimation expects FiniteSet operands")
    ids = list(population.members)
    if not ids:
        raise ParameterError("finite sampling population is empty")
    rng = np.random.default_rng(plan.seed)
    drawn = {ids[k] for k in rng.integers(0, len(ids), plan.n)}
    registry = population.registry
    sample_a = registry.set_of(drawn & a.ids)
    sample_b = registry.set_of(drawn & b.ids)
    if not sample_a.members or not sample_b.members:
        raise SamplingError(
            f"sample missed a set entirely (|S∩A|={len(sample_a)}, "
            f"|S∩B|={len(sample_b)}); increase n or fix the population"
        )
    value = average_metric(metric, sample_a, sample_b)
    return EstimateResult(value, len(sample_a), len(sample_b))


def sample_count_ratio(a: Membership, b: Membership, plan: SamplePlan) -> float:
    """|S∩A| / |S∩B| for the plan's sample: the finite-sample stand-in for a
    relative measure of A against B. Zero numerator gives 0; an empty
    denominator sample is an error."""
    if isinstance(plan.population, IntervalUnion):
        points = _sample_interval_points(plan.population, plan)
        in_a = _member_test(a)
        in_b = _member_test(b)
        count_a = sum(1 for x in points if in_a(float(x)))
        count_b = sum(1 for x in points if in_b(float(x)))
    else:
        ids = list(plan.population.members)
        if not ids:
            raise ParameterError("finite sampling population is empty")
        rng = np.random.default_rng(plan.seed)
        drawn = {ids[k] for k in rng.integers(0, len(ids), plan.n)}
        count_a = len(drawn & a.ids)  # type: ignore[union-attr]
        count_b = len(drawn & b.ids)  # type: ignore[union-attr]
    if count_b == 0:
        raise SamplingError("denominator set missed by the sample")
    return count_a / count_b


# ---------------------------------------------------------------------------
# Fuzzy sets
# ---------------------------------------------------------------------------

DEFAULT_ALPHA_GRID = tuple((k + 1) / 10 for k in range(10))


@dataclass(frozen=True)
class FuzzySet:
    """Membership function over a finite universe of element ids."""

    membership: tuple[tuple[ElementId, float], ...]

    def __post_init__(self):
        if isinstance(self.membership, Mapping):
            items = tuple(self.membership.items())
        else:
            items = tuple(self.membership)
        items = tuple(sorted(((eid, float(g)) for eid, g in items),
                             key=lambda kv: (isinstance(kv[0], str), kv[0])))
        for eid, grade in items:
            if not 0.0 <= grade <= 1.0:
                raise ParameterError(f"membership grade out of [0,1] for {eid!r}: {grade}")
        if not any(grade > 0 for _, grade in items):
            raise ParameterError("fuzzy set needs at least one positive membership")
        object.__setattr__(self, "membership", items)

    def alpha_cut(self, alpha: float) -> frozenset:
        if not 0.0 < alpha <= 1.0:
            raise ParameterError(f"alpha level must lie in (0, 1], got {alpha}")
        return frozenset(eid for eid, grade in self.membership if grade >= alpha)


def fuzzy_distance(
    m: BaseMetric,
    registry: ElementRegistry,
    a: FuzzySet,
    b: FuzzySet,
    alpha_grid: Iterable[float] = DEFAULT_ALPHA_GRID,
    alpha_weight: float = 1.0,
) -> float:
    """Distance between fuzzy sets via their level-cut collections.

    Each surviving grid level alpha contributes a (cut, alpha) pair; a level
    is dropped when either cut is empty. Pairs are compared with the product
    choice

        D((S, alpha), (T, beta)) = average_metric(S, T) + c * |alpha - beta|

    (one admissible combination: a sum of metrics is a metric), and the
    level-2 average-distance construction is applied to the two collections
    of pairs. Equal fuzzy sets give 0.
    """
    if alpha_weight < 0:
        raise ParameterError("alpha weight must be non-negative")
    levels = sorted(set(float(al) for al in alpha_grid))
    if not levels:
        raise ParameterError("alpha grid is empty")
    pairs_a = []
    pairs_b = []
    for alpha in levels:
        cut_a = a.alpha_cut(alpha)
        cut_b = b.alpha_cut(alpha)
        if not cut_a or not cut_b:
            continue
        pairs_a.append((cut_a, alpha))
        pairs_b.append((cut_b, alpha))
    if not pairs_a:
        raise DomainError("no alpha level leaves both cuts non-empty")
    coll_a = frozenset(pairs_a)
    coll_b = frozenset(pairs_b)

    cache: dict[tuple[frozenset, frozenset], float] = {}

    def pair_distance(p: tuple[frozenset, float], q: tuple[frozenset, float]) -> float:
        (s, alpha), (t, beta) = p, q
        key = (s, t)
        if key not in cache:
            cache[key] = average_metric(m, registry.set_of(s), registry.set_of(t))
        return cache[key] + alpha_weight * abs(alpha - beta)

    n_union = len(coll_a | coll_b)
    total = 0.0
    b_only = coll_b - coll_a
    if b_only:
        total += math.fsum(
            pair_distance(p, q) for p in coll_a for q in b_only
        ) / (n_union * len(coll_a))
    a_only = coll_a - coll_b
    if a_only:
        total += math.fsum(
            pair_distance(p, q) for p in a_only for q in coll_b
        ) / (n_union * len(coll_b))
    return total
