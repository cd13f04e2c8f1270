"""Acceptance criteria, one test per criterion.

Each test prints a single pass/fail line (run ``pytest tests/test_acceptance.py -s``
to see them) and then asserts, so the printed verdict always matches the
pytest outcome. Tolerances are pinned here, not configurable.
"""

import itertools
import math
import random
import subprocess
import sys
import time

from setmetric import (
    DiscreteMetric,
    EuclideanMetric,
    Interval,
    IntervalUnion,
    SamplePlan,
    average_metric,
    chained_overlap_sampler,
    check_axioms,
    closed_form_pointwise_discrete,
    closed_form_sidewise_discrete,
    duality_ratio,
    estimate_average_metric,
    hausdorff,
    interval_average_metric,
    interval_metric_closed_form,
    jaccard,
    log_cardinality_distance,
    nested_average_metric,
    nested_triple_sampler,
    pointwise_mean_distance,
    random_point_registry,
    semi_metric,
    sidewise_mean_distance,
    subset_triple_sampler,
    triangle_surplus,
)
from setmetric.verify import random_interval_pair, triangle_decomposition_sides

INF = float("inf")


def report(num: int, name: str, ok: bool, detail: str) -> None:
    print(f"criterion {num:02d} [{'PASS' if ok else 'FAIL'}] {name}: {detail}")


def test_01_average_metric_axioms():
    rng = random.Random(101)
    registry = random_point_registry(rng, size=12, dim=2)
    m = EuclideanMetric()
    start = time.perf_counter()
    result = check_axioms(
        lambda a, b: average_metric(m, a, b),
        subset_triple_sampler(registry, 1, 8),
        n=1000, seed=101, tolerance=1e-9,
    )
    elapsed = time.perf_counter() - start
    ok = result.ok and elapsed < 5.0
    report(1, "metric axioms for the average metric",
           ok, f"violations={len(result.violations)} elapsed={elapsed:.2f}s")
    assert result.ok
    assert elapsed < 5.0


def test_02_discrete_specialization_is_jaccard():
    rng = random.Random(202)
    registry = random_point_registry(rng, size=12, dim=2)
    m = DiscreteMetric(1.0)
    sampler = subset_triple_sampler(registry, 1, 8)
    worst = 0.0
    for _ in range(500):
        a, b, _ = sampler(rng)
        worst = max(worst, abs(average_metric(m, a, b) - jaccard(a, b)))
    ok = worst <= 1e-12
    report(2, "discrete average metric equals jaccard", ok, f"max_dev={worst:.3e}")
    assert ok


def test_03_mean_composition_identities():
    rng = random.Random(303)
    registry = random_point_registry(rng, size=12, dim=2)
    m = EuclideanMetric()
    sampler = subset_triple_sampler(registry, 1, 6)
    dev_u = dev_v = dev_h = 0.0
    for _ in range(200):
        a, b, _ = sampler(rng)
        f = average_metric(m, a, b)
        for i, j in itertools.product((0, 1), repeat=2):
            u = pointwise_mean_distance(m, a, b, i=i, j=j, p=i, q=j)
            dev_u = max(dev_u, abs(u - f))
        for k, i, j in itertools.product((0, 1), repeat=3):
            v = sidewise_mean_distance(m, a, b, k=k, i=i, j=j, r=k, p=i, q=j)
            dev_v = max(dev_v, abs(2 * v - f))
        u_h = pointwise_mean_distance(m, a, b, p=INF, q=-INF)
        dev_h = max(dev_h, abs(u_h - hausdorff(m, a, b)))
    ok = dev_u <= 1e-9 and dev_v <= 1e-9 and dev_h <= 1e-12
    report(3, "mean-composition identities", ok,
           f"dev_u={dev_u:.3e} dev_2v={dev_v:.3e} dev_h={dev_h:.3e}")
    assert ok


def test_04_discrete_closed_forms():
    rng = random.Random(404)
    registry = random_point_registry(rng, size=12, dim=2)
    sampler = subset_triple_sampler(registry, 1, 8)
    lam = 1.0

    point_violations = sum(
        len(check_axioms(
            lambda a, b, _p=p: closed_form_pointwise_discrete(a, b, _p, lam),
            sampler, n=1000, seed=404, tolerance=1e-9, axioms=("M5",),
        ).violations)
        for p in (0.1, 1.0, 10.0)
    )
    side_violations = sum(
        len(check_axioms(
            lambda a, b, _p=p: closed_form_sidewise_discrete(a, b, _p, lam),
            sampler, n=1000, seed=405, tolerance=1e-9, axioms=("M5",),
        ).violations)
        for p in (-0.1, -1.0, -10.0)
    )

    pairs = [sampler(rng)[:2] for _ in range(300)]
    # the pointwise form tends to lam * jaccard; the sidewise form carries
    # its structural factor 1/2 into the limit (see decisions ledger)
    dev_point_limit = max(
        abs(closed_form_pointwise_discrete(a, b, 1e-6, lam) - lam * jaccard(a, b))
        for a, b in pairs
    )
    dev_side_limit = max(
        abs(closed_form_sidewise_discrete(a, b, -1e-6, lam) - 0.5 * lam * jaccard(a, b))
        for a, b in pairs
    )

    m = DiscreteMetric(lam)
    dev_generic = 0.0
    for a, b in pairs[:100]:
        for p in (0.5, 2.0):
            for q in (-1.0, 0.0, 1.0, INF):
                dev_generic = max(dev_generic, abs(
                    pointwise_mean_distance(m, a, b, i=0, j=0, p=p, q=q)
                    - closed_form_pointwise_discrete(a, b, p, lam)))
        for p in (-0.5, -2.0, 0.0):
            dev_generic = max(dev_generic, abs(
                sidewise_mean_distance(m, a, b, k=0, i=0, j=0, r=0.0, p=p, q=1.0)
                - closed_form_sidewise_discrete(a, b, p, lam)))

    ok = (point_violations == 0 and side_violations == 0
          and dev_point_limit <= 1e-4 and dev_side_limit <= 1e-4
          and dev_generic <= 1e-9)
    report(4, "discrete closed forms", ok,
           f"m5={point_violations}+{side_violations} "
           f"limit_dev={dev_point_limit:.3e}/{dev_side_limit:.3e} "
           f"generic_dev={dev_generic:.3e}")
    assert ok


def test_05_triangle_decomposition_identity():
    rng = random.Random(505)
    registry = random_point_registry(rng, size=12, dim=2)
    m = EuclideanMetric()
    sampler = subset_triple_sampler(registry, 1, 8)
    worst = 0.0
    for _ in range(300):
        a, b, c = sampler(rng)
        lhs, rhs = triangle_decomposition_sides(m, a, b, c)
        worst = max(worst, abs(lhs - rhs) / max(abs(lhs), abs(rhs), 1.0))
    ok = worst <= 1e-9
    report(5, "seven-part triangle decomposition identity", ok, f"max_rel={worst:.3e}")
    assert ok


def test_06_semi_metric():
    rng = random.Random(606)
    registry = random_point_registry(rng, size=12, dim=2)
    m = EuclideanMetric()
    e = lambda a, b: semi_metric(m, a, b)
    pair_report = check_axioms(
        e, subset_triple_sampler(registry, 1, 8),
        n=1000, seed=606, axioms=("M1", "M2", "M3", "M4"),
    )

    sampler = chained_overlap_sampler(registry)
    worst_gap = 0.0
    found_violation = False
    for _ in range(300):
        a, b, c = sampler(rng)
        delta = registry.set_of(a.ids - c.ids)
        eta = registry.set_of(a.ids & c.ids)
        eps = registry.set_of(c.ids - a.ids)
        violation = e(a, c) - e(a, b) - e(b, c)
        predicted = triangle_surplus(m, delta, eta, eps) / (len(a) * len(b) * len(c))
        worst_gap = max(worst_gap, abs(violation - predicted))
        if violation > 1e-9:
            found_violation = True
    ok = pair_report.ok and found_violation and worst_gap <= 1e-9
    report(6, "semi-metric: pair axioms hold, triangle fails as predicted", ok,
           f"pair_violations={len(pair_report.violations)} "
           f"witness_found={found_violation} prediction_gap={worst_gap:.3e}")
    assert ok


def test_07_log_cardinality_distance():
    rng = random.Random(707)
    registry = random_point_registry(rng, size=12, dim=2)
    sampler = subset_triple_sampler(registry, 1, 8)
    metric_report = check_axioms(
        lambda a, b: log_cardinality_distance(a, b, 0.5),
        sampler, n=1000, seed=707, tolerance=1e-9,
    )
    partial_report = check_axioms(
        lambda a, b: log_cardinality_distance(a, b, 0.25),
        sampler, n=1000, seed=708, tolerance=1e-9,
        axioms=("M1", "M3", "M4", "partial-M5"),
    )
    self_exact = all(
        log_cardinality_distance(s, s, nu) == (1 - 2 * nu) * math.log(len(s))
        for nu in (0.0, 0.25, 0.5)
        for s in (registry.set_of(list(range(k))) for k in (1, 2, 3, 5, 8))
    )
    ok = metric_report.ok and partial_report.ok and self_exact
    report(7, "log-cardinality distance: metric at 1/2, partial below", ok,
           f"metric_violations={len(metric_report.violations)} "
           f"partial_violations={len(partial_report.violations)} "
           f"self_distance_exact={self_exact}")
    assert ok


def test_08_nested_metric_and_duality():
    registry = random_point_registry(random.Random(808), size=10, dim=2)
    m = EuclideanMetric()
    nested_report = check_axioms(
        lambda a, b: nested_average_metric(m, registry, a, b),
        nested_triple_sampler(registry, inner_size=(1, 4), outer_size=(1, 4)),
        n=500, seed=808, tolerance=1e-9,
    )

    spread = 0.0
    bounds_ok = True
    for size in (2, 3, 4, 5):
        kappa, table = duality_ratio(registry.set_of(list(range(size))), 1.0)
        values = [d for _, _, d in table]
        spread = max(spread, max(values) - min(values))
        bounds_ok = bounds_ok and 0.0 < kappa < 1.0
    kappa2, _ = duality_ratio(registry.set_of([0, 1]), 1.0)

    ok = nested_report.ok and spread <= 1e-9 and bounds_ok and kappa2 == 0.5
    report(8, "nested level-2 metric and containment duality", ok,
           f"nested_violations={len(nested_report.violations)} "
           f"ratio_spread={spread:.3e} kappa2={kappa2}")
    assert ok


def test_09_interval_closed_form():
    rng = random.Random(909)
    worst = 0.0
    center_exact = True
    seen = set()
    for _ in range(1000):
        a, b = random_interval_pair(rng)
        closed = interval_metric_closed_form(a, b)
        numeric = interval_average_metric(IntervalUnion((a,)), IntervalUnion((b,)))
        worst = max(worst, abs(closed - numeric))
        a_in_b = b.lo <= a.lo and a.hi <= b.hi
        b_in_a = a.lo <= b.lo and b.hi <= a.hi
        if a_in_b or b_in_a:
            seen.add("nested" if a != b else "equal")
        else:
            seen.add("disjoint" if a.hi <= b.lo or b.hi <= a.lo else "overlap")
            if closed != abs(a.center - b.center):
                center_exact = False
        if a.lo == b.lo or a.hi == b.hi:
            seen.add("shared-endpoint")
    categories_ok = {"nested", "equal", "disjoint", "overlap", "shared-endpoint"} <= seen
    ok = worst <= 1e-9 and center_exact and categories_ok
    report(9, "interval closed form vs exact integration", ok,
           f"max_dev={worst:.3e} center_exact={center_exact} cases={sorted(seen)}")
    assert ok


def test_10_sampled_estimation():
    a = IntervalUnion((Interval(0.0, 1.0),))
    b = IntervalUnion((Interval(0.5, 1.5),))
    population = IntervalUnion((Interval(0.0, 1.5),))
    reference = interval_average_metric(a, b)
    start = time.perf_counter()
    errors = {
        n: abs(estimate_average_metric(a, b, SamplePlan(population, n=n, seed=0)).value
               - reference)
        for n in (100, 10000)
    }
    elapsed = time.perf_counter() - start
    rel = errors[10000] / reference
    ok = rel <= 0.05 and errors[10000] <= errors[100] and elapsed < 2.0
    report(10, "sampled estimation converges", ok,
           f"rel_error={rel:.4f} err100={errors[100]:.4f} "
           f"err10000={errors[10000]:.4f} elapsed={elapsed:.2f}s")
    assert ok


def test_11_cli_verify_determinism():
    runs = [
        subprocess.run(
            [sys.executable, "-m", "setmetric", "verify", "--seed", "1234"],
            capture_output=True, text=True,
        )
        for _ in range(2)
    ]
    ok = (runs[0].returncode == 0 and runs[1].returncode == 0
          and runs[0].stdout == runs[1].stdout and runs[0].stdout)
    report(11, "cli verify: one command, exit 0, byte-identical", bool(ok),
           f"exit={runs[0].returncode}/{runs[1].returncode} "
           f"identical={runs[0].stdout == runs[1].stdout}")
    assert runs[0].returncode == 0 and runs[1].returncode == 0
    assert runs[0].stdout == runs[1].stdout
