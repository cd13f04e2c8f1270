"""Command-line surface: distances, distance matrices, axiom checks,
identity verification, and sampled estimation.

Exit codes: 0 success (or clean verification), 1 verification found
violations, 2 usage or validation error, 3 domain error from the library
(the message names the violated precondition).
"""

from __future__ import annotations

import argparse
import csv
import json
import random
import sys

from .axioms import (
    METRIC_AXIOMS,
    PARTIAL_AXIOMS,
    chained_overlap_sampler,
    check_axioms,
    random_point_registry,
    subset_triple_sampler,
)
from .continuous import (
    IntervalUnion,
    SamplePlan,
    estimate_average_metric,
    fuzzy_distance,
    interval_average_metric,
    interval_metric_closed_form,
    steinhaus,
)
from .core import (
    DiscreteMetric,
    EuclideanMetric,
    FiniteSet,
    average_metric,
    group_average,
    hausdorff,
    jaccard,
    semi_metric,
    symdiff_cardinality,
)
from .errors import DomainError, ParameterError
from .hierarchy import NestedSet, nested_average_metric
from .power_means import (
    closed_form_pointwise_discrete,
    closed_form_sidewise_discrete,
    log_cardinality_distance,
    pointwise_mean_distance,
    sidewise_mean_distance,
)
from .verify import SUITES, run_suite
from .workspace import Workspace, WorkspaceError, load_workspace

FINITE_FAMILIES = ("f", "g", "e", "h", "j", "symdiff", "u", "v", "u00", "v000", "dnu", "fk")
INTERVAL_FAMILIES = ("interval", "steinhaus")
ALL_FAMILIES = FINITE_FAMILIES + INTERVAL_FAMILIES + ("fuzzy",)


def format_scalar(value: float) -> str:
    value = float(value)
    if value == 0.0:
        value = 0.0  # normalize -0.0 for byte-stable output
    return f"{value:.12g}"


def _extended_real(text: str) -> float:
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected a number, 'inf' or '-inf', got {text!r}"
        ) from None


def _mean_kind(text: str) -> int:
    if text not in ("0", "1"):
        raise argparse.ArgumentTypeError(f"mean kind must be 0 or 1, got {text!r}")
    return int(text)


def _alpha_grid(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(part) for part in text.split(",") if part.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad alpha grid {text!r}") from None


def _default_lam(ws: Workspace | None) -> float:
    if ws is not None and isinstance(ws.metric, DiscreteMetric):
        return ws.metric.lam
    return 1.0


def _resolve_set(ws: Workspace, name: str) -> FiniteSet:
    try:
        return ws.sets[name]
    except KeyError:
        raise ParameterError(f"unknown set name {name!r}") from None


def _resolve_interval(ws: Workspace, name: str) -> IntervalUnion:
    try:
        return ws.intervals[name]
    except KeyError:
        raise ParameterError(f"unknown interval name {name!r}") from None


def _nested_operand(ws: Workspace, text: str) -> NestedSet:
    names = [part.strip() for part in text.split(",") if part.strip()]
    if not names:
        raise ParameterError(f"empty nested operand {text!r}")
    level1 = [
        NestedSet.of(NestedSet.leaf(eid) for eid in _resolve_set(ws, name))
        for name in names
    ]
    if "," in text:
        return NestedSet.of(level1)
    return level1[0]


def _finite_distance_fn(ws: Workspace, args):
    """Closure (a, b) -> value for the chosen finite-set family."""
    family = args.family
    m = ws.metric
    lam = args.lam if args.lam is not None else _default_lam(ws)
    if family == "f":
        return lambda a, b: average_metric(m, a, b)
    if family == "g":
        return lambda a, b: group_average(m, a, b)
    if family == "e":
        return lambda a, b: semi_metric(m, a, b)
    if family == "h":
        return lambda a, b: hausdorff(m, a, b)
    if family == "j":
        return lambda a, b: jaccard(a, b)
    if family == "symdiff":
        return lambda a, b: float(symdiff_cardinality(a, b))
    if family == "u":
        return lambda a, b: pointwise_mean_distance(
            m, a, b, i=args.i, j=args.j, p=args.p, q=args.q
        )
    if family == "v":
        return lambda a, b: sidewise_mean_distance(
            m, a, b, k=args.k, i=args.i, j=args.j, r=args.r, p=args.p, q=args.q
        )
    if family == "u00":
        return lambda a, b: closed_form_pointwise_discrete(a, b, args.p, lam)
    if family == "v000":
        return lambda a, b: closed_form_sidewise_discrete(a, b, args.p, lam)
    if family == "dnu":
        return lambda a, b: log_cardinality_distance(a, b, args.nu)
    raise ParameterError(f"family {family!r} is not a finite-set family")


def _pair_value(ws: Workspace, args, name_a: str, name_b: str) -> float:
    family = args.family
    if family in INTERVAL_FAMILIES:
        ia, ib = _resolve_interval(ws, name_a), _resolve_interval(ws, name_b)
        if family == "steinhaus":
            return steinhaus(ia, ib)
        singles = []
        for name, union in ((name_a, ia), (name_b, ib)):
            if len(union.parts) != 1:
                raise ParameterError(
                    f"family 'interval' needs single intervals; {name!r} has "
                    f"{len(union.parts)} parts"
                )
            singles.append(union.parts[0])
        return interval_metric_closed_form(singles[0], singles[1])
    if family == "fuzzy":
        try:
            fa, fb = ws.fuzzy[name_a], ws.fuzzy[name_b]
        except KeyError as exc:
            raise ParameterError(f"unknown fuzzy set name {exc.args[0]!r}") from None
        return fuzzy_distance(
            ws.metric, ws.registry, fa, fb,
            alpha_grid=args.alpha_grid, alpha_weight=args.alpha_weight,
        )
    if family == "fk":
        na, nb = _nested_operand(ws, name_a), _nested_operand(ws, name_b)
        if args.level is not None and na.level != args.level:
            raise ParameterError(
                f"operand {name_a!r} parses to level {na.level}, --level says {args.level}"
            )
        return nested_average_metric(ws.metric, ws.registry, na, nb)
    fn = _finite_distance_fn(ws, args)
    return fn(_resolve_set(ws, name_a), _resolve_set(ws, name_b))


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def cmd_dist(args) -> int:
    ws = load_workspace(args.workspace)
    value = _pair_value(ws, args, args.set_a, args.set_b)
    print(format_scalar(value))
    return 0


def cmd_matrix(args) -> int:
    ws = load_workspace(args.workspace)
    names = args.sets
    if len(names) < 2:
        raise ParameterError("matrix needs at least two names")
    values = [
        [_pair_value(ws, args, na, nb) for nb in names]
        for na in names
    ]
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow([""] + list(names))
    for name, row in zip(names, values):
        writer.writerow([name] + [format_scalar(v) for v in row])
    return 0


def cmd_axioms(args) -> int:
    if args.random:
        rng = random.Random(args.seed)
        registry = random_point_registry(rng, size=args.pool, dim=args.dim)
        ws = Workspace(registry=registry, metric=EuclideanMetric())
    elif args.workspace:
        ws = load_workspace(args.workspace)
    else:
        raise ParameterError("axioms needs --workspace or --random")

    min_size, _, max_size = args.sizes.partition(":")
    try:
        lo, hi = int(min_size), int(max_size or min_size)
    except ValueError:
        raise ParameterError(f"bad --sizes {args.sizes!r}, expected LO:HI") from None

    if args.fixture == "chained-overlap":
        sampler = chained_overlap_sampler(ws.registry)
    else:
        sampler = subset_triple_sampler(ws.registry, lo, hi)

    axioms = PARTIAL_AXIOMS if args.partial else METRIC_AXIOMS
    dist_fn = _finite_distance_fn(ws, args)
    report = check_axioms(
        dist_fn, sampler, n=args.n, seed=args.seed,
        tolerance=args.tolerance, axioms=axioms,
    )

    if args.json:
        print(json.dumps(report.to_dict(), sort_keys=True, indent=2))
    else:
        print(
            f"family={args.family} checked={report.checked} "
            f"tolerance={report.tolerance:g} axioms={','.join(report.axioms)}"
        )
        counts = report.counts()
        if counts:
            for axiom in sorted(counts):
                print(f"violations[{axiom}] = {counts[axiom]}")
            worst = max(report.violations, key=lambda v: v.magnitude)
            print(f"worst: {worst.axiom} magnitude={format_scalar(worst.magnitude)}")
            print(f"  witness: {' | '.join(worst.witness)}")
        else:
            print("violations: none")
    return 0 if report.ok else 1


def cmd_verify(args) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    failed = 0
    total = 0
    for name in names:
        rows = run_suite(name, seed=args.seed)
        for row in rows:
            total += 1
            status = "PASS" if row.passed else "FAIL"
            if not row.passed:
                failed += 1
            print(
                f"[{name}] {status} {row.name}: "
                f"max_dev={row.deviation:.3e} tol={row.tolerance:.0e}"
            )
    print(f"verify: {total - failed}/{total} checks passed")
    return 0 if failed == 0 else 1


def cmd_estimate(args) -> int:
    ws = load_workspace(args.workspace)
    name_a, name_b = args.set_a, args.set_b

    if name_a in ws.intervals or name_b in ws.intervals:
        a = _resolve_interval(ws, name_a)
        b = _resolve_interval(ws, name_b)
        if not args.population:
            raise ParameterError("interval estimation needs --population")
        population = _resolve_interval(ws, args.population)
        uncovered = a.union(b).difference(population).measure
        if uncovered > 0.0:
            raise ParameterError(
                f"population {args.population!r} does not cover the operands "
                f"(uncovered measure {uncovered:g})"
            )
        plan = SamplePlan(population, n=args.n, seed=args.seed, mode=args.mode)
        result = estimate_average_metric(a, b, plan)
        reference = interval_average_metric(a, b)
    else:
        a = _resolve_set(ws, name_a)
        b = _resolve_set(ws, name_b)
        if args.population:
            population = _resolve_set(ws, args.population)
        else:
            population = ws.registry.universe()
        if not (a.ids | b.ids) <= population.ids:
            raise ParameterError(
                f"population {args.population!r} does not cover the operands"
            )
        plan = SamplePlan(population, n=args.n, seed=args.seed, mode=args.mode)
        result = estimate_average_metric(a, b, plan, metric=ws.metric)
        reference = average_metric(ws.metric, a, b)

    print(f"estimate {format_scalar(result.value)}")
    print(f"sample_a {result.size_a}")
    print(f"sample_b {result.size_b}")
    print(f"reference {format_scalar(reference)}")
    rel = abs(result.value - reference) / abs(reference) if reference != 0 else 0.0
    print(f"relative_error {format_scalar(rel)}")
    return 0


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def _add_family_options(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--family", required=True, choices=ALL_FAMILIES)
    sub.add_argument("--p", type=_extended_real, default=1.0,
                     help="order of the outer mean ('inf', '-inf', '0' for limits)")
    sub.add_argument("--q", type=_extended_real, default=1.0,
                     help="order of the inner mean")
    sub.add_argument("--r", type=_extended_real, default=1.0,
                     help="order of the outermost (sidewise) mean")
    sub.add_argument("--i", type=_mean_kind, default=1, help="outer mean kind (0 or 1)")
    sub.add_argument("--j", type=_mean_kind, default=1, help="inner mean kind (0 or 1)")
    sub.add_argument("--k", type=_mean_kind, default=1, help="outermost mean kind (0 or 1)")
    sub.add_argument("--lam", type=float, default=None,
                     help="discrete scale for the closed forms (defaults to the "
                          "workspace metric's scale)")
    sub.add_argument("--nu", type=float, default=0.5, help="log-cardinality exponent")
    sub.add_argument("--level", type=int, default=None,
                     help="expected nesting level for family fk")
    sub.add_argument("--alpha-grid", type=_alpha_grid,
                     default=tuple((kk + 1) / 10 for kk in range(10)),
                     help="comma-separated alpha levels for family fuzzy")
    sub.add_argument("--alpha-weight", type=float, default=1.0,
                     help="weight of the |alpha - beta| term for family fuzzy")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="setmetric",
        description="Distances between finite sets, their generalizations, "
                    "and a randomized metric-axiom verifier.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_dist = sub.add_parser("dist", help="distance between two named operands")
    p_dist.add_argument("--workspace", required=True)
    _add_family_options(p_dist)
    p_dist.add_argument("set_a")
    p_dist.add_argument("set_b")
    p_dist.set_defaults(func=cmd_dist)

    p_matrix = sub.add_parser("matrix", help="pairwise distance matrix as CSV")
    p_matrix.add_argument("--workspace", required=True)
    _add_family_options(p_matrix)
    p_matrix.add_argument("sets", nargs="+")
    p_matrix.set_defaults(func=cmd_matrix)

    p_axioms = sub.add_parser("axioms", help="randomized metric-axiom check")
    p_axioms.add_argument("--workspace")
    p_axioms.add_argument("--random", action="store_true",
                          help="sample over a random plane pool instead of a workspace")
    _add_family_options(p_axioms)
    p_axioms.add_argument("--n", type=int, default=1000)
    p_axioms.add_argument("--seed", type=int, default=0)
    p_axioms.add_argument("--tolerance", type=float, default=1e-9)
    p_axioms.add_argument("--dim", type=int, default=2)
    p_axioms.add_argument("--pool", type=int, default=12)
    p_axioms.add_argument("--sizes", default="1:8", help="set size range LO:HI")
    p_axioms.add_argument("--fixture", choices=["chained-overlap"],
                          help="structured sampler instead of independent subsets")
    p_axioms.add_argument("--partial", action="store_true",
                          help="check the partial-metric axiom set "
                               "(M1, M3, M4, partial triangle)")
    p_axioms.add_argument("--json", action="store_true")
    p_axioms.set_defaults(func=cmd_axioms)

    p_verify = sub.add_parser("verify", help="run the identity verification suites")
    p_verify.add_argument("--suite", default="all", choices=["all"] + list(SUITES))
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.set_defaults(func=cmd_verify)

    p_est = sub.add_parser("estimate", help="sampled estimate of the set metric")
    p_est.add_argument("--workspace", required=True)
    p_est.add_argument("set_a")
    p_est.add_argument("set_b")
    p_est.add_argument("--population", help="named superset to sample from")
    p_est.add_argument("--n", type=int, default=10000)
    p_est.add_argument("--seed", type=int, default=0)
    p_est.add_argument("--mode", choices=["random", "systematic"], default="random")
    p_est.set_defaults(func=cmd_estimate)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (WorkspaceError, ParameterError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    raise SystemExit(main())
