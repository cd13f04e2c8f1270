"""Workspace files: one JSON document holding a metric, an element registry,
and named sets, interval unions and fuzzy sets.

Schema::

    {
      "metric":    {"kind": "discrete", "lambda": 1.0}
                 | {"kind": "euclidean"}
                 | {"kind": "lp", "p": 3}
                 | {"kind": "matrix", "ids": [...], "values": [[...]],
                    "pseudo": false},
      "elements":  {"id": [x, y, ...] | number | null, ...},
      "sets":      {"name": ["id", ...], ...},
      "intervals": {"name": [[lo, hi], ...], ...},
      "fuzzy":     {"name": {"id": grade, ...}, ...}
    }

Exactly one metric is active per workspace. Every named set may reference
only registered ids; violations are reported at load time.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .continuous import FuzzySet, IntervalUnion
from .core import (
    BaseMetric,
    DiscreteMetric,
    ElementRegistry,
    EuclideanMetric,
    FiniteSet,
    LpMetric,
    MatrixMetric,
)
from .errors import ParameterError


class WorkspaceError(ValueError):
    """The workspace document is malformed or internally inconsistent."""


@dataclass
class Workspace:
    registry: ElementRegistry
    metric: BaseMetric
    sets: dict[str, FiniteSet] = field(default_factory=dict)
    intervals: dict[str, IntervalUnion] = field(default_factory=dict)
    fuzzy: dict[str, FuzzySet] = field(default_factory=dict)


def metric_from_config(config: dict) -> BaseMetric:
    if not isinstance(config, dict) or "kind" not in config:
        raise WorkspaceError('metric config must be an object with a "kind"')
    kind = config["kind"]
    try:
        if kind == "discrete":
            return DiscreteMetric(lam=float(config.get("lambda", 1.0)))
        if kind == "euclidean":
            return EuclideanMetric()
        if kind == "lp":
            return LpMetric(p=float(config.get("p", 2.0)))
        if kind == "matrix":
            if "ids" not in config or "values" not in config:
                raise WorkspaceError('matrix metric needs "ids" and "values"')
            return MatrixMetric(
                ids=config["ids"],
                values=config["values"],
                pseudo=bool(config.get("pseudo", False)),
            )
    except ParameterError as exc:
        raise WorkspaceError(f"invalid metric config: {exc}") from exc
    raise WorkspaceError(f"unknown metric kind {kind!r}")


def parse_workspace(doc: dict) -> Workspace:
    if not isinstance(doc, dict):
        raise WorkspaceError("workspace must be a JSON object")
    metric = metric_from_config(doc.get("metric", {"kind": "euclidean"}))
    registry = ElementRegistry()
    for eid, payload in doc.get("elements", {}).items():
        registry.add(eid, payload)

    sets: dict[str, FiniteSet] = {}
    for name, ids in doc.get("sets", {}).items():
        if not isinstance(ids, list):
            raise WorkspaceError(f"set {name!r} must be a list of ids")
        missing = [eid for eid in ids if eid not in registry]
        if missing:
            raise WorkspaceError(f"set {name!r} references unknown ids {missing}")
        sets[name] = registry.set_of(ids)

    intervals: dict[str, IntervalUnion] = {}
    for name, pairs in doc.get("intervals", {}).items():
        try:
            intervals[name] = IntervalUnion.of(pairs)
        except (TypeError, ValueError) as exc:
            raise WorkspaceError(f"interval union {name!r} is malformed: {exc}") from exc

    fuzzy: dict[str, FuzzySet] = {}
    for name, membership in doc.get("fuzzy", {}).items():
        if not isinstance(membership, dict):
            raise WorkspaceError(f"fuzzy set {name!r} must map ids to grades")
        missing = [eid for eid in membership if eid not in registry]
        if missing:
            raise WorkspaceError(f"fuzzy set {name!r} references unknown ids {missing}")
        try:
            fuzzy[name] = FuzzySet(membership)
        except ParameterError as exc:
            raise WorkspaceError(f"fuzzy set {name!r} is invalid: {exc}") from exc

    return Workspace(registry=registry, metric=metric, sets=sets,
                     intervals=intervals, fuzzy=fuzzy)


def load_workspace(path: str | Path) -> Workspace:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise WorkspaceError(f"workspace file not found: {path}") from None
    except json.JSONDecodeError as exc:
        raise WorkspaceError(f"workspace file is not valid JSON: {exc}") from exc
    return parse_workspace(doc)
