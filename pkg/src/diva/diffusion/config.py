"""Model configuration: kinds, parameter domains, seed specifications.

Wire names follow the JSON API (camelCase, "lambda" spelled out), while the
dataclasses use snake_case internally.  Validation is strict: unknown
parameters, missing parameters, out-of-domain values, and incomplete
per-node/per-edge maps are all rejected with the offending field named.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace
from typing import Mapping

import numpy as np

from ..errors import InvalidConfig
from ..graph.model import Graph


class ModelKind(enum.Enum):
    SI = "SI"
    SIR = "SIR"
    SIS = "SIS"
    SEIS = "SEIS"
    SEIR = "SEIR"
    THRESHOLD = "Threshold"
    GENERALIZED_THRESHOLD = "GeneralizedThreshold"
    PROFILE = "Profile"
    PROFILE_THRESHOLD = "ProfileThreshold"
    KERTESZ_THRESHOLD = "KerteszThreshold"
    INDEPENDENT_CASCADES = "IndependentCascades"
    CUSTOM_DECLARATIVE = "CustomDeclarative"
    GROUND_TRUTH = "GroundTruth"

    @classmethod
    def from_name(cls, name: str) -> "ModelKind":
        wanted = str(name).replace("_", "").replace("-", "").lower()
        for kind in cls:
            if kind.value.lower() == wanted:
                return kind
        raise InvalidConfig(f"unknown model kind {name!r}", field="kind", value=name)


# Parameter domains: name -> kind of value.
#   "prob"      scalar in [0, 1]
#   "node_map"  scalar in [0, 1] or complete per-node map of such
#   "edge_map"  scalar in [0, 1] or complete per-edge map keyed "u|v"
PARAM_DOMAINS: dict[ModelKind, dict[str, str]] = {
    ModelKind.SI: {"beta": "prob"},
    ModelKind.SIR: {"beta": "prob", "gamma": "prob"},
    ModelKind.SIS: {"beta": "prob", "lambda": "prob"},
    ModelKind.SEIS: {"alpha": "prob", "beta": "prob", "lambda": "prob"},
    ModelKind.SEIR: {"alpha": "prob", "beta": "prob", "gamma": "prob"},
    ModelKind.THRESHOLD: {"nodeThreshold": "node_map"},
    ModelKind.GENERALIZED_THRESHOLD: {
        "tau": "prob",
        "mu": "prob",
        "nodeThreshold": "node_map",
    },
    ModelKind.PROFILE: {
        "blockedFraction": "prob",
        "adopterRate": "prob",
        "profile": "node_map",
    },
    ModelKind.PROFILE_THRESHOLD: {
        "blockedFraction": "prob",
        "adopterRate": "prob",
        "profile": "node_map",
        "nodeThreshold": "node_map",
    },
    ModelKind.KERTESZ_THRESHOLD: {
        "adopterRate": "prob",
        "blockedFraction": "prob",
        "nodeThreshold": "node_map",
    },
    ModelKind.INDEPENDENT_CASCADES: {"edgeThreshold": "edge_map"},
    ModelKind.CUSTOM_DECLARATIVE: {},
    ModelKind.GROUND_TRUTH: {},
}


@dataclass(frozen=True)
class ModelConfig:
    kind: ModelKind
    params: Mapping[str, object] = field(default_factory=dict)
    max_iterations: int = 1
    rng_seed: int = 0
    rules: Mapping | None = None  # CustomDeclarative only

    def to_dict(self) -> dict:
        doc = {
            "kind": self.kind.value,
            "params": dict(self.params),
            "maxIterations": self.max_iterations,
            "rngSeed": self.rng_seed,
        }
        if self.rules is not None:
            doc["rules"] = dict(self.rules)
        return doc

    @classmethod
    def from_dict(cls, doc: Mapping) -> "ModelConfig":
        if not isinstance(doc, Mapping):
            raise InvalidConfig("model config must be an object")
        allowed = {"kind", "params", "maxIterations", "rngSeed", "rules"}
        for key in doc:
            if key not in allowed:
                raise InvalidConfig(f"unknown config field {key!r}", field=key)
        if "kind" not in doc:
            raise InvalidConfig("config missing 'kind'", field="kind")
        kind = ModelKind.from_name(doc["kind"])
        max_iterations = doc.get("maxIterations", 1)
        rng_seed = doc.get("rngSeed", 0)
        if not isinstance(max_iterations, int) or isinstance(max_iterations, bool):
            raise InvalidConfig("maxIterations must be an integer", field="maxIterations")
        if not isinstance(rng_seed, int) or isinstance(rng_seed, bool):
            raise InvalidConfig("rngSeed must be an integer", field="rngSeed")
        params = doc.get("params", {})
        if not isinstance(params, Mapping):
            raise InvalidConfig("params must be an object", field="params")
        rules = doc.get("rules")
        return cls(
            kind=kind,
            params=dict(params),
            max_iterations=max_iterations,
            rng_seed=rng_seed,
            rules=rules,
        )

    def with_max_iterations(self, max_iterations: int) -> "ModelConfig":
        return replace(self, max_iterations=max_iterations)


def _check_prob(value, field_name: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise InvalidConfig(f"{field_name} must be a number", field=field_name)
    value = float(value)
    if not (0.0 <= value <= 1.0) or not np.isfinite(value):
        raise InvalidConfig(
            f"{field_name} must lie in [0, 1]", field=field_name, value=value
        )
    return value


def resolve_node_param(value, graph: Graph, field_name: str) -> np.ndarray:
    """Scalar or complete per-node map -> float64 array over internal indices."""
    if isinstance(value, Mapping):
        arr = np.empty(graph.n_nodes, dtype=np.float64)
        seen = np.zeros(graph.n_nodes, dtype=bool)
        for nid, v in value.items():
            idx = graph.index_of.get(str(nid))
            if idx is None:
                raise InvalidConfig(
                    f"{field_name} maps unknown node {nid!r}", field=field_name, node=nid
                )
            arr[idx] = _check_prob(v, f"{field_name}[{nid}]")
            seen[idx] = True
        if not seen.all():
            missing = graph.ids[int(np.flatnonzero(~seen)[0])]
            raise InvalidConfig(
                f"{field_name} map must cover every node; missing {missing!r}",
                field=field_name,
                node=missing,
            )
        return arr
    return np.full(graph.n_nodes, _check_prob(value, field_name), dtype=np.float64)


def resolve_edge_param(value, graph: Graph, field_name: str) -> np.ndarray:
    """Scalar or complete per-edge map -> float64 array over normalized edge rows.

    Map keys are "u|v" in either orientation for undirected graphs.
    """
    m = graph.n_edges
    if isinstance(value, Mapping):
        arr = np.empty(m, dtype=np.float64)
        seen = np.zeros(m, dtype=bool)
        row_of: dict[tuple[int, int], int] = {
            (int(s), int(t)): r for r, (s, t) in enumerate(graph.edges)
        }
        for key, v in value.items():
            parts = str(key).split("|")
            if len(parts) != 2:
                raise InvalidConfig(
                    f"{field_name} key {key!r} must look like 'u|v'", field=field_name
                )
            a, b = parts
            ia = graph.index_of.get(a)
            ib = graph.index_of.get(b)
            if ia is None or ib is None:
                raise InvalidConfig(
                    f"{field_name} maps unknown edge {key!r}", field=field_name, edge=key
                )
            row = row_of.get((ia, ib))
            if row is None and not graph.directed:
                row = row_of.get((ib, ia))
            if row is None:
                raise InvalidConfig(
                    f"{field_name} maps non-existent edge {key!r}",
                    field=field_name,
                    edge=key,
                )
            arr[row] = _check_prob(v, f"{field_name}[{key}]")
            seen[row] = True
        if not seen.all():
            miss = graph.edges[int(np.flatnonzero(~seen)[0])]
            missing = f"{graph.ids[int(miss[0])]}|{graph.ids[int(miss[1])]}"
            raise InvalidConfig(
                f"{field_name} map must cover every edge; missing {missing!r}",
                field=field_name,
                edge=missing,
            )
        return arr
    return np.full(m, _check_prob(value, field_name), dtype=np.float64)


def validate_config(config: ModelConfig, graph: Graph) -> None:
    """Structural and domain validation against a concrete graph."""
    if config.max_iterations < 1:
        raise InvalidConfig("maxIterations must be >= 1", field="maxIterations")
    if config.kind is ModelKind.GROUND_TRUTH:
        raise InvalidConfig(
            "GroundTruth traces are ingested, not simulated", field="kind"
        )
    domains = PARAM_DOMAINS[config.kind]
    if config.kind is ModelKind.CUSTOM_DECLARATIVE:
        if config.rules is None:
            raise InvalidConfig("CustomDeclarative requires 'rules'", field="rules")
        if config.params:
            raise InvalidConfig(
                "CustomDeclarative takes rules, not params", field="params"
            )
        return
    if config.rules is not None:
        raise InvalidConfig(
            f"{config.kind.value} does not accept 'rules'", field="rules"
        )
    for name in config.params:
        if name not in domains:
            raise InvalidConfig(
                f"{config.kind.value} does not accept parameter {name!r}", field=name
            )
    for name, domain in domains.items():
        if name not in config.params:
            raise InvalidConfig(
                f"{config.kind.value} requires parameter {name!r}", field=name
            )
        value = config.params[name]
        if domain == "prob":
            if isinstance(value, Mapping):
                raise InvalidConfig(f"{name} must be a scalar", field=name)
            _check_prob(value, name)
        elif domain == "node_map":
            resolve_node_param(value, graph, name)
        elif domain == "edge_map":
            resolve_edge_param(value, graph, name)


@dataclass(frozen=True)
class SeedSpec:
    """Initially infected nodes: a fraction to sample or an explicit list."""

    fraction: float | None = None
    explicit: tuple[str, ...] | None = None

    def __post_init__(self):
        if (self.fraction is None) == (self.explicit is None):
            raise InvalidConfig(
                "seed spec must set exactly one of fractionInfected / explicitSeeds",
                field="seedSpec",
            )
        if self.fraction is not None and not (0.0 < float(self.fraction) <= 1.0):
            raise InvalidConfig(
                "fractionInfected must lie in (0, 1]",
                field="fractionInfected",
                value=self.fraction,
            )
        if self.explicit is not None and len(self.explicit) == 0:
            raise InvalidConfig(
                "explicitSeeds must be non-empty", field="explicitSeeds"
            )

    def to_dict(self) -> dict:
        if self.fraction is not None:
            return {"fractionInfected": self.fraction}
        return {"explicitSeeds": list(self.explicit)}

    @classmethod
    def from_dict(cls, doc: Mapping) -> "SeedSpec":
        if not isinstance(doc, Mapping):
            raise InvalidConfig("seed spec must be an object", field="seedSpec")
        allowed = {"fractionInfected", "explicitSeeds"}
        for key in doc:
            if key not in allowed:
                raise InvalidConfig(f"unknown seed spec field {key!r}", field=key)
        fraction = doc.get("fractionInfected")
        explicit = doc.get("explicitSeeds")
        if explicit is not None:
            if not isinstance(explicit, (list, tuple)):
                raise InvalidConfig(
                    "explicitSeeds must be a list", field="explicitSeeds"
                )
            explicit = tuple(str(v) for v in explicit)
        return cls(fraction=fraction, explicit=explicit)
