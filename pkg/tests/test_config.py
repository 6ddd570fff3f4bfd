import numpy as np
import pytest

from diva.diffusion import ModelConfig, ModelKind, SeedSpec, validate_config
from diva.diffusion.config import resolve_edge_param, resolve_node_param
from diva.errors import InvalidConfig
from diva.graph import build_graph


@pytest.fixture
def triangle():
    return build_graph(["a", "b", "c"], [("a", "b"), ("b", "c"), ("a", "c")])


def test_kind_from_name_flexible():
    assert ModelKind.from_name("SIR") is ModelKind.SIR
    assert ModelKind.from_name("sir") is ModelKind.SIR
    assert ModelKind.from_name("independent_cascades") is ModelKind.INDEPENDENT_CASCADES
    assert ModelKind.from_name("IndependentCascades") is ModelKind.INDEPENDENT_CASCADES
    with pytest.raises(InvalidConfig):
        ModelKind.from_name("SIQR")


def test_config_roundtrip():
    cfg = ModelConfig(
        kind=ModelKind.SIR,
        params={"beta": 0.1, "gamma": 0.05},
        max_iterations=25,
        rng_seed=42,
    )
    again = ModelConfig.from_dict(cfg.to_dict())
    assert again == cfg


def test_from_dict_rejects_unknown_field():
    with pytest.raises(InvalidConfig):
        ModelConfig.from_dict({"kind": "SI", "params": {"beta": 0.1}, "spin": 3})


def test_from_dict_requires_kind():
    with pytest.raises(InvalidConfig):
        ModelConfig.from_dict({"params": {"beta": 0.1}})


def test_from_dict_type_checks():
    with pytest.raises(InvalidConfig):
        ModelConfig.from_dict({"kind": "SI", "maxIterations": "ten"})
    with pytest.raises(InvalidConfig):
        ModelConfig.from_dict({"kind": "SI", "maxIterations": True})
    with pytest.raises(InvalidConfig):
        ModelConfig.from_dict({"kind": "SI", "rngSeed": 1.5})


def test_validate_missing_and_extra_params(triangle):
    with pytest.raises(InvalidConfig) as exc:
        validate_config(ModelConfig(kind=ModelKind.SIR, params={"beta": 0.1}), triangle)
    assert exc.value.context["field"] == "gamma"
    with pytest.raises(InvalidConfig):
        validate_config(
            ModelConfig(kind=ModelKind.SI, params={"beta": 0.1, "gamma": 0.1}), triangle
        )


@pytest.mark.parametrize("bad", [-0.1, 1.5, float("nan"), "high", True])
def test_validate_out_of_domain_probability(triangle, bad):
    cfg = ModelConfig(kind=ModelKind.SI, params={"beta": bad})
    with pytest.raises(InvalidConfig):
        validate_config(cfg, triangle)


def test_validate_ground_truth_not_simulatable(triangle):
    with pytest.raises(InvalidConfig):
        validate_config(ModelConfig(kind=ModelKind.GROUND_TRUTH), triangle)


def test_validate_rules_exclusivity(triangle):
    with pytest.raises(InvalidConfig):
        validate_config(ModelConfig(kind=ModelKind.CUSTOM_DECLARATIVE), triangle)
    with pytest.raises(InvalidConfig):
        validate_config(
            ModelConfig(kind=ModelKind.SI, params={"beta": 0.1}, rules={"states": []}),
            triangle,
        )


def test_node_param_scalar_broadcast(triangle):
    arr = resolve_node_param(0.3, triangle, "nodeThreshold")
    assert arr == pytest.approx([0.3, 0.3, 0.3])


def test_node_param_map_complete(triangle):
    arr = resolve_node_param({"a": 0.1, "b": 0.2, "c": 0.9}, triangle, "nodeThreshold")
    assert arr == pytest.approx([0.1, 0.2, 0.9])


def test_node_param_map_missing_node(triangle):
    with pytest.raises(InvalidConfig) as exc:
        resolve_node_param({"a": 0.1, "b": 0.2}, triangle, "nodeThreshold")
    assert exc.value.context["node"] == "c"


def test_node_param_map_unknown_node(triangle):
    with pytest.raises(InvalidConfig):
        resolve_node_param({"a": 0.1, "b": 0.2, "z": 0.3}, triangle, "nodeThreshold")


def test_edge_param_map_either_orientation(triangle):
    values = {"a|b": 0.1, "c|b": 0.2, "a|c": 0.3}
    arr = resolve_edge_param(values, triangle, "edgeThreshold")
    want = np.empty(3)
    for row, (s, t) in enumerate(triangle.edges):
        pair = {triangle.ids[int(s)], triangle.ids[int(t)]}
        if pair == {"a", "b"}:
            want[row] = 0.1
        elif pair == {"b", "c"}:
            want[row] = 0.2
        else:
            want[row] = 0.3
    assert arr == pytest.approx(want)


def test_edge_param_map_incomplete(triangle):
    with pytest.raises(InvalidConfig):
        resolve_edge_param({"a|b": 0.1}, triangle, "edgeThreshold")


def test_edge_param_bad_key_shape(triangle):
    with pytest.raises(InvalidConfig):
        resolve_edge_param({"a-b": 0.1}, triangle, "edgeThreshold")


def test_seed_spec_exactly_one_mode():
    with pytest.raises(InvalidConfig):
        SeedSpec()
    with pytest.raises(InvalidConfig):
        SeedSpec(fraction=0.1, explicit=("a",))


def test_seed_spec_domains():
    with pytest.raises(InvalidConfig):
        SeedSpec(fraction=0.0)
    with pytest.raises(InvalidConfig):
        SeedSpec(fraction=1.2)
    with pytest.raises(InvalidConfig):
        SeedSpec(explicit=())
    assert SeedSpec(fraction=1.0).to_dict() == {"fractionInfected": 1.0}


def test_seed_spec_roundtrip():
    spec = SeedSpec(explicit=("a", "b"))
    assert SeedSpec.from_dict(spec.to_dict()) == spec
    with pytest.raises(InvalidConfig):
        SeedSpec.from_dict({"fractionInfected": 0.1, "mystery": 1})


def test_every_simulatable_kind_declares_domains(triangle):
    for kind in ModelKind:
        if kind in (ModelKind.GROUND_TRUTH, ModelKind.CUSTOM_DECLARATIVE):
            continue
        from diva.diffusion.config import PARAM_DOMAINS
        domains = PARAM_DOMAINS[kind]
        assert domains, kind
