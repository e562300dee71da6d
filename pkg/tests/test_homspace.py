import json
from fractions import Fraction

import numpy as np
import pytest

from equigeodesic.errors import (
    IncompatibleElementsError,
    InvalidInputError,
    InvalidMetricError,
    InvalidParametersError,
    InvalidPartitionError,
    NotApplicableError,
)
from equigeodesic.homspace import (
    FAMILIES,
    MetricClassPartition,
    MetricSpec,
    build_space,
    einstein_v2_lambda,
    jensen_lambda2,
    load_space_file,
    metric_presets,
    named_partition,
    project_m,
    validate_wallach,
)

SPACES = [
    ("wallach-so", (1, 3, 2)),
    ("stiefel-v2", (5,)),
    ("stiefel-v1k", (3, 2)),
    ("wallach-u3", ()),
    ("wallach-sp3", ()),
    ("sphere-u", (3,)),
    ("sphere-sp", (2,)),
]


@pytest.mark.parametrize("family,params", SPACES)
def test_invariants_hold(family, params):
    config = build_space(family, params)
    assert all(v <= 1e-12 for v in config.invariant_residuals().values())
    assert config.dim_m == len(config.variables) == sum(config.module_dims())


def test_families_registry():
    assert len(FAMILIES) == 7


@pytest.mark.parametrize(
    "family,params,dims",
    [
        ("wallach-so", (1, 3, 2), (3, 2, 6)),
        ("wallach-u3", (), (2, 2, 2)),
        ("wallach-sp3", (), (4, 4, 4)),
        ("stiefel-v2", (6,), (1, 4, 4)),
        ("stiefel-v1k", (3, 2), (3, 3, 2, 6)),
        ("sphere-u", (3,), (1, 6)),
        ("sphere-sp", (2,), (3, 8)),
    ],
)
def test_module_dims(family, params, dims):
    assert build_space(family, params).module_dims() == dims


def test_variable_names():
    assert build_space("wallach-so", (1, 3, 2)).variables == (
        "a12", "a13", "a14", "a15", "a16", "a25", "a26", "a35", "a36", "a45", "a46",
    )
    assert build_space("sphere-u", (3,)).variables == ("a11", "a12", "a13", "a14", "b12", "b13", "b14")
    assert build_space("sphere-sp", (1,)).variables == ("a13", "b13", "a11", "c12", "d12", "l12", "m12")
    assert "a1_10" in build_space("stiefel-v2", (10,)).variables


def test_bad_parameters():
    with pytest.raises(InvalidParametersError):
        build_space("stiefel-v2", (3,))
    with pytest.raises(InvalidParametersError):
        build_space("wallach-so", (1, 2))
    with pytest.raises(InvalidParametersError):
        build_space("nope", ())


def test_validate_wallach():
    assert validate_wallach(build_space("wallach-so", (1, 3, 2))).passed
    assert validate_wallach(build_space("wallach-u3")).passed
    assert validate_wallach(build_space("wallach-sp3")).passed
    rep = validate_wallach(build_space("wallach-so", (2, 2, 2)))
    assert not rep.passed
    assert all("irreducible" in c.lhs for c in rep.mismatches)
    with pytest.raises(NotApplicableError):
        validate_wallach(build_space("sphere-u", (2,)))


def test_project_m_roundtrip():
    config = build_space("wallach-sp3")
    x = np.linspace(-1, 1, config.dim_m)
    assert np.allclose(project_m(config, config.element(x)).values, x)
    with pytest.raises(IncompatibleElementsError):
        project_m(config, x)


def test_vector_shapes():
    config = build_space("wallach-u3")
    with pytest.raises(IncompatibleElementsError):
        config.vector(np.zeros(5))
    v = config.vector(a12=1.0, b23=2.0)
    assert v.module_norms()["m23"] == pytest.approx(2.0)
    with pytest.raises(InvalidInputError):
        config.vector(np.zeros(6), a12=1.0)


def test_partition_parse_and_check():
    config = build_space("stiefel-v1k", (3, 2))
    part = MetricClassPartition.parse("m13,m23|so(3),m12", config).canonical(config)
    assert part.classes == (("so(3)", "m12"), ("m13", "m23"))
    with pytest.raises(InvalidPartitionError):
        MetricClassPartition.parse("m13|m23", config)
    with pytest.raises(InvalidPartitionError):
        MetricClassPartition.parse("m13,m13|so(3),m12,m23")
    with pytest.raises(InvalidPartitionError):
        MetricClassPartition.parse("so(3),m12|m13,m99", config)


def test_metric_spec_validation():
    config = build_space("wallach-u3")
    with pytest.raises(InvalidMetricError):
        MetricSpec((1.0, 0.0, 2.0))
    with pytest.raises(InvalidMetricError):
        MetricSpec((1.0, 2.0)).per_position(config)
    lam = MetricSpec((1.0, 2.0, 3.0)).per_position(config)
    assert lam.tolist() == [1, 1, 2, 2, 3, 3]


def test_constants():
    assert einstein_v2_lambda(5) == Fraction(2, 3)
    assert jensen_lambda2(6) == (Fraction(1), Fraction(3, 5))
    plus, minus = jensen_lambda2(7)
    assert isinstance(plus, float) and plus > minus > 0


def test_presets():
    names = [p.name for p in metric_presets(build_space("stiefel-v1k", (3, 2)))]
    assert names == ["generic", "jensen-plus", "jensen-minus"]
    assert str(named_partition(build_space("stiefel-v2", (5,)), "einstein")) == "m0|m1,m2"
    with pytest.raises(InvalidMetricError):
        named_partition(build_space("wallach-u3"), "jensen")


def test_space_file(tmp_path):
    path = tmp_path / "s.json"
    path.write_text(json.dumps({"family": "sphere-u", "params": [2]}))
    assert load_space_file(path).name == "sphere-u(2)"
    path.write_text("{")
    with pytest.raises(InvalidInputError):
        load_space_file(path)
