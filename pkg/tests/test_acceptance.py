"""Acceptance criteria 1-9; the terminal summary prints one PASS/FAIL line per criterion."""

import json
import time
from fractions import Fraction

import numpy as np
import pytest

from equigeodesic.catalog import instantiate, list_families, printed_systems, random_metric, sample_parameters, verify_family
from equigeodesic.cli import main
from equigeodesic.engine import compare_systems, cross_residuals, equigeodesic_residual, generate_system, geodesic_vector_check
from equigeodesic.homspace import MetricSpec, build_space, einstein_v2_lambda, jensen_lambda2
from equigeodesic.liealg import build_so_basis, build_sp_basis, build_u_basis, validate_bracket_lemma
from equigeodesic.solver import solve_space

criterion = pytest.mark.acceptance

# -- 1 ------------------------------------------------------------------------


@criterion(1)
def test_algebra_suites():
    start = time.perf_counter()
    bases = (
        [build_so_basis(n) for n in range(3, 9)]
        + [build_u_basis(n) for n in (2, 3, 4)]
        + [build_sp_basis(n) for n in (1, 2, 3)]
    )
    for basis in bases:
        c = basis.structure
        assert np.array_equal(c, -c.transpose(1, 0, 2)) or basis.antisymmetry_residual() == 0.0
        assert basis.jacobi_residual() <= 1e-12
        gram = basis.gram
        assert np.abs(gram - np.diag(np.diag(gram))).max() <= 1e-12
        assert basis.ad_invariance_residual() <= 1e-12
    assert time.perf_counter() - start < 10.0


# -- 2 ------------------------------------------------------------------------


@criterion(2)
@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_so_table_exact(n):
    rep = validate_bracket_lemma(build_so_basis(n), "so-lemma")
    assert rep.passed, rep.summary()


@criterion(2)
@pytest.mark.parametrize("n", [1, 2, 3])
def test_sp_table_exact(n):
    rep = validate_bracket_lemma(build_sp_basis(n), "sp-lemma")
    assert rep.passed, rep.summary()


@criterion(2)
def test_u_table_report_lists_repeated_index_discrepancies():
    rep = validate_bracket_lemma(build_u_basis(3), "u-lemma")
    listed = rep.to_dict()["checks"]
    assert len(listed) == len(rep.checks) > 0
    bad = [c for c in listed if not c["match"]]
    assert bad and all(c["repeated_index"] for c in bad)
    assert all(c.lhs in rep.summary() for c in rep.mismatches)
    assert all(c["match"] for c in listed if not c["repeated_index"])


# -- 3 ------------------------------------------------------------------------

_SYSTEMS = (
    [("wallach-u3", "wallach-u3", (), {}, 6), ("wallach-sp3", "wallach-sp3", (), {}, 12)]
    + [("stiefel-v2", "stiefel-v2", (n,), {"n": n}, 2 * n - 3) for n in range(4, 9)]
    + [("stiefel-v1k(3,2)-jensen", "stiefel-v1k", (3, 2), {}, 8)]
    + [("sphere-sp", "sphere-sp", (n,), {"n": n}, 4 * n) for n in (1, 2)]
)


@criterion(3)
@pytest.mark.parametrize("key,family,params,env,count", _SYSTEMS, ids=lambda v: str(v))
def test_system_reproduction(key, family, params, env, count):
    config = build_space(family, params)
    printed = printed_systems()[key]
    system = generate_system(config, printed["partition"])
    assert len(system) == count
    result = compare_systems(config, system, printed["equations"], env)
    assert result.equal, f"printed only: {result.missing}; generated only: {result.extra}"


# -- 4 ------------------------------------------------------------------------

_CATALOG = (
    [("wallach-so(1,3,2)", "generic", 6)]
    + [(f"stiefel-v2({n})", "generic", n) for n in range(4, 9)]
    + [(f"stiefel-v2({n})", "einstein", 2) for n in range(4, 9)]
    + [("wallach-u3", "generic", 3), ("wallach-sp3", "generic", 5), ("stiefel-v1k(3,2)", "jensen", 42)]
    + [(f"sphere-u({n})", "generic", 2) for n in (1, 2, 3)]
    + [(f"sphere-sp({n})", "generic", 2) for n in (1, 2)]
)
_CATALOG_TIME = []


@criterion(4)
@pytest.mark.parametrize("space,metric,count", _CATALOG)
def test_catalog_verification(space, metric, count):
    start = time.perf_counter()
    families = list_families(space, metric)
    assert len(families) == count
    config = families[0].config
    failed = []
    for fam in families:
        rep = verify_family(config, fam, samples=100, tol=1e-10, seed=0)
        if not rep.passed:
            failed.append(rep.summary())
    _CATALOG_TIME.append(time.perf_counter() - start)
    assert not failed, "\n".join(failed)


@criterion(4)
def test_catalog_runtime():
    assert _CATALOG_TIME and sum(_CATALOG_TIME) < 120.0


# -- 5 ------------------------------------------------------------------------


@criterion(5)
@pytest.mark.parametrize(
    "family,params",
    [("wallach-u3", ()), ("sphere-u", (1,)), ("sphere-u", (2,)), ("sphere-u", (3,)), ("sphere-sp", (1,)), ("sphere-sp", (2,))],
)
def test_triviality_oracle(family, params):
    config = build_space(family, params)
    result = solve_space(config, restarts=1000, tol=1e-12, seed=0, threshold=1e-6)
    assert result.converged_count > 0
    assert result.multi_module() == []
    if family == "wallach-u3":
        for s in result.solutions:
            x = dict(zip(config.variables, s.values))
            for p, q in (("12", "13"), ("12", "23"), ("13", "23")):
                prod = (x[f"a{p}"] ** 2 + x[f"b{p}"] ** 2) * (x[f"a{q}"] ** 2 + x[f"b{q}"] ** 2)
                assert abs(prod) <= 1e-10


# -- 6 ------------------------------------------------------------------------


@criterion(6)
def test_metric_independence_identity():
    rng = np.random.default_rng(6)
    spaces = [
        build_space("wallach-so", (1, 3, 2)),
        build_space("stiefel-v2", (6,)),
        build_space("stiefel-v1k", (3, 2)),
        build_space("wallach-u3"),
        build_space("wallach-sp3"),
        build_space("sphere-u", (3,)),
        build_space("sphere-sp", (2,)),
    ]
    worst = 0.0
    for k in range(1000):
        config = spaces[k % len(spaces)]
        x = rng.standard_normal(config.dim_m)
        lam = rng.uniform(0.1, 10.0, len(config.modules))
        res = equigeodesic_residual(config, MetricSpec(tuple(lam)), x).values
        index = {lab: i for i, lab in enumerate(config.module_labels)}
        expansion = sum(
            (lam[index[b]] - lam[index[a]]) * v.values for (a, b), v in cross_residuals(config, x).items()
        )
        worst = max(worst, float(np.abs(res - expansion).max() / (x @ x)))
    assert worst <= 1e-12


# -- 7 ------------------------------------------------------------------------


@criterion(7)
@pytest.mark.parametrize("space,metric,count", _CATALOG)
def test_geodesic_consistency(space, metric, count):
    rng = np.random.default_rng(7)
    failed = []
    for fam in list_families(space, metric):
        for _ in range(10):
            x = instantiate(fam, sample_parameters(fam, rng))
            for _ in range(10):
                lam = random_metric(fam.config, fam.partition, rng)
                ok, worst = geodesic_vector_check(fam.config, lam, x, tol=1e-10)
                if not ok:
                    failed.append(f"{fam.id}: violation {worst:.3e}")
    assert not failed, f"{len(failed)} failures, first: {failed[0]}"


# -- 8 ------------------------------------------------------------------------


@criterion(8)
def test_named_metric_constants():
    for n in range(4, 9):
        assert einstein_v2_lambda(n) == Fraction(n - 1, 2 * (n - 2))
    assert set(jensen_lambda2(6)) == {Fraction(1), Fraction(3, 5)}


# -- 9 ------------------------------------------------------------------------


@criterion(9)
@pytest.mark.parametrize(
    "argv",
    [
        ["solve", "wallach-u3", "--restarts", "200", "--seed", "7"],
        ["solve", "stiefel-v2", "--n", "5", "--restarts", "100", "--seed", "3"],
        ["verify", "stiefel-v1k", "--params", "3,2", "--metric", "jensen", "--samples", "5", "--seed", "11"],
        ["gen-system", "sphere-sp", "--n", "2"],
    ],
)
def test_determinism(tmp_path, argv, capsys):
    outputs = []
    for name in ("first.json", "second.json"):
        path = tmp_path / name
        main(argv + ["--format", "json", "--output", str(path)])
        outputs.append(path.read_bytes())
    capsys.readouterr()
    assert outputs[0] == outputs[1]
    json.loads(outputs[0])
