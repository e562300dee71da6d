import numpy as np
import pytest

from equigeodesic.catalog import list_families
from equigeodesic.engine import cross_residuals, generate_system
from equigeodesic.errors import InvalidInputError
from equigeodesic.homspace import build_space
from equigeodesic.solver import exhaustiveness_report, solve, solve_space, support_signature


def test_support_signature():
    config = build_space("wallach-sp3")
    assert support_signature(config, config.vector(a13=2.0)) == {"m13"}
    x = np.full(config.dim_m, 1e-15)
    x[config.position("b23")] = 1.0
    assert support_signature(config, x) == {"m23"}
    with pytest.raises(InvalidInputError):
        support_signature(config, np.zeros(config.dim_m))


def test_support_of_w12_family5_instance():
    config = build_space("wallach-sp3")
    x = config.vector(a12=1.0, b12=0.5, c12=-0.3, b23=0.8, c23=1.2, q23=(0.5 * 1.2 - 0.8 * -0.3) / 1.0)
    assert support_signature(config, x) == {"m12", "m23"}


def test_solve_w6_only_trivial():
    result = solve_space(build_space("wallach-u3"), restarts=100, seed=7)
    assert result.converged_count > 50
    assert all(len(s.support) == 1 for s in result.solutions)


def test_solutions_are_unit_and_sound():
    config = build_space("stiefel-v2", (4,))
    result = solve_space(config, restarts=50, seed=1)
    for s in result.solutions:
        x = np.array(s.values)
        assert np.linalg.norm(x) == pytest.approx(1.0)
        assert s.residual < result.tol
        worst = max(np.abs(v.values).max() for v in cross_residuals(config, x).values())
        assert worst < 10 * result.tol


def test_solve_is_deterministic():
    system = generate_system(build_space("sphere-u", (2,)))
    a = solve(system, restarts=40, seed=3)
    b = solve(system, restarts=40, seed=3)
    assert a.to_json() == b.to_json()


def test_sign_dedup():
    system = generate_system(build_space("wallach-u3"))
    result = solve(system, restarts=200, seed=0)
    xs = [np.array(s.values) for s in result.solutions]
    for i in range(len(xs)):
        for j in range(i + 1, len(xs)):
            assert min(np.linalg.norm(xs[i] - xs[j]), np.linalg.norm(xs[i] + xs[j])) >= 1e-4


def test_solve_argument_checks():
    system = generate_system(build_space("wallach-u3"))
    with pytest.raises(InvalidInputError):
        solve(system, restarts=0)
    with pytest.raises(InvalidInputError):
        solve(system, restarts=1, tol=0.0)


def test_exhaustiveness_v2r4_all_matched():
    config = build_space("stiefel-v2", (4,))
    result = solve_space(config, restarts=200, seed=11)
    report = exhaustiveness_report(config, result, list_families(config))
    assert report["resolved"] and report["unmatched"] == []
    assert report["recheck"] < 10 * result.tol


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_exhaustiveness_sphere_u(n):
    config = build_space("sphere-u", (n,))
    result = solve_space(config, restarts=100, seed=n)
    assert exhaustiveness_report(config, result, list_families(config))["resolved"]


def test_exhaustiveness_so6_reports():
    config = build_space("wallach-so", (1, 3, 2))
    result = solve_space(config, restarts=100, seed=2)
    report = exhaustiveness_report(config, result, list_families(config))
    assert set(report) >= {"matched", "unmatched", "unmatched_supports", "resolved"}
    assert len(report["matched"]) + len(report["unmatched"]) == len(result.solutions)
