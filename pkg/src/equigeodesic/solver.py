"""Numeric search for zeros of a bilinear system on the unit sphere.

Each restart draws a random unit vector and runs Levenberg-Marquardt on the
residual map ``r(x) = (x^T Q_e x)_e`` with the Jacobian projected onto the
tangent space of the sphere and the iterate renormalised after every step.
Converged points are deduplicated up to sign.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .engine import QuadraticSystem, cross_residuals, generate_system
from .errors import IncompatibleElementsError, InvalidInputError
from .homspace import MetricClassPartition, SpaceConfig

__all__ = [
    "Solution",
    "SolverResult",
    "solve",
    "solve_space",
    "support_signature",
    "exhaustiveness_report",
]

_DEDUP = 1e-4


def support_signature(config: SpaceConfig, X, threshold: float = 1e-6) -> frozenset:
    """Modules whose component norm exceeds ``threshold * ||X||``.

    Raises
    ------
    InvalidInputError
        For the zero vector.
    """
    x = config.vector(X).values
    norm = float(np.linalg.norm(x))
    if norm == 0.0:
        raise InvalidInputError("support of the zero vector is undefined")
    return frozenset(
        lab for lab, pos in config.module_slices.items() if np.linalg.norm(x[list(pos)]) > threshold * norm
    )


def _support_from_layout(system: QuadraticSystem, x, threshold):
    norm = float(np.linalg.norm(x))
    out = set()
    for label in dict.fromkeys(system.module_of):
        idx = [i for i, m in enumerate(system.module_of) if m == label]
        if np.linalg.norm(x[idx]) > threshold * norm:
            out.add(label)
    return frozenset(out)


@dataclass(frozen=True)
class Solution:
    """A converged unit vector with its residual and support."""

    values: tuple
    residual: float
    support: frozenset

    def to_dict(self, variables) -> dict:
        return {
            "coordinates": dict(zip(variables, self.values)),
            "residual": self.residual,
            "support": sorted(self.support),
        }


@dataclass(frozen=True)
class SolverResult:
    """Outcome of :func:`solve`.

    Attributes
    ----------
    system : QuadraticSystem
    solutions : tuple of Solution
        Distinct up to sign, sorted deterministically.
    restarts_used, converged_count : int
    tol, threshold : float
    seed : int
    """

    system: QuadraticSystem
    solutions: tuple
    restarts_used: int
    converged_count: int
    tol: float
    threshold: float
    seed: int

    def supports(self) -> set:
        return {s.support for s in self.solutions}

    def multi_module(self) -> list:
        return [s for s in self.solutions if len(s.support) > 1]

    def to_dict(self) -> dict:
        return {
            "space": self.system.space,
            "partition": [list(c) for c in self.system.partition],
            "seed": self.seed,
            "tol": self.tol,
            "threshold": self.threshold,
            "restarts_used": self.restarts_used,
            "converged_count": self.converged_count,
            "variables": list(self.system.variables),
            "solutions": [s.to_dict(self.system.variables) for s in self.solutions],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


def _levenberg_marquardt(Q, x, tol, max_iter=200, step_tol=1e-14):
    """Damped Gauss-Newton on the sphere; returns (x, residual norm)."""
    n = x.size
    mu = 1e-3

    def residual(v):
        return np.einsum("epq,p,q->e", Q, v, v)

    r = residual(x)
    cost = float(r @ r)
    QQt = Q + Q.transpose(0, 2, 1)
    for _ in range(max_iter):
        if np.sqrt(cost) < tol:
            break
        J = QQt @ x
        P = np.eye(n) - np.outer(x, x)
        Jt = J @ P
        A = Jt.T @ Jt
        g = Jt.T @ r
        while True:
            step = -np.linalg.solve(A + mu * np.eye(n), g)
            step = P @ step
            cand = x + step
            cand /= np.linalg.norm(cand)
            rc = residual(cand)
            cc = float(rc @ rc)
            if cc < cost:
                mu = max(mu / 2.0, 1e-15)
                moved = float(np.linalg.norm(cand - x))
                x, r, cost = cand, rc, cc
                break
            mu *= 2.0
            if mu > 1e12:
                return x, float(np.sqrt(cost))
        if moved < step_tol:
            break
    return x, float(np.sqrt(cost))


def _canonical_sign(x):
    i = int(np.argmax(np.abs(x) > 1e-9))
    return x if x[i] >= 0 else -x


def solve(
    system: QuadraticSystem, restarts: int = 1000, tol: float = 1e-12, seed: int = 0, threshold: float = 1e-6
) -> SolverResult:
    """Collect unit-norm zeros of ``system`` from random restarts.

    Parameters
    ----------
    system : QuadraticSystem
    restarts : int
        Number of random starting points (>= 1).
    tol : float
        A restart converges when the residual norm drops below ``tol``.
    seed : int
    threshold : float
        Relative module-norm threshold for support signatures.

    Returns
    -------
    SolverResult
    """
    if restarts < 1:
        raise InvalidInputError("restarts must be >= 1")
    if not tol > 0:
        raise InvalidInputError("tol must be positive")
    rng = np.random.default_rng(seed)
    Q = system.tensor
    n = len(system.variables)
    starts = rng.standard_normal((restarts, n))
    found = []
    for x0 in starts:
        x0 = x0 / np.linalg.norm(x0)
        if Q.shape[0] == 0:
            x, res = x0, 0.0
        else:
            x, res = _levenberg_marquardt(Q, x0, tol)
        if res < tol:
            found.append((_canonical_sign(x), res))
    converged = len(found)
    found.sort(key=lambda item: tuple(np.round(item[0], 6)))
    kept = []
    for x, res in found:
        if any(min(np.linalg.norm(x - y), np.linalg.norm(x + y)) < _DEDUP for y, _ in kept):
            continue
        kept.append((x, res))
    solutions = tuple(
        Solution(tuple(float(v) for v in x), float(res), _support_from_layout(system, x, threshold)) for x, res in kept
    )
    return SolverResult(system, solutions, restarts, converged, tol, threshold, seed)


def solve_space(config: SpaceConfig, partition=None, **kwargs) -> SolverResult:
    """Generate the system for ``config`` and solve it."""
    return solve(generate_system(config, partition), **kwargs)


def exhaustiveness_report(config: SpaceConfig, result: SolverResult, families) -> dict:
    """Match each converged solution against cataloged families.

    A solution belongs to a family when reading the free parameters off the
    solution and instantiating reproduces it within ``1e-6``.

    Returns
    -------
    dict
        ``matched`` (solution index to family ids), ``unmatched`` (indices),
        ``resolved`` (bool, no unmatched solutions) and ``recheck`` (largest
        cross residual of any solution re-evaluated through the engine).
    """
    from .catalog import family_subsumes

    if tuple(result.system.variables) != tuple(config.variables):
        raise IncompatibleElementsError("result was produced for a different space")
    part = MetricClassPartition(result.system.partition)
    matched, unmatched = {}, []
    recheck = 0.0
    for i, sol in enumerate(result.solutions):
        x = np.array(sol.values)
        res = cross_residuals(config, x, part)
        recheck = max([recheck] + [float(np.abs(v.values).max()) for v in res.values()])
        hits = [f.id for f in families if family_subsumes(f, x) is not None]
        if hits:
            matched[i] = hits
        else:
            unmatched.append(i)
    return {
        "space": config.name,
        "solutions": len(result.solutions),
        "matched": matched,
        "unmatched": unmatched,
        "unmatched_supports": [sorted(result.solutions[i].support) for i in unmatched],
        "resolved": not unmatched,
        "recheck": recheck,
    }
