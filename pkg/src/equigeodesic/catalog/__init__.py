"""Solution families stored as JSON data, with instantiation and verification.

Each data file describes one space (possibly parametrised by ``n``) under one
metric keyword and lists parametric families of equigeodesic vectors.

File schema
-----------
``space``
    ``{"family": str, "params": [int | str, ...], "min": {name: int}}``.
    String params are symbols bound when the file is matched to a space.
``metric``
    ``"generic"``, ``"einstein"`` or ``"jensen"``.
``partition``
    Metric class partition (``"a,b|c"``) or ``null`` for one class per module.
``unlisted``
    ``"zero"`` or ``"free"``: what happens to variables a family does not mention.
``families``
    Objects with ``id``, ``free_params``, ``assignments`` (variable to
    expression), ``constraints`` (variables required nonzero), ``claim``
    (``trivial``, ``structural`` or ``algebraic``) and optionally
    ``stated_claim`` and ``note``.  A ``"for": {"var": "k", "from": .., "to": ..}``
    key turns an entry into a template expanded once per value.

Templates write coefficient names as ``a[1,{b}]`` so that two-digit indices
get the usual separator; ``{...}`` holds integer arithmetic over bound symbols
and ``sum(expr | b=lo..hi)`` expands to a sum.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources

import numpy as np

from ..engine import Classification, classify_vector, cross_residuals, equigeodesic_residual
from ..errors import (
    CatalogSchemaError,
    ConstraintViolationError,
    EquigeodesicError,
    FamilyNotFoundError,
    InvalidInputError,
)
from ..homspace import CoefficientVector, MetricClassPartition, MetricSpec, SpaceConfig, build_space
from ..polynomial import expand_expr, expand_names, int_eval, parse_rational

__all__ = [
    "SolutionFamily",
    "VerificationReport",
    "list_families",
    "instantiate",
    "verify_family",
    "catalog_spaces",
    "printed_systems",
    "sample_parameters",
    "random_metric",
    "find_family",
    "family_subsumes",
]

CLAIMS = {
    "trivial": Classification.TRIVIAL,
    "structural": Classification.STRUCTURAL,
    "algebraic": Classification.ALGEBRAIC,
}
_METRICS = ("generic", "einstein", "jensen")
_CONSTRAINT_EPS = 1e-12


@dataclass(frozen=True, eq=False)
class SolutionFamily:
    """A parametric family of equigeodesic vectors on one space.

    Attributes
    ----------
    config : SpaceConfig
    id : str
        ``"<space>/<index>"`` with indices in the order the families are listed.
    free_params : tuple of str
    assignments : dict
        Every m-variable mapped to a :class:`Rational` expression in the free
        parameters (``a`` itself for a free ``a``, ``0`` for a zero).
    constraints : tuple of str
        Free parameters that must be nonzero.
    partition : MetricClassPartition
    claim : str
        ``trivial``, ``structural`` or ``algebraic``.
    stated_claim : str or None
        Set when the classification stated alongside the listing differs from ``claim``.
    """

    config: SpaceConfig
    id: str
    free_params: tuple
    assignments: dict
    constraints: tuple
    partition: MetricClassPartition
    claim: str
    stated_claim: str | None = None
    note: str = ""
    metric: str = "generic"

    def support_variables(self) -> tuple:
        return tuple(v for v in self.config.variables if not self.assignments[v].is_zero())

    def expression(self, variable: str) -> str:
        return str(self.assignments[variable])

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "space": self.config.name,
            "metric": self.metric,
            "partition": str(self.partition),
            "free_params": list(self.free_params),
            "assignments": {v: str(r) for v, r in self.assignments.items() if not r.is_zero() and v not in self.free_params},
            "zero": [v for v, r in self.assignments.items() if r.is_zero()],
            "constraints": list(self.constraints),
            "claim": self.claim,
            "stated_claim": self.stated_claim,
        }


# ---------------------------------------------------------------------------
# loading


@lru_cache(maxsize=None)
def _data_files() -> tuple:
    root = resources.files(__package__) / "data"
    out = []
    for entry in sorted(root.iterdir(), key=lambda p: p.name):
        if entry.name.endswith(".json") and entry.name != "printed_systems.json":
            out.append((entry.name, json.loads(entry.read_text())))
    return tuple(out)


def printed_systems() -> dict:
    """Equations as printed in the source, keyed by system name."""
    root = resources.files(__package__) / "data"
    return json.loads((root / "printed_systems.json").read_text())


def _require(doc, key, where):
    if key not in doc:
        raise CatalogSchemaError(f"{where}: missing field {key!r}")
    return doc[key]


def _bind(doc, config, where):
    """Bind the symbolic space parameters of ``doc`` to ``config`` or return None."""
    space = _require(doc, "space", where)
    if space.get("family") != config.family or len(space.get("params", [])) != len(config.params):
        return None
    env = {}
    for want, have in zip(space["params"], config.params):
        if isinstance(want, str):
            env[want] = have
        elif want != have:
            return None
    for sym, lo in space.get("min", {}).items():
        if env.get(sym, lo) < lo:
            return None
    return env


def catalog_spaces() -> list:
    """``(file name, space description, metric)`` for every data file."""
    out = []
    for name, doc in _data_files():
        sp = doc["space"]
        params = ",".join(str(p) for p in sp.get("params", []))
        label = f"{sp['family']}({params})" if params else sp["family"]
        mins = ", ".join(f"{k}>={v}" for k, v in sp.get("min", {}).items())
        out.append((name, label + (f" [{mins}]" if mins else ""), doc.get("metric", "generic")))
    return out


def _entries(doc, env, where):
    for entry in _require(doc, "families", where):
        loop = entry.get("for")
        if loop is None:
            yield entry, env
            continue
        var = _require(loop, "var", where)
        lo = int_eval(str(loop["from"]), env)
        hi = int_eval(str(loop["to"]), env)
        step = 1 if hi >= lo else -1
        for value in range(lo, hi + step, step):
            yield entry, {**env, var: value}


def _family(config, doc, entry, env, where) -> SolutionFamily:
    unlisted = doc.get("unlisted", "zero")
    if unlisted not in ("zero", "free"):
        raise CatalogSchemaError(f"{where}: unlisted must be 'zero' or 'free'")
    ident = expand_expr(str(_require(entry, "id", where)), env)
    where = f"{where} family {ident}"
    free = []
    for item in entry.get("free_params", []):
        free.extend(expand_names(item, env))
    assigned = {}
    for key, expr in entry.get("assignments", {}).items():
        for name in expand_names(key, env):
            assigned[name] = parse_rational(expand_expr(str(expr), env))
    variables = set(config.variables)
    unknown = (set(free) | set(assigned)) - variables
    if unknown:
        raise CatalogSchemaError(f"{where}: unknown variables {sorted(unknown)}")
    if set(free) & set(assigned):
        raise CatalogSchemaError(f"{where}: {sorted(set(free) & set(assigned))} both free and assigned")
    if unlisted == "free":
        free = free + [v for v in config.variables if v not in assigned and v not in free]
    order = {v: i for i, v in enumerate(config.variables)}
    free = sorted(set(free), key=order.get)
    full = {}
    for v in config.variables:
        if v in assigned:
            full[v] = assigned[v]
        elif v in free:
            full[v] = parse_rational(v)
        else:
            full[v] = parse_rational("0")
    for v, r in full.items():
        stray = r.variables() - set(free)
        if stray:
            raise CatalogSchemaError(f"{where}: {v} uses non-free symbols {sorted(stray)}")
    constraints = []
    for item in entry.get("constraints", []):
        constraints.extend(expand_names(item, env))
    denominators = {s for r in full.values() for s in r.den}
    if not denominators <= set(constraints):
        raise CatalogSchemaError(f"{where}: denominators {sorted(denominators - set(constraints))} are unconstrained")
    if not set(constraints) <= set(free):
        raise CatalogSchemaError(f"{where}: constraints must be free parameters")
    claim = _require(entry, "claim", where)
    if claim not in CLAIMS:
        raise CatalogSchemaError(f"{where}: claim {claim!r} not in {sorted(CLAIMS)}")
    partition = doc.get("partition")
    part = (
        MetricClassPartition.parse(partition, config).canonical(config)
        if partition
        else MetricClassPartition.singleton(config)
    )
    return SolutionFamily(
        config,
        f"{config.name}/{ident}",
        tuple(free),
        full,
        tuple(constraints),
        part,
        claim,
        entry.get("stated_claim"),
        entry.get("note", ""),
        doc.get("metric", "generic"),
    )


def _space_of(space) -> SpaceConfig:
    if isinstance(space, SpaceConfig):
        return space
    if isinstance(space, tuple) and len(space) == 2:
        return build_space(space[0], space[1])
    if isinstance(space, str):
        m = re.fullmatch(r"([a-z0-9-]+)(?:\(([\d,\s]*)\))?", space.strip())
        if m:
            params = tuple(int(p) for p in m.group(2).split(",") if p.strip()) if m.group(2) else ()
            return build_space(m.group(1), params)
    raise FamilyNotFoundError(f"cannot interpret space {space!r}")


def list_families(space, metric: str = "generic") -> list:
    """All cataloged families for ``space`` under ``metric``.

    Parameters
    ----------
    space : SpaceConfig, str or (family, params)
        For example ``"stiefel-v2(5)"``.
    metric : {"generic", "einstein", "jensen"}
        ``generic`` selects the equigeodesic families (every invariant metric).

    Raises
    ------
    FamilyNotFoundError
        No data file covers the space and metric.
    """
    if metric not in _METRICS:
        raise FamilyNotFoundError(f"unknown metric keyword {metric!r}; choose from {', '.join(_METRICS)}")
    try:
        config = _space_of(space)
    except EquigeodesicError as exc:
        raise FamilyNotFoundError(str(exc)) from None
    for name, doc in _data_files():
        if doc.get("metric", "generic") != metric:
            continue
        env = _bind(doc, config, name)
        if env is None:
            continue
        return [_family(config, doc, entry, local, name) for entry, local in _entries(doc, env, name)]
    raise FamilyNotFoundError(f"no cataloged families for {config.name} with metric {metric!r}")


def find_family(families, selector: str) -> SolutionFamily:
    """Select by full id, by index suffix, or by 1-based position."""
    for fam in families:
        if selector in (fam.id, fam.id.rsplit("/", 1)[1]):
            return fam
    raise FamilyNotFoundError(f"no family {selector!r}; have {', '.join(f.id for f in families)}")


def instantiate(family: SolutionFamily, param_values) -> CoefficientVector:
    """Evaluate a family at concrete parameter values.

    Raises
    ------
    InvalidInputError
        A free parameter is missing or an unknown one is given.
    ConstraintViolationError
        A constrained parameter is (numerically) zero.
    """
    values = {k: float(v) for k, v in dict(param_values).items()}
    missing = [p for p in family.free_params if p not in values]
    if missing:
        raise InvalidInputError(f"{family.id}: missing parameters {missing}")
    extra = sorted(set(values) - set(family.free_params))
    if extra:
        raise InvalidInputError(f"{family.id}: unexpected parameters {extra}")
    for c in family.constraints:
        if abs(values[c]) < _CONSTRAINT_EPS:
            raise ConstraintViolationError(f"{family.id}: {c} must be nonzero")
    coords = [family.assignments[v].evaluate(values) for v in family.config.variables]
    return family.config.vector(coords)


def sample_parameters(family: SolutionFamily, rng: np.random.Generator) -> dict:
    """Random parameters: ``[-2,-0.1] u [0.1,2]`` when constrained, ``[-2,2]`` otherwise."""
    out = {}
    for p in family.free_params:
        if p in family.constraints:
            out[p] = float(rng.choice([-1.0, 1.0]) * rng.uniform(0.1, 2.0))
        else:
            out[p] = float(rng.uniform(-2.0, 2.0))
    return out


def random_metric(config: SpaceConfig, partition: MetricClassPartition, rng: np.random.Generator) -> MetricSpec:
    """Random positive metric constant on each class of ``partition``."""
    per_class = rng.uniform(0.2, 5.0, size=len(partition.classes))
    idx = partition.class_index()
    lam = tuple(float(per_class[idx[lab]]) for lab in config.module_labels)
    return MetricSpec(lam, "generic", None, partition)


@dataclass
class VerificationReport:
    """Outcome of :func:`verify_family`."""

    family_id: str
    samples: int
    tol: float
    claim: str
    passed: bool = True
    max_cross_residual: float = 0.0
    max_metric_residual: float = 0.0
    classifications: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "family": self.family_id,
            "passed": self.passed,
            "samples": self.samples,
            "tol": self.tol,
            "claim": self.claim,
            "max_cross_residual": self.max_cross_residual,
            "max_metric_residual": self.max_metric_residual,
            "classifications": dict(sorted(self.classifications.items())),
            "failures": list(self.failures),
        }

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        kinds = ", ".join(f"{k}:{v}" for k, v in sorted(self.classifications.items()))
        return (
            f"{status} {self.family_id} claim={self.claim} samples={self.samples} "
            f"cross={self.max_cross_residual:.2e} metric={self.max_metric_residual:.2e} [{kinds}]"
        )


def verify_family(
    config: SpaceConfig, family: SolutionFamily, samples: int = 100, tol: float = 1e-10, seed: int = 0, metrics: int = 10
) -> VerificationReport:
    """Check a family at random parameter points.

    At each sample the instance must have vanishing cross-class brackets,
    vanishing ``[X, Lambda X]_m`` for ``metrics`` random metrics compatible
    with the family's partition, and the claimed classification.  Residuals
    are compared with ``tol * ||X||^2``.  Failures are collected in the report
    rather than raised.
    """
    if samples < 1:
        raise InvalidInputError("samples must be >= 1")
    if tuple(family.config.variables) != tuple(config.variables):
        raise InvalidInputError(f"{family.id} does not belong to {config.name}")
    rng = np.random.default_rng(seed)
    report = VerificationReport(family.id, samples, tol, family.claim)
    expected = CLAIMS[family.claim]
    for s in range(samples):
        params = sample_parameters(family, rng)
        X = instantiate(family, params)
        n2 = X.norm() ** 2
        if n2 == 0.0:
            report.failures.append({"sample": s, "reason": "zero vector"})
            continue
        cross = max(
            (float(np.abs(v.values).max()) for v in cross_residuals(config, X, family.partition).values()), default=0.0
        )
        metric_res = 0.0
        for _ in range(metrics):
            lam = random_metric(config, family.partition, rng)
            metric_res = max(metric_res, float(np.abs(equigeodesic_residual(config, lam, X).values).max()))
        kind = classify_vector(config, X, family.partition).kind
        report.classifications[kind.value] = report.classifications.get(kind.value, 0) + 1
        report.max_cross_residual = max(report.max_cross_residual, cross / n2)
        report.max_metric_residual = max(report.max_metric_residual, metric_res / n2)
        reasons = []
        if cross > tol * n2:
            reasons.append(f"cross residual {cross / n2:.3e}")
        if metric_res > tol * n2:
            reasons.append(f"metric residual {metric_res / n2:.3e}")
        if kind != expected:
            reasons.append(f"classified {kind.value}")
        if reasons:
            report.failures.append({"sample": s, "reason": "; ".join(reasons)})
    report.passed = not report.failures
    return report


def family_subsumes(family: SolutionFamily, x, tol: float = 1e-6):
    """Fit ``family`` to the coordinates ``x``; return the parameters or ``None``.

    Free parameters are read off at their own positions, then the instance is
    compared with ``x`` coordinate by coordinate.
    """
    config = family.config
    x = np.asarray(x, dtype=float)
    params = {p: float(x[config.position(p)]) for p in family.free_params}
    try:
        inst = instantiate(family, params)
    except ConstraintViolationError:
        return None
    if np.max(np.abs(inst.values - x)) > tol:
        return None
    return params
