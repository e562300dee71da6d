"""Equigeodesic residuals, bilinear systems, classification and the geodesic test.

A vector ``X`` in ``m`` is equigeodesic when ``[X, Lambda X]_m = 0`` for every
invariant metric ``Lambda``.  Writing ``X = sum_i X_i`` by modules,

    [X, Lambda X]_m = sum_{i<j} (lambda_j - lambda_i) [X_i, X_j]_m,

so the condition reduces to the vanishing of the cross brackets between
modules that can carry different metric parameters.
"""

from __future__ import annotations

import enum
import itertools
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import IncompatibleElementsError, InvalidInputError, InvalidPartitionError
from .homspace import CoefficientVector, MetricClassPartition, MetricSpec, SpaceConfig
from .polynomial import expand_expr, int_eval, parse_rational

__all__ = [
    "bracket_m",
    "equigeodesic_residual",
    "cross_residuals",
    "BilinearEquation",
    "QuadraticSystem",
    "generate_system",
    "compare_systems",
    "SystemComparison",
    "Classification",
    "ClassificationResult",
    "classify_vector",
    "geodesic_vector_check",
]


def _vec(config: SpaceConfig, X) -> np.ndarray:
    return config.vector(X).values


def _partition(config, partition) -> MetricClassPartition:
    if partition is None:
        return MetricClassPartition.singleton(config)
    if isinstance(partition, str):
        return MetricClassPartition.parse(partition, config).canonical(config)
    if isinstance(partition, MetricSpec):
        return partition.class_partition(config).canonical(config)
    if not isinstance(partition, MetricClassPartition):
        raise InvalidPartitionError(f"unsupported partition {partition!r}")
    return partition.canonical(config)


def _class_positions(config, part):
    sl = config.module_slices
    return [[p for lab in cls for p in sl[lab]] for cls in part.classes]


def bracket_m(config: SpaceConfig, X, Y) -> CoefficientVector:
    """m-component of ``[X, Y]`` for two coefficient vectors."""
    x, y = _vec(config, X), _vec(config, Y)
    return config.vector(np.einsum("pqt,p,q->t", config.m_structure, x, y))


def equigeodesic_residual(config: SpaceConfig, metric: MetricSpec, X) -> CoefficientVector:
    """``[X, Lambda X]_m`` where Lambda scales module ``i`` by ``lambda_i``.

    Raises
    ------
    InvalidMetricError
        Wrong number of parameters (non-positive values are rejected when the
        :class:`MetricSpec` is built).
    """
    if not isinstance(metric, MetricSpec):
        metric = MetricSpec(tuple(metric))
    lam = metric.per_position(config)
    x = _vec(config, X)
    return bracket_m(config, x, lam * x)


def cross_residuals(config: SpaceConfig, X, partition=None) -> dict:
    """Cross brackets between metric classes.

    With the default singleton partition this is ``[X_i, X_j]_m`` for every
    module pair ``i < j``.  With a coarser partition the brackets of all
    module pairs joining two classes are summed.  Keys are pairs of class
    names (class members joined by commas).
    """
    part = _partition(config, partition)
    x = _vec(config, X)
    pos = _class_positions(config, part)
    names = part.class_names()
    T = config.m_structure
    out = {}
    for a, b in itertools.combinations(range(len(pos)), 2):
        xa = np.zeros_like(x)
        xb = np.zeros_like(x)
        xa[pos[a]] = x[pos[a]]
        xb[pos[b]] = x[pos[b]]
        out[(names[a], names[b])] = config.vector(np.einsum("pqt,p,q->t", T, xa, xb))
    return out


# ---------------------------------------------------------------------------
# systems


@dataclass(frozen=True)
class BilinearEquation:
    """``sum coeff * x_p * x_q = 0`` with ``p < q`` m-positions.

    Attributes
    ----------
    terms : tuple of (int, int, int)
        ``(p, q, coefficient)`` sorted by ``(p, q)``; coefficients are
        nonzero integers with gcd 1 and a positive leading entry.
    source_pair : tuple of str
        The two metric classes whose cross bracket produced the equation.
    target : int
        m-position the bracket was projected onto.
    """

    terms: tuple
    source_pair: tuple
    target: int

    def key(self) -> tuple:
        return tuple(self.terms)

    def render(self, variables) -> str:
        parts = []
        for i, (p, q, c) in enumerate(self.terms):
            mono = f"{variables[p]}*{variables[q]}"
            mag = abs(c)
            body = mono if mag == 1 else f"{mag}*{mono}"
            if i == 0:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append(("- " if c < 0 else "+ ") + body)
        return " ".join(parts) + " = 0"

    def evaluate(self, x) -> float:
        return float(sum(c * x[p] * x[q] for p, q, c in self.terms))


def _normalize(coeffs: dict):
    """Integer terms with gcd 1, sorted, positive leading coefficient."""
    fr = {k: Fraction(v).limit_denominator(10**6) for k, v in coeffs.items()}
    fr = {k: v for k, v in fr.items() if v != 0}
    if not fr:
        return ()
    lcm = 1
    for v in fr.values():
        lcm = lcm * v.denominator // math.gcd(lcm, v.denominator)
    ints = {k: int(v * lcm) for k, v in fr.items()}
    g = 0
    for v in ints.values():
        g = math.gcd(g, abs(v))
    keys = sorted(ints)
    sign = -1 if ints[keys[0]] < 0 else 1
    return tuple((p, q, sign * ints[(p, q)] // g) for p, q in keys)


@dataclass(frozen=True)
class QuadraticSystem:
    """Bilinear equations whose common zeros are the equigeodesic vectors.

    Attributes
    ----------
    space : str
        Name of the space the system was generated for.
    variables : tuple of str
    module_of : tuple of str
        Module label of each variable.
    partition : tuple of tuple of str
    equations : tuple of BilinearEquation
    dropped_pairs : tuple of (str, str)
        Cross-class module pairs whose bracket vanishes identically.
    """

    space: str
    variables: tuple
    module_of: tuple
    partition: tuple
    equations: tuple
    dropped_pairs: tuple = ()

    def __len__(self):
        return len(self.equations)

    def render(self) -> list:
        return [eq.render(self.variables) for eq in self.equations]

    @property
    def tensor(self) -> np.ndarray:
        """Dense ``Q[e, p, q]`` with equation ``e`` equal to ``x^T Q[e] x``."""
        n = len(self.variables)
        Q = np.zeros((len(self.equations), n, n))
        for e, eq in enumerate(self.equations):
            for p, q, c in eq.terms:
                Q[e, p, q] += c
        return Q

    def residuals(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        return np.einsum("epq,...p,...q->...e", self.tensor, x, x)

    def jacobian(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        Q = self.tensor
        return np.einsum("erq,...q->...er", Q, x) + np.einsum("epr,...p->...er", Q, x)

    def to_dict(self) -> dict:
        return {
            "space": self.space,
            "variables": list(self.variables),
            "module_of": list(self.module_of),
            "partition": [list(c) for c in self.partition],
            "dropped_pairs": [list(p) for p in self.dropped_pairs],
            "equations": [
                {
                    "terms": [list(t) for t in eq.terms],
                    "source_pair": list(eq.source_pair),
                    "target": eq.target,
                    "text": eq.render(self.variables),
                }
                for eq in self.equations
            ],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "QuadraticSystem":
        try:
            eqs = tuple(
                BilinearEquation(
                    tuple(tuple(int(v) for v in t) for t in e["terms"]),
                    tuple(e["source_pair"]),
                    int(e["target"]),
                )
                for e in data["equations"]
            )
            return cls(
                data["space"],
                tuple(data["variables"]),
                tuple(data["module_of"]),
                tuple(tuple(c) for c in data["partition"]),
                eqs,
                tuple(tuple(p) for p in data.get("dropped_pairs", ())),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidInputError(f"malformed system document: {exc}") from None

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "QuadraticSystem":
        try:
            return cls.from_dict(json.loads(text))
        except json.JSONDecodeError as exc:
            raise InvalidInputError(f"not JSON: {exc}") from None

    def __eq__(self, other):
        if not isinstance(other, QuadraticSystem):
            return NotImplemented
        return self.to_dict() == other.to_dict()

    def __hash__(self):
        return hash((self.space, self.variables, tuple(eq.key() for eq in self.equations)))


def generate_system(config: SpaceConfig, partition=None) -> QuadraticSystem:
    """Bilinear system of the cross brackets between metric classes.

    For each pair of classes ``(A, B)`` and each m-basis target ``Y`` this
    emits ``sum_{p in A, q in B} x_p x_q B([e_p, e_q], Y) / B(Y, Y) = 0``.
    Identically zero equations are dropped and the rest normalised to
    integer coefficients and deduplicated.

    Parameters
    ----------
    config : SpaceConfig
    partition : MetricClassPartition, str, MetricSpec or None
        ``None`` means one class per module (the full equigeodesic system).
    """
    part = _partition(config, partition)
    T = config.m_structure
    pos = _class_positions(config, part)
    names = part.class_names()
    sl = config.module_slices
    equations, seen = [], set()
    dropped = []
    for a, b in itertools.combinations(range(len(pos)), 2):
        for la in part.classes[a]:
            for lb in part.classes[b]:
                if not np.any(T[np.ix_(sl[la], sl[lb])]):
                    dropped.append((la, lb))
        for t in range(config.dim_m):
            coeffs = {}
            for p in pos[a]:
                for q in pos[b]:
                    c = T[p, q, t]
                    if c:
                        key = (min(p, q), max(p, q))
                        coeffs[key] = coeffs.get(key, 0.0) + c
            terms = _normalize(coeffs)
            if not terms or terms in seen:
                continue
            seen.add(terms)
            equations.append(BilinearEquation(terms, (names[a], names[b]), t))
    return QuadraticSystem(
        config.name,
        config.variables,
        config.module_of,
        part.classes,
        tuple(equations),
        tuple(dropped),
    )


# ---------------------------------------------------------------------------
# comparison with printed systems


def parse_printed_equations(lines, variables, env=None) -> list:
    """Turn printed equations (``"a12*a13 + b12*b13"``) into normalised term tuples.

    Each line may be a template with a ``| var=lo..hi`` range, and may use
    ``sum(...)`` blocks; ``= 0`` suffixes are ignored.
    """
    env = dict(env or {})
    index = {v: i for i, v in enumerate(variables)}
    out = []
    for line in lines:
        for expanded in _expand_line(line, env):
            expr = expanded.split("=")[0].strip()
            r = parse_rational(expr)
            coeffs = {}
            for mono, c in r.num.items():
                if len(mono) != 2:
                    raise InvalidInputError(f"printed equation {expr!r} is not bilinear")
                try:
                    p, q = sorted(index[v] for v in mono)
                except KeyError as exc:
                    raise InvalidInputError(f"unknown variable {exc.args[0]!r} in {expr!r}") from None
                coeffs[(p, q)] = coeffs.get((p, q), 0) + c
            out.append((expanded, _normalize(coeffs)))
    return out


def _expand_line(line, env):
    from .polynomial import _RANGE

    m = _RANGE.match(line)
    if m and not line.strip().startswith("sum("):
        lo = int_eval(m.group("lo"), env)
        hi = int_eval(m.group("hi"), env)
        return [expand_expr(m.group("body"), {**env, m.group("var"): v}) for v in range(lo, hi + 1)]
    return [expand_expr(line, env)]


@dataclass(frozen=True)
class SystemComparison:
    """Set comparison of a generated system with a printed one."""

    equal: bool
    matched: tuple
    missing: tuple  # printed but not generated
    extra: tuple  # generated but not printed
    renaming: tuple  # (variable, basis label)

    def to_dict(self) -> dict:
        return {
            "equal": self.equal,
            "matched": list(self.matched),
            "missing_from_generated": list(self.missing),
            "not_printed": list(self.extra),
            "renaming": [list(r) for r in self.renaming],
        }


def compare_systems(config: SpaceConfig, system: QuadraticSystem, printed, env=None) -> SystemComparison:
    """Compare ``system`` with printed equations up to sign and scale.

    ``printed`` is a list of equation strings in the coefficient names of
    ``config`` (templates allowed, see :func:`parse_printed_equations`).
    """
    if tuple(system.variables) != tuple(config.variables):
        raise IncompatibleElementsError("system and space use different variables")
    parsed = parse_printed_equations(printed, config.variables, env)
    gen = {eq.key(): eq.render(system.variables) for eq in system.equations}
    printed_keys = {}
    for text, key in parsed:
        printed_keys.setdefault(key, text)
    matched = tuple(gen[k] for k in gen if k in printed_keys)
    missing = tuple(printed_keys[k] for k in printed_keys if k not in gen)
    extra = tuple(gen[k] for k in gen if k not in printed_keys)
    renaming = tuple(zip(config.variables, config.m_labels))
    return SystemComparison(not missing and not extra, matched, missing, extra, renaming)


# ---------------------------------------------------------------------------
# classification


class Classification(str, enum.Enum):
    TRIVIAL = "trivial"
    STRUCTURAL = "structural-nontrivial"
    ALGEBRAIC = "algebraic"
    NOT_EQUIGEODESIC = "not-equigeodesic"


@dataclass(frozen=True)
class ClassificationResult:
    """Classification plus the evidence behind it."""

    kind: Classification
    support: tuple
    residual: float
    note: str = field(
        default="structural means the cross-class bilinear maps vanish identically on the coordinate "
        "subspace spanned by the basis vectors where X is nonzero"
    )

    def __str__(self):
        return self.kind.value


def _support_modules(config, x, threshold):
    norm = np.linalg.norm(x)
    return tuple(lab for lab, pos in config.module_slices.items() if np.linalg.norm(x[list(pos)]) > threshold * norm)


def classify_vector(
    config: SpaceConfig, X, partition=None, threshold: float = 1e-9, tol: float = 1e-10
) -> ClassificationResult:
    """Classify ``X`` as trivial, structural, algebraic or not equigeodesic.

    Parameters
    ----------
    threshold : float
        A module (or coordinate) is in the support when its norm exceeds
        ``threshold * ||X||``.
    tol : float
        Cross residuals below ``tol * ||X||^2`` count as zero.

    Raises
    ------
    InvalidInputError
        For the zero vector.
    """
    x = _vec(config, X)
    norm = float(np.linalg.norm(x))
    if norm == 0.0:
        raise InvalidInputError("classification needs a nonzero vector")
    part = _partition(config, partition)
    support = _support_modules(config, x, threshold)
    res = cross_residuals(config, x, part)
    worst = max((float(np.abs(v.values).max()) for v in res.values()), default=0.0)
    if len(support) == 1:
        return ClassificationResult(Classification.TRIVIAL, support, worst)
    if worst > tol * norm * norm:
        return ClassificationResult(Classification.NOT_EQUIGEODESIC, support, worst)
    coords = np.flatnonzero(np.abs(x) > threshold * norm)
    cls_of = part.class_index()
    klass = np.array([cls_of[m] for m in config.module_of])
    T = config.m_structure
    sub = T[np.ix_(coords, coords)]
    cross = klass[coords][:, None] != klass[coords][None, :]
    identically_zero = not np.any(sub[cross])
    kind = Classification.STRUCTURAL if identically_zero else Classification.ALGEBRAIC
    return ClassificationResult(kind, support, worst)


def geodesic_vector_check(config: SpaceConfig, metric: MetricSpec, X, tol: float = 1e-10):
    """Test ``B(Lambda X, [X, Z]_m) = 0`` for every B-unit m-basis vector ``Z``.

    Returns
    -------
    (bool, float)
        Whether the test passes at ``tol * ||X||^2`` and the largest violation.
    """
    x = _vec(config, X)
    norm2 = float(x @ x)
    if norm2 == 0.0:
        raise InvalidInputError("geodesic check needs a nonzero vector")
    if not isinstance(metric, MetricSpec):
        metric = MetricSpec(tuple(metric))
    lam = metric.per_position(config)
    g = config.m_norms
    # [X, Z_t]_m = sum_p x_p T[p, t, :]; Z_t scaled to unit B-norm
    brackets = np.einsum("p,pts->ts", x, config.m_structure) / np.sqrt(g)[:, None]
    values = brackets @ (lam * x * g)
    worst = float(np.abs(values).max(initial=0.0))
    return worst <= tol * norm2, worst
