"""Reductive homogeneous spaces G/H with a labelled module decomposition of m.

Seven families are supported:

==================  =====================  ==============================
family              params                 modules
==================  =====================  ==============================
wallach-so          (n1, n2, n3)           m12, m13, m23
stiefel-v2          (n,)                   m0, m1, m2
stiefel-v1k         (n2, n3)               so(n2), m12, m13, m23
wallach-u3          ()                     m12, m13, m23
wallach-sp3         ()                     m12, m13, m23
sphere-u            (n,)                   m1, m2
sphere-sp           (n,)                   m1, m2
==================  =====================  ==============================
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from pathlib import Path

import numpy as np

from .errors import (
    IncompatibleElementsError,
    InternalConsistencyError,
    InvalidInputError,
    InvalidMetricError,
    InvalidParametersError,
    InvalidPartitionError,
    NotApplicableError,
)
from .liealg import (
    BracketCheck,
    LieBasis,
    MatrixElement,
    ValidationReport,
    build_so_basis,
    build_sp_basis,
    build_u_basis,
    parse_label,
    sphere_sp_basis,
)

__all__ = [
    "FAMILIES",
    "SpaceConfig",
    "CoefficientVector",
    "MetricSpec",
    "MetricClassPartition",
    "build_space",
    "load_space_file",
    "validate_wallach",
    "project_m",
    "metric_presets",
    "einstein_v2_lambda",
    "jensen_lambda2",
]

FAMILIES = (
    "wallach-so",
    "stiefel-v2",
    "stiefel-v1k",
    "wallach-u3",
    "wallach-sp3",
    "sphere-u",
    "sphere-sp",
)

_PARAM_HELP = {
    "wallach-so": "n1,n2,n3 >= 1 (SO(n1+n2+n3)/SO(n1)SO(n2)SO(n3))",
    "stiefel-v2": "n >= 4 (SO(n)/SO(n-2))",
    "stiefel-v1k": "n2,n3 >= 2 (SO(1+n2+n3)/SO(n3))",
    "wallach-u3": "no parameters (U(3)/U(1)^3)",
    "wallach-sp3": "no parameters (Sp(3)/Sp(1)^3)",
    "sphere-u": "n >= 1 (U(n+1)/U(n))",
    "sphere-sp": "n >= 1 (Sp(n+1)/Sp(n))",
}

_TOL = 1e-12


def variable_name(letter: str, a: int, b: int) -> str:
    """Coefficient name such as ``a12``; a separator is used once an index has two digits."""
    if a < 10 and b < 10:
        return f"{letter}{a}{b}"
    return f"{letter}{a}_{b}"


@dataclass(frozen=True, eq=False)
class SpaceConfig:
    """A reductive decomposition ``g = h + m`` with ``m`` split into labelled modules.

    Attributes
    ----------
    family : str
    params : tuple of int
    ambient : LieBasis
        Basis of g.
    h_indices : tuple of int
        Ambient positions spanning the isotropy subalgebra.
    modules : tuple of (str, tuple of int)
        Module label and the ambient positions spanning it.
    variables : tuple of str
        Coefficient name for every m-basis position.
    b_scale : float
        Informational: the factor ``c`` with ``-c tr(XY)`` the Killing-form
        normalisation customary for this family.  All computations use
        ``-tr(XY)``; equigeodesic systems are unchanged by positive rescaling.
    h_extra : tuple of MatrixElement
        Isotropy generators not in the ambient basis (unused by the built-in
        families, kept for user-defined spaces).
    """

    family: str
    params: tuple
    ambient: LieBasis
    h_indices: tuple
    modules: tuple
    variables: tuple
    b_scale: float = 1.0
    h_extra: tuple = ()

    # -- layout -----------------------------------------------------------------
    @cached_property
    def m_indices(self) -> tuple:
        """Ambient positions of the m-basis, module by module."""
        return tuple(p for _, pos in self.modules for p in pos)

    @property
    def dim_m(self) -> int:
        return len(self.m_indices)

    @property
    def module_labels(self) -> tuple:
        return tuple(lab for lab, _ in self.modules)

    @cached_property
    def module_slices(self) -> dict:
        """Map module label to the m-positions it occupies."""
        out, start = {}, 0
        for lab, pos in self.modules:
            out[lab] = tuple(range(start, start + len(pos)))
            start += len(pos)
        return out

    @cached_property
    def module_of(self) -> tuple:
        """Module label of every m-position."""
        return tuple(lab for lab, pos in self.modules for _ in pos)

    @cached_property
    def m_labels(self) -> tuple:
        return tuple(self.ambient.labels[p] for p in self.m_indices)

    def module_dims(self) -> tuple:
        return tuple(len(pos) for _, pos in self.modules)

    def position(self, name: str) -> int:
        """m-position of a coefficient name or basis label."""
        if name in self.variables:
            return self.variables.index(name)
        if name in self.m_labels:
            return self.m_labels.index(name)
        raise InvalidInputError(f"{name!r} is neither a coefficient nor an m-basis label of {self.name}")

    @property
    def name(self) -> str:
        if not self.params:
            return self.family
        return f"{self.family}({','.join(str(p) for p in self.params)})"

    # -- algebra ------------------------------------------------------------------
    @cached_property
    def m_norms(self) -> np.ndarray:
        g = np.diag(self.ambient.gram)[list(self.m_indices)]
        g.setflags(write=False)
        return g

    @cached_property
    def m_structure(self) -> np.ndarray:
        """``T[p, q, t]``: coefficient of m-basis ``t`` in ``[e_p, e_q]_m``."""
        idx = np.array(self.m_indices)
        t = self.ambient.structure[np.ix_(idx, idx, idx)].copy()
        t.setflags(write=False)
        return t

    def vector(self, values=None, **named) -> "CoefficientVector":
        """Build a coefficient vector from an array, a mapping, or keywords."""
        if isinstance(values, CoefficientVector):
            if values.variables != self.variables:
                raise IncompatibleElementsError("vector belongs to a different space")
            return values
        if values is None or isinstance(values, dict):
            mapping = dict(values or {})
            mapping.update(named)
            arr = np.zeros(self.dim_m)
            for key, val in mapping.items():
                arr[self.position(key)] = float(val)
        else:
            if named:
                raise InvalidInputError("pass either an array or keywords, not both")
            arr = np.array(values, dtype=float)
            if arr.shape != (self.dim_m,):
                raise IncompatibleElementsError(f"expected {self.dim_m} coefficients, got shape {arr.shape}")
        return CoefficientVector(arr, self.variables, tuple(self.module_slices.items()))

    def element(self, X) -> MatrixElement:
        """Matrix realization of a coefficient vector."""
        x = self.vector(X).values
        full = np.zeros(len(self.ambient))
        full[list(self.m_indices)] = x
        return self.ambient.expand(full)

    def describe(self) -> dict:
        return {
            "family": self.family,
            "params": list(self.params),
            "name": self.name,
            "dim_g": len(self.ambient),
            "dim_h": len(self.h_indices) + len(self.h_extra),
            "modules": [
                {"label": lab, "dim": len(pos), "basis": [self.ambient.labels[p] for p in pos]}
                for lab, pos in self.modules
            ],
            "variables": list(self.variables),
            "b_scale": self.b_scale,
        }

    # -- invariants ---------------------------------------------------------------
    def _h_elements(self):
        return [self.ambient.elements[i] for i in self.h_indices] + list(self.h_extra)

    def invariant_residuals(self) -> dict:
        """Residuals of subalgebra, orthogonality, reductivity and spanning checks."""
        amb = self.ambient
        c = amb.structure
        h = list(self.h_indices)
        m_all = set(self.m_indices)
        out = {}
        used = sorted(h + list(self.m_indices))
        out["spanning"] = 0.0 if used == list(range(len(amb))) and len(used) == len(set(used)) else 1.0
        outside_h = [k for k in range(len(amb)) if k not in set(h)]
        out["subalgebra"] = float(np.abs(c[np.ix_(h, h, outside_h)]).max(initial=0.0)) if h else 0.0
        gram = amb.gram
        out["orthogonality"] = float(np.abs(gram[np.ix_(h, list(m_all))]).max(initial=0.0)) if h else 0.0
        worst = 0.0
        for _, pos in self.modules:
            others = [k for k in range(len(amb)) if k not in set(pos)]
            if h:
                worst = max(worst, float(np.abs(c[np.ix_(h, list(pos), others)]).max(initial=0.0)))
        for extra in self.h_extra:
            # generators outside the ambient basis: act via matrices
            from .liealg import commutator

            for _, pos in self.modules:
                for p in pos:
                    coords = amb.coordinates(commutator(extra, amb.elements[p]))
                    mask = np.ones(len(amb), bool)
                    mask[list(pos)] = False
                    worst = max(worst, float(np.abs(coords[mask]).max(initial=0.0)))
        out["reductivity"] = worst
        return out


@dataclass(frozen=True, eq=False)
class CoefficientVector:
    """Coefficients of a tangent vector in the m-basis, grouped by module."""

    values: np.ndarray
    variables: tuple
    layout: tuple  # ((label, positions), ...)

    def __post_init__(self):
        v = np.array(self.values, dtype=float)
        if v.shape != (len(self.variables),):
            raise IncompatibleElementsError("coefficient count does not match the variable list")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    def module(self, label: str) -> np.ndarray:
        for lab, pos in self.layout:
            if lab == label:
                return self.values[list(pos)]
        raise InvalidInputError(f"unknown module {label!r}")

    def module_norms(self) -> dict:
        return {lab: float(np.linalg.norm(self.values[list(pos)])) for lab, pos in self.layout}

    def norm(self) -> float:
        return float(np.linalg.norm(self.values))

    def as_dict(self) -> dict:
        return {name: float(v) for name, v in zip(self.variables, self.values)}

    def __array__(self, dtype=None, copy=None):
        return np.array(self.values, dtype=dtype)

    def __len__(self):
        return len(self.values)


# ---------------------------------------------------------------------------
# construction


def _as_params(params, count, family):
    if params is None:
        params = ()
    if isinstance(params, (int, np.integer)):
        params = (params,)
    params = tuple(params)
    if len(params) != count:
        raise InvalidParametersError(f"{family} expects {count} parameter(s): {_PARAM_HELP[family]}")
    out = []
    for p in params:
        if isinstance(p, bool) or not isinstance(p, (int, np.integer)):
            try:
                as_float = float(p)
            except (TypeError, ValueError):
                raise InvalidParametersError(f"{family}: parameter {p!r} is not an integer") from None
            if not as_float.is_integer():
                raise InvalidParametersError(f"{family}: parameter {p!r} is not an integer")
            p = int(as_float)
        out.append(int(p))
    return tuple(out)


def _so_blocks(sizes):
    blocks, start = [], 1
    for s in sizes:
        blocks.append(range(start, start + s))
        start += s
    return blocks


def _so_space(family, params, sizes, module_specs, h_blocks, b_scale=1.0):
    n = sum(sizes)
    amb = build_so_basis(n)
    blocks = _so_blocks(sizes)

    def pos(bi, bj):
        return tuple(
            amb.index(f"xi({a},{b})") for a in blocks[bi] for b in blocks[bj] if a < b
        )

    modules = []
    for label, bi, bj in module_specs:
        modules.append((label, tuple(sorted(pos(bi, bj)))))
    h = tuple(sorted(p for bi in h_blocks for p in pos(bi, bi)))
    variables = []
    for _, ps in modules:
        for p in ps:
            _, a, b = parse_label(amb.labels[p])
            variables.append(variable_name("a", a, b))
    return SpaceConfig(family, params, amb, h, tuple(modules), tuple(variables), b_scale)


def _build_wallach_so(params):
    n1, n2, n3 = _as_params(params, 3, "wallach-so")
    if min(n1, n2, n3) < 1:
        raise InvalidParametersError("wallach-so needs n1, n2, n3 >= 1")
    return _so_space(
        "wallach-so",
        (n1, n2, n3),
        (n1, n2, n3),
        [("m12", 0, 1), ("m13", 0, 2), ("m23", 1, 2)],
        h_blocks=(0, 1, 2),
    )


def _build_stiefel_v2(params):
    (n,) = _as_params(params, 1, "stiefel-v2")
    if n < 4:
        raise InvalidParametersError("stiefel-v2 needs n >= 4")
    # blocks {1}, {2}, {3..n}; the two singleton blocks carry no isotropy
    return _so_space(
        "stiefel-v2",
        (n,),
        (1, 1, n - 2),
        [("m0", 0, 1), ("m1", 0, 2), ("m2", 1, 2)],
        h_blocks=(2,),
        b_scale=float(n - 2),
    )


def _build_stiefel_v1k(params):
    n2, n3 = _as_params(params, 2, "stiefel-v1k")
    if n2 < 2 or n3 < 2:
        raise InvalidParametersError("stiefel-v1k needs n2 >= 2 and n3 >= 2")
    n = 1 + n2 + n3
    return _so_space(
        "stiefel-v1k",
        (n2, n3),
        (1, n2, n3),
        [(f"so({n2})", 1, 1), ("m12", 0, 1), ("m13", 0, 2), ("m23", 1, 2)],
        h_blocks=(2,),
        b_scale=float(n - 2),
    )


def _named(amb, labels):
    return tuple(sorted(amb.index(lab) for lab in labels))


def _build_wallach_u3(params):
    _as_params(params, 0, "wallach-u3")
    amb = build_u_basis(3)
    h = _named(amb, [f"f({a},{a})" for a in (1, 2, 3)])
    modules, variables = [], []
    for i, j in ((1, 2), (1, 3), (2, 3)):
        modules.append((f"m{i}{j}", _named(amb, [f"e({i},{j})", f"f({i},{j})"])))
    rename = {"e": "a", "f": "b"}
    for _, ps in modules:
        for p in ps:
            letter, a, b = parse_label(amb.labels[p])
            variables.append(variable_name(rename[letter], a, b))
    return SpaceConfig("wallach-u3", (), amb, h, tuple(modules), tuple(variables))


def _build_wallach_sp3(params):
    _as_params(params, 0, "wallach-sp3")
    amb = build_sp_basis(3)
    h = _named(amb, [f"{x}({a},{a})" for x in "fgh" for a in (1, 2, 3)])
    modules, variables = [], []
    for i, j in ((1, 2), (1, 3), (2, 3)):
        modules.append((f"m{i}{j}", _named(amb, [f"{x}({i},{j})" for x in "efgh"])))
    rename = {"e": "a", "f": "b", "g": "c", "h": "q"}
    for _, ps in modules:
        for p in ps:
            letter, a, b = parse_label(amb.labels[p])
            variables.append(variable_name(rename[letter], a, b))
    return SpaceConfig("wallach-sp3", (), amb, h, tuple(modules), tuple(variables))


def _build_sphere_u(params):
    (n,) = _as_params(params, 1, "sphere-u")
    if n < 1:
        raise InvalidParametersError("sphere-u needs n >= 1")
    amb = build_u_basis(n + 1)
    m1 = _named(amb, ["f(1,1)"])
    m2 = _named(amb, [f"{x}(1,{j})" for x in "ef" for j in range(2, n + 2)])
    taken = set(m1) | set(m2)
    h = tuple(i for i in range(len(amb)) if i not in taken)
    variables = []
    for p in m1 + m2:
        letter, a, b = parse_label(amb.labels[p])
        if letter == "f" and a == b:
            variables.append(variable_name("a", a, b))
        else:
            variables.append(variable_name({"e": "a", "f": "b"}[letter], a, b))
    return SpaceConfig("sphere-u", (n,), amb, h, (("m1", m1), ("m2", m2)), tuple(variables))


def _build_sphere_sp(params):
    (n,) = _as_params(params, 1, "sphere-sp")
    if n < 1:
        raise InvalidParametersError("sphere-sp needs n >= 1")
    amb = sphere_sp_basis(n)
    top = n + 2
    m1 = _named(amb, ["u(1,1)", f"k(1,{top})", f"mu(1,{top})"])
    m2 = _named(amb, [f"{x}(1,{b})" for x in "efgh" for b in range(2, n + 2)])
    taken = set(m1) | set(m2)
    h = tuple(i for i in range(len(amb)) if i not in taken)
    rename = {"u": "a", "k": "a", "mu": "b", "e": "c", "f": "d", "g": "l", "h": "m"}
    variables = []
    for p in m1 + m2:
        letter, a, b = parse_label(amb.labels[p])
        variables.append(variable_name(rename[letter], a, b))
    return SpaceConfig("sphere-sp", (n,), amb, h, (("m1", m1), ("m2", m2)), tuple(variables))


_BUILDERS = {
    "wallach-so": _build_wallach_so,
    "stiefel-v2": _build_stiefel_v2,
    "stiefel-v1k": _build_stiefel_v1k,
    "wallach-u3": _build_wallach_u3,
    "wallach-sp3": _build_wallach_sp3,
    "sphere-u": _build_sphere_u,
    "sphere-sp": _build_sphere_sp,
}


def build_space(family: str, params=()) -> SpaceConfig:
    """Assemble and validate one of the supported homogeneous spaces.

    Parameters
    ----------
    family : str
        One of :data:`FAMILIES`.
    params : int or sequence of int
        Family parameters, see the module docstring.

    Raises
    ------
    InvalidParametersError
        Unknown family or parameters out of range.
    InternalConsistencyError
        The assembled decomposition fails a structural invariant.

    Examples
    --------
    >>> build_space("wallach-so", (1, 3, 2)).module_dims()
    (3, 2, 6)
    """
    if family not in _BUILDERS:
        raise InvalidParametersError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")
    config = _BUILDERS[family](params)
    bad = {k: v for k, v in config.invariant_residuals().items() if v > _TOL}
    if bad:
        raise InternalConsistencyError(f"{config.name} fails invariants: {bad}")
    return config


def family_help(family: str) -> str:
    return _PARAM_HELP[family]


def load_space_file(path) -> SpaceConfig:
    """Read a JSON space file ``{"family": ..., "params": [...]}``."""
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InvalidInputError(f"cannot read space file {path}: {exc}") from None
    if not isinstance(data, dict) or "family" not in data:
        raise InvalidInputError("space file needs a 'family' field")
    extra = set(data) - {"family", "params", "partition", "metric"}
    if extra:
        raise InvalidInputError(f"unexpected fields in space file: {sorted(extra)}")
    return build_space(data["family"], data.get("params", ()))


# ---------------------------------------------------------------------------
# validation and projection


def _irreducible(config, positions, tol=1e-9):
    """Return (irreducible?, commutant dimension) for one module.

    A proper invariant subspace exists iff some non-scalar symmetric matrix
    (in B-orthonormal coordinates) commutes with every ad(h) action.
    """
    k = len(positions)
    if k == 1:
        return True, 1
    c = config.ambient.structure
    norms = np.sqrt(np.diag(config.ambient.gram))
    pos = list(positions)
    reps = []
    for hidx in config.h_indices:
        # ad(h) e_p = sum_q c[h, p, q] e_q, rescaled to orthonormal coordinates
        m = c[hidx][np.ix_(pos, pos)].T * norms[pos][:, None] / norms[pos][None, :]
        reps.append(m)
    sym_basis = []
    for i, j in itertools.combinations_with_replacement(range(k), 2):
        s = np.zeros((k, k))
        s[i, j] = s[j, i] = 1.0
        sym_basis.append(s)
    if not reps:
        return False, len(sym_basis)
    rows = np.stack([np.concatenate([(r @ s - s @ r).ravel() for r in reps]) for s in sym_basis], axis=1)
    sv = np.linalg.svd(rows, compute_uv=False)
    null_dim = int(np.sum(sv < tol * max(1.0, sv.max(initial=0.0)))) + max(0, len(sym_basis) - len(sv))
    return null_dim == 1, null_dim


def validate_wallach(config: SpaceConfig) -> ValidationReport:
    """Check the generalized Wallach bracket relations and module irreducibility.

    Modules are read in order as ``m12, m13, m23``.

    Raises
    ------
    NotApplicableError
        If the space does not have exactly three modules.
    """
    if len(config.modules) != 3:
        raise NotApplicableError(f"{config.name} has {len(config.modules)} modules, Wallach checks need 3")
    names = ("m12", "m13", "m23")
    amb = config.ambient
    c = amb.structure
    pos = {new: list(p) for new, (_, p) in zip(names, config.modules)}
    h = list(config.h_indices)
    all_idx = range(len(amb))
    checks = []

    def outside(target):
        return [k for k in all_idx if k not in set(target)]

    for lab in names:
        block = c[np.ix_(pos[lab], pos[lab], outside(h))]
        r = float(np.abs(block).max(initial=0.0))
        checks.append(BracketCheck(f"[{lab}, {lab}]", "subset of h", f"residual {r:.3g}", r < _TOL))
    for a, b, t in (("m12", "m13", "m23"), ("m12", "m23", "m13"), ("m13", "m23", "m12")):
        block = c[np.ix_(pos[a], pos[b], outside(pos[t]))]
        r = float(np.abs(block).max(initial=0.0))
        checks.append(BracketCheck(f"[{a}, {b}]", f"subset of {t}", f"residual {r:.3g}", r < _TOL))
    for new, (orig, p) in zip(names, config.modules):
        ok, dim = _irreducible(config, p)
        checks.append(
            BracketCheck(
                f"{new} irreducible",
                "commutant = scalars",
                f"symmetric commutant dimension {dim}",
                ok,
            )
        )
    notes = []
    if config.module_labels != names:
        notes.append("modules relabelled " + ", ".join(f"{o}->{n}" for o, n in zip(config.module_labels, names)))
    return ValidationReport(f"wallach:{config.name}", tuple(checks), tuple(notes))


def project_m(config: SpaceConfig, X: MatrixElement) -> CoefficientVector:
    """Orthogonal projection of an ambient element onto m, in m-coordinates."""
    if not isinstance(X, MatrixElement):
        raise IncompatibleElementsError("project_m expects a MatrixElement")
    coords = config.ambient.coordinates(X)
    return config.vector(coords[list(config.m_indices)])


# ---------------------------------------------------------------------------
# metrics


@dataclass(frozen=True)
class MetricClassPartition:
    """Grouping of modules that share one metric parameter."""

    classes: tuple

    def __post_init__(self):
        classes = tuple(tuple(c) for c in self.classes)
        if not classes or any(not c for c in classes):
            raise InvalidPartitionError("partition classes must be nonempty")
        flat = [m for c in classes for m in c]
        if len(flat) != len(set(flat)):
            raise InvalidPartitionError("partition classes overlap")
        object.__setattr__(self, "classes", classes)

    @classmethod
    def singleton(cls, config: SpaceConfig) -> "MetricClassPartition":
        return cls(tuple((lab,) for lab in config.module_labels))

    @classmethod
    def parse(cls, text: str, config: SpaceConfig | None = None) -> "MetricClassPartition":
        """Parse ``"so(3),m12|m13,m23"``; classes split on ``|``, members on ``,``.

        Commas inside parentheses belong to the label.
        """
        classes = []
        for chunk in text.split("|"):
            members, depth, cur = [], 0, ""
            for ch in chunk:
                if ch == "(":
                    depth += 1
                elif ch == ")":
                    depth -= 1
                if ch == "," and depth == 0:
                    members.append(cur.strip())
                    cur = ""
                else:
                    cur += ch
            members.append(cur.strip())
            members = [m for m in members if m]
            if not members:
                raise InvalidPartitionError(f"empty class in partition {text!r}")
            classes.append(tuple(members))
        part = cls(tuple(classes))
        if config is not None:
            part.check(config)
        return part

    def check(self, config: SpaceConfig) -> "MetricClassPartition":
        flat = [m for c in self.classes for m in c]
        labels = set(config.module_labels)
        unknown = [m for m in flat if m not in labels]
        if unknown:
            raise InvalidPartitionError(f"unknown modules {unknown} for {config.name}")
        missing = labels - set(flat)
        if missing:
            raise InvalidPartitionError(f"partition misses modules {sorted(missing)}")
        return self

    def canonical(self, config: SpaceConfig) -> "MetricClassPartition":
        """Same partition with members and classes in module order."""
        self.check(config)
        order = {lab: i for i, lab in enumerate(config.module_labels)}
        classes = sorted((tuple(sorted(c, key=order.get)) for c in self.classes), key=lambda c: order[c[0]])
        return MetricClassPartition(tuple(classes))

    def class_names(self) -> tuple:
        return tuple(",".join(c) for c in self.classes)

    def class_index(self) -> dict:
        return {m: i for i, c in enumerate(self.classes) for m in c}

    def is_singleton(self) -> bool:
        return all(len(c) == 1 for c in self.classes)

    def __str__(self):
        return "|".join(",".join(c) for c in self.classes)


@dataclass(frozen=True)
class MetricSpec:
    """Diagonal invariant metric: one positive lambda per module.

    Attributes
    ----------
    lambdas : tuple of float
    name : str
        One of ``generic, wallach, einstein-v2, jensen-plus, jensen-minus``.
    exact : tuple or None
        Exact values (``Fraction``) when known.
    partition : MetricClassPartition or None
        Declared class structure.  When omitted, modules with equal lambdas
        are grouped.
    """

    lambdas: tuple
    name: str = "generic"
    exact: tuple | None = None
    partition: MetricClassPartition | None = None

    def __post_init__(self):
        lam = tuple(float(x) for x in self.lambdas)
        if not lam or any(not (x > 0) or not math.isfinite(x) for x in lam):
            raise InvalidMetricError(f"metric parameters must be positive, got {self.lambdas}")
        object.__setattr__(self, "lambdas", lam)

    def check(self, config: SpaceConfig) -> "MetricSpec":
        if len(self.lambdas) != len(config.modules):
            raise InvalidMetricError(
                f"{config.name} has {len(config.modules)} modules but the metric has {len(self.lambdas)} parameters"
            )
        return self

    def per_position(self, config: SpaceConfig) -> np.ndarray:
        self.check(config)
        return np.array([lam for lam, (_, pos) in zip(self.lambdas, config.modules) for _ in pos])

    def class_partition(self, config: SpaceConfig) -> MetricClassPartition:
        self.check(config)
        if self.partition is not None:
            return self.partition.check(config)
        groups = {}
        values = self.exact if self.exact is not None else self.lambdas
        for lab, v in zip(config.module_labels, values):
            groups.setdefault(v, []).append(lab)
        return MetricClassPartition(tuple(tuple(g) for g in groups.values()))


def einstein_v2_lambda(n: int) -> Fraction:
    """Einstein metric parameter ``(n - 1) / (2 (n - 2))`` on SO(n)/SO(n-2)."""
    if n < 4:
        raise InvalidParametersError("needs n >= 4")
    return Fraction(n - 1, 2 * (n - 2))


def jensen_lambda2(n: int) -> tuple:
    """The two Jensen values ``(n - 2 +/- sqrt(n^2 - 7n + 7)) / (n - 1)``.

    Returned as ``Fraction`` when the discriminant is a perfect square and as
    ``float`` otherwise.  Order is ``(plus, minus)``.
    """
    if n < 6:
        raise InvalidParametersError("Jensen metrics need n >= 6")
    disc = n * n - 7 * n + 7
    root = math.isqrt(disc)
    if root * root == disc:
        return (Fraction(n - 2 + root, n - 1), Fraction(n - 2 - root, n - 1))
    s = math.sqrt(disc)
    return ((n - 2 + s) / (n - 1), (n - 2 - s) / (n - 1))


def metric_presets(config: SpaceConfig) -> list:
    """Named invariant metrics applicable to ``config``.

    The generic metric (all ones) is always included first.
    """
    k = len(config.modules)
    presets = [MetricSpec((1.0,) * k, "generic", (Fraction(1),) * k, MetricClassPartition.singleton(config))]
    if config.family == "stiefel-v2":
        (n,) = config.params
        lam = einstein_v2_lambda(n)
        part = MetricClassPartition((("m0",), ("m1", "m2")))
        presets.append(MetricSpec((1.0, float(lam), float(lam)), "einstein-v2", (Fraction(1), lam, lam), part))
    elif config.family == "stiefel-v1k" and config.params[0] == 3:
        n = 1 + sum(config.params)
        so = config.module_labels[0]
        part = MetricClassPartition(((so, "m12"), ("m13", "m23")))
        for lam, name in zip(jensen_lambda2(n), ("jensen-plus", "jensen-minus")):
            exact = (lam, lam, Fraction(1), Fraction(1)) if isinstance(lam, Fraction) else None
            presets.append(MetricSpec((float(lam), float(lam), 1.0, 1.0), name, exact, part))
    elif config.family.startswith("wallach"):
        presets[0] = MetricSpec(presets[0].lambdas, "wallach", presets[0].exact, presets[0].partition)
    return presets


def named_partition(config: SpaceConfig, metric: str) -> MetricClassPartition:
    """Class partition attached to a metric keyword (``jensen`` or ``einstein``)."""
    wanted = {"jensen": "jensen-plus", "einstein": "einstein-v2"}.get(metric, metric)
    for spec in metric_presets(config):
        if spec.name == wanted:
            return spec.partition
    raise InvalidMetricError(f"no {metric!r} metric for {config.name}")
