"""Matrix realizations of so(n), u(n) and sp(n) with B-orthogonal bases.

Complex matrices are carried as pairs of real arrays ``(re, im)`` so that all
arithmetic happens in a single real kernel.  The invariant form is
``B(X, Y) = -Re tr(XY)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import IncompatibleElementsError, InternalConsistencyError, InvalidDimensionError

__all__ = [
    "MatrixElement",
    "LieBasis",
    "BracketCheck",
    "ValidationReport",
    "bilinear_form",
    "commutator",
    "build_so_basis",
    "build_u_basis",
    "build_sp_basis",
    "sphere_sp_basis",
    "validate_bracket_lemma",
]

TAGS = ("so", "u", "sp")
_TOL = 1e-12


def _cmul(ar, ai, br, bi):
    """Complex matrix product on real pairs; works on stacked arrays too."""
    return ar @ br - ai @ bi, ar @ bi + ai @ br


def _trace_pair(ar, ai, br, bi):
    # Re tr(AB) without forming the product
    return np.sum(ar * np.swapaxes(br, -1, -2), axis=(-2, -1)) - np.sum(
        ai * np.swapaxes(bi, -1, -2), axis=(-2, -1)
    )


@dataclass(frozen=True, eq=False)
class MatrixElement:
    """A d x d complex matrix stored as real and imaginary parts.

    Parameters
    ----------
    re, im : ndarray of shape (d, d)
        Real and imaginary parts.
    tag : {"so", "u", "sp"}
        Algebra the element belongs to.  The matching structural condition
        is checked on construction.
    """

    re: np.ndarray
    im: np.ndarray
    tag: str

    def __post_init__(self):
        re = np.array(self.re, dtype=float)
        im = np.array(self.im, dtype=float)
        if re.ndim != 2 or re.shape[0] != re.shape[1] or re.shape != im.shape:
            raise InvalidDimensionError(f"expected two equal square arrays, got {re.shape} and {im.shape}")
        if self.tag not in TAGS:
            raise IncompatibleElementsError(f"unknown algebra tag {self.tag!r}")
        re.setflags(write=False)
        im.setflags(write=False)
        object.__setattr__(self, "re", re)
        object.__setattr__(self, "im", im)
        self._check()

    @classmethod
    def from_complex(cls, matrix, tag):
        m = np.asarray(matrix, dtype=complex)
        return cls(m.real.copy(), m.imag.copy(), tag)

    @property
    def d(self) -> int:
        return self.re.shape[0]

    @property
    def matrix(self) -> np.ndarray:
        return self.re + 1j * self.im

    def _check(self):
        scale = max(1.0, float(np.abs(self.re).max(initial=0.0)), float(np.abs(self.im).max(initial=0.0)))
        tol = _TOL * scale
        # skew-Hermitian: re antisymmetric, im symmetric
        if np.abs(self.re + self.re.T).max() > tol or np.abs(self.im - self.im.T).max() > tol:
            raise InternalConsistencyError(f"{self.tag} element is not skew-Hermitian")
        if self.tag == "so" and np.abs(self.im).max() > tol:
            raise InternalConsistencyError("so element has a nonzero imaginary part")
        if self.tag == "sp":
            if self.d % 2:
                raise InternalConsistencyError("sp elements need even dimension")
            n = self.d // 2
            x = self.matrix
            top_left, bottom_left = x[:n, :n], x[n:, :n]
            if (
                np.abs(x[n:, n:] - top_left.conj()).max() > tol
                or np.abs(x[:n, n:] + bottom_left.conj()).max() > tol
                or np.abs(bottom_left - bottom_left.T).max() > tol
            ):
                raise InternalConsistencyError("sp element violates the ((X, -conj Y), (Y, conj X)) pattern")

    def _compatible(self, other):
        if not isinstance(other, MatrixElement):
            raise IncompatibleElementsError(f"expected MatrixElement, got {type(other).__name__}")
        if other.d != self.d or other.tag != self.tag:
            raise IncompatibleElementsError(
                f"cannot combine {self.tag}({self.d}x{self.d}) with {other.tag}({other.d}x{other.d})"
            )

    def __add__(self, other):
        self._compatible(other)
        return MatrixElement(self.re + other.re, self.im + other.im, self.tag)

    def __sub__(self, other):
        self._compatible(other)
        return MatrixElement(self.re - other.re, self.im - other.im, self.tag)

    def __neg__(self):
        return MatrixElement(-self.re, -self.im, self.tag)

    def __mul__(self, scalar):
        scalar = float(scalar)
        return MatrixElement(scalar * self.re, scalar * self.im, self.tag)

    __rmul__ = __mul__

    def allclose(self, other, atol=_TOL) -> bool:
        self._compatible(other)
        return bool(np.abs(self.re - other.re).max() <= atol and np.abs(self.im - other.im).max() <= atol)

    def norm(self) -> float:
        return float(np.sqrt(np.sum(self.re**2) + np.sum(self.im**2)))

    def __repr__(self):
        return f"MatrixElement(tag={self.tag!r}, d={self.d})"


def bilinear_form(X: MatrixElement, Y: MatrixElement, scale: float = 1.0) -> float:
    """Return ``-scale * Re tr(XY)``."""
    X._compatible(Y)
    return -scale * float(_trace_pair(X.re, X.im, Y.re, Y.im))


def commutator(X: MatrixElement, Y: MatrixElement) -> MatrixElement:
    """Return ``XY - YX``.

    Raises
    ------
    IncompatibleElementsError
        If the two elements differ in dimension or algebra tag.
    """
    X._compatible(Y)
    ar, ai = _cmul(X.re, X.im, Y.re, Y.im)
    br, bi = _cmul(Y.re, Y.im, X.re, X.im)
    return MatrixElement(ar - br, ai - bi, X.tag)


@dataclass(frozen=True, eq=False)
class LieBasis:
    """An ordered B-orthogonal basis together with its structure constants.

    Attributes
    ----------
    elements : tuple of MatrixElement
    labels : tuple of str
        Symbolic names such as ``"xi(1,2)"`` or ``"f(1,1)"``.
    form_scale : float
        Positive factor multiplying B.  Structure constants do not depend on
        it; the gram matrix does.
    """

    elements: tuple
    labels: tuple
    form_scale: float = 1.0
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))
        object.__setattr__(self, "labels", tuple(self.labels))
        if len(self.elements) != len(self.labels) or not self.elements:
            raise InvalidDimensionError("elements and labels must be nonempty and of equal length")
        if len(set(self.labels)) != len(self.labels):
            raise InternalConsistencyError("duplicate basis labels")
        if not self.form_scale > 0:
            raise InvalidDimensionError("form_scale must be positive")
        first = self.elements[0]
        for e in self.elements[1:]:
            first._compatible(e)
        object.__setattr__(self, "_index", {lab: i for i, lab in enumerate(self.labels)})
        gram = self.gram
        off = gram - np.diag(np.diag(gram))
        if np.abs(off).max() > _TOL or np.diag(gram).min() <= 0:
            raise InternalConsistencyError("basis is not B-orthogonal with positive norms")
        if self.closure_residual() > 1e-12:
            raise InternalConsistencyError("basis is not closed under the bracket")

    def __len__(self):
        return len(self.elements)

    @property
    def tag(self) -> str:
        return self.elements[0].tag

    @property
    def d(self) -> int:
        return self.elements[0].d

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise InvalidDimensionError(f"no basis element labelled {label!r}") from None

    def element(self, label: str) -> MatrixElement:
        return self.elements[self.index(label)]

    @cached_property
    def _stack(self):
        re = np.stack([e.re for e in self.elements])
        im = np.stack([e.im for e in self.elements])
        return re, im

    @cached_property
    def gram(self) -> np.ndarray:
        re, im = self._stack
        g = -self.form_scale * _trace_pair(re[:, None], im[:, None], re[None, :], im[None, :])
        g.setflags(write=False)
        return g

    @cached_property
    def _norms(self) -> np.ndarray:
        return np.diag(self.gram).copy()

    @cached_property
    def _brackets(self):
        re, im = self._stack
        ar, ai = _cmul(re[:, None], im[:, None], re[None, :], im[None, :])
        return ar - np.swapaxes(ar, 0, 1), ai - np.swapaxes(ai, 0, 1)

    @cached_property
    def structure(self) -> np.ndarray:
        """Dense tensor ``c[i, j, k]`` with ``[e_i, e_j] = sum_k c[i, j, k] e_k``."""
        br, bi = self._brackets
        re, im = self._stack
        proj = -self.form_scale * _trace_pair(br[:, :, None], bi[:, :, None], re[None, None], im[None, None])
        c = proj / self._norms
        c[np.abs(c) < 1e-14] = 0.0
        c.setflags(write=False)
        return c

    def structure_sparse(self) -> dict:
        """Sparse view ``{(i, j): [(k, coefficient), ...]}`` of nonzero brackets."""
        c = self.structure
        out = {}
        for i, j, k in zip(*np.nonzero(c)):
            val = float(c[i, j, k])
            rounded = round(val)
            out.setdefault((int(i), int(j)), []).append((int(k), rounded if abs(val - rounded) < 1e-12 else val))
        return out

    def coordinates(self, X: MatrixElement) -> np.ndarray:
        """Coefficients of ``X`` in this basis, ``B(X, e_k) / B(e_k, e_k)``."""
        self.elements[0]._compatible(X)
        re, im = self._stack
        return -self.form_scale * _trace_pair(X.re, X.im, re, im) / self._norms

    def expand(self, coefficients) -> MatrixElement:
        coefficients = np.asarray(coefficients, dtype=float)
        if coefficients.shape != (len(self),):
            raise InvalidDimensionError(f"expected {len(self)} coefficients")
        re, im = self._stack
        return MatrixElement(np.tensordot(coefficients, re, 1), np.tensordot(coefficients, im, 1), self.tag)

    def closure_residual(self) -> float:
        br, bi = self._brackets
        re, im = self._stack
        c = self.structure
        rr = br - np.tensordot(c, re, axes=([2], [0]))
        ri = bi - np.tensordot(c, im, axes=([2], [0]))
        return float(max(np.abs(rr).max(), np.abs(ri).max()))

    def antisymmetry_residual(self) -> float:
        c = self.structure
        return float(np.abs(c + np.swapaxes(c, 0, 1)).max())

    def jacobi_residual(self) -> float:
        """Max over (i, j, l, m) of the cyclic Jacobi sum in structure constants."""
        c = self.structure
        # [[e_i, e_j], e_l] has components sum_k c_ij^k c_kl^m
        t = np.einsum("ijk,klm->ijlm", c, c)
        total = t + np.transpose(t, (1, 2, 0, 3)) + np.transpose(t, (2, 0, 1, 3))
        return float(np.abs(total).max())

    def ad_invariance_residual(self) -> float:
        """Max of ``|B([Z, X], Y) + B(X, [Z, Y])|`` over basis triples."""
        c = self.structure
        g = self._norms
        # B([e_z, e_x], e_y) = c[z, x, y] g[y]
        a = c * g[None, None, :]
        return float(np.abs(a + np.swapaxes(a, 1, 2)).max())


# ---------------------------------------------------------------------------
# constructors


def _unit(d, a, b, value=1.0):
    re = np.zeros((d, d))
    im = np.zeros((d, d))
    if np.iscomplexobj(value):
        re[a, b] = value.real
        im[a, b] = value.imag
    else:
        re[a, b] = value
    return re, im


def _xi(d, a, b):
    """E_ab - E_ba with 1-based indices."""
    m = np.zeros((d, d))
    m[a - 1, b - 1] = 1.0
    m[b - 1, a - 1] = -1.0
    return m


def _sym(d, a, b):
    """E_ab + E_ba with 1-based indices (2 E_aa on the diagonal)."""
    m = np.zeros((d, d))
    m[a - 1, b - 1] += 1.0
    m[b - 1, a - 1] += 1.0
    return m


def _check_dim(n, low, name):
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < low:
        raise InvalidDimensionError(f"{name} requires an integer n >= {low}, got {n!r}")
    return int(n)


def build_so_basis(n: int) -> LieBasis:
    """Basis ``xi(a,b) = E_ab - E_ba`` of so(n), ``a < b``, lexicographic.

    Examples
    --------
    >>> so3 = build_so_basis(3)
    >>> so3.labels
    ('xi(1,2)', 'xi(1,3)', 'xi(2,3)')
    """
    n = _check_dim(n, 2, "so(n)")
    zeros = np.zeros((n, n))
    elements, labels = [], []
    for a, b in itertools.combinations(range(1, n + 1), 2):
        elements.append(MatrixElement(_xi(n, a, b), zeros, "so"))
        labels.append(f"xi({a},{b})")
    return LieBasis(elements, labels)


def build_u_basis(n: int) -> LieBasis:
    """Basis of u(n): ``e(i,j) = E_ij - E_ji`` for i < j and ``f(i,j) = i(E_ij + E_ji)`` for i <= j."""
    n = _check_dim(n, 1, "u(n)")
    zeros = np.zeros((n, n))
    elements, labels = [], []
    for a, b in itertools.combinations(range(1, n + 1), 2):
        elements.append(MatrixElement(_xi(n, a, b), zeros, "u"))
        labels.append(f"e({a},{b})")
    for a in range(1, n + 1):
        for b in range(a, n + 1):
            elements.append(MatrixElement(zeros, _sym(n, a, b), "u"))
            labels.append(f"f({a},{b})")
    return LieBasis(elements, labels)


def _sp_blocks(n, tl, tr, bl, br):
    m = np.zeros((2 * n, 2 * n), dtype=complex)
    m[:n, :n], m[:n, n:], m[n:, :n], m[n:, n:] = tl, tr, bl, br
    return m


def _sp_generator(n, letter, a, b):
    z = np.zeros((n, n))
    if letter == "e":
        A = _xi(n, a, b)
        return _sp_blocks(n, A, z, z, A)
    S = _sym(n, a, b)
    if letter == "f":
        return _sp_blocks(n, 1j * S, z, z, -1j * S)
    if letter == "g":
        return _sp_blocks(n, z, -S, S, z)
    if letter == "h":
        return _sp_blocks(n, z, 1j * S, 1j * S, z)
    raise ValueError(letter)


def build_sp_basis(n: int) -> LieBasis:
    """Basis of sp(n) realized by 2n x 2n complex matrices ((X, -conj Y), (Y, conj X)).

    ``e(a,b)`` (a < b) and ``f(a,b), g(a,b), h(a,b)`` (a <= b) are built from
    ``A = E_ab - E_ba`` and ``S = E_ab + E_ba``::

        e = diag(A, A)          f = diag(iS, -iS)
        g = ((0, -S), (S, 0))   h = ((0, iS), (iS, 0))
    """
    n = _check_dim(n, 1, "sp(n)")
    elements, labels = [], []
    for a, b in itertools.combinations(range(1, n + 1), 2):
        elements.append(MatrixElement.from_complex(_sp_generator(n, "e", a, b), "sp"))
        labels.append(f"e({a},{b})")
    for letter in "fgh":
        for a in range(1, n + 1):
            for b in range(a, n + 1):
                elements.append(MatrixElement.from_complex(_sp_generator(n, letter, a, b), "sp"))
                labels.append(f"{letter}({a},{b})")
    return LieBasis(elements, labels)


def sphere_sp_basis(n: int) -> LieBasis:
    """Basis of sp(n+1) adapted to the sphere Sp(n+1)/Sp(n).

    Identical to ``build_sp_basis(n + 1)`` except that ``f(1,1), g(1,1),
    h(1,1)`` are replaced by their halves ``u(1,1), k(1,n+2), mu(1,n+2)``.
    """
    n = _check_dim(n, 1, "sphere-sp")
    base = build_sp_basis(n + 1)
    m = n + 2
    swap = {"f(1,1)": "u(1,1)", "g(1,1)": f"k(1,{m})", "h(1,1)": f"mu(1,{m})"}
    pairs = []
    for label, el in zip(base.labels, base.elements):
        if label in swap:
            pairs.append((swap[label], 0.5 * el))
        else:
            pairs.append((label, el))
    pairs.sort(key=lambda p: _label_key(p[0]))
    return LieBasis([p[1] for p in pairs], [p[0] for p in pairs])


def _label_key(label: str):
    letter, rest = label.split("(")
    a, b = rest.rstrip(")").split(",")
    return (letter, int(a), int(b))


def parse_label(label: str):
    """Split ``"f(1,2)"`` into ``("f", 1, 2)``."""
    try:
        return _label_key(label)
    except ValueError:
        raise InvalidDimensionError(f"malformed basis label {label!r}") from None


# ---------------------------------------------------------------------------
# bracket-lemma validation


@dataclass(frozen=True)
class BracketCheck:
    """One tabulated relation compared with the direct commutator."""

    lhs: str
    expected: str
    computed: str
    match: bool
    repeated_index: bool = False


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of a list of checks; ``passed`` only if every check matched."""

    name: str
    checks: tuple
    notes: tuple = ()

    @property
    def passed(self) -> bool:
        return all(c.match for c in self.checks)

    @property
    def mismatches(self) -> tuple:
        return tuple(c for c in self.checks if not c.match)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "checks": [
                {
                    "lhs": c.lhs,
                    "expected": c.expected,
                    "computed": c.computed,
                    "match": c.match,
                    "repeated_index": c.repeated_index,
                }
                for c in self.checks
            ],
            "notes": list(self.notes),
        }

    def summary(self) -> str:
        lines = [f"{self.name}: {len(self.checks) - len(self.mismatches)}/{len(self.checks)} match"]
        for c in self.mismatches:
            lines.append(f"  MISMATCH {c.lhs}: expected {c.expected}, computed {c.computed}")
        lines.extend(f"  note: {n}" for n in self.notes)
        return "\n".join(lines)


def _format_combo(coeffs: dict) -> str:
    terms = [(lab, v) for lab, v in coeffs.items() if abs(v) > 1e-12]
    if not terms:
        return "0"
    terms.sort(key=lambda t: _label_key(t[0]))
    out = []
    for lab, v in terms:
        r = round(v)
        mag = abs(r) if abs(v - r) < 1e-12 else abs(v)
        sign = "-" if v < 0 else "+"
        body = lab if mag == 1 else f"{mag:g}*{lab}"
        out.append((sign, body))
    text = ("-" if out[0][0] == "-" else "") + out[0][1]
    for sign, body in out[1:]:
        text += f" {sign} {body}"
    return text


class _Signed:
    """Resolve a lemma symbol like e(2,1) to (coefficient, basis label)."""

    def __init__(self, basis, antisymmetric=("e", "xi"), zero_diagonal=("e", "xi")):
        self.basis = basis
        self.anti = antisymmetric
        self.zero_diag = zero_diagonal

    def __call__(self, letter, a, b):
        if a == b and letter in self.zero_diag:
            return {}
        if a > b:
            sign = -1.0 if letter in self.anti else 1.0
            a, b = b, a
        else:
            sign = 1.0
        return {f"{letter}({a},{b})": sign}

    def vector(self, combo):
        v = np.zeros(len(self.basis))
        for lab, c in combo.items():
            v[self.basis.index(lab)] += c
        return v

    def matrix(self, combo):
        return self.basis.expand(self.vector(combo))


def _add(*combos):
    out = {}
    for scale, combo in combos:
        for lab, c in combo.items():
            out[lab] = out.get(lab, 0.0) + scale * c
    return {k: v for k, v in out.items() if abs(v) > 1e-15}


def _compare(basis, sym, lhs_a, lhs_b, expected, name, repeated=False):
    left, right = sym.matrix(lhs_a), sym.matrix(lhs_b)
    direct = basis.coordinates(commutator(left, right))
    want = sym.vector(expected)
    computed = {lab: float(v) for lab, v in zip(basis.labels, direct) if abs(v) > 1e-12}
    ok = bool(np.abs(direct - want).max() <= 1e-12)
    return BracketCheck(name, _format_combo(expected), _format_combo(computed), ok, repeated)


def _so_lemma(basis):
    n = basis.d
    sym = _Signed(basis)
    checks = []
    for a, b, c in itertools.permutations(range(1, n + 1), 3):
        x, y = sym("xi", a, b), sym("xi", b, c)
        checks.append(_compare(basis, sym, x, y, sym("xi", a, c), f"[xi({a},{b}), xi({b},{c})]"))
    for a, b, c, d in itertools.permutations(range(1, n + 1), 4):
        if a < b and c < d and (a, b) < (c, d):
            checks.append(_compare(basis, sym, sym("xi", a, b), sym("xi", c, d), {}, f"[xi({a},{b}), xi({c},{d})]"))
    return checks


def _u_lemma(basis):
    n = basis.d
    sym = _Signed(basis, antisymmetric=("e",), zero_diagonal=("e",))
    delta = lambda p, q: 1.0 if p == q else 0.0  # noqa: E731
    checks = []
    rng = range(1, n + 1)
    for i, j, k, l in itertools.product(rng, repeat=4):
        repeated = len({i, j, k, l}) < 4
        ee = _add(
            (delta(j, k), sym("e", i, l)),
            (-delta(i, l), sym("e", k, j)),
            (-delta(i, k), sym("e", j, l)),
            (-delta(j, l), sym("e", i, k)),
        )
        ff = _add(
            (-delta(j, k), sym("e", i, l)),
            (delta(i, l), sym("e", k, j)),
            (-delta(i, k), sym("e", j, l)),
            (-delta(j, l), sym("e", i, k)),
        )
        fe = _add(
            (delta(j, k), sym("f", i, l)),
            (-delta(i, l), sym("f", k, j)),
            (-delta(i, k), sym("f", j, l)),
            (-delta(j, l), sym("f", i, k)),
        )
        for (x, y), expected in (((("e", "e")), ee), ((("f", "f")), ff), ((("f", "e")), fe)):
            left, right = sym(x, i, j), sym(y, k, l)
            if not left or not right:
                continue
            name = f"[{x}({i},{j}), {y}({k},{l})]"
            checks.append(_compare(basis, sym, left, right, expected, name, repeated))
    return checks


_SP_TABLE = {
    ("e", "e"): (1, "e"),
    ("e", "f"): (1, "f"),
    ("e", "g"): (1, "g"),
    ("e", "h"): (1, "h"),
    ("f", "f"): (-1, "e"),
    ("f", "g"): (-1, "h"),
    ("f", "h"): (1, "g"),
    ("g", "g"): (-1, "e"),
    ("g", "h"): (-1, "f"),
    ("h", "h"): (-1, "e"),
}


def _sp_lemma(basis):
    n = basis.d // 2
    sym = _Signed(basis, antisymmetric=("e",), zero_diagonal=("e",))
    checks = []
    for (x, y), (sign, z) in _SP_TABLE.items():
        for a, b, c in itertools.permutations(range(1, n + 1), 3):
            expected = {k: sign * v for k, v in sym(z, a, c).items()}
            checks.append(_compare(basis, sym, sym(x, a, b), sym(y, b, c), expected, f"[{x}({a},{b}), {y}({b},{c})]"))
    return checks


def _sphere_sp_lemma(basis):
    n = basis.d // 2 - 1
    m = n + 2
    sym = _Signed(basis, antisymmetric=("e",), zero_diagonal=("e",))
    u, k, mu = {"u(1,1)": 1.0}, {f"k(1,{m})": 1.0}, {f"mu(1,{m})": 1.0}
    checks = [
        _compare(basis, sym, u, k, {f"mu(1,{m})": -2.0}, f"[u(1,1), k(1,{m})]"),
        _compare(basis, sym, u, mu, {f"k(1,{m})": 2.0}, f"[u(1,1), mu(1,{m})]"),
    ]
    table = [
        ("u", "e", 1, "f"),
        ("u", "f", -1, "e"),
        ("u", "g", -1, "h"),
        ("u", "h", 1, "g"),
        ("e", "k", -1, "g"),
        ("e", "mu", -1, "h"),
        ("f", "k", -1, "h"),
        ("f", "mu", 1, "g"),
        ("g", "k", 1, "e"),
        ("g", "mu", -1, "f"),
        ("h", "k", 1, "f"),
        ("h", "mu", 1, "e"),
    ]
    special = {"u": u, "k": k, "mu": mu}
    for b in range(2, n + 2):
        for x, y, sign, z in table:
            left = special.get(x) or sym(x, 1, b)
            right = special.get(y) or sym(y, 1, b)
            lx = "u(1,1)" if x == "u" else f"{x}(1,{b})"
            ry = f"{y}(1,{m})" if y in ("k", "mu") else f"{y}(1,{b})"
            expected = {f"{z}(1,{b})": float(sign)}
            checks.append(_compare(basis, sym, left, right, expected, f"[{lx}, {ry}]"))
    return checks


_LEMMAS = {
    "so-lemma": ("so", _so_lemma),
    "u-lemma": ("u", _u_lemma),
    "sp-lemma": ("sp", _sp_lemma),
    "sphere-sp-lemma": ("sp", _sphere_sp_lemma),
}


def validate_bracket_lemma(basis: LieBasis, lemma: str) -> ValidationReport:
    """Compare a tabulated bracket relation family with direct commutators.

    Matrix arithmetic is authoritative; disagreements are reported as
    mismatches and never patched.

    Parameters
    ----------
    basis : LieBasis
        Built by the constructor matching ``lemma``.
    lemma : {"so-lemma", "u-lemma", "sp-lemma", "sphere-sp-lemma"}
    """
    if lemma not in _LEMMAS:
        raise InvalidDimensionError(f"unknown lemma {lemma!r}; choose from {sorted(_LEMMAS)}")
    tag, fn = _LEMMAS[lemma]
    if basis.tag != tag:
        raise IncompatibleElementsError(f"{lemma} needs a {tag} basis, got {basis.tag}")
    checks = tuple(fn(basis))
    notes = []
    bad = [c for c in checks if not c.match]
    if bad:
        rep = sum(c.repeated_index for c in bad)
        notes.append(f"{len(bad)} mismatches ({rep} with repeated indices); matrix commutators are authoritative")
    return ValidationReport(lemma, checks, tuple(notes))
