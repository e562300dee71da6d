"""Parsing of the small rational expressions used in data files.

Expressions are ordinary arithmetic over named coefficients, for example
``"(-a14*a23 + a13*a24)/a34"``.  They are parsed with :mod:`ast` into a
polynomial numerator over a monomial denominator.

Data files may also use index templates:

* ``"a1{b} | b=3..k"`` expands to a list of names, one per value of ``b``.
* ``"sum(a1{b}*a2{b} | b=3..k-1)"`` inside an expression expands to a sum
  (``0`` when the range is empty).
* ``{expr}`` placeholders hold integer arithmetic over bound names.
* ``a[1,{b}]`` is a coefficient name; it becomes ``a13`` or ``a1_10``.
"""

from __future__ import annotations

import ast
import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import CatalogSchemaError
from .homspace import variable_name

__all__ = ["Rational", "parse_rational", "expand_names", "expand_expr", "int_eval"]

Monomial = tuple  # sorted tuple of variable names


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(sorted(a + b))


def _poly_mul(p: dict, q: dict) -> dict:
    out = {}
    for ma, ca in p.items():
        for mb, cb in q.items():
            m = _mono_mul(ma, mb)
            out[m] = out.get(m, 0) + ca * cb
    return {m: c for m, c in out.items() if c != 0}


def _poly_add(p: dict, q: dict, sign=1) -> dict:
    out = dict(p)
    for m, c in q.items():
        out[m] = out.get(m, 0) + sign * c
    return {m: c for m, c in out.items() if c != 0}


@dataclass(frozen=True)
class Rational:
    """``num / den`` with ``num`` a polynomial and ``den`` a monomial.

    ``num`` maps sorted variable tuples to ``Fraction`` coefficients.
    """

    num: dict
    den: Monomial = ()

    def variables(self) -> set:
        out = set(self.den)
        for m in self.num:
            out.update(m)
        return out

    def evaluate(self, values) -> float:
        total = 0.0
        for mono, coeff in self.num.items():
            term = float(coeff)
            for v in mono:
                term *= values[v]
            total += term
        den = 1.0
        for v in self.den:
            den *= values[v]
        return total / den

    def is_zero(self) -> bool:
        return not self.num

    def __str__(self):
        if not self.num:
            return "0"
        parts = []
        for mono, c in sorted(self.num.items()):
            body = "*".join(mono) if mono else "1"
            mag = abs(c)
            if mono and mag != 1:
                body = f"{mag}*{body}"
            elif not mono:
                body = str(mag)
            parts.append(("-" if c < 0 else "+", body))
        text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for s, b in parts[1:]:
            text += f" {s} {b}"
        if self.den:
            if len(parts) > 1:
                text = f"({text})"
            den = "*".join(self.den)
            text += f"/({den})" if len(self.den) > 1 else f"/{den}"
        return text


class _Builder(ast.NodeVisitor):
    def __init__(self, text):
        self.text = text

    def fail(self, why):
        raise CatalogSchemaError(f"cannot parse expression {self.text!r}: {why}")

    def visit_Expression(self, node):
        return self.visit(node.body)

    def visit_Constant(self, node):
        if isinstance(node.value, bool) or not isinstance(node.value, (int, float)):
            self.fail("only numeric constants are allowed")
        val = Fraction(node.value)
        return ({(): val} if val else {}, {(): Fraction(1)})

    def visit_Name(self, node):
        return ({(node.id,): Fraction(1)}, {(): Fraction(1)})

    def visit_UnaryOp(self, node):
        num, den = self.visit(node.operand)
        if isinstance(node.op, ast.USub):
            return ({m: -c for m, c in num.items()}, den)
        if isinstance(node.op, ast.UAdd):
            return (num, den)
        self.fail("unsupported unary operator")

    def visit_BinOp(self, node):
        ln, ld = self.visit(node.left)
        rn, rd = self.visit(node.right)
        if isinstance(node.op, (ast.Add, ast.Sub)):
            sign = 1 if isinstance(node.op, ast.Add) else -1
            if ld == rd:
                return (_poly_add(ln, rn, sign), ld)
            return (_poly_add(_poly_mul(ln, rd), _poly_mul(rn, ld), sign), _poly_mul(ld, rd))
        if isinstance(node.op, ast.Mult):
            return (_poly_mul(ln, rn), _poly_mul(ld, rd))
        if isinstance(node.op, ast.Div):
            if not rn:
                self.fail("division by zero")
            return (_poly_mul(ln, rd), _poly_mul(ld, rn))
        self.fail("unsupported operator")

    def generic_visit(self, node):
        self.fail(f"unsupported syntax {type(node).__name__}")


def parse_rational(text: str) -> Rational:
    """Parse an expression whose denominator is a single monomial.

    Examples
    --------
    >>> str(parse_rational("a23*(a14*a15 + a24*a25)/(a24*a34)"))
    '(a14*a15*a23 + a23*a24*a25)/(a24*a34)'
    """
    try:
        tree = ast.parse(text.strip(), mode="eval")
    except SyntaxError as exc:
        raise CatalogSchemaError(f"cannot parse expression {text!r}: {exc.msg}") from None
    num, den = _Builder(text).visit(tree)
    if len(den) != 1:
        raise CatalogSchemaError(f"denominator of {text!r} is not a monomial")
    (mono, coeff), = den.items()
    num = {m: c / coeff for m, c in num.items()}
    if not num:
        return Rational({}, ())
    return Rational(num, tuple(sorted(mono)))


# ---------------------------------------------------------------------------
# templates

_INT_NODES = (ast.Expression, ast.BinOp, ast.UnaryOp, ast.Add, ast.Sub, ast.Mult, ast.USub, ast.UAdd, ast.Name, ast.Load)


def int_eval(text: str, env: dict) -> int:
    """Evaluate integer arithmetic (``+ - *``) over the names in ``env``."""
    try:
        tree = ast.parse(text.strip(), mode="eval")
    except SyntaxError:
        raise CatalogSchemaError(f"bad index expression {text!r}") from None
    for node in ast.walk(tree):
        if isinstance(node, ast.Constant):
            if not isinstance(node.value, int) or isinstance(node.value, bool):
                raise CatalogSchemaError(f"bad index expression {text!r}")
        elif not isinstance(node, _INT_NODES):
            raise CatalogSchemaError(f"bad index expression {text!r}")
        if isinstance(node, ast.Name) and node.id not in env:
            raise CatalogSchemaError(f"unbound index {node.id!r} in {text!r}")
    return int(eval(compile(tree, "<index>", "eval"), {"__builtins__": {}}, dict(env)))


_PLACEHOLDER = re.compile(r"\{([^{}]+)\}")
_RANGE = re.compile(r"^(?P<body>.*?)\s*\|\s*(?P<var>[A-Za-z_]\w*)\s*=\s*(?P<lo>[^.]+?)\s*\.\.\s*(?P<hi>.+?)\s*$")
_SUM = re.compile(r"sum\(([^()]*(?:\([^()]*\))*[^()]*)\)")


_NAME = re.compile(r"([A-Za-z]+)\[(\d+),(\d+)\]")


def _substitute(text: str, env: dict) -> str:
    text = _PLACEHOLDER.sub(lambda m: str(int_eval(m.group(1), env)), text)
    return _NAME.sub(lambda m: variable_name(m.group(1), int(m.group(2)), int(m.group(3))), text)


def _range(match, env):
    lo = int_eval(match.group("lo"), env)
    hi = int_eval(match.group("hi"), env)
    return match.group("body"), match.group("var"), range(lo, hi + 1)


def expand_names(item: str, env: dict) -> list:
    """Expand ``"a1{b} | b=3..k"`` into concrete names."""
    m = _RANGE.match(item)
    if not m:
        return [_substitute(item, env)]
    body, var, rng = _range(m, env)
    return [_substitute(body, {**env, var: v}) for v in rng]


def expand_expr(text: str, env: dict) -> str:
    """Expand ``sum(... | b=lo..hi)`` blocks and ``{...}`` placeholders."""

    def repl(match):
        inner = _RANGE.match(match.group(1))
        if not inner:
            raise CatalogSchemaError(f"sum(...) needs a '| var=lo..hi' range in {text!r}")
        body, var, rng = _range(inner, env)
        terms = [_substitute(body, {**env, var: v}) for v in rng]
        return "(" + " + ".join(terms) + ")" if terms else "0"

    return _substitute(_SUM.sub(repl, text), env)
