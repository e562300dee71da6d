from fractions import Fraction

import pytest

from equigeodesic.errors import CatalogSchemaError
from equigeodesic.polynomial import expand_expr, expand_names, int_eval, parse_rational


def test_parse_and_evaluate():
    r = parse_rational("a23*(a14*a15 + a24*a25)/(a24*a34)")
    assert r.den == ("a24", "a34")
    vals = dict(a23=2.0, a14=1.0, a15=3.0, a24=0.5, a25=-1.0, a34=4.0)
    assert r.evaluate(vals) == pytest.approx(2 * (3 - 0.5) / 2)


def test_string_form():
    assert str(parse_rational("-(a12*a25 + a13*a35)/a14")) == "(-a12*a25 - a13*a35)/a14"
    assert str(parse_rational("0")) == "0"
    assert parse_rational("a - a").is_zero()


def test_constant_denominator_folds():
    r = parse_rational("a12/2")
    assert r.den == () and r.num == {("a12",): Fraction(1, 2)}


@pytest.mark.parametrize("bad", ["a12/(a13 + a14)", "a12**2", "f(a)", "a12 +", "'x'"])
def test_rejects(bad):
    with pytest.raises(CatalogSchemaError):
        parse_rational(bad)


def test_templates():
    assert expand_names("a[1,{b}] | b=3..k", {"k": 5}) == ["a13", "a14", "a15"]
    assert expand_names("a[2,{b}] | b=k+1..n", {"k": 5, "n": 5}) == []
    assert expand_names("a[1,{n}]", {"n": 11}) == ["a1_11"]
    assert expand_expr("-sum(a[1,{b}]*a[2,{b}] | b=3..k-1)/a[1,{k}]", {"k": 3}) == "-0/a13"
    assert expand_expr("sum(a[1,{b}]*a[2,{b}] | b=3..4)", {}) == "(a13*a23 + a14*a24)"


def test_int_eval_is_restricted():
    assert int_eval("n-k+4", {"n": 7, "k": 5}) == 6
    with pytest.raises(CatalogSchemaError):
        int_eval("__import__('os')", {})
    with pytest.raises(CatalogSchemaError):
        int_eval("m+1", {})
