"""Polynomial ring basics: orders, arithmetic, calculus, printing."""

from fractions import Fraction

import pytest

from corrforms.polyring import PolyRing, format_poly
from corrforms.scalars import QQ, make_extension


def ring2(order="degrevlex"):
    return PolyRing(QQ, ("x", "y"), order)


def test_leading_degrevlex():
    R = ring2()
    x, y = R.var("x"), R.var("y")
    p = x ** 2 * y + x * y ** 2 + y ** 3
    mono, _ = p.leading()
    assert mono == (2, 1)  # x^2*y beats x*y^2 beats y^3


def test_leading_lex():
    R = ring2("lex")
    x, y = R.var("x"), R.var("y")
    p = y ** 5 + x
    mono, _ = p.leading()
    assert mono == (1, 0)


def test_arithmetic():
    R = ring2()
    x, y = R.var("x"), R.var("y")
    p = (x + y) ** 2
    assert p == x ** 2 + 2 * x * y + y ** 2
    assert (p - p).is_zero()
    assert (x + 1) * (x - 1) == x ** 2 - 1
    assert x * Fraction(1, 2) == R.const(Fraction(1, 2)) * x


def test_derivative():
    R = ring2()
    x, y = R.var("x"), R.var("y")
    p = x ** 3 * y + y ** 2
    assert p.derivative(0) == 3 * x ** 2 * y
    assert p.derivative(1) == x ** 3 + 2 * y


def test_subs_and_evaluate():
    R = ring2()
    x, y = R.var("x"), R.var("y")
    S = PolyRing(QQ, ("t",))
    t = S.var("t")
    p = x ** 2 + y
    assert p.subs([t, t ** 3], S) == t ** 2 + t ** 3
    val = p.evaluate([QQ.from_fraction(2), QQ.from_fraction(3)])
    assert val.as_fraction() == 7


def test_cast_by_name():
    R = PolyRing(QQ, ("x",))
    S = PolyRing(QQ, ("u", "x"))
    p = R.var("x") ** 2 + 1
    q = p.cast(S)
    assert q.degree_in(1) == 2
    assert q.degree_in(0) == 0


def test_format_poly():
    R = ring2()
    x, y = R.var("x"), R.var("y")
    assert format_poly(x ** 2 * y + x * y ** 2) == "x^2*y + x*y^2"
    assert format_poly(-x + 3) == "-x + 3"
    assert format_poly(R.const(Fraction(1, 2)) * x) == "1/2*x"
    assert format_poly(R.zero) == "0"
    assert format_poly(2 * x - 5 * y) == "2*x - 5*y"


def test_format_extension_coeff():
    F = make_extension([1, 1, 1])
    R = PolyRing(F, ("x",))
    x = R.var("x")
    w = R.const(F.gen())
    assert format_poly(w * x) == "w*x"
    assert format_poly((w + 1) * x) == "(w + 1)*x"


def test_generator_shadowing_rejected():
    F = make_extension([1, 1, 1])
    with pytest.raises(ValueError):
        PolyRing(F, ("w", "x"))


def test_hash_and_eq():
    R = ring2()
    x, y = R.var("x"), R.var("y")
    a = (x + y) ** 2
    b = x ** 2 + 2 * x * y + y ** 2
    assert a == b
    assert hash(a) == hash(b)
    assert len({a, b}) == 1
