from fractions import Fraction

from uvw.poly import Poly, RatFn

V = ("y1", "y2")


def test_arithmetic_and_evaluation():
    y1, y2 = Poly.var(V, 0), Poly.var(V, 1)
    p = (1 + y1) * (1 + y2)
    assert p == 1 + y1 + y2 + y1 * y2
    assert p.evaluate([2, 3]) == 12
    assert (p - p).is_zero()
    assert (y1 ** 3).max_exponent(0) == 3


def test_rational_functions_compare_by_cross_multiplication():
    y1 = Poly.var(V, 0)
    one = Poly.one(V)
    r = RatFn(one - y1 * y1, one + y1)
    assert r == RatFn(one - y1)
    assert r.normalized().den == one
    assert RatFn(y1, one + y1).evaluate([Fraction(1, 2), 0]) == Fraction(1, 3)


def test_formatting_is_stable():
    y1, y2 = Poly.var(V, 0), Poly.var(V, 1)
    p = 2 * y1 * y2 + 1 + y2
    assert p.format() == p.format()
    assert p.format(latex=True).count("y") == 3
