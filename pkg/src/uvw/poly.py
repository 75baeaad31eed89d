"""Sparse multivariate (Laurent) polynomials and rational functions.

A ``Poly`` is a map from integer exponent tuples to nonzero coefficients over
an ordered tuple of variable names.  Arithmetic is exact.  ``RatFn`` keeps a
numerator/denominator pair; equality is tested by cross-multiplication and
``normalized()`` removes the gcd (via sympy's sparse polynomial rings).
"""
from fractions import Fraction
from functools import reduce
from math import gcd


class Poly:
    __slots__ = ("vars", "terms")

    def __init__(self, vars, terms=None):
        self.vars = tuple(vars)
        t = {}
        if terms:
            for e, c in (terms.items() if isinstance(terms, dict) else terms):
                if c:
                    e = tuple(e)
                    t[e] = t.get(e, 0) + c
        self.terms = {e: c for e, c in t.items() if c}

    # ----- constructors ------------------------------------------------------
    @classmethod
    def const(cls, vars, c):
        return cls(vars, {(0,) * len(vars): c} if c else {})

    @classmethod
    def one(cls, vars):
        return cls.const(vars, 1)

    @classmethod
    def zero(cls, vars):
        return cls(vars)

    @classmethod
    def var(cls, vars, i, power=1):
        e = [0] * len(vars)
        e[i] = power
        return cls(vars, {tuple(e): 1})

    @classmethod
    def monomial(cls, vars, exp, coef=1):
        return cls(vars, {tuple(exp): coef})

    # ----- queries -----------------------------------------------------------
    @property
    def nvars(self):
        return len(self.vars)

    def is_zero(self):
        return not self.terms

    def is_const(self):
        return all(not any(e) for e in self.terms)

    def const_term(self):
        return self.terms.get((0,) * self.nvars, 0)

    def coeff(self, exp):
        return self.terms.get(tuple(exp), 0)

    def min_exponent(self, i):
        return min((e[i] for e in self.terms), default=0)

    def max_exponent(self, i):
        return max((e[i] for e in self.terms), default=0)

    def is_monomial(self):
        return len(self.terms) == 1

    def has_nonneg_exponents(self):
        return all(x >= 0 for e in self.terms for x in e)

    def coefficients_nonnegative(self):
        return all(c > 0 for c in self.terms.values())

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: tuple(-x for x in t[0]))

    # ----- arithmetic --------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.vars != self.vars:
                raise ValueError("variable sets differ")
            return other
        return Poly.const(self.vars, other)

    def __add__(self, other):
        other = self._coerce(other)
        t = dict(self.terms)
        for e, c in other.terms.items():
            t[e] = t.get(e, 0) + c
        return Poly(self.vars, t)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return Poly(self.vars, {e: c * other for e, c in self.terms.items()})
        other = self._coerce(other)
        t = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                t[e] = t.get(e, 0) + c1 * c2
        return Poly(self.vars, t)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            if self.is_monomial():
                (e, c), = self.terms.items()
                if abs(c) != 1:
                    raise ValueError("negative power of non-unit monomial")
                sign = c if (-k) % 2 else 1
                return Poly(self.vars, {tuple(x * k for x in e): sign})
            raise ValueError("negative power of a polynomial")
        result = Poly.one(self.vars)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.vars == other.vars and self.terms == other.terms
        return self.terms == Poly.const(self.vars, other).terms

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    def shift(self, exp):
        """Multiply by the monomial with exponent ``exp`` (may be negative)."""
        return Poly(self.vars, {tuple(a + b for a, b in zip(e, exp)): c for e, c in self.terms.items()})

    def content(self):
        vals = [abs(int(c)) for c in self.terms.values() if Fraction(c).denominator == 1]
        if len(vals) != len(self.terms):
            return 1
        return reduce(gcd, vals, 0) or 1

    def divide_exact_const(self, k):
        return Poly(self.vars, {e: _exact_div(c, k) for e, c in self.terms.items()})

    # ----- substitution and evaluation ----------------------------------------
    def evaluate(self, point):
        total = 0
        for e, c in self.terms.items():
            m = c
            for x, k in zip(point, e):
                if k:
                    m = m * x ** k
            total += m
        return total

    def substitute(self, images, target_vars):
        """Replace variable i by the Poly images[i] (over ``target_vars``)."""
        out = Poly.zero(target_vars)
        cache = {}
        for e, c in self.terms.items():
            m = Poly.const(target_vars, c)
            for i, k in enumerate(e):
                if k:
                    key = (i, k)
                    if key not in cache:
                        cache[key] = images[i] ** k
                    m = m * cache[key]
            out = out + m
        return out

    def substitute_monomials(self, images, target_vars):
        """Monomial substitution: variable i -> monomial with exponent images[i]."""
        t = {}
        n = len(target_vars)
        for e, c in self.terms.items():
            new = [0] * n
            for i, k in enumerate(e):
                if k:
                    for j, x in enumerate(images[i]):
                        new[j] += k * x
            new = tuple(new)
            t[new] = t.get(new, 0) + c
        return Poly(target_vars, t)

    def embed(self, target_vars, positions):
        """Re-express over target_vars, variable i going to target position positions[i]."""
        n = len(target_vars)
        t = {}
        for e, c in self.terms.items():
            new = [0] * n
            for i, k in enumerate(e):
                new[positions[i]] += k
            t[tuple(new)] = c
        return Poly(target_vars, t)

    # ----- formatting ----------------------------------------------------------
    def to_json(self):
        return {"vars": list(self.vars),
                "terms": [{"exp": list(e), "coef": _json_num(c)} for e, c in self.sorted_terms()]}

    @classmethod
    def from_json(cls, data):
        return cls(data["vars"], {tuple(t["exp"]): Fraction(t["coef"]) if isinstance(t["coef"], str)
                                  else t["coef"] for t in data["terms"]})

    def format(self, names=None, latex=False, times=""):
        names = names or self.vars
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = []
            for name, k in zip(names, e):
                if k == 0:
                    continue
                if k == 1:
                    mono.append(name)
                else:
                    mono.append(f"{name}^{{{k}}}" if latex else f"{name}^{k}")
            body = times.join(mono)
            if not body:
                s = str(abs(c))
            elif abs(c) == 1:
                s = body
            else:
                s = f"{abs(c)}{times}{body}"
            parts.append(("-" if c < 0 else "+", s))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, s in parts[1:]:
            out += f" {sign} {s}"
        return out

    def __repr__(self):
        return self.format(times="*")


def _exact_div(c, k):
    q = Fraction(c) / k
    return int(q) if q.denominator == 1 else q


def _json_num(c):
    c = Fraction(c)
    return int(c) if c.denominator == 1 else str(c)


def lcm_monomial_shift(*polys):
    """Exponent shift that makes every listed polynomial a true polynomial."""
    n = polys[0].nvars
    return tuple(max(0, -min((p.min_exponent(i) for p in polys if p.terms), default=0)) for i in range(n))


class RatFn:
    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if den is None:
            den = Poly.one(num.vars)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        self.num, self.den = num, den

    @property
    def vars(self):
        return self.num.vars

    @classmethod
    def const(cls, vars, c):
        return cls(Poly.const(vars, c))

    def __mul__(self, other):
        if isinstance(other, RatFn):
            return RatFn(self.num * other.num, self.den * other.den)
        return RatFn(self.num * other, self.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, RatFn):
            return RatFn(self.num * other.den, self.den * other.num)
        return RatFn(self.num, self.den * other)

    def __add__(self, other):
        if not isinstance(other, RatFn):
            other = RatFn(Poly.const(self.vars, 1) * other) if not isinstance(other, Poly) else RatFn(other)
        if self.den == other.den:
            return RatFn(self.num + other.num, self.den)
        return RatFn(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFn(-self.num, self.den)

    def __sub__(self, other):
        return self + (-other if isinstance(other, RatFn) else -1 * other)

    def __rsub__(self, other):
        return (-self) + other

    def __pow__(self, k):
        if k >= 0:
            return RatFn(self.num ** k, self.den ** k)
        return RatFn(self.den ** (-k), self.num ** (-k))

    def __eq__(self, other):
        if not isinstance(other, RatFn):
            other = RatFn(other if isinstance(other, Poly) else Poly.const(self.vars, other))
        return (self.num * other.den - other.num * self.den).is_zero()

    def __hash__(self):
        raise TypeError("RatFn is unhashable")

    def is_zero(self):
        return self.num.is_zero()

    def evaluate(self, point):
        return self.num.evaluate(point) / self.den.evaluate(point)

    def normalized(self):
        num, den = cancel(self.num, self.den)
        return RatFn(num, den)

    def format(self, names=None, latex=False):
        n = self.num.format(names, latex)
        d = self.den.format(names, latex)
        if d == "1":
            return n
        if latex:
            return f"\\frac{{{n}}}{{{d}}}"
        return f"({n})/({d})"

    def to_json(self):
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    def __repr__(self):
        return self.format()


def _to_sympy_ring(vars):
    from sympy import QQ
    from sympy.polys.rings import ring
    names = [f"x{i}" for i in range(len(vars))] or ["x0"]
    return ring(",".join(names), QQ)[0]


def cancel(num, den):
    """Remove gcd(num, den); normalize content and make den's lex-least term positive."""
    shift = lcm_monomial_shift(num, den)
    num, den = num.shift(shift), den.shift(shift)
    n = num.nvars
    if n == 0:
        q = Fraction(num.const_term()) / Fraction(den.const_term())
        return Poly.const(num.vars, q.numerator), Poly.const(num.vars, q.denominator)
    R = _to_sympy_ring(num.vars)
    def conv(p):
        return R.from_dict({e: R.domain.convert(c) for e, c in p.terms.items()})
    a, b = conv(num), conv(den)
    g = a.gcd(b)
    a, b = a.quo(g), b.quo(g)
    # strip common monomial factors the gcd may have left with Laurent shifts
    na = Poly(num.vars, {tuple(e): Fraction(int(c.numerator), int(c.denominator)) for e, c in a.items()})
    nb = Poly(num.vars, {tuple(e): Fraction(int(c.numerator), int(c.denominator)) for e, c in b.items()})
    common = tuple(min(na.min_exponent(i), nb.min_exponent(i)) for i in range(n))
    na, nb = na.shift(tuple(-x for x in common)), nb.shift(tuple(-x for x in common))
    # integral content 1, and lex-least denominator term positive
    dens = [Fraction(c).denominator for c in list(na.terms.values()) + list(nb.terms.values())]
    l = reduce(lambda x, y: x * y // gcd(x, y), dens, 1)
    na, nb = na * l, nb * l
    cont = reduce(gcd, [abs(int(c)) for c in list(na.terms.values()) + list(nb.terms.values())], 0) or 1
    least = min(nb.terms)
    sgn = -1 if nb.terms[least] < 0 else 1
    na = Poly(num.vars, {e: sgn * int(c) // cont for e, c in na.terms.items()})
    nb = Poly(num.vars, {e: sgn * int(c) // cont for e, c in nb.terms.items()})
    return na, nb
