"""u-equations, F-hat polynomials and the rational solutions v_X.

All identities are checked twice: once by exact expansion in the Poly engine
and once by evaluation at a few seeded random rational points.
"""
import random
from fractions import Fraction

from . import modules as md
from .catalog import Report
from .errors import NegativeExponent
from .grassmann import euler_characteristics, f_polynomial
from .poly import Poly, RatFn

SPOT_POINTS = 5


# ----- generators ---------------------------------------------------------------

def _uvars(c):
    return c.uvars


def compat_monomial(c, X):
    """prod_Y u_Y^{c(X, Y)}."""
    return Poly.monomial(c.uvars, [c.compat[X][Y] for Y in range(c.size)])


def u_equation(c, X):
    """u_X + prod_Y u_Y^{c(X,Y)} - 1."""
    X = c.index(X)
    return Poly.var(c.uvars, X) + compat_monomial(c, X) - 1


def u_equations(c):
    return [u_equation(c, X) for X in range(c.size)]


def _hom_into(c, M):
    """Exponent vector V -> hom(H0 V, M) for a module M."""
    return [0 if c.is_shift[V] else md.hom_dim(c.h0[V], M) for V in range(c.size)]


def fhat_module(c, M):
    """F-hat of an arbitrary module M over the catalog's algebra."""
    V = c.uvars
    if M.is_zero():
        return Poly.one(V)
    hom = _hom_into(c, M)
    terms = {}
    for d, chi in euler_characteristics(M).items():
        e = []
        for k in range(c.size):
            x = hom[k] - sum(a * b for a, b in zip(c.g[k], d))
            if x < 0:
                raise NegativeExponent(f"exponent of u_{c.names[k]} is {x}")
            e.append(x)
        terms[tuple(e)] = terms.get(tuple(e), 0) + chi
    return Poly(V, terms)


_FHAT = {}


def fhat(c, M):
    """F-hat of the module object M (Sigma P_i gives 1)."""
    M = c.index(M)
    key = (id(c), M)
    got = _FHAT.get(key)
    if got is not None and got[0] is c:
        return got[1]
    p = fhat_module(c, c.h0[M])
    _FHAT[key] = (c, p)
    return p


def fhat_multiset(c, ms):
    out = Poly.one(c.uvars)
    for k, m in ms.items():
        out = out * fhat(c, k) ** m
    return out


def psi_images(c):
    """y_i -> prod_V u_V^{-g(V)_i}, as exponent vectors over the u-variables."""
    return [[-c.g[k][i] for k in range(c.size)] for i in range(c.n)]


def psi_substitute(p, c):
    return p.substitute_monomials(psi_images(c), c.uvars)


def fhat_via_psi(c, M):
    M = c.index(M)
    hom = _hom_into(c, c.h0[M])
    return psi_substitute(c.fpoly[M], c).shift(hom)


# ----- v-parametrization -----------------------------------------------------------

def y_monomial(c, d):
    return Poly.monomial(c.yvars, d)


def v_rational(c, X, normalize=True):
    """v_X = (F_X F_tauX - y^d(X)) / (F_X F_tauX)."""
    X = c.index(X)
    den = c.fpoly[X] * c.tau_fpoly[X]
    r = RatFn(den - y_monomial(c, c.d[X]), den)
    return r.normalized() if normalize else r


def v_all(c, normalize=False):
    return [v_rational(c, X, normalize) for X in range(c.size)]


def v_case_check(c, X):
    """The uniform formula agrees with the projective and shifted-projective cases."""
    X = c.index(X)
    v = v_rational(c, X, normalize=False)
    if c.is_projective[X]:
        R, _ = md.radical(c.h0[X])
        return v == RatFn(f_polynomial(R) if not R.is_zero() else Poly.one(c.yvars), c.fpoly[X])
    if c.is_shift[X]:
        i = c.objects[X].minus[0]
        I = md.injective_module(c.algebra, i)
        Q = md.quotient_by_socle_simple(I)
        FQ = f_polynomial(Q) if not Q.is_zero() else Poly.one(c.yvars)
        return v == RatFn(Poly.var(c.yvars, i) * FQ, f_polynomial(I))
    return True


def substitute_v(p, c, vs=None):
    """p(u -> v) as a pair (numerator, common denominator)."""
    vs = vs or v_all(c)
    N = c.size
    maxe = [p.max_exponent(k) if p.terms else 0 for k in range(N)]
    mine = [p.min_exponent(k) if p.terms else 0 for k in range(N)]
    powc = {}

    def pw(which, k, e):
        key = (which, k, e)
        if key not in powc:
            base = vs[k].num if which == 0 else vs[k].den
            powc[key] = base ** e
        return powc[key]

    total = Poly.zero(c.yvars)
    for e, coef in p.terms.items():
        term = Poly.const(c.yvars, coef)
        for k in range(N):
            lo = min(0, mine[k])
            # v^x = N^x / D^x ; shift every exponent into [lo, maxe] -> N^(x-lo) D^(maxe-x) scaled
            if e[k] - lo:
                term = term * pw(0, k, e[k] - lo)
            if maxe[k] - e[k]:
                term = term * pw(1, k, maxe[k] - e[k])
        total = total + term
    den = Poly.one(c.yvars)
    for k in range(N):
        lo = min(0, mine[k])
        if maxe[k]:
            den = den * pw(1, k, maxe[k])
        if lo:
            den = den * pw(0, k, -lo)
    return total, den


class FactorTable:
    """Shared irreducible factors of the v's; a v becomes (constant, {factor: exponent})."""

    def __init__(self, vars):
        self.vars = vars
        self.polys = []
        self.index = {}
        self._pow = {}

    def _key(self, p):
        return frozenset(p.terms.items())

    def factor(self, p):
        import sympy
        syms = sympy.symbols(" ".join(f"x{i}" for i in range(len(self.vars))) + " _pad")[:len(self.vars)]
        expr = sympy.Add(*[sympy.Integer(c.numerator) / c.denominator * sympy.Mul(*[s ** k for s, k in zip(syms, e)])
                           if isinstance(c, Fraction) else c * sympy.Mul(*[s ** k for s, k in zip(syms, e)])
                           for e, c in p.terms.items()])
        const, facs = sympy.factor_list(expr, *syms)
        const = Fraction(int(sympy.numer(const)), int(sympy.denom(const)))
        out = {}
        for f, k in facs:
            fp = sympy.Poly(f, *syms)
            q = Poly(self.vars, {tuple(m): Fraction(int(sympy.numer(c)), int(sympy.denom(c)))
                                 for m, c in fp.terms()})
            key = self._key(q)
            if key not in self.index:
                self.index[key] = len(self.polys)
                self.polys.append(q)
            j = self.index[key]
            out[j] = out.get(j, 0) + k
        return const, out

    def ratfn(self, r):
        cn, fn = self.factor(r.num)
        cd, fd = self.factor(r.den)
        for j, k in fd.items():
            fn[j] = fn.get(j, 0) - k
        return cn / cd, {j: k for j, k in fn.items() if k}

    def power(self, j, k):
        key = (j, k)
        if key not in self._pow:
            self._pow[key] = self.polys[j] ** k
        return self._pow[key]


def substitute_v_factored(p, table, fvs):
    """Numerator of p(u -> v) after clearing the smallest power of every shared factor."""
    V = table.vars
    terms = []
    for e, coef in p.terms.items():
        const, fac = Fraction(coef), {}
        for k, x in enumerate(e):
            if x:
                c0, f0 = fvs[k]
                const *= c0 ** x
                for j, m in f0.items():
                    fac[j] = fac.get(j, 0) + m * x
        terms.append((const, fac))
    low = {}
    for _, fac in terms:
        for j in set(low) | set(fac):
            low[j] = min(low.get(j, 0), fac.get(j, 0))
    total = Poly.zero(V)
    for const, fac in terms:
        t = Poly.const(V, const)
        for j in sorted(set(fac) | set(low)):
            x = fac.get(j, 0) - low.get(j, 0)
            if x:
                t = t * table.power(j, x)
        total = total + t
    return total


def _rand_point(rng, n):
    return [Fraction(rng.randint(1, 97), rng.randint(1, 97)) for _ in range(n)]


def spot_check_zero(p, c, vs, rng, points=SPOT_POINTS):
    for _ in range(points):
        y = _rand_point(rng, c.n)
        vals = [v.evaluate(y) for v in vs]
        if p.evaluate(vals) != 0:
            return False
    return True


def verify_parametrization(c, seed=0):
    """u -> v kills every F-hat - 1 and every u-equation."""
    rep = Report(f"parametrization {c.name}")
    rng = random.Random(seed)
    vs = v_all(c)
    table, fvs = factored_v(c)
    for X in range(c.size):
        p = u_equation(c, X)
        num = substitute_v_factored(p, table, fvs)
        rep.add(f"u-equation {c.names[X]}", num.is_zero() and spot_check_zero(p, c, vs, rng))
    for M in c.module_idx:
        p = fhat(c, M) - 1
        num = substitute_v_factored(p, table, fvs)
        rep.add(f"F-hat {c.names[M]} = 1", num.is_zero() and spot_check_zero(p, c, vs, rng))
    for X in range(c.size):
        rep.add(f"v formula cases {c.names[X]}", v_case_check(c, X))
        v = v_rational(c, X)
        if c.is_shift[X]:
            i = c.objects[X].minus[0]
            ok = v.num.min_exponent(i) >= 1
        else:
            ok = v.den.const_term() != 0 and v.num.const_term() == v.den.const_term()
        rep.add(f"v shape {c.names[X]}", ok)
    return rep


# ----- identities ---------------------------------------------------------------------

def _poly_identity(lhs, rhs, c, rng):
    if lhs != rhs:
        return False
    for _ in range(SPOT_POINTS):
        pt = [Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(c.size)]
        if lhs.evaluate(pt) != rhs.evaluate(pt):
            return False
    return True


def exchange_case(c, X):
    X = c.index(X)
    if c.is_projective[X]:
        return 2
    if c.is_shift[X]:
        return 3
    return 1


def exchange_identity_check(c, X, seed=0):
    """The exchange relation for X, in the case that applies to it."""
    X = c.index(X)
    rng = random.Random(seed + X)
    uX = Poly.var(c.uvars, X)
    E = fhat_multiset(c, c.middle[X])
    prod = compat_monomial(c, X)
    case = exchange_case(c, X)
    if case == 1:
        lhs = fhat(c, X) * fhat(c, c.tau_index[X])
    elif case == 2:
        lhs = fhat(c, X)
    else:
        lhs = fhat(c, c.tau_index[X])
    return _poly_identity(lhs, uX * E + prod, c, rng)


def _factored_product(fvs, exps):
    const, fac = Fraction(1), {}
    for k, e in enumerate(exps):
        if e:
            c0, f0 = fvs[k]
            const *= c0 ** e
            for j, m in f0.items():
                fac[j] = fac.get(j, 0) + m * e
    return const, {j: m for j, m in fac.items() if m}


def factored_v(c):
    """Shared factor table and the factored v's of a catalog (cached on it)."""
    got = c.__dict__.get("_factored_v")
    if got is None:
        table = FactorTable(c.yvars)
        got = (table, [table.ratfn(v) for v in v_all(c)])
        c.__dict__["_factored_v"] = got
    return got


def expansion_identities_check(c, M):
    """1/F_M, y^d/F_M and y^d as products of powers of the v's.

    Both sides are compared as products of irreducible factors, which is an
    exact test since factorization is unique up to constants.
    """
    M = c.index(M)
    table, fvs = factored_v(c)
    H = c.h0[M]
    one = Poly.one(c.yvars)
    yd = y_monomial(c, c.d[M])
    e1 = [0 if c.is_shift[N] else c.hom_mod[N][M] for N in range(c.size)]
    e2 = [0 if c.tau_module[X].is_zero() else md.hom_dim(H, c.tau_module[X]) for X in range(c.size)]
    e3 = [-sum(a * b for a, b in zip(c.g[Y], c.d[M])) for Y in range(c.size)]
    targets = [RatFn(one, c.fpoly[M]), RatFn(yd, c.fpoly[M]), RatFn(yd)]
    return all(_factored_product(fvs, e) == table.ratfn(t) for e, t in zip((e1, e2, e3), targets))


def rigid_divisibility(c):
    """(rigid M, N) pairs where u_M divides F-hat_N; should be empty."""
    bad = []
    for N in c.module_idx:
        p = fhat(c, N)
        for M in range(c.size):
            if c.rigid[M] and p.min_exponent(M) > 0:
                bad.append((c.names[M], c.names[N]))
    return bad


def divides(c, M, N):
    return fhat(c, N).min_exponent(c.index(M)) > 0


# ----- golden-string parser -------------------------------------------------------------

class _Parser:
    """Tiny parser for LaTeX-ish polynomial and rational expressions."""

    def __init__(self, text, resolve, vars):
        self.s = text.replace("\\left", "").replace("\\right", "").replace("\\cdot", "")
        self.i = 0
        self.resolve = resolve
        self.vars = vars

    def peek(self):
        while self.i < len(self.s) and self.s[self.i] in " \t\n":
            self.i += 1
        return self.s[self.i] if self.i < len(self.s) else ""

    def eat(self, tok):
        self.peek()
        if not self.s.startswith(tok, self.i):
            raise ValueError(f"expected {tok!r} at {self.i} in {self.s!r}")
        self.i += len(tok)

    def braced(self):
        self.eat("{")
        depth, start = 1, self.i
        while depth:
            ch = self.s[self.i]
            depth += (ch == "{") - (ch == "}")
            self.i += 1
        return self.s[start:self.i - 1]

    def expr(self):
        sign = 1
        if self.peek() in "+-":
            sign = -1 if self.s[self.i] == "-" else 1
            self.i += 1
        acc = self.term() * sign
        while self.peek() in ("+", "-"):
            sgn = self.s[self.i]
            self.i += 1
            t = self.term()
            acc = acc + t if sgn == "+" else acc - t
        return acc

    def term(self):
        acc = RatFn(Poly.one(self.vars))
        got = False
        while self.peek() and self.peek() not in "+-)}=":
            acc = acc * self.factor()
            got = True
        if not got:
            raise ValueError(f"empty term at {self.i} in {self.s!r}")
        return acc

    def exponent(self):
        if self.peek() == "^":
            self.i += 1
            if self.peek() == "{":
                return int(self.braced())
            self.peek()
            j = self.i
            while self.i < len(self.s) and self.s[self.i].isdigit():
                self.i += 1
            return int(self.s[j:self.i])
        return 1

    def factor(self):
        ch = self.peek()
        if ch.isdigit():
            j = self.i
            while self.i < len(self.s) and self.s[self.i].isdigit():
                self.i += 1
            base = RatFn(Poly.const(self.vars, int(self.s[j:self.i])))
        elif ch == "(":
            self.i += 1
            base = self.expr()
            self.eat(")")
        elif ch == "{":
            self.i += 1
            base = self.expr()
            self.eat("}")
        elif self.s.startswith("\\frac", self.i):
            self.i += 5
            num = _Parser(self.braced(), self.resolve, self.vars).full()
            den = _Parser(self.braced(), self.resolve, self.vars).full()
            base = num / den
        elif ch in "uyv":
            self.i += 1
            if self.peek() == "_":
                self.i += 1
                if self.peek() == "{":
                    name = self.braced()
                else:
                    name = self.s[self.i]
                    self.i += 1
            else:
                name = ""
            base = RatFn(Poly.var(self.vars, self.resolve(ch, name)))
        else:
            raise ValueError(f"unexpected {ch!r} at {self.i} in {self.s!r}")
        k = self.exponent()
        return base ** k if k != 1 else base

    def full(self):
        r = self.expr()
        if self.peek():
            raise ValueError(f"trailing input at {self.i} in {self.s!r}")
        return r


def _norm_label(s):
    return "".join(s.split()).replace("{", "").replace("}", "")


def parse_expression(text, c, kind="u"):
    """Parse a polynomial in u_{label} (kind 'u') or rational function in y_i (kind 'y')."""
    if kind == "u":
        table = {_norm_label(l): k for k, l in enumerate(c.labels)}
        table.update({_norm_label(nm): k for k, nm in enumerate(c.names)})

        def resolve(ch, name):
            if ch != "u":
                raise ValueError("expected a u-variable")
            return table[_norm_label(name)]
        vars = c.uvars
    else:
        def resolve(ch, name):
            if ch != "y":
                raise ValueError("expected a y-variable")
            return int(name) - 1 if name else 0
        vars = c.yvars
    return _Parser(text, resolve, vars).full()


def parse_equation(text, c, kind="u"):
    """'lhs = rhs' -> lhs - rhs (as RatFn); a leading 'name =' is returned separately."""
    lhs, rhs = text.split("=")
    return parse_expression(lhs, c, kind) - parse_expression(rhs, c, kind)


def parse_definition(text, c, kind="u"):
    """'\\widehat{F}_{label} = expr' or 'v_{label} = expr' -> (index, RatFn)."""
    head, body = text.split("=", 1)
    head = head.strip()
    j = head.index("_")
    name = head[j + 1:]
    k = c.index(_label_lookup(c, name))
    return k, parse_expression(body, c, kind)


def _label_lookup(c, raw):
    key = _norm_label(raw)
    for k in range(c.size):
        if key in (_norm_label(c.labels[k]), _norm_label(c.names[k])):
            return k
    raise KeyError(raw)


# ----- emitters ---------------------------------------------------------------------------

def _latex_names(c):
    return [f"u_{{{l}}}" for l in c.labels]


def _text_names(c):
    return [f"u_{nm}" for nm in c.names]


def emit(c, kind="all", fmt="text"):
    """Equations as a JSON-able dict, LaTeX, or plain text in catalog order."""
    out = {"catalog": c.name, "hash": c.hash()}
    if kind in ("all", "u"):
        out["u"] = [(c.names[X], u_equation(c, X)) for X in range(c.size)]
    if kind in ("all", "fhat"):
        out["fhat"] = [(c.names[M], fhat(c, M)) for M in c.module_idx]
    if kind in ("all", "v"):
        out["v"] = [(c.names[X], v_rational(c, X)) for X in range(c.size)]
    if fmt == "json":
        doc = {"catalog": out["catalog"], "hash": out["hash"], "u_vars": list(c.uvars),
               "y_vars": list(c.yvars)}
        for key in ("u", "fhat", "v"):
            if key in out:
                doc[key] = {nm: p.to_json() for nm, p in out[key]}
        return doc
    latex = fmt == "latex"
    unames = _latex_names(c) if latex else _text_names(c)
    ynames = [f"y_{i + 1}" if latex else f"y{i + 1}" for i in range(c.n)]
    lines = []
    for X in range(c.size):
        if "u" in out:
            p = out["u"][X][1] + 1
            lines.append(("u", f"{p.format(unames, latex)} = 1"))
    if "fhat" in out:
        for nm, p in out["fhat"]:
            k = c.index(nm)
            head = f"\\widehat{{F}}_{{{c.labels[k]}}}" if latex else f"Fhat_{nm}"
            lines.append(("fhat", f"{head} = {p.format(unames, latex)}"))
    if "v" in out:
        for nm, r in out["v"]:
            k = c.index(nm)
            head = f"v_{{{c.labels[k]}}}" if latex else f"v_{nm}"
            lines.append(("v", f"{head} = {r.format(ynames, latex)}"))
    return "\n".join(s for _, s in lines) + "\n"
