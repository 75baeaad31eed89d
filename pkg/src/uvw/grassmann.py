"""Submodule Grassmannians: point counts over F_p and F-polynomials.

Counting walks the lattice of submodules one simple at a time: every
submodule of dimension k+1 is U + <w> for a submodule U of dimension k and a
line w in the socle of M/U.  Submodules are kept in reduced-echelon form, so
each is counted once.  The cost is proportional to the number of submodules,
not to the size of the ambient Grassmannians.
"""
from fractions import Fraction
import itertools
import weakref

from sympy import primerange

from .errors import NonIntegerModel, NotPolynomialCount
from .poly import Poly

_COUNT_CACHE = weakref.WeakKeyDictionary()
_FPOLY_CACHE = weakref.WeakKeyDictionary()


def y_vars(n):
    return tuple(f"y{i + 1}" for i in range(n))


# ----- linear algebra mod p ----------------------------------------------------

def rref_mod(rows, ncols, p):
    m = [list(r) for r in rows]
    piv = []
    r = 0
    for c in range(ncols):
        k = next((i for i in range(r, len(m)) if m[i][c] % p), None)
        if k is None:
            continue
        m[r], m[k] = m[k], m[r]
        inv = pow(m[r][c], p - 2, p)
        m[r] = [(x * inv) % p for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] % p:
                f = m[i][c]
                m[i] = [(x - f * y) % p for x, y in zip(m[i], m[r])]
        piv.append(c)
        r += 1
        if r == len(m):
            break
    return [tuple(row) for row in m[:r]], piv


def nullspace_mod(rows, ncols, p):
    red, piv = rref_mod(rows, ncols, p)
    ps = set(piv)
    out = []
    for f in range(ncols):
        if f in ps:
            continue
        v = [0] * ncols
        v[f] = 1
        for i, c in enumerate(piv):
            v[c] = (-red[i][f]) % p
        out.append(v)
    return out


def _matvec_mod(m, v, p):
    return [sum(a * b for a, b in zip(row, v)) % p for row in m]


def _reduce_matrix(m, p):
    out = []
    for row in m:
        r = []
        for x in row:
            x = Fraction(x)
            if x.denominator % p == 0:
                raise NonIntegerModel(f"denominator divisible by {p}")
            r.append((x.numerator * pow(x.denominator, p - 2, p)) % p)
        out.append(r)
    return out


def bad_primes(M):
    """Primes dividing a numerator or denominator of some nonzero structure constant."""
    vals = set()
    for m in M.maps.values():
        for row in m:
            for x in row:
                if x:
                    vals.add(abs(Fraction(x).numerator))
                    vals.add(Fraction(x).denominator)
    bad = set()
    for v in vals:
        d = 2
        while d * d <= v:
            while v % d == 0:
                bad.add(d)
                v //= d
            d += 1
        if v > 1:
            bad.add(v)
    return bad


# ----- counting -------------------------------------------------------------------

def _lines(basis, p):
    """Representatives of the lines in span(basis) over F_p."""
    s = len(basis)
    d = len(basis[0]) if basis else 0
    for lead in range(s):
        for tail in itertools.product(range(p), repeat=s - lead - 1):
            coeffs = [0] * lead + [1] + list(tail)
            yield [sum(c * b[j] for c, b in zip(coeffs, basis)) % p for j in range(d)]


def count_all_fq(M, p):
    """Number of submodules of each dimension vector over F_p (p prime)."""
    per = _COUNT_CACHE.setdefault(M, {})
    if p in per:
        return per[p]
    A = M.algebra
    n = A.n
    dims = M.dims
    mats = {a.id: _reduce_matrix(M.maps[a.id], p) for a in A.arrows}
    into = {i: [a for a in A.arrows if a.tgt == i] for i in range(n)}
    start = tuple(() for _ in range(n))
    counts = {}
    level = {start}
    while level:
        nxt = set()
        for U in level:
            dv = tuple(len(b) for b in U)
            counts[dv] = counts.get(dv, 0) + 1
            # annihilators of each U_v
            ann = {}
            for i in range(n):
                if not dims[i] or len(U[i]) == dims[i]:
                    continue
                rows = []
                for a in into[i]:
                    s = a.src
                    if dims[s] == 0:
                        continue
                    if s not in ann:
                        ann[s] = nullspace_mod(list(U[s]), dims[s], p) if U[s] else \
                            [[1 if r == c else 0 for c in range(dims[s])] for r in range(dims[s])]
                    Ma = mats[a.id]
                    for c in ann[s]:
                        # c . (Ma m) = (c Ma) . m
                        rows.append([sum(c[k] * Ma[k][j] for k in range(dims[s])) % p
                                     for j in range(dims[i])])
                W = nullspace_mod(rows, dims[i], p) if rows else \
                    [[1 if r == c else 0 for c in range(dims[i])] for r in range(dims[i])]
                # complement of U_i inside W
                base = list(U[i])
                red, piv = rref_mod(base, dims[i], p)
                comp = []
                cur = list(red)
                for w in W:
                    r2, p2 = rref_mod(cur + [w], dims[i], p)
                    if len(p2) > len(cur):
                        comp.append(w)
                        cur = list(r2)
                for w in _lines(comp, p):
                    new, _ = rref_mod(list(U[i]) + [w], dims[i], p)
                    nxt.add(U[:i] + (tuple(new),) + U[i + 1:])
        level = nxt
    per[p] = counts
    return counts


def count_submodules_fq(M, d, q):
    """Number of F_q-points of the submodule Grassmannian Gr_d(M) (q prime)."""
    if q < 2 or any(q % k == 0 for k in range(2, int(q ** 0.5) + 1)):
        raise ValueError("only prime fields are supported")
    if q in bad_primes(M):
        raise NonIntegerModel(f"prime {q} divides a structure constant")
    return count_all_fq(M, q).get(tuple(d), 0)


def degree_bound(M, d):
    return sum(di * (mi - di) for di, mi in zip(d, M.dims))


def _good_primes(M, k):
    bad = bad_primes(M)
    out = []
    for p in primerange(2, 10 ** 6):
        if p not in bad:
            out.append(p)
            if len(out) == k:
                return out
    return out


def _interpolate_at(xs, ys, x0):
    total = Fraction(0)
    for k, (xk, yk) in enumerate(zip(xs, ys)):
        term = Fraction(yk)
        for j, xj in enumerate(xs):
            if j != k:
                term *= Fraction(x0 - xj, xk - xj)
        total += term
    return total


def euler_characteristics(M):
    """chi(Gr_d(M)) for every d with a nonempty Grassmannian."""
    got = _FPOLY_CACHE.get(M)
    if got is not None:
        return got
    all_d = [d for d in itertools.product(*[range(m + 1) for m in M.dims])]
    D = max((degree_bound(M, d) for d in all_d), default=0)
    primes = _good_primes(M, D + 2)
    tables = [count_all_fq(M, p) for p in primes]
    chi = {}
    for d in all_d:
        ys = [t.get(d, 0) for t in tables]
        k = degree_bound(M, d) + 1
        xs = primes[:k]
        val = _interpolate_at(xs, ys[:k], 1)
        check = _interpolate_at(xs, ys[:k], primes[k])
        if check != ys[k] or val.denominator != 1:
            raise NotPolynomialCount(f"point counts of Gr_{d} are not polynomial in q")
        if val:
            chi[d] = int(val)
    _FPOLY_CACHE[M] = chi
    return chi


def gr_euler(M, d):
    return euler_characteristics(M).get(tuple(d), 0)


def f_polynomial(M):
    """F_M = sum_d chi(Gr_d(M)) y^d."""
    V = y_vars(M.n)
    return Poly(V, euler_characteristics(M))
