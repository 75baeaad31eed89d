"""Exact linear algebra over the rationals.

Matrices are lists of rows of ``Fraction``.  Shapes are passed explicitly
wherever a dimension can be zero, since an empty row list carries no width.
"""
from fractions import Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def frac(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    return Fraction(x)


def zeros(r, c):
    return [[ZERO] * c for _ in range(r)]


def identity(n):
    m = zeros(n, n)
    for i in range(n):
        m[i][i] = ONE
    return m


def matmul(a, b, inner=None, cols=None):
    """Product of an r x k and a k x c matrix (``inner``/``cols`` needed when empty)."""
    if inner is None:
        inner = len(b)
    if cols is None:
        cols = len(b[0]) if b else 0
    out = []
    for row in a:
        acc = [ZERO] * cols
        for k, x in enumerate(row):
            if x:
                bk = b[k]
                for j in range(cols):
                    y = bk[j]
                    if y:
                        acc[j] += x * y
        out.append(acc)
    return out


def matvec(a, v):
    return [sum((x * y for x, y in zip(row, v) if x and y), ZERO) for row in a]


def transpose(a, cols=None):
    if cols is None:
        cols = len(a[0]) if a else 0
    return [[a[i][j] for i in range(len(a))] for j in range(cols)]


def is_zero_matrix(a):
    return all(not x for row in a for x in row)


def rref(rows, ncols):
    """Reduced row echelon form.  Returns (nonzero rows, pivot columns)."""
    m = [list(r) for r in rows]
    pivots = []
    r = 0
    nrows = len(m)
    for c in range(ncols):
        if r == nrows:
            break
        p = None
        for i in range(r, nrows):
            if m[i][c]:
                p = i
                break
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        if piv != 1:
            inv = 1 / piv
            m[r] = [x * inv if x else x for x in m[r]]
        prow = m[r]
        nz = [j for j in range(c, ncols) if prow[j]]
        for i in range(nrows):
            if i != r:
                f = m[i][c]
                if f:
                    row = m[i]
                    for j in nz:
                        row[j] -= f * prow[j]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rank(rows, ncols):
    return len(rref(rows, ncols)[1])


def nullspace(rows, ncols):
    """Basis of {x : A x = 0} as a list of vectors."""
    red, piv = rref(rows, ncols)
    free = [j for j in range(ncols) if j not in set(piv)]
    basis = []
    for f in free:
        v = [ZERO] * ncols
        v[f] = ONE
        for i, p in enumerate(piv):
            v[p] = -red[i][f]
        basis.append(v)
    return basis


def row_space(vectors, ncols):
    """Echelon basis of the span of ``vectors``."""
    return rref(vectors, ncols)[0]


def solve(a, b, ncols):
    """One solution x of A x = b, or None."""
    aug = [list(row) + [bi] for row, bi in zip(a, b)]
    red, piv = rref(aug, ncols + 1)
    if ncols in piv:
        return None
    x = [ZERO] * ncols
    for i, p in enumerate(piv):
        x[p] = red[i][ncols]
    return x


def inverse(a):
    n = len(a)
    aug = [list(row) + [ONE if i == j else ZERO for j in range(n)] for i, row in enumerate(a)]
    red, piv = rref(aug, 2 * n)
    if piv[:n] != list(range(n)) or len(piv) < n:
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in red[:n]]


def det(a):
    n = len(a)
    m = [list(r) for r in a]
    d = ONE
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c]), None)
        if p is None:
            return ZERO
        if p != c:
            m[c], m[p] = m[p], m[c]
            d = -d
        d *= m[c][c]
        inv = 1 / m[c][c]
        for i in range(c + 1, n):
            f = m[i][c] * inv
            if f:
                for j in range(c, n):
                    m[i][j] -= f * m[c][j]
    return d


def complement(basis, ncols):
    """Standard unit vectors extending the span of ``basis`` to the whole space."""
    _, piv = rref(basis, ncols)
    taken = set(piv)
    out = []
    for j in range(ncols):
        if j not in taken:
            v = [ZERO] * ncols
            v[j] = ONE
            out.append(v)
    return out


def coordinates(basis, vectors, ncols):
    """Coordinates of each vector in ``basis`` (basis vectors assumed independent)."""
    k = len(basis)
    if not vectors:
        return []
    a = transpose(basis, ncols) if k else [[] for _ in range(ncols)]
    out = []
    aug_rows = [list(a[i]) + [v[i] for v in vectors] for i in range(ncols)]
    red, piv = rref(aug_rows, k + len(vectors))
    if any(p >= k for p in piv):
        raise ValueError("vector not in span")
    for t in range(len(vectors)):
        x = [ZERO] * k
        for i, p in enumerate(piv):
            x[p] = red[i][k + t]
        out.append(x)
    return out


def image_basis(mat, ncols_in):
    """Echelon basis of the column space of ``mat`` (rows = output coords)."""
    return row_space(transpose(mat, ncols_in), len(mat))


def kernel_basis(mat, ncols_in):
    return nullspace(mat, ncols_in)


def intersect(u, w, ncols):
    """Basis of span(u) ∩ span(w)."""
    if not u or not w:
        return []
    # solve sum a_i u_i = sum b_j w_j
    cols = [list(x) for x in u] + [[-y for y in x] for x in w]
    a = transpose(cols, ncols)
    ns = nullspace(a, len(cols))
    vecs = []
    for coeffs in ns:
        v = [ZERO] * ncols
        for c, x in zip(coeffs[:len(u)], u):
            if c:
                for j in range(ncols):
                    v[j] += c * x[j]
        vecs.append(v)
    return row_space(vecs, ncols)


def charpoly(a):
    """Characteristic polynomial coefficients (highest degree first), Berkowitz-free
    Faddeev-LeVerrier recursion, exact over Q."""
    n = len(a)
    coeffs = [ONE]
    m = zeros(n, n)
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{k-1} I
        m = matmul(a, m, n, n)
        for i in range(n):
            m[i][i] += coeffs[-1]
        am = matmul(a, m, n, n)
        c = -sum((am[i][i] for i in range(n)), ZERO) / k
        coeffs.append(c)
    return coeffs
