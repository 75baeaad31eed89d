"""Right modules over a quiver algebra, as representations with exact matrices.

The arrow ``a: i -> j`` acts by a ``dims[i] x dims[j]`` matrix sending
``M_j`` to ``M_i`` (right action, see :mod:`uvw.algebra`).  A module map
``f: M -> N`` is a list of per-vertex matrices ``f[v]`` of shape
``N.dims[v] x M.dims[v]``.
"""
import random
from fractions import Fraction

import sympy

from . import linalg as la
from .errors import AlgebraMismatch, NotInjective, SplitFailure

SPLIT_RETRIES = 32


class ModuleRep:
    __slots__ = ("algebra", "dims", "maps", "__weakref__", "_cache")

    def __init__(self, algebra, dims, maps):
        self.algebra = algebra
        self.dims = tuple(int(d) for d in dims)
        self.maps = {}
        for a in algebra.arrows:
            m = maps.get(a.id)
            r, c = self.dims[a.src], self.dims[a.tgt]
            if m is None:
                m = la.zeros(r, c)
            m = [[la.frac(x) for x in row] for row in m]
            if len(m) != r or any(len(row) != c for row in m):
                raise ValueError(f"arrow {a.id}: expected a {r}x{c} matrix")
            self.maps[a.id] = m
        self._cache = {}

    # ----- basics ----------------------------------------------------------
    @property
    def n(self):
        return self.algebra.n

    @property
    def total(self):
        return sum(self.dims)

    def is_zero(self):
        return self.total == 0

    def offsets(self):
        off, acc = [], 0
        for d in self.dims:
            off.append(acc)
            acc += d
        return off

    def path_matrix(self, k):
        """Action of the basis path k (from s to t) as a dims[s] x dims[t] matrix."""
        s, t, arrows = self.algebra.basis[k]
        if not arrows:
            return la.identity(self.dims[s])
        m = self.maps[arrows[0]]
        for a in arrows[1:]:
            m = la.matmul(m, self.maps[a], self.dims[self.algebra.arrow_by_id[a].src],
                          self.dims[self.algebra.arrow_by_id[a].tgt])
        return m

    def element_matrix(self, u, s, t):
        """Action of an element of e_t A e_s (paths s -> t), as a matrix M_t -> M_s."""
        out = la.zeros(self.dims[s], self.dims[t])
        for k, c in u.items():
            m = self.path_matrix(k)
            for i in range(self.dims[s]):
                for j in range(self.dims[t]):
                    if m[i][j]:
                        out[i][j] += c * m[i][j]
        return out

    def check_relations(self):
        A = self.algebra
        for r in A.relations:
            s = A.arrow_by_id[r[0][1][0]].src
            t = A.arrow_by_id[r[0][1][-1]].tgt
            acc = la.zeros(self.dims[s], self.dims[t])
            for c, p in r:
                m = la.identity(self.dims[s])
                cur = s
                for a in p:
                    m = la.matmul(m, self.maps[a], self.dims[cur],
                                  self.dims[A.arrow_by_id[a].tgt])
                    cur = A.arrow_by_id[a].tgt
                for i in range(len(acc)):
                    for j in range(len(acc[i])):
                        acc[i][j] += c * m[i][j]
            if not la.is_zero_matrix(acc):
                return False
        return True

    def to_json(self):
        return {"dims": list(self.dims),
                "maps": {a: [[str(x) for x in row] for row in m] for a, m in self.maps.items()}}

    @classmethod
    def from_json(cls, algebra, data):
        return cls(algebra, data["dims"], data.get("maps", {}))

    def __repr__(self):
        return f"ModuleRep(dims={self.dims})"


def zero_module(A):
    return ModuleRep(A, [0] * A.n, {})


def _check_same(M, N):
    if M.algebra is not N.algebra:
        raise AlgebraMismatch("modules over different algebras")


# ----- projectives and injectives -------------------------------------------

def _arrow_index(A, a):
    return A.index[(a.src, (a.id,))]


def projective_module(A, i):
    """P_i = e_i A, spanned by the basis paths ending at vertex i."""
    cache = A.__dict__.setdefault("_proj_cache", {})
    if i in cache:
        return cache[i]
    dims = [len(A.paths(k, i)) for k in range(A.n)]
    maps = {}
    for a in A.arrows:
        ai = _arrow_index(A, a)
        rows = A.paths(a.src, i)
        pos = {x: r for r, x in enumerate(rows)}
        cols = A.paths(a.tgt, i)
        m = la.zeros(len(rows), len(cols))
        for c, x in enumerate(cols):
            for z, coef in A.mult(x, ai).items():
                m[pos[z]][c] += coef
        maps[a.id] = m
    P = ModuleRep(A, dims, maps)
    cache[i] = P
    return P


def injective_module(A, i):
    """I_i, the dual of the left projective A e_i (paths starting at i)."""
    cache = A.__dict__.setdefault("_inj_cache", {})
    if i in cache:
        return cache[i]
    dims = [len(A.paths(i, k)) for k in range(A.n)]
    maps = {}
    for a in A.arrows:
        ai = _arrow_index(A, a)
        rows = A.paths(i, a.src)
        cols = A.paths(i, a.tgt)
        pos = {w: c for c, w in enumerate(cols)}
        m = la.zeros(len(rows), len(cols))
        for r, z in enumerate(rows):
            for w, coef in A.mult(ai, z).items():
                m[r][pos[w]] += coef
        maps[a.id] = m
    I = ModuleRep(A, dims, maps)
    cache[i] = I
    return I


def simple_module(A, i):
    dims = [0] * A.n
    dims[i] = 1
    return ModuleRep(A, dims, {})


# ----- sums, submodules, quotients -----------------------------------------

def direct_sum(mods, A=None):
    mods = list(mods)
    if not mods:
        return zero_module(A)
    A = mods[0].algebra
    dims = [sum(M.dims[v] for M in mods) for v in range(A.n)]
    maps = {}
    for a in A.arrows:
        m = la.zeros(dims[a.src], dims[a.tgt])
        r0 = c0 = 0
        for M in mods:
            blk = M.maps[a.id]
            for i, row in enumerate(blk):
                for j, x in enumerate(row):
                    m[r0 + i][c0 + j] = x
            r0 += M.dims[a.src]
            c0 += M.dims[a.tgt]
        maps[a.id] = m
    return ModuleRep(A, dims, maps)


def _closed_basis(M, gens):
    return [la.row_space(g, M.dims[v]) for v, g in enumerate(gens)]


def submodule(M, basis):
    """Submodule with per-vertex basis vectors (assumed arrow-stable).

    Returns (U, inclusion) where inclusion[v] is dims_M[v] x dims_U[v].
    """
    A = M.algebra
    basis = [list(b) for b in basis]
    dims = [len(b) for b in basis]
    maps = {}
    for a in A.arrows:
        imgs = [la.matvec(M.maps[a.id], w) for w in basis[a.tgt]]
        coords = la.coordinates(basis[a.src], imgs, M.dims[a.src]) if imgs else []
        # coords[j] are coordinates of image of basis vector j: column j
        m = la.zeros(dims[a.src], dims[a.tgt])
        for j, col in enumerate(coords):
            for i, x in enumerate(col):
                m[i][j] = x
        maps[a.id] = m
    U = ModuleRep(A, dims, maps)
    inc = [la.transpose(b, M.dims[v]) if b else la.zeros(M.dims[v], 0) for v, b in enumerate(basis)]
    return U, inc


def quotient(M, basis):
    """Quotient by the arrow-stable subspace family ``basis``.

    Returns (Q, projection) with projection[v] of shape dims_Q[v] x dims_M[v].
    """
    A = M.algebra
    comp = [la.complement(b, M.dims[v]) for v, b in enumerate(basis)]
    full = [list(b) + c for b, c in zip(basis, comp)]
    dims = [len(c) for c in comp]
    proj = []
    for v in range(A.n):
        if M.dims[v] == 0:
            proj.append([])
            continue
        inv = la.inverse(la.transpose(full[v], M.dims[v]))
        proj.append(inv[len(basis[v]):])
    maps = {}
    for a in A.arrows:
        m = la.zeros(dims[a.src], dims[a.tgt])
        for j, c in enumerate(comp[a.tgt]):
            img = la.matvec(M.maps[a.id], c)
            col = la.matvec(proj[a.src], img) if proj[a.src] else []
            for i, x in enumerate(col):
                m[i][j] = x
        maps[a.id] = m
    return ModuleRep(A, dims, maps), proj


def kernel(M, N, f):
    """Kernel of f: M -> N as (K, inclusion)."""
    basis = [la.nullspace(f[v], M.dims[v]) if M.dims[v] else [] for v in range(M.n)]
    return submodule(M, basis)


def image_basis(M, N, f):
    return [la.image_basis(f[v], M.dims[v]) if N.dims[v] and M.dims[v] else [] for v in range(M.n)]


def cokernel(M, N, f):
    return quotient(N, image_basis(M, N, f))


def radical(M):
    """rad M = M * rad A, spanned by arrow images, as (R, inclusion)."""
    return submodule(M, radical_basis(M))


def radical_basis(M):
    A = M.algebra
    basis = []
    for v in range(A.n):
        vecs = []
        for a in A.arrows:
            if a.src == v and M.dims[a.tgt]:
                vecs.extend(la.transpose(M.maps[a.id], M.dims[a.tgt]))
        basis.append(la.row_space(vecs, M.dims[v]))
    return basis


def top(M):
    return quotient(M, radical_basis(M))


def socle_basis(M):
    A = M.algebra
    basis = []
    for v in range(A.n):
        rows = []
        for a in A.arrows:
            if a.tgt == v:
                rows.extend(M.maps[a.id])
        basis.append(la.nullspace(rows, M.dims[v]) if M.dims[v] else [])
    return basis


def socle(M):
    return submodule(M, socle_basis(M))


def quotient_by_socle_simple(M):
    """I_i / S_i for an injective indecomposable I_i."""
    sb = socle_basis(M)
    if sum(len(b) for b in sb) != 1:
        raise NotInjective("socle is not simple")
    return quotient(M, sb)[0]


# ----- hom spaces -------------------------------------------------------------

def hom_space(M, N):
    """Basis of Hom(M, N); each element is a list of per-vertex matrices."""
    _check_same(M, N)
    A = M.algebra
    off, nvar = [], 0
    for v in range(A.n):
        off.append(nvar)
        nvar += N.dims[v] * M.dims[v]
    if nvar == 0:
        return []

    def var(v, r, c):
        return off[v] + r * M.dims[v] + c

    rows = []
    for a in A.arrows:
        i, j = a.src, a.tgt
        Ma, Na = M.maps[a.id], N.maps[a.id]
        # f_i Ma = Na f_j  (both N_i x M_j)
        for r in range(N.dims[i]):
            for c in range(M.dims[j]):
                row = {}
                for k in range(M.dims[i]):
                    x = Ma[k][c]
                    if x:
                        key = var(i, r, k)
                        row[key] = row.get(key, 0) + x
                for k in range(N.dims[j]):
                    x = Na[r][k]
                    if x:
                        key = var(j, k, c)
                        row[key] = row.get(key, 0) - x
                if any(row.values()):
                    dense = [la.ZERO] * nvar
                    for key, x in row.items():
                        dense[key] = Fraction(x)
                    rows.append(dense)
    ns = la.nullspace(rows, nvar)
    out = []
    for vec in ns:
        f = []
        for v in range(A.n):
            f.append([[vec[var(v, r, c)] for c in range(M.dims[v])] for r in range(N.dims[v])])
        out.append(f)
    return out


def hom_dim(M, N):
    return len(hom_space(M, N))


def map_compose(L, M, N, g, f):
    """Composition of f: L -> M and g: M -> N."""
    out = []
    for v in range(L.n):
        out.append(la.matmul(g[v], f[v], M.dims[v], L.dims[v]) if N.dims[v] else [])
    return out


def trace(f, M):
    return sum((f[v][i][i] for v in range(M.n) for i in range(M.dims[v])), la.ZERO)


def end_radical_rank(M):
    """Rank of the trace form on End(M) = dimension of End(M)/rad."""
    E = hom_space(M, M)
    if not E:
        return 0, E
    G = [[trace(map_compose(M, M, M, x, y), M) for y in E] for x in E]
    return la.rank(G, len(E)), E


def is_indecomposable(M):
    if M.is_zero():
        return False
    r, _ = end_radical_rank(M)
    return r == 1


def is_isomorphic(M, N):
    """Isomorphism test; exact for indecomposables, falls back to decomposition."""
    if M.dims != N.dims:
        return False
    if M.is_zero():
        return True
    if is_indecomposable(M):
        if not is_indecomposable(N):
            return False
        return _indec_iso(M, N)
    dm, dn = decompose(M), decompose(N)
    if sum(k for _, k in dm) != sum(k for _, k in dn):
        return False
    used = [False] * len(dn)
    for X, k in dm:
        hit = False
        for j, (Y, l) in enumerate(dn):
            if not used[j] and k == l and X.dims == Y.dims and _indec_iso(X, Y):
                used[j] = hit = True
                break
        if not hit:
            return False
    return all(used)


def _indec_iso(M, N):
    if M.dims != N.dims:
        return False
    F = hom_space(M, N)
    if not F:
        return False
    G = hom_space(N, M)
    for f in F:
        for g in G:
            if trace(map_compose(M, N, M, g, f), M):
                return True
    return False


def _eval_poly_at(coeffs, mat, n):
    """Horner evaluation of a polynomial (highest degree first) at a square matrix."""
    acc = la.zeros(n, n)
    for c in coeffs:
        acc = la.matmul(acc, mat, n, n)
        for i in range(n):
            acc[i][i] += c
    return acc


def _split_once(M, rng):
    E = hom_space(M, M)
    x = sympy.Symbol("x")
    for _ in range(SPLIT_RETRIES):
        coeffs = [rng.randint(-3, 3) for _ in E]
        if not any(coeffs):
            continue
        phi = []
        for v in range(M.n):
            d = M.dims[v]
            m = la.zeros(d, d)
            for c, f in zip(coeffs, E):
                if c:
                    for i in range(d):
                        for j in range(d):
                            m[i][j] += c * f[v][i][j]
            phi.append(m)
        cp = sympy.Integer(1)
        for v in range(M.n):
            if M.dims[v]:
                cp *= sympy.Poly(la.charpoly(phi[v]), x, domain="QQ").as_expr()
        _, factors = sympy.factor_list(sympy.Poly(cp, x, domain="QQ"))
        if len(factors) < 2:
            continue
        p0, e0 = factors[0]
        rest = sympy.Integer(1)
        for p, e in factors[1:]:
            rest *= p.as_expr() ** e
        polys = [sympy.Poly(p0.as_expr() ** e0, x, domain="QQ"), sympy.Poly(rest, x, domain="QQ")]
        parts = []
        for poly in polys:
            cs = [Fraction(int(c.p), int(c.q)) for c in poly.all_coeffs()]
            basis = []
            for v in range(M.n):
                d = M.dims[v]
                basis.append(la.nullspace(_eval_poly_at(cs, phi[v], d), d) if d else [])
            parts.append(basis)
        if all(sum(len(b) for b in part) for part in parts):
            return [submodule(M, part)[0] for part in parts]
    raise SplitFailure("Fitting search exhausted its retry budget")


def decompose(M, seed=0):
    """Krull-Schmidt decomposition as a list of (indecomposable, multiplicity)."""
    if M.is_zero():
        return []
    rng = random.Random(seed)
    stack, pieces = [M], []
    while stack:
        X = stack.pop()
        if is_indecomposable(X):
            pieces.append(X)
        else:
            stack.extend(_split_once(X, rng))
    out = []
    for X in pieces:
        for k, (Y, m) in enumerate(out):
            if X.dims == Y.dims and _indec_iso(X, Y):
                out[k] = (Y, m + 1)
                break
        else:
            out.append((X, 1))
    return out


def trace_submodule(M, N):
    """Sum of the images of all maps M -> N, as a per-vertex basis of N."""
    vecs = [[] for _ in range(N.n)]
    for f in hom_space(M, N):
        for v in range(N.n):
            if M.dims[v] and N.dims[v]:
                vecs[v].extend(la.transpose(f[v], M.dims[v]))
    return [la.row_space(vs, N.dims[v]) for v, vs in enumerate(vecs)]


# ----- presentations, Nakayama functor, AR translate --------------------------

def projective_sum(A, vertices):
    return direct_sum([projective_module(A, v) for v in vertices], A)


def injective_sum(A, vertices):
    return direct_sum([injective_module(A, v) for v in vertices], A)


def _cover_generators(M):
    """Top generators: list of (vertex, vector in M_vertex)."""
    rb = radical_basis(M)
    gens = []
    for v in range(M.n):
        for c in la.complement(rb[v], M.dims[v]):
            gens.append((v, c))
    return gens


def cover_map(M, gens):
    """The map from the sum of P_v over generators (v, m) onto M sending e_v to m."""
    A = M.algebra
    verts = [v for v, _ in gens]
    f = []
    for k in range(A.n):
        cols = []
        for v, m in gens:
            for x in A.paths(k, v):
                cols.append(la.matvec(M.path_matrix(x), m))
        f.append(la.transpose(cols, M.dims[k]) if cols else la.zeros(M.dims[k], 0))
    return verts, f


def elements_from_vector(A, verts, w, vec):
    """Read a vector of (sum of P_v)_w as algebra elements, one per summand."""
    out, pos = [], 0
    for v in verts:
        ps = A.paths(w, v)
        out.append({x: vec[pos + t] for t, x in enumerate(ps) if vec[pos + t]})
        pos += len(ps)
    return out


def min_presentation(M):
    """Minimal projective presentation of M as a TwoTermComplex."""
    from .homotopy import TwoTermComplex
    A = M.algebra
    gens = _cover_generators(M)
    verts0, pi = cover_map(M, gens)
    P0 = projective_sum(A, verts0)
    K, inc = kernel(P0, M, pi)
    kgens = _cover_generators(K)
    verts1 = []
    cols = []
    for w, kvec in kgens:
        vec = la.matvec(inc[w], kvec)
        cols.append(elements_from_vector(A, verts0, w, vec))
        verts1.append(w)
    diff = [[cols[l][g] for l in range(len(verts1))] for g in range(len(verts0))]
    return TwoTermComplex(A, verts1, verts0, diff, minimal=True)


def nakayama_matrix(A, lam, i, j, k):
    """Matrix at vertex k of nu(lam): I_j -> I_i for lam in e_i A e_j."""
    rows = A.paths(i, k)
    cols = A.paths(j, k)
    pos = {w: c for c, w in enumerate(cols)}
    m = la.zeros(len(rows), len(cols))
    for r, z in enumerate(rows):
        for w, c in A.mul({z: Fraction(1)}, lam).items():
            m[r][pos[w]] += c
    return m


def nakayama_map(A, minus, zero, diff):
    """nu applied to the differential, as a map of injective sums."""
    f = []
    for k in range(A.n):
        blocks = []
        for g, v in enumerate(zero):
            row = []
            for l, w in enumerate(minus):
                row.append(nakayama_matrix(A, diff[g][l], v, w, k))
            blocks.append(row)
        f.append(_assemble(blocks, [len(A.paths(v, k)) for v in zero],
                           [len(A.paths(w, k)) for w in minus]))
    return f


def _assemble(blocks, rdims, cdims):
    out = la.zeros(sum(rdims), sum(cdims))
    r0 = 0
    for bi, rd in enumerate(rdims):
        c0 = 0
        for bj, cd in enumerate(cdims):
            blk = blocks[bi][bj]
            for i in range(rd):
                for j in range(cd):
                    if blk[i][j]:
                        out[r0 + i][c0 + j] = blk[i][j]
            c0 += cd
        r0 += rd
    return out


def tau(M):
    """Auslander-Reiten translate via the Nakayama functor."""
    A = M.algebra
    if M.is_zero():
        return zero_module(A)
    X = min_presentation(M)
    if not X.minus:
        return zero_module(A)
    src = injective_sum(A, X.minus)
    tgt = injective_sum(A, X.zero)
    f = nakayama_map(A, X.minus, X.zero, X.diff)
    return kernel(src, tgt, f)[0]
