"""Two-term complexes of projectives and their homotopy hom spaces."""
from fractions import Fraction

from . import linalg as la
from . import modules as md
from .errors import AlgebraMismatch, InternalInconsistency


class TwoTermComplex:
    """X = (X^-1 -> X^0) with X^-1 = sum of P_w (w in ``minus``) and
    X^0 = sum of P_v (v in ``zero``).

    ``diff[g][l]`` is an element of e_{zero[g]} A e_{minus[l]}, i.e. a
    combination of paths from minus[l] to zero[g]; it acts by left
    multiplication P_{minus[l]} -> P_{zero[g]}.
    """

    def __init__(self, algebra, minus, zero, diff=None, minimal=False):
        self.algebra = algebra
        self.minus = list(minus)
        self.zero = list(zero)
        if diff is None:
            diff = [[{} for _ in self.minus] for _ in self.zero]
        self.diff = [[{k: Fraction(c) for k, c in e.items() if c} for e in row] for row in diff]
        self.minimal = minimal
        for g, v in enumerate(self.zero):
            for l, w in enumerate(self.minus):
                for k in self.diff[g][l]:
                    if algebra.src(k) != w or algebra.tgt(k) != v:
                        raise ValueError("differential entry outside e_v A e_w")

    def mult(self, degree):
        verts = self.minus if degree == -1 else self.zero
        m = [0] * self.algebra.n
        for v in verts:
            m[v] += 1
        return m

    def g_vector(self):
        return tuple(a - b for a, b in zip(self.mult(0), self.mult(-1)))

    def is_zero(self):
        return not self.minus and not self.zero

    def module_map(self):
        """The differential as a module map between projective sums (per vertex)."""
        A = self.algebra
        f = []
        for k in range(A.n):
            rdims = [len(A.paths(k, v)) for v in self.zero]
            cdims = [len(A.paths(k, w)) for w in self.minus]
            m = la.zeros(sum(rdims), sum(cdims))
            c0 = 0
            for l, w in enumerate(self.minus):
                for t, x in enumerate(A.paths(k, w)):
                    r0 = 0
                    for g, v in enumerate(self.zero):
                        lam = self.diff[g][l]
                        if lam:
                            rows = A.paths(k, v)
                            pos = {z: i for i, z in enumerate(rows)}
                            for z, c in A.mul(lam, {x: Fraction(1)}).items():
                                m[r0 + pos[z]][c0 + t] += c
                        r0 += rdims[g]
                c0 += cdims[l]
            f.append(m)
        return f

    def h0(self):
        A = self.algebra
        P1 = md.projective_sum(A, self.minus)
        P0 = md.projective_sum(A, self.zero)
        return md.cokernel(P1, P0, self.module_map())[0]

    def has_unit_entry(self):
        """True if some entry has a nonzero trivial-path coefficient (non-minimal)."""
        for row in self.diff:
            for e in row:
                for k in e:
                    if self.algebra.length(k) == 0:
                        return True
        return False

    def to_json(self):
        A = self.algebra
        return {
            "minus": [w + 1 for w in self.minus],
            "zero": [v + 1 for v in self.zero],
            "mult_minus1": self.mult(-1),
            "mult_0": self.mult(0),
            "diff": [[{A.path_label(k): str(c) for k, c in sorted(e.items())} for e in row]
                     for row in self.diff],
        }

    def __repr__(self):
        return f"TwoTermComplex(minus={[w + 1 for w in self.minus]}, zero={[v + 1 for v in self.zero]})"


def shift_projective(A, i):
    """Sigma P_i = (P_i -> 0)."""
    return TwoTermComplex(A, [i], [], [], minimal=True)


def stalk_projective(A, i):
    return TwoTermComplex(A, [], [i], [[]], minimal=True)


def g_vector(X):
    return X.g_vector()


def h0(X):
    return X.h0()


def direct_sum_complex(Xs, A):
    minus, zero = [], []
    for X in Xs:
        minus += X.minus
        zero += X.zero
    diff = [[{} for _ in minus] for _ in zero]
    r0 = c0 = 0
    for X in Xs:
        for g in range(len(X.zero)):
            for l in range(len(X.minus)):
                diff[r0 + g][c0 + l] = dict(X.diff[g][l])
        r0 += len(X.zero)
        c0 += len(X.minus)
    return TwoTermComplex(A, minus, zero, diff)


# ----- homotopy hom ---------------------------------------------------------

def _hom_proj_basis(A, src, tgt):
    """Basis of Hom(sum P_src, sum P_tgt): (row g, col l, path index)."""
    out = []
    for g, v in enumerate(tgt):
        for l, w in enumerate(src):
            for x in A.paths(w, v):
                out.append((g, l, x))
    return out


def _matmul_elements(A, F, G, rows, inner, cols):
    """(F o G) for element matrices F (rows x inner) and G (inner x cols)."""
    out = [[{} for _ in range(cols)] for _ in range(rows)]
    for r in range(rows):
        for c in range(cols):
            acc = {}
            for k in range(inner):
                if F[r][k] and G[k][c]:
                    for z, x in A.mul(F[r][k], G[k][c]).items():
                        acc[z] = acc.get(z, 0) + x
            out[r][c] = {z: x for z, x in acc.items() if x}
    return out


def hom_shift(X, Y):
    """dim Hom_K(X, Sigma Y): Hom(X^-1, Y^0) modulo homotopies."""
    if X.algebra is not Y.algebra:
        raise AlgebraMismatch("complexes over different algebras")
    A = X.algebra
    target = _hom_proj_basis(A, X.minus, Y.zero)
    if not target:
        return 0
    pos = {(g, l, x): i for i, (g, l, x) in enumerate(target)}
    D = len(target)
    rows = []
    # s: X^0 -> Y^0, image s o dX
    for (g, h, x) in _hom_proj_basis(A, X.zero, Y.zero):
        vec = [la.ZERO] * D
        for l in range(len(X.minus)):
            lam = X.diff[h][l]
            if lam:
                for z, c in A.mul({x: Fraction(1)}, lam).items():
                    vec[pos[(g, l, z)]] += c
        if any(vec):
            rows.append(vec)
    # s': X^-1 -> Y^-1, image dY o s'
    for (m, l, x) in _hom_proj_basis(A, X.minus, Y.minus):
        vec = [la.ZERO] * D
        for g in range(len(Y.zero)):
            lam = Y.diff[g][m]
            if lam:
                for z, c in A.mul(lam, {x: Fraction(1)}).items():
                    vec[pos[(g, l, z)]] += c
        if any(vec):
            rows.append(vec)
    return D - la.rank(rows, D)


def tau_h0(X):
    """H^0 of tau_K X: tau(H^0 X), I_i for Sigma P_i, zero for projectives."""
    A = X.algebra
    if not X.minus:
        return md.zero_module(A)
    if not X.zero:
        return md.injective_sum(A, X.minus)
    return md.tau(X.h0())


def is_rigid(X):
    return hom_shift(X, X) == 0


def compatibility(X, Y, check=True):
    """c(X, Y) from homotopy homs, cross-checked against module homs."""
    c = hom_shift(X, Y) + hom_shift(Y, X)
    if check:
        c2 = (md.hom_dim(X.h0(), tau_h0(Y)) + md.hom_dim(Y.h0(), tau_h0(X)))
        if c != c2:
            raise InternalInconsistency(f"compatibility mismatch {c} != {c2}")
    return c
