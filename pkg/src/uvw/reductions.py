"""Divisor maps u_M = 0 onto a reduced catalog, and monomial maps induced by
algebra quotients."""
import itertools

from . import equations as eqn
from . import linalg as la
from . import modules as md
from .algebra import quotient_algebra
from .catalog import Report, catalog_from_complexes, knit_catalog
from .errors import MatchAmbiguous, MatchIncomplete, UnmatchedSummand
from .homotopy import TwoTermComplex
from .poly import Poly, RatFn


class ReductionMap:
    """Images of the source u-variables.

    ``images[k]`` is 0 (the variable is killed) or a dict {target index:
    exponent}; the empty dict is the constant 1.
    """

    def __init__(self, source, target, images, kind, focus=None, bijection=None, lattice=None):
        self.source = source
        self.target = target
        self.images = images
        self.kind = kind
        self.focus = focus
        self.bijection = bijection or {}
        self.lattice = lattice

    def apply(self, p):
        """Image of a Poly over the source u-variables."""
        V = self.target.uvars
        terms = {}
        for e, coef in p.terms.items():
            new = [0] * self.target.size
            dead = False
            for k, x in enumerate(e):
                if not x:
                    continue
                img = self.images[k]
                if img == 0:
                    dead = True
                    break
                for j, m in img.items():
                    new[j] += m * x
            if not dead:
                key = tuple(new)
                terms[key] = terms.get(key, 0) + coef
        return Poly(V, terms)

    def to_json(self):
        s, t = self.source, self.target
        out = {}
        for k, img in enumerate(self.images):
            if img == 0:
                out[s.names[k]] = 0
            else:
                out[s.names[k]] = {t.names[j]: m for j, m in img.items()}
        return {"kind": self.kind, "source": s.name, "target": t.name,
                "focus": None if self.focus is None else s.names[self.focus], "images": out}


# ----- Jasso reduction ---------------------------------------------------------------

def _projected_d(c, M, Z):
    if c.is_shift[Z]:
        return tuple(0 for _ in range(c.n))
    N = c.h0[Z]
    if c.is_shift[M] or c.h0[M].is_zero():
        return N.dims
    dims = [len(b) for b in md.trace_submodule(c.h0[M], N)]
    return tuple(a - b for a, b in zip(N.dims, dims))


def jasso_match(src, M, tgt):
    """The bijection from objects compatible with M onto the target catalog.

    A linear map L: Z^n -> Z^(n-1) with L g_M = 0 is read off from a maximal
    compatible set containing M sent onto the target's projectives; L must map
    the remaining g-vectors onto target g-vectors, with the projected
    dimension vectors agreeing as well.
    """
    M = src.index(M)
    if not src.rigid[M]:
        raise ValueError("focus object must be rigid")
    n, m = src.n, tgt.n
    compat = [Z for Z in range(src.size) if Z != M and src.compat[M][Z] == 0]
    if len(compat) != tgt.size:
        raise MatchIncomplete(f"{len(compat)} compatible objects for {tgt.size} target objects")
    pd = {Z: _projected_d(src, M, Z) for Z in compat}
    rigid_compat = [Z for Z in compat if src.rigid[Z]]
    found = {}
    for rest in itertools.combinations(rigid_compat, n - 1):
        if any(src.compat[a][b] for a, b in itertools.combinations(rest, 2)):
            continue
        B = [[la.frac(src.g[k][i]) for k in (M,) + rest] for i in range(n)]
        if abs(la.det(B)) != 1:
            continue
        Binv = la.inverse(B)
        for perm in itertools.permutations(range(m)):
            # L B = [0 | e_perm]
            img = [[la.ZERO] + [la.ONE if perm[j] == r else la.ZERO for j in range(n - 1)] for r in range(m)]
            L = la.matmul(img, Binv, n, n)
            s = _match_with(src, tgt, L, compat, pd)
            if s is not None:
                found[tuple(sorted(s.items()))] = (s, L, rest)
    if not found:
        raise MatchIncomplete("no lattice map matches the target catalog")
    if len(found) > 1:
        raise MatchAmbiguous(f"{len(found)} different bijections fit projected g and d")
    s, L, rest = next(iter(found.values()))
    images = []
    for k in range(src.size):
        if k == M:
            images.append(0)
        elif k in s:
            images.append({s[k]: 1})
        else:
            images.append({})
    rmap = ReductionMap(src, tgt, images, "jasso", focus=M, bijection=s,
                        lattice={"L": [[int(x) for x in row] for row in L], "basis": [M] + list(rest)})
    return rmap


def _match_with(src, tgt, L, compat, pd):
    n, m = src.n, tgt.n
    by_g = {}
    for j in range(tgt.size):
        by_g.setdefault(tgt.g[j], []).append(j)
    s, used = {}, set()
    for Z in compat:
        gz = [sum(L[r][i] * src.g[Z][i] for i in range(n)) for r in range(m)]
        if any(x.denominator != 1 for x in gz):
            return None
        cands = by_g.get(tuple(int(x) for x in gz), [])
        hits = []
        for j in cands:
            lift = tuple(sum(L[r][i] * tgt.d[j][r] for r in range(m)) for i in range(n))
            if lift == tuple(pd[Z]):
                hits.append(j)
        if len(hits) != 1 or hits[0] in used:
            return None
        s[Z] = hits[0]
        used.add(hits[0])
    return s if len(used) == tgt.size else None


def jasso_substitution_check(rmap):
    """mu sends every source F-hat to 1 or to a target F-hat (hitting all of
    them) and every u-equation to a target u-equation or to 0."""
    src, tgt = rmap.source, rmap.target
    rep = Report(f"Jasso {src.name}@{src.names[rmap.focus]} -> {tgt.name}")
    targets = {eqn.fhat(tgt, j): j for j in tgt.module_idx}
    hit, miss = set(), []
    for N in src.module_idx:
        img = rmap.apply(eqn.fhat(src, N))
        if img == 1:
            continue
        if img in targets:
            hit.add(targets[img])
        else:
            miss.append(src.names[N])
    rep.add("F-hat images are 1 or target F-hats", not miss, detail=miss or None)
    rep.add("every target F-hat is hit", hit == set(tgt.module_idx),
            detail=[tgt.names[j] for j in set(tgt.module_idx) - hit] or None)
    bad = []
    for X in range(src.size):
        img = rmap.apply(eqn.u_equation(src, X))
        if X in rmap.bijection:
            ok = img == eqn.u_equation(tgt, rmap.bijection[X])
        else:
            ok = img.is_zero()
        if not ok:
            bad.append(src.names[X])
    rep.add("u-equations map to u-equations or 0", not bad, detail=bad or None)
    return rep


# ----- quotients ---------------------------------------------------------------------

def tensor_quotient(X, B):
    """X tensored down to the quotient algebra B of X's algebra."""
    vm = B.vertex_map
    keep_m = [l for l, w in enumerate(X.minus) if vm[w] is not None]
    keep_z = [g for g, v in enumerate(X.zero) if vm[v] is not None]
    diff = [[B.image_element(X.diff[g][l]) for l in keep_m] for g in keep_z]
    return TwoTermComplex(B, [vm[X.minus[l]] for l in keep_m], [vm[X.zero[g]] for g in keep_z], diff)


def decompose_complex(c, X):
    """Multiplicities of catalog objects in X (homotopy-invariant)."""
    out = {}
    H = X.h0()
    if not H.is_zero():
        for Y, mult in md.decompose(H):
            k = c.find_module(Y)
            if k is None:
                raise UnmatchedSummand("H0 summand outside the catalog")
            out[k] = out.get(k, 0) + mult
    rest = list(X.g_vector())
    for k, mult in out.items():
        rest = [a - mult * b for a, b in zip(rest, c.g[k])]
    for i, x in enumerate(rest):
        if x > 0:
            raise UnmatchedSummand("g-vector bookkeeping leaves a positive remainder")
        if x < 0:
            k = c.shift_of[i]
            out[k] = out.get(k, 0) - x
    total = [sum(mult * c.g[k][i] for k, mult in out.items()) for i in range(c.n)]
    assert tuple(total) == X.g_vector()
    return out


def transfer_catalog(c, B, name=None):
    """Rebuild the module objects of c (over an algebra isomorphic to B with the
    same arrow names and vertex order) over B itself."""
    entries = []
    for k in c.module_idx:
        X = c.objects[k]
        diff = []
        for g in range(len(X.zero)):
            row = []
            for l in range(len(X.minus)):
                e = {}
                for p, coef in X.diff[g][l].items():
                    s, _, arrows = c.algebra.basis[p]
                    for q, x in (B.normal_form(s, arrows) if arrows else {B.index[(s, ())]: 1}).items():
                        e[q] = e.get(q, 0) + coef * x
                row.append({q: x for q, x in e.items() if x})
            diff.append(row)
        entries.append((c.labels[k], c.names[k], TwoTermComplex(B, X.minus, X.zero, diff, minimal=True)))
    return catalog_from_complexes(B, entries, name=name or c.name)


def quotient_catalog(src, gens, tgt=None, name=None):
    """Catalog over src.algebra / <gens>; reuses tgt's presentations and labels
    when given, otherwise knits."""
    B = quotient_algebra(src.algebra, gens, name=name)
    if tgt is not None:
        return transfer_catalog(tgt, B, name=name or tgt.name)
    return knit_catalog(B, name=name)


def quotient_map(src, qc):
    """phi(u-bar_K) = prod_N u_N^{[pi N : K]} for the catalog qc over a quotient."""
    B = qc.algebra
    images = [dict() for _ in range(qc.size)]
    table = {}
    for N in range(src.size):
        mult = decompose_complex(qc, tensor_quotient(src.objects[N], B))
        table[N] = mult
        for K, x in mult.items():
            images[K][N] = images[K].get(N, 0) + x
    return ReductionMap(qc, src, images, "quotient", bijection=table)


def _embed_y(r, qc, src):
    """Rewrite a rational function in the quotient's y-variables over src's."""
    vm = qc.algebra.vertex_map
    pos = [None] * qc.n
    for v, w in enumerate(vm):
        if w is not None:
            pos[w] = v
    return RatFn(r.num.embed(src.yvars, pos), r.den.embed(src.yvars, pos))


def quotient_map_check(src, qc, seed=0):
    """Checks that the monomial map phi transports the parametrization:
    v-bar_K = prod_N v_N^{[pi N:K]}, and phi(F-hat_K - 1) vanishes under src's v's.
    Target F-hats pulled back through the quotient agree with the source's
    F-hat of the same module."""
    rep = Report(f"quotient {src.name} -> {qc.name}")
    phi = quotient_map(src, qc)
    table, fvs = eqn.factored_v(src)
    bad = []
    for K in range(qc.size):
        lhs = _embed_y(eqn.v_rational(qc, K), qc, src)
        rhs = RatFn(Poly.one(src.yvars))
        for N, x in phi.images[K].items():
            rhs = rhs * eqn.v_rational(src, N) ** x
        if not lhs == rhs:
            bad.append(qc.names[K])
    rep.add("v-bar = prod v^[pi N : K]", not bad, detail=bad or None)
    bad = []
    for K in qc.module_idx:
        p = phi.apply(eqn.fhat(qc, K) - 1)
        if not eqn.substitute_v_factored(p, table, fvs).is_zero():
            bad.append(qc.names[K])
    rep.add("phi(F-hat - 1) vanishes on the v-parametrization", not bad, detail=bad or None)
    bad = []
    for X in range(qc.size):
        p = phi.apply(eqn.u_equation(qc, X))
        if not eqn.substitute_v_factored(p, table, fvs).is_zero():
            bad.append(qc.names[X])
    rep.add("phi(u-equation) vanishes on the v-parametrization", not bad, detail=bad or None)
    if all(w is not None for w in qc.algebra.vertex_map):
        bad = []
        for K in qc.module_idx:
            L = _restrict_module(qc.h0[K], src.algebra)
            if eqn.fhat_module(src, L) != phi.apply(eqn.fhat(qc, K)):
                bad.append(qc.names[K])
        rep.add("phi(F-hat of L over A) = F-hat of L over Lambda", not bad, detail=bad or None)
    return rep, phi


def _restrict_module(L, A):
    """An A/J-module viewed as an A-module (arrows killed by J act by zero)."""
    B = L.algebra
    maps = {}
    for a in A.arrows:
        if a.id in B.arrow_by_id:
            maps[a.id] = L.maps[a.id]
        else:
            maps[a.id] = la.zeros(L.dims[B.vertex_map[a.src]], L.dims[B.vertex_map[a.tgt]])
    dims = [L.dims[B.vertex_map[v]] for v in range(A.n)]
    return md.ModuleRep(A, dims, maps)


def compose_maps(phi_ab, phi_bc):
    """phi_ab: A-bar vars -> Lambda monomials; phi_bc: C vars -> A-bar monomials.
    Returns the composite C vars -> Lambda monomials."""
    out = []
    for img in phi_bc.images:
        tot = {}
        for K, x in img.items():
            for N, y in phi_ab.images[K].items():
                tot[N] = tot.get(N, 0) + x * y
        out.append(tot)
    return out


def functoriality_check(src, gens1, gens2, mid=None):
    """Lambda -> Lambda/<gens1> -> Lambda/<gens1 + gens2>: the composite of the
    two monomial maps equals the map of the direct quotient."""
    rep = Report(f"functoriality {src.name}")
    q1 = quotient_catalog(src, gens1, tgt=mid)
    q2 = quotient_catalog(q1, gens2)
    direct = quotient_catalog(src, list(gens1) + list(gens2))
    phi1, phi2, phi = quotient_map(src, q1), quotient_map(q1, q2), quotient_map(src, direct)
    comp = compose_maps(phi1, phi2)
    pos = {direct.names[k]: k for k in range(direct.size)}
    ok = all(set(q2.names) == set(direct.names) for _ in [0]) and all(
        comp[k] == phi.images[pos[q2.names[k]]] for k in range(q2.size))
    rep.add("composite monomial map equals direct map", ok)
    return rep


# ----- pelly pattern from linear A_n -----------------------------------------------------

def pelly_pattern_check(n):
    """The three product formulas expressing the radical-square-zero catalog's
    v's through the interval modules of A_n."""
    from .catalog import load_catalog
    src = load_catalog(f"an-{n}")
    tgt = load_catalog(f"pelly-{n}")
    gens = [[(1, (f"a{i + 1}", f"a{i}"))] for i in range(1, n - 1)]
    qc = quotient_catalog(src, gens, tgt=tgt, name=f"pelly-{n}")
    rep, phi = quotient_map_check(src, qc)
    idx = {src.pairs[nm]: k for k, nm in enumerate(src.names)}
    expect = {}
    for i in range(1, n + 1):
        expect[f"S{i}"] = {idx[(i - 1, i + 1)]: 1}
        if i < n:
            expect[f"P{i}"] = {idx[(i - 1, j)]: 1 for j in range(i + 2, n + 2)}
        # the shifted projective itself is always a factor, also for i = 1
        expect[f"SigmaP{i}"] = {idx[(l, i)]: 1 for l in [-1] + list(range(0, i - 2))}
    bad = [nm for nm, e in expect.items() if phi.images[qc.index(nm)] != e]
    rep.add("pelly product formulas", not bad, detail=bad or None)
    return rep
