"""The indexed set of indecomposable objects of K_Lambda with their metadata.

A catalog lists the minimal presentations of the indecomposable modules
followed by the shifted projectives.  Everything the equation generators need
(g- and d-vectors, tau partners, hom tables, compatibility degrees,
F-polynomials, AR middle terms) is computed once at construction.
"""
import hashlib
import json
from fractions import Fraction

from . import linalg as la
from . import modules as md
from .algebra import build_algebra
from .errors import (InternalInconsistency, KnittingStuck, SingularGram,
                     UnknownCatalog, ValidationFailed)
from .grassmann import f_polynomial, y_vars
from .homotopy import hom_shift, shift_projective, tau_h0
from .poly import Poly


class Catalog:
    def __init__(self, algebra, objects, labels, names, name=None):
        self.algebra = algebra
        self.name = name or algebra.name or "custom"
        self.objects = list(objects)
        self.labels = list(labels)
        self.names = list(names)
        self.size = len(self.objects)
        self.n = algebra.n
        self.yvars = y_vars(self.n)
        self.uvars = tuple(self.names)
        self._build()

    # ----- construction ------------------------------------------------------
    def _build(self):
        N = self.size
        self.is_shift = [not X.zero and len(X.minus) == 1 for X in self.objects]
        self.is_projective = [not X.minus and len(X.zero) == 1 for X in self.objects]
        self.h0 = [X.h0() for X in self.objects]
        self.g = [X.g_vector() for X in self.objects]
        self.d = [M.dims for M in self.h0]
        self.module_idx = [k for k in range(N) if not self.is_shift[k]]
        self.shift_idx = [k for k in range(N) if self.is_shift[k]]
        self.shift_of = {self.objects[k].minus[0]: k for k in self.shift_idx}
        self.proj_of = {self.objects[k].zero[0]: k for k in range(N) if self.is_projective[k]}

        # tau partners
        self.tau_module = [tau_h0(X) for X in self.objects]
        self.tau_index = []
        for k, T in enumerate(self.tau_module):
            if T.is_zero():
                self.tau_index.append(None)
            else:
                j = self.find_module(T)
                if j is None:
                    raise ValidationFailed(f"tau of {self.names[k]} is not in the catalog")
                self.tau_index.append(j)

        # hom tables
        self.hom_mod = [[0] * N for _ in range(N)]
        for i in self.module_idx:
            for j in self.module_idx:
                self.hom_mod[i][j] = md.hom_dim(self.h0[i], self.h0[j])
        self.hom_shift_mat = [[hom_shift(X, Y) for Y in self.objects] for X in self.objects]
        self.compat = [[self.hom_shift_mat[i][j] + self.hom_shift_mat[j][i] for j in range(N)]
                       for i in range(N)]
        self.rigid = [self.hom_shift_mat[k][k] == 0 for k in range(N)]

        # F-polynomials
        one = Poly.one(self.yvars)
        self.fpoly = [f_polynomial(M) if not M.is_zero() else one for M in self.h0]
        self.tau_fpoly = [self.fpoly[t] if t is not None else one for t in self.tau_index]
        self.middle = [self._middle(k) for k in range(N)]

    def find_module(self, M):
        """Index of the module object isomorphic to the indecomposable M, or None."""
        for k in self.module_idx:
            if self.h0[k].dims == M.dims and md._indec_iso(self.h0[k], M):
                return k
        return None

    def match_decomposition(self, M):
        """Decompose M into catalog objects: {index: multiplicity}."""
        out = {}
        for X, m in md.decompose(M):
            k = self.find_module(X)
            if k is None:
                raise ValidationFailed("summand outside the catalog")
            out[k] = out.get(k, 0) + m
        return out

    def _middle(self, k):
        """Module part of the AR middle term ending at object k (see ar_middle_term)."""
        A = self.algebra
        if self.is_projective[k]:
            R, _ = md.radical(self.h0[k])
            return self.match_decomposition(R)
        if self.is_shift[k]:
            i = self.objects[k].minus[0]
            return self.match_decomposition(md.quotient_by_socle_simple(md.injective_module(A, i)))
        return gram_middle_term(self, k)

    # ----- convenience -----------------------------------------------------------
    def index(self, key):
        if isinstance(key, int):
            return key
        for k in range(self.size):
            if key in (self.names[k], self.labels[k]):
                return k
        raise KeyError(key)

    def hash(self):
        doc = {"algebra": self.algebra.describe(),
               "objects": [X.to_json() for X in self.objects],
               "labels": self.labels}
        return hashlib.sha256(json.dumps(doc, sort_keys=True).encode()).hexdigest()[:16]

    def summary(self):
        rows = []
        for k in range(self.size):
            rows.append({
                "index": k, "name": self.names[k], "label": self.labels[k],
                "kind": "shift" if self.is_shift[k] else ("projective" if self.is_projective[k] else "module"),
                "g": list(self.g[k]), "d": list(self.d[k]), "rigid": self.rigid[k],
                "tau": None if self.tau_index[k] is None else self.names[self.tau_index[k]],
                "presentation": self.objects[k].to_json(),
            })
        return rows

    def __repr__(self):
        return f"Catalog({self.name}, {self.size} objects)"


def gram_middle_term(c, k):
    """Solve G m = cvec over the module objects (AR conflation tau X -> E -> X)."""
    mods = c.module_idx
    G = [[Fraction(c.hom_mod[z][m]) for m in mods] for z in mods]
    t = c.tau_index[k]
    cvec = []
    for z in mods:
        val = c.hom_mod[z][k] - (1 if z == k else 0)
        if t is not None:
            val += c.hom_mod[z][t]
        cvec.append(Fraction(val))
    sol = la.solve(G, cvec, len(mods))
    if sol is None or la.det(G) == 0:
        raise SingularGram("hom Gram matrix is singular")
    out = {}
    for m, x in zip(mods, sol):
        if x.denominator != 1 or x < 0:
            raise InternalInconsistency("AR middle term is not a nonnegative integer vector")
        if x:
            out[m] = int(x)
    return out


def ar_middle_term(c, k):
    """Multiset of module objects in the AR middle term at object k.

    For a projective P_i this is rad P_i; for Sigma P_i it is I_i / S_i.
    """
    return dict(c.middle[k])


# ----- building from modules ----------------------------------------------------

def _auto_labels(A, mods):
    labels, names, counts = [], [], {}
    for M in mods:
        kind = _classify(A, M)
        if kind:
            lab, nm = kind
        else:
            digits = "".join(str(x) for x in M.dims)
            lab, nm = f"M_{{{digits}}}", f"M{digits}"
        if nm in counts:
            counts[nm] += 1
            lab, nm = f"{lab}'" * 1, f"{nm}_{counts[nm]}"
        else:
            counts[nm] = 0
        labels.append(lab)
        names.append(nm)
    return labels, names


def _classify(A, M):
    for i in range(A.n):
        P = md.projective_module(A, i)
        if P.dims == M.dims and md._indec_iso(P, M):
            return f"P_{i + 1}", f"P{i + 1}"
    if M.total == 1:
        i = M.dims.index(1)
        return f"S_{i + 1}", f"S{i + 1}"
    for i in range(A.n):
        I = md.injective_module(A, i)
        if I.dims == M.dims and md._indec_iso(I, M):
            return f"I_{i + 1}", f"I{i + 1}"
    return None


def catalog_from_complexes(A, entries, name=None):
    """entries: list of (label, name, TwoTermComplex) for the module objects;
    shifted projectives are appended."""
    objects, labels, names = [], [], []
    for lab, nm, X in entries:
        if X.has_unit_entry():
            X = md.min_presentation(X.h0())
        objects.append(X)
        labels.append(lab)
        names.append(nm)
    for i in range(A.n):
        objects.append(shift_projective(A, i))
        labels.append(f"\\Sigma P_{i + 1}")
        names.append(f"SigmaP{i + 1}")
    return Catalog(A, objects, labels, names, name=name)


def catalog_from_modules(A, mods, labels=None, names=None, name=None, order=True):
    mods = list(mods)
    if order:
        mods = _canonical_order(A, mods)
    if labels is None or names is None:
        labels, names = _auto_labels(A, mods)
    entries = [(l, nm, md.min_presentation(M)) for l, nm, M in zip(labels, names, mods)]
    return catalog_from_complexes(A, entries, name=name)


def _canonical_order(A, mods):
    proj, rest = {}, []
    for M in mods:
        for i in range(A.n):
            P = md.projective_module(A, i)
            if P.dims == M.dims and md._indec_iso(P, M):
                proj[i] = M
                break
        else:
            rest.append(M)
    rest.sort(key=lambda M: (M.total, tuple(-x for x in M.dims)))
    return [proj[i] for i in sorted(proj)] + rest


# ----- knitting by almost split sequences -----------------------------------------

def ar_sequence_middle(X):
    """Middle term E of the almost split sequence 0 -> tau X -> E -> X -> 0.

    Ext^1(X, tau X) is computed from a projective presentation; the class of
    the almost split sequence spans the socle of Ext^1 under the action of the
    radical of End(tau X), and E is the corresponding pushout.
    """
    A = X.algebra
    Y = md.tau(X)
    if Y.is_zero():
        raise ValueError("projective module has no almost split sequence ending at it")
    gens = md._cover_generators(X)
    verts0, pi = md.cover_map(X, gens)
    P0 = md.projective_sum(A, verts0)
    K, inc = md.kernel(P0, X, pi)

    def flat(f):
        return [x for v in range(A.n) for row in f[v] for x in row]

    H = md.hom_space(K, Y)
    R = [flat(md.map_compose(K, P0, Y, f, inc)) for f in md.hom_space(P0, Y)]
    dimv = sum(Y.dims[v] * K.dims[v] for v in range(A.n))
    ann = la.nullspace(R, dimv) if R else [[la.ONE if i == j else la.ZERO for j in range(dimv)]
                                              for i in range(dimv)]
    E = md.hom_space(Y, Y)
    traces = [md.trace(e, Y) for e in E]
    rad_coeffs = la.nullspace([traces], len(E))
    rad = []
    for cs in rad_coeffs:
        psi = [la.zeros(Y.dims[v], Y.dims[v]) for v in range(A.n)]
        for cf, e in zip(cs, E):
            if cf:
                for v in range(A.n):
                    for i in range(Y.dims[v]):
                        for j in range(Y.dims[v]):
                            psi[v][i][j] += cf * e[v][i][j]
        rad.append(psi)
    Hflat = [flat(h) for h in H]
    rows = []
    for psi in rad:
        imgs = [flat(md.map_compose(K, Y, Y, psi, h)) for h in H]
        for c in ann:
            rows.append([sum((a * b for a, b in zip(c, img)), la.ZERO) for img in imgs])
    sols = la.nullspace(rows, len(H)) if rows else [[la.ONE if i == j else la.ZERO for j in range(len(H))]
                                                   for i in range(len(H))]
    xi = None
    for s in sols:
        vec = [sum((cf * hv[t] for cf, hv in zip(s, Hflat)), la.ZERO) for t in range(dimv)]
        if any(sum((a * b for a, b in zip(c, vec)), la.ZERO) for c in ann):
            xi = [la.zeros(Y.dims[v], K.dims[v]) for v in range(A.n)]
            for cf, h in zip(s, H):
                if cf:
                    for v in range(A.n):
                        for i in range(Y.dims[v]):
                            for j in range(K.dims[v]):
                                xi[v][i][j] += cf * h[v][i][j]
            break
    if xi is None:
        raise KnittingStuck("no almost split class found in Ext^1(X, tau X)")
    S = md.direct_sum([P0, Y])
    basis = []
    for v in range(A.n):
        vecs = []
        for j in range(K.dims[v]):
            top = [inc[v][i][j] for i in range(P0.dims[v])]
            bot = [-xi[v][i][j] for i in range(Y.dims[v])]
            vecs.append(top + bot)
        basis.append(la.row_space(vecs, S.dims[v]))
    Emod, _ = md.quotient(S, basis)
    return Y, Emod


def knit(A, max_objects=200, directed=False):
    """Enumerate ind mod A by closing under tau, radicals of projectives and
    middle terms of almost split sequences, starting from the injectives and
    projectives.  Every indecomposable of a representation-finite algebra lies
    on a path of irreducible maps ending at an injective, so walking those
    paths backwards reaches all of them.
    """
    known = []
    edges = set()

    def add(M):
        for k, K in enumerate(known):
            if K.dims == M.dims and md._indec_iso(K, M):
                return k, False
        known.append(M)
        if len(known) > max_objects:
            raise KnittingStuck("too many indecomposables; algebra may not be representation-finite")
        return len(known) - 1, True

    queue = []
    for i in range(A.n):
        for M in (md.injective_module(A, i), md.projective_module(A, i)):
            k, new = add(M)
            if new:
                queue.append(k)
    while queue:
        k = queue.pop(0)
        X = known[k]
        pres = md.min_presentation(X)
        if not pres.minus:
            R, _ = md.radical(X)
            preds = [Z for Z, _ in md.decompose(R)]
        else:
            Y, E = ar_sequence_middle(X)
            j, new = add(Y)
            if new:
                queue.append(j)
            edges.add(("tau", j, k))
            preds = [Z for Z, _ in md.decompose(E)]
        for Z in preds:
            j, new = add(Z)
            edges.add(("arrow", j, k))
            if new:
                queue.append(j)
    if directed:
        _check_directed(len(known), edges)
    return known


def _check_directed(n, edges):
    import networkx as nx
    G = nx.DiGraph()
    G.add_nodes_from(range(n))
    for kind, a, b in edges:
        if kind == "arrow":
            G.add_edge(a, b)
    if not nx.is_directed_acyclic_graph(G):
        raise KnittingStuck("the AR quiver has an oriented cycle")


def knit_directed(A, name=None):
    """Catalog of a representation-directed algebra built by knitting."""
    mods = knit(A, directed=True)
    return catalog_from_modules(A, mods, name=name)


def knit_catalog(A, name=None):
    return catalog_from_modules(A, knit(A), name=name)


# ----- validation -------------------------------------------------------------------

class Report:
    """List of named checks with pass flags, serializable to JSON."""

    def __init__(self, title=""):
        self.title = title
        self.entries = []

    def add(self, name, ok, detail=None, value=None, tol=None, tag=None):
        self.entries.append({"name": name, "pass": bool(ok), "value": value, "tol": tol,
                             "tag": tag, "detail": detail})
        return ok

    def extend(self, other):
        self.entries.extend(other.entries)

    @property
    def ok(self):
        return all(e["pass"] for e in self.entries)

    def failures(self):
        return [e for e in self.entries if not e["pass"]]

    def to_json(self):
        return {"title": self.title, "pass": self.ok, "checks": self.entries}


def validate_catalog(c, check_ar=True):
    rep = Report(f"validate {c.name}")
    n, N = c.n, c.size
    for i in range(n):
        neg = [k for k in range(N) if c.g[k] == tuple(-1 if j == i else 0 for j in range(n))]
        pos = [k for k in range(N) if c.g[k] == tuple(1 if j == i else 0 for j in range(n))]
        rep.add(f"ray -e_{i + 1}", len(neg) == 1, detail="missing" if not neg else None)
        rep.add(f"ray +e_{i + 1}", len(pos) >= 1)
    dup = []
    for a in range(len(c.module_idx)):
        for b in range(a + 1, len(c.module_idx)):
            i, j = c.module_idx[a], c.module_idx[b]
            if c.d[i] == c.d[j] and md._indec_iso(c.h0[i], c.h0[j]):
                dup.append((c.names[i], c.names[j]))
    rep.add("no duplicate isomorphism classes", not dup, detail=dup or None)
    indec = [k for k in c.module_idx if not md.is_indecomposable(c.h0[k])]
    rep.add("module objects indecomposable", not indec, detail=[c.names[k] for k in indec] or None)
    bad = []
    for x in range(N):
        for y in range(N):
            t = c.tau_module[x]
            expect = 0 if t.is_zero() or c.is_shift[y] else md.hom_dim(c.h0[y], t)
            if c.hom_shift_mat[x][y] != expect:
                bad.append((c.names[x], c.names[y]))
    rep.add("homotopy hom equals hom(H0 Y, H0 tau X)", not bad, detail=bad or None)
    rep.add("rigid iff hom(X, Sigma X) = 0",
            all(c.rigid[k] == (c.hom_shift_mat[k][k] == 0) for k in range(N)))
    sym = all(c.compat[i][j] == c.compat[j][i] for i in range(N) for j in range(N))
    rep.add("compatibility symmetric", sym)
    G = [[Fraction(c.hom_mod[a][b]) for b in c.module_idx] for a in c.module_idx]
    dG = la.det(G) if G else Fraction(1)
    rep.add("hom Gram matrix unimodular", abs(dG) == 1, value=str(dG))
    # <g(X), d(M)> = hom(H0 X, M) - hom(M, H0 tau X)
    bad = []
    for x in range(N):
        for m in c.module_idx:
            lhs = sum(a * b for a, b in zip(c.g[x], c.d[m]))
            rhs = c.hom_mod[x][m] - (md.hom_dim(c.h0[m], c.tau_module[x]) if not c.tau_module[x].is_zero() else 0)
            if lhs != rhs:
                bad.append((c.names[x], c.names[m]))
    rep.add("g-d pairing identity", not bad, detail=bad or None)
    # every tau partner and middle term is inside the catalog (already enforced), d additivity
    bad = []
    for k in c.module_idx:
        if c.is_projective[k]:
            continue
        t = c.tau_index[k]
        dE = [sum(m * c.d[j][v] for j, m in c.middle[k].items()) for v in range(n)]
        if any(dE[v] != c.d[k][v] + c.d[t][v] for v in range(n)):
            bad.append(c.names[k])
    rep.add("d(E) = d(X) + d(tau X)", not bad, detail=bad or None)
    bad = []
    for k in c.module_idx:
        if c.is_projective[k]:
            continue
        t = c.tau_index[k]
        gE = [sum(m * c.g[j][v] for j, m in c.middle[k].items()) for v in range(n)]
        diff = [c.g[k][v] + c.g[t][v] - gE[v] for v in range(n)]
        if any(x > 0 for x in diff):
            bad.append((c.names[k], diff))
    rep.add("g(X) + g(tau X) - g(E) is a shifted-projective class", not bad, detail=bad or None)
    if check_ar:
        rep.extend(mesh_check(c))
    return rep


def mesh_check(c):
    """Almost split sequences computed from Ext^1 agree with the Gram solution
    and satisfy the mesh relations against every probe."""
    rep = Report()
    bad, outside = [], []
    for k in c.module_idx:
        if c.is_projective[k]:
            continue
        Y, E = ar_sequence_middle(c.h0[k])
        try:
            direct = c.match_decomposition(E)
        except ValidationFailed:
            outside.append(c.names[k])
            continue
        if direct != c.middle[k]:
            bad.append(c.names[k])
        t = c.tau_index[k]
        for z in c.module_idx:
            lhs = c.hom_mod[z][t] - sum(m * c.hom_mod[z][j] for j, m in direct.items()) + c.hom_mod[z][k]
            if lhs != (1 if z == k else 0):
                bad.append((c.names[k], c.names[z]))
    rep.add("almost split middle terms inside catalog", not outside, detail=outside or None)
    rep.add("mesh relations", not bad, detail=bad or None)
    return rep


# ----- loading ------------------------------------------------------------------------

_BUILTIN_CACHE = {}


def load_catalog(source, validate=True, use_cache=True):
    """Built-in name, path to a catalog JSON file, or a dict."""
    from . import builtins
    if isinstance(source, str) and not source.endswith(".json"):
        if use_cache and source in _BUILTIN_CACHE:
            return _BUILTIN_CACHE[source]
        c = builtins.build(source)
        if c is None:
            path = builtins.search_path(source)
            if path is None:
                raise UnknownCatalog(source)
            c = catalog_from_file(path)
        if validate:
            rep = validate_catalog(c)
            if not rep.ok:
                raise ValidationFailed(f"catalog {source} failed validation", rep)
        if use_cache:
            _BUILTIN_CACHE[source] = c
        return c
    c = catalog_from_file(source)
    if validate:
        rep = validate_catalog(c)
        if not rep.ok:
            raise ValidationFailed("catalog failed validation", rep)
    return c


def catalog_from_file(source):
    import os
    if isinstance(source, dict):
        data, base = source, "."
    else:
        with open(source) as fh:
            data = json.load(fh)
        base = os.path.dirname(os.path.abspath(source))
    alg = data["algebra"]
    if isinstance(alg, str):
        with open(os.path.join(base, alg)) as fh:
            alg = json.load(fh)
    A = build_algebra(alg, name=data.get("name"))
    mods, labels, names = [], [], []
    for entry in data["modules"]:
        if isinstance(entry, str):
            entry = {"file": entry}
        mdata = entry.get("module")
        if mdata is None:
            with open(os.path.join(base, entry["file"])) as fh:
                mdata = json.load(fh)
        M = md.ModuleRep.from_json(A, mdata)
        if not M.check_relations():
            raise ValidationFailed("module violates the relations")
        mods.append(M)
        labels.append(entry.get("label"))
        names.append(entry.get("name") or entry.get("label"))
    if any(l is None for l in labels):
        auto_l, auto_n = _auto_labels(A, mods)
        labels = [l or a for l, a in zip(labels, auto_l)]
        names = [nm or a for nm, a in zip(names, auto_n)]
    entries = [(l, nm, md.min_presentation(M)) for l, nm, M in zip(labels, names, mods)]
    return catalog_from_complexes(A, entries, name=data.get("name"))


# ----- relabeling -----------------------------------------------------------------------

def relabel(c, labels, names):
    """Same catalog with new display labels (objects and metadata are shared)."""
    new = object.__new__(Catalog)
    new.__dict__.update(c.__dict__)
    new.labels = list(labels)
    new.names = list(names)
    new.uvars = tuple(names)
    return new


def label_intervals(c):
    """Linear A_n (arrows i+1 -> i): M_{i,j} is the interval module supported on
    i < k < j, and Sigma P_i is paired with (-1, i)."""
    labels, names, pairs = [], [], {}
    for k in range(c.size):
        if c.is_shift[k]:
            i, j = -1, c.objects[k].minus[0] + 1
        else:
            supp = [v + 1 for v, x in enumerate(c.d[k]) if x]
            i, j = supp[0] - 1, supp[-1] + 1
        labels.append(f"M_{{{i},{j}}}")
        names.append(f"M{i}_{j}".replace("-", "m"))
        pairs[names[-1]] = (i, j)
    out = relabel(c, labels, names)
    out.pairs = pairs
    return out


# exponent table of the grid u-equations, keyed by triples of [6]
GRID_COMPAT = """
124: 135 136 235 236
125: 136 146 236 246 346
134: 235 236 245 246 256
135: 124 146 236 245 256 346 246^2
136: 124 125 245 246 256
145: 246 256 346 356
146: 125 135 235 256 356
235: 124 134 146 246 346
236: 124 125 134 135
245: 134 135 136 346 356
246: 125 134 136 145 235 356 135^2
256: 134 135 136 145 146
346: 125 135 145 235 245
356: 145 146 245 246
"""


def parse_compat_table(text):
    table = {}
    for line in text.strip().splitlines():
        head, rest = line.split(":")
        row = {}
        for tok in rest.split():
            name, _, e = tok.partition("^")
            row[name] = int(e or 1)
        table[head.strip()] = row
    return table


def match_compat(c, table):
    """Bijection catalog index -> table key preserving every compatibility degree,
    or None.  Found by weighted graph isomorphism."""
    import networkx as nx
    from networkx.algorithms.isomorphism import GraphMatcher
    G1, G2 = nx.Graph(), nx.Graph()
    for k in range(c.size):
        G1.add_node(k, loop=c.compat[k][k])
        for j in range(k + 1, c.size):
            if c.compat[k][j]:
                G1.add_edge(k, j, w=c.compat[k][j])
    for key, row in table.items():
        G2.add_node(key, loop=row.get(key, 0))
        for other, e in row.items():
            if other != key:
                G2.add_edge(key, other, w=e)
    gm = GraphMatcher(G1, G2, node_match=lambda a, b: a["loop"] == b["loop"],
                      edge_match=lambda a, b: a["w"] == b["w"])
    for m in gm.isomorphisms_iter():
        return m
    return None


def label_grid(c):
    m = match_compat(c, parse_compat_table(GRID_COMPAT))
    if m is None:
        raise ValidationFailed("knitted grid catalog does not match the triple labelling")
    return relabel(c, [m[k] for k in range(c.size)], [m[k] for k in range(c.size)])
