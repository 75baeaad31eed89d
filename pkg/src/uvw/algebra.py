"""Finite-dimensional quiver algebras with homogeneous relations.

Orientation convention
----------------------
A path is stored as the tuple of its arrows in the order they are traversed,
together with its start vertex.  Products follow function composition: for
basis paths ``x`` and ``y`` the product ``x*y`` means "first ``y``, then
``x``" and is nonzero only when ``y`` ends where ``x`` starts.  Modules are
right modules, so the arrow ``a: i -> j`` acts on a module by a linear map
``M_j -> M_i`` and ``P_i = e_i A`` is spanned by the basis paths *ending* at
``i``.  With this choice the arrow ``a: 1 -> 2`` of A2 gives a simple ``P_1``
and a two-dimensional ``P_2`` whose radical is ``P_1``.

Vertices are 0-based internally; the JSON format and all display labels are
1-based.
"""
from dataclasses import dataclass
from fractions import Fraction

from .errors import InfiniteDimensional, MalformedRelation
from .linalg import frac, rref

MAX_PATH_LENGTH = 64
MAX_PATHS_PER_LEVEL = 200000


@dataclass(frozen=True)
class Arrow:
    id: str
    src: int
    tgt: int


class QuiverAlgebra:
    """Path algebra of a quiver modulo a homogeneous admissible ideal."""

    def __init__(self, n, arrows, relations=(), name=None, max_length=MAX_PATH_LENGTH):
        self.n = n
        self.arrows = tuple(arrows)
        self.name = name
        self.arrow_by_id = {a.id: a for a in self.arrows}
        if len(self.arrow_by_id) != len(self.arrows):
            raise MalformedRelation("duplicate arrow ids")
        for a in self.arrows:
            if not (0 <= a.src < n and 0 <= a.tgt < n):
                raise MalformedRelation(f"arrow {a.id} has a vertex out of range")
        self.relations = [self._check_relation(r) for r in relations]
        self.max_length = max_length
        self._build_basis()

    # ----- construction -------------------------------------------------
    def _path_ends(self, path):
        if not path:
            raise MalformedRelation("relation contains a trivial path")
        arrows = [self.arrow_by_id.get(x) for x in path]
        if None in arrows:
            raise MalformedRelation(f"unknown arrow in path {path}")
        for u, v in zip(arrows, arrows[1:]):
            if u.tgt != v.src:
                raise MalformedRelation(f"path {path} is not composable")
        return arrows[0].src, arrows[-1].tgt

    def _check_relation(self, terms):
        terms = [(frac(c), tuple(p)) for c, p in terms if frac(c)]
        if not terms:
            raise MalformedRelation("empty relation")
        ends = {self._path_ends(p) for _, p in terms}
        if len(ends) != 1:
            raise MalformedRelation("relation mixes sources or targets")
        lengths = {len(p) for _, p in terms}
        if min(lengths) < 2:
            raise MalformedRelation("relation has a path of length < 2")
        if len(lengths) != 1:
            raise MalformedRelation("only homogeneous relations are supported")
        return terms

    def _build_basis(self):
        n = self.n
        out_arrows = {v: [a for a in self.arrows if a.src == v] for v in range(n)}
        in_arrows = {v: [a for a in self.arrows if a.tgt == v] for v in range(n)}
        rel_by_len = {}
        for r in self.relations:
            rel_by_len.setdefault(len(r[0][1]), []).append(r)

        # basis entries: (src, tgt, arrows)
        self.basis = [(v, v, ()) for v in range(n)]
        self._nf = {}  # (src, arrows) -> {basis index: coef}
        for v in range(n):
            self._nf[(v, ())] = {v: Fraction(1)}
        level_paths = [(a.src, (a.id,)) for a in self.arrows]
        ideal_rows = []  # echelon basis of the ideal at the current level
        length = 1
        self.nilpotency = 1
        while level_paths:
            if length > self.max_length:
                raise InfiniteDimensional(
                    f"no vanishing path level up to length {self.max_length}")
            if len(level_paths) > MAX_PATHS_PER_LEVEL:
                raise InfiniteDimensional("too many paths at one length")
            col = {p: k for k, p in enumerate(level_paths)}
            m = len(level_paths)
            rows = []
            # ideal at this level: I_{l-1} * arrow + arrow * I_{l-1} + relations of length l
            for row in ideal_rows:
                for a in self.arrows:
                    right, left = [0] * m, [0] * m
                    hit_r = hit_l = False
                    for (s, p), c in row:
                        t = self.arrow_by_id[p[-1]].tgt if p else s
                        if a.src == t:
                            right[col[(s, p + (a.id,))]] += c
                            hit_r = True
                        if a.tgt == s:
                            left[col[(a.src, (a.id,) + p)]] += c
                            hit_l = True
                    if hit_r:
                        rows.append(right)
                    if hit_l:
                        rows.append(left)
            for r in rel_by_len.get(length, []):
                vec = [0] * m
                for c, p in r:
                    vec[col[(self.arrow_by_id[p[0]].src, p)]] += c
                rows.append(vec)
            rows = [[Fraction(x) for x in r] for r in rows]
            red, piv = rref(rows, m)
            pivset = set(piv)
            std = [k for k in range(m) if k not in pivset]
            if not std:
                for p in level_paths:
                    self._nf[p] = {}
                self._top_zero_length = length
                break
            self.nilpotency = length + 1
            idx = {}
            for k in std:
                s, p = level_paths[k]
                idx[k] = len(self.basis)
                self.basis.append((s, self.arrow_by_id[p[-1]].tgt, p))
                self._nf[level_paths[k]] = {idx[k]: Fraction(1)}
            for i, k in enumerate(piv):
                self._nf[level_paths[k]] = {idx[j]: -red[i][j] for j in std if red[i][j]}
            # sparse ideal rows for the next level
            ideal_rows = [[(level_paths[j], x) for j, x in enumerate(r) if x] for r in red]
            nxt = []
            for (s, p) in level_paths:
                t = self.arrow_by_id[p[-1]].tgt
                for a in out_arrows[t]:
                    nxt.append((s, p + (a.id,)))
            level_paths = nxt
            length += 1
        else:
            self._top_zero_length = length
        self.dim = len(self.basis)
        self.index = {(s, p): k for k, (s, _, p) in enumerate(self.basis)}
        self._mult_cache = {}
        self._by_ends = {}
        for k, (s, t, _) in enumerate(self.basis):
            self._by_ends.setdefault((s, t), []).append(k)
        del in_arrows

    # ----- basis queries --------------------------------------------------
    def e(self, v):
        return v

    def src(self, k):
        return self.basis[k][0]

    def tgt(self, k):
        return self.basis[k][1]

    def length(self, k):
        return len(self.basis[k][2])

    def paths(self, i, j):
        """Basis indices of paths from vertex i to vertex j."""
        return self._by_ends.get((i, j), [])

    def ending_at(self, i):
        return [k for k, b in enumerate(self.basis) if b[1] == i]

    def starting_at(self, i):
        return [k for k, b in enumerate(self.basis) if b[0] == i]

    def normal_form(self, src, arrows):
        """Normal form of a free path given by start vertex and traversed arrows."""
        arrows = tuple(arrows)
        if len(arrows) >= self._top_zero_length:
            return {}
        key = (src, arrows)
        if key in self._nf:
            return dict(self._nf[key])
        # composable but never enumerated only if invalid
        raise MalformedRelation(f"not a path: {arrows}")

    def mult(self, x, y):
        """Product x*y of basis elements: first y, then x."""
        key = (x, y)
        got = self._mult_cache.get(key)
        if got is not None:
            return got
        sx, tx, px = self.basis[x]
        sy, ty, py = self.basis[y]
        if ty != sx:
            res = {}
        else:
            res = self.normal_form(sy, py + px)
        self._mult_cache[key] = res
        return res

    def mul(self, u, v):
        """Product of elements given as {basis index: coefficient}."""
        out = {}
        for x, a in u.items():
            for y, b in v.items():
                for z, c in self.mult(x, y).items():
                    out[z] = out.get(z, 0) + a * b * c
        return {k: c for k, c in out.items() if c}

    def element(self, terms):
        """Element from [(coef, [arrow ids in traversal order])] or [(coef, vertex)]."""
        out = {}
        for c, p in terms:
            c = frac(c)
            if isinstance(p, int):
                nf = {p: Fraction(1)}
            else:
                p = tuple(p)
                s, _ = self._path_ends(p) if p else (None, None)
                nf = self.normal_form(s, p)
            for k, x in nf.items():
                out[k] = out.get(k, 0) + c * x
        return {k: x for k, x in out.items() if x}

    def path_label(self, k):
        s, t, p = self.basis[k]
        if not p:
            return f"e{s + 1}"
        # written in composition order, last arrow first
        return "".join(reversed(p))

    def check_associativity(self):
        for x in range(self.dim):
            for y in range(self.dim):
                xy = self.mult(x, y)
                for z in range(self.dim):
                    left = self.mul(xy, {z: 1})
                    right = self.mul({x: 1}, self.mult(y, z))
                    if left != right:
                        return False
        return True

    def describe(self):
        return {
            "vertices": self.n,
            "arrows": [{"id": a.id, "src": a.src + 1, "tgt": a.tgt + 1} for a in self.arrows],
            "relations": [[{"coef": str(c), "path": list(p)} for c, p in r] for r in self.relations],
        }

    def __repr__(self):
        return f"QuiverAlgebra({self.name or ''} n={self.n}, dim={self.dim})"


def build_algebra(spec, name=None, max_length=MAX_PATH_LENGTH):
    """Build from the JSON-style description (1-based vertices)."""
    n = int(spec["vertices"])
    arrows = [Arrow(str(a["id"]), int(a["src"]) - 1, int(a["tgt"]) - 1) for a in spec.get("arrows", [])]
    rels = []
    for r in spec.get("relations", []):
        terms = []
        for t in r:
            if "vertex" in t:
                raise MalformedRelation("idempotents are only allowed as quotient generators")
            terms.append((t.get("coef", 1), tuple(t["path"])))
        rels.append(terms)
    return QuiverAlgebra(n, arrows, rels, name=name or spec.get("name"), max_length=max_length)


class QuotientAlgebra(QuiverAlgebra):
    """An algebra A/J remembering how vertices and arrows of A survive."""

    def __init__(self, parent, n, arrows, relations, vertex_map, name=None):
        self.parent = parent
        self.vertex_map = vertex_map  # parent vertex -> new vertex or None
        super().__init__(n, arrows, relations, name=name)

    def image(self, k):
        """Image of the parent basis element k in this algebra."""
        s, _, p = self.parent.basis[k]
        if self.vertex_map[s] is None:
            return {}
        if any(x not in self.arrow_by_id for x in p):
            return {}
        return self.normal_form(self.vertex_map[s], p)

    def image_element(self, u):
        out = {}
        for k, c in u.items():
            for j, x in self.image(k).items():
                out[j] = out.get(j, 0) + c * x
        return {k: x for k, x in out.items() if x}


def quotient_algebra(A, gens, name=None):
    """A modulo the ideal generated by ``gens``.

    Each generator is ``{"vertex": i}`` (1-based, deletes the vertex), a single
    arrow (deletes the arrow), or a list of ``(coef, path)`` terms.
    """
    dead_vertices, dead_arrows, new_rels = set(), set(), []
    for g in gens:
        if isinstance(g, dict) and "vertex" in g:
            dead_vertices.add(int(g["vertex"]) - 1)
            continue
        if isinstance(g, str):
            g = [(1, (g,))]
        elif isinstance(g, dict):
            g = [(g.get("coef", 1), tuple(g["path"]))]
        terms = [(frac(c), tuple(p)) for c, p in g]
        if len(terms) == 1 and len(terms[0][1]) == 1:
            dead_arrows.add(terms[0][1][0])
            continue
        new_rels.append(terms)
    for a in A.arrows:
        if a.src in dead_vertices or a.tgt in dead_vertices:
            dead_arrows.add(a.id)
    vmap, k = [], 0
    for v in range(A.n):
        if v in dead_vertices:
            vmap.append(None)
        else:
            vmap.append(k)
            k += 1
    arrows = [Arrow(a.id, vmap[a.src], vmap[a.tgt]) for a in A.arrows if a.id not in dead_arrows]
    rels = []
    for r in list(A.relations) + new_rels:
        kept = [(c, p) for c, p in r if not any(x in dead_arrows for x in p)]
        if kept:
            rels.append(kept)
    return QuotientAlgebra(A, k, arrows, rels, vmap, name=name)


def identity_quotient(A):
    return quotient_algebra(A, [], name=A.name)
