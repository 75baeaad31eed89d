"""The g-vector fan of the rigid objects and tropical evaluation.

Every maximal cone is unimodular, so cone coordinates are integer matrix
products with the inverse basis and all membership tests are exact.
"""
import itertools
import random

import numpy as np

from . import equations as eqn
from . import linalg as la
from .catalog import Report
from .errors import FanIncomplete, OutsideSupport


class GFan:
    def __init__(self, catalog, rays, cones):
        self.catalog = catalog
        self.n = catalog.n
        self.rays = list(rays)
        self.cones = [tuple(sorted(s)) for s in cones]
        self.ray_g = {k: catalog.g[k] for k in self.rays}
        self._inv = []
        for cone in self.cones:
            B = [[catalog.g[k][i] for k in cone] for i in range(self.n)]
            inv = la.inverse([[la.frac(x) for x in row] for row in B])
            self._inv.append(np.array([[int(x) for x in row] for row in inv], dtype=np.int64))
        self.incidence = {k: [j for j, cone in enumerate(self.cones) if k in cone] for k in self.rays}

    def coords(self, j, g):
        return self._inv[j] @ np.asarray(g, dtype=np.int64)

    def locate(self, g):
        """Index of a max cone containing g, with its coordinates, or None."""
        for j in range(len(self.cones)):
            x = self.coords(j, g)
            if (x >= 0).all():
                return j, x
        return None

    def faces(self):
        """All cones of the fan (including the zero cone) as sorted tuples."""
        out = {()}
        for cone in self.cones:
            for r in range(1, len(cone) + 1):
                out.update(itertools.combinations(cone, r))
        return out

    def to_json(self):
        c = self.catalog
        return {"rays": [{"object": c.names[k], "g": list(c.g[k])} for k in self.rays],
                "cones": [[c.names[k] for k in cone] for cone in self.cones]}

    def polymake(self):
        c = self.catalog
        idx = {k: i for i, k in enumerate(self.rays)}
        lines = ["RAYS"]
        lines += [" ".join(str(x) for x in c.g[k]) for k in self.rays]
        lines += ["", "MAXIMAL_CONES"]
        lines += ["{" + " ".join(str(idx[k]) for k in cone) + "}" for cone in self.cones]
        return "\n".join(lines) + "\n"

    def __repr__(self):
        return f"GFan({len(self.rays)} rays, {len(self.cones)} max cones)"


def build_fan(c, samples=10000, radius=10, seed=0, check=True):
    import networkx as nx
    rays = [k for k in range(c.size) if c.rigid[k]]
    G = nx.Graph()
    G.add_nodes_from(rays)
    for a, b in itertools.combinations(rays, 2):
        if c.compat[a][b] == 0:
            G.add_edge(a, b)
    cones = []
    for clique in nx.find_cliques(G):
        if len(clique) != c.n:
            raise FanIncomplete(f"maximal compatible set of size {len(clique)}")
        B = [[la.frac(c.g[k][i]) for k in clique] for i in range(c.n)]
        if abs(la.det(B)) != 1:
            raise FanIncomplete("maximal cone is not unimodular")
        cones.append(clique)
    cones.sort(key=lambda s: sorted(s))
    fan = GFan(c, rays, cones)
    if check:
        bad = sample_completeness(fan, samples, radius, seed)
        if bad["outside"]:
            raise FanIncomplete(f"{bad['outside']} sampled vectors lie in no cone")
    return fan


def sample_completeness(fan, samples=10000, radius=10, seed=0):
    """Counts of sampled lattice points lying in no cone or in two open cones."""
    rng = np.random.default_rng(seed)
    X = rng.integers(-radius, radius + 1, size=(fan.n, samples), dtype=np.int64)
    closed = np.zeros(samples, dtype=np.int64)
    opened = np.zeros(samples, dtype=np.int64)
    for inv in fan._inv:
        C = inv @ X
        closed += (C >= 0).all(axis=0)
        opened += (C > 0).all(axis=0)
    return {"samples": samples, "outside": int((closed == 0).sum()),
            "double_interior": int((opened > 1).sum()),
            "boundary": int(((opened == 0) & (closed > 0)).sum())}


def pairwise_faces(fan, max_pairs=5000):
    """Cones meet along the cone of their common rays (LP per pair)."""
    from scipy.optimize import linprog
    c = fan.catalog
    bad, checked = [], 0
    for s, t in itertools.combinations(range(len(fan.cones)), 2):
        if checked >= max_pairs:
            break
        checked += 1
        A, B = fan.cones[s], fan.cones[t]
        common = set(A) & set(B)
        if len(common) == fan.n - 1:
            continue  # adjacent cones sharing a facet are checked by sampling
        M = np.array([[c.g[k][i] for k in A] + [-c.g[k][i] for k in B] for i in range(fan.n)], float)
        for side in (0, 1):
            obj = np.zeros(2 * fan.n)
            rays = A if side == 0 else B
            off = 0 if side == 0 else fan.n
            for i, k in enumerate(rays):
                if k not in common:
                    obj[off + i] = -1.0
            res = linprog(obj, A_eq=M, b_eq=np.zeros(fan.n), A_ub=np.ones((1, 2 * fan.n)), b_ub=[1.0],
                          bounds=[(0, None)] * (2 * fan.n), method="highs")
            if res.status == 0 and -res.fun > 1e-9:
                bad.append((s, t))
                break
    return bad, checked


# ----- tropical evaluation -------------------------------------------------------

def trop_poly(p, g):
    return max(sum(a * b for a, b in zip(e, g)) for e in p.terms)


def trop_eval(f, g):
    """max over numerator exponents of <e, g> minus the same for the denominator."""
    return trop_poly(f.num, g) - trop_poly(f.den, g)


def generic_multiplicities(fan, g):
    hit = fan.locate(g)
    if hit is None:
        raise OutsideSupport(f"{list(g)} lies in no cone")
    j, x = hit
    return {k: int(v) for k, v in zip(fan.cones[j], x) if v}


def check_trop_theorem(c, fan, samples=50, radius=10, seed=0):
    rep = Report(f"tropical multiplicities {c.name}")
    vs = [eqn.v_rational(c, M) for M in range(c.size)]
    bad = []
    for M in range(c.size):
        for N in fan.rays:
            want = -1 if M == N else 0
            if trop_eval(vs[M], c.g[N]) != want:
                bad.append((c.names[M], c.names[N]))
    rep.add("trop v_M(g_N) = -delta for rigid N", not bad, detail=bad or None)
    rng = random.Random(seed)
    pts = [[rng.randint(-radius, radius) for _ in range(c.n)] for _ in range(samples)]
    bad = []
    for M in range(c.size):
        if c.rigid[M]:
            continue
        for g in [c.g[N] for N in fan.rays] + pts:
            if trop_eval(vs[M], g) != 0:
                bad.append((c.names[M], list(g)))
    rep.add("trop v_M = 0 for non-rigid M", not bad, detail=bad or None)
    bad = []
    for g in pts:
        mult = generic_multiplicities(fan, g)
        for M in range(c.size):
            if -trop_eval(vs[M], g) != mult.get(M, 0):
                bad.append((c.names[M], g))
    rep.add("-trop v_M(g) = generic multiplicity", not bad, detail=bad[:5] or None)
    bad = []
    for cone in fan.cones:
        s = [sum(c.g[k][i] for k in cone) for i in range(c.n)]
        for M in range(c.size):
            if trop_eval(vs[M], s) != sum(trop_eval(vs[M], c.g[k]) for k in cone):
                bad.append((c.names[M], cone))
    rep.add("trop v_M linear on max cones", not bad, detail=bad[:5] or None)
    return rep


# ----- Newton polytope ---------------------------------------------------------------

def _argmax(p, g):
    best, arg = None, []
    for e in p.terms:
        v = sum(a * b for a, b in zip(e, g))
        if best is None or v > best:
            best, arg = v, [e]
        elif v == best:
            arg.append(e)
    return arg


def newton_vertex(c, g):
    """The face of Newt(prod F_M) maximizing <., g>, if it is a single point."""
    total = [0] * c.n
    for M in c.module_idx:
        arg = _argmax(c.fpoly[M], g)
        if len(arg) != 1:
            return None
        total = [a + b for a, b in zip(total, arg[0])]
    return tuple(total)


def newton_fan_check(c, fan, seed=0, probes=5):
    """Each max cone picks one vertex of the Newton polytope of prod F_M, and
    different cones pick different vertices."""
    rep = Report(f"Newton polytope {c.name}")
    rng = random.Random(seed)
    verts, bad = {}, []
    for cone in fan.cones:
        seen = set()
        for t in range(probes):
            w = [1] * len(cone) if t == 0 else [rng.randint(1, 9) for _ in cone]
            g = [sum(x * c.g[k][i] for x, k in zip(w, cone)) for i in range(c.n)]
            seen.add(newton_vertex(c, g))
        if None in seen or len(seen) != 1:
            bad.append(cone)
        else:
            verts[cone] = seen.pop()
    rep.add("each max cone selects one vertex", not bad, detail=[list(x) for x in bad] or None)
    rep.add("distinct cones select distinct vertices", len(set(verts.values())) == len(verts))
    nv = newton_vertex_count(c)
    if nv is not None:
        rep.add("vertex count equals max cone count", nv == len(fan.cones), value=nv)
    return rep


def newton_vertex_count(c):
    """Vertices of the Minkowski sum of the Newton polytopes (n = 2, 3 only)."""
    if c.n not in (2, 3):
        return None
    from scipy.spatial import ConvexHull, QhullError
    pts = np.zeros((1, c.n))
    for M in c.module_idx:
        P = np.array(list(c.fpoly[M].terms), dtype=float)
        pts = (pts[:, None, :] + P[None, :, :]).reshape(-1, c.n)
        pts = np.unique(pts, axis=0)
        try:
            pts = pts[ConvexHull(pts).vertices]
        except (QhullError, ValueError):
            pass
    try:
        return len(ConvexHull(pts).vertices)
    except (QhullError, ValueError):
        return None


def stratum_counts(fan):
    """Number of cones of each dimension (dimension 0 is the zero cone)."""
    counts = [0] * (fan.n + 1)
    for f in fan.faces():
        counts[len(f)] += 1
    return counts
