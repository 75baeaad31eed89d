"""Floating-point checks: Rogers dilogarithm, positivity, stringy integrals.

Stringy integrals are computed cone by cone.  On a unimodular max cone with
rays g_1..g_n put t = sum c_k g_k and z_k = exp(-c_k).  Then
v_{g_k} = z_k H and every other v is H, where each H is a ratio of polynomials
in z with positive constant term.  The integral over the cone becomes
Gauss-Jacobi quadrature with weight prod z_k^(X_k - 1) on [0, 1]^n.  A plain
truncated box in log coordinates is kept as a second method.
"""
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import bernoulli, logsumexp, roots_jacobi, roots_legendre

from . import equations as eqn
from .catalog import Report
from .errors import DomainError, InternalInconsistency, NotConvergent, SampleOutOfRange

PI2_6 = math.pi ** 2 / 6

# B_k u^(k+1)/(k+1)! with u = -log(1 - x); 40 terms reach machine precision for u <= log 2
_BERN = bernoulli(40)
_BCOEF = np.array([_BERN[k] / math.factorial(k + 1) for k in range(41)])


def _li2_series(u):
    """Li_2(1 - exp(-u)) for 0 <= u <= log 2."""
    total, p = 0.0, u
    for c in _BCOEF:
        total += c * p
        p *= u
    return total


def _rogers_pair(x, y):
    """L(x) given x and y = 1 - x separately, so neither loses precision."""
    if x <= 0.0:
        return 0.0
    if y <= 0.0:
        return PI2_6
    if x <= 0.5:
        return _li2_series(-math.log(y)) + 0.5 * math.log(x) * math.log(y)
    return PI2_6 - _li2_series(-math.log(x)) - 0.5 * math.log(y) * math.log(x)


def rogers_dilog(x):
    """Rogers dilogarithm L(x) = Li_2(x) + log(x) log(1 - x) / 2 on [0, 1]."""
    x = float(x)
    if not 0.0 <= x <= 1.0 or math.isnan(x):
        raise DomainError(f"Rogers dilogarithm needs 0 <= x <= 1, got {x}")
    return _rogers_pair(x, 1.0 - x)


# ----- evaluation of F-polynomials at y = exp(t) ---------------------------------

class _LogPoly:
    """log p(exp(t)) for a polynomial with real coefficients, vectorized in t."""

    def __init__(self, p):
        terms = list(p.terms.items())
        self.exps = np.array([e for e, _ in terms], dtype=float).reshape(len(terms), -1)
        self.coefs = np.array([float(c) for _, c in terms])

    def __call__(self, T):
        # T: (samples, n)
        if self.exps.shape[1] == 0:
            return np.full(T.shape[0], math.log(self.coefs.sum())), np.ones(T.shape[0])
        return logsumexp(self.exps @ T.T, axis=0, b=self.coefs[:, None], return_sign=True)


def _log_one_minus_v(c):
    """Evaluators of log(1 - v_X) = <d, t> - log F_X - log F_tauX."""
    out = []
    for X in range(c.size):
        out.append((np.array(c.d[X], dtype=float), _LogPoly(c.fpoly[X]), _LogPoly(c.tau_fpoly[X])))
    return out


def _sample_t(rng, n, trials, lo=1e-3, hi=1e3):
    return rng.uniform(math.log(lo), math.log(hi), size=(trials, n))


def _log_v_at(c, T):
    """(log v, log(1 - v)) at each row of T, shape (samples, objects).

    v is evaluated from its own numerator F_X F_tauX - y^d rather than as
    1 - y^d/(F_X F_tauX), which would cancel when v is tiny.  Entries where
    the numerator or an F is not positive are NaN.
    """
    lv_cols, lw_cols = [], []
    for X, (d, F, G) in enumerate(_log_one_minus_v(c)):
        v = eqn.v_rational(c, X, normalize=False)
        ln, sn = _LogPoly(v.num)(T)
        ld, sd = _LogPoly(v.den)(T)
        lf, sf = F(T)
        lg, sg = G(T)
        lv = np.where((sn > 0) & (sd > 0), ln - ld, np.nan)
        lw = np.where((sf > 0) & (sg > 0), T @ d - lf - lg, np.nan)
        lv_cols.append(lv)
        lw_cols.append(lw)
    return np.array(lv_cols).T, np.array(lw_cols).T


def _in_range(LV, LW):
    """0 < v < 1 at each entry.

    v > 0 and 1 - v > 0 are the finiteness of the two logs; the independent
    evaluations must also add up to one, which catches a sign slip or a
    wrong tau-pairing.
    """
    ok = np.isfinite(LV) & np.isfinite(LW)
    total = np.exp(np.where(ok, LV, 0.0)) + np.exp(np.where(ok, LW, 0.0))
    return ok & (np.abs(total - 1.0) < 1e-12)


def dilog_identity_check(c, trials=100, seed=0, points=None):
    """Maximum of |sum_N L(1 - v_N) - n pi^2/6| over seeded positive samples."""
    rng = np.random.default_rng(seed)
    T = np.log(np.asarray(points, dtype=float)) if points is not None else _sample_t(rng, c.n, trials)
    LV, LW = _log_v_at(c, T)
    ok = _in_range(LV, LW)
    if not ok.all():
        i, j = np.argwhere(~ok)[0]
        raise SampleOutOfRange(f"v_{c.names[j]} = exp({LV[i, j]}) outside (0, 1) at y = {np.exp(T[i]).tolist()}")
    V, W = np.exp(LV), np.exp(LW)
    target = c.n * PI2_6
    dev = 0.0
    for row_v, row_w in zip(V, W):
        s = math.fsum(_rogers_pair(w, v) for v, w in zip(row_v, row_w))
        dev = max(dev, abs(s - target))
    return dev


def positivity_scan(c, trials=1000, seed=0):
    """F_M(y) > 0 and 0 < v_N(y) < 1 at log-uniform samples; reports minima."""
    rep = Report(f"positivity {c.name}")
    rng = np.random.default_rng(seed)
    T = _sample_t(rng, c.n, trials)
    fmin = math.inf
    sign_ok = True
    for M in c.module_idx:
        lf, sf = _LogPoly(c.fpoly[M])(T)
        sign_ok &= bool((sf > 0).all())
        fmin = min(fmin, float(np.exp(lf).min()))
    rep.add("F_M(y) > 0", sign_ok and fmin > 0, value=fmin)
    LV, LW = _log_v_at(c, T)
    rep.add("0 < v_N(y) < 1", bool(_in_range(LV, LW).all()),
            value={"min log v": float(np.nanmin(LV)), "min log(1 - v)": float(np.nanmin(LW))})
    return rep


# ----- stringy integrals ------------------------------------------------------------

@dataclass
class AmplitudeSpec:
    catalog: object
    exponents: object  # list by object index, or dict keyed by name / label / index
    method: str = "fan"
    order: int = 24
    T: float = 30.0
    panels: int = 8
    panel_points: int = 64
    tol: float = 1e-8
    default: float = None
    extra: dict = field(default_factory=dict)

    def exponent_vector(self):
        c = self.catalog
        if isinstance(self.exponents, dict):
            x = [self.default] * c.size
            for k, val in self.exponents.items():
                x[c.index(k)] = val
        else:
            x = list(self.exponents)
            if len(x) != c.size:
                raise ValueError(f"{len(x)} exponents for {c.size} objects")
        if any(v is None for v in x):
            missing = [c.names[k] for k, v in enumerate(x) if v is None]
            raise ValueError(f"no exponent for {missing}")
        x = [float(v) for v in x]
        if not all(math.isfinite(v) for v in x):
            raise ValueError("exponents must be finite")
        if self.tol <= 0:
            raise ValueError("tolerance must be positive")
        return x


def _cone_factor(p, cone_g):
    """Leading exponent of p on the cone and the z-exponents of every term."""
    E = np.array(list(p.terms), dtype=np.int64).reshape(len(p.terms), -1)
    C = np.array([float(x) for x in p.terms.values()])
    G = np.array(cone_g, dtype=np.int64)  # rows = rays
    inner = E @ G.T  # (terms, rays)
    lead = E[np.argmax(inner.sum(axis=1))]
    A = (lead @ G.T)[None, :] - inner
    if (A < 0).any():
        raise InternalInconsistency("no dominant term on a max cone")
    return lead, A.astype(float), C


class _ConeIntegrand:
    """log of prod_Y H_Y^(X_Y) on one cone as a function of log z."""

    def __init__(self, c, cone):
        self.cone = cone
        G = [c.g[k] for k in cone]
        self.factors = []
        for Y in range(c.size):
            v = eqn.v_rational(c, Y, normalize=False)
            ln, An, Cn = _cone_factor(v.num, G)
            ld, Ad, Cd = _cone_factor(v.den, G)
            m = -(np.array(G) @ (ln - ld))
            want = [1 if k == Y else 0 for k in cone]
            if list(m) != want:
                raise InternalInconsistency(f"v_{c.names[Y]} has z-exponents {list(m)} on a cone")
            self.factors.append((An, Cn, Ad, Cd))

    def log_value(self, x, logz):
        total = np.zeros(logz.shape[0])
        for X, (An, Cn, Ad, Cd) in zip(x, self.factors):
            if X == 0:
                continue
            num = logsumexp(An @ logz.T, axis=0, b=Cn[:, None])
            den = logsumexp(Ad @ logz.T, axis=0, b=Cd[:, None])
            total += X * (num - den)
        return total


def _cone_integrands(c):
    cache = c.__dict__.setdefault("_cone_integrands", None)
    if cache is None:
        from .fan import build_fan
        fan = c.__dict__.get("_fan") or build_fan(c, check=False)
        c.__dict__["_fan"] = fan
        cache = [_ConeIntegrand(c, cone) for cone in fan.cones]
        c.__dict__["_cone_integrands"] = cache
    return cache


def _jacobi01(m, beta):
    """Nodes and weights on [0, 1] for the weight z^beta."""
    x, w = roots_jacobi(m, 0.0, beta)
    return (x + 1) / 2, w / 2 ** (beta + 1)


def _fan_quadrature(c, x, m):
    for k in range(c.size):
        if c.rigid[k] and x[k] <= 0:
            raise NotConvergent(f"exponent of rigid {c.names[k]} is {x[k]} <= 0; the integral diverges")
    total = []
    for ci in _cone_integrands(c):
        rules = [_jacobi01(m, x[k] - 1) for k in ci.cone]
        grids = np.meshgrid(*[r[0] for r in rules], indexing="ij")
        wgrid = np.ones_like(grids[0])
        for ax, r in enumerate(rules):
            shape = [1] * c.n
            shape[ax] = m
            wgrid = wgrid * r[1].reshape(shape)
        logz = np.log(np.stack([g.ravel() for g in grids], axis=1))
        total.append(float(np.sum(wgrid.ravel() * np.exp(ci.log_value(x, logz)))))
    return math.fsum(total)


def _box_axis(T, panels, pts):
    x, w = roots_legendre(pts)
    h = 2 * T / panels
    nodes, weights = [], []
    for p in range(panels):
        a = -T + p * h
        nodes.append(a + (x + 1) * h / 2)
        weights.append(w * h / 2)
    return np.concatenate(nodes), np.concatenate(weights)


def _box_quadrature(c, x, T, panels, pts):
    t, w = _box_axis(T, panels, pts)
    grids = np.meshgrid(*([t] * c.n), indexing="ij")
    Tm = np.stack([g.ravel() for g in grids], axis=1)
    wgrid = np.ones([len(t)] * c.n)
    for ax in range(c.n):
        shape = [1] * c.n
        shape[ax] = len(t)
        wgrid = wgrid * w.reshape(shape)
    logf = np.zeros(Tm.shape[0])
    for Y, X in enumerate(x):
        if X == 0:
            continue
        v = eqn.v_rational(c, Y, normalize=False)
        logf += X * (_LogPoly(v.num)(Tm)[0] - _LogPoly(v.den)(Tm)[0])
    return float(np.sum(wgrid.ravel() * np.exp(logf)))


def amplitude_with_error(spec):
    """(value, error estimate) of the stringy integral."""
    c = spec.catalog
    if c.n == 0:
        return 1.0, 0.0
    x = spec.exponent_vector()
    if spec.method == "fan":
        a = _fan_quadrature(c, x, spec.order)
        b = _fan_quadrature(c, x, spec.order + spec.order // 2)
        err = abs(a - b)
        if err > spec.tol * max(1.0, abs(b)):
            raise NotConvergent(f"quadrature orders disagree by {err:.3g}")
        return b, err
    if spec.method == "box":
        a = _box_quadrature(c, x, spec.T, spec.panels, spec.panel_points)
        b = _box_quadrature(c, x, 2 * spec.T, 2 * spec.panels, spec.panel_points)
        err = abs(a - b)
        if err > spec.tol * max(1.0, abs(b)):
            raise NotConvergent(f"doubling the box changes the value by {err:.3g}")
        return b, err
    raise ValueError(f"unknown method {spec.method!r}")


def amplitude(spec):
    return amplitude_with_error(spec)[0]


def _richardson(eps, vals):
    """Value at 0 of the interpolating polynomial through (eps_i, vals_i) (Neville)."""
    p = list(vals)
    k = len(eps)
    for level in range(1, k):
        for i in range(k - level):
            p[i] = (eps[i + level] * p[i] - eps[i] * p[i + 1]) / (eps[i + level] - eps[i])
    return p[0]


def residue_estimate(c, focus, exponents, at=0.0, eps=(0.1, 0.05, 0.025), order=32):
    """Extrapolation of e * A(X_focus = at + e) to e -> 0; also the raw values."""
    focus = c.index(focus)
    x = list(exponents)
    raw = []
    for e in eps:
        x[focus] = at + e
        spec = AmplitudeSpec(c, list(x), order=order, tol=1e-6)
        raw.append(e * amplitude(spec))
    return _richardson(list(eps), raw), raw


def residue_check(src, Y, rmap, points, other=1.0, at=0.0, tol=None):
    """Res at X_Y = 0 of A_src against A_target at each point of target exponents.

    Compatible objects take the exponent of their image, the rest take ``other``.
    """
    Y = src.index(Y)
    tgt = rmap.target
    rep = Report(f"residue {src.name} at {src.names[Y]} -> {tgt.name}")
    for pt in points:
        xt = AmplitudeSpec(tgt, pt).exponent_vector()
        xs = [other] * src.size
        for Z, j in rmap.bijection.items():
            xs[Z] = xt[j]
        est, raw = residue_estimate(src, Y, xs, at=at)
        want = amplitude(AmplitudeSpec(tgt, xt)) if at == 0.0 else 0.0
        rel = abs(est - want) / max(abs(want), 1e-300) if want else abs(est)
        errs = [abs(r - want) for r in raw]
        rep.add(f"point {[round(v, 6) for v in xt]}", tol is None or rel < tol, value=rel, tol=tol,
                detail={"estimate": est, "target": want, "raw": raw,
                        "monotone": all(a >= b for a, b in zip(errs, errs[1:]))})
    return rep


def splitting_exponents(phi, xbar):
    """Source exponents X_Y = sum_K [pi Y : K] X-bar_K for a quotient map phi."""
    x = [0.0] * phi.target.size
    for K, img in enumerate(phi.images):
        for N, m in img.items():
            x[N] += m * xbar[K]
    return x


def splitting_check(src, qc, xbar, tol=1e-6):
    """In the limit dictated by the quotient map, A_src equals A_quotient."""
    from .poly import Poly, RatFn
    from .reductions import _embed_y, quotient_map
    rep = Report(f"splitting {src.name} -> {qc.name}")
    phi = quotient_map(src, qc)
    same = qc.n == src.n and all(w is not None for w in qc.algebra.vertex_map)
    rep.add("quotient keeps every vertex", same)
    if not same:
        return rep
    bad = []
    for K in range(qc.size):
        rhs = RatFn(Poly.one(src.yvars))
        for N, m in phi.images[K].items():
            rhs = rhs * eqn.v_rational(src, N) ** m
        if not _embed_y(eqn.v_rational(qc, K), qc, src) == rhs:
            bad.append(qc.names[K])
    rep.add("integrands agree symbolically", not bad, detail=bad or None)
    xbar = AmplitudeSpec(qc, xbar).exponent_vector()
    x = splitting_exponents(phi, xbar)
    a = amplitude(AmplitudeSpec(src, x))
    b = amplitude(AmplitudeSpec(qc, xbar))
    rep.add("A_source = A_quotient on the splitting locus", abs(a - b) < tol * max(1.0, abs(b)),
            value=abs(a - b), tol=tol, detail={"source": a, "quotient": b, "exponents": x})
    return rep


def automorphism_check(c, vertex_perm, exponents, tol=1e-8):
    """A is unchanged when exponents are moved along a quiver automorphism,
    objects being matched through permuted g- and d-vectors."""
    rep = Report(f"automorphism {c.name}")
    perm = list(vertex_perm)
    key = {(tuple(c.g[k]), tuple(c.d[k])): k for k in range(c.size)}
    obj = []
    for k in range(c.size):
        g = [0] * c.n
        d = [0] * c.n
        for i in range(c.n):
            g[perm[i]] = c.g[k][i]
            d[perm[i]] = c.d[k][i]
        obj.append(key.get((tuple(g), tuple(d))))
    if None in obj:
        rep.add("vertex permutation acts on the catalog", False)
        return rep
    x = AmplitudeSpec(c, exponents).exponent_vector()
    y = [0.0] * c.size
    for k in range(c.size):
        y[obj[k]] = x[k]
    a, b = amplitude(AmplitudeSpec(c, x)), amplitude(AmplitudeSpec(c, y))
    rep.add("amplitude invariant", abs(a - b) < tol * max(1.0, abs(a)), value=abs(a - b), tol=tol)
    return rep
