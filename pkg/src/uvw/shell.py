"""Command-line interface: ``uvw <command> --catalog NAME ...``.

Exit status is 0 when every check passes, 1 when a check fails and 2 on
bad input (unknown catalog, malformed exponents, ...).
"""
import argparse
import json
import sys

from . import __version__
from . import builtins
from . import equations as eqn
from .catalog import Report, load_catalog
from .errors import UVWError

# catalog -> [(focus, target)] pairs checked by the jasso suite
JASSO_PAIRS = {
    "a2": [("P1", "a1")],
    "a3": [("P1", "a2")],
    "a2-loop": [("P2", "loop2")],
}

# catalog -> [(ideal in composition notation, reusable target catalog or None)]
QUOTIENT_PAIRS = {
    "a2": [("a", None)],
    "a3": [("ba", "a3-rel")],
    "a3-rel": [("a,b", None)],
    "loop2": [("x", "a1")],
    "a2-loop": [("x", None)],
}

SUITES = ["parametrization", "exchange", "tropical", "jasso", "quotient", "dilog", "positivity"]


class InputError(Exception):
    pass


def _catalog(name):
    try:
        return load_catalog(name)
    except (UVWError, OSError, ValueError, KeyError) as e:
        raise InputError(f"cannot load catalog {name!r}: {e}") from e


def _header(c, args):
    return {"tool": "uvw", "version": __version__, "catalog": c.name, "hash": c.hash(),
            "seed": getattr(args, "seed", None), "tol": getattr(args, "tol", None)}


def parse_path(A, text):
    """A path written in composition order ("ba" = a then b) as arrow ids in traversal order."""
    ids = sorted((a.id for a in A.arrows), key=len, reverse=True)
    out, rest = [], text.strip()
    while rest:
        for a in ids:
            if rest.startswith(a):
                out.append(a)
                rest = rest[len(a):]
                break
        else:
            raise InputError(f"cannot read {text!r} as a path of arrows {sorted(ids)}")
    return tuple(reversed(out))


def parse_ideal(A, text):
    return [[(1, parse_path(A, p))] for p in text.split(",") if p.strip()]


def _floats(text):
    try:
        return [float(x) for x in text.split(",")]
    except ValueError as e:
        raise InputError(f"expected comma-separated numbers, got {text!r}") from e


# ----- output -----------------------------------------------------------------------

def _write(args, text):
    if args.out:
        with open(args.out, "w") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def _dump(doc):
    return json.dumps(doc, indent=2, sort_keys=True, default=str) + "\n"


def _report_text(head, reports):
    lines = [f"# uvw {head['version']} catalog={head['catalog']} hash={head['hash']} "
             f"seed={head['seed']} tol={head['tol']}"]
    for rep in reports:
        lines.append(f"[{'PASS' if rep.ok else 'FAIL'}] {rep.title}")
        for e in rep.entries:
            val = "" if e["value"] is None else f"  value={e['value']}"
            lines.append(f"  {'ok  ' if e['pass'] else 'FAIL'} {e['name']}{val}")
    return "\n".join(lines) + "\n"


def _emit_reports(args, head, reports):
    if args.format == "json":
        _write(args, _dump({**head, "pass": all(r.ok for r in reports),
                            "reports": [r.to_json() for r in reports]}))
    else:
        _write(args, _report_text(head, reports))
    return 0 if all(r.ok for r in reports) else 1


# ----- commands ---------------------------------------------------------------------

def cmd_list(args):
    if args.catalog is None:
        _write(args, _dump({"builtins": builtins.NAMES}) if args.format == "json"
               else "\n".join(builtins.NAMES) + "\n")
        return 0
    c = _catalog(args.catalog)
    rows = c.summary()
    if args.format == "json":
        _write(args, _dump({**_header(c, args), "objects": rows}))
        return 0
    lines = [f"# {c.name}: {c.size} objects, {c.n} vertices, hash {c.hash()}"]
    for r in rows:
        lines.append(f"{r['index']:3d}  {r['name']:<10} {r['kind']:<10} g={r['g']} d={r['d']}"
                     f"{'  rigid' if r['rigid'] else ''}")
    _write(args, "\n".join(lines) + "\n")
    return 0


def cmd_equations(args):
    c = _catalog(args.catalog)
    doc = eqn.emit(c, kind=args.kind, fmt=args.format)
    if args.format == "json":
        _write(args, _dump({**_header(c, args), **doc}))
    else:
        _write(args, doc)
    return 0


def _suite(c, name, args):
    from . import fan as fn
    from . import numerics as nm
    from . import reductions as rd
    if name == "parametrization":
        rep = eqn.verify_parametrization(c, seed=args.seed)
        rep.add("number of u-equations", True, value=c.size)
        return [rep]
    if name == "exchange":
        rep = Report(f"exchange {c.name}")
        for X in range(c.size):
            rep.add(f"exchange case {eqn.exchange_case(c, X)} {c.names[X]}",
                    eqn.exchange_identity_check(c, X, seed=args.seed))
        for M in c.module_idx:
            rep.add(f"expansion identities {c.names[M]}", eqn.expansion_identities_check(c, M))
        bad = eqn.rigid_divisibility(c)
        rep.add("no rigid u divides an F-hat", not bad, detail=bad or None)
        return [rep]
    if name == "tropical":
        fan = fn.build_fan(c, check=False)
        rep = fn.check_trop_theorem(c, fan, samples=args.trials or 50, seed=args.seed)
        s = fn.sample_completeness(fan, seed=args.seed)
        rep.add("sampled points lie in some cone", s["outside"] == 0, value=s)
        rep.add("no sampled point in two open cones", s["double_interior"] == 0)
        return [rep]
    if name == "jasso":
        out = []
        for focus, tgt in JASSO_PAIRS.get(c.name, []):
            out.append(rd.jasso_substitution_check(rd.jasso_match(c, focus, _catalog(tgt))))
        return out
    if name == "quotient":
        out = []
        for ideal, tgt in QUOTIENT_PAIRS.get(c.name, []):
            qc = rd.quotient_catalog(c, parse_ideal(c.algebra, ideal), tgt=_catalog(tgt) if tgt else None,
                                     name=None if tgt else f"{c.name}/<{ideal}>")
            out.append(rd.quotient_map_check(c, qc, seed=args.seed)[0])
        return out
    if name == "dilog":
        rep = Report(f"dilogarithm {c.name}")
        tol = args.tol
        dev = nm.dilog_identity_check(c, trials=args.trials or 100, seed=args.seed)
        rep.add("max |sum L(1 - v) - n pi^2/6|", dev < tol, value=dev, tol=tol)
        return [rep]
    if name == "positivity":
        return [nm.positivity_scan(c, trials=args.trials or 1000, seed=args.seed)]
    raise InputError(f"unknown suite {name!r}")


def cmd_verify(args):
    c = _catalog(args.catalog)
    names = SUITES if args.suite == "all" else [args.suite]
    reports = []
    for s in names:
        for rep in _suite(c, s, args):
            for e in rep.entries:
                e["tag"] = e["tag"] or s
            reports.append(rep)
    return _emit_reports(args, _header(c, args), reports)


def _amplitude_spec(args):
    from . import numerics as nm
    if args.spec:
        try:
            with open(args.spec) as f:
                doc = json.load(f)
        except (OSError, ValueError) as e:
            raise InputError(f"cannot read amplitude spec: {e}") from e
        c = _catalog(doc["catalog"])
        opts = {k: doc[k] for k in ("method", "order", "T", "panels", "panel_points", "default")
                if k in doc}
        return c, nm.AmplitudeSpec(c, doc["exponents"], tol=doc.get("tol", args.tol), **opts)
    if not args.catalog or not args.exponents:
        raise InputError("amplitude needs a spec file or --catalog with --exponents")
    c = _catalog(args.catalog)
    return c, nm.AmplitudeSpec(c, _floats(args.exponents), method=args.method,
                               tol=args.tol)


def cmd_amplitude(args):
    from . import numerics as nm
    c, spec = _amplitude_spec(args)
    try:
        x = spec.exponent_vector()
    except (ValueError, KeyError) as e:
        raise InputError(str(e)) from e
    value, err = nm.amplitude_with_error(spec)
    doc = {**_header(c, args), "method": spec.method, "exponents": dict(zip(c.names, x)),
           "value": value, "error": err}
    if args.format == "json":
        _write(args, _dump(doc))
    else:
        _write(args, f"{value!r}\n")
    return 0


def cmd_reduce(args):
    from . import reductions as rd
    c = _catalog(args.catalog)
    if bool(args.focus) == bool(args.ideal):
        raise InputError("reduce needs exactly one of --focus and --ideal")
    tgt = _catalog(args.target) if args.target else None
    if args.focus:
        if tgt is None:
            raise InputError("Jasso reduction needs --target")
        rmap = rd.jasso_match(c, args.focus, tgt)
        rep = rd.jasso_substitution_check(rmap)
        doc = rmap.to_json()
    else:
        qc = rd.quotient_catalog(c, parse_ideal(c.algebra, args.ideal), tgt=tgt,
                                 name=None if tgt else f"{c.name}/<{args.ideal}>")
        rep, phi = rd.quotient_map_check(c, qc, seed=args.seed)
        doc = {"kind": "quotient", "source": c.name, "quotient": qc.name, "ideal": args.ideal,
               "images": {qc.names[K]: {c.names[N]: m for N, m in sorted(img.items())}
                          for K, img in enumerate(phi.images)}}
    if args.format == "json":
        _write(args, _dump({**_header(c, args), "map": doc, "report": rep.to_json()}))
    else:
        lines = [f"# {doc['kind']} map from {c.name}"]
        for k, img in doc["images"].items():
            if img == 0:
                lines.append(f"{k} -> 0")
            else:
                lines.append(f"{k} -> " + (" ".join(f"{n}^{m}" if m != 1 else n for n, m in img.items()) or "1"))
        _write(args, "\n".join(lines) + "\n" + _report_text(_header(c, args), [rep]))
    return 0 if rep.ok else 1


def cmd_fan(args):
    from . import fan as fn
    c = _catalog(args.catalog)
    fan = fn.build_fan(c, check=False)
    s = fn.sample_completeness(fan, samples=args.trials or 10000, seed=args.seed)
    ok = s["outside"] == 0 and s["double_interior"] == 0
    if args.format == "polymake":
        _write(args, fan.polymake())
    elif args.format == "json":
        _write(args, _dump({**_header(c, args), **fan.to_json(), "strata": fn.stratum_counts(fan),
                            "completeness": s, "pass": ok}))
    else:
        lines = [f"# {c.name}: {len(fan.rays)} rays, {len(fan.cones)} max cones, "
                 f"strata {fn.stratum_counts(fan)}"]
        lines += [" ".join(c.names[k] for k in cone) for cone in fan.cones]
        lines.append(f"completeness {s}")
        _write(args, "\n".join(lines) + "\n")
    return 0 if ok else 1


def cmd_trop(args):
    from . import fan as fn
    c = _catalog(args.catalog)
    if args.point:
        g = [int(round(x)) for x in _floats(args.point)]
        if len(g) != c.n:
            raise InputError(f"point needs {c.n} coordinates")
        fan = fn.build_fan(c, check=False)
        vals = {c.names[M]: fn.trop_eval(eqn.v_rational(c, M), g) for M in range(c.size)}
        mult = {c.names[k]: m for k, m in fn.generic_multiplicities(fan, g).items()}
        ok = all(-vals[nm] == mult.get(nm, 0) for nm in vals)
        if args.format == "json":
            _write(args, _dump({**_header(c, args), "g": g, "trop_v": vals, "multiplicities": mult,
                                "pass": ok}))
        else:
            lines = [f"g = {g}"] + [f"trop v_{k} = {v}" for k, v in vals.items()]
            lines.append("generic summands: " + (" + ".join(f"{m} {k}" for k, m in mult.items()) or "0"))
            _write(args, "\n".join(lines) + "\n")
        return 0 if ok else 1
    return _emit_reports(args, _header(c, args), _suite(c, "tropical", args))


# ----- entry point --------------------------------------------------------------------

def build_parser():
    p = argparse.ArgumentParser(prog="uvw", description="u-equations, F-polynomials and v-parametrizations "
                                "of finite-type algebras")
    p.add_argument("--version", action="version", version=f"uvw {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, formats=("text", "json"), tol=None):
        sp.add_argument("--catalog", help="built-in name or catalog JSON file")
        sp.add_argument("--seed", type=int, default=0, help="random seed for sampled checks")
        sp.add_argument("--trials", type=int, default=None, help="number of random samples")
        sp.add_argument("--tol", type=float, default=tol, help="numerical tolerance")
        sp.add_argument("--format", choices=formats, default=formats[0])
        sp.add_argument("--out", help="write to this file instead of stdout")

    sp = sub.add_parser("list", help="built-in catalogs, or the objects of one catalog")
    common(sp)
    sp.set_defaults(func=cmd_list)
    sp = sub.add_parser("equations", help="u-equations, F-hat polynomials or v-formulas")
    common(sp, ("text", "latex", "json"))
    sp.add_argument("--kind", choices=["u", "fhat", "v", "all"], default="all")
    sp.set_defaults(func=cmd_equations)
    sp = sub.add_parser("verify", help="run a check suite")
    common(sp, tol=1e-9)
    sp.add_argument("--suite", choices=SUITES + ["all"], default="all")
    sp.set_defaults(func=cmd_verify)
    sp = sub.add_parser("amplitude", help="evaluate a stringy integral")
    common(sp, tol=1e-8)
    sp.add_argument("spec", nargs="?", help="JSON file with catalog, exponents and options")
    sp.add_argument("--exponents", help="comma-separated exponents in catalog order")
    sp.add_argument("--method", choices=["fan", "box"], default="fan")
    sp.set_defaults(func=cmd_amplitude)
    sp = sub.add_parser("reduce", help="Jasso reduction or quotient monomial map")
    common(sp)
    sp.add_argument("--focus", help="rigid object to reduce at")
    sp.add_argument("--ideal", help="comma-separated paths, composition order (ba = a then b)")
    sp.add_argument("--target", help="target catalog")
    sp.set_defaults(func=cmd_reduce)
    sp = sub.add_parser("fan", help="g-vector fan")
    common(sp, ("text", "json", "polymake"))
    sp.set_defaults(func=cmd_fan)
    sp = sub.add_parser("trop", help="tropical evaluation of the v's")
    common(sp)
    sp.add_argument("--point", help="integer vector g, comma-separated")
    sp.set_defaults(func=cmd_trop)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.func is not cmd_list and getattr(args, "catalog", None) is None and not getattr(args, "spec", None):
        print("uvw: --catalog is required", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except InputError as e:
        print(f"uvw: {e}", file=sys.stderr)
        return 2
    except KeyError as e:
        print(f"uvw: unknown object {e}", file=sys.stderr)
        return 2
    except UVWError as e:
        print(f"uvw: {type(e).__name__}: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
