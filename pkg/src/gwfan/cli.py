"""Batch command-line interface.

Subcommands: fan | matroid | weight | class | verify.  Inputs are JSON
files or builder flags (--braid, --uniform, --catalog, --graph, --delta);
outputs are deterministic JSON (or CSV with one row per flag).  Exit codes:
0 pass, 1 a check failed, 2 parse error, 3 cap exceeded, 4 non-generic
vector.
"""

from __future__ import annotations

import argparse
import io
import json
import sys

from . import classes as cls_mod
from . import fan as fan_mod
from . import weights as w_mod
from .braid import Flag, enumerate_flags, mask_of
from .fan import braid_fan, check_index_condition, check_unimodular, fan_from_json, projective_fan
from .lattice import LatticeVector
from .matroid import Matroid, MatroidAxiomError
from .poly import Polynomial
from .polytopes import GenPermutohedron
from .util import CapExceeded, NonGenericVector, effective_ncap
from .weights import Weight

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_PARSE = 2
EXIT_CAP = 3
EXIT_GENERIC = 4

IDENTITIES = (
    "balance-braid",
    "balance-matroid",
    "product-oracle",
    "tutte-identity",
    "pointed-convolution",
    "psi-formula",
    "aij-symmetry",
    "csm-balancing",
    "p2-example",
)


class ParseFailure(ValueError):
    pass


def _load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseFailure(f"cannot read {path}: {exc}")


def _parse_pair(text, flag):
    try:
        parts = [int(x) for x in text.split(",")]
    except ValueError:
        raise ParseFailure(f"{flag} expects comma-separated integers, got {text!r}")
    return parts


def _matroid_from_args(args):
    cap = effective_ncap()
    try:
        if getattr(args, "catalog", None):
            m = Matroid.catalog(args.catalog)
        elif getattr(args, "uniform", None):
            r, n = _parse_pair(args.uniform, "--uniform")
            m = Matroid.uniform(r, n)
        elif getattr(args, "graph", None):
            m = Matroid.from_graph(_load_json(args.graph))
        elif getattr(args, "path", None):
            m = Matroid.from_json(_load_json(args.path))
        else:
            raise ParseFailure("no matroid source given")
    except (MatroidAxiomError, ValueError, KeyError) as exc:
        if isinstance(exc, ParseFailure):
            raise
        raise ParseFailure(str(exc))
    if m.n > max(cap, 8):
        raise CapExceeded(f"matroid on {m.n} elements exceeds cap {max(cap, 8)}")
    return m


def _vector_from_args(args, n):
    if getattr(args, "v", None):
        coords = _parse_pair(args.v, "--v")
        if len(coords) != n:
            raise ParseFailure(f"--v needs {n} coordinates")
        return LatticeVector(coords, quotient=True)
    return None


def _emit(payload, args):
    fmt = getattr(args, "format", "json") or "json"
    if fmt == "csv":
        text = _to_csv(payload)
    else:
        text = json.dumps(payload, indent=2) + "\n"
    out = getattr(args, "out", None)
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _to_csv(payload):
    buf = io.StringIO()
    if isinstance(payload, dict) and "values" in payload:
        buf.write("flag,value\n")
        for row in payload["values"]:
            flag = "|".join(",".join(map(str, part)) for part in row["flag"])
            buf.write(f'"{flag}","{row["value"]}"\n')
    elif isinstance(payload, list):
        keys = sorted({k for row in payload for k in row})
        buf.write(",".join(keys) + "\n")
        for row in payload:
            buf.write(",".join(f'"{row.get(k, "")}"' for k in keys) + "\n")
    else:
        for k, v in payload.items():
            buf.write(f'"{k}","{v}"\n')
    return buf.getvalue()


# ---- subcommands ----------------------------------------------------------------


def cmd_fan_check(args):
    if args.braid:
        cap = effective_ncap()
        if args.braid > cap:
            raise CapExceeded(f"braid fan n={args.braid} exceeds cap {cap}")
        fan = braid_fan(args.braid, cap=cap)
    elif args.pn:
        fan = projective_fan(args.pn)
    elif args.path:
        fan = fan_from_json(_load_json(args.path))
    else:
        raise ParseFailure("fan check needs a fan JSON path, --braid N, or --pn D")
    uni = check_unimodular(fan)
    idx = check_index_condition(fan)
    payload = {
        "check": "strongly-unimodular",
        "unimodular": uni.to_json(),
        "index_condition": idx.to_json(),
        "pass": uni.passed and idx.passed,
    }
    _emit(payload, args)
    return EXIT_PASS if payload["pass"] else EXIT_FAIL


def cmd_matroid(args):
    m = _matroid_from_args(args)
    inv = args.invariant
    if inv == "char":
        payload = {"matroid": m.name, "char": str(m.char_poly())}
    elif inv == "reduced-char":
        payload = {"matroid": m.name, "reduced_char": str(m.reduced_char_poly())}
    elif inv == "beta":
        payload = {"matroid": m.name, "beta": m.beta()}
    elif inv == "tutte":
        payload = {"matroid": m.name, "tutte": str(m.tutte_poly())}
    elif inv == "independence":
        payload = {"matroid": m.name, "independence": str(m.independence_poly())}
    elif inv == "rank":
        payload = {"matroid": m.name, "n": m.n, "rank": m.rank}
    elif inv == "loops":
        payload = {"matroid": m.name, "loops": m.loops()}
    elif inv == "flats":
        from .braid import elements_of

        payload = {
            "matroid": m.name,
            "flats": [elements_of(f) for f in m.flats()],
        }
    else:
        raise ParseFailure(f"unknown invariant {inv!r}")
    _emit(payload, args)
    return EXIT_PASS


def _weights_from_builders(args):
    """Builder flags -> list of (label, Weight)."""
    out = []
    n = args.n
    for spec in args.delta or []:
        elements = _parse_pair(spec, "--delta")
        if n is None:
            raise ParseFailure("--delta needs --n")
        out.append((f"delta({spec})", w_mod.weight_of_polytope(GenPermutohedron.delta(n, mask_of(elements)))))
    if getattr(args, "ones", False):
        if n is None:
            raise ParseFailure("--ones needs --n")
        out.append(("ones", Weight.constant_one(("braid", n))))
    return out


def cmd_weight(args):
    cap = effective_ncap()
    if args.n and args.n > cap:
        raise CapExceeded(f"n={args.n} exceeds cap {cap}")
    if args.action == "balance":
        if args.path:
            g = Weight.from_json(_load_json(args.path))
            if g.domain[0] == "braid":
                report = w_mod.balance_check_braid(g)
            else:
                report = w_mod.balance_check_matroid(g.domain[1], g)
            _emit(report.to_json(), args)
            return EXIT_PASS if report.passed else EXIT_FAIL
        built = _weights_from_builders(args)
        if not built:
            raise ParseFailure("weight balance needs a weight JSON path or builders")
        reports = []
        ok = True
        for label, g in built:
            rep = w_mod.balance_check_braid(g)
            ok = ok and rep.passed
            reports.append({"weight": label, **rep.to_json()})
        _emit(reports, args)
        return EXIT_PASS if ok else EXIT_FAIL
    if args.action == "product":
        built = _weights_from_builders(args)
        if len(built) != 2:
            raise ParseFailure("weight product needs exactly two builder weights")
        v = _vector_from_args(args, args.n)
        g = w_mod.product(built[0][1], built[1][1], v)
        _emit(g.to_json(), args)
        return EXIT_PASS
    raise ParseFailure(f"unknown weight action {args.action!r}")


def cmd_class(args):
    m = _matroid_from_args(args)
    kind = args.kind
    if kind == "mcy":
        g = cls_mod.mcy_dual_weight(m)
        payload = g.to_json()
    elif kind == "csm":
        if args.k is None:
            raise ParseFailure("class csm needs --k")
        vals = cls_mod.csm_values(m, args.k)
        payload = {
            "matroid": m.name,
            "k": args.k,
            "values": [
                {"flag": f.to_json(), "value": str(v)}
                for f, v in sorted(vals.items(), key=lambda kv: kv[0].sort_key())
            ],
        }
    elif kind == "taut":
        payload = cls_mod.taut_weight(m).to_json()
    elif kind == "sub":
        payload = cls_mod.sub_weight(m).to_json()
    elif kind == "quot":
        payload = cls_mod.quot_weight(m).to_json()
    else:
        raise ParseFailure(f"unknown class kind {kind!r}")
    _emit(payload, args)
    return EXIT_PASS


def _verify_balance_braid(args):
    n = args.n or 3
    reports = []
    ok = True
    g = Weight.constant_one(("braid", n))
    rep = w_mod.balance_check_braid(g)
    reports.append({"weight": "ones", "pass": rep.passed})
    ok &= rep.passed
    for i_mask in range(1, (1 << n)):
        g = w_mod.weight_delta_closed_form(n, i_mask)
        rep = w_mod.balance_check_braid(g)
        from .braid import elements_of

        reports.append({"weight": f"delta({elements_of(i_mask)})", "pass": rep.passed})
        ok &= rep.passed
    return reports, ok


def _verify_product_oracle(args):
    n = args.n or 3
    v = _vector_from_args(args, n)
    masks = list(range(1, 1 << n))
    reports = []
    ok = True
    gs = {im: w_mod.weight_of_polytope(GenPermutohedron.delta(n, im)) for im in masks}
    polys = {im: GenPermutohedron.delta(n, im) for im in masks}
    for a in masks:
        for b in masks:
            if b < a:
                continue
            prod = w_mod.product(gs[a], gs[b], v)
            summ = polys[a].minkowski(polys[b])
            good = all(
                prod[f] == summ.face_points(f) for f in enumerate_flags(n)
            )
            reports.append({"pair": [a, b], "pass": good})
            ok &= good
    return reports, ok


def _verify_p2(args):
    fan = projective_fan(2)
    v = LatticeVector((1, 2))
    engine = fan_mod.product_engine(fan, v)
    zero = fan.cone_index(frozenset())
    m = [[0] * 3 for _ in range(3)]
    for si, ti, sign in engine.bucket(zero):
        m[fan.dim_of(si)][fan.dim_of(ti)] += sign
    expected = [[0, 0, 1], [0, 1, -1], [1, -1, 0]]
    b = [[1 if i + j <= 2 else 0 for j in range(3)] for i in range(3)]
    bm = [[sum(b[i][k] * m[k][j] for k in range(3)) for j in range(3)] for i in range(3)]
    bmb = [[sum(bm[i][k] * b[k][j] for k in range(3)) for j in range(3)] for i in range(3)]
    identity = [[1 if i == j else 0 for j in range(3)] for i in range(3)]
    good = m == expected and bm == identity and bmb == b
    return [{"matrix": m, "Bm_is_identity": bm == identity, "pass": good}], good


def cmd_verify(args):
    identity = args.identity
    if identity == "balance-braid":
        reports, ok = _verify_balance_braid(args)
    elif identity == "product-oracle":
        reports, ok = _verify_product_oracle(args)
    elif identity == "p2-example":
        reports, ok = _verify_p2(args)
    else:
        m = _matroid_from_args(args)
        if identity == "balance-matroid":
            ones = Weight.constant_one(("matroid", m))
            r1 = w_mod.balance_check_matroid(m, ones)
            r2 = w_mod.balance_check_matroid(m, cls_mod.mcy_dual_weight(m))
            reports = [
                {"weight": "ones", "pass": r1.passed},
                {"weight": "mcy-dual", "pass": r2.passed},
            ]
            ok = r1.passed and r2.passed
        elif identity == "tutte-identity":
            w = _vector_from_args(args, m.n)
            rep = cls_mod.verify_tutte_identity(m, w)
            reports, ok = [rep.to_json()], rep.passed
        elif identity == "pointed-convolution":
            reps = [cls_mod.pointed_convolution_check(m, i) for i in range(1, m.n + 1)]
            reports, ok = [r.to_json() for r in reps], all(r.passed for r in reps)
        elif identity == "psi-formula":
            reps = [cls_mod.psi_formula_check(m, i) for i in range(1, m.n + 1)]
            reports, ok = [r.to_json() for r in reps], all(r.passed for r in reps)
        elif identity == "aij-symmetry":
            reps = [
                cls_mod.aij_symmetry_check(m, i, j)
                for i in range(1, m.n + 1)
                for j in range(i + 1, m.n + 1)
            ]
            reports, ok = [r.to_json() for r in reps], all(r.passed for r in reps)
        elif identity == "csm-balancing":
            reps = []
            ok = True
            for k in range(m.rank):
                rep = cls_mod.csm_minkowski_balanced(m, k)
                reps.append({"k": k, **rep.to_json()})
                ok &= rep.passed
            reports = reps
        else:
            raise ParseFailure(f"unknown identity {identity!r}")
    _emit(reports, args)
    return EXIT_PASS if ok else EXIT_FAIL


# ---- argument wiring --------------------------------------------------------------


def _add_matroid_source(p):
    p.add_argument("path", nargs="?", help="matroid JSON file")
    p.add_argument("--catalog", help="catalog name (fano, nonfano, vamos, k4, uRN)")
    p.add_argument("--uniform", help="R,N for the uniform matroid")
    p.add_argument("--graph", help="JSON edge-list file for a cycle matroid")


def _add_common(p):
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out", help="write output to this path instead of stdout")
    p.add_argument("--jobs", type=int, default=1, help="worker threads for checks")


def build_parser():
    top = argparse.ArgumentParser(prog="gwfan", description=__doc__)
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fan", help="strong-unimodularity certification")
    fan_sub = p.add_subparsers(dest="action", required=True)
    pc = fan_sub.add_parser("check")
    pc.add_argument("path", nargs="?", help="fan JSON file")
    pc.add_argument("--braid", type=int, help="use the braid fan on [N]")
    pc.add_argument("--pn", type=int, help="use the fan of projective D-space")
    _add_common(pc)
    pc.set_defaults(fn=cmd_fan_check)

    p = sub.add_parser("matroid", help="matroid invariants")
    p.add_argument(
        "invariant",
        choices=(
            "char",
            "reduced-char",
            "beta",
            "tutte",
            "independence",
            "rank",
            "loops",
            "flats",
        ),
    )
    _add_matroid_source(p)
    _add_common(p)
    p.set_defaults(fn=cmd_matroid)

    p = sub.add_parser("weight", help="weight balance and products")
    p.add_argument("action", choices=("balance", "product"))
    p.add_argument("path", nargs="?", help="weight JSON file")
    p.add_argument("--delta", action="append", help="simplex weight for index set I, e.g. 1,2")
    p.add_argument("--ones", action="store_true", help="the constant-1 weight")
    p.add_argument("--n", type=int, help="braid ground-set size")
    p.add_argument("--v", help="displacement vector a,b,c,...")
    _add_common(p)
    p.set_defaults(fn=cmd_weight)

    p = sub.add_parser("class", help="characteristic-class weights")
    p.add_argument("kind", choices=("mcy", "csm", "taut", "sub", "quot"))
    _add_matroid_source(p)
    p.add_argument("--k", type=int, help="CSM degree")
    _add_common(p)
    p.set_defaults(fn=cmd_class)

    p = sub.add_parser("verify", help="named identity checks")
    p.add_argument("identity", choices=IDENTITIES)
    _add_matroid_source(p)
    p.add_argument("--n", type=int, help="braid ground-set size")
    p.add_argument("--v", help="displacement vector a,b,c,...")
    _add_common(p)
    p.set_defaults(fn=cmd_verify)

    return top


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except ParseFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except NonGenericVector as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GENERIC


if __name__ == "__main__":
    sys.exit(main())
