"""Command-line front end.

Every subcommand delegates to one library operation. Output is a human
table by default or line-delimited JSON records with --json. Failures print
a JSON error object on stderr and exit with status 2.
"""
from __future__ import annotations

import argparse
import json
import sys
from itertools import product
from typing import Sequence

from . import __version__
from .arknit import folded_ar, knit, mesh_defects
from .config import Config
from .counting import (burnside_count, count_polynomial, indecomposable_count,
                       indecomposable_counts_at, kac_check)
from .errors import ParseError, QuiverFoldError
from .folding import cartan, fold
from .quiver import FIXTURES, check, load
from .repcat import (brute_force_module_count, build_f_stable, conjecture_scan,
                     enumerate_indecomposables, f_period, fixed_points, normalize_to_f_fixed,
                     parse_rep, twist)
from .roots import generate_roots


def _ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.replace(" ", "").split(",") if x != "")
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _fmt(obj):
    if isinstance(obj, tuple):
        return list(obj)
    return obj


class Output:
    def __init__(self, as_json: bool, stream=None):
        self.as_json = as_json
        self.stream = stream or sys.stdout

    def emit(self, human: str, **record):
        if self.as_json:
            self.stream.write(json.dumps({k: _fmt(v) for k, v in record.items()}, sort_keys=True) + "\n")
        else:
            self.stream.write(human + "\n")


def _alpha(adq, text: str) -> tuple[int, ...]:
    """Either integers in orbit order, or id=value pairs naming any member of each orbit."""
    n = len(adq.orbits.vertex)
    parts = [x for x in text.replace(" ", "").split(",") if x]
    if not any("=" in x for x in parts):
        try:
            vals = tuple(int(x) for x in parts)
        except ValueError:
            raise ParseError(f"expected comma-separated integers, got {text!r}") from None
        if len(vals) != n:
            raise ParseError(f"alpha needs {n} entries (one per vertex orbit), got {len(vals)}")
        return vals
    Q, orb = adq.quiver, adq.orbits
    out: list[int | None] = [None] * n
    for part in parts:
        key, _, val = part.partition("=")
        if key not in Q.vindex:
            raise ParseError(f"unknown vertex {key!r} in alpha")
        try:
            v = int(val)
        except ValueError:
            raise ParseError(f"bad value {val!r} for vertex {key!r}") from None
        o = orb.vertex_orbit_of[Q.vindex[key]]
        if out[o] is not None and out[o] != v:
            raise ParseError(f"conflicting values for the orbit of {key!r}")
        out[o] = v
    if any(v < 0 for v in out if v is not None):
        raise ParseError("alpha entries must be non-negative")
    return tuple(0 if v is None else v for v in out)


def cmd_validate(a, cfg, out):
    adq = load(a.quiver)
    info = check(adq.quiver, adq.sigma)
    orb = adq.orbits
    out.emit(f"ok: {adq.quiver.n_vertices} vertices, {adq.quiver.n_arrows} arrows, "
             f"{len(orb.vertex)} vertex orbits, {len(orb.arrow)} arrow orbits, sigma of order {adq.sigma.order}",
             command="validate", ok=True, vertex_orbits=len(orb.vertex), arrow_orbits=len(orb.arrow),
             order=adq.sigma.order, **{k: v for k, v in info.items() if k != "ok"})


def cmd_fold(a, cfg, out):
    vq = fold(load(a.quiver))
    if getattr(a, "simple", False):
        vq = vq.simple()
    if out.as_json:
        out.emit("", command="fold", labels=vq.labels, eps=vq.eps,
                 arrows=[{"tail": x.tail, "head": x.head, "d": x.d, "dprime": x.dprime} for x in vq.arrows])
        return
    eps = ",".join(map(str, vq.eps))
    out.emit(f"eps = ({eps})")
    for line in vq.describe():
        out.emit(line)


def cmd_cartan(a, cfg, out):
    C = cartan(fold(load(a.quiver)))
    if out.as_json:
        out.emit("", command="cartan", labels=C.labels, entries=[list(r) for r in C.entries],
                 symmetrizer=C.symmetrizer, symmetric=C.symmetric)
        return
    for row in C.rows():
        out.emit(row)
    out.emit(f"symmetrizer = {list(C.symmetrizer)}")


def cmd_roots(a, cfg, out):
    rs = generate_roots(cartan(fold(load(a.quiver))), a.height)
    for h, alpha, tag in rs.rows():
        out.emit(f"{h}\t{','.join(map(str, alpha))}\t{tag}", command="roots", height=h, alpha=alpha, tag=tag)


def cmd_count(a, cfg, out):
    adq = load(a.quiver)
    alpha = _alpha(adq, a.alpha)
    if a.polynomial or a.q is None:
        p = count_polynomial(adq, alpha, method=a.method, config=cfg)
        out.emit(str(p), command="count", alpha=alpha, polynomial=str(p), coeffs=p.to_json())
    else:
        n = burnside_count(adq, alpha, a.q, method=a.method, config=cfg)
        out.emit(str(n), command="count", alpha=alpha, q=a.q, count=n)


def cmd_indec(a, cfg, out):
    adq = load(a.quiver)
    alpha = _alpha(adq, a.alpha)
    if a.q is None:
        p = indecomposable_count(adq, alpha, config=cfg)
        out.emit(str(p), command="indec", alpha=alpha, polynomial=str(p), coeffs=p.to_json())
    else:
        box = [b for b in product(*(range(x + 1) for x in alpha)) if any(b)]
        n = indecomposable_counts_at(adq, a.q, box)[alpha]
        out.emit(str(n), command="indec", alpha=alpha, q=a.q, count=n)


def cmd_oracle(a, cfg, out):
    adq = load(a.quiver)
    alpha = _alpha(adq, a.alpha)
    n = brute_force_module_count(adq, alpha, a.q, config=cfg)
    out.emit(str(n), command="oracle", alpha=alpha, q=a.q, count=n)


def _read_rep(path):
    try:
        with open(path) as fh:
            return parse_rep(fh.read())
    except OSError as e:
        raise ParseError(f"cannot read representation file {path!r}: {e.strerror}") from None


def cmd_rep(a, cfg, out):
    sub = a.rep_command
    if sub == "twist":
        R = twist(_read_rep(a.rep), a.power)
        doc = R.to_json()
        out.emit(json.dumps(doc, sort_keys=True), command="rep twist", **doc)
    elif sub == "period":
        R = _read_rep(a.rep)
        p = f_period(R, cfg)
        out.emit(str(p), command="rep period", period=p)
    elif sub == "fold":
        R = _read_rep(a.rep)
        r = a.r or f_period(R, cfg)
        Rn = normalize_to_f_fixed(R, r, cfg)
        X = fixed_points(build_f_stable(Rn, r, cfg))
        out.emit(f"period {r}; fixed points of dimension {X.dim} over F_{R.q}; folded dim {list(X.folded_dim)}",
                 command="rep fold", r=r, dim=X.dim, folded_dim=X.folded_dim)
    elif sub == "oracle":
        cmd_oracle(a, cfg, out)
    elif sub == "indec":
        adq = load(a.quiver)
        alpha = _alpha(adq, a.alpha)
        found = enumerate_indecomposables(adq, alpha, a.q, cfg)
        for ind in found:
            mats = [M.tolist() for M in ind.point]
            out.emit(f"#{ind.index}\t{json.dumps(mats)}", command="rep indec", index=ind.index, point=mats)
        out.emit(f"{len(found)} indecomposable", command="rep indec", alpha=alpha, q=a.q, total=len(found))
    elif sub == "conjecture":
        _scan(a, cfg, out, "rep conjecture")


def _scan(a, cfg, out, name):
    adq = load(a.quiver)
    if len(a.beta) != adq.quiver.n_vertices:
        raise ParseError(f"beta needs {adq.quiver.n_vertices} entries (one per vertex)")
    rep = conjecture_scan(adq, a.beta, a.q, a.level, cfg)
    out.emit(rep.summary(), command=name, beta=rep.beta, sigma_period=rep.sigma_period, q=rep.q,
             level=rep.level, classes=rep.classes, indecomposables=rep.indecomposables,
             periods=sorted(set(rep.periods)), status=rep.status)


def cmd_conjecture_scan(a, cfg, out):
    _scan(a, cfg, out, "conjecture-scan")


def cmd_ar(a, cfg, out):
    adq = load(a.quiver)
    if a.unfolded:
        ar = knit(adq.quiver)
        if a.dot:
            out.stream.write(ar.to_dot())
            return
        for k, v in enumerate(ar.vertices):
            out.emit(f"{k}\t{','.join(map(str, v))}", command="ar", vertex=k, dim=v)
        out.emit(f"{ar.size} vertices; mesh defects: {len(mesh_defects(ar))}", command="ar",
                 size=ar.size, mesh_defects=mesh_defects(ar))
        return
    v = folded_ar(adq)
    if a.dot:
        out.stream.write(v.to_dot())
        return
    if out.as_json:
        out.emit("", command="ar", labels=v.labels, eps=v.eps,
                 arrows=[{"tail": x.tail, "head": x.head, "d": x.d, "dprime": x.dprime} for x in v.arrows],
                 tau=[list(t) for t in v.tau])
        return
    for line in v.describe():
        out.emit(line)


def cmd_kac_check(a, cfg, out):
    rep = kac_check(load(a.quiver), a.height, a.q)
    if out.as_json:
        for r in rep.rows:
            out.emit("", command="kac-check", **r)
    out.emit(rep.summary(), command="kac-check", summary=rep.summary(), ok=rep.ok,
             violations=rep.violations)
    return 0 if rep.ok else 1


def cmd_verify(a, cfg, out):
    names = [a.quiver] if a.quiver else list(FIXTURES)
    bad = 0
    for name in names:
        adq = load(name)
        n = len(adq.orbits.vertex)
        for q in a.q:
            for alpha in product(range(a.max_entry + 1), repeat=n):
                if not any(alpha):
                    continue
                c = burnside_count(adq, alpha, q, config=cfg)
                o = brute_force_module_count(adq, alpha, q, config=cfg)
                ok = c == o
                bad += not ok
                out.emit(f"{'PASS' if ok else 'FAIL'} {name} alpha={','.join(map(str, alpha))} q={q}: "
                         f"count={c} oracle={o}", command="verify", quiver=name, alpha=alpha, q=q,
                         count=c, oracle=o, ok=ok)
    return 1 if bad else 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="quiverfold", description="Folded quivers over finite fields.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("--json", action="store_true", help="line-delimited JSON records")
    p.add_argument("--jobs", type=int, help="worker processes (default: all cores)")
    sub = p.add_subparsers(dest="command", required=True)

    def quiver(sp, required=True):
        sp.add_argument("--quiver", required=required, help=f"bundled name ({', '.join(FIXTURES)}) or file")

    for name, fn in [("validate", cmd_validate), ("fold", cmd_fold), ("cartan", cmd_cartan)]:
        sp = sub.add_parser(name)
        quiver(sp)
        sp.set_defaults(func=fn)
        if name == "fold":
            sp.add_argument("--simple", action="store_true", help="merge arrow orbits with equal endpoints")

    sp = sub.add_parser("roots")
    quiver(sp)
    sp.add_argument("--height", type=int, required=True)
    sp.set_defaults(func=cmd_roots)

    sp = sub.add_parser("count")
    quiver(sp)
    sp.add_argument("--alpha", required=True, help="a,b,... in orbit order, or id=value pairs")
    sp.add_argument("--q", "--at-q", dest="q", type=int)
    sp.add_argument("--polynomial", action="store_true")
    sp.add_argument("--method", choices=("grouped", "enumerate"), default=None)
    sp.set_defaults(func=cmd_count)

    sp = sub.add_parser("indec")
    quiver(sp)
    sp.add_argument("--alpha", required=True, help="a,b,... in orbit order, or id=value pairs")
    sp.add_argument("--q", type=int)
    sp.set_defaults(func=cmd_indec)

    sp = sub.add_parser("oracle")
    quiver(sp)
    sp.add_argument("--alpha", required=True, help="a,b,... in orbit order, or id=value pairs")
    sp.add_argument("--q", type=int, required=True)
    sp.set_defaults(func=cmd_oracle)

    rp = sub.add_parser("rep")
    rsub = rp.add_subparsers(dest="rep_command", required=True)
    sp = rsub.add_parser("twist")
    sp.add_argument("--rep", required=True)
    sp.add_argument("--power", type=int, default=1)
    sp = rsub.add_parser("period")
    sp.add_argument("--rep", required=True)
    sp = rsub.add_parser("fold")
    sp.add_argument("--rep", required=True)
    sp.add_argument("--r", type=int)
    for name in ("oracle", "indec"):
        sp = rsub.add_parser(name)
        quiver(sp)
        sp.add_argument("--alpha", required=True, help="a,b,... in orbit order, or id=value pairs")
        sp.add_argument("--q", type=int, required=True)
    sp = rsub.add_parser("conjecture")
    quiver(sp)
    sp.add_argument("--beta", type=_ints, required=True)
    sp.add_argument("--q", type=int, default=2)
    sp.add_argument("--level", type=int)
    rp.set_defaults(func=cmd_rep)

    sp = sub.add_parser("ar")
    quiver(sp)
    sp.add_argument("--unfolded", action="store_true", help="the knitted AR quiver of Q itself")
    sp.add_argument("--dot", action="store_true", help="Graphviz DOT output")
    sp.set_defaults(func=cmd_ar)

    sp = sub.add_parser("kac-check")
    quiver(sp)
    sp.add_argument("--height", type=int, required=True)
    sp.add_argument("--q", type=_ints, default=(2,))
    sp.set_defaults(func=cmd_kac_check)

    sp = sub.add_parser("conjecture-scan")
    quiver(sp)
    sp.add_argument("--beta", type=_ints, required=True)
    sp.add_argument("--q", type=int, default=2)
    sp.add_argument("--level", type=int)
    sp.set_defaults(func=cmd_conjecture_scan)

    sp = sub.add_parser("verify", help="oracle against count on every small alpha")
    quiver(sp, required=False)
    sp.add_argument("--q", type=_ints, default=(2, 3))
    sp.add_argument("--max-entry", type=int, default=2)
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        cfg = Config.from_env(jobs=args.jobs, output="json" if args.json else None)
        if getattr(args, "method", "x") is None:
            args.method = "grouped" if (args.polynomial or args.q is None) else "enumerate"
        code = args.func(args, cfg, Output(args.json, stdout))
    except QuiverFoldError as e:
        stderr.write(json.dumps(e.to_dict(), sort_keys=True, default=str) + "\n")
        return 2
    except ValueError as e:
        stderr.write(json.dumps({"error": "ValueError", "message": str(e)}, sort_keys=True) + "\n")
        return 2
    return code or 0
