"""Command-line verifier.  Exit codes: 0 checks pass or verdict computed, 1 a check failed, 2 usage or format error."""

from __future__ import annotations

import argparse
import json
import sys

from ..fincat import ContractViolation, Field, FormatError, Obj, validate_presentation
from .. import decat, modlift, presheaf as ps, rigidity, simplicity
from ..semicat import validate_semigroup
from . import docio
from .generators import generate, zero_action_module


class UsageError(Exception):
    pass


def _field(name):
    if name is None:
        return None
    try:
        return Field.from_name(name)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _load(args):
    return docio.load(args.file, _field(args.field))


def _certificate(doc, args):
    if doc.certificate is not None:
        return doc.certificate
    cert = rigidity.build_certificate(doc.semigroup, args.max_dual_mult, args.seed)
    if cert is None:
        raise UsageError("no rigidity certificate in the document and none could be found "
                         "(try the 'rigid' command)")
    doc.certificate = cert
    return cert


def _module(doc, name):
    if name is None or name == "regular":
        return doc.modules.get("regular", doc.semigroup)
    if name == "zero":
        return zero_action_module(doc.semigroup)
    if name not in doc.modules:
        raise UsageError("no module named %r (have: %s)" % (name, ", ".join(sorted(doc.modules)) or "none"))
    return doc.modules[name]


# ---------------------------------------------------------------------------
# commands; each returns (ok, report)

def cmd_validate(doc, args):
    rep = {"presentation": validate_presentation(doc.category).__dict__,
           "semigroup": validate_semigroup(doc.semigroup).__dict__}
    ok = rep["presentation"]["ok"] and rep["semigroup"]["ok"]
    for name, act in sorted(doc.modules.items()):
        r = modlift.validate_module(doc.semigroup, act)
        rep["module %s" % name] = r.__dict__
        ok = ok and r.ok
    if doc.certificate is not None:
        for side in ("right", "left"):
            for x, adj in sorted(getattr(doc.certificate, side).items()):
                r = rigidity.verify_adjunction(doc.semigroup, adj)
                rep["certificate %s %s" % (side, x)] = r
                ok = ok and rigidity.all_ok(r)
    return ok, rep


def cmd_rigid(doc, args):
    S = doc.semigroup
    rep, ok = {}, True
    for x in S.base.objects:
        entry = {}
        for side in ("right", "left"):
            adj = None
            if doc.certificate is not None:
                adj = getattr(doc.certificate, side).get(x)
            if adj is None:
                adj = rigidity.find_dual(S, x, args.max_dual_mult, args.seed, side)
            if adj is None:
                naive = rigidity.naive_self_duality(S, x)
                ax = rigidity.verify_adjunction(S, naive)
                entry[side] = {"found": False, "naive_self_duality": ax}
                ok = False
                continue
            ax = rigidity.verify_adjunction(S, adj)
            dual = adj.Fd if side == "right" else adj.F
            entry[side] = {"found": True, "dual": list(dual), "axioms": ax}
            ok = ok and rigidity.all_ok(ax)
        rep[x] = entry
    return ok, {"rigid": ok, "objects": rep}


def cmd_unit(doc, args):
    S = doc.semigroup
    cert = _certificate(doc, args)
    U = ps.unit_general(S, cert).presheaf
    r = ps.unit_verify(S, cert, U, args.seed)
    rep = {"dims": U.dims, "end_dim": r.end_dim, "simple": r.simple, "top": r.top,
           "day": r.day_checks, "unital": r.unital,
           "sections": {side: {h: {"coequalizes": a.coequalizes, "theta_sigma": a.theta_sigma,
                                   "sigma_theta": a.sigma_theta} for h, a in tab.items()}
                        for side, tab in (("left", r.left), ("right", r.right))}}
    bars = {}
    for F in S.base.objects:
        lib, _ = ps.is_liberal(S, F)
        if lib:
            bars[F] = ps.iso_test(ps.unit_bar(S, cert, F).presheaf, U, args.seed).status
    rep["bar_vs_general"] = bars
    ok = r.unital and all(v == "iso" for v in bars.values())
    return ok, rep


def cmd_ansatz(doc, args):
    S = doc.semigroup
    cert = _certificate(doc, args)
    R = ps.unit_ansatz(S, cert, "right")
    L = ps.unit_ansatz(S, cert, "left")
    Psi, Phi = ps.ansatz_iso(S, cert, R, L)
    U = ps.unit_general(S, cert).presheaf
    rep = {"right_dims": R.presheaf.dims, "left_dims": L.presheaf.dims,
           "psi_natural": Psi.is_natural(), "phi_natural": Phi.is_natural(),
           "phi_psi_identity": Phi.compose(Psi) == R.presheaf.identity_map(),
           "psi_phi_identity": Psi.compose(Phi) == L.presheaf.identity_map(),
           "right_vs_general": ps.iso_test(R.presheaf, U, args.seed).status,
           "left_vs_general": ps.iso_test(L.presheaf, U, args.seed).status}
    ok = all(rep[k] for k in ("psi_natural", "phi_natural", "phi_psi_identity", "psi_phi_identity")) and \
        rep["right_vs_general"] == "iso" and rep["left_vs_general"] == "iso"
    return ok, rep


def cmd_decat(doc, args):
    S = doc.semigroup
    tol = args.tol
    labels = S.base.objects
    rep = {"basis": labels,
           "left": {F: decat.gr_action(S, F, "left").tolist() for F in labels},
           "right": {F: decat.gr_action(S, F, "right").tolist() for F in labels},
           "sum": decat.sum_matrix(S).tolist(),
           "product_mismatches": [list(p) for p in decat.gr_product_ok(S)]}
    jc = decat.jcell_trivial(S)
    rep["jcell_trivial"] = jc.trivial
    rep["jcell_unreachable"] = [list(p) for p in jc.unreachable]
    ok = not rep["product_mismatches"]
    if jc.trivial:
        pf = decat.pf_idempotent(S)
        rep["pf"] = pf.as_dict()
        km = decat.km_check(_module(doc, args.module), pf.e, tol)
        rep["km"] = km.as_dict()
        ok = ok and pf.idempotency_error <= tol
    return ok, rep


def cmd_disimple(doc, args):
    S = doc.semigroup
    M = _module(doc, args.module)
    sides = ("left", "right") if M is S else ("left",)
    reps = {s: simplicity.stability_report(M, s) for s in sides}
    rep = {s: r.as_dict() for s, r in reps.items()}
    rep["disimple"] = all(r.simple_transitive for r in reps.values())
    return True, rep


def cmd_decide(doc, args):
    cert = _certificate(doc, args)
    v = simplicity.decide_finite_tensor(doc.semigroup, cert, args.seed)
    return v.consistent, v.as_dict()


def cmd_trace(doc, args):
    S = doc.semigroup
    t = simplicity.trace_k(S.base, S)
    rep = {"trace": t.as_dict()}
    if S.braid is not None:
        cert = _certificate(doc, args)
        et = simplicity.enriched_trace(S, cert, args.seed)
        rep["enriched"] = {"dims": et.presheaf.dims, "total_dim": et.presheaf.total_dim(),
                           "vs_unit": et.unit_comparison}
        return et.unit_comparison == "iso", rep
    return True, rep


def cmd_lift(doc, args):
    cert = _certificate(doc, args)
    M = _module(doc, args.module)
    L = modlift.unital_lift_check(M, cert, args.seed)
    rep = L.as_dict()
    proj, wit = modlift.projectivizing_check(M)
    rep["projectivizing"] = proj
    rep["projectivizing_witness"] = wit
    return L.ok, rep


COMMANDS = {
    "validate": cmd_validate, "rigid": cmd_rigid, "unit": cmd_unit, "ansatz": cmd_ansatz,
    "decat": cmd_decat, "disimple": cmd_disimple, "decide-tensor": cmd_decide, "trace": cmd_trace,
    "lift": cmd_lift,
}


def _params(items):
    out = {}
    for it in items or []:
        if "=" not in it:
            raise UsageError("parameters look like key=value, got %r" % it)
        k, v = it.split("=", 1)
        out[k] = v
    return out


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="semirigid", description=__doc__.split(".")[0])
    sub = p.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable report")
    common.add_argument("--field", help="Q or GFp; must match the document")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--max-dual-mult", type=int, default=None)
    for name in COMMANDS:
        sp = sub.add_parser(name, parents=[common])
        sp.add_argument("file")
        if name in ("decat", "disimple", "lift"):
            sp.add_argument("--module", default=None, help="module section name, 'regular' or 'zero'")
        if name == "decat":
            sp.add_argument("--tol", type=float, default=1e-9)
    g = sub.add_parser("generate", parents=[common])
    g.add_argument("kind", choices=["zero", "linear_semigroup", "bimodule_proj", "group_proj", "algebra_add"])
    g.add_argument("--param", action="append", metavar="KEY=VALUE")
    g.add_argument("--with-certificate", action="store_true")
    g.add_argument("-o", "--output")
    return p


def _print_human(command, ok, rep, out):
    out.write("%s: %s\n" % (command, "ok" if ok else "FAILED"))
    for k, v in rep.items():
        out.write("  %s: %s\n" % (k, json.dumps(v, sort_keys=True, default=str)))


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "generate":
            params = _params(args.param)
            doc = generate(args.kind, _field(args.field), **params)
            if args.with_certificate:
                doc.certificate = rigidity.build_certificate(doc.semigroup, args.max_dual_mult, args.seed)
            text = docio.dumps(doc)
            if args.output:
                with open(args.output, "w", encoding="utf-8") as fh:
                    fh.write(text)
            else:
                out.write(text)
            return 0
        doc = _load(args)
        ok, rep = COMMANDS[args.command](doc, args)
    except (UsageError, FormatError, ContractViolation, ps.PreconditionError, OSError, ValueError) as exc:
        msg = "%s: %s" % (type(exc).__name__, exc)
        if getattr(args, "json", False):
            out.write(json.dumps({"command": args.command, "error": msg}, sort_keys=True) + "\n")
        else:
            sys.stderr.write("error: %s\n" % msg)
        return 2
    if args.json:
        full = {"command": args.command, "file": args.file, "seed": args.seed, "ok": ok, "report": rep}
        out.write(json.dumps(full, sort_keys=True, default=str) + "\n")
    else:
        _print_human(args.command, ok, rep, out)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
