"""Module categories over a semigroup category: adjoint pairs of action functors, unital lifts, projectivity."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field as dc_field
from typing import Optional

from .fincat import Obj, ValidationReport, is_invertible, radical, transpose
from .presheaf import (PreconditionError, act_on_presheaf, cover_and_flags, representable, simple_presheaf,
                       unit_on_representable)
from .semicat import (HOLE, ActionData, SemigroupData, TMor, TransformFamily, Unknown, nat_module_space,
                      naturality_pairs, residual, solve_families, unpack, validate_action)

ModuleCatData = ActionData


def validate_module(S: SemigroupData, M: ActionData, limit: int = 10) -> ValidationReport:
    """Bifunctoriality, naturality of the multiplicativity blocks and their coherence."""
    if M.S is not S:
        return ValidationReport(False, [("semigroup", "module is defined over a different semigroup category")])
    return validate_action(M, limit)


# ---------------------------------------------------------------------------
# realizing adjunctions on a module category

@dataclass
class Realization:
    """(eta_hat, eps_hat) exhibit F* - as left adjoint to Fd* -; (eta, eps) are the coherent replacements."""

    F: str
    status: str                      # "found" | "refuted" | "undecided"
    reason: str = ""
    eta_hat: Optional[TransformFamily] = None
    eps_hat: Optional[TransformFamily] = None
    eta: Optional[TransformFamily] = None
    eps: Optional[TransformFamily] = None
    coherence_failures: list = dc_field(default_factory=list)
    triangle_failures: list = dc_field(default_factory=list)
    hom_dims: dict = dc_field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.status == "found" and not self.coherence_failures and not self.triangle_failures

    def as_dict(self) -> dict:
        return {"F": self.F, "status": self.status, "reason": self.reason,
                "coherence_failures": [list(map(str, w)) for w in self.coherence_failures],
                "triangle_failures": [list(map(str, w)) for w in self.triangle_failures],
                "hom_dims": {"%s,%s" % k: list(v) for k, v in self.hom_dims.items()}}


def _hom_comparison(M: ActionData, Fo, Do) -> dict:
    """(X, Y) -> (dim Hom(F*X, Y), dim Hom(X, Fd*Y))."""
    cat = M.base
    out = {}
    for x in cat.objects:
        for y in cat.objects:
            X, Y = Obj((x,)), Obj((y,))
            a = sum(cat.hd(s, y) for s in M.act_formal(Fo, X))
            b = sum(cat.hd(x, t) for t in M.act_formal(Do, Y))
            out[(x, y)] = (a, b)
    return out


def _phi_matrices_invertible(M: ActionData, eta_hat: TransformFamily, Fo, Do) -> bool:
    """Phi(g) = (Fd*g) o eta_hat_X is bijective Hom(F*X, Y) -> Hom(X, Fd*Y) for all indecomposable X, Y."""
    c = M.calc()
    cat = M.base
    for x in cat.objects:
        X = Obj((x,))
        ex = eta_hat.at(X)
        for y in cat.objects:
            Y = Obj((y,))
            cols = []
            for g in cat.hom_basis(M.act_formal(Fo, X), Y):
                img = c.compose(c.lwhisker(Do, TMor((Fo, X), Y, g)), ex)
                cols.append(img.mor.flat())
            if not cols:
                continue
            if not is_invertible(transpose(cols, len(cols), len(cols[0]))):
                return False
    return True


def _candidates(space, field, seed, random_tries):
    n = len(space)
    yield from ([field.one if j == i else field.zero for j in range(n)] for i in range(n))
    yield [field.one] * n
    for i, j in itertools.combinations(range(n), 2):
        yield [field.one if k in (i, j) else field.zero for k in range(n)]
    rng = random.Random(seed)
    for _ in range(random_tries):
        yield [field.random(rng) for _ in range(n)]


def _combine(space, coeffs):
    out = None
    for fam, a in zip(space, coeffs):
        if not a:
            continue
        out = fam.scale(a) if out is None else out.combine(fam, 1, a)
    return out


def _synthesize(M: ActionData, adj, eta_hat, eps_hat):
    """Coherent unit and counit built from (eta_hat, eps_hat) and the adjunction data of S."""
    c = M.calc()
    cat = M.base
    Fo, Do = adj.F, adj.Fd
    hl, el = adj.eta_l, adj.eps_l
    eta_c, eps_c = {}, {}
    for x in cat.objects:
        X = Obj((x,))
        FX = (Fo, X)
        # X -> Fd F X -> Fd F Fd F X -> Fd (F Fd F) Fd F X -> Fd F Fd F X -> Fd F X
        s1 = eta_hat.at(X)
        s2 = eta_hat.at((Do, FX))
        s3 = c.lwhisker(Do, c.rwhisker(hl.at(Fo), (Do, FX)))
        s4 = c.lwhisker(Do, c.lwhisker(Fo, c.lwhisker(Do, eps_hat.at(FX))))
        s5 = c.lwhisker(Do, eps_hat.at(FX))
        eta_c[x] = c.cast(c.compose(s5, s4, s3, s2, s1), X, (Do, FX)).mor
        # F Fd X -> F Fd F Fd X -> F Fd F Fd F Fd X -> F Fd F Fd X -> F Fd X -> X
        DX = (Do, X)
        t1 = c.lwhisker(Fo, eta_hat.at(DX))
        t2 = c.lwhisker(Fo, c.lwhisker(Do, c.lwhisker(Fo, eta_hat.at(DX))))
        t3 = c.lwhisker(Fo, c.rwhisker(el.at(Do), (Fo, DX)))
        t4 = eps_hat.at((Fo, DX))
        t5 = eps_hat.at(X)
        eps_c[x] = c.cast(c.compose(t5, t4, t3, t2, t1), (Fo, DX), X).mor
    eta = TransformFamily(c, HOLE, (Do, (Fo, HOLE)), eta_c)
    eps = TransformFamily(c, (Fo, (Do, HOLE)), HOLE, eps_c)
    return eta, eps


def coherence_failures(M: ActionData, adj, eta: TransformFamily, eps: TransformFamily) -> list:
    """Witnesses where H * eta_X differs from (eta^l_H) * X, or H * eps_X from (eps^l_H) * X."""
    c = M.calc()
    S = M.S
    out = []
    for h in S.base.objects:
        H = Obj((h,))
        for x in M.base.objects:
            X = Obj((x,))
            a = c.lwhisker(H, eta.at(X))
            b = c.rwhisker(adj.eta_l.at(H), X)
            if not c.agree(a, b):
                out.append(("unit", h, x))
            a = c.lwhisker(H, eps.at(X))
            b = c.rwhisker(adj.eps_l.at(H), X)
            if not c.agree(a, b):
                out.append(("counit", h, x))
    return out


def triangle_pairs(M: ActionData, Fo, Do, eta: TransformFamily, eps: TransformFamily):
    c = M.calc()
    cat = M.base
    for x in cat.objects:
        X = Obj((x,))
        t = c.compose(eps.at((Fo, X)), c.lwhisker(Fo, eta.at(X)))
        yield ("triangle on F*-", x), t.mor, cat.identity(c.ob((Fo, X)))
        t = c.compose(c.lwhisker(Do, eps.at(X)), eta.at((Do, X)))
        yield ("triangle on Fd*-", x), t.mor, cat.identity(c.ob((Do, X)))


def adjunction_realization(M: ActionData, adj, seed: int = 0, random_tries: int = 16) -> Realization:
    """Decide whether F*- is left adjoint to Fd*- on M and build coherent unit and counit when it is."""
    c = M.calc()
    cat = M.base
    Fo, Do = adj.F, adj.Fd
    label = Fo[0] if isinstance(Fo, Obj) and len(Fo) == 1 else str(Fo)
    dims = _hom_comparison(M, Fo, Do)
    bad = [(k, v) for k, v in dims.items() if v[0] != v[1]]
    if bad:
        (x, y), (a, b) = bad[0]
        return Realization(label, "refuted", "dim Hom(F*%s, %s) = %d but dim Hom(%s, Fd*%s) = %d"
                           % (x, y, a, x, y, b), hom_dims=dims)
    space = nat_module_space(M.S, "plain", HOLE, (Do, (Fo, HOLE)), c)
    eta_hat = None
    if space:
        for coeffs in _candidates(space, cat.field, seed, random_tries):
            cand = _combine(space, coeffs)
            if cand is not None and _phi_matrices_invertible(M, cand, Fo, Do):
                eta_hat = cand
                break
    if eta_hat is None:
        if not space and any(v[0] for v in dims.values()):
            return Realization(label, "refuted", "no natural maps Id -> Fd*F*-", hom_dims=dims)
        return Realization(label, "undecided", "no unit candidate with invertible Hom comparison", hom_dims=dims)

    unk = Unknown("eps", c, (Fo, (Do, HOLE)), HOLE)

    def res(fams):
        e = fams["eps"]
        return residual(naturality_pairs(e)) + residual(triangle_pairs(M, Fo, Do, eta_hat, e))

    part, _ = solve_families([unk], res, cat.field, affine=True)
    if part is None:
        return Realization(label, "undecided", "no counit matches the chosen unit", eta_hat=eta_hat, hom_dims=dims)
    eps_hat = unpack([unk], part)["eps"]
    eta, eps = _synthesize(M, adj, eta_hat, eps_hat)
    coh = coherence_failures(M, adj, eta, eps)
    tri = [w for w, a, b in triangle_pairs(M, Fo, Do, eta, eps) if a != b]
    return Realization(label, "found", "", eta_hat, eps_hat, eta, eps, coh, tri, dims)


# ---------------------------------------------------------------------------
# unital lifts

def summand_closure_gap(M: ActionData) -> list:
    """Indecomposables of M that are not a summand of any F*X."""
    hit = set()
    for F in M.S.base.objects:
        for x in M.base.objects:
            hit.update(M.act_formal(Obj((F,)), Obj((x,))))
    return [y for y in M.base.objects if y not in hit]


@dataclass
class LiftReport:
    ok: bool
    stage: str                       # "precondition" | "realization" | "unit" | "done"
    reason: str = ""
    realizations: dict = dc_field(default_factory=dict)
    actions: dict = dc_field(default_factory=dict)
    notes: list = dc_field(default_factory=list)

    def as_dict(self) -> dict:
        return {"ok": self.ok, "stage": self.stage, "reason": self.reason,
                "realizations": {k: r.as_dict() for k, r in self.realizations.items()},
                "unit_action": {x: {"coequalizes": a.coequalizes, "theta_sigma": a.theta_sigma,
                                    "sigma_theta": a.sigma_theta} for x, a in self.actions.items()},
                "notes": self.notes}


def unital_lift_check(M: ActionData, cert, seed: int = 0) -> LiftReport:
    """The unit presheaf acts as the identity on every representable of M.

    Respect of all adjunctions is tested on the certificate's adjunctions only;
    duals are unique up to isomorphism, so this covers every adjunction.
    """
    S = M.S
    if cert is None:
        raise PreconditionError("the unital lift check needs a rigidity certificate")
    gap = summand_closure_gap(M)
    if gap:
        return LiftReport(False, "precondition", "S*M != M: %s is not a summand of any F*X" % ", ".join(gap))
    reals = {}
    for F in S.base.objects:
        r = adjunction_realization(M, cert.right[F], seed)
        reals[F] = r
        if not r.ok:
            return LiftReport(False, "realization", "adjunction for %s: %s %s" % (F, r.status, r.reason), reals)
    c = M.calc()
    actions = {}
    for x in M.base.objects:
        Xo = Obj((x,))
        actions[x] = unit_on_representable(c, cert, x, "left", lambda F, Xo=Xo: reals[F].eps.at(Xo))
    bad = [x for x, a in actions.items() if not a.ok]
    notes = ["adjunctions checked: the certificate's right duals",
             "epimorphism condition checked on representables only"]
    if bad:
        return LiftReport(False, "unit", "unit does not act as the identity on Y(%s)" % ", ".join(bad),
                          reals, actions, notes)
    return LiftReport(True, "done", "", reals, actions, notes)


# ---------------------------------------------------------------------------
# projectivizing

def projectivizing_check(M: ActionData) -> tuple:
    """(True, None) if F*P is projective for every indecomposable F and every simple or indecomposable projective P."""
    cat = M.base
    rad = radical(cat)
    tests = [("simple", x, simple_presheaf(cat, x, rad)) for x in cat.objects]
    tests += [("projective", x, representable(cat, Obj((x,)))) for x in cat.objects]
    for F in M.S.base.objects:
        for kind, x, P in tests:
            img = act_on_presheaf(M, Obj((F,)), P)
            rep = cover_and_flags(img, rad, injectivity=False)
            if not rep.is_projective:
                return False, {"F": F, "presheaf": "%s %s" % (kind, x), "dims": dict(img.dims),
                               "cover": list(rep.cover_obj)}
    return True, None
