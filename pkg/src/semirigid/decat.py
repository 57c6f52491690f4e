"""Split Grothendieck data: action matrices, J-cell triviality, Perron-Frobenius idempotents."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field as dc_field

import numpy as np

from .fincat import Obj
from .semicat import ActionData, SemigroupData


class PreconditionError(ValueError):
    pass


def _labels(act: ActionData):
    return act.base.objects


def gr_action(act: ActionData, F, side: str = "left") -> np.ndarray:
    """Column X holds the multiplicities of each indecomposable in F*X (or X(x)F for side 'right')."""
    Fo = Obj((F,)) if isinstance(F, str) else F
    labels = _labels(act)
    pos = {l: i for i, l in enumerate(labels)}
    out = np.zeros((len(labels), len(labels)), dtype=np.int64)
    for c, x in enumerate(labels):
        X = Obj((x,))
        if side == "left":
            img = act.act_formal(Fo, X)
        elif side == "right":
            if act.S is not act:
                raise ValueError("right action matrices need the regular semigroup")
            img = act.act_formal(X, Fo)
        else:
            raise ValueError("side must be 'left' or 'right'")
        for l in img:
            out[pos[l], c] += 1
    return out


def sum_matrix(act: ActionData, side: str = "left") -> np.ndarray:
    labels = act.S.base.objects
    n = len(_labels(act))
    N = np.zeros((n, n), dtype=np.int64)
    for F in labels:
        N += gr_action(act, F, side)
    return N


def gr_product_ok(S: SemigroupData, side: str = "left") -> list:
    """Pairs (F, G) where the matrix of F(x)G differs from the product of matrices."""
    bad = []
    for F in S.base.objects:
        for G in S.base.objects:
            FG = S.tensor_obj(Obj((F,)), Obj((G,)))
            lhs = gr_action(S, FG, side)
            a, b = gr_action(S, F, side), gr_action(S, G, side)
            rhs = a @ b if side == "left" else b @ a
            if not np.array_equal(lhs, rhs):
                bad.append((F, G))
    return bad


@dataclass
class JCellReport:
    trivial: bool
    witnesses: dict = dc_field(default_factory=dict)   # (F, G) -> (H, K)
    unreachable: list = dc_field(default_factory=list)


def jcell_trivial(S: SemigroupData) -> JCellReport:
    """F is a summand of H(x)G(x)K for all F, G, with witnesses."""
    labels = S.base.objects
    wit, missing = {}, []
    for G in labels:
        found = {}
        for H in labels:
            HG = S.tensor_obj(Obj((H,)), Obj((G,)))
            for K in labels:
                for l in S.tensor_obj(HG, Obj((K,))):
                    found.setdefault(l, (H, K))
        for F in labels:
            if F in found:
                wit[(F, G)] = found[F]
            else:
                missing.append((F, G))
    return JCellReport(not missing, wit, missing)


def _period(N: np.ndarray) -> int:
    """Period of the support graph of N restricted to its strongly connected part through node 0."""
    n = N.shape[0]
    adj = [[j for j in range(n) if N[j, i] > 0] for i in range(n)]
    level = {0: 0}
    frontier = [0]
    g = 0
    while frontier:
        nxt = []
        for u in frontier:
            for v in adj[u]:
                if v not in level:
                    level[v] = level[u] + 1
                    nxt.append(v)
                else:
                    g = np.gcd(g, level[u] + 1 - level[v])
        frontier = nxt
    return int(g) if g else 0


@dataclass
class PFIdempotent:
    labels: list
    lam: float
    e: np.ndarray
    E: np.ndarray
    tol: float
    period: int
    branch: str
    idempotency_error: float
    support: list

    def as_dict(self) -> dict:
        return {"lambda": self.lam, "e": {l: float(x) for l, x in zip(self.labels, self.e)},
                "E": self.E.tolist(), "tolerance": self.tol, "period": self.period,
                "branch": self.branch, "idempotency_error": self.idempotency_error,
                "support": self.support}


def pf_idempotent(S: SemigroupData, tol: float = 1e-12, max_iter: int = 100000) -> PFIdempotent:
    """The limit of the powers of the sum of all indecomposables, rescaled by the PF eigenvalue.

    The projector is computed as the limit of ((N + I)/(lambda + 1))^n, which
    equals the Cesaro mean of (N/lambda)^n and exists for periodic N as well.
    """
    rep = jcell_trivial(S)
    if not rep.trivial:
        raise PreconditionError("not J-cell trivial; unreachable pairs %s" % rep.unreachable[:3])
    labels = S.base.objects
    N = sum_matrix(S).astype(float)
    n = N.shape[0]
    M = N + np.eye(n)
    x = np.ones(n) / np.sqrt(n)
    lam_prev = None
    lam = 0.0
    for _ in range(max_iter):
        y = M @ x
        y /= np.linalg.norm(y)
        lam = float(y @ (N @ y) / (y @ y))
        if lam_prev is not None and abs(lam - lam_prev) <= tol * max(1.0, abs(lam)):
            x = y
            break
        lam_prev, x = lam, y
    P = M / (lam + 1.0)
    # repeated squaring; stop once the change stops shrinking, since rounding in
    # lambda is amplified by every further squaring
    best = np.inf
    for _ in range(64):
        P2 = P @ P
        d = float(np.max(np.abs(P2 - P))) if n else 0.0
        if d >= best:
            break
        P, best = P2, d
        if d <= 1e-15:
            break
    period = _period(N)
    branch = "primitive" if period == 1 else "periodic (period %d): Cesaro limit" % period
    e = P @ np.ones(n) / lam
    E = np.zeros((n, n))
    for k, F in enumerate(labels):
        E += e[k] * gr_action(S, F)
    err = float(np.max(np.abs(E @ E - E))) if n else 0.0
    support = [l for l, c in zip(labels, e) if c > 1e-9]
    if len(support) != n:
        raise PreconditionError("support of the idempotent is not everything: %s" % support)
    return PFIdempotent(labels, lam, e, E, tol, period, branch, err, support)


@dataclass
class KMReport:
    cone: bool
    support_nonempty: bool
    idempotent: bool
    injective: bool
    idempotency_error: float
    span: list
    tol: float

    @property
    def ok(self) -> bool:
        return self.cone and self.support_nonempty and self.idempotent and self.injective

    def as_dict(self) -> dict:
        return {"cone": self.cone, "support_nonempty": self.support_nonempty,
                "idempotent": self.idempotent, "injective": self.injective,
                "idempotency_error": self.idempotency_error, "span": self.span, "tol": self.tol,
                "ok": self.ok}


def km_check(act: ActionData, e, tol: float = 1e-9) -> KMReport:
    """The three KM conditions for e (coefficients over Indec S) acting on the module act.

    An empty support is reported as a degenerate failure.
    """
    labels = act.S.base.objects
    e = np.asarray(e, dtype=float)
    cone = bool(np.all(e >= -tol))
    supp = [F for F, c in zip(labels, e) if abs(c) > tol]
    n = len(_labels(act))
    E = np.zeros((n, n))
    for F, c in zip(labels, e):
        E += c * gr_action(act, F)
    err = float(np.max(np.abs(E @ E - E))) if n else 0.0
    span = []
    for F in supp:
        for x in _labels(act):
            for l in act.act_formal(Obj((F,)), Obj((x,))):
                if l not in span:
                    span.append(l)
    cols = [_labels(act).index(l) for l in span]
    if cols:
        sub = E[:, cols]
        injective = int(np.linalg.matrix_rank(sub, tol=1e-8)) == len(cols)
    else:
        injective = False
    return KMReport(cone, bool(supp), err <= tol, injective, err, span, tol)


# ---------------------------------------------------------------------------
# inequalities between covers

def subhomogeneity_check(act: ActionData, F, P, rad=None) -> tuple:
    """cover(F*P) <= F*cover(P) entrywise in the Grothendieck group of projectives."""
    from .presheaf import act_on_presheaf, cover_and_flags
    Fo = Obj((F,)) if isinstance(F, str) else F
    c1 = cover_and_flags(act_on_presheaf(act, Fo, P), injectivity=False).cover_obj
    c0 = cover_and_flags(P, rad, injectivity=False).cover_obj
    rhs = act.act_formal(Fo, c0)
    lhs_c, rhs_c = Counter(c1), Counter(rhs)
    ok = all(lhs_c[l] <= rhs_c[l] for l in lhs_c)
    return ok, {"cover_of_image": list(c1), "image_of_cover": list(rhs)}


def cover_preservation_check(act: ActionData, F, G, P, seed: int = 0) -> tuple:
    """cover((G(x)F)*P) is isomorphic to G*cover(F*P)."""
    from .presheaf import act_on_presheaf, cover_and_flags, iso_test, representable
    S = act.S
    Fo, Go = Obj((F,)), Obj((G,))
    GF = S.tensor_obj(Go, Fo)
    c_gf = cover_and_flags(act_on_presheaf(act, GF, P), injectivity=False).cover_obj
    c_f = cover_and_flags(act_on_presheaf(act, Fo, P), injectivity=False).cover_obj
    G_cf = act.act_formal(Go, c_f)
    r = iso_test(representable(act.base, c_gf), representable(act.base, G_cf), seed)
    return r.iso, {"cover": list(c_gf), "image": list(G_cf), "status": r.status}


def pf_oracle(N: np.ndarray) -> float:
    """Spectral radius by a dense eigensolve."""
    if N.size == 0:
        return 0.0
    return float(max(abs(np.linalg.eigvals(N.astype(float)))))
