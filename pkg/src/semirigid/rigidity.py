"""Adjunctions inside a semigroup category: verification, composition, duals.

An adjunction is stored as ``(F, Fd)`` plus four transformation families

    eta_l: X -> X (Fd F)      eps_l: X (F Fd) -> X     (left-module flavor)
    eta_r: X -> (Fd F) X      eps_r: (F Fd) X -> X     (right-module flavor)

where F and Fd are trees (normally single-label leaves).
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field as dc_field
from typing import Optional

from .fincat import ContractViolation, Mor, Obj, rank, solve, split_test, transpose
from .semicat import (HOLE, SemigroupData, TMor, TransformFamily, Unknown, equivariance_pairs,
                      naturality_pairs, residual, solve_families, subst, unpack)


def _leaf(x):
    return Obj((x,)) if isinstance(x, str) else x


def templates(F, Fd) -> dict:
    return {
        "eta_l": (HOLE, (HOLE, (Fd, F)), "left"),
        "eps_l": ((HOLE, (F, Fd)), HOLE, "left"),
        "eta_r": (HOLE, ((Fd, F), HOLE), "right"),
        "eps_r": (((F, Fd), HOLE), HOLE, "right"),
    }


@dataclass
class AdjunctionData:
    F: object
    Fd: object
    eta_l: TransformFamily
    eps_l: TransformFamily
    eta_r: TransformFamily
    eps_r: TransformFamily
    note: str = ""

    def families(self) -> dict:
        return {"eta_l": self.eta_l, "eps_l": self.eps_l, "eta_r": self.eta_r, "eps_r": self.eps_r}

    def F_obj(self, S: SemigroupData) -> Obj:
        return S.calc().ob(self.F)

    def Fd_obj(self, S: SemigroupData) -> Obj:
        return S.calc().ob(self.Fd)

    def replace(self, **fams) -> "AdjunctionData":
        d = self.families()
        d.update(fams)
        return AdjunctionData(self.F, self.Fd, note=self.note, **d)


def adjunction_unknowns(S: SemigroupData, F, Fd, names) -> list:
    c = S.calc()
    t = templates(F, Fd)
    return [Unknown(n, c, t[n][0], t[n][1], t[n][2]) for n in names]


def adjunction_from_components(S, F, Fd, comps: dict) -> AdjunctionData:
    """comps[name][label] = Mor."""
    c = S.calc()
    t = templates(F, Fd)
    fams = {n: TransformFamily(c, t[n][0], t[n][1], comps[n], t[n][2]) for n in t}
    return AdjunctionData(F, Fd, **fams)


# ---------------------------------------------------------------------------
# axioms

def axiom_pairs(S: SemigroupData, adj: AdjunctionData, axiom: str):
    """(witness, lhs, rhs) triples for one axiom; rhs is the expected value."""
    c = S.calc()
    cat = S.base
    F, D = adj.F, adj.Fd
    hl, el, hr, er = adj.eta_l, adj.eps_l, adj.eta_r, adj.eps_r
    objs = cat.objects
    if axiom == "I":
        for x in objs:
            X = Obj((x,))
            # triangle for the unit X -> (X D) F of (- D) -| (- F), at X D
            t1 = c.compose(el.at((X, D)), c.rwhisker(hl.at(X), D))
            yield ("I", "left-adjoint triangle", x), t1.mor, cat.identity(c.ob((X, D)))
            t2 = c.compose(c.rwhisker(el.at(X), F), hl.at((X, F)))
            yield ("I", "right-adjoint triangle", x), t2.mor, cat.identity(c.ob((X, F)))
    elif axiom == "II":
        for x in objs:
            X = Obj((x,))
            t1 = c.compose(er.at((F, X)), c.lwhisker(F, hr.at(X)))
            yield ("II", "left-adjoint triangle", x), t1.mor, cat.identity(c.ob((F, X)))
            t2 = c.compose(c.lwhisker(D, er.at(X)), hr.at((D, X)))
            yield ("II", "right-adjoint triangle", x), t2.mor, cat.identity(c.ob((D, X)))
    elif axiom == "III":
        t1 = c.compose(er.at(F), hl.at(F))
        yield ("III", "zigzag on F"), t1.mor, cat.identity(c.ob(F))
        t2 = c.compose(el.at(D), hr.at(D))
        yield ("III", "zigzag on Fd"), t2.mor, cat.identity(c.ob(D))
    elif axiom == "IV":
        yield from axiom_pairs(S, adj, "IV-units")
        yield from axiom_pairs(S, adj, "IV-counits")
    elif axiom in ("IV-units", "IV-counits"):
        units = axiom == "IV-units"
        for h in objs:
            for k in objs:
                H, K = Obj((h,)), Obj((k,))
                if units:
                    a = c.lwhisker(H, hr.at(K))
                    b = c.rwhisker(hl.at(H), K)
                else:
                    a = c.lwhisker(H, er.at(K))
                    b = c.rwhisker(el.at(H), K)
                yield ("IV", "units" if units else "counits", h, k), a.mor, c.cast(b, a.src, a.dst).mor
    elif axiom == "naturality":
        for fam in adj.families().values():
            yield from naturality_pairs(fam)
    elif axiom == "equivariance":
        for fam in adj.families().values():
            yield from equivariance_pairs(fam)
    else:
        raise ValueError("unknown axiom %r" % axiom)


AXIOMS = ("I", "II", "III", "IV", "naturality", "equivariance")


def verify_adjunction(S: SemigroupData, adj: AdjunctionData) -> dict:
    """Per-axiom report: {axiom: {"ok", "witness", "checked"}}."""
    out = {}
    for ax in AXIOMS:
        n = 0
        wit = None
        for w, lhs, rhs in axiom_pairs(S, adj, ax):
            n += 1
            if wit is None and lhs != rhs:
                wit = list(w)
        out[ax] = {"ok": wit is None, "witness": wit, "checked": n}
    return out


def all_ok(report: dict) -> bool:
    return all(v["ok"] for v in report.values())


# ---------------------------------------------------------------------------
# composition of adjunctions

def compose_adjunctions(S: SemigroupData, adjF: AdjunctionData, adjG: AdjunctionData,
                        check_inputs: bool = False) -> AdjunctionData:
    """Adjunction data for G(x)F with dual Fd(x)Gd, built componentwise."""
    if check_inputs:
        for a in (adjF, adjG):
            if not all_ok(verify_adjunction(S, a)):
                raise ContractViolation("input adjunction does not verify")
    c = S.calc()
    F, Fd, G, Gd = adjF.F, adjF.Fd, adjG.F, adjG.Fd
    GF, DD = (G, F), (Fd, Gd)
    t = templates(GF, DD)
    comps = {n: {} for n in t}
    for x in S.base.objects:
        X = Obj((x,))
        # eta_l: X -> X (Fd F) -> ((X Fd) (Gd G)) F
        s = c.compose(c.rwhisker(adjG.eta_l.at((X, Fd)), F), adjF.eta_l.at(X))
        comps["eta_l"][x] = c.cast(s, X, (X, (DD, GF))).mor
        # eps_l: X (G F Fd Gd) -> X
        s1 = c.rwhisker(adjF.eps_l.at((X, G)), Gd)
        s = c.compose(adjG.eps_l.at(X), s1)
        comps["eps_l"][x] = c.cast(s, (X, (GF, DD)), X).mor
        # eta_r: X -> (Fd F) X -> (Fd Gd)(G F) X
        s = c.compose(c.lwhisker(Fd, adjG.eta_r.at((F, X))), adjF.eta_r.at(X))
        comps["eta_r"][x] = c.cast(s, X, ((DD, GF), X)).mor
        # eps_r: (G F Fd Gd) X -> X
        s1 = c.lwhisker(G, adjF.eps_r.at((Gd, X)))
        s = c.compose(adjG.eps_r.at(X), s1)
        comps["eps_r"][x] = c.cast(s, ((GF, DD), X), X).mor
    fams = {n: TransformFamily(c, t[n][0], t[n][1], comps[n], t[n][2]) for n in t}
    return AdjunctionData(GF, DD, note="composite", **fams)


# ---------------------------------------------------------------------------
# certificates and duality

@dataclass
class RigidityCertificate:
    """right[F] is an adjunction (F, F-dual); left[F] is an adjunction (left-dual, F)."""

    right: dict = dc_field(default_factory=dict)
    left: dict = dc_field(default_factory=dict)
    notes: list = dc_field(default_factory=list)

    def right_dual(self, S, label) -> Obj:
        return self._get(self.right, label, "right").Fd_obj(S)

    def left_dual(self, S, label) -> Obj:
        return self._get(self.left, label, "left").F_obj(S)

    @staticmethod
    def _get(table, label, side):
        adj = table.get(label)
        if adj is None:
            raise KeyError("no %s-dual certificate entry for %s" % (side, label))
        return adj

    def covers(self, labels) -> bool:
        return all(l in self.right and l in self.left for l in labels)


def _dual_obj(S, table, labels, side) -> Obj:
    out = Obj()
    for l in labels:
        adj = RigidityCertificate._get(table, l, side)
        out = out + (adj.Fd_obj(S) if side == "right" else adj.F_obj(S))
    return out


def dual_map_indec(S: SemigroupData, adjF: AdjunctionData, adjG: AdjunctionData, f: Mor) -> Mor:
    """f: F -> G gives f^: Gd -> Fd."""
    c = S.calc()
    F, Fd, G, Gd = adjF.F, adjF.Fd, adjG.F, adjG.Fd
    ft = TMor(F, G, f)
    s1 = adjF.eta_r.at(Gd)
    s2 = c.rwhisker(c.lwhisker(Fd, ft), Gd)
    s3 = adjG.eps_l.at(Fd)
    return c.compose(s3, s2, s1).mor


def left_dual_map_indec(S, ladjF: AdjunctionData, ladjG: AdjunctionData, f: Mor) -> Mor:
    """f: F -> G gives the left-dual map from the left dual of G to that of F."""
    c = S.calc()
    LF, LG = ladjF.F, ladjG.F
    F, G = ladjF.Fd, ladjG.Fd
    ft = TMor(F, G, f)
    s1 = ladjF.eta_l.at(LG)
    s2 = c.lwhisker(LG, c.rwhisker(ft, LF))
    s3 = ladjG.eps_r.at(LF)
    return c.compose(s3, s2, s1).mor


def duality_functor(S: SemigroupData, cert: RigidityCertificate, f: Mor, side: str = "right") -> Mor:
    """Contravariant duality on a morphism between formal objects, blockwise."""
    table = cert.right if side == "right" else cert.left
    for l in set(f.src.summands) | set(f.dst.summands):
        if l not in table:
            raise KeyError("no %s-dual certificate entry for %s" % (side, l))
    one = _dual_obj(S, table, f.src, side)
    two = _dual_obj(S, table, f.dst, side)
    cat = S.base
    out = cat.zero_mor(two, one)
    mapper = dual_map_indec if side == "right" else left_dual_map_indec
    # block offsets of the duals
    offs_src, pos = [], 0
    for l in f.src:
        offs_src.append(pos)
        pos += len(_dual_obj(S, table, [l], side))
    offs_dst, pos = [], 0
    for l in f.dst:
        offs_dst.append(pos)
        pos += len(_dual_obj(S, table, [l], side))
    for b, lb in enumerate(f.dst):
        for a, la in enumerate(f.src):
            v = f.blocks[b][a]
            if not any(v):
                continue
            blk = Mor(cat, Obj((la,)), Obj((lb,)), [[v]])
            d = mapper(S, table[la], table[lb], blk)
            for r in range(len(d.dst)):
                for s in range(len(d.src)):
                    out.blocks[offs_src[a] + r][offs_dst[b] + s] = d.blocks[r][s]
    return out


def dual_comparison(S: SemigroupData, adj1: AdjunctionData, adj2: AdjunctionData):
    """Isomorphism between two right duals of the same object, with its inverse."""
    c = S.calc()
    D1, D2 = adj1.Fd, adj2.Fd
    if c.ob(adj1.F).summands != c.ob(adj2.F).summands:
        raise ContractViolation("adjunctions are for different objects")
    fwd = c.compose(adj1.eps_l.at(D2), adj2.eta_r.at(D1))
    bwd = c.compose(adj2.eps_l.at(D1), adj1.eta_r.at(D2))
    cat = S.base
    ok = (cat.compose(bwd.mor, fwd.mor) == cat.identity(c.ob(D1))
          and cat.compose(fwd.mor, bwd.mor) == cat.identity(c.ob(D2)))
    return fwd.mor, bwd.mor, ok


def hom_iso_check(S: SemigroupData, adj: AdjunctionData) -> list:
    """Checks the two adjunction bijections Hom(F H, K) = Hom(H, Fd K) and
    Hom(H, K F) = Hom(H Fd, K) on all indecomposable pairs; returns failures."""
    c = S.calc()
    cat = S.base
    F, D = adj.F, adj.Fd
    bad = []
    for h in cat.objects:
        for k in cat.objects:
            H, K = Obj((h,)), Obj((k,))
            dom = cat.hom_basis(c.ob((F, H)), K)
            imgs = []
            for phi in dom:
                s = c.compose(c.lwhisker(D, TMor((F, H), K, phi)), adj.eta_r.at(H))
                imgs.append(c.cast(s, H, (D, K)).mor.flat())
            n_cod = len(cat.hom_basis(H, c.ob((D, K))))
            if len(dom) != n_cod or (dom and rank(imgs, n_cod) != len(dom)):
                bad.append(("left", h, k))
            dom = cat.hom_basis(H, c.ob((K, F)))
            imgs = []
            for psi in dom:
                s = c.compose(adj.eps_l.at(K), c.rwhisker(TMor(H, (K, F), psi), D))
                imgs.append(c.cast(s, (H, D), K).mor.flat())
            n_cod = len(cat.hom_basis(c.ob((H, D)), K))
            if len(dom) != n_cod or (dom and rank(imgs, n_cod) != len(dom)):
                bad.append(("right", h, k))
    return bad


def split_mono_epi_check(S: SemigroupData, adj: AdjunctionData) -> dict:
    """eta_l at F is split mono and eps_r at F is split epi."""
    cat = S.base
    return {
        "eta_l_split_mono": split_test(cat, adj.eta_l.at(adj.F).mor, "mono") is not None,
        "eps_r_split_epi": split_test(cat, adj.eps_r.at(adj.F).mor, "epi") is not None,
    }


# ---------------------------------------------------------------------------
# dual search

def _candidates(S: SemigroupData, K: int):
    labels = S.base.objects
    combos = []
    for mult in itertools.product(range(K + 1), repeat=len(labels)):
        if sum(mult) == 0:
            continue
        summ = tuple(l for l, m in zip(labels, mult) for _ in range(m))
        combos.append(summ)
    combos.sort(key=lambda s: (len(s), [labels.index(l) for l in s]))
    return [Obj(s) for s in combos]


def _summand(small: Obj, big: Obj) -> bool:
    cb = big.counts()
    return all(cb[k] >= v for k, v in small.counts().items())


def _search_pair(S, F, D, seed, rounds=3, batch=6, log=None):
    """Look for adjunction data with left object F and right object D."""
    field = S.base.field
    u_eta = adjunction_unknowns(S, F, D, ["eta_l", "eta_r"])
    u_eps = adjunction_unknowns(S, F, D, ["eps_l", "eps_r"])

    def eta_res(fams):
        out = []
        for n in ("eta_l", "eta_r"):
            out += residual(naturality_pairs(fams[n]))
            out += residual(equivariance_pairs(fams[n]))
        stub = AdjunctionData(F, D, fams["eta_l"], None, fams["eta_r"], None)
        out += residual(axiom_pairs(S, stub, "IV-units"))
        return out

    def eps_res(fams):
        out = []
        for n in ("eps_l", "eps_r"):
            out += residual(naturality_pairs(fams[n]))
            out += residual(equivariance_pairs(fams[n]))
        stub = AdjunctionData(F, D, None, fams["eps_l"], None, fams["eps_r"])
        out += residual(axiom_pairs(S, stub, "IV-counits"))
        return out

    _, k_eta = solve_families(u_eta, eta_res, field)
    if not k_eta:
        return None, "no natural equivariant units"
    _, k_eps = solve_families(u_eps, eps_res, field)
    if not k_eps:
        return None, "no natural equivariant counits"
    eps_fams = [unpack(u_eps, v) for v in k_eps]

    def lin(a, b, coeffs):
        out = [field.zero] * len(b[0])
        for cf, v in zip(coeffs, b):
            if cf:
                out = [p + cf * q for p, q in zip(out, v)]
        return out

    def try_eta(coeffs):
        eta = unpack(u_eta, lin(None, k_eta, coeffs))

        def res(e):
            adj = AdjunctionData(F, D, eta["eta_l"], e["eps_l"], eta["eta_r"], e["eps_r"])
            out = []
            for ax in ("I", "II", "III"):
                out += residual(axiom_pairs(S, adj, ax))
            return out

        zero_eps = unpack(u_eps, [field.zero] * sum(u.size for u in u_eps))
        base = res(zero_eps)
        cols = [[p - q for p, q in zip(res(e), base)] for e in eps_fams]
        rows = transpose(cols, len(cols), len(base))
        x = solve(rows, [-b for b in base], len(cols), field.zero)
        if x is None:
            return None
        eps = unpack(u_eps, lin(None, k_eps, x))
        adj = AdjunctionData(F, D, eta["eta_l"], eps["eps_l"], eta["eta_r"], eps["eps_r"])
        if all_ok(verify_adjunction(S, adj)):
            return adj
        return None

    n = len(k_eta)
    one, zero = field.one, field.zero
    first = []
    for i in range(n):
        first.append([one if j == i else zero for j in range(n)])
    for i, j in itertools.combinations(range(n), 2):
        first.append([one if k in (i, j) else zero for k in range(n)])
    first.append([one] * n)
    rng = random.Random(seed)
    batches = [first] + [[[field.random(rng) for _ in range(n)] for _ in range(batch)]
                         for _ in range(rounds - 1)]
    for r, b in enumerate(batches):
        for coeffs in b:
            adj = try_eta(coeffs)
            if adj is not None:
                adj.note = "found in round %d" % (r + 1)
                return adj, adj.note
    return None, "no unit in %d rounds admits a counit" % rounds


def find_dual(S: SemigroupData, F, max_mult: Optional[int] = None, seed: int = 0,
              side: str = "right", log: Optional[list] = None) -> Optional[AdjunctionData]:
    """Best-effort search for a right (or left) dual of the indecomposable F.

    None means nothing was found within the multiplicity bound.
    """
    c = S.calc()
    Fo = _leaf(F)
    K = max_mult if max_mult is not None else S.max_multiplicity()
    for D in _candidates(S, K):
        if side == "right":
            L, R = Fo, D
        else:
            L, R = D, Fo
        # split mono/epi constraints: L is a summand of L R L and R of R L R
        if not _summand(c.ob(L), c.ob((L, (R, L)))) or not _summand(c.ob(R), c.ob((R, (L, R)))):
            if log is not None:
                log.append((repr(D), "pruned"))
            continue
        adj, why = _search_pair(S, L, R, seed)
        if log is not None:
            log.append((repr(D), why))
        if adj is not None:
            return adj
    return None


def build_certificate(S: SemigroupData, max_mult=None, seed: int = 0) -> Optional[RigidityCertificate]:
    cert = RigidityCertificate(notes=["dual multiplicity bound %s" % (max_mult if max_mult is not None
                                                                      else S.max_multiplicity())])
    for x in S.base.objects:
        r = find_dual(S, x, max_mult, seed, "right")
        l = find_dual(S, x, max_mult, seed, "left")
        if r is None or l is None:
            return None
        cert.right[x] = r
        cert.left[x] = l
    return cert


def naive_self_duality(S: SemigroupData, label) -> AdjunctionData:
    """All-zero families with F as its own dual (meaningful when every tensor vanishes)."""
    F = _leaf(label)
    c = S.calc()
    t = templates(F, F)
    fams = {}
    for n, (src, dst, fl) in t.items():
        comps = {}
        for x in S.base.objects:
            X = Obj((x,))
            comps[x] = S.base.zero_mor(c.ob(subst(src, X)), c.ob(subst(dst, X)))
        fams[n] = TransformFamily(c, src, dst, comps, fl)
    return AdjunctionData(F, F, note="naive self-duality", **fams)

