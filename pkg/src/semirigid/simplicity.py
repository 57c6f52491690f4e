"""Stable ideals, (simple) transitivity, the finite-tensor decision and traces."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Optional

from .fincat import (CatPresentation, ContractViolation, Echelon, IdealData, Mor, Obj, Quotient, Subspace,
                     nullspace, radical, transpose)
from .presheaf import (Cokernel, Presheaf, PreconditionError, block_mor, iso_test, unit_general, unit_verify,
                       yoneda_map)
from .semicat import ActionData, SemigroupData, TMor

SIDES = ("left", "right", "two-sided-stable")


def _acting_maps(act: ActionData, side: str):
    """Functions f -> F*f (or f(x)F) for every indecomposable F of S, per side."""
    S = act.S
    outs = []
    for F in S.base.objects:
        idF = S.base.identity(Obj((F,)))
        if side in ("left", "two-sided-stable"):
            outs.append(lambda f, idF=idF: act.act_mor_formal(idF, f))
        if side in ("right", "two-sided-stable"):
            if act.S is not act:
                raise ContractViolation("right-side stability needs the regular module")
            outs.append(lambda f, idF=idF: S.tensor_mor(f, idF))
    return outs


def _as_basis_mor(cat: CatPresentation, x, y, vec) -> Mor:
    return Mor(cat, Obj((x,)), Obj((y,)), [[list(vec)]])


def ideal_closure(act: ActionData, generators, side: str = "left") -> IdealData:
    """The least ideal containing the generators that is stable under the action on the given side.

    Generators are Mors of the base category or triples (x, y, coordinate vector).
    """
    if side not in SIDES:
        raise ValueError("side must be one of %s" % (SIDES,))
    cat = act.base
    acts = _acting_maps(act, side)
    ech = {(x, y): Echelon(cat.hd(x, y)) for x in cat.objects for y in cat.objects}
    work = []

    def push(x, y, v):
        if any(v) and ech[(x, y)].add(v):
            work.append((x, y, v))

    def push_mor(f: Mor):
        for t, y in enumerate(f.dst):
            for s, x in enumerate(f.src):
                push(x, y, f.blocks[t][s])

    for g in generators:
        if isinstance(g, Mor):
            push_mor(g)
        else:
            push(*g)
    while work:
        x, y, v = work.pop()
        for z in cat.objects:
            for k in range(cat.hd(y, z)):
                push(x, z, cat.compose_vec(x, y, z, cat.unit_vec(y, z, k), v))
            for k in range(cat.hd(z, x)):
                push(z, y, cat.compose_vec(z, x, y, v, cat.unit_vec(z, x, k)))
        f = _as_basis_mor(cat, x, y, v)
        for a in acts:
            push_mor(a(f))
    spaces = {k: Subspace(cat.hd(*k), e.dense_rows(cat.zero), cat.zero, cat.one) for k, e in ech.items()}
    return IdealData(cat, spaces)


def is_stable(act: ActionData, ideal: IdealData, side: str) -> bool:
    cat = act.base
    acts = _acting_maps(act, side)
    for (x, y), sp in ideal.spaces.items():
        for v in sp.basis():
            f = _as_basis_mor(cat, x, y, v)
            if not all(ideal.contains_mor(a(f)) for a in acts):
                return False
    return ideal.is_ideal()


# ---------------------------------------------------------------------------
# transitivity and simple transitivity

def reachability(act: ActionData, side: str) -> dict:
    """X -> set of indecomposables Y occurring in F*X (or X(x)F) for some indecomposable F."""
    S = act.S
    out = {}
    for x in act.base.objects:
        seen = set()
        for F in S.base.objects:
            if side == "left":
                seen.update(act.act_formal(Obj((F,)), Obj((x,))))
            else:
                if act.S is not act:
                    raise ContractViolation("right-side transitivity needs the regular module")
                seen.update(S.tensor_obj(Obj((x,)), Obj((F,))))
        out[x] = seen
    return out


@dataclass
class StabilityReport:
    side: str
    transitive: bool
    witness: Optional[tuple]          # (X, Y) with Y not reachable from X
    simple_transitive: bool
    certificate: str                   # "max stable ideal in radical = 0" or "nonzero stable ideal in radical"
    ideal: Optional[IdealData] = None  # the largest stable ideal inside the radical
    rounds: int = 0

    def as_dict(self) -> dict:
        return {"side": self.side, "transitive": self.transitive,
                "witness": list(self.witness) if self.witness else None,
                "simple_transitive": self.simple_transitive, "certificate": self.certificate,
                "ideal_dims": ({"%s->%s" % k: d for k, d in self.ideal.dims().items()}
                               if self.ideal is not None else None),
                "rounds": self.rounds}


def largest_stable_in(act: ActionData, start: IdealData, side: str) -> tuple:
    """Decreasing fixpoint J -> {f in J : F*f in J for all indecomposable F}; returns (ideal, rounds)."""
    cat = act.base
    f0, f1 = cat.zero, cat.one
    acts = _acting_maps(act, side)
    J = start
    rounds = 0
    while True:
        rounds += 1
        quot = {k: Quotient(cat.hd(*k), sp.basis(), f0, f1) for k, sp in J.spaces.items()}
        new = {}
        changed = False
        for (x, y), sp in J.spaces.items():
            basis = sp.basis()
            if not basis:
                new[(x, y)] = sp
                continue
            cols = []
            for v in basis:
                f = _as_basis_mor(cat, x, y, v)
                col = []
                for a in acts:
                    img = a(f)
                    for t, yy in enumerate(img.dst):
                        for s, xx in enumerate(img.src):
                            col.extend(quot[(xx, yy)].project(img.blocks[t][s]))
                cols.append(col)
            nrows = len(cols[0])
            rows = transpose(cols, len(cols), nrows) if nrows else []
            ker = nullspace(rows, len(basis), f0, f1)
            vecs = []
            for c in ker:
                w = [f0] * cat.hd(x, y)
                for ci, b in zip(c, basis):
                    if ci:
                        w = [p + ci * q for p, q in zip(w, b)]
                vecs.append(w)
            sub = Subspace(cat.hd(x, y), vecs, f0, f1)
            if sub.dim != sp.dim:
                changed = True
            new[(x, y)] = sub
        J = IdealData(cat, new)
        if not changed:
            return J, rounds


def stability_report(act: ActionData, side: str = "left", rad: Optional[IdealData] = None) -> StabilityReport:
    """Transitivity by summand lookup, simple transitivity by the largest stable ideal inside the radical.

    Any stable ideal holding a non-radical morphism contains an identity (local
    endomorphism rings), and under transitivity that ideal is everything, so only
    ideals inside the radical need inspecting.
    """
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    reach = reachability(act, side)
    witness = None
    for x in act.base.objects:
        for y in act.base.objects:
            if y not in reach[x]:
                witness = (x, y)
                break
        if witness:
            break
    rad = rad or radical(act.base)
    J, rounds = largest_stable_in(act, rad, side)
    zero = J.is_zero()
    cert = "max stable ideal in radical = 0" if zero else "nonzero stable ideal in radical"
    return StabilityReport(side, witness is None, witness, witness is None and zero, cert, J, rounds)


def simple_transitivity_oracle(act: ActionData, side: str = "left") -> tuple:
    """Exhaustive check: the stable ideal generated by each basis morphism alone is the whole category.

    Returns (verdict, first basis morphism whose closure is proper, or None).
    """
    cat = act.base
    full = IdealData.full(cat).total_dim()
    for x in cat.objects:
        for y in cat.objects:
            for i in range(cat.hd(x, y)):
                I = ideal_closure(act, [(x, y, cat.unit_vec(x, y, i))], side)
                if I.total_dim() != full:
                    return False, (x, y, cat.name(x, y, i), I.dims())
    return True, None


# ---------------------------------------------------------------------------
# finite tensor decision

@dataclass
class TensorVerdict:
    verdict: str
    left: StabilityReport
    right: StabilityReport
    unit_end_dim: int
    unit_simple: bool
    unit_dims: dict
    consistent: bool
    notes: list = dc_field(default_factory=list)

    def as_dict(self) -> dict:
        return {"verdict": self.verdict, "left": self.left.as_dict(), "right": self.right.as_dict(),
                "unit_end_dim": self.unit_end_dim, "unit_simple": self.unit_simple,
                "unit_dims": self.unit_dims, "consistent": self.consistent, "notes": self.notes}


def decide_finite_tensor(S: SemigroupData, cert, seed: int = 0) -> TensorVerdict:
    """yes iff S is simple transitive as a left and as a right module over itself.

    The unit's End dimension and simplicity are computed independently and only
    monitor consistency; they never change the verdict.
    """
    if cert is None:
        raise PreconditionError("deciding the finite tensor property needs a rigidity certificate")
    rad = radical(S.base)
    left = stability_report(S, "left", rad)
    right = stability_report(S, "right", rad)
    yes = left.simple_transitive and right.simple_transitive
    U = unit_general(S, cert).presheaf
    rep = unit_verify(S, cert, U, seed, day=False, sections=False)
    unit_ok = rep.end_dim == 1 and rep.simple
    notes = []
    if yes and rep.end_dim != 1:
        notes.append("inconsistency: disimple but dim End(unit) = %d" % rep.end_dim)
    if yes != unit_ok:
        notes.append("inconsistency: verdict %s but unit End dim %d, simple %s"
                     % ("yes" if yes else "no", rep.end_dim, rep.simple))
    return TensorVerdict("yes" if yes else "no", left, right, rep.end_dim, rep.simple, dict(U.dims),
                         yes == unit_ok, notes)


# ---------------------------------------------------------------------------
# traces

@dataclass
class TraceResult:
    dim: int
    basis: list                 # (object, endomorphism name) representing each class
    quotient: Quotient
    offsets: dict
    mult: Optional[list] = None  # mult[a][b] = coordinates of class_a * class_b

    def as_dict(self) -> dict:
        return {"dim": self.dim, "basis": [list(b) for b in self.basis],
                "mult": ([[[str(c) for c in v] for v in row] for row in self.mult]
                         if self.mult is not None else None)}


def trace_k(cat: CatPresentation, S: Optional[SemigroupData] = None) -> TraceResult:
    """Sum of End(X) modulo span{g o f - f o g}; with S, also the product induced by the tensor."""
    f0, f1 = cat.zero, cat.one
    offsets, n = {}, 0
    for x in cat.objects:
        offsets[x] = n
        n += cat.hd(x, x)

    def embed(x, v, out=None):
        out = out if out is not None else [f0] * n
        for i, c in enumerate(v):
            if c:
                out[offsets[x] + i] = out[offsets[x] + i] + c
        return out

    rels = []
    for x in cat.objects:
        for y in cat.objects:
            for i in range(cat.hd(x, y)):
                fv = cat.unit_vec(x, y, i)
                for j in range(cat.hd(y, x)):
                    gv = cat.unit_vec(y, x, j)
                    r = embed(x, cat.compose_vec(x, y, x, gv, fv))
                    r = embed(y, [-c for c in cat.compose_vec(y, x, y, fv, gv)], r)
                    rels.append(r)
    q = Quotient(n, rels, f0, f1)
    where = {}
    for x in cat.objects:
        for i in range(cat.hd(x, x)):
            where[offsets[x] + i] = (x, i)
    basis = [(where[c][0], cat.name(where[c][0], where[c][0], where[c][1])) for c in q.free]
    mult = None
    if S is not None:
        def trace_class(m: Mor):
            v = [f0] * n
            for t, l in enumerate(m.dst):
                if m.src[t] == l:
                    embed(l, m.blocks[t][t], v)
            return q.project(v)
        mult = []
        for a in q.free:
            xa, ia = where[a]
            row = []
            for b in q.free:
                xb, ib = where[b]
                m = S.tensor_mor(cat.basis_mor(xa, xa, ia), cat.basis_mor(xb, xb, ib))
                row.append(trace_class(m))
            mult.append(row)
    return TraceResult(q.dim, basis, q, offsets, mult)


@dataclass
class EnrichedTrace:
    presheaf: Presheaf
    coker: Cokernel
    relation: Mor
    unit_comparison: str


def enriched_trace(S: SemigroupData, cert, seed: int = 0) -> EnrichedTrace:
    """Coequalizer of Y([G,F](x)[F,G]) => Y([H,H]) with [F,G] = Fd(x)G, using the symmetry for the second map."""
    if S.braid is None:
        raise ContractViolation("the enriched trace needs symmetric braiding data")
    if cert is None:
        raise PreconditionError("the enriched trace needs a rigidity certificate")
    c = S.calc()
    labels = S.base.objects
    Fd = {F: cert.right[F].Fd for F in labels}
    tgt = [c.ob((Fd[H], Obj((H,)))) for H in labels]
    src, entries = [], {}
    for j, (F, G) in enumerate((F, G) for F in labels for G in labels):
        Fo, Go = Obj((F,)), Obj((G,))
        tree = ((Fd[F], Go), (Fd[G], Fo))
        swapped = ((Fd[G], Fo), (Fd[F], Go))
        k = c.lwhisker(Fd[F], cert.right[G].eps_r.at(Fo))
        k = c.cast(k, tree, (Fd[F], Fo))
        sw = TMor(tree, swapped, S.braid_formal(c.ob(tree[0]), c.ob(tree[1])))
        kb = c.compose(c.lwhisker(Fd[G], cert.right[F].eps_r.at(Go)), sw)
        kb = c.cast(kb, tree, (Fd[G], Go))
        src.append(c.ob(tree))
        iF, iG = labels.index(F), labels.index(G)
        entries[(iF, j)] = entries[(iF, j)] + k.mor if (iF, j) in entries else k.mor
        entries[(iG, j)] = entries[(iG, j)] - kb.mor if (iG, j) in entries else -kb.mor
    rel = block_mor(S.base, src, tgt, entries)
    ck = Cokernel(yoneda_map(S.base, rel), "trace")
    cmp = iso_test(ck.presheaf, unit_general(S, cert).presheaf, seed).status
    return EnrichedTrace(ck.presheaf, ck, rel, cmp)
