"""Builders for the standard example categories and module categories."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from typing import Optional

from ..fincat import (BasisCoords, CatPresentation, ContractViolation, Field, FormatError, Mor, Obj, Q,
                      Subspace)
from ..semicat import ActionData, SemigroupData


@dataclass
class Document:
    """Everything one input file can carry."""

    field: Field
    category: CatPresentation
    semigroup: SemigroupData
    modules: dict = dc_field(default_factory=dict)
    certificate: Optional[object] = None
    meta: dict = dc_field(default_factory=dict)


# ---------------------------------------------------------------------------
# algebras given by structure constants

@dataclass
class Algebra:
    field: Field
    dim: int
    mult: list          # mult[a][b] = coordinates of basis_a * basis_b
    unit: list
    idempotents: list   # primitive orthogonal idempotents summing to the unit
    name: str = ""

    def mul(self, u, v) -> list:
        f = self.field
        out = [f.zero] * self.dim
        for a, x in enumerate(u):
            if not x:
                continue
            for b, y in enumerate(v):
                if y:
                    xy = x * y
                    for c, z in enumerate(self.mult[a][b]):
                        if z:
                            out[c] = out[c] + xy * z
        return out

    def basis(self, a) -> list:
        v = [self.field.zero] * self.dim
        v[a] = self.field.one
        return v

    def check(self):
        f = self.field
        B = [self.basis(a) for a in range(self.dim)]
        for x, y, z in itertools.product(B, repeat=3):
            if self.mul(self.mul(x, y), z) != self.mul(x, self.mul(y, z)):
                raise FormatError("algebra multiplication is not associative")
        for x in B:
            if self.mul(self.unit, x) != x or self.mul(x, self.unit) != x:
                raise FormatError("unit vector is not a two-sided unit")
        total = [f.zero] * self.dim
        for i, e in enumerate(self.idempotents):
            total = [p + q for p, q in zip(total, e)]
            for j, e2 in enumerate(self.idempotents):
                want = e if i == j else [f.zero] * self.dim
                if self.mul(e, e2) != want:
                    raise FormatError("idempotents are not orthogonal")
        if total != self.unit:
            raise FormatError("idempotents do not sum to the unit")


def algebra_preset(name: str, field: Field = Q) -> Algebra:
    f = field
    o, z = f.one, f.zero
    if name == "k":
        return Algebra(f, 1, [[[o]]], [o], [[o]], "k")
    if name == "dual":
        # basis 1, x with x^2 = 0
        return Algebra(f, 2, [[[o, z], [z, o]], [[z, o], [z, z]]], [o, z], [[o, z]], "k[x]/(x^2)")
    if name == "kxk":
        return Algebra(f, 2, [[[o, z], [z, z]], [[z, z], [z, o]]], [o, o], [[o, z], [z, o]], "k x k")
    raise ValueError("unknown algebra preset %r" % name)


def _corner(A: Algebra, i: int, j: int):
    """Basis of e_i A e_j and a coordinate map for it."""
    f = A.field
    ei, ej = A.idempotents[i], A.idempotents[j]
    imgs = [A.mul(A.mul(ei, A.basis(a)), ej) for a in range(A.dim)]
    basis = Subspace(A.dim, imgs, f.zero, f.one).basis()
    return basis, BasisCoords(basis, A.dim, f.zero, f.one)


def _flat_mor(cat, src, dst, blocks) -> Mor:
    return Mor(cat, Obj(src), Obj(dst), blocks)


# ---------------------------------------------------------------------------
# generators

def zero_semigroup(field: Field = Q, labels=("A", "B"), base: Optional[CatPresentation] = None) -> Document:
    """Every tensor product is the zero object."""
    if base is None:
        o = field.one
        base = CatPresentation(field, labels, {(x, x): 1 for x in labels},
                               {(x, x, x): [[[o]]] for x in labels}, {x: [o] for x in labels})
    S = SemigroupData(base, {}, {}, {})
    meta = {"kind": "zero", "formal_objects": ["0"] + list(base.objects)}
    return Document(field, base, S, meta=meta)


def linear_semigroup(elements, table: dict, field: Field = Q, zero: Optional[str] = None) -> Document:
    """The discrete linear category on a semigroup; ``zero`` names an element sent to the zero object."""
    elements = list(elements)
    for a, b, c in itertools.product(elements, repeat=3):
        if table[(table[(a, b)], c)] != table[(a, table[(b, c)])]:
            raise FormatError("multiplication table is not associative at (%s, %s, %s)" % (a, b, c))
    o = field.one
    labels = [e for e in elements if e != zero]
    base = CatPresentation(field, labels, {(x, x): 1 for x in labels},
                           {(x, x, x): [[[o]]] for x in labels}, {x: [o] for x in labels})

    def prod(a, b):
        c = table[(a, b)]
        return () if c == zero else (c,)

    obj_t = {(a, b): prod(a, b) for a in labels for b in labels}
    mor_t = {}
    for a in labels:
        for b in labels:
            ab = obj_t[(a, b)]
            mor_t[(a, a, 0, b, b, 0)] = base.identity(Obj(ab))
    assoc = {}
    for a, b, c in itertools.product(labels, repeat=3):
        left = ()
        for l in obj_t[(a, b)]:
            left += obj_t[(l, c)]
        assoc[(a, b, c)] = base.identity(Obj(left))
    S = SemigroupData(base, obj_t, mor_t, assoc)
    return Document(field, base, S, meta={"kind": "linear_semigroup", "elements": elements, "zero": zero})


def bimodule_proj(A: Algebra) -> Document:
    """Projective A-A-bimodules P_ij = Ae_i (x) e_jA under tensor product over A.

    Hom(P_ij, P_kl) = e_iAe_k (x) e_lAe_j, with a (x) b the map sending
    e_i (x) e_j to a (x) b; composition (c (x) d) o (a (x) b) = ac (x) db.
    """
    A.check()
    f = A.field
    n = len(A.idempotents)
    C = {(i, j): _corner(A, i, j) for i in range(n) for j in range(n)}
    idx = list(itertools.product(range(n), repeat=2))
    lab = {(i, j): "P%d%d" % (i + 1, j + 1) for i, j in idx}
    objects = [lab[p] for p in idx]

    def hom_pairs(P, Q_):
        (i, j), (k, l) = P, Q_
        return [(a, b) for a in range(len(C[(i, k)][0])) for b in range(len(C[(l, j)][0]))]

    homdim, names = {}, {}
    for P in idx:
        for Q_ in idx:
            hp = hom_pairs(P, Q_)
            if hp:
                homdim[(lab[P], lab[Q_])] = len(hp)
                names[(lab[P], lab[Q_])] = ["u%d|v%d" % ab for ab in hp]

    def hom_vec(P, Q_, a_vec, b_vec):
        """Coordinates of a (x) b in Hom(P, Q_) from algebra vectors a in e_iAe_k, b in e_lAe_j."""
        (i, j), (k, l) = P, Q_
        ca = C[(i, k)][1].coords(a_vec)
        cb = C[(l, j)][1].coords(b_vec)
        if ca is None or cb is None:
            raise ContractViolation("element outside the expected corner")
        return [x * y for x in ca for y in cb]

    comp = {}
    for P, Qd, R in itertools.product(idx, repeat=3):
        h1, h2 = hom_pairs(P, Qd), hom_pairs(Qd, R)
        if not h1 or not h2:
            continue
        (i, j), (k, l), (m, nn) = P, Qd, R
        if not hom_pairs(P, R):
            comp[(lab[P], lab[Qd], lab[R])] = [[[] for _ in h1] for _ in h2]
            continue
        table = []
        for (c, d) in h2:
            cv, dv = C[(k, m)][0][c], C[(nn, l)][0][d]
            row = []
            for (a, b) in h1:
                av, bv = C[(i, k)][0][a], C[(l, j)][0][b]
                row.append(hom_vec(P, R, A.mul(av, cv), A.mul(dv, bv)))
            table.append(row)
        comp[(lab[P], lab[Qd], lab[R])] = table
    ident = {lab[(i, j)]: hom_vec((i, j), (i, j), A.idempotents[i], A.idempotents[j]) for i, j in idx}
    base = CatPresentation(f, objects, homdim, comp, ident, names)

    obj_t = {}
    for (i, j), (k, l) in itertools.product(idx, repeat=2):
        obj_t[(lab[(i, j)], lab[(k, l)])] = (lab[(i, l)],) * len(C[(j, k)][0])

    mor_t = {}
    for P1, P2 in itertools.product(idx, repeat=2):          # f: P1 -> P2
        for Q1, Q2 in itertools.product(idx, repeat=2):      # g: Q1 -> Q2
            hf, hg = hom_pairs(P1, P2), hom_pairs(Q1, Q2)
            if not hf or not hg:
                continue
            (i, j), (i2, j2) = P1, P2
            (k, l), (k2, l2) = Q1, Q2
            src = obj_t[(lab[P1], lab[Q1])]
            dst = obj_t[(lab[P2], lab[Q2])]
            mids, mids2 = C[(j, k)][0], C[(j2, k2)]
            for fi, (a, b) in enumerate(hf):
                av, bv = C[(i, i2)][0][a], C[(j2, j)][0][b]
                for gi, (c, d) in enumerate(hg):
                    cv, dv = C[(k, k2)][0][c], C[(l2, l)][0][d]
                    blocks = [[base.zvec(s, t) for s in src] for t in dst]
                    if src and dst:
                        ad = hom_vec((i, l), (i2, l2), av, dv)
                        for p, mp in enumerate(mids):
                            q_coef = mids2[1].coords(A.mul(A.mul(bv, mp), cv))
                            for q, cq in enumerate(q_coef):
                                if cq:
                                    blocks[q][p] = [cq * x for x in ad]
                    mor_t[(lab[P1], lab[P2], fi, lab[Q1], lab[Q2], gi)] = _flat_mor(base, src, dst, blocks)

    assoc = {}
    for P, Qd, R in itertools.product(idx, repeat=3):
        (i, j), (k, l), (m, nn) = P, Qd, R
        np_, nq = len(C[(j, k)][0]), len(C[(l, m)][0])
        src = [lab[(i, nn)]] * (np_ * nq)
        blocks = [[base.zvec(s, t) for s in src] for t in src]
        for p in range(np_):
            for q in range(nq):
                blocks[q * np_ + p][p * nq + q] = list(ident[lab[(i, nn)]])
        assoc[(lab[P], lab[Qd], lab[R])] = _flat_mor(base, src, src, blocks)
    S = SemigroupData(base, obj_t, mor_t, assoc)
    return Document(f, base, S, meta={"kind": "bimodule_proj", "algebra": A.name})


def _group_table(kind: str):
    if kind == "z2":
        return ["e", "g"], [[0, 1], [1, 0]]
    if kind.startswith("z") and kind[1:].isdigit():
        n = int(kind[1:])
        return ["g%d" % a for a in range(n)], [[(a + b) % n for b in range(n)] for a in range(n)]
    raise ValueError("unknown group %r" % kind)


def group_proj(elements, table, field: Field) -> Document:
    """The projective module kG under the diagonal tensor product; kG (x) kG = kG^|G|.

    End(kG) has basis the right multiplications by group elements; the h-th
    summand of kG (x) kG is spanned by the vectors g (x) gh.
    """
    n = len(elements)
    for a, b, c in itertools.product(range(n), repeat=3):
        if table[table[a][b]][c] != table[a][table[b][c]]:
            raise FormatError("group table is not associative")
    e = next(a for a in range(n) if all(table[a][b] == b for b in range(n)))
    inv = [next(b for b in range(n) if table[a][b] == e) for a in range(n)]
    o, z = field.one, field.zero

    def uv(k):
        return [o if t == k else z for t in range(n)]

    comp = {("P", "P", "P"): [[uv(table[i][j]) for i in range(n)] for j in range(n)]}
    base = CatPresentation(field, ["P"], {("P", "P"): n}, comp, {"P": uv(e)},
                           {("P", "P"): ["r_%s" % g for g in elements]})
    P = ("P",) * n
    mor_t = {}
    for u in range(n):
        for v in range(n):
            blocks = [[[z] * n for _ in range(n)] for _ in range(n)]
            for h in range(n):
                h2 = table[table[inv[u]][h]][v]
                blocks[h2][h] = uv(u)
            mor_t[("P", "P", u, "P", "P", v)] = _flat_mor(base, P, P, blocks)
    big = ("P",) * (n * n)
    blocks = [[[z] * n for _ in range(n * n)] for _ in range(n * n)]
    for h in range(n):
        for h2 in range(n):
            k = table[inv[h]][h2]
            blocks[k * n + h][h * n + h2] = uv(e)
    assoc = {("P", "P", "P"): _flat_mor(base, big, big, blocks)}
    S = SemigroupData(base, {("P", "P"): P}, mor_t, assoc)
    return Document(field, base, S, meta={"kind": "group_proj", "order": n, "char": field.char})


def algebra_add(A: Algebra) -> Document:
    """add{A} under tensor over a commutative A, with the identity symmetry."""
    A.check()
    B = [A.basis(a) for a in range(A.dim)]
    if any(A.mul(x, y) != A.mul(y, x) for x in B for y in B):
        raise FormatError("algebra_add needs a commutative algebra")
    f = A.field
    comp = {("A", "A", "A"): [[A.mul(B[i], B[j]) for i in range(A.dim)] for j in range(A.dim)]}
    base = CatPresentation(f, ["A"], {("A", "A"): A.dim}, comp, {"A": list(A.unit)})
    mor_t = {("A", "A", i, "A", "A", j): _flat_mor(base, ("A",), ("A",), [[A.mul(B[i], B[j])]])
             for i in range(A.dim) for j in range(A.dim)}
    one = base.identity(Obj(("A",)))
    S = SemigroupData(base, {("A", "A"): ("A",)}, mor_t, {("A", "A", "A"): one}, braid={("A", "A"): one})
    return Document(f, base, S, meta={"kind": "algebra_add", "algebra": A.name})


def generate(kind: str, field: Optional[Field] = None, **params) -> Document:
    """Dispatch on the generator name used by the CLI and the fixtures."""
    if kind == "zero":
        return zero_semigroup(field or Q, tuple(params.get("labels", ("A", "B"))))
    if kind == "linear_semigroup":
        preset = params.get("preset", "y0")
        if preset == "y0":
            els, tab = ["y", "0"], {("y", "y"): "y", ("y", "0"): "0", ("0", "y"): "0", ("0", "0"): "0"}
            return linear_semigroup(els, tab, field or Q)
        if preset == "xy0":
            els = ["x", "y", "0"]
            tab = {(a, b): ("y" if (a, b) == ("y", "y") else "0") for a in els for b in els}
            return linear_semigroup(els, tab, field or Q, zero="0")
        if preset == "star":
            return linear_semigroup(["*"], {("*", "*"): "*"}, field or Q)
        raise ValueError("unknown semigroup preset %r" % preset)
    if kind == "bimodule_proj":
        return bimodule_proj(algebra_preset(params.get("algebra", "k"), field or Q))
    if kind == "group_proj":
        els, tab = _group_table(params.get("group", "z2"))
        return group_proj(els, tab, field or Field(int(params.get("char", 2))))
    if kind == "algebra_add":
        return algebra_add(algebra_preset(params.get("algebra", "dual"), field or Q))
    raise ValueError("unknown generator %r" % kind)


# ---------------------------------------------------------------------------
# module categories

def regular_module(S: SemigroupData) -> ActionData:
    return ActionData(S, S.base, dict(S.act_obj), dict(S.act_mor), dict(S.mult))


def zero_action_module(S: SemigroupData, field: Optional[Field] = None) -> ActionData:
    """S acting by zero on vec."""
    f = field or S.base.field
    M = CatPresentation(f, ["V"], {("V", "V"): 1}, {("V", "V", "V"): [[[f.one]]]}, {"V": [f.one]})
    return ActionData(S, M, {}, {}, {})


def dual_numbers_mod(field: Field = Q) -> CatPresentation:
    """k[x]/(x^2)-mod: the simple S and the regular module R.

    Basis: id_S; i: S -> R (onto the socle); p: R -> S; id_R, x on R.
    """
    o, z = field.one, field.zero
    homdim = {("S", "S"): 1, ("S", "R"): 1, ("R", "S"): 1, ("R", "R"): 2}
    comp = {
        ("S", "S", "S"): [[[o]]],
        ("S", "S", "R"): [[[o]]],
        ("S", "R", "S"): [[[z]]],            # p o i = 0
        ("S", "R", "R"): [[[o]], [[z]]],     # id o i = i, x o i = 0
        ("R", "S", "S"): [[[o]]],
        ("R", "S", "R"): [[[z, o]]],         # i o p = x
        ("R", "R", "S"): [[[o], [z]]],       # p o id = p, p o x = 0
        ("R", "R", "R"): [[[o, z], [z, o]], [[z, o], [z, z]]],
    }
    ident = {"S": [o], "R": [o, z]}
    names = {("S", "S"): ["id"], ("S", "R"): ["i"], ("R", "S"): ["p"], ("R", "R"): ["id", "x"]}
    return CatPresentation(field, ["S", "R"], homdim, comp, ident, names)


def semisimplification_module(field: Field = Q):
    """The one-object monoid category acting on k[x]/(x^2)-mod through the functor
    that kills the radical action: S -> S, R -> S + S."""
    doc = generate("linear_semigroup", field, preset="star")
    S = doc.semigroup
    M = dual_numbers_mod(field)
    o, z = field.one, field.zero
    act_obj = {("*", "S"): ("S",), ("*", "R"): ("S", "S")}
    SS, SR = ("S",), ("S", "S")
    act_mor = {
        ("*", "*", 0, "S", "S", 0): Mor(M, Obj(SS), Obj(SS), [[[o]]]),
        ("*", "*", 0, "S", "R", 0): Mor(M, Obj(SS), Obj(SR), [[[z]], [[o]]]),
        ("*", "*", 0, "R", "S", 0): Mor(M, Obj(SR), Obj(SS), [[[o], [z]]]),
        ("*", "*", 0, "R", "R", 0): Mor(M, Obj(SR), Obj(SR), [[[o], [z]], [[z], [o]]]),
        ("*", "*", 0, "R", "R", 1): Mor(M, Obj(SR), Obj(SR), [[[z], [z]], [[o], [z]]]),
    }
    mult = {("*", "*", "S"): M.identity(Obj(SS)), ("*", "*", "R"): M.identity(Obj(SR))}
    return S, ActionData(S, M, act_obj, act_mor, mult)
