"""Finite-dimensional presheaves, Day convolution and unit constructions."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field as dc_field
from typing import Optional

from .fincat import (BasisCoords, CatPresentation, ContractViolation, Mor, Obj, Quotient, Subspace,
                     hom_dim, inverse, is_invertible, matmul, matvec, nullspace, radical, solve,
                     transpose)
from .fincat.linalg import identity as eye, zeros
from .semicat import HOLE, ActionData, Calc, SemigroupData, family_size, nat_module_space


def _mm(a, b, n, m, zero):
    """Product of an n x k and a k x m matrix, tolerant of empty dimensions."""
    if not n:
        return []
    if not b:
        return zeros(n, m, zero)
    return matmul(a, b, zero)


# ---------------------------------------------------------------------------
# presheaves and maps

class Presheaf:
    """dims[X] and, for the i-th basis morphism b: X -> Y, a matrix act[(X, Y, i)]: P(Y) -> P(X)."""

    def __init__(self, cat: CatPresentation, dims: dict, act: dict, label: str = ""):
        self.cat = cat
        self.dims = {x: dims.get(x, 0) for x in cat.objects}
        self.act = act
        self.label = label

    @property
    def field(self):
        return self.cat.field

    def total_dim(self) -> int:
        return sum(self.dims.values())

    def dim_vector(self) -> tuple:
        return tuple(self.dims[x] for x in self.cat.objects)

    def mat(self, x, y, vec) -> list:
        """P(f) for f = sum vec[i] b_i in Hom(x, y)."""
        z = self.field.zero
        out = zeros(self.dims[x], self.dims[y], z)
        for i, c in enumerate(vec):
            if c:
                m = self.act[(x, y, i)]
                for r in range(self.dims[x]):
                    for s in range(self.dims[y]):
                        if m[r][s]:
                            out[r][s] = out[r][s] + c * m[r][s]
        return out

    def validate(self) -> list:
        """Functoriality failures on basis pairs and identities."""
        cat, f = self.cat, self.field
        bad = []
        for x in cat.objects:
            if self.mat(x, x, cat.ident[x]) != eye(self.dims[x], f.zero, f.one):
                bad.append(("identity", x))
        for x in cat.objects:
            for y in cat.objects:
                for z in cat.objects:
                    for i in range(cat.hd(x, y)):
                        for j in range(cat.hd(y, z)):
                            ji = cat.compose_vec(x, y, z, cat.unit_vec(y, z, j), cat.unit_vec(x, y, i))
                            lhs = self.mat(x, z, ji)
                            rhs = _mm(self.act[(x, y, i)], self.act[(y, z, j)], self.dims[x],
                                      self.dims[z], f.zero)
                            if lhs != rhs:
                                bad.append(("composition", x, y, z, i, j))
        return bad

    def identity_map(self) -> "PresheafMap":
        f = self.field
        return PresheafMap(self, self, {x: eye(self.dims[x], f.zero, f.one) for x in self.cat.objects})

    def zero_map(self, other: "Presheaf") -> "PresheafMap":
        z = self.field.zero
        return PresheafMap(self, other, {x: zeros(other.dims[x], self.dims[x], z) for x in self.cat.objects})

    def __repr__(self):
        return "Presheaf(%s%s)" % (self.label + " " if self.label else "", self.dims)


class PresheafMap:
    """Component matrices comps[X]: src(X) -> dst(X)."""

    def __init__(self, src: Presheaf, dst: Presheaf, comps: dict):
        self.src = src
        self.dst = dst
        self.comps = comps

    @property
    def cat(self):
        return self.src.cat

    def compose(self, other: "PresheafMap") -> "PresheafMap":
        """self o other."""
        z = self.cat.field.zero
        return PresheafMap(other.src, self.dst, {
            x: _mm(self.comps[x], other.comps[x], self.dst.dims[x], other.src.dims[x], z)
            for x in self.cat.objects})

    def __add__(self, other):
        return PresheafMap(self.src, self.dst, {x: [[p + q for p, q in zip(r, s)] for r, s in
                                                    zip(self.comps[x], other.comps[x])] for x in self.comps})

    def scale(self, c):
        return PresheafMap(self.src, self.dst, {x: [[c * p for p in r] for r in m] for x, m in self.comps.items()})

    def __eq__(self, other):
        return all(self.comps[x] == other.comps[x] for x in self.cat.objects)

    __hash__ = None

    def is_natural(self) -> bool:
        cat, z = self.cat, self.cat.field.zero
        P, Q = self.src, self.dst
        for x in cat.objects:
            for y in cat.objects:
                for i in range(cat.hd(x, y)):
                    lhs = _mm(self.comps[x], P.act[(x, y, i)], Q.dims[x], P.dims[y], z)
                    rhs = _mm(Q.act[(x, y, i)], self.comps[y], Q.dims[x], P.dims[y], z)
                    if lhs != rhs:
                        return False
        return True

    def is_iso(self) -> bool:
        return all(is_invertible(self.comps[x]) if self.src.dims[x] or self.dst.dims[x] else True
                   for x in self.cat.objects)

    def inverse(self) -> "PresheafMap":
        f = self.cat.field
        return PresheafMap(self.dst, self.src, {x: inverse(m, f.zero, f.one) if m else []
                                                for x, m in self.comps.items()})

    def flat(self) -> list:
        out = []
        for x in self.cat.objects:
            for r in self.comps[x]:
                out.extend(r)
        return out

    def split(self, direction: str):
        """One-sided inverse at the presheaf level, or None."""
        f = self.cat.field
        if direction == "epi":
            basis = hom_space(self.dst, self.src)
            target = self.dst.identity_map().flat()
            cols = [self.compose(s).flat() for s in basis]
        elif direction == "mono":
            basis = hom_space(self.dst, self.src)
            target = self.src.identity_map().flat()
            cols = [s.compose(self).flat() for s in basis]
        else:
            raise ValueError("direction must be 'epi' or 'mono'")
        if not basis:
            return self.dst.zero_map(self.src) if not any(target) else None
        x = solve(transpose(cols, len(cols), len(target)), target, len(basis), f.zero)
        if x is None:
            return None
        return combine_maps(basis, x, self.dst, self.src)


def combine_maps(basis, coeffs, src, dst) -> PresheafMap:
    out = src.zero_map(dst)
    for c, m in zip(coeffs, basis):
        if c:
            out = out + m.scale(c)
    return out


# ---------------------------------------------------------------------------
# representables

_REP_CACHE = {}


def representable(cat: CatPresentation, a: Obj) -> Presheaf:
    """Y(a) = Hom(-, a), with elements at X the flat coordinates of Mors X -> a."""
    key = (id(cat), a.summands)
    hit = _REP_CACHE.get(key)
    if hit is not None and hit.cat is cat:
        return hit
    dims = {x: hom_dim(cat, Obj((x,)), a) for x in cat.objects}
    act = {}
    for x in cat.objects:
        for y in cat.objects:
            for i in range(cat.hd(x, y)):
                b = cat.basis_mor(x, y, i)
                cols = [cat.compose(f, b).flat() for f in cat.hom_basis(Obj((y,)), a)]
                act[(x, y, i)] = transpose(cols, len(cols), dims[x]) if cols else zeros(dims[x], 0, cat.zero)
    p = Presheaf(cat, dims, act, "Y(%r)" % (a,))
    _REP_CACHE[key] = p
    return p


def yoneda_map(cat: CatPresentation, u: Mor) -> PresheafMap:
    src, dst = representable(cat, u.src), representable(cat, u.dst)
    comps = {}
    for x in cat.objects:
        cols = [cat.compose(u, f).flat() for f in cat.hom_basis(Obj((x,)), u.src)]
        comps[x] = transpose(cols, len(cols), dst.dims[x]) if cols else zeros(dst.dims[x], 0, cat.zero)
    return PresheafMap(src, dst, comps)


def block_mor(cat: CatPresentation, src_parts, dst_parts, entries: dict) -> Mor:
    """Assemble a Mor between concatenations from blocks entries[(dst_i, src_j)]."""
    src = Obj(tuple(l for p in src_parts for l in p))
    dst = Obj(tuple(l for p in dst_parts for l in p))
    out = cat.zero_mor(src, dst)
    so = list(itertools.accumulate([0] + [len(p) for p in src_parts]))
    do = list(itertools.accumulate([0] + [len(p) for p in dst_parts]))
    for (i, j), m in entries.items():
        if m.src.summands != src_parts[j].summands or m.dst.summands != dst_parts[i].summands:
            raise ContractViolation("block (%d, %d) has the wrong shape" % (i, j))
        for r in range(len(m.dst)):
            for s in range(len(m.src)):
                v = m.blocks[r][s]
                acc = out.blocks[do[i] + r][so[j] + s]
                out.blocks[do[i] + r][so[j] + s] = [p + q for p, q in zip(acc, v)]
    return out


# ---------------------------------------------------------------------------
# cokernels and Hom spaces

class Cokernel:
    """The cokernel presheaf of phi: A -> B, with its projection B -> coker."""

    def __init__(self, phi: PresheafMap, label: str = ""):
        cat = phi.cat
        f = cat.field
        self.phi = phi
        self.quot = {}
        for x in cat.objects:
            n = phi.dst.dims[x]
            cols = transpose(phi.comps[x], n, phi.src.dims[x]) if phi.src.dims[x] and n else []
            self.quot[x] = Quotient(n, cols, f.zero, f.one)
        dims = {x: q.dim for x, q in self.quot.items()}
        act = {}
        B = phi.dst
        for x in cat.objects:
            for y in cat.objects:
                for i in range(cat.hd(x, y)):
                    qx, qy = self.quot[x], self.quot[y]
                    cols = []
                    for j in range(qy.dim):
                        v = matvec(B.act[(x, y, i)], qy.lift(j), f.zero) if B.dims[x] else []
                        cols.append(qx.project(v))
                    act[(x, y, i)] = transpose(cols, len(cols), qx.dim) if cols else zeros(qx.dim, 0, f.zero)
        self.presheaf = Presheaf(cat, dims, act, label)
        self.proj = PresheafMap(B, self.presheaf, {x: self.quot[x].matrix() for x in cat.objects})

    def descend(self, g: PresheafMap) -> PresheafMap:
        """The map coker -> C induced by g: B -> C (g must kill the image of phi)."""
        f = self.phi.cat.field
        comps = {}
        for x, q in self.quot.items():
            cols = [matvec(g.comps[x], q.lift(j), f.zero) for j in range(q.dim)]
            comps[x] = transpose(cols, len(cols), g.dst.dims[x]) if cols else zeros(g.dst.dims[x], 0, f.zero)
        return PresheafMap(self.presheaf, g.dst, comps)


def cokernel(phi: PresheafMap, label: str = "") -> Cokernel:
    return Cokernel(phi, label)


def hom_space(P: Presheaf, Q: Presheaf) -> list:
    """Basis of natural transformations P -> Q."""
    cat, f = P.cat, P.field
    offs, n = {}, 0
    for x in cat.objects:
        offs[x] = n
        n += Q.dims[x] * P.dims[x]
    if n == 0:
        return []
    rows = []
    for x in cat.objects:
        for y in cat.objects:
            for i in range(cat.hd(x, y)):
                Pb, Qb = P.act[(x, y, i)], Q.act[(x, y, i)]
                for r in range(Q.dims[x]):
                    for c in range(P.dims[y]):
                        row = {}
                        for s in range(P.dims[x]):
                            a = Pb[s][c]
                            if a:
                                k = offs[x] + r * P.dims[x] + s
                                row[k] = row.get(k, f.zero) + a
                        for s in range(Q.dims[y]):
                            a = Qb[r][s]
                            if a:
                                k = offs[y] + s * P.dims[y] + c
                                row[k] = row.get(k, f.zero) - a
                        if row:
                            rows.append(row)
    out = []
    for v in nullspace(rows, n, f.zero, f.one):
        comps = {}
        for x in cat.objects:
            o, dq, dp = offs[x], Q.dims[x], P.dims[x]
            comps[x] = [v[o + r * dp:o + (r + 1) * dp] for r in range(dq)]
        out.append(PresheafMap(P, Q, comps))
    return out


def end_dim(P: Presheaf) -> int:
    return len(hom_space(P, P))


# ---------------------------------------------------------------------------
# radical, tops, covers

def rad_image(P: Presheaf, rad=None) -> dict:
    """(Rad . P)(X) as a Subspace of P(X)."""
    cat, f = P.cat, P.field
    rad = rad or radical(cat)
    out = {}
    for x in cat.objects:
        vecs = []
        for y in cat.objects:
            for r in rad[(x, y)].basis():
                m = P.mat(x, y, r)
                vecs.extend(transpose(m, P.dims[x], P.dims[y]) if P.dims[y] and P.dims[x] else [])
        out[x] = Subspace(P.dims[x], vecs, f.zero, f.one)
    return out


def top_dims(P: Presheaf, rad=None) -> dict:
    ri = rad_image(P, rad)
    return {x: P.dims[x] - ri[x].dim for x in P.cat.objects}


def quotient_presheaf(P: Presheaf, sub: dict, label: str = "") -> tuple:
    """P / sub for a sub-presheaf given by Subspaces; returns (quotient, projection)."""
    cat, f = P.cat, P.field
    quot = {x: Quotient(P.dims[x], sub[x].basis(), f.zero, f.one) for x in cat.objects}
    act = {}
    for x in cat.objects:
        for y in cat.objects:
            for i in range(cat.hd(x, y)):
                qx, qy = quot[x], quot[y]
                cols = [qx.project(matvec(P.act[(x, y, i)], qy.lift(j), f.zero) if P.dims[x] else [])
                        for j in range(qy.dim)]
                act[(x, y, i)] = transpose(cols, len(cols), qx.dim) if cols else zeros(qx.dim, 0, f.zero)
    Qp = Presheaf(cat, {x: q.dim for x, q in quot.items()}, act, label)
    return Qp, PresheafMap(P, Qp, {x: quot[x].matrix() for x in cat.objects})


def top(P: Presheaf, rad=None) -> Presheaf:
    """P / Rad . P."""
    return quotient_presheaf(P, rad_image(P, rad), "top(%s)" % P.label)[0]


def simple_presheaf(cat: CatPresentation, x, rad=None) -> Presheaf:
    """The simple presheaf with top at x: the top of Y(x)."""
    return top(representable(cat, Obj((x,))), rad)


def is_simple(P: Presheaf, rad=None) -> bool:
    ri = rad_image(P, rad)
    return P.total_dim() == 1 and all(s.dim == 0 for s in ri.values())


def dual_presheaf(P: Presheaf, op_cat: Optional[CatPresentation] = None) -> Presheaf:
    """The vector-space dual, a presheaf on the opposite category."""
    op = op_cat or P.cat.opposite()
    act = {}
    for (x, y, i), m in P.act.items():
        act[(y, x, i)] = transpose(m, P.dims[x], P.dims[y]) if P.dims[x] else zeros(P.dims[y], 0, P.field.zero)
    return Presheaf(op, dict(P.dims), act, "D(%s)" % P.label)


@dataclass
class CoverReport:
    cover_obj: Obj
    cover: Presheaf
    epi: PresheafMap
    is_projective: bool
    is_injective: Optional[bool]
    splitting: Optional[PresheafMap] = None
    top: dict = dc_field(default_factory=dict)


def projective_cover(P: Presheaf, rad=None):
    cat, f = P.cat, P.field
    rad = rad or radical(cat)
    ri = rad_image(P, rad)
    labels, elems = [], []
    for x in cat.objects:
        q = Quotient(P.dims[x], ri[x].basis(), f.zero, f.one)
        for j in range(q.dim):
            labels.append(x)
            elems.append(q.lift(j))
    A = Obj(labels)
    Y = representable(cat, A)
    comps = {}
    for z in cat.objects:
        cols = []
        for a, (x, p) in enumerate(zip(labels, elems)):
            for k in range(cat.hd(z, x)):
                cols.append(matvec(P.act[(z, x, k)], p, f.zero) if P.dims[z] else [])
        comps[z] = transpose(cols, len(cols), P.dims[z]) if cols else zeros(P.dims[z], 0, f.zero)
    return A, Y, PresheafMap(Y, P, comps)


def is_projective(P: Presheaf, rad=None):
    A, Y, epi = projective_cover(P, rad)
    s = epi.split("epi")
    return s is not None, (A, Y, epi, s)


def cover_and_flags(P: Presheaf, rad=None, injectivity: bool = True) -> CoverReport:
    rad = rad or radical(P.cat)
    proj, (A, Y, epi, s) = is_projective(P, rad)
    inj = None
    if injectivity:
        D = dual_presheaf(P)
        inj, _ = is_projective(D)
    return CoverReport(A, Y, epi, proj, inj, s, top_dims(P, rad))


# ---------------------------------------------------------------------------
# isomorphism testing

@dataclass
class IsoResult:
    status: str          # "iso" | "non-iso" | "undecided"
    reason: str = ""
    map: Optional[PresheafMap] = None
    seed: int = 0

    @property
    def iso(self) -> bool:
        return self.status == "iso"


def iso_test(P: Presheaf, Q: Presheaf, seed: int = 0, random_tries: int = 24, rad=None) -> IsoResult:
    """Three-valued isomorphism test with certified positives."""
    if P.dim_vector() != Q.dim_vector():
        return IsoResult("non-iso", "dimension vectors %s vs %s" % (P.dim_vector(), Q.dim_vector()), seed=seed)
    if P.total_dim() == 0:
        return IsoResult("iso", "both zero", P.zero_map(Q), seed)
    try:
        tp, tq = top_dims(P, rad), top_dims(Q, rad)
        if tp != tq:
            return IsoResult("non-iso", "tops %s vs %s" % (tp, tq), seed=seed)
    except Exception:
        pass
    basis = hom_space(P, Q)
    if not basis:
        return IsoResult("non-iso", "no nonzero maps", seed=seed)
    f = P.field
    n = len(basis)
    grid = [[f.one if j == i else f.zero for j in range(n)] for i in range(n)]
    grid += [[f.one if k in (i, j) else f.zero for k in range(n)] for i, j in itertools.combinations(range(n), 2)]
    grid.append([f.one] * n)
    rng = random.Random(seed)
    grid += [[f.random(rng) for _ in range(n)] for _ in range(random_tries)]
    for c in grid:
        m = combine_maps(basis, c, P, Q)
        if m.is_iso():
            return IsoResult("iso", "invertible map found", m, seed)
    return IsoResult("undecided", "no invertible map among %d candidates" % len(grid), seed=seed)


# ---------------------------------------------------------------------------
# coends

class Coend:
    """The presheaf  z -> (sum_y T[y](z) (x) P(y)) / relations,  for T covariant in y.

    T[y] are presheaves over a category D; Tmap[(y, y2, i)]: T[y] -> T[y2] is
    the image of the i-th basis morphism y -> y2 of the category C of P.
    """

    def __init__(self, C: CatPresentation, D: CatPresentation, T: dict, Tmap: dict, P: Presheaf, label=""):
        self.C, self.D, self.T, self.Tmap, self.P = C, D, T, Tmap, P
        f = D.field
        self.offs = {}
        self.quot = {}
        for z in D.objects:
            offs, n = {}, 0
            for y in C.objects:
                offs[y] = n
                n += T[y].dims[z] * P.dims[y]
            self.offs[z] = offs
            rels = []
            for y in C.objects:
                for y2 in C.objects:
                    for i in range(C.hd(y, y2)):
                        Tb = Tmap[(y, y2, i)].comps[z]
                        Pb = P.act[(y, y2, i)]
                        dt, dt2, dp, dp2 = T[y].dims[z], T[y2].dims[z], P.dims[y], P.dims[y2]
                        for t in range(dt):
                            for p2 in range(dp2):
                                row = {}
                                for t2 in range(dt2):
                                    a = Tb[t2][t]
                                    if a:
                                        k = offs[y2] + t2 * dp2 + p2
                                        row[k] = row.get(k, f.zero) + a
                                for p in range(dp):
                                    a = Pb[p][p2]
                                    if a:
                                        k = offs[y] + t * dp + p
                                        row[k] = row.get(k, f.zero) - a
                                if any(row.values()):
                                    rels.append(row)
            self.quot[z] = Quotient(n, rels, f.zero, f.one)
        dims = {z: q.dim for z, q in self.quot.items()}
        act = {}
        for z in D.objects:
            for z2 in D.objects:
                for j in range(D.hd(z, z2)):
                    cols = [self.project(z, self._act_ambient(z, z2, j, self.quot[z2].lift(k)))
                            for k in range(self.quot[z2].dim)]
                    act[(z, z2, j)] = transpose(cols, len(cols), dims[z]) if cols else zeros(dims[z], 0, f.zero)
        self.presheaf = Presheaf(D, dims, act, label)

    def _split(self, z, v):
        """Ambient vector at z -> {y: (t, p) coefficient dict}."""
        out = {}
        for y in self.C.objects:
            o, dp = self.offs[z][y], self.P.dims[y]
            dt = self.T[y].dims[z]
            for t in range(dt):
                for p in range(dp):
                    a = v[o + t * dp + p]
                    if a:
                        out.setdefault(y, []).append((t, p, a))
        return out

    def ambient_dim(self, z) -> int:
        return self.quot[z].ambient

    def _act_ambient(self, z, z2, j, v):
        f = self.D.field
        out = [f.zero] * self.ambient_dim(z)
        for y, entries in self._split(z2, v).items():
            m = self.T[y].act[(z, z2, j)]
            dp = self.P.dims[y]
            o = self.offs[z][y]
            for t2, p, a in entries:
                for t in range(self.T[y].dims[z]):
                    c = m[t][t2]
                    if c:
                        out[o + t * dp + p] = out[o + t * dp + p] + a * c
        return out

    def project(self, z, v) -> list:
        return self.quot[z].project(v)

    def element(self, z, y, tvec, pvec) -> list:
        """Class of t (x) p with t in T[y](z), p in P(y)."""
        f = self.D.field
        v = [f.zero] * self.ambient_dim(z)
        o, dp = self.offs[z][y], self.P.dims[y]
        for t, a in enumerate(tvec):
            if a:
                for p, b in enumerate(pvec):
                    if b:
                        v[o + t * dp + p] = v[o + t * dp + p] + a * b
        return self.project(z, v)

    def induced(self, other: "Coend", alpha: dict, beta: Optional[PresheafMap]) -> PresheafMap:
        """Map to another coend induced by alpha[y]: T[y] -> T'[y] and beta: P -> P'."""
        f = self.D.field
        comps = {}
        for z in self.D.objects:
            q = self.quot[z]
            cols = []
            for k in range(q.dim):
                v = q.lift(k)
                out = [f.zero] * other.ambient_dim(z)
                for y, entries in self._split(z, v).items():
                    am = alpha[y].comps[z]
                    bm = beta.comps[y] if beta is not None else None
                    dp2 = other.P.dims[y]
                    o2 = other.offs[z][y]
                    for t, p, a in entries:
                        for t2 in range(other.T[y].dims[z]):
                            c1 = am[t2][t]
                            if not c1:
                                continue
                            if bm is None:
                                idx = o2 + t2 * dp2 + p
                                out[idx] = out[idx] + a * c1
                            else:
                                for p2 in range(dp2):
                                    c2 = bm[p2][p]
                                    if c2:
                                        idx = o2 + t2 * dp2 + p2
                                        out[idx] = out[idx] + a * c1 * c2
                cols.append(other.project(z, out))
            comps[z] = transpose(cols, len(cols), other.quot[z].dim) if cols else zeros(other.quot[z].dim, 0, f.zero)
        return PresheafMap(self.presheaf, other.presheaf, comps)


def _ident_maps(T: dict) -> dict:
    return {y: p.identity_map() for y, p in T.items()}


class Day:
    """P (*) Q computed as iterated coends: first over the left variable, then the right."""

    def __init__(self, S: SemigroupData, P: Presheaf, Q: Presheaf):
        self.S, self.P, self.Q = S, P, Q
        cat = S.base
        self.stage1 = {}
        for k in cat.objects:
            K = Obj((k,))
            T = {h: representable(cat, S.tensor_obj(Obj((h,)), K)) for h in cat.objects}
            Tm = {(h, h2, i): yoneda_map(cat, S.tensor_mor(cat.basis_mor(h, h2, i), cat.identity(K)))
                  for h in cat.objects for h2 in cat.objects for i in range(cat.hd(h, h2))}
            self.stage1[k] = Coend(cat, cat, T, Tm, P)
        T2 = {k: c.presheaf for k, c in self.stage1.items()}
        T2m = {}
        for k in cat.objects:
            for k2 in cat.objects:
                for j in range(cat.hd(k, k2)):
                    b = cat.basis_mor(k, k2, j)
                    alpha = {h: yoneda_map(cat, S.tensor_mor(cat.identity(Obj((h,))), b)) for h in cat.objects}
                    T2m[(k, k2, j)] = self.stage1[k].induced(self.stage1[k2], alpha, None)
        self.stage2 = Coend(cat, cat, T2, T2m, Q, "(%s)*(%s)" % (P.label, Q.label))
        self.presheaf = self.stage2.presheaf

    def induced(self, other: "Day", phi: PresheafMap, psi: PresheafMap) -> PresheafMap:
        """phi (*) psi: P (*) Q -> P' (*) Q'."""
        cat = self.S.base
        alpha = {}
        for k in cat.objects:
            ids = {h: representable(cat, self.S.tensor_obj(Obj((h,)), Obj((k,)))).identity_map()
                   for h in cat.objects}
            alpha[k] = self.stage1[k].induced(other.stage1[k], ids, phi)
        return self.stage2.induced(other.stage2, alpha, psi)


def day_convolve(S: SemigroupData, P: Presheaf, Q: Presheaf) -> Presheaf:
    return Day(S, P, Q).presheaf


def act_on_presheaf(act: ActionData, F: Obj, P: Presheaf) -> Presheaf:
    """F * P: the left Kan extension of F * - along the Yoneda embedding of M."""
    M = act.base
    T = {y: representable(M, act.act_formal(F, Obj((y,)))) for y in M.objects}
    Tm = {(y, y2, i): yoneda_map(M, act.act_mor_formal(act.scat.identity(F), M.basis_mor(y, y2, i)))
          for y in M.objects for y2 in M.objects for i in range(M.hd(y, y2))}
    return Coend(M, M, T, Tm, P, "%r*%s" % (F, P.label)).presheaf


# ---------------------------------------------------------------------------
# liberality

def is_liberal(S: SemigroupData, F) -> tuple:
    """(liberal?, witness): witness maps covered labels to a covering G, or lists the uncovered ones."""
    F = F if isinstance(F, str) else F[0]
    cover = {}
    for g in S.base.objects:
        for l in S.obj_tensor.get((F, g), ()):
            cover.setdefault(l, g)
    missing = [x for x in S.base.objects if x not in cover]
    return (not missing), (cover if not missing else {"uncovered": missing})


# ---------------------------------------------------------------------------
# unit constructions

class PreconditionError(ValueError):
    pass


def _need(cert, S):
    if cert is None:
        raise PreconditionError("a rigidity certificate is required")
    for x in S.base.objects:
        if x not in cert.right:
            raise PreconditionError("rigidity certificate has no right dual for %s" % x)


@dataclass
class AnsatzPresheaf:
    presheaf: Presheaf
    side: str
    basis: dict            # label -> list of TransformFamily
    coords: dict           # label -> BasisCoords


def unit_ansatz(S: SemigroupData, cert, side: str = "right") -> AnsatzPresheaf:
    """Right: F -> Nat_{Mod-S}(F(x)-, Id).  Left: F -> Nat_{S-Mod}(-(x)F, Id).

    A morphism f: F -> G acts by precomposition with f(x)- (resp. -(x)f).
    """
    _need(cert, S)
    cat = S.base
    c = S.calc()
    f = cat.field
    basis, coords = {}, {}
    for F in cat.objects:
        Fo = Obj((F,))
        src = (Fo, HOLE) if side == "right" else (HOLE, Fo)
        fams = nat_module_space(S, side, src, HOLE, c)
        basis[F] = fams
        n = family_size(c, src, HOLE)
        coords[F] = BasisCoords([m.flat() for m in fams], n, f.zero, f.one)
    dims = {F: len(basis[F]) for F in cat.objects}
    act = {}
    for F in cat.objects:
        for G in cat.objects:
            for i in range(cat.hd(F, G)):
                b = cat.basis_mor(F, G, i)
                cols = []
                for alpha in basis[G]:
                    comps = {}
                    for x in cat.objects:
                        X = cat.identity(Obj((x,)))
                        w = S.tensor_mor(b, X) if side == "right" else S.tensor_mor(X, b)
                        comps[x] = cat.compose(alpha.comps[x], w)
                    vec = []
                    for x in cat.objects:
                        vec.extend(comps[x].flat())
                    co = coords[F].coords(vec)
                    if co is None:
                        raise RuntimeError("precomposition left the ansatz space")
                    cols.append(co)
                act[(F, G, i)] = transpose(cols, len(cols), dims[F]) if cols else zeros(dims[F], 0, f.zero)
    P = Presheaf(cat, dims, act, "ansatz-%s" % side)
    return AnsatzPresheaf(P, side, basis, coords)


def _single(S, obj: Obj, what: str) -> str:
    if len(obj) != 1:
        raise PreconditionError("%s is not indecomposable (%r); double duals need single labels" % (what, obj))
    return obj[0]


def ansatz_iso(S: SemigroupData, cert, right: Optional[AnsatzPresheaf] = None,
               left: Optional[AnsatzPresheaf] = None):
    """Psi: right ansatz -> left ansatz and Phi: left -> right, built componentwise."""
    _need(cert, S)
    right = right or unit_ansatz(S, cert, "right")
    left = left or unit_ansatz(S, cert, "left")
    cat = S.base
    c = S.calc()
    f = cat.field
    psi_c, phi_c = {}, {}
    for F in cat.objects:
        Fo = Obj((F,))
        aF = cert.right[F]
        Fd = _single(S, aF.Fd_obj(S), "right dual of %s" % F)
        aFd = cert.right[Fd]
        Fdd = aFd.Fd
        lF = cert.left[F]
        LF = _single(S, lF.F_obj(S), "left dual of %s" % F)
        lLF = cert.left[LF]
        LLF = lLF.F
        D = aF.Fd

        cols = []
        for alpha in right.basis[F]:
            comps = {}
            for x in cat.objects:
                X = Obj((x,))
                s1 = aF.eta_l.at((X, Fo))                      # X F -> (X F)(Fd F)
                s2 = aFd.eta_l.at(s1.dst)                      # -> ((X F)(Fd F))(Fdd Fd)
                a_t = alpha.at(Fdd)                            # (F Fdd) -> Fdd
                s3 = c.rwhisker(c.lwhisker(((X, Fo), D), a_t), D)
                s4 = c.rwhisker(aFd.eps_l.at((X, Fo)), D)      # ((X F)(Fd Fdd)) Fd -> (X F) Fd
                s5 = aF.eps_l.at(X)                            # X (F Fd) -> X
                tm = c.compose(s5, s4, s3, s2, s1)
                comps[x] = c.cast(tm, (X, Fo), X).mor
            cols.append(_family_coords(left, F, comps, cat))
        psi_c[F] = transpose(cols, len(cols), left.presheaf.dims[F]) if cols else zeros(left.presheaf.dims[F], 0, f.zero)

        cols = []
        for beta in left.basis[F]:
            comps = {}
            for h in cat.objects:
                H = Obj((h,))
                s1 = lF.eta_r.at((Fo, H))                      # F H -> (F LF)(F H)
                s2 = lLF.eta_r.at(s1.dst)                      # -> (LF LLF)((F LF)(F H))
                b_t = beta.at(LLF)                             # (LLF F) -> LLF
                s3 = c.lwhisker(lF.F, c.rwhisker(b_t, (lF.F, (Fo, H))))
                s4 = c.lwhisker(lF.F, lLF.eps_r.at((Fo, H)))   # LF ((LLF LF)(F H)) -> LF (F H)
                s5 = lF.eps_r.at(H)                            # (LF F) H -> H
                tm = c.compose(s5, s4, s3, s2, s1)
                comps[h] = c.cast(tm, (Fo, H), H).mor
            cols.append(_family_coords(right, F, comps, cat))
        phi_c[F] = transpose(cols, len(cols), right.presheaf.dims[F]) if cols else zeros(right.presheaf.dims[F], 0, f.zero)
    Psi = PresheafMap(right.presheaf, left.presheaf, psi_c)
    Phi = PresheafMap(left.presheaf, right.presheaf, phi_c)
    return Psi, Phi


def _family_coords(ans: AnsatzPresheaf, F, comps, cat) -> list:
    vec = []
    for x in cat.objects:
        vec.extend(comps[x].flat())
    co = ans.coords[F].coords(vec)
    if co is None:
        raise RuntimeError("image is not a module transformation of the expected kind")
    return co


def _u_v(S, cert, F, G):
    """The two parallel maps ((F Fd)(G Gd)) -> (G Gd) and -> (F Fd) of the coequalizer."""
    c = S.calc()
    aF, aG = cert.right[F], cert.right[G]
    Fo, Go = Obj((F,)), Obj((G,))
    src = ((Fo, aF.Fd), (Go, aG.Fd))
    u = c.rwhisker(aF.eps_r.at(Go), aG.Fd)
    v = c.lwhisker(Fo, aG.eps_l.at(aF.Fd))
    return c.cast(u, src, u.dst), c.cast(v, src, v.dst)


@dataclass
class UnitCoequalizer:
    presheaf: Presheaf
    coker: Cokernel
    relation: Mor
    label: str = ""


def unit_general(S: SemigroupData, cert) -> UnitCoequalizer:
    """Coequalizer of the sums over indecomposable F, G of Y(F Fd G Gd) into Y(F Fd)."""
    _need(cert, S)
    cat = S.base
    c = S.calc()
    labels = cat.objects
    tgt = [c.ob((Obj((F,)), cert.right[F].Fd)) for F in labels]
    pairs = [(F, G) for F in labels for G in labels]
    src = []
    entries = {}
    for j, (F, G) in enumerate(pairs):
        u, v = _u_v(S, cert, F, G)
        src.append(c.ob(u.src))
        iF, iG = labels.index(F), labels.index(G)
        entries[(iG, j)] = entries[(iG, j)] + u.mor if (iG, j) in entries else u.mor
        entries[(iF, j)] = entries[(iF, j)] - v.mor if (iF, j) in entries else -v.mor
    rel = block_mor(cat, src, tgt, entries)
    ck = Cokernel(yoneda_map(cat, rel), "unit")
    return UnitCoequalizer(ck.presheaf, ck, rel, "general")


def unit_bar(S: SemigroupData, cert, F) -> UnitCoequalizer:
    """Cokernel of Y(F Fd F Fd) -> Y(F Fd) for a liberal F."""
    _need(cert, S)
    lib, wit = is_liberal(S, F)
    if not lib:
        raise PreconditionError("%s is not liberal: inverse image along %s(x)- is not faithful (%s)"
                                % (F, F, wit))
    u, v = _u_v(S, cert, F, F)
    rel = u.mor - v.mor
    ck = Cokernel(yoneda_map(S.base, rel), "unit-bar")
    return UnitCoequalizer(ck.presheaf, ck, rel, "bar")


@dataclass
class UnitAction:
    """W = the unit acting on Y(X), with theta: W -> Y(X) and a section sigma."""

    W: Presheaf
    theta: PresheafMap
    sigma: Optional[PresheafMap]
    coequalizes: bool
    theta_sigma: bool
    sigma_theta: bool

    @property
    def ok(self) -> bool:
        return self.coequalizes and self.theta_sigma and self.sigma_theta


def unit_on_representable(calc: Calc, cert, X, side: str, counit) -> UnitAction:
    """Build the coequalizer presentation of the unit acting on Y(X) and the comparison theta.

    counit(F) is a TMor from ((F Fd) X) (side 'left') or (X (F Fd)) (side 'right') to X.
    The section is found by solving theta_X(w) = id_X and extending by Yoneda.
    """
    S = calc.act.S
    cat = calc.cat
    f = cat.field
    labels = S.base.objects
    Xo = Obj((X,)) if isinstance(X, str) else X

    def part(F):
        pair = (Obj((F,)), cert.right[F].Fd)
        return (pair, Xo) if side == "left" else (Xo, pair)

    tgt_trees = [part(F) for F in labels]
    tgt = [calc.ob(t) for t in tgt_trees]
    src, entries = [], {}
    j = 0
    for F in labels:
        for G in labels:
            u, v = _u_v(S, cert, F, G)
            if side == "left":
                uu, vv = calc.rwhisker(u, Xo), calc.rwhisker(v, Xo)
            else:
                uu, vv = calc.lwhisker(Xo, u), calc.lwhisker(Xo, v)
            src.append(calc.ob(uu.src))
            iF, iG = labels.index(F), labels.index(G)
            entries[(iG, j)] = entries[(iG, j)] + uu.mor if (iG, j) in entries else uu.mor
            entries[(iF, j)] = entries[(iF, j)] - vv.mor if (iF, j) in entries else -vv.mor
            j += 1
    rel = block_mor(cat, src, tgt, entries)
    ck = Cokernel(yoneda_map(cat, rel))
    W = ck.presheaf
    th_parts = {}
    for i, F in enumerate(labels):
        tm = counit(F)
        th_parts[(0, i)] = calc.cast(tm, tgt_trees[i], Xo).mor
    th_mor = block_mor(cat, tgt, [Xo], th_parts)
    coeq = cat.compose(th_mor, rel).is_zero()
    theta = ck.descend(yoneda_map(cat, th_mor))
    YX = representable(cat, Xo)
    # section: w in W(X) with theta_X(w) = id_X, extended by Yoneda
    x0 = Xo[0]
    tX = theta.comps[x0]
    idv = cat.identity(Xo).flat()
    w = solve(tX, idv, W.dims[x0], f.zero) if W.dims[x0] else None
    sigma = None
    ts = st = False
    if w is not None:
        comps = {}
        for z in cat.objects:
            cols = [matvec(W.mat(z, x0, b.flat()), w, f.zero) if W.dims[z] else []
                    for b in cat.hom_basis(Obj((z,)), Xo)]
            comps[z] = transpose(cols, len(cols), W.dims[z]) if cols else zeros(W.dims[z], 0, f.zero)
        sigma = PresheafMap(YX, W, comps)
        ts = theta.compose(sigma) == YX.identity_map()
        st = sigma.compose(theta) == W.identity_map()
    return UnitAction(W, theta, sigma, coeq, ts, st)


@dataclass
class UnitReport:
    unit: Presheaf
    left: dict
    right: dict
    day_checks: dict
    end_dim: int
    simple: bool
    top: dict
    notes: list = dc_field(default_factory=list)

    @property
    def unital(self) -> bool:
        return (all(a.ok for a in self.left.values()) and all(a.ok for a in self.right.values())
                and all(v == "iso" for v in self.day_checks.values()))


def unit_verify(S: SemigroupData, cert, U: Presheaf, seed: int = 0, day: bool = True,
                sections: bool = True) -> UnitReport:
    """Unitality of U against every representable, plus End(U) and simplicity."""
    _need(cert, S)
    cat = S.base
    c = S.calc()
    left, right = {}, {}
    if sections:
        for H in cat.objects:
            Ho = Obj((H,))
            left[H] = unit_on_representable(c, cert, H, "left",
                                            lambda F, Ho=Ho: cert.right[F].eps_r.at(Ho))
            right[H] = unit_on_representable(c, cert, H, "right",
                                             lambda F, Ho=Ho: cert.right[F].eps_l.at(Ho))
    checks = {}
    if day:
        for H in cat.objects:
            YH = representable(cat, Obj((H,)))
            checks["U*Y(%s)" % H] = iso_test(day_convolve(S, U, YH), YH, seed).status
            checks["Y(%s)*U" % H] = iso_test(day_convolve(S, YH, U), YH, seed).status
    rad = None
    try:
        rad = radical(cat)
        simple = is_simple(U, rad)
        top = top_dims(U, rad)
    except Exception as exc:  # radical unavailable
        simple, top = False, {"error": str(exc)}
    return UnitReport(U, left, right, checks, end_dim(U), simple, top)
