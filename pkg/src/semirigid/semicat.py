"""Semigroup categories, their module actions, and natural/module transformations.

Bracketed expressions are trees: an ``Obj`` leaf or a pair ``(left, right)``.
In a tree evaluated in a module context, the rightmost leaf lives in the
module and every left subtree lives in the semigroup category.  ``Calc``
evaluates trees and inserts associators (or module multiplicativity
isomorphisms) whenever two bracketings of the same word meet.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .fincat import (CatPresentation, ContractViolation, FormatError, Mor, Obj, ValidationReport,
                     nullspace, solve, transpose)


# ---------------------------------------------------------------------------
# bilinear actions

class ActionData:
    """A bilinear action S x M -> M with multiplicativity isomorphisms.

    ``act_obj[(F, X)]`` is a tuple of labels of M, ``act_mor[(F, F2, i, X, X2, j)]``
    is the Mor F*X -> F2*X2 for the i-th basis map F->F2 and j-th basis map
    X->X2, and ``mult[(G, F, X)]`` is (G(x)F)*X -> G*(F*X).
    """

    def __init__(self, semigroup, base: CatPresentation, act_obj, act_mor, mult):
        self.S = self if semigroup is None else semigroup
        self.base = base
        self.act_obj = {k: tuple(v) for k, v in act_obj.items()}
        self.act_mor = act_mor
        self.mult = mult
        self._mult_inv = {}
        self._layout = {}
        self._calc = None

    @property
    def scat(self) -> CatPresentation:
        return self.S.base

    def calc(self) -> "Calc":
        if self._calc is None:
            self._calc = Calc(self)
        return self._calc

    # -- objects ---------------------------------------------------------

    def layout(self, a: Obj, x: Obj):
        """Positions of a*x as (a_index, x_index, k) plus the resulting Obj."""
        key = (a.summands, x.summands)
        hit = self._layout.get(key)
        if hit is None:
            pos, labels = [], []
            for ia, A in enumerate(a):
                for ix, X in enumerate(x):
                    for k, lab in enumerate(self.act_obj.get((A, X), ())):
                        pos.append((ia, ix, k))
                        labels.append(lab)
            index = {p: n for n, p in enumerate(pos)}
            hit = (Obj(labels), pos, index)
            self._layout[key] = hit
        return hit

    def act_formal(self, a: Obj, x: Obj) -> Obj:
        return self.layout(a, x)[0]

    # -- morphisms ----------------------------------------------------------

    def act_mor_formal(self, f: Mor, u: Mor) -> Mor:
        src, _, sidx = self.layout(f.src, u.src)
        dst, _, didx = self.layout(f.dst, u.dst)
        out = self.base.zero_mor(src, dst)
        for a2, A2 in enumerate(f.dst):
            for a, A in enumerate(f.src):
                fv = f.blocks[a2][a]
                fi = [(i, c) for i, c in enumerate(fv) if c]
                if not fi:
                    continue
                for x2, X2 in enumerate(u.dst):
                    for x, X in enumerate(u.src):
                        uv = u.blocks[x2][x]
                        uj = [(j, c) for j, c in enumerate(uv) if c]
                        if not uj:
                            continue
                        nsrc = len(self.act_obj.get((A, X), ()))
                        ndst = len(self.act_obj.get((A2, X2), ()))
                        if not nsrc or not ndst:
                            continue
                        s0 = sidx[(a, x, 0)]
                        d0 = didx[(a2, x2, 0)]
                        for i, ci in fi:
                            for j, cj in uj:
                                m = self.act_mor[(A, A2, i, X, X2, j)]
                                c = ci * cj
                                for r in range(ndst):
                                    orow = out.blocks[d0 + r]
                                    mrow = m.blocks[r]
                                    for s in range(nsrc):
                                        v = mrow[s]
                                        if any(v):
                                            acc = orow[s0 + s]
                                            orow[s0 + s] = [p + c * q for p, q in zip(acc, v)]
        return out

    def mult_block(self, g, f, x, inverse=False) -> Mor:
        if not inverse:
            return self.mult[(g, f, x)]
        key = (g, f, x)
        hit = self._mult_inv.get(key)
        if hit is None:
            hit = self.base.inverse(self.mult[key])
            self._mult_inv[key] = hit
        return hit

    def mult_formal(self, g: Obj, f: Obj, x: Obj, inverse: bool = False) -> Mor:
        """(g(x)f)*x -> g*(f*x) for formal arguments, assembled from indecomposable blocks."""
        S = self.S
        gf, gf_pos, _ = S.layout(g, f)
        src, _, sidx = self.layout(gf, x)
        fx, fx_pos, fx_idx = self.layout(f, x)
        dst, _, didx = self.layout(g, fx)
        out = self.base.zero_mor(src, dst) if not inverse else self.base.zero_mor(dst, src)
        # group gf positions by (g_index, f_index)
        gf_groups = {}
        for n, (ig, if_, p) in enumerate(gf_pos):
            gf_groups.setdefault((ig, if_), []).append(n)
        fx_groups = {}
        for n, (if_, ix, r) in enumerate(fx_pos):
            fx_groups.setdefault((if_, ix), []).append(n)
        for (ig, if_), gf_ns in gf_groups.items():
            for ix, X in enumerate(x):
                G, F = g[ig], f[if_]
                # block source order: (p, q) over S.obj_tensor(G,F) then action summands
                s_rows = []
                for n in gf_ns:
                    w = gf[n]
                    for q in range(len(self.act_obj.get((w, X), ()))):
                        s_rows.append(sidx[(n, ix, q)])
                d_rows = []
                for n in fx_groups.get((if_, ix), []):
                    e = fx[n]
                    for t in range(len(self.act_obj.get((G, e), ()))):
                        d_rows.append(didx[(ig, n, t)])
                if not s_rows and not d_rows:
                    continue
                blk = self.mult_block(G, F, X, inverse)
                if not inverse:
                    for r, dr in enumerate(d_rows):
                        for s, sr in enumerate(s_rows):
                            out.blocks[dr][sr] = list(blk.blocks[r][s])
                else:
                    for r, sr in enumerate(s_rows):
                        for s, dr in enumerate(d_rows):
                            out.blocks[sr][dr] = list(blk.blocks[r][s])
        return out


class SemigroupData(ActionData):
    """A semigroup category: the tensor product is the action of S on itself."""

    def __init__(self, base: CatPresentation, obj_tensor, mor_tensor, assoc, braid=None):
        super().__init__(None, base, obj_tensor, mor_tensor, assoc)
        self.braid = braid

    @property
    def obj_tensor(self):
        return self.act_obj

    @property
    def mor_tensor(self):
        return self.act_mor

    @property
    def assoc(self):
        return self.mult

    def tensor_obj(self, a: Obj, b: Obj) -> Obj:
        return self.act_formal(a, b)

    def tensor_mor(self, f: Mor, g: Mor) -> Mor:
        return self.act_mor_formal(f, g)

    def assoc_formal(self, a: Obj, b: Obj, c: Obj, inverse: bool = False) -> Mor:
        return self.mult_formal(a, b, c, inverse)

    def braid_formal(self, a: Obj, b: Obj) -> Mor:
        """Symmetry a(x)b -> b(x)a, blockwise."""
        if self.braid is None:
            raise ContractViolation("no braiding data")
        src, _, sidx = self.layout(a, b)
        dst, _, didx = self.layout(b, a)
        out = self.base.zero_mor(src, dst)
        for ia, A in enumerate(a):
            for ib, B in enumerate(b):
                blk = self.braid[(A, B)]
                for r in range(len(self.act_obj.get((B, A), ()))):
                    for s in range(len(self.act_obj.get((A, B), ()))):
                        out.blocks[didx[(ib, ia, r)]][sidx[(ia, ib, s)]] = list(blk.blocks[r][s])
        return out

    def indecs(self):
        return list(self.base.objects)

    def max_multiplicity(self) -> int:
        best = 1
        for v in self.act_obj.values():
            for c in Obj(v).counts().values():
                best = max(best, c)
        return best


# ---------------------------------------------------------------------------
# bracketed trees

class _Hole:
    __slots__ = ()

    def __repr__(self):
        return "_"


HOLE = _Hole()


def is_leaf(t) -> bool:
    return isinstance(t, Obj)


def leaves(t) -> list:
    if isinstance(t, tuple):
        return leaves(t[0]) + leaves(t[1])
    return [t]


def word(t) -> tuple:
    return tuple(l.summands if isinstance(l, Obj) else "_" for l in leaves(t))


def tkey(t):
    if isinstance(t, tuple):
        return (tkey(t[0]), tkey(t[1]))
    if t is HOLE:
        return "_"
    return ("o",) + t.summands


def subst(t, arg):
    if t is HOLE:
        return arg
    if isinstance(t, tuple):
        return (subst(t[0], arg), subst(t[1], arg))
    return t


def has_hole(t) -> bool:
    if t is HOLE:
        return True
    if isinstance(t, tuple):
        return has_hole(t[0]) or has_hole(t[1])
    return False


def hole_on_left(t) -> bool:
    """The hole sits in some left subtree, i.e. in the semigroup context."""
    if isinstance(t, tuple):
        if has_hole(t[0]):
            return True
        return hole_on_left(t[1])
    return False


def show(t) -> str:
    if isinstance(t, tuple):
        return "(%s %s)" % (show(t[0]), show(t[1]))
    return repr(t)


@dataclass
class TMor:
    """A morphism between the evaluations of two trees."""

    src: object
    dst: object
    mor: Mor


def _right_nested(t) -> bool:
    while isinstance(t, tuple):
        if isinstance(t[0], tuple):
            return False
        t = t[1]
    return True


class Calc:
    """Evaluation of trees and typed morphisms in the context of an action."""

    def __init__(self, act: ActionData):
        self.act = act
        self.cat = act.base
        self.scalc = self if act.S is act else act.S.calc()
        self._rn = {}

    def ob(self, t) -> Obj:
        if isinstance(t, tuple):
            return self.act.act_formal(self.scalc.ob(t[0]), self.ob(t[1]))
        if t is HOLE:
            raise ContractViolation("unfilled hole")
        return t

    def ident(self, t) -> TMor:
        return TMor(t, t, self.cat.identity(self.ob(t)))

    def tensor(self, f: TMor, g: TMor) -> TMor:
        return TMor((f.src, g.src), (f.dst, g.dst), self.act.act_mor_formal(f.mor, g.mor))

    def lwhisker(self, s_tree, g: TMor) -> TMor:
        return self.tensor(self.scalc.ident(s_tree), g)

    def rwhisker(self, f: TMor, m_tree) -> TMor:
        return self.tensor(f, self.ident(m_tree))

    def _to_right(self, t):
        """(right-nested tree, forward Mor, backward Mor)."""
        if _right_nested(t):
            m = self.cat.identity(self.ob(t))
            return t, m, m
        key = tkey(t)
        hit = self._rn.get(key)
        if hit is not None:
            return hit
        L, R = t
        lr, lf, lb = self.scalc._to_right(L)
        rr, rf, rb = self._to_right(R)
        f1 = self.act.act_mor_formal(lf, rf)
        b1 = self.act.act_mor_formal(lb, rb)
        if not isinstance(lr, tuple):
            hit = ((lr, rr), f1, b1)
        else:
            l1, rest = lr
            a = self.scalc.ob(l1)
            m = self.act.mult_formal(a, self.scalc.ob(rest), self.ob(rr))
            mi = self.act.mult_formal(a, self.scalc.ob(rest), self.ob(rr), inverse=True)
            tr, tf, tb = self._to_right((rest, rr))
            ida = self.scat_identity(a)
            wf = self.act.act_mor_formal(ida, tf)
            wb = self.act.act_mor_formal(ida, tb)
            cat = self.cat
            hit = ((l1, tr), cat.compose_all(wf, m, f1), cat.compose_all(b1, mi, wb))
        self._rn[key] = hit
        return hit

    def scat_identity(self, a: Obj) -> Mor:
        return self.act.scat.identity(a)

    def rebracket(self, t1, t2) -> TMor:
        if tkey(t1) == tkey(t2):
            return self.ident(t1)
        if word(t1) != word(t2):
            raise ContractViolation("cannot rebracket %s to %s" % (show(t1), show(t2)))
        r1, f1, _ = self._to_right(t1)
        r2, _, b2 = self._to_right(t2)
        return TMor(t1, t2, self.cat.compose(b2, f1))

    def compose(self, *tms: TMor) -> TMor:
        """compose(h, g, f) = h o g o f, rebracketing between mismatched trees."""
        out = tms[-1]
        for g in reversed(tms[:-1]):
            m = out.mor
            if tkey(g.src) != tkey(out.dst):
                m = self.cat.compose(self.rebracket(out.dst, g.src).mor, m)
            out = TMor(out.src, g.dst, self.cat.compose(g.mor, m))
        return out

    def cast(self, tm: TMor, src, dst) -> TMor:
        m = tm.mor
        if tkey(src) != tkey(tm.src):
            m = self.cat.compose(m, self.rebracket(src, tm.src).mor)
        if tkey(dst) != tkey(tm.dst):
            m = self.cat.compose(self.rebracket(tm.dst, dst).mor, m)
        return TMor(src, dst, m)

    def agree(self, a: TMor, b: TMor) -> bool:
        return self.cast(b, a.src, a.dst).mor == a.mor

    def template_mor(self, t, f: Mor) -> Mor:
        """Apply the functor described by template t to a morphism f at the hole."""
        if t is HOLE:
            return f
        if not isinstance(t, tuple):
            return self.cat.identity(t)
        L, R = t
        if has_hole(L):
            lm = self.scalc.template_mor(L, f)
            rm = self.cat.identity(self.ob(R))
        elif has_hole(R):
            lm = self.act.scat.identity(self.scalc.ob(L))
            rm = self.template_mor(R, f)
        else:
            return self.cat.identity(self.ob(t))
        return self.act.act_mor_formal(lm, rm)


# ---------------------------------------------------------------------------
# functors and transformation families

class FunctorData:
    """An additive functor given by a template tree with one hole."""

    def __init__(self, calc: Calc, template):
        if not has_hole(template):
            raise ContractViolation("functor template needs a hole")
        self.calc = calc
        self.template = template
        self.hole_calc = calc.scalc if hole_on_left(template) else calc

    @property
    def domain(self) -> CatPresentation:
        return self.hole_calc.cat

    def on_obj(self, x) -> Obj:
        return self.calc.ob(subst(self.template, x if not isinstance(x, str) else Obj((x,))))

    def on_mor(self, f: Mor) -> Mor:
        return self.calc.template_mor(self.template, f)

    def table(self):
        """Object map and images of basis morphisms."""
        cat = self.domain
        objs = {x: self.on_obj(x).summands for x in cat.objects}
        mors = {}
        for x in cat.objects:
            for y in cat.objects:
                for i in range(cat.hd(x, y)):
                    mors[(x, y, i)] = self.on_mor(cat.basis_mor(x, y, i))
        return objs, mors


class TransformFamily:
    """Components on indecomposables of a transformation between two template functors."""

    def __init__(self, calc: Calc, src, dst, comps: dict, flavor: str = "plain"):
        self.calc = calc
        self.src = src
        self.dst = dst
        self.comps = comps
        self.flavor = flavor
        self.hole_calc = calc.scalc if hole_on_left(src) else calc
        self._cache = {}

    @property
    def domain(self) -> CatPresentation:
        return self.hole_calc.cat

    def at(self, tree) -> TMor:
        if isinstance(tree, str):
            tree = Obj((tree,))
        key = tkey(tree)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        S_src, S_dst = subst(self.src, tree), subst(self.dst, tree)
        z = self.hole_calc.ob(tree)
        c = self.calc
        if isinstance(tree, Obj) and len(z) == 1:
            m = self.comps[z[0]]
        else:
            hc = self.domain
            m = c.cat.zero_mor(c.ob(subst(self.src, z)), c.ob(subst(self.dst, z)))
            for k, lab in enumerate(z):
                inc = c.template_mor(self.dst, hc.inclusion(z, k))
                pr = c.template_mor(self.src, hc.projection(z, k))
                m = m + c.cat.compose_all(inc, self.comps[lab], pr)
        hit = TMor(S_src, S_dst, m)
        self._cache[key] = hit
        return hit

    def combine(self, other: "TransformFamily", a=1, b=1) -> "TransformFamily":
        comps = {k: self.comps[k].scale(a) + other.comps[k].scale(b) for k in self.comps}
        return TransformFamily(self.calc, self.src, self.dst, comps, self.flavor)

    def scale(self, a) -> "TransformFamily":
        return TransformFamily(self.calc, self.src, self.dst,
                               {k: v.scale(a) for k, v in self.comps.items()}, self.flavor)

    def flat(self) -> list:
        out = []
        for x in self.domain.objects:
            out.extend(self.comps[x].flat())
        return out

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self.comps.values())


def family_shapes(calc: Calc, src, dst):
    hc = calc.scalc if hole_on_left(src) else calc
    return [(x, calc.ob(subst(src, Obj((x,)))), calc.ob(subst(dst, Obj((x,)))))
            for x in hc.cat.objects]


def family_from_flat(calc, src, dst, vec, flavor="plain") -> TransformFamily:
    comps = {}
    pos = 0
    for x, a, b in family_shapes(calc, src, dst):
        n = sum(calc.cat.hd(s, t) for t in b for s in a)
        comps[x] = Mor.from_flat(calc.cat, a, b, vec[pos:pos + n])
        pos += n
    return TransformFamily(calc, src, dst, comps, flavor)


def family_size(calc, src, dst) -> int:
    return sum(sum(calc.cat.hd(s, t) for t in b for s in a) for _, a, b in family_shapes(calc, src, dst))


def naturality_pairs(fam: TransformFamily):
    """(witness, lhs, rhs) for dst(b) o tau_X = tau_Y o src(b)."""
    c = fam.calc
    hc = fam.domain
    for x in hc.objects:
        for y in hc.objects:
            for i in range(hc.hd(x, y)):
                b = hc.basis_mor(x, y, i)
                lhs = c.cat.compose(c.template_mor(fam.dst, b), fam.at(x).mor)
                rhs = c.cat.compose(fam.at(y).mor, c.template_mor(fam.src, b))
                yield ("naturality", x, y, hc.name(x, y, i)), lhs, rhs


def equivariance_pairs(fam: TransformFamily, flavor: Optional[str] = None):
    flavor = flavor or fam.flavor
    c = fam.calc
    objs = fam.domain.objects
    if flavor == "left":
        for h in objs:
            for x in objs:
                H, X = Obj((h,)), Obj((x,))
                big = c.cast(fam.at((H, X)), (H, subst(fam.src, X)), (H, subst(fam.dst, X)))
                small = c.lwhisker(H, fam.at(X))
                yield ("left-equivariance", h, x), big.mor, small.mor
    elif flavor == "right":
        for x in objs:
            for h in objs:
                H, X = Obj((h,)), Obj((x,))
                big = c.cast(fam.at((X, H)), (subst(fam.src, X), H), (subst(fam.dst, X), H))
                small = c.rwhisker(fam.at(X), H)
                yield ("right-equivariance", x, h), big.mor, small.mor


def check_pairs(pairs, limit=None) -> list:
    fails = []
    for wit, lhs, rhs in pairs:
        if lhs != rhs:
            fails.append(wit)
            if limit and len(fails) >= limit:
                break
    return fails


def residual(pairs) -> list:
    out = []
    for _, lhs, rhs in pairs:
        out.extend(p - q for p, q in zip(lhs.flat(), rhs.flat()))
    return out


@dataclass
class Unknown:
    """One family-valued unknown in a linear system."""

    name: str
    calc: Calc
    src: object
    dst: object
    flavor: str = "plain"

    @property
    def size(self) -> int:
        return family_size(self.calc, self.src, self.dst)


def unpack(unknowns, vec) -> dict:
    out, pos = {}, 0
    for u in unknowns:
        n = u.size
        out[u.name] = family_from_flat(u.calc, u.src, u.dst, vec[pos:pos + n], u.flavor)
        pos += n
    return out


def solve_families(unknowns, residual_fn, field, fixed=None, affine: bool = False):
    """Solve residual_fn(families) == 0 for families linear in the unknowns.

    Returns (particular solution vector or None, kernel basis).  With
    ``affine=False`` the system is assumed homogeneous.
    """
    fixed = fixed or {}
    n = sum(u.size for u in unknowns)
    zero, one = field.zero, field.one

    def ev(vec):
        fams = unpack(unknowns, vec)
        fams.update(fixed)
        return residual_fn(fams)

    base = ev([zero] * n)
    cols = []
    for k in range(n):
        e = [zero] * n
        e[k] = one
        r = ev(e)
        cols.append([p - q for p, q in zip(r, base)] if affine else r)
    m = len(base)
    rows = transpose(cols, n, m) if n else [[] for _ in range(m)]
    ker = nullspace(rows, n, zero, one)
    part = None
    if affine:
        part = solve(rows, [-b for b in base], n, zero)
    elif not any(base):
        part = [zero] * n
    return part, ker


def nat_module_space(S: SemigroupData, flavor: str, F, G, calc: Optional[Calc] = None) -> list:
    """Basis of transformations F => G satisfying naturality and, per flavor, equivariance.

    F and G are FunctorData or template trees.
    """
    calc = calc or S.calc()
    fs = F.template if isinstance(F, FunctorData) else F
    gs = G.template if isinstance(G, FunctorData) else G
    u = Unknown("tau", calc, fs, gs, flavor)

    def res(fams):
        fam = fams["tau"]
        out = residual(naturality_pairs(fam))
        if flavor in ("left", "right"):
            out += residual(equivariance_pairs(fam, flavor))
        return out

    _, ker = solve_families([u], res, calc.cat.field)
    return [family_from_flat(calc, fs, gs, v, flavor) for v in ker]


def check_family(fam: TransformFamily, limit=None) -> list:
    fails = check_pairs(naturality_pairs(fam), limit)
    if fam.flavor in ("left", "right"):
        fails += check_pairs(equivariance_pairs(fam), limit)
    return fails


# ---------------------------------------------------------------------------
# validation

def _basis_pairs(cat):
    """(x, y, i) for every basis morphism."""
    for x in cat.objects:
        for y in cat.objects:
            for i in range(cat.hd(x, y)):
                yield x, y, i


def _check_action_shapes(act: ActionData):
    S, M = act.scat, act.base
    for (F, X), labs in act.act_obj.items():
        if F not in S.objects or X not in M.objects:
            raise FormatError("action table entry for unknown pair (%s, %s)" % (F, X))
        for l in labs:
            if l not in M.objects:
                raise FormatError("action of (%s, %s) names unknown label %s" % (F, X, l))
    for F, F2, i in _basis_pairs(S):
        for X, X2, j in _basis_pairs(M):
            key = (F, F2, i, X, X2, j)
            src = Obj(act.act_obj.get((F, X), ()))
            dst = Obj(act.act_obj.get((F2, X2), ()))
            m = act.act_mor.get(key)
            if m is None:
                if src.summands and dst.summands:
                    raise FormatError("missing action constants for %r" % (key,))
                act.act_mor[key] = M.zero_mor(src, dst)
                continue
            if m.src.summands != src.summands or m.dst.summands != dst.summands:
                raise FormatError("action constants for %r have the wrong shape" % (key,))
    for G in S.objects:
        for F in S.objects:
            for X in M.objects:
                src = act.layout(Obj(act.S.act_obj.get((G, F), ())), Obj((X,)))[0]
                dst = act.layout(Obj((G,)), Obj(act.act_obj.get((F, X), ())))[0]
                m = act.mult.get((G, F, X))
                if m is None:
                    if src.summands or dst.summands:
                        raise FormatError("missing multiplicativity block (%s, %s, %s)" % (G, F, X))
                    act.mult[(G, F, X)] = M.zero_mor(src, dst)
                    continue
                if m.src.summands != src.summands or m.dst.summands != dst.summands:
                    raise FormatError("block (%s, %s, %s) has the wrong shape" % (G, F, X))


def validate_action(act: ActionData, limit: int = 10) -> ValidationReport:
    """Bifunctoriality, invertibility and naturality of m, and the coherence axiom."""
    _check_action_shapes(act)
    S, M = act.scat, act.base
    SS = act.S
    fails = []
    counts = {"bifunctoriality": 0, "invertibility": 0, "naturality": 0, "coherence": 0}

    def fail(entry):
        if len(fails) < limit:
            fails.append(entry)

    for F in S.objects:
        for X in M.objects:
            counts["bifunctoriality"] += 1
            lhs = act.act_mor_formal(S.identity(Obj((F,))), M.identity(Obj((X,))))
            if lhs != M.identity(act.act_formal(Obj((F,)), Obj((X,)))):
                fail({"law": "identity", "objects": [F, X]})
    s_pairs = [(a, b, c, i, j) for a, b, i in _basis_pairs(S) for b2, c, j in _basis_pairs(S) if b2 == b]
    m_pairs = [(a, b, c, i, j) for a, b, i in _basis_pairs(M) for b2, c, j in _basis_pairs(M) if b2 == b]
    for (A, B, C, i, i2) in s_pairs:
        g, g2 = S.basis_mor(A, B, i), S.basis_mor(B, C, i2)
        g21 = S.compose(g2, g)
        for (X, Y, Z, j, j2) in m_pairs:
            counts["bifunctoriality"] += 1
            u, u2 = M.basis_mor(X, Y, j), M.basis_mor(Y, Z, j2)
            lhs = act.act_mor_formal(g21, M.compose(u2, u))
            rhs = M.compose(act.act_mor_formal(g2, u2), act.act_mor_formal(g, u))
            if lhs != rhs:
                fail({"law": "bifunctoriality", "morphisms": [S.name(A, B, i), S.name(B, C, i2),
                                                              M.name(X, Y, j), M.name(Y, Z, j2)]})
    for (G, F, X), m in act.mult.items():
        counts["invertibility"] += 1
        if not M.is_iso(m):
            fail({"law": "invertibility", "objects": [G, F, X]})
    for G, G2, i in _basis_pairs(S):
        for F, F2, j in _basis_pairs(S):
            gf = SS.act_mor_formal(S.basis_mor(G, G2, i), S.basis_mor(F, F2, j))
            for X, X2, k in _basis_pairs(M):
                counts["naturality"] += 1
                u = M.basis_mor(X, X2, k)
                lhs = M.compose(act.mult_formal(Obj((G2,)), Obj((F2,)), Obj((X2,))), act.act_mor_formal(gf, u))
                inner = act.act_mor_formal(S.basis_mor(F, F2, j), u)
                rhs = M.compose(act.act_mor_formal(S.basis_mor(G, G2, i), inner),
                                act.mult_formal(Obj((G,)), Obj((F,)), Obj((X,))))
                if lhs != rhs:
                    fail({"law": "naturality", "morphisms": [S.name(G, G2, i), S.name(F, F2, j), M.name(X, X2, k)]})
    for H in S.objects:
        for G in S.objects:
            for F in S.objects:
                h, g, f = Obj((H,)), Obj((G,)), Obj((F,))
                hg = SS.act_formal(h, g)
                gf = SS.act_formal(g, f)
                for X in M.objects:
                    counts["coherence"] += 1
                    x = Obj((X,))
                    fx = act.act_formal(f, x)
                    p1 = M.compose(act.mult_formal(h, g, fx), act.mult_formal(hg, f, x))
                    p2 = M.compose_all(
                        act.act_mor_formal(S.identity(h), act.mult_formal(g, f, x)),
                        act.mult_formal(h, gf, x),
                        act.act_mor_formal(SS.mult_formal(h, g, f), M.identity(x)))
                    if p1 != p2:
                        fail({"law": "pentagon" if act is SS else "coherence", "objects": [H, G, F, X]})
    return ValidationReport(not fails, fails, counts)


def validate_semigroup(S: SemigroupData, limit: int = 10) -> ValidationReport:
    rep = validate_action(S, limit)
    if S.braid is None:
        return rep
    fails = list(rep.failures)
    B = S.base
    n = 0
    for X in B.objects:
        for Y in B.objects:
            n += 1
            x, y = Obj((X,)), Obj((Y,))
            if B.compose(S.braid_formal(y, x), S.braid_formal(x, y)) != B.identity(S.tensor_obj(x, y)):
                fails.append({"law": "symmetry", "objects": [X, Y]})
    for X, X2, i in _basis_pairs(B):
        for Y, Y2, j in _basis_pairs(B):
            f, g = B.basis_mor(X, X2, i), B.basis_mor(Y, Y2, j)
            lhs = B.compose(S.braid_formal(f.dst, g.dst), S.tensor_mor(f, g))
            rhs = B.compose(S.tensor_mor(g, f), S.braid_formal(f.src, g.src))
            if lhs != rhs:
                fails.append({"law": "braid naturality", "morphisms": [B.name(X, X2, i), B.name(Y, Y2, j)]})
    for X in B.objects:
        for Y in B.objects:
            for Z in B.objects:
                x, y, z = Obj((X,)), Obj((Y,)), Obj((Z,))
                lhs = B.compose_all(S.assoc_formal(y, z, x), S.braid_formal(x, S.tensor_obj(y, z)),
                                    S.assoc_formal(x, y, z))
                rhs = B.compose_all(S.tensor_mor(B.identity(y), S.braid_formal(x, z)),
                                    S.assoc_formal(y, x, z),
                                    S.tensor_mor(S.braid_formal(x, y), B.identity(z)))
                if lhs != rhs:
                    fails.append({"law": "hexagon", "objects": [X, Y, Z]})
    rep.checked["braid"] = n
    return ValidationReport(not fails, fails[:limit], rep.checked)


def tensor_mor(S: SemigroupData, f: Mor, g: Mor) -> Mor:
    return S.tensor_mor(f, g)
