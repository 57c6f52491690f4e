"""Finitary k-linear categories presented by Hom bases and structure constants."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field as dc_field
from typing import Optional

from .field import Field
from .linalg import Subspace, nullspace, solve, transpose


class FormatError(ValueError):
    """Structure constants with the wrong shape, dangling labels and similar."""


class ContractViolation(ValueError):
    """An operation was called with ill-typed arguments."""


class RadicalUnavailable(RuntimeError):
    pass


class Obj:
    """A formal direct sum of indecomposables.

    ``==`` compares multisets.  Code that depends on the order of summands
    (block layouts) compares ``.summands`` directly.
    """

    __slots__ = ("summands",)

    def __init__(self, summands=()):
        if isinstance(summands, str):
            summands = (summands,)
        self.summands = tuple(summands)

    def __len__(self):
        return len(self.summands)

    def __iter__(self):
        return iter(self.summands)

    def __getitem__(self, i):
        return self.summands[i]

    def __add__(self, other: "Obj") -> "Obj":
        return Obj(self.summands + other.summands)

    def __eq__(self, other):
        return isinstance(other, Obj) and Counter(self.summands) == Counter(other.summands)

    def __hash__(self):
        return hash(tuple(sorted(self.summands)))

    def counts(self) -> Counter:
        return Counter(self.summands)

    def is_zero(self) -> bool:
        return not self.summands

    def __repr__(self):
        if not self.summands:
            return "0"
        return "+".join(self.summands)


def obj(*labels) -> Obj:
    return Obj(labels)


class CatPresentation:
    """Indecomposable labels, Hom dimensions, composition constants, identities.

    ``comp[(X, Y, Z)][j][i]`` is the coordinate vector of ``b_j o b_i`` in
    Hom(X, Z), for ``b_i`` in Hom(X, Y) and ``b_j`` in Hom(Y, Z).
    """

    def __init__(self, field: Field, objects, homdim, comp, ident, basis_names=None,
                 check_shapes: bool = True):
        self.field = field
        self.objects = list(objects)
        self.homdim = {k: v for k, v in homdim.items() if v}
        self.comp = comp
        self.ident = ident
        self.basis_names = basis_names or {}
        if check_shapes:
            self._check_shapes()
        self._cs = {}
        for key, table in comp.items():
            sp = []
            for row in table:
                sp.append([tuple((k, x) for k, x in enumerate(vec) if x) for vec in row])
            self._cs[key] = sp
        self._inv_cache = {}

    def _check_shapes(self):
        labels = set(self.objects)
        if len(labels) != len(self.objects):
            raise FormatError("duplicate object labels")
        for (x, y) in self.homdim:
            if x not in labels or y not in labels:
                raise FormatError("Hom dimension for unknown pair (%s, %s)" % (x, y))
        for x in self.objects:
            if self.hd(x, x) == 0:
                raise FormatError("End(%s) is zero; indecomposables have identities" % x)
            v = self.ident.get(x)
            if v is None or len(v) != self.hd(x, x):
                raise FormatError("identity of %s has wrong length" % x)
        for x in self.objects:
            for y in self.objects:
                for z in self.objects:
                    a, b, c = self.hd(x, y), self.hd(y, z), self.hd(x, z)
                    if not a or not b:
                        continue
                    t = self.comp.get((x, y, z))
                    if t is None:
                        raise FormatError("missing structure constants for cell (%s, %s, %s)" % (x, y, z))
                    if len(t) != b or any(len(r) != a for r in t):
                        raise FormatError("structure constants of cell (%s, %s, %s) have wrong shape" % (x, y, z))
                    for r in t:
                        for vec in r:
                            if len(vec) != c:
                                raise FormatError("structure-constant vector of wrong length in cell (%s, %s, %s)" % (x, y, z))

    # -- scalars and vectors ------------------------------------------------

    @property
    def zero(self):
        return self.field.zero

    @property
    def one(self):
        return self.field.one

    def hd(self, x, y) -> int:
        return self.homdim.get((x, y), 0)

    def zvec(self, x, y) -> list:
        return [self.field.zero] * self.hd(x, y)

    def unit_vec(self, x, y, i) -> list:
        v = self.zvec(x, y)
        v[i] = self.field.one
        return v

    def name(self, x, y, i) -> str:
        names = self.basis_names.get((x, y))
        if names:
            return names[i]
        return "b%d:%s->%s" % (i, x, y)

    def compose_vec(self, x, y, z, g, f) -> list:
        """Coordinates of g o f for f in Hom(x, y), g in Hom(y, z)."""
        out = self.zvec(x, z)
        if not out:
            return out
        table = self._cs.get((x, y, z))
        if table is None:
            return out
        fi = [(i, a) for i, a in enumerate(f) if a]
        if not fi:
            return out
        for j, b in enumerate(g):
            if not b:
                continue
            row = table[j]
            for i, a in fi:
                ab = a * b
                for k, c in row[i]:
                    out[k] = out[k] + ab * c
        return out

    # -- morphisms ----------------------------------------------------------

    def zero_mor(self, src: Obj, dst: Obj) -> "Mor":
        return Mor(self, src, dst, [[self.zvec(s, t) for s in src] for t in dst])

    def identity(self, a: Obj) -> "Mor":
        m = self.zero_mor(a, a)
        for i, x in enumerate(a):
            m.blocks[i][i] = list(self.ident[x])
        return m

    def basis_mor(self, x, y, i) -> "Mor":
        return Mor(self, Obj((x,)), Obj((y,)), [[self.unit_vec(x, y, i)]])

    def inclusion(self, a: Obj, k: int) -> "Mor":
        """The k-th summand inclusion into a."""
        m = self.zero_mor(Obj((a[k],)), a)
        m.blocks[k][0] = list(self.ident[a[k]])
        return m

    def projection(self, a: Obj, k: int) -> "Mor":
        m = self.zero_mor(a, Obj((a[k],)))
        m.blocks[0][k] = list(self.ident[a[k]])
        return m

    def compose(self, g: "Mor", f: "Mor") -> "Mor":
        if g.src.summands != f.dst.summands:
            raise ContractViolation("cannot compose: %r -> %r after %r -> %r" % (g.src, g.dst, f.src, f.dst))
        out = self.zero_mor(f.src, g.dst)
        mids = f.dst.summands
        for t, z in enumerate(g.dst):
            grow = g.blocks[t]
            orow = out.blocks[t]
            for m, y in enumerate(mids):
                gv = grow[m]
                if not any(gv):
                    continue
                frow = f.blocks[m]
                for s, x in enumerate(f.src):
                    fv = frow[s]
                    if not any(fv):
                        continue
                    v = self.compose_vec(x, y, z, gv, fv)
                    acc = orow[s]
                    orow[s] = [p + q for p, q in zip(acc, v)]
        return out

    def compose_all(self, *ms: "Mor") -> "Mor":
        """compose_all(h, g, f) = h o g o f."""
        out = ms[-1]
        for m in reversed(ms[:-1]):
            out = self.compose(m, out)
        return out

    def hom_basis(self, a: Obj, b: Obj) -> list:
        """Basis of Hom(a, b) as Mors, ordered like the flat coordinates."""
        out = []
        n = hom_dim(self, a, b)
        for k in range(n):
            v = [self.field.zero] * n
            v[k] = self.field.one
            out.append(Mor.from_flat(self, a, b, v))
        return out

    def solve_linear(self, dom: Obj, cod: Obj, fn, target) -> Optional["Mor"]:
        """Find x: dom -> cod with fn(x) == target, for fn linear in x."""
        basis = self.hom_basis(dom, cod)
        t = target.flat()
        if not basis:
            return self.zero_mor(dom, cod) if not any(t) else None
        cols = [fn(b).flat() for b in basis]
        rows = transpose(cols, len(cols), len(t))
        x = solve(rows, t, len(basis), self.field.zero)
        if x is None:
            return None
        return Mor.from_flat(self, dom, cod, x)

    def inverse(self, f: "Mor") -> "Mor":
        key = None
        if len(f.src) == 1 and len(f.dst) == 1:
            key = (f.src.summands, f.dst.summands, tuple(tuple(b) for r in f.blocks for b in r))
            hit = self._inv_cache.get(key)
            if hit is not None:
                return hit
        g = self.solve_linear(f.dst, f.src, lambda x: self.compose(x, f), self.identity(f.src))
        if g is None or self.compose(f, g) != self.identity(f.dst):
            raise ValueError("morphism %r -> %r is not invertible" % (f.src, f.dst))
        if key is not None:
            self._inv_cache[key] = g
        return g

    def is_iso(self, f: "Mor") -> bool:
        try:
            self.inverse(f)
        except ValueError:
            return False
        return True

    def opposite(self) -> "CatPresentation":
        homdim = {(y, x): d for (x, y), d in self.homdim.items()}
        comp = {}
        for x in self.objects:
            for y in self.objects:
                for z in self.objects:
                    # in the opposite, b_j o_op b_i = b_i o b_j with b_i: y->x, b_j: z->y
                    a, b = self.hd(y, x), self.hd(z, y)
                    if not a or not b:
                        continue
                    tab = self.comp[(z, y, x)]
                    comp[(x, y, z)] = [[list(tab[i][j]) for i in range(a)] for j in range(b)]
        names = {(y, x): v for (x, y), v in self.basis_names.items()}
        return CatPresentation(self.field, self.objects, homdim, comp, dict(self.ident), names)


def hom_dim(cat: CatPresentation, a: Obj, b: Obj) -> int:
    return sum(cat.hd(x, y) for y in b for x in a)


class Mor:
    """A morphism between formal objects as a block matrix of coordinate vectors.

    ``blocks[t][s]`` lies in Hom(src[s], dst[t]).
    """

    __slots__ = ("cat", "src", "dst", "blocks")

    def __init__(self, cat: CatPresentation, src: Obj, dst: Obj, blocks):
        self.cat = cat
        self.src = src
        self.dst = dst
        self.blocks = blocks

    def flat(self) -> list:
        out = []
        for row in self.blocks:
            for v in row:
                out.extend(v)
        return out

    @classmethod
    def from_flat(cls, cat, src: Obj, dst: Obj, vec) -> "Mor":
        blocks = []
        pos = 0
        for t in dst:
            row = []
            for s in src:
                d = cat.hd(s, t)
                row.append(list(vec[pos:pos + d]))
                pos += d
            blocks.append(row)
        if pos != len(vec):
            raise ContractViolation("flat vector of length %d does not fit %r -> %r" % (len(vec), src, dst))
        return cls(cat, src, dst, blocks)

    def _check_same(self, other):
        if self.src.summands != other.src.summands or self.dst.summands != other.dst.summands:
            raise ContractViolation("shape mismatch: %r->%r vs %r->%r" % (self.src, self.dst, other.src, other.dst))

    def __add__(self, other: "Mor") -> "Mor":
        self._check_same(other)
        return Mor(self.cat, self.src, self.dst,
                   [[[p + q for p, q in zip(a, b)] for a, b in zip(r1, r2)]
                    for r1, r2 in zip(self.blocks, other.blocks)])

    def __neg__(self) -> "Mor":
        return self.scale(-self.cat.field.one)

    def __sub__(self, other: "Mor") -> "Mor":
        return self + (-other)

    def scale(self, c) -> "Mor":
        return Mor(self.cat, self.src, self.dst, [[[c * p for p in v] for v in r] for r in self.blocks])

    def __rmul__(self, c) -> "Mor":
        return self.scale(c)

    def is_zero(self) -> bool:
        return not any(x for r in self.blocks for v in r for x in v)

    def __eq__(self, other):
        if not isinstance(other, Mor):
            return NotImplemented
        if self.src.summands != other.src.summands or self.dst.summands != other.dst.summands:
            return False
        return self.flat() == other.flat()

    __hash__ = None

    def __repr__(self):
        return "Mor(%r -> %r)" % (self.src, self.dst)


@dataclass
class ValidationReport:
    ok: bool
    failures: list = dc_field(default_factory=list)
    checked: dict = dc_field(default_factory=dict)

    def first(self):
        return self.failures[0] if self.failures else None


def validate_presentation(cat: CatPresentation, limit: int = 10) -> ValidationReport:
    """Associativity on basis triples and the identity laws."""
    cat._check_shapes()
    fails = []
    n_assoc = n_id = 0
    objs = cat.objects
    for x in objs:
        for y in objs:
            dxy = cat.hd(x, y)
            if not dxy:
                continue
            for i in range(dxy):
                b = cat.unit_vec(x, y, i)
                n_id += 1
                if cat.compose_vec(x, y, y, cat.ident[y], b) != b or cat.compose_vec(x, x, y, b, cat.ident[x]) != b:
                    if len(fails) < limit:
                        fails.append({"law": "identity", "objects": [x, y], "morphism": cat.name(x, y, i)})
    for x in objs:
        for y in objs:
            dxy = cat.hd(x, y)
            if not dxy:
                continue
            for z in objs:
                dyz = cat.hd(y, z)
                if not dyz:
                    continue
                for w in objs:
                    dzw = cat.hd(z, w)
                    if not dzw:
                        continue
                    for i in range(dxy):
                        bi = cat.unit_vec(x, y, i)
                        for j in range(dyz):
                            bj = cat.unit_vec(y, z, j)
                            ji = cat.compose_vec(x, y, z, bj, bi)
                            for k in range(dzw):
                                bk = cat.unit_vec(z, w, k)
                                n_assoc += 1
                                lhs = cat.compose_vec(x, z, w, bk, ji)
                                rhs = cat.compose_vec(x, y, w, cat.compose_vec(y, z, w, bk, bj), bi)
                                if lhs != rhs and len(fails) < limit:
                                    fails.append({"law": "associativity", "objects": [x, y, z, w],
                                                  "morphisms": [cat.name(x, y, i), cat.name(y, z, j), cat.name(z, w, k)]})
    return ValidationReport(not fails, fails, {"associativity": n_assoc, "identity": n_id})


class IdealData:
    """Subspaces I(X, Y) of Hom(X, Y) for every ordered pair of indecomposables."""

    def __init__(self, cat: CatPresentation, spaces: dict):
        self.cat = cat
        self.spaces = spaces

    @classmethod
    def zero(cls, cat) -> "IdealData":
        return cls(cat, {(x, y): Subspace(cat.hd(x, y), [], cat.zero, cat.one)
                         for x in cat.objects for y in cat.objects})

    @classmethod
    def full(cls, cat) -> "IdealData":
        sp = {}
        for x in cat.objects:
            for y in cat.objects:
                d = cat.hd(x, y)
                sp[(x, y)] = Subspace(d, [cat.unit_vec(x, y, i) for i in range(d)], cat.zero, cat.one)
        return cls(cat, sp)

    def __getitem__(self, key) -> Subspace:
        return self.spaces[key]

    def dims(self) -> dict:
        return {k: s.dim for k, s in self.spaces.items()}

    def total_dim(self) -> int:
        return sum(s.dim for s in self.spaces.values())

    def is_zero(self) -> bool:
        return self.total_dim() == 0

    def contains_mor(self, f: Mor) -> bool:
        for t, y in enumerate(f.dst):
            for s, x in enumerate(f.src):
                if not self.spaces[(x, y)].contains(f.blocks[t][s]):
                    return False
        return True

    def is_ideal(self) -> bool:
        """Closed under composition with basis morphisms on both sides."""
        cat = self.cat
        for (x, y), sp in self.spaces.items():
            for v in sp.basis():
                for z in cat.objects:
                    for k in range(cat.hd(y, z)):
                        if not self.spaces[(x, z)].contains(cat.compose_vec(x, y, z, cat.unit_vec(y, z, k), v)):
                            return False
                    for k in range(cat.hd(z, x)):
                        if not self.spaces[(z, y)].contains(cat.compose_vec(z, x, y, v, cat.unit_vec(z, x, k))):
                            return False
        return True

    def __eq__(self, other):
        return isinstance(other, IdealData) and all(self.spaces[k] == other.spaces[k] for k in self.spaces)

    def __le__(self, other):
        return all(self.spaces[k] <= other.spaces[k] for k in self.spaces)


def _end_mult(cat: CatPresentation, x):
    d = cat.hd(x, x)
    return lambda a, b: cat.compose_vec(x, x, x, a, b), d


def _left_regular(cat, x, a):
    """Matrix of b -> a o b on End(x)."""
    mul, d = _end_mult(cat, x)
    cols = [mul(a, cat.unit_vec(x, x, i)) for i in range(d)]
    return transpose(cols, d, d)


def _trace(m):
    acc = 0
    for i in range(len(m)):
        acc = acc + m[i][i]
    return acc


def end_radical(cat: CatPresentation, x) -> Subspace:
    """Jacobson radical of End(x)."""
    f = cat.field
    mul, d = _end_mult(cat, x)
    basis = [cat.unit_vec(x, x, i) for i in range(d)]
    commutative = all(mul(a, b) == mul(b, a) for a in basis for b in basis)
    if f.char == 0 or d < f.char:
        # kernel of the trace form of the left regular representation
        gram = [[f(_trace(_left_regular(cat, x, mul(a, b)))) for b in basis] for a in basis]
        ker = nullspace(transpose(gram, d, d), d, f.zero, f.one)
        return Subspace(d, ker, f.zero, f.one)
    if commutative:
        # over GF(p) the Frobenius a -> a^p is linear; J is the kernel of a high power
        def frob(a):
            out = a
            for _ in range(f.char - 1):
                out = mul(out, a)
            return out
        steps = 1
        while f.char ** steps < d:
            steps += 1
        imgs = []
        for a in basis:
            v = a
            for _ in range(steps):
                v = frob(v)
            imgs.append(v)
        ker = nullspace(transpose(imgs, d, d), d, f.zero, f.one)
        return Subspace(d, ker, f.zero, f.one)
    raise RadicalUnavailable("End(%s) is non-commutative of dimension %d >= characteristic %d"
                             % (x, d, f.char))


def radical(cat: CatPresentation) -> IdealData:
    """The radical ideal: J(End X) on the diagonal, maps that are never invertible elsewhere."""
    jac = {x: end_radical(cat, x) for x in cat.objects}
    spaces = {}
    for x in cat.objects:
        for y in cat.objects:
            if x == y:
                spaces[(x, y)] = jac[x]
                continue
            d = cat.hd(x, y)
            back = cat.hd(y, x)
            if not d or not back:
                spaces[(x, y)] = Subspace(d, [cat.unit_vec(x, y, i) for i in range(d)], cat.zero, cat.one)
                continue
            # f in Rad iff g o f lies in J(End x) for every basis g: y -> x
            eqs = []
            jx = jac[x]
            # a complement functional for J: equations whose kernel is J
            ann = nullspace(jx.basis(), cat.hd(x, x), cat.zero, cat.one) if jx.dim else \
                [cat.unit_vec(x, x, i) for i in range(cat.hd(x, x))]
            for k in range(back):
                g = cat.unit_vec(y, x, k)
                cols = [cat.compose_vec(x, y, x, g, cat.unit_vec(x, y, i)) for i in range(d)]
                for phi in ann:
                    eqs.append([sum((p * q for p, q in zip(phi, c)), cat.zero) for c in cols])
            spaces[(x, y)] = Subspace(d, nullspace(eqs, d, cat.zero, cat.one), cat.zero, cat.one)
    return IdealData(cat, spaces)


def local_defects(cat: CatPresentation) -> dict:
    """dim End(X)/Rad for every X whose endomorphism ring is not split local."""
    rad = radical(cat)
    out = {}
    for x in cat.objects:
        q = cat.hd(x, x) - rad[(x, x)].dim
        if q != 1:
            out[x] = q
    return out


def split_test(cat: CatPresentation, f, direction: str):
    """A one-sided inverse s of f (f o s = id for 'epi', s o f = id for 'mono'), or None."""
    if not isinstance(f, Mor):
        return f.split(direction)
    if direction == "epi":
        return cat.solve_linear(f.dst, f.src, lambda s: cat.compose(f, s), cat.identity(f.dst))
    if direction == "mono":
        return cat.solve_linear(f.dst, f.src, lambda s: cat.compose(s, f), cat.identity(f.src))
    raise ValueError("direction must be 'epi' or 'mono'")
