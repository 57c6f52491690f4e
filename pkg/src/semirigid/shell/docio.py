"""Reading and writing documents: one JSON text with a ``format: 1`` header.

Scalars are strings ("3", "-1/2" over Q, decimal residues over GF(p)).
Structure constants and morphism blocks are stored sparsely as
``[i, j, vector]`` triples; absent entries are zero.
"""

from __future__ import annotations

import json
from typing import Optional

from ..fincat import CatPresentation, ContractViolation, Field, FormatError, Mor, Obj
from ..rigidity import AdjunctionData, RigidityCertificate, adjunction_from_components, templates
from ..semicat import ActionData, SemigroupData, subst
from .generators import Document

FORMAT = 1
FAMILIES = ("eta_l", "eps_l", "eta_r", "eps_r")


class DocumentError(FormatError):
    """A format error carrying the location it was found at."""

    def __init__(self, where: str, msg: str):
        super().__init__("%s: %s" % (where, msg))
        self.where = where


# ---------------------------------------------------------------------------
# writing

def _vec(field: Field, v) -> list:
    return [field.fmt(x) for x in v]


def _sparse_vec(field: Field, v):
    return _vec(field, v) if any(v) else None


def _mor(field: Field, m: Mor) -> dict:
    blocks = []
    for t, row in enumerate(m.blocks):
        for s, v in enumerate(row):
            if any(v):
                blocks.append([t, s, _vec(field, v)])
    return {"src": list(m.src), "dst": list(m.dst), "blocks": blocks}


def _category(cat: CatPresentation) -> dict:
    f = cat.field
    hom = []
    for x in cat.objects:
        for y in cat.objects:
            d = cat.hd(x, y)
            if d:
                names = cat.basis_names.get((x, y))
                hom.append([x, y, d] + ([list(names)] if names else []))
    comp = []
    for (x, y, z) in sorted(cat.comp, key=lambda k: (cat.objects.index(k[0]), cat.objects.index(k[1]),
                                                     cat.objects.index(k[2]))):
        table = cat.comp[(x, y, z)]
        entries = []
        for j, row in enumerate(table):
            for i, v in enumerate(row):
                if any(v):
                    entries.append([i, j, _vec(f, v)])
        comp.append([x, y, z, entries])
    return {"objects": list(cat.objects), "hom": hom, "comp": comp,
            "identity": {x: _vec(f, cat.ident[x]) for x in cat.objects}}


def _action(field: Field, act: ActionData) -> dict:
    return {
        "objects": [[a, x, list(v)] for (a, x), v in sorted(act.act_obj.items())],
        "morphisms": [list(k) + [_mor(field, m)] for k, m in sorted(act.act_mor.items(), key=lambda kv: str(kv[0]))],
        "mult": [list(k) + [_mor(field, m)] for k, m in sorted(act.mult.items())],
    }


def _leaf_labels(t, where):
    if not isinstance(t, Obj):
        raise DocumentError(where, "only single-object duals can be stored")
    return list(t)


def _adjunction(field: Field, adj: AdjunctionData) -> dict:
    out = {"F": _leaf_labels(adj.F, "certificate"), "Fd": _leaf_labels(adj.Fd, "certificate")}
    for n in FAMILIES:
        fam = getattr(adj, n)
        out[n] = {x: _mor(field, m) for x, m in sorted(fam.comps.items())}
    return out


def to_json(doc: Document) -> dict:
    S = doc.semigroup
    f = doc.field
    out = {
        "format": FORMAT,
        "field": f.name,
        "category": _category(doc.category),
        "semigroup": {
            "tensor": [[a, b, list(v)] for (a, b), v in sorted(S.obj_tensor.items())],
            "mor_tensor": [list(k) + [_mor(f, m)] for k, m in sorted(S.mor_tensor.items(), key=lambda kv: str(kv[0]))],
            "assoc": [list(k) + [_mor(f, m)] for k, m in sorted(S.assoc.items())],
            "braid": ([[a, b, _mor(f, m)] for (a, b), m in sorted(S.braid.items())]
                      if S.braid is not None else None),
        },
        "certificate": None,
        "modules": {},
        "meta": doc.meta,
    }
    if doc.certificate is not None:
        c = doc.certificate
        out["certificate"] = {"right": [_adjunction(f, c.right[x]) for x in sorted(c.right)],
                              "left": [_adjunction(f, c.left[x]) for x in sorted(c.left)],
                              "notes": list(c.notes)}
    for name, act in sorted(doc.modules.items()):
        if act is S or act.base is S.base and act.act_obj == S.act_obj:
            out["modules"][name] = {"regular": True}
        else:
            out["modules"][name] = {"category": _category(act.base), "action": _action(f, act)}
    return out


def dumps(doc: Document) -> str:
    return json.dumps(to_json(doc), indent=1, sort_keys=True, ensure_ascii=False) + "\n"


def store(doc: Document, path: str):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(doc))


# ---------------------------------------------------------------------------
# reading

def _need(d, key, where, kind=None):
    if not isinstance(d, dict) or key not in d:
        raise DocumentError(where, "missing key %r" % key)
    v = d[key]
    if kind is not None and not isinstance(v, kind):
        raise DocumentError("%s.%s" % (where, key), "expected %s" % kind.__name__)
    return v


def _scalars(field: Field, v, where) -> list:
    if not isinstance(v, list):
        raise DocumentError(where, "expected a list of scalars")
    out = []
    for i, x in enumerate(v):
        if not isinstance(x, (str, int)) or isinstance(x, bool):
            raise DocumentError("%s[%d]" % (where, i), "scalars are strings or integers")
        try:
            out.append(field(x))
        except (ValueError, ZeroDivisionError) as exc:
            raise DocumentError("%s[%d]" % (where, i), "malformed scalar %r (%s)" % (x, exc)) from None
    return out


def _labels(cat: CatPresentation, v, where) -> Obj:
    if not isinstance(v, list):
        raise DocumentError(where, "expected a list of object labels")
    for lab in v:
        if lab not in cat.objects:
            raise DocumentError(where, "dangling object label %r" % (lab,))
    return Obj(v)


def _read_mor(cat: CatPresentation, d, where, src: Optional[Obj] = None, dst: Optional[Obj] = None) -> Mor:
    s = _labels(cat, _need(d, "src", where, list), where + ".src")
    t = _labels(cat, _need(d, "dst", where, list), where + ".dst")
    if src is not None and s.summands != src.summands:
        raise DocumentError(where, "source %s, expected %s" % (list(s), list(src)))
    if dst is not None and t.summands != dst.summands:
        raise DocumentError(where, "target %s, expected %s" % (list(t), list(dst)))
    m = cat.zero_mor(s, t)
    for k, e in enumerate(_need(d, "blocks", where, list)):
        w = "%s.blocks[%d]" % (where, k)
        if not (isinstance(e, list) and len(e) == 3 and isinstance(e[0], int) and isinstance(e[1], int)):
            raise DocumentError(w, "expected [row, column, vector]")
        r, c, v = e
        if not (0 <= r < len(t) and 0 <= c < len(s)):
            raise DocumentError(w, "block index out of range")
        vec = _scalars(cat.field, v, w)
        if len(vec) != cat.hd(s[c], t[r]):
            raise DocumentError(w, "vector of length %d for Hom(%s, %s) of dimension %d"
                                % (len(vec), s[c], t[r], cat.hd(s[c], t[r])))
        m.blocks[r][c] = vec
    return m


def _read_category(field: Field, d, where) -> CatPresentation:
    objects = _need(d, "objects", where, list)
    if not all(isinstance(x, str) for x in objects):
        raise DocumentError(where + ".objects", "object labels are strings")
    if len(set(objects)) != len(objects):
        raise DocumentError(where + ".objects", "duplicate object labels")
    homdim, names = {}, {}
    for k, e in enumerate(_need(d, "hom", where, list)):
        w = "%s.hom[%d]" % (where, k)
        if not isinstance(e, list) or len(e) not in (3, 4):
            raise DocumentError(w, "expected [X, Y, dim] or [X, Y, dim, names]")
        x, y, n = e[:3]
        for lab in (x, y):
            if lab not in objects:
                raise DocumentError(w, "dangling object label %r" % (lab,))
        if not isinstance(n, int) or n < 0:
            raise DocumentError(w, "dimension must be a nonnegative integer")
        homdim[(x, y)] = n
        if len(e) == 4:
            if not isinstance(e[3], list) or len(e[3]) != n:
                raise DocumentError(w, "need one basis name per dimension")
            names[(x, y)] = list(e[3])
    hd = lambda x, y: homdim.get((x, y), 0)
    comp = {}
    for k, e in enumerate(_need(d, "comp", where, list)):
        w = "%s.comp[%d]" % (where, k)
        if not isinstance(e, list) or len(e) != 4:
            raise DocumentError(w, "expected [X, Y, Z, entries]")
        x, y, z, entries = e
        for lab in (x, y, z):
            if lab not in objects:
                raise DocumentError(w, "dangling object label %r" % (lab,))
        cell = "cell (%s, %s, %s)" % (x, y, z)
        a, b, c = hd(x, y), hd(y, z), hd(x, z)
        table = [[[field.zero] * c for _ in range(a)] for _ in range(b)]
        if not isinstance(entries, list):
            raise DocumentError(w, "entries of %s must be a list" % cell)
        for q, ent in enumerate(entries):
            wq = "%s[%d]" % (w, q)
            if not (isinstance(ent, list) and len(ent) == 3 and isinstance(ent[0], int) and isinstance(ent[1], int)):
                raise DocumentError(wq, "expected [i, j, vector] in %s" % cell)
            i, j, v = ent
            if not (0 <= i < a and 0 <= j < b):
                raise DocumentError(wq, "index out of range in %s" % cell)
            vec = _scalars(field, v, wq)
            if len(vec) != c:
                raise DocumentError(wq, "structure-constant vector of length %d, expected %d in %s"
                                    % (len(vec), c, cell))
            table[j][i] = vec
        comp[(x, y, z)] = table
    ident = {}
    idd = _need(d, "identity", where, dict)
    for x in objects:
        if x not in idd:
            raise DocumentError(where + ".identity", "no identity for %r" % x)
        ident[x] = _scalars(field, idd[x], "%s.identity.%s" % (where, x))
    for x in objects:
        for y in objects:
            for z in objects:
                if hd(x, y) and hd(y, z) and (x, y, z) not in comp:
                    comp[(x, y, z)] = [[[field.zero] * hd(x, z) for _ in range(hd(x, y))] for _ in range(hd(y, z))]
    try:
        return CatPresentation(field, objects, homdim, comp, ident, names)
    except FormatError as exc:
        raise DocumentError(where, str(exc)) from None


def _read_action(S: SemigroupData, M: CatPresentation, d, where, regular: bool):
    if regular:
        tensor = _need(d, "tensor", where, list)
        mors = _need(d, "mor_tensor", where, list)
        mults = _need(d, "assoc", where, list)
    else:
        tensor = _need(d, "objects", where, list)
        mors = _need(d, "morphisms", where, list)
        mults = _need(d, "mult", where, list)
    scat = M if regular else S.base
    act_obj = {}
    for k, e in enumerate(tensor):
        w = "%s.objects[%d]" % (where, k)
        if not isinstance(e, list) or len(e) != 3:
            raise DocumentError(w, "expected [F, X, labels]")
        a, x, v = e
        if a not in scat.objects or x not in M.objects:
            raise DocumentError(w, "dangling object label")
        act_obj[(a, x)] = tuple(_labels(M, v, w))

    def image(a, x):
        return Obj(act_obj.get((a, x), ()))

    act_mor = {}
    for k, e in enumerate(mors):
        w = "%s.morphisms[%d]" % (where, k)
        if not isinstance(e, list) or len(e) != 7:
            raise DocumentError(w, "expected [F, F2, i, X, X2, j, morphism]")
        a, a2, i, x, x2, j, m = e
        if a not in scat.objects or a2 not in scat.objects or x not in M.objects or x2 not in M.objects:
            raise DocumentError(w, "dangling object label")
        if not (0 <= i < scat.hd(a, a2) and 0 <= j < M.hd(x, x2)):
            raise DocumentError(w, "basis index out of range")
        act_mor[(a, a2, i, x, x2, j)] = _read_mor(M, m, w, image(a, x), image(a2, x2))
    mult = {}
    for k, e in enumerate(mults):
        w = "%s.mult[%d]" % (where, k)
        if not isinstance(e, list) or len(e) != 4:
            raise DocumentError(w, "expected [G, F, X, morphism]")
        g, f, x, m = e
        mult[(g, f, x)] = _read_mor(M, m, w)
    return act_obj, act_mor, mult


def _read_certificate(S: SemigroupData, d, where) -> RigidityCertificate:
    c = S.calc()
    cert = RigidityCertificate(notes=list(d.get("notes", [])))
    for side in ("right", "left"):
        for k, a in enumerate(_need(d, side, where, list)):
            w = "%s.%s[%d]" % (where, side, k)
            F = _labels(S.base, _need(a, "F", w, list), w + ".F")
            Fd = _labels(S.base, _need(a, "Fd", w, list), w + ".Fd")
            t = templates(F, Fd)
            comps = {}
            for n in FAMILIES:
                fam = _need(a, n, w, dict)
                comps[n] = {}
                for x in S.base.objects:
                    if x not in fam:
                        raise DocumentError("%s.%s" % (w, n), "no component at %r" % x)
                    X = Obj((x,))
                    src, dst = c.ob(subst(t[n][0], X)), c.ob(subst(t[n][1], X))
                    comps[n][x] = _read_mor(S.base, fam[x], "%s.%s.%s" % (w, n, x), src, dst)
            adj = adjunction_from_components(S, F, Fd, comps)
            key = (F if side == "right" else Fd)
            if len(key) != 1:
                raise DocumentError(w, "the dualized object must be indecomposable")
            getattr(cert, side)[key[0]] = adj
    return cert


def from_json(data, field_override: Optional[Field] = None) -> Document:
    if not isinstance(data, dict):
        raise DocumentError("$", "top level must be an object")
    if data.get("format") != FORMAT:
        raise DocumentError("$.format", "unsupported format %r (expected %d)" % (data.get("format"), FORMAT))
    fname = _need(data, "field", "$", str)
    try:
        field = Field.from_name(fname)
    except ValueError as exc:
        raise DocumentError("$.field", str(exc)) from None
    if field_override is not None and field_override != field:
        raise DocumentError("$.field", "document is over %s but %s was requested" % (field.name, field_override.name))
    cat = _read_category(field, _need(data, "category", "$", dict), "$.category")
    sg = _need(data, "semigroup", "$", dict)
    obj_t, mor_t, assoc = _read_action(None, cat, sg, "$.semigroup", regular=True)
    braid = None
    if sg.get("braid") is not None:
        braid = {}
        for k, e in enumerate(sg["braid"]):
            w = "$.semigroup.braid[%d]" % k
            if not isinstance(e, list) or len(e) != 3:
                raise DocumentError(w, "expected [X, Y, morphism]")
            braid[(e[0], e[1])] = _read_mor(cat, e[2], w)
    try:
        S = SemigroupData(cat, obj_t, mor_t, assoc, braid=braid)
    except (FormatError, ContractViolation) as exc:
        raise DocumentError("$.semigroup", str(exc)) from None
    doc = Document(field, cat, S, meta=data.get("meta") or {})
    if data.get("certificate") is not None:
        doc.certificate = _read_certificate(S, data["certificate"], "$.certificate")
    for name, md in (data.get("modules") or {}).items():
        w = "$.modules.%s" % name
        if md.get("regular"):
            doc.modules[name] = S
            continue
        M = _read_category(field, _need(md, "category", w, dict), w + ".category")
        ao, am, mu = _read_action(S, M, _need(md, "action", w, dict), w + ".action", regular=False)
        doc.modules[name] = ActionData(S, M, ao, am, mu)
    return doc


def loads(text: str, field_override: Optional[Field] = None) -> Document:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError("line %d column %d" % (exc.lineno, exc.colno), exc.msg) from None
    return from_json(data, field_override)


def load(path: str, field_override: Optional[Field] = None) -> Document:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read(), field_override)
