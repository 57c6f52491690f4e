"""Exact linear algebra over a Field, built on an incremental sparse echelon form.

Vectors are plain lists, matrices are lists of rows.  Entries are whatever the
field produces (Fractions or Residues); only ``+ - * /`` and truthiness are used.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional


def _sparse(v) -> dict:
    if isinstance(v, dict):
        return {c: x for c, x in v.items() if x}
    return {c: x for c, x in enumerate(v) if x}


class Echelon:
    """Reduced row-echelon basis of a growing row space.

    Each stored row has a 1 in its pivot column and 0 in every other pivot
    column, so reducing a vector takes a single pass.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.rows: dict[int, dict] = {}

    @property
    def rank(self) -> int:
        return len(self.rows)

    @property
    def pivots(self) -> list[int]:
        return sorted(self.rows)

    def reduce(self, v) -> dict:
        r = _sparse(v)
        for c in [c for c in r if c in self.rows]:
            coef = r.get(c)
            if not coef:
                continue
            for k, x in self.rows[c].items():
                y = r.get(k, 0) - coef * x
                if y:
                    r[k] = y
                else:
                    r.pop(k, None)
        return r

    def add(self, v) -> bool:
        """Insert a row; returns False when it was already in the span."""
        r = self.reduce(v)
        if not r:
            return False
        c = min(r)
        inv = 1 / r[c]
        r = {k: x * inv for k, x in r.items()}
        for row in self.rows.values():
            coef = row.get(c)
            if coef:
                for k, x in r.items():
                    y = row.get(k, 0) - coef * x
                    if y:
                        row[k] = y
                    else:
                        row.pop(k, None)
        self.rows[c] = r
        return True

    def contains(self, v) -> bool:
        return not self.reduce(v)

    def coords(self, v) -> Optional[dict]:
        """Coefficients on the stored rows (keyed by pivot) if v is in the span."""
        r = self.reduce(v)
        if r:
            return None
        s = _sparse(v)
        return {c: s[c] for c in self.rows if c in s}

    def dense_rows(self, zero) -> list[list]:
        out = []
        for c in self.pivots:
            row = [zero] * self.ncols
            for k, x in self.rows[c].items():
                row[k] = x
            out.append(row)
        return out


def echelon(rows, ncols: int) -> Echelon:
    e = Echelon(ncols)
    for r in rows:
        e.add(r)
    return e


def rank(rows, ncols: Optional[int] = None) -> int:
    rows = list(rows)
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    return echelon(rows, ncols).rank


def nullspace(rows, ncols: int, zero, one) -> list[list]:
    """Basis of {x : row . x = 0 for every row}."""
    e = echelon(rows, ncols)
    piv = e.rows
    out = []
    for f in range(ncols):
        if f in piv:
            continue
        x = [zero] * ncols
        x[f] = one
        for c, row in piv.items():
            a = row.get(f)
            if a:
                x[c] = -a
        out.append(x)
    return out


def solve(rows, rhs, ncols: int, zero) -> Optional[list]:
    """A particular solution of A x = rhs, or None when inconsistent."""
    e = Echelon(ncols + 1)
    for r, b in zip(rows, rhs):
        s = _sparse(r)
        if b:
            s[ncols] = b
        e.add(s)
    if ncols in e.rows:
        return None
    x = [zero] * ncols
    for c, row in e.rows.items():
        b = row.get(ncols)
        if b:
            x[c] = b
    return x


def transpose(m, nrows: Optional[int] = None, ncols: Optional[int] = None):
    if nrows is None:
        nrows = len(m)
    if ncols is None:
        ncols = len(m[0]) if m else 0
    return [[m[i][j] for i in range(nrows)] for j in range(ncols)]


def matmul(a, b, zero):
    if not a:
        return []
    inner = len(b)
    ncols = len(b[0]) if b else 0
    out = []
    for row in a:
        acc = [zero] * ncols
        for k in range(inner):
            x = row[k]
            if x:
                bk = b[k]
                for j in range(ncols):
                    y = bk[j]
                    if y:
                        acc[j] = acc[j] + x * y
        out.append(acc)
    return out


def matvec(a, v, zero):
    out = []
    for row in a:
        acc = zero
        for x, y in zip(row, v):
            if x and y:
                acc = acc + x * y
        out.append(acc)
    return out


def identity(n: int, zero, one):
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def zeros(n: int, m: int, zero):
    return [[zero] * m for _ in range(n)]


def is_zero_matrix(m) -> bool:
    return all(not x for row in m for x in row)


def is_invertible(m) -> bool:
    n = len(m)
    if any(len(r) != n for r in m):
        return False
    return rank(m, n) == n


def inverse(m, zero, one):
    """Exact inverse of a square matrix; raises ValueError if singular."""
    n = len(m)
    e = Echelon(2 * n)
    for i, row in enumerate(m):
        s = _sparse(row)
        s[n + i] = one
        e.add(s)
    if e.pivots[:n] != list(range(n)) or e.rank < n:
        raise ValueError("singular matrix")
    inv = [[zero] * n for _ in range(n)]
    for i in range(n):
        row = e.rows[i]
        for k, x in row.items():
            if k >= n:
                inv[i][k - n] = x
            elif k != i:
                raise ValueError("singular matrix")
    return inv


class Quotient:
    """The quotient k^dim / span(relations), presented on non-pivot coordinates."""

    def __init__(self, dim: int, relations, zero, one):
        self.ambient = dim
        self.zero, self.one = zero, one
        self.ech = echelon(relations, dim)
        self.free = [c for c in range(dim) if c not in self.ech.rows]
        self._pos = {c: i for i, c in enumerate(self.free)}

    @property
    def dim(self) -> int:
        return len(self.free)

    def project(self, v) -> list:
        r = self.ech.reduce(v)
        out = [self.zero] * len(self.free)
        for c, x in r.items():
            out[self._pos[c]] = x
        return out

    def lift(self, j: int) -> list:
        v = [self.zero] * self.ambient
        v[self.free[j]] = self.one
        return v

    def matrix(self) -> list[list]:
        """Projection as a (dim x ambient) matrix."""
        cols = [self.project({c: self.one}) for c in range(self.ambient)]
        return transpose(cols, self.ambient, self.dim)


class Subspace:
    """A subspace of k^dim with membership and coordinates."""

    def __init__(self, dim: int, vectors, zero, one):
        self.ambient = dim
        self.zero, self.one = zero, one
        self.ech = echelon(vectors, dim)

    @property
    def dim(self) -> int:
        return self.ech.rank

    def basis(self) -> list[list]:
        return self.ech.dense_rows(self.zero)

    def contains(self, v) -> bool:
        return self.ech.contains(v)

    def coords(self, v) -> Optional[list]:
        c = self.ech.coords(v)
        if c is None:
            return None
        return [c.get(p, self.zero) for p in self.ech.pivots]

    def intersect(self, other: "Subspace") -> "Subspace":
        a, b = self.basis(), other.basis()
        if not a or not b:
            return Subspace(self.ambient, [], self.zero, self.one)
        # solve sum x_i a_i = sum y_j b_j
        cols = a + [[-x for x in r] for r in b]
        eqs = transpose(cols, len(cols), self.ambient)
        ker = nullspace(eqs, len(cols), self.zero, self.one)
        vecs = []
        for k in ker:
            v = [self.zero] * self.ambient
            for i, r in enumerate(a):
                if k[i]:
                    v = [p + k[i] * q for p, q in zip(v, r)]
            vecs.append(v)
        return Subspace(self.ambient, vecs, self.zero, self.one)

    def __eq__(self, other):
        if not isinstance(other, Subspace) or other.ambient != self.ambient:
            return False
        return other.dim == self.dim and all(self.contains(v) for v in other.basis())

    def __le__(self, other: "Subspace") -> bool:
        return all(other.contains(v) for v in self.basis())


@dataclass
class LinearKit:
    """Solution data for A x = b with A of shape rows x cols."""

    particular: Optional[list]
    kernel: list
    coker_proj: list
    rank: int


def linear_kit(a, b=None, *, field) -> LinearKit:
    zero, one = field.zero, field.one
    nrows = len(a)
    ncols = len(a[0]) if a else 0
    ker = nullspace(a, ncols, zero, one)
    cols = transpose(a, nrows, ncols) if nrows else []
    q = Quotient(nrows, cols, zero, one)
    part = None
    if b is not None:
        part = solve(a, b, ncols, zero)
    return LinearKit(part, ker, q.matrix(), ncols - len(ker))


class BasisCoords:
    """Coordinates of vectors with respect to a fixed linearly independent list."""

    def __init__(self, basis, dim: int, zero, one):
        self.k = len(basis)
        self.dim = dim
        self.zero = zero
        self.ech = Echelon(dim + self.k)
        for i, b in enumerate(basis):
            s = _sparse(b)
            s[dim + i] = one
            self.ech.add(s)
        if any(c >= dim for c in self.ech.rows):
            raise ValueError("basis vectors are linearly dependent")

    def coords(self, v) -> Optional[list]:
        r = self.ech.reduce(v)
        if any(c < self.dim for c in r):
            return None
        return [-r[self.dim + i] if (self.dim + i) in r else self.zero for i in range(self.k)]
