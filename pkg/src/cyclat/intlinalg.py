"""Exact linear algebra over the integers.

Matrices are immutable and bignum-exact; there is not a float anywhere in
this package.  The normal forms (column-style Hermite, Smith) are computed
with deterministic pivoting so that repeated runs, and the golden values
frozen in the tests, agree byte for byte.  Sizes stay small (a few hundred
rows at the very worst), so the quadratic-ish pivot searches are fine.

Conventions that the rest of the package leans on:

* ``hnf`` is a *column* Hermite form ``H = A @ U``: pivot columns first,
  pivots positive, pivot rows strictly increasing, entries to the left of a
  pivot in its row reduced into ``[0, pivot)``.  ``H`` with zero columns
  dropped is the canonical basis of the column span, which is what makes
  ``Lattice`` equality decidable by tuple comparison.
* ``snf`` returns ``U @ A @ V == S`` with nonnegative diagonal and each
  diagonal entry dividing the next.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import InternalInvariantError, PreconditionError


class IntMatrix:
    """Immutable integer matrix, stored row-major as nested tuples.

    Zero-row and zero-column shapes are legal: the shape is carried
    explicitly, so e.g. a basis of the zero lattice in Z^n is an n x 0
    matrix rather than a special case.
    """

    __slots__ = ("_ent", "rows", "cols")

    def __init__(self, entries: Iterable[Iterable[int]], shape: Optional[tuple[int, int]] = None):
        ent = tuple(tuple(int(x) for x in row) for row in entries)
        if shape is None:
            m = len(ent)
            n = len(ent[0]) if ent else 0
        else:
            m, n = shape
            if len(ent) != m:
                raise PreconditionError(f"expected {m} rows, got {len(ent)}")
        if any(len(row) != n for row in ent):
            raise PreconditionError("ragged rows")
        object.__setattr__(self, "_ent", ent)
        object.__setattr__(self, "rows", m)
        object.__setattr__(self, "cols", n)

    def __setattr__(self, name, value):
        raise AttributeError("IntMatrix is immutable")

    # -- construction helpers -------------------------------------------------

    @classmethod
    def zeros(cls, m: int, n: int) -> "IntMatrix":
        return cls(((0,) * n for _ in range(m)), shape=(m, n))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @classmethod
    def diag(cls, values: Sequence[int]) -> "IntMatrix":
        n = len(values)
        return cls(tuple(tuple(values[i] if i == j else 0 for j in range(n)) for i in range(n)))

    @classmethod
    def from_cols(cls, columns: Sequence[Sequence[int]], rows: Optional[int] = None) -> "IntMatrix":
        columns = [tuple(c) for c in columns]
        if rows is None:
            if not columns:
                raise PreconditionError("from_cols with no columns needs an explicit row count")
            rows = len(columns[0])
        if any(len(c) != rows for c in columns):
            raise PreconditionError("ragged columns")
        return cls((tuple(c[i] for c in columns) for i in range(rows)), shape=(rows, len(columns)))

    @classmethod
    def hstack(cls, *mats: "IntMatrix") -> "IntMatrix":
        if not mats:
            raise PreconditionError("hstack of nothing")
        m = mats[0].rows
        if any(a.rows != m for a in mats):
            raise PreconditionError("hstack row mismatch")
        return cls(
            (tuple(x for a in mats for x in a._ent[i]) for i in range(m)),
            shape=(m, sum(a.cols for a in mats)),
        )

    @classmethod
    def vstack(cls, *mats: "IntMatrix") -> "IntMatrix":
        if not mats:
            raise PreconditionError("vstack of nothing")
        n = mats[0].cols
        if any(a.cols != n for a in mats):
            raise PreconditionError("vstack column mismatch")
        return cls((row for a in mats for row in a._ent), shape=(sum(a.rows for a in mats), n))

    @classmethod
    def block_diag(cls, *mats: "IntMatrix") -> "IntMatrix":
        m = sum(a.rows for a in mats)
        n = sum(a.cols for a in mats)
        out = [[0] * n for _ in range(m)]
        i0 = j0 = 0
        for a in mats:
            for i in range(a.rows):
                out[i0 + i][j0 : j0 + a.cols] = a._ent[i]
            i0 += a.rows
            j0 += a.cols
        return cls(out, shape=(m, n))

    # -- accessors ------------------------------------------------------------

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self._ent[i][j]

    def row(self, i: int) -> tuple[int, ...]:
        return self._ent[i]

    def col(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self._ent)

    def columns(self) -> list[tuple[int, ...]]:
        return [self.col(j) for j in range(self.cols)]

    def entries(self) -> tuple[tuple[int, ...], ...]:
        return self._ent

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self._ent]

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "IntMatrix":
        return IntMatrix(
            (tuple(self._ent[i][j] for j in col_idx) for i in row_idx),
            shape=(len(row_idx), len(col_idx)),
        )

    def transpose(self) -> "IntMatrix":
        return IntMatrix(
            (tuple(self._ent[i][j] for i in range(self.rows)) for j in range(self.cols)),
            shape=(self.cols, self.rows),
        )

    def is_zero(self) -> bool:
        return all(all(x == 0 for x in row) for row in self._ent)

    def is_square(self) -> bool:
        return self.rows == self.cols

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        self._same_shape(other)
        return IntMatrix(
            (tuple(a + b for a, b in zip(ra, rb)) for ra, rb in zip(self._ent, other._ent)),
            shape=(self.rows, self.cols),
        )

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        self._same_shape(other)
        return IntMatrix(
            (tuple(a - b for a, b in zip(ra, rb)) for ra, rb in zip(self._ent, other._ent)),
            shape=(self.rows, self.cols),
        )

    def __neg__(self) -> "IntMatrix":
        return IntMatrix(
            (tuple(-a for a in row) for row in self._ent), shape=(self.rows, self.cols)
        )

    def __mul__(self, c: int) -> "IntMatrix":
        if not isinstance(c, int):
            return NotImplemented
        return IntMatrix(
            (tuple(c * a for a in row) for row in self._ent), shape=(self.rows, self.cols)
        )

    __rmul__ = __mul__

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if not isinstance(other, IntMatrix):
            return NotImplemented
        if self.cols != other.rows:
            raise PreconditionError(
                f"shape mismatch: ({self.rows}x{self.cols}) @ ({other.rows}x{other.cols})"
            )
        bt = other.transpose()._ent
        return IntMatrix(
            (
                tuple(sum(a * b for a, b in zip(row, bcol)) for bcol in bt)
                for row in self._ent
            ),
            shape=(self.rows, other.cols),
        )

    def apply(self, v: Sequence[int]) -> tuple[int, ...]:
        """Matrix-vector product as a plain tuple."""
        if len(v) != self.cols:
            raise PreconditionError("vector length mismatch")
        return tuple(sum(a * b for a, b in zip(row, v)) for row in self._ent)

    def pow(self, k: int) -> "IntMatrix":
        if not self.is_square():
            raise PreconditionError("pow of a non-square matrix")
        if k < 0:
            raise PreconditionError("negative power")
        out = IntMatrix.identity(self.rows)
        base = self
        while k:
            if k & 1:
                out = out @ base
            base = base @ base
            k >>= 1
        return out

    def trace(self) -> int:
        if not self.is_square():
            raise PreconditionError("trace of a non-square matrix")
        return sum(self._ent[i][i] for i in range(self.rows))

    # -- plumbing ---------------------------------------------------------

    def _same_shape(self, other: "IntMatrix") -> None:
        if self.rows != other.rows or self.cols != other.cols:
            raise PreconditionError("shape mismatch")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.rows == other.rows and self.cols == other.cols and self._ent == other._ent

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self._ent))

    def __repr__(self) -> str:
        if self.rows == 0 or self.cols == 0:
            return f"IntMatrix.zeros({self.rows}, {self.cols})"
        body = ", ".join("[" + ", ".join(str(x) for x in row) + "]" for row in self._ent)
        return f"IntMatrix([{body}])"


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Extended gcd: returns (g, x, y) with g = a*x + b*y and g >= 0."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    return old_r, old_x, old_y


# -- Hermite form --------------------------------------------------------------


def _col_addmul(cols: list[list[int]], ucols: list[list[int]], dst: int, src: int, c: int) -> None:
    cd, cs = cols[dst], cols[src]
    for i in range(len(cd)):
        cd[i] += c * cs[i]
    ud, us = ucols[dst], ucols[src]
    for i in range(len(ud)):
        ud[i] += c * us[i]


def hnf(a: IntMatrix) -> tuple[IntMatrix, IntMatrix]:
    """Column Hermite normal form: (H, U) with H == A @ U, U unimodular.

    Pivot columns come first; each pivot is positive, sits strictly below
    the previous pivot's row, and the entries to its left in its row are
    reduced into [0, pivot).  Trailing columns of H are zero.  H is the
    canonical basis matrix of the column span.
    """
    m, n = a.rows, a.cols
    cols = [list(a.col(j)) for j in range(n)]
    ucols = [[1 if i == j else 0 for i in range(n)] for j in range(n)]
    piv = 0
    for i in range(m):
        if piv == n:
            break
        j0 = -1
        while True:
            live = [j for j in range(piv, n) if cols[j][i] != 0]
            if not live:
                j0 = -1
                break
            j0 = min(live, key=lambda j: (abs(cols[j][i]), j))
            others = [j for j in live if j != j0]
            if not others:
                break
            for j in others:
                q = cols[j][i] // cols[j0][i]
                if q:
                    _col_addmul(cols, ucols, j, j0, -q)
        if j0 < 0:
            continue
        if j0 != piv:
            cols[piv], cols[j0] = cols[j0], cols[piv]
            ucols[piv], ucols[j0] = ucols[j0], ucols[piv]
        if cols[piv][i] < 0:
            cols[piv] = [-x for x in cols[piv]]
            ucols[piv] = [-x for x in ucols[piv]]
        p = cols[piv][i]
        for j in range(piv):
            q = cols[j][i] // p
            if q:
                _col_addmul(cols, ucols, j, piv, -q)
        piv += 1
    h = IntMatrix.from_cols(cols, rows=m) if n else IntMatrix.zeros(m, 0)
    u = IntMatrix.from_cols(ucols, rows=n) if n else IntMatrix.zeros(0, 0)
    return h, u


def column_rank(a: IntMatrix) -> int:
    h, _ = hnf(a)
    return sum(1 for j in range(h.cols) if any(h[i, j] for i in range(h.rows)))


# -- Smith form ----------------------------------------------------------------


@dataclass(frozen=True)
class SnfResult:
    """U @ A @ V == S, S diagonal with nonnegative entries d_k | d_{k+1}."""

    u: IntMatrix
    s: IntMatrix
    v: IntMatrix

    @property
    def diag(self) -> tuple[int, ...]:
        return tuple(self.s[i, i] for i in range(min(self.s.rows, self.s.cols)))

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diag if d != 0)


def snf(a: IntMatrix) -> SnfResult:
    """Smith normal form with both transforms, deterministic pivoting."""
    m, n = a.rows, a.cols
    s = [list(row) for row in a.entries()]
    u = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    v = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def row_addmul(dst, src, c):
        s[dst] = [x + c * y for x, y in zip(s[dst], s[src])]
        u[dst] = [x + c * y for x, y in zip(u[dst], u[src])]

    def col_addmul(dst, src, c):
        for row in s:
            row[dst] += c * row[src]
        for row in v:
            row[dst] += c * row[src]

    def swap_rows(i1, i2):
        s[i1], s[i2] = s[i2], s[i1]
        u[i1], u[i2] = u[i2], u[i1]

    def swap_cols(j1, j2):
        for row in s:
            row[j1], row[j2] = row[j2], row[j1]
        for row in v:
            row[j1], row[j2] = row[j2], row[j1]

    for k in range(min(m, n)):
        while True:
            best = None
            for i in range(k, m):
                for j in range(k, n):
                    x = s[i][j]
                    if x and (best is None or abs(x) < abs(s[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                break
            if best != (k, k):
                if best[0] != k:
                    swap_rows(k, best[0])
                if best[1] != k:
                    swap_cols(k, best[1])
            p = s[k][k]
            dirty = False
            for i in range(k + 1, m):
                if s[i][k]:
                    q = s[i][k] // p
                    if q:
                        row_addmul(i, k, -q)
                    if s[i][k]:
                        dirty = True
            for j in range(k + 1, n):
                if s[k][j]:
                    q = s[k][j] // p
                    if q:
                        col_addmul(j, k, -q)
                    if s[k][j]:
                        dirty = True
            if dirty:
                continue
            if s[k][k] < 0:
                s[k] = [-x for x in s[k]]
                u[k] = [-x for x in u[k]]
            p = s[k][k]
            offender = None
            for i in range(k + 1, m):
                for j in range(k + 1, n):
                    if s[i][j] % p:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            row_addmul(k, offender, 1)
        if all(s[i][j] == 0 for i in range(k, m) for j in range(k, n)):
            break

    res = SnfResult(IntMatrix(u, shape=(m, m)), IntMatrix(s, shape=(m, n)), IntMatrix(v, shape=(n, n)))
    if res.u @ a @ res.v != res.s:
        raise InternalInvariantError("snf transform identity failed")
    return res


# -- lattices ------------------------------------------------------------------


class Lattice:
    """A subgroup of Z^n, held as a canonical column-HNF basis.

    Two Lattice objects in the same ambient compare equal iff they are the
    same subgroup, which is what lets the higher layers phrase statements
    like "the twisted image equals the kernel" as plain ==.
    """

    __slots__ = ("ambient", "basis", "_pivot_rows")

    def __init__(self, ambient: int, basis: Optional[IntMatrix] = None):
        if ambient < 0:
            raise PreconditionError("negative ambient dimension")
        if basis is None:
            basis = IntMatrix.zeros(ambient, 0)
        if basis.rows != ambient:
            raise PreconditionError(f"basis has {basis.rows} rows in ambient Z^{ambient}")
        h, _ = hnf(basis)
        keep = []
        pivot_rows = []
        for j in range(h.cols):
            col = h.col(j)
            nz = next((i for i, x in enumerate(col) if x), None)
            if nz is not None:
                keep.append(j)
                pivot_rows.append(nz)
        object.__setattr__(self, "ambient", ambient)
        object.__setattr__(self, "basis", h.submatrix(range(ambient), keep))
        object.__setattr__(self, "_pivot_rows", tuple(pivot_rows))

    def __setattr__(self, name, value):
        raise AttributeError("Lattice is immutable")

    @classmethod
    def full(cls, n: int) -> "Lattice":
        return cls(n, IntMatrix.identity(n))

    @classmethod
    def spanned_by(cls, vectors: Sequence[Sequence[int]], ambient: int) -> "Lattice":
        return cls(ambient, IntMatrix.from_cols(vectors, rows=ambient))

    @property
    def rank(self) -> int:
        return self.basis.cols

    @property
    def pivot_rows(self) -> tuple[int, ...]:
        """Row of the leading entry of each canonical basis column."""
        return self._pivot_rows

    def is_zero(self) -> bool:
        return self.rank == 0

    def coords(self, v: Sequence[int]) -> Optional[tuple[int, ...]]:
        """Integer coordinates of v in the canonical basis, or None."""
        if len(v) != self.ambient:
            raise PreconditionError("vector not in ambient space")
        x = list(v)
        out = []
        for k in range(self.rank):
            i = self._pivot_rows[k]
            c, r = divmod(x[i], self.basis[i, k])
            if r:
                return None
            out.append(c)
            if c:
                for ii in range(i, self.ambient):
                    x[ii] -= c * self.basis[ii, k]
        if any(x):
            return None
        return tuple(out)

    def member(self, v: Sequence[int]) -> bool:
        return self.coords(v) is not None

    def contains(self, other: "Lattice") -> bool:
        self._same_ambient(other)
        return all(self.member(c) for c in other.basis.columns())

    def __add__(self, other: "Lattice") -> "Lattice":
        self._same_ambient(other)
        return Lattice(self.ambient, IntMatrix.hstack(self.basis, other.basis))

    def intersect(self, other: "Lattice") -> "Lattice":
        self._same_ambient(other)
        if self.is_zero() or other.is_zero():
            return Lattice(self.ambient)
        stacked = IntMatrix.hstack(self.basis, -other.basis)
        ker = kernel_basis(stacked)
        coeff = ker.basis.submatrix(range(self.rank), range(ker.rank))
        return Lattice(self.ambient, self.basis @ coeff)

    def transform(self, m: IntMatrix) -> "Lattice":
        """Image lattice under the linear map m."""
        if m.cols != self.ambient:
            raise PreconditionError("map domain mismatch")
        return Lattice(m.rows, m @ self.basis)

    def index(self) -> int:
        """Index [Z^n : L]; requires full rank."""
        if self.rank != self.ambient:
            raise PreconditionError("infinite index: lattice is not full rank")
        out = 1
        for k in range(self.rank):
            out *= self.basis[self._pivot_rows[k], k]
        return out

    def _same_ambient(self, other: "Lattice") -> None:
        if self.ambient != other.ambient:
            raise PreconditionError("ambient dimensions differ")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Lattice):
            return NotImplemented
        return self.ambient == other.ambient and self.basis == other.basis

    def __hash__(self) -> int:
        return hash((self.ambient, self.basis))

    def __repr__(self) -> str:
        return f"Lattice(Z^{self.ambient}, rank={self.rank})"


def kernel_basis(a: IntMatrix) -> Lattice:
    """Integer kernel of a as a lattice in Z^cols."""
    h, u = hnf(a)
    r = sum(1 for j in range(h.cols) if any(h[i, j] for i in range(h.rows)))
    ker_cols = [u.col(j) for j in range(r, a.cols)]
    return Lattice(a.cols, IntMatrix.from_cols(ker_cols, rows=a.cols))


def solve_columns(a: IntMatrix, b: IntMatrix) -> Optional[IntMatrix]:
    """Integral X with A @ X == B, or None if no integral solution exists."""
    if a.rows != b.rows:
        raise PreconditionError("row count mismatch")
    h, u = hnf(a)
    pivots = []
    for j in range(h.cols):
        col = h.col(j)
        nz = next((i for i, x in enumerate(col) if x), None)
        if nz is None:
            break
        pivots.append(nz)
    r = len(pivots)
    xcols = []
    for jb in range(b.cols):
        resid = list(b.col(jb))
        y = [0] * a.cols
        for k in range(r):
            i = pivots[k]
            c, rem = divmod(resid[i], h[i, k])
            if rem:
                return None
            y[k] = c
            if c:
                for ii in range(i, a.rows):
                    resid[ii] -= c * h[ii, k]
        if any(resid):
            return None
        xcols.append(u.apply(y))
    x = IntMatrix.from_cols(xcols, rows=a.cols) if xcols else IntMatrix.zeros(a.cols, 0)
    if a @ x != b:
        raise InternalInvariantError("solve_columns verification failed")
    return x


def inv_unimodular(u: IntMatrix) -> IntMatrix:
    """Exact inverse of a unimodular matrix (PreconditionError otherwise)."""
    if not u.is_square():
        raise PreconditionError("not square")
    h, w = hnf(u)
    if h != IntMatrix.identity(u.rows):
        raise PreconditionError("matrix is not unimodular")
    return w


def det(a: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    if not a.is_square():
        raise PreconditionError("determinant of a non-square matrix")
    n = a.rows
    if n == 0:
        return 1
    m = [list(row) for row in a.entries()]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k]), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                q, rem = divmod(num, prev)
                if rem:
                    raise InternalInvariantError("bareiss division not exact")
                m[i][j] = q
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def charpoly(a: IntMatrix) -> tuple[int, ...]:
    """Coefficients (c_0, ..., c_n) of det(x*I - A), low degree first, monic.

    Faddeev-LeVerrier; all divisions are exact over Z.
    """
    if not a.is_square():
        raise PreconditionError("charpoly of a non-square matrix")
    n = a.rows
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    m = IntMatrix.zeros(n, n)
    c = 1
    for k in range(1, n + 1):
        m = a @ m + c * IntMatrix.identity(n)
        am = a @ m
        c, rem = divmod(-am.trace(), k)
        if rem:
            raise InternalInvariantError("faddeev-leverrier division not exact")
        coeffs[n - k] = c
    return tuple(coeffs)


# -- quotient invariants ---------------------------------------------------


@dataclass(frozen=True)
class QuotientInvariants:
    """Isomorphism type of a finitely generated abelian group.

    torsion lists the invariant factors > 1 in divisibility order, so the
    group is Z/t_1 x ... x Z/t_k x Z^free_rank and two instances are equal
    iff the groups are isomorphic.
    """

    torsion: tuple[int, ...]
    free_rank: int

    def order(self) -> int:
        if self.free_rank:
            raise PreconditionError("infinite group has no order")
        out = 1
        for t in self.torsion:
            out *= t
        return out

    def is_trivial(self) -> bool:
        return not self.torsion and self.free_rank == 0

    def describe(self) -> str:
        parts = [f"Z/{t}" for t in self.torsion]
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        return " x ".join(parts) if parts else "0"


def quotient_invariants(top, bottom: Lattice) -> QuotientInvariants:
    """Invariant factors of top/bottom for lattices bottom <= top.

    top may be an int n, meaning all of Z^n.
    """
    if isinstance(top, int):
        top = Lattice.full(top)
    if not isinstance(top, Lattice) or not isinstance(bottom, Lattice):
        raise PreconditionError("quotient_invariants wants lattices")
    if top.ambient != bottom.ambient:
        raise PreconditionError("ambient dimensions differ")
    x = solve_columns(top.basis, bottom.basis)
    if x is None:
        raise PreconditionError("bottom is not contained in top")
    d = snf(x).diag
    torsion = tuple(t for t in d if t > 1)
    rank_x = sum(1 for t in d if t != 0)
    return QuotientInvariants(torsion, top.rank - rank_x)
