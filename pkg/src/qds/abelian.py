"""Exact arithmetic of finitely generated free abelian groups.

Everything here is integer-exact: matrices over Z with arbitrary-precision
entries, column Hermite normal form as the single canonical representation
of a sublattice of Z^r, Smith normal form with witness transforms, and the
derived lattice operations (kernel, image, membership, sum/intersection,
saturation and complement).  Lattice equality is equality of canonical
bases, so all higher layers get O(1) equality and hashing for free.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional, Sequence


Vector = tuple[int, ...]


def _as_int(x) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise TypeError(f"matrix entries must be int, got {type(x).__name__}")
    return x


@dataclass(frozen=True)
class IntMatrix:
    """An immutable integer matrix, row-major.

    Zero-row / zero-column matrices are allowed: they host the trivial
    signature and empty lattice bases.
    """

    entries: tuple[tuple[int, ...], ...]
    cols_if_empty: int = 0  # column count when there are no rows

    def __post_init__(self):
        widths = {len(row) for row in self.entries}
        if len(widths) > 1:
            raise ValueError("ragged matrix")
        for row in self.entries:
            for x in row:
                _as_int(x)
        if self.entries:
            object.__setattr__(self, "cols_if_empty", len(self.entries[0]))

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else self.cols_if_empty

    @staticmethod
    def from_rows(rows: Sequence[Sequence[int]], cols: int = 0) -> "IntMatrix":
        return IntMatrix(tuple(tuple(int(x) for x in row) for row in rows), cols)

    @staticmethod
    def identity(n: int) -> "IntMatrix":
        return IntMatrix.from_rows([[1 if i == j else 0 for j in range(n)] for i in range(n)], n)

    @staticmethod
    def zeros(rows: int, cols: int) -> "IntMatrix":
        return IntMatrix.from_rows([[0] * cols for _ in range(rows)], cols)

    @staticmethod
    def from_columns(cols: Sequence[Sequence[int]], rows: int) -> "IntMatrix":
        if not cols:
            return IntMatrix.zeros(rows, 0)
        return IntMatrix.from_rows(
            [[int(col[i]) for col in cols] for i in range(rows)], len(cols)
        )

    def to_lists(self) -> list[list[int]]:
        return [list(row) for row in self.entries]

    def column(self, j: int) -> Vector:
        return tuple(row[j] for row in self.entries)

    def columns(self) -> list[Vector]:
        return [self.column(j) for j in range(self.cols)]

    def _check_same_shape(self, other: "IntMatrix") -> None:
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError(
                f"shape mismatch: {self.rows}x{self.cols} vs {other.rows}x{other.cols}"
            )

    def transpose(self) -> "IntMatrix":
        return IntMatrix.from_rows(
            [[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)],
            self.rows,
        )

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        self._check_same_shape(other)
        return IntMatrix.from_rows(
            [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.entries, other.entries)],
            self.cols,
        )

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        self._check_same_shape(other)
        return IntMatrix.from_rows(
            [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.entries, other.entries)],
            self.cols,
        )

    def __neg__(self) -> "IntMatrix":
        return self.scale(-1)

    def scale(self, c: int) -> "IntMatrix":
        return IntMatrix.from_rows([[c * x for x in row] for row in self.entries], self.cols)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        return self.__mul__(other)

    def __mul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch: {self.rows}x{self.cols} * {other.rows}x{other.cols}")
        ocols = other.cols
        out = []
        for row in self.entries:
            orow = [0] * ocols
            for k, a in enumerate(row):
                if a:
                    br = other.entries[k]
                    for j in range(ocols):
                        orow[j] += a * br[j]
            out.append(orow)
        return IntMatrix.from_rows(out, ocols)

    def apply(self, v: Sequence[int]) -> Vector:
        """Matrix-vector product over Z."""
        if len(v) != self.cols:
            raise ValueError("vector length mismatch")
        return tuple(sum(a * x for a, x in zip(row, v)) for row in self.entries)

    def mat_pow(self, n: int) -> "IntMatrix":
        if self.rows != self.cols:
            raise ValueError("power of a non-square matrix")
        if n < 0:
            raise ValueError("negative power")
        result = IntMatrix.identity(self.rows)
        for _ in range(n):
            result = result * self
        return result

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.entries for x in row)

    def det(self) -> int:
        """Determinant by fraction-free (Bareiss) elimination."""
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        m = self.to_lists()
        sign = 1
        prev = 1
        for k in range(n - 1):
            if m[k][k] == 0:
                pivot = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
                if pivot is None:
                    return 0
                m[k], m[pivot] = m[pivot], m[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
                m[i][k] = 0
            prev = m[k][k]
        return sign * m[n - 1][n - 1]

    def is_unimodular(self) -> bool:
        return self.rows == self.cols and abs(self.det()) == 1

    def inverse_unimodular(self) -> "IntMatrix":
        """Exact inverse of a unimodular matrix (integer entries)."""
        n = self.rows
        if n != self.cols:
            raise ValueError("inverse of a non-square matrix")
        aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
               for i, row in enumerate(self.entries)]
        for k in range(n):
            pivot = next((i for i in range(k, n) if aug[i][k] != 0), None)
            if pivot is None:
                raise ValueError("matrix is singular")
            aug[k], aug[pivot] = aug[pivot], aug[k]
            pk = aug[k][k]
            aug[k] = [x / pk for x in aug[k]]
            for i in range(n):
                if i != k and aug[i][k]:
                    f = aug[i][k]
                    aug[i] = [x - f * y for x, y in zip(aug[i], aug[k])]
        inv = [row[n:] for row in aug]
        if any(x.denominator != 1 for row in inv for x in row):
            raise ValueError("matrix is not unimodular")
        return IntMatrix.from_rows([[int(x) for x in row] for row in inv], n)


# ---------------------------------------------------------------------------
# Canonical forms


def hnf(m: IntMatrix) -> IntMatrix:
    """Column Hermite normal form of the column span of ``m``.

    Canonical convention: zero columns are dropped; the first nonzero entry
    (pivot) of each column is positive; pivot rows strictly increase with the
    column index; entries in a pivot row and an earlier column are reduced to
    [0, pivot).  Two matrices have equal column span over Z iff their forms
    are identical, which is what makes lattice equality structural.
    """
    r, c = m.rows, m.cols
    cols = [list(m.column(j)) for j in range(c)]
    pivot_col = 0
    for row in range(r):
        while True:
            nz = [j for j in range(pivot_col, len(cols)) if cols[j][row] != 0]
            if not nz:
                break
            j0 = min(nz, key=lambda j: (abs(cols[j][row]), j))
            cols[pivot_col], cols[j0] = cols[j0], cols[pivot_col]
            a = cols[pivot_col][row]
            clean = True
            for j in range(pivot_col + 1, len(cols)):
                b = cols[j][row]
                if b:
                    q = b // a
                    if q:
                        cols[j] = [x - q * y for x, y in zip(cols[j], cols[pivot_col])]
                    if cols[j][row]:
                        clean = False
            if clean:
                break
        if not nz:
            continue
        if cols[pivot_col][row] < 0:
            cols[pivot_col] = [-x for x in cols[pivot_col]]
        p = cols[pivot_col][row]
        for j in range(pivot_col):
            q = cols[j][row] // p
            if q:
                cols[j] = [x - q * y for x, y in zip(cols[j], cols[pivot_col])]
        pivot_col += 1
    return IntMatrix.from_columns(cols[:pivot_col], r)


def snf(m: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Smith normal form: returns (U, D, V) with U·m·V = D.

    U and V are unimodular; D is diagonal with nonnegative entries forming a
    divisibility chain d1 | d2 | ... .
    """
    r, c = m.rows, m.cols
    a = m.to_lists()
    u = IntMatrix.identity(r).to_lists()
    v = IntMatrix.identity(c).to_lists()

    def row_sub(i, k, q):  # row_i -= q * row_k
        a[i] = [x - q * y for x, y in zip(a[i], a[k])]
        u[i] = [x - q * y for x, y in zip(u[i], u[k])]

    def col_sub(j, k, q):  # col_j -= q * col_k
        for row in a:
            row[j] -= q * row[k]
        for row in v:
            row[j] -= q * row[k]

    def row_swap(i, k):
        a[i], a[k] = a[k], a[i]
        u[i], u[k] = u[k], u[i]

    def col_swap(j, k):
        for row in a:
            row[j], row[k] = row[k], row[j]
        for row in v:
            row[j], row[k] = row[k], row[j]

    def row_neg(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]

    t = 0
    while t < min(r, c):
        # Deterministic pivot choice: minimal |entry| in the trailing block.
        best = None
        for i in range(t, r):
            for j in range(t, c):
                if a[i][j] != 0 and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        row_swap(t, best[0])
        col_swap(t, best[1])
        while True:
            # Clear column t by Euclidean row steps.
            restart = False
            for i in range(r):
                if i != t and a[i][t]:
                    q = a[i][t] // a[t][t]
                    row_sub(i, t, q)
                    if a[i][t]:  # remainder is a smaller pivot candidate
                        row_swap(i, t)
                        restart = True
                        break
            if restart:
                continue
            for j in range(c):
                if j != t and a[t][j]:
                    q = a[t][j] // a[t][t]
                    col_sub(j, t, q)
                    if a[t][j]:
                        col_swap(j, t)
                        restart = True
                        break
            if restart:
                continue
            # Enforce divisibility of the trailing block by the pivot.
            offender = None
            p = a[t][t]
            for i in range(t + 1, r):
                for j in range(t + 1, c):
                    if a[i][j] % p:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            row_sub(t, offender, -1)  # fold the offending row into row t
        if a[t][t] < 0:
            row_neg(t)
        t += 1
    d = [[a[i][j] if i == j else 0 for j in range(c)] for i in range(r)]
    return (
        IntMatrix.from_rows(u, r),
        IntMatrix.from_rows(d, c),
        IntMatrix.from_rows(v, c),
    )


# ---------------------------------------------------------------------------
# Lattices


@dataclass(frozen=True)
class IntLattice:
    """A sublattice of Z^ambient_rank, stored by its canonical HNF basis.

    The basis matrix has one column per basis vector; rank == basis.cols.
    The canonical form makes dataclass equality coincide with lattice
    equality.
    """

    ambient_rank: int
    basis: IntMatrix

    def __post_init__(self):
        if self.basis.rows != self.ambient_rank:
            raise ValueError("basis rows must equal ambient rank")
        if self.basis != hnf(self.basis):
            raise ValueError("basis is not in canonical Hermite form")

    @property
    def rank(self) -> int:
        return self.basis.cols

    @staticmethod
    def from_generators(ambient_rank: int, generators: Sequence[Sequence[int]]) -> "IntLattice":
        """Lattice spanned by the given vectors (given as rows of length ambient_rank)."""
        for g in generators:
            if len(g) != ambient_rank:
                raise ValueError("generator length must equal ambient rank")
        mat = IntMatrix.from_columns([tuple(int(x) for x in g) for g in generators], ambient_rank)
        return IntLattice(ambient_rank, hnf(mat))

    @staticmethod
    def zero(ambient_rank: int) -> "IntLattice":
        return IntLattice(ambient_rank, IntMatrix.zeros(ambient_rank, 0))

    @staticmethod
    def full(ambient_rank: int) -> "IntLattice":
        return IntLattice(ambient_rank, IntMatrix.identity(ambient_rank))

    def basis_vectors(self) -> list[Vector]:
        return self.basis.columns()

    def is_full(self) -> bool:
        return self.rank == self.ambient_rank and self.basis == IntMatrix.identity(self.ambient_rank)

    def contains(self, v: Sequence[int]) -> bool:
        return member(v, self)[0]

    def is_sublattice_of(self, other: "IntLattice") -> bool:
        if self.ambient_rank != other.ambient_rank:
            raise ValueError("ambient rank mismatch")
        return all(other.contains(col) for col in self.basis.columns())


def kernel(m: IntMatrix) -> IntLattice:
    """Integer kernel {v : m·v = 0} as a (saturated) canonical lattice."""
    _, d, v = snf(m)
    zero_cols = []
    for j in range(m.cols):
        dj = d.entries[j][j] if j < min(m.rows, m.cols) else 0
        if dj == 0:
            zero_cols.append(v.column(j))
    return IntLattice.from_generators(m.cols, zero_cols)


def image(m: IntMatrix) -> IntLattice:
    """Column span of ``m`` as a canonical lattice in Z^rows."""
    return IntLattice(m.rows, hnf(m))


def member(v: Sequence[int], lat: IntLattice) -> tuple[bool, Optional[Vector]]:
    """Decide v ∈ lat; on success also return coefficients c with basis·c = v.

    Forward substitution down the pivot rows of the canonical basis.
    """
    if len(v) != lat.ambient_rank:
        raise ValueError("vector length must equal ambient rank")
    w = [int(x) for x in v]
    basis = lat.basis
    coeffs = []
    pivots = _pivot_rows(basis)
    for j, p in enumerate(pivots):
        pivot = basis.entries[p][j]
        q, rem = divmod(w[p], pivot)
        if rem:
            return False, None
        coeffs.append(q)
        if q:
            for i in range(lat.ambient_rank):
                w[i] -= q * basis.entries[i][j]
    if any(w):
        return False, None
    return True, tuple(coeffs)


def _pivot_rows(basis: IntMatrix) -> list[int]:
    pivots = []
    for j in range(basis.cols):
        col = basis.column(j)
        p = next(i for i, x in enumerate(col) if x != 0)
        pivots.append(p)
    return pivots


def sum_intersect(a: IntLattice, b: IntLattice) -> tuple[IntLattice, IntLattice]:
    """Canonical lattices for A+B and A∩B (same ambient rank required)."""
    if a.ambient_rank != b.ambient_rank:
        raise ValueError("ambient rank mismatch")
    r = a.ambient_rank
    total = IntLattice.from_generators(r, a.basis.columns() + b.basis.columns())
    # A∩B: solve A·x = B·y; the x-part of the kernel of [A | -B] spans it.
    na, nb = a.rank, b.rank
    rows = [
        list(a.basis.entries[i]) + [-x for x in b.basis.entries[i]]
        for i in range(r)
    ]
    combined = IntMatrix.from_rows(rows, na + nb)
    gens = []
    for col in kernel(combined).basis.columns():
        x = col[:na]
        gens.append(a.basis.apply(x))
    inter = IntLattice.from_generators(r, gens)
    return total, inter


def saturation_and_complement(lat: IntLattice) -> tuple[IntLattice, IntLattice]:
    """Saturation of ``lat`` and a direct complement of the saturation in Z^r.

    Via SNF of the basis, B·V = U⁻¹·D: the first rank columns of U⁻¹ span the
    saturation, the remaining columns span a complement with
    saturation ⊕ complement = Z^r.
    """
    r = lat.ambient_rank
    m = lat.rank
    if m == 0:
        return IntLattice.zero(r), IntLattice.full(r)
    u, _, _ = snf(lat.basis)
    uinv = u.inverse_unimodular()
    cols = uinv.columns()
    sat = IntLattice.from_generators(r, cols[:m])
    comp = IntLattice.from_generators(r, cols[m:])
    return sat, comp


def solve_integer(m: IntMatrix, b: Sequence[int]) -> Optional[Vector]:
    """One integer solution x of m·x = b, or None; deterministic via SNF."""
    if len(b) != m.rows:
        raise ValueError("rhs length must equal row count")
    u, d, v = snf(m)
    y = u.apply(b)
    x_prime = [0] * m.cols
    for i in range(m.rows):
        di = d.entries[i][i] if i < min(m.rows, m.cols) else 0
        if di:
            q, rem = divmod(y[i], di)
            if rem:
                return None
            x_prime[i] = q
        elif y[i]:
            return None
    return v.apply(x_prime)
