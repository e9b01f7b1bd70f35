"""Exact linear algebra over any scalar field from :mod:`twostep.scalars`.

Matrices are dense row-major.  Everything is pure and immutable-by-convention
(entry lists are never mutated after construction).
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations, permutations
from typing import Sequence

from .scalars import QQ, MultiPoly


class LinalgError(ValueError):
    pass


class Matrix:
    """Dense matrix over a field object (see scalars.QQ / scalars.QT)."""

    __slots__ = ("field", "rows", "cols", "data")

    def __init__(self, field, data: Sequence[Sequence]):
        self.field = field
        self.data = [list(row) for row in data]
        self.rows = len(self.data)
        self.cols = len(self.data[0]) if self.data else 0
        if any(len(r) != self.cols for r in self.data):
            raise LinalgError("ragged matrix data")

    @staticmethod
    def identity(field, n: int) -> "Matrix":
        return Matrix(field, [[field.one if i == j else field.zero
                               for j in range(n)] for i in range(n)])

    @staticmethod
    def zeros(field, rows: int, cols: int) -> "Matrix":
        return Matrix(field, [[field.zero] * cols for _ in range(rows)])

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.rows == other.rows
                and self.cols == other.cols and self.data == other.data)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise LinalgError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        f = self.field
        out = [[f.zero] * other.cols for _ in range(self.rows)]
        for i in range(self.rows):
            for k in range(self.cols):
                a = self.data[i][k]
                if f.is_zero(a):
                    continue
                for j in range(other.cols):
                    out[i][j] = out[i][j] + a * other.data[k][j]
        return Matrix(f, out)

    def __add__(self, other: "Matrix") -> "Matrix":
        return Matrix(self.field, [[a + b for a, b in zip(r1, r2)]
                                   for r1, r2 in zip(self.data, other.data)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        return Matrix(self.field, [[a - b for a, b in zip(r1, r2)]
                                   for r1, r2 in zip(self.data, other.data)])

    def __neg__(self) -> "Matrix":
        return Matrix(self.field, [[-a for a in r] for r in self.data])

    def transpose(self) -> "Matrix":
        return Matrix(self.field, [[self.data[i][j] for i in range(self.rows)]
                                   for j in range(self.cols)])

    def apply(self, vec: Sequence) -> list:
        if len(vec) != self.cols:
            raise LinalgError("vector length mismatch")
        f = self.field
        return [sum((row[j] * vec[j] for j in range(self.cols)), f.zero)
                for row in self.data]

    def is_skew(self) -> bool:
        if self.rows != self.cols:
            return False
        f = self.field
        return all(f.is_zero(self.data[i][j] + self.data[j][i])
                   for i in range(self.rows) for j in range(i, self.cols))

    def is_zero(self) -> bool:
        f = self.field
        return all(f.is_zero(a) for row in self.data for a in row)

    def __repr__(self):
        return f"Matrix({self.field!r}, {self.data!r})"


def _rref(field, data: list[list]) -> tuple[list[list], list[int]]:
    """Reduced row echelon form; returns (rows, pivot column indices)."""
    mat = [list(r) for r in data]
    rows = len(mat)
    cols = len(mat[0]) if mat else 0
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if not field.is_zero(mat[i][c])), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = field.one / mat[r][c]
        mat[r] = [inv * a for a in mat[r]]
        for i in range(rows):
            if i != r and not field.is_zero(mat[i][c]):
                f = mat[i][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return mat[:r], pivots


class Subspace:
    """Subspace of field^ambient, basis kept in reduced row echelon form."""

    __slots__ = ("field", "ambient", "basis", "pivots")

    def __init__(self, field, ambient: int, vectors: Sequence[Sequence] = ()):
        self.field = field
        self.ambient = ambient
        vecs = [list(v) for v in vectors]
        if any(len(v) != ambient for v in vecs):
            raise LinalgError("vector length does not match ambient dimension")
        if vecs:
            self.basis, self.pivots = _rref(field, vecs)
        else:
            self.basis, self.pivots = [], []

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, vec: Sequence) -> bool:
        v = list(vec)
        f = self.field
        for row, p in zip(self.basis, self.pivots):
            if not f.is_zero(v[p]):
                c = v[p]
                v = [a - c * b for a, b in zip(v, row)]
        return all(f.is_zero(a) for a in v)

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(v) for v in other.basis)

    def __eq__(self, other):
        return (isinstance(other, Subspace) and self.ambient == other.ambient
                and self.dim == other.dim and self.contains_subspace(other))

    def extend_with(self, vectors: Sequence[Sequence]) -> list[list]:
        """Vectors from the given list that extend this subspace's basis,
        greedily, in order."""
        picked = []
        current = list(self.basis)
        for v in vectors:
            trial = Subspace(self.field, self.ambient, current + [list(v)])
            if trial.dim > len(current):
                picked.append(list(v))
                current = trial.basis
        return picked

    def complete_basis(self) -> list[list]:
        """Standard basis vectors completing this subspace to the whole space."""
        f = self.field
        units = [[f.one if i == j else f.zero for j in range(self.ambient)]
                 for i in range(self.ambient)]
        return self.extend_with(units)

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient})"


def rank_kernel(m: Matrix) -> tuple[int, Subspace]:
    """Exact rank and kernel; rank + dim kernel = cols."""
    f = m.field
    rref, pivots = _rref(f, m.data) if m.data else ([], [])
    rank = len(pivots)
    free = [c for c in range(m.cols) if c not in pivots]
    kernel_vecs = []
    for fc in free:
        v = [f.zero] * m.cols
        v[fc] = f.one
        for row, p in zip(rref, pivots):
            v[p] = -row[fc]
        kernel_vecs.append(v)
    return rank, Subspace(f, m.cols, kernel_vecs)


def inverse(m: Matrix) -> Matrix:
    """Exact inverse via Gauss-Jordan on [M | I]; raises on singular input."""
    if m.rows != m.cols:
        raise LinalgError("inverse of non-square matrix")
    n = m.rows
    f = m.field
    aug = [list(row) + [f.one if i == j else f.zero for j in range(n)]
           for i, row in enumerate(m.data)]
    reduced, pivots = _rref(f, aug)
    if pivots != list(range(n)):
        raise LinalgError("matrix is singular")
    return Matrix(f, [row[n:] for row in reduced])


def determinant(m: Matrix):
    """Exact determinant: Bareiss fraction-free elimination over Q, plain
    Gaussian elimination over other fields."""
    if m.rows != m.cols:
        raise LinalgError("determinant of non-square matrix")
    n = m.rows
    f = m.field
    if n == 0:
        return f.one
    if f is QQ:
        return _det_bareiss(m)
    a = [list(r) for r in m.data]
    det = f.one
    for c in range(n):
        piv = next((i for i in range(c, n) if not f.is_zero(a[i][c])), None)
        if piv is None:
            return f.zero
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det = det * a[c][c]
        inv = f.one / a[c][c]
        for i in range(c + 1, n):
            if f.is_zero(a[i][c]):
                continue
            factor = a[i][c] * inv
            a[i] = [x - factor * y for x, y in zip(a[i], a[c])]
    return det


def _det_bareiss(m: Matrix) -> Fraction:
    n = m.rows
    a = [[Fraction(x) for x in row] for row in m.data]
    sign = 1
    prev = Fraction(1)
    for c in range(n - 1):
        if a[c][c] == 0:
            piv = next((i for i in range(c + 1, n) if a[i][c] != 0), None)
            if piv is None:
                return Fraction(0)
            a[c], a[piv] = a[piv], a[c]
            sign = -sign
        for i in range(c + 1, n):
            for j in range(c + 1, n):
                a[i][j] = (a[i][j] * a[c][c] - a[i][c] * a[c][j]) / prev
            a[i][c] = Fraction(0)
        prev = a[c][c]
    return sign * a[n - 1][n - 1]


def pfaffian(m: Matrix):
    """Pfaffian of an exactly skew-symmetric even-dimensional matrix, by
    recursive expansion along the first row.  Convention
    Pf([[0, a], [-a, 0]]) = a.  O(n!!), intended for n <= 8."""
    if m.rows != m.cols:
        raise LinalgError("pfaffian of non-square matrix")
    if m.rows % 2 != 0:
        raise LinalgError("pfaffian of odd-dimensional matrix")
    if not m.is_skew():
        raise LinalgError("pfaffian of non-skew matrix")
    return _pf_rec(m.field, m.data, list(range(m.rows)))


def _pf_rec(field, data, idx: list[int]):
    if not idx:
        return field.one
    i0 = idx[0]
    total = field.zero
    for pos in range(1, len(idx)):
        j = idx[pos]
        a = data[i0][j]
        if field.is_zero(a):
            continue
        rest = idx[1:pos] + idx[pos + 1:]
        term = a * _pf_rec(field, data, rest)
        total = total + term if pos % 2 == 1 else total - term
    return total


def pfaffian_bruteforce(m: Matrix):
    """Independent oracle: Pf via the signed sum over perfect matchings,
    enumerated through permutations.  Exponential; for cross-checks only."""
    if m.rows % 2 != 0 or not m.is_skew():
        raise LinalgError("pfaffian oracle needs an even skew matrix")
    n = m.rows
    f = m.field
    if n == 0:
        return f.one
    total = f.zero
    seen = set()
    for perm in permutations(range(n)):
        pairs = tuple(sorted(tuple(sorted((perm[2 * k], perm[2 * k + 1])))
                             for k in range(n // 2)))
        if pairs in seen:
            continue
        seen.add(pairs)
        flat = [x for pair in pairs for x in pair]
        sign = _perm_sign(flat)
        term = f.one
        for (i, j) in pairs:
            term = term * m.data[i][j]
        total = total + (term if sign > 0 else -term)
    return total


def _perm_sign(perm: list[int]) -> int:
    seen = [False] * len(perm)
    sign = 1
    for i in range(len(perm)):
        if seen[i]:
            continue
        j = i
        length = 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def poly_det(entries: list[list[MultiPoly]]) -> MultiPoly:
    """Determinant of a small matrix of multivariate polynomials by signed
    permutation expansion (sizes <= 4 in practice)."""
    n = len(entries)
    nvars = entries[0][0].nvars if n else 0
    total = MultiPoly(nvars)
    for perm in permutations(range(n)):
        term = MultiPoly.const(nvars, 1)
        for i in range(n):
            term = term * entries[i][perm[i]]
            if term.is_zero():
                break
        sign = _perm_sign(list(perm))
        total = total + (term if sign > 0 else -term)
    return total


MINOR_ENUM_MAX_MINDIM = 4
MINOR_ENUM_MAX_DIM = 8
SZ_TRIALS = 16
SZ_BOUND = 97


def symbolic_max_rank(entries: list[list[MultiPoly]], seed: int = 0) -> tuple[int, bool]:
    """Largest r such that some r x r minor of the polynomial matrix is not
    identically zero.

    Exact minor enumeration when min(rows, cols) <= 4 and both dims <= 8;
    otherwise seeded random rational substitution (Schwartz-Zippel style,
    16 trials per size).  Returns (rank, exact_flag)."""
    rows = len(entries)
    cols = len(entries[0]) if entries else 0
    if rows == 0 or cols == 0:
        return 0, True
    mind = min(rows, cols)
    if mind <= MINOR_ENUM_MAX_MINDIM and max(rows, cols) <= MINOR_ENUM_MAX_DIM:
        for r in range(mind, 0, -1):
            for ris in combinations(range(rows), r):
                for cis in combinations(range(cols), r):
                    minor = [[entries[i][j] for j in cis] for i in ris]
                    if not poly_det(minor).is_zero():
                        return r, True
        return 0, True
    nvars = entries[0][0].nvars
    rng = random.Random(seed)
    best = 0
    for _ in range(SZ_TRIALS):
        point = [Fraction(rng.choice([v for v in range(-SZ_BOUND, SZ_BOUND + 1) if v != 0]))
                 for _ in range(nvars)]
        num = Matrix(QQ, [[e.eval(point) for e in row] for row in entries])
        r, _ = rank_kernel(num)
        best = max(best, r)
        if best == mind:
            break
    return best, False
