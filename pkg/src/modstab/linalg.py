"""Dense matrix algebra over Z_d when d need not be prime.

Gaussian elimination breaks on zero-divisor pivots, so linear systems,
inverses and independence tests all route through the integer Smith normal
form of the lifted matrix.  Basis extension follows the constructive
Bezout recursion for a single unimodular column plus the inductive step
that maps already-placed columns onto standard basis vectors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .errors import (
    InvalidParams,
    ModulusMismatch,
    NoSolution,
    NotIndependent,
    NotInvertible,
    ShapeMismatch,
)
from .ring import Modulus, ModulusLike, as_modulus, bezout, inverse_mod

Vec = tuple[int, ...]


@dataclass(frozen=True)
class ModMatrix:
    """Immutable dense matrix over Z_d, entries stored canonically in [0, d)."""

    entries: tuple[tuple[int, ...], ...]
    modulus: Modulus

    def __post_init__(self):
        m = as_modulus(self.modulus)
        object.__setattr__(self, "modulus", m)
        if not self.entries:
            raise InvalidParams("empty matrix")
        width = len(self.entries[0])
        norm = []
        for row in self.entries:
            if len(row) != width:
                raise ShapeMismatch("ragged rows")
            norm.append(tuple(int(v) % m.d for v in row))
        object.__setattr__(self, "entries", tuple(norm))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], d: ModulusLike) -> "ModMatrix":
        return cls(tuple(tuple(r) for r in rows), as_modulus(d))

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence[int]], d: ModulusLike) -> "ModMatrix":
        return cls.from_rows(list(zip(*cols)), d)

    @classmethod
    def identity(cls, n: int, d: ModulusLike) -> "ModMatrix":
        return cls.from_rows([[1 if i == j else 0 for j in range(n)] for i in range(n)], d)

    @classmethod
    def zeros(cls, rows: int, cols: int, d: ModulusLike) -> "ModMatrix":
        return cls.from_rows([[0] * cols for _ in range(rows)], d)

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])

    @property
    def d(self) -> int:
        return self.modulus.d

    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, rc: tuple[int, int]) -> int:
        return self.entries[rc[0]][rc[1]]

    def row(self, i: int) -> Vec:
        return self.entries[i]

    def column(self, j: int) -> Vec:
        return tuple(row[j] for row in self.entries)

    def columns(self) -> list[Vec]:
        return [self.column(j) for j in range(self.cols)]

    def transpose(self) -> "ModMatrix":
        return ModMatrix(tuple(zip(*self.entries)), self.modulus)

    def _check_same_ring(self, other: "ModMatrix"):
        if self.modulus != other.modulus:
            raise ModulusMismatch(f"{self.d} vs {other.d}")

    def __matmul__(self, other: "ModMatrix") -> "ModMatrix":
        self._check_same_ring(other)
        if self.cols != other.rows:
            raise ShapeMismatch(f"{self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        d = self.d
        bt = list(zip(*other.entries))
        rows = tuple(
            tuple(sum(a * b for a, b in zip(row, col)) % d for col in bt)
            for row in self.entries
        )
        return ModMatrix(rows, self.modulus)

    def __add__(self, other: "ModMatrix") -> "ModMatrix":
        self._check_same_ring(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ShapeMismatch("addition needs equal shapes")
        return ModMatrix(
            tuple(
                tuple((a + b) % self.d for a, b in zip(ra, rb))
                for ra, rb in zip(self.entries, other.entries)
            ),
            self.modulus,
        )

    def __sub__(self, other: "ModMatrix") -> "ModMatrix":
        return self + (-other)

    def __neg__(self) -> "ModMatrix":
        return ModMatrix(tuple(tuple(-v % self.d for v in row) for row in self.entries), self.modulus)

    def apply(self, vec: Sequence[int]) -> Vec:
        if len(vec) != self.cols:
            raise ShapeMismatch(f"vector length {len(vec)} vs {self.cols} columns")
        d = self.d
        return tuple(sum(a * x for a, x in zip(row, vec)) % d for row in self.entries)

    def submatrix(self, r0: int, r1: int, c0: int, c1: int) -> "ModMatrix":
        return ModMatrix(tuple(row[c0:c1] for row in self.entries[r0:r1]), self.modulus)

    def with_scaled_column(self, j: int, unit: int) -> "ModMatrix":
        rows = [list(row) for row in self.entries]
        for row in rows:
            row[j] = row[j] * unit % self.d
        return ModMatrix.from_rows(rows, self.modulus)


def mat_mul(a: ModMatrix, b: ModMatrix) -> ModMatrix:
    """Product (a . b) mod d."""
    return a @ b


def block_matrix(blocks: Sequence[Sequence[ModMatrix | None]], d: ModulusLike) -> ModMatrix:
    """Assemble a matrix from a grid of blocks; None means a zero block.

    Row heights and column widths are inferred from the non-None blocks, so
    every grid row/column must contain at least one explicit block.
    """
    m = as_modulus(d)
    heights = [None] * len(blocks)
    widths = [None] * len(blocks[0])
    for i, brow in enumerate(blocks):
        for j, blk in enumerate(brow):
            if blk is None:
                continue
            if heights[i] is None:
                heights[i] = blk.rows
            elif heights[i] != blk.rows:
                raise ShapeMismatch("inconsistent block heights")
            if widths[j] is None:
                widths[j] = blk.cols
            elif widths[j] != blk.cols:
                raise ShapeMismatch("inconsistent block widths")
    if any(h is None for h in heights) or any(w is None for w in widths):
        raise ShapeMismatch("every block row/column needs a sized block")
    rows = []
    for i, brow in enumerate(blocks):
        for r in range(heights[i]):
            out = []
            for j, blk in enumerate(brow):
                if blk is None:
                    out.extend([0] * widths[j])
                else:
                    out.extend(blk.entries[r])
            rows.append(out)
    return ModMatrix.from_rows(rows, m)


# ---------------------------------------------------------------------------
# integer Smith normal form
# ---------------------------------------------------------------------------

IntRows = list[list[int]]


@dataclass(frozen=True)
class SnfResult:
    """U @ A @ V == S over the integers, U and V unimodular, S diagonal with
    non-negative entries each dividing the next."""

    s: tuple[tuple[int, ...], ...]
    u: tuple[tuple[int, ...], ...]
    v: tuple[tuple[int, ...], ...]

    def diagonal(self) -> list[int]:
        r = min(len(self.s), len(self.s[0]))
        return [self.s[i][i] for i in range(r)]


def _int_rows(matrix) -> IntRows:
    if isinstance(matrix, ModMatrix):
        return [list(row) for row in matrix.entries]
    return [list(map(int, row)) for row in matrix]


def _identity_rows(n: int) -> IntRows:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def smith_normal_form(matrix) -> SnfResult:
    """Smith normal form of an integer matrix (or the lift of a ModMatrix).

    Diagonalization uses 2x2 extended-gcd transforms (determinant 1), which
    keeps coefficients tame; a final sweep enforces the divisibility chain
    with the diag(a, b) -> diag(gcd, lcm) transform.
    """
    s = _int_rows(matrix)
    m, n = len(s), len(s[0])
    u = _identity_rows(m)
    v = _identity_rows(n)

    def swap_rows(i, j):
        s[i], s[j] = s[j], s[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in s:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def row_transform(i1, i2, a, b, c, e):
        # rows (i1, i2) <- [[a, b], [c, e]] @ rows (i1, i2)
        for mat in (s, u):
            r1, r2 = mat[i1], mat[i2]
            mat[i1] = [a * x + b * y for x, y in zip(r1, r2)]
            mat[i2] = [c * x + e * y for x, y in zip(r1, r2)]

    def col_transform(j1, j2, a, b, c, e):
        # cols (j1, j2) <- cols (j1, j2) @ [[a, c], [b, e]]
        for mat in (s, v):
            for row in mat:
                x, y = row[j1], row[j2]
                row[j1] = a * x + b * y
                row[j2] = c * x + e * y

    def clear_entry_by_rows(t, i):
        a, b = s[t][t], s[i][t]
        if b == 0:
            return
        if b % a == 0:
            q = b // a
            s[i] = [x - q * y for x, y in zip(s[i], s[t])]
            u[i] = [x - q * y for x, y in zip(u[i], u[t])]
        else:
            g, x, y = bezout(a, b)
            row_transform(t, i, x, y, -(b // g), a // g)

    def clear_entry_by_cols(t, j):
        a, b = s[t][t], s[t][j]
        if b == 0:
            return
        if b % a == 0:
            q = b // a
            for mat in (s, v):
                for row in mat:
                    row[j] -= q * row[t]
        else:
            g, x, y = bezout(a, b)
            col_transform(t, j, x, y, -(b // g), a // g)

    t = 0
    while t < min(m, n):
        pivot = None
        for i in range(t, m):
            for j in range(t, n):
                if s[i][j] != 0 and (pivot is None or abs(s[i][j]) < abs(s[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        if pivot[0] != t:
            swap_rows(t, pivot[0])
        if pivot[1] != t:
            swap_cols(t, pivot[1])
        while True:
            for i in range(t + 1, m):
                clear_entry_by_rows(t, i)
            for j in range(t + 1, n):
                clear_entry_by_cols(t, j)
            # gcd column ops may have re-dirtied the pivot column
            if all(s[i][t] == 0 for i in range(t + 1, m)) and all(
                s[t][j] == 0 for j in range(t + 1, n)
            ):
                break
        t += 1

    # enforce d_i | d_j for i < j on the diagonal
    r = min(m, n)
    for i in range(r):
        for j in range(i + 1, r):
            a, b = s[i][i], s[j][j]
            if b == 0 or (a != 0 and b % a == 0):
                continue
            if a == 0:
                swap_rows(i, j)
                swap_cols(i, j)
                continue
            g, x, y = bezout(a, b)
            row_transform(i, j, x, y, -(b // g), a // g)
            col_transform(i, j, 1, 1, -(y * b) // g, (x * a) // g)

    for i in range(r):
        if s[i][i] < 0:
            s[i] = [-x for x in s[i]]
            u[i] = [-x for x in u[i]]

    return SnfResult(
        tuple(tuple(row) for row in s),
        tuple(tuple(row) for row in u),
        tuple(tuple(row) for row in v),
    )


def det_int(matrix) -> int:
    """Exact determinant of a square integer matrix (fraction-free Bareiss)."""
    a = _int_rows(matrix)
    n = len(a)
    if any(len(row) != n for row in a):
        raise ShapeMismatch("determinant needs a square matrix")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


# ---------------------------------------------------------------------------
# solving, inverting, independence
# ---------------------------------------------------------------------------


def span_size(columns: ModMatrix) -> int:
    """Number of distinct Z_d-linear combinations of the columns."""
    snf = smith_normal_form(columns)
    d = columns.d
    size = 1
    for i in range(columns.cols):
        s = snf.s[i][i] if i < min(columns.rows, columns.cols) else 0
        size *= d // math.gcd(s, d)
    return size


def is_linearly_independent(columns: ModMatrix) -> bool:
    """True iff only the trivial combination of the columns vanishes.

    Equivalent to the span having exactly d^m elements: every invariant
    factor of the integer lift must be a unit mod d.
    """
    if columns.cols > columns.rows:
        return False
    snf = smith_normal_form(columns)
    d = columns.d
    return all(math.gcd(s, d) == 1 for s in snf.diagonal()) and len(snf.diagonal()) == columns.cols


def solve_linear(a: ModMatrix, b: Sequence[int]) -> Vec:
    """Some x with A x = b (mod d), the SNF-canonical one (free parameters 0).

    Raises NoSolution when the system is inconsistent over Z_d.
    """
    if len(b) != a.rows:
        raise ShapeMismatch(f"rhs length {len(b)} vs {a.rows} rows")
    d = a.d
    snf = smith_normal_form(a)
    rank = min(a.rows, a.cols)
    t = [sum(uu * bb for uu, bb in zip(row, b)) % d for row in snf.u]
    y = [0] * a.cols
    for i in range(a.rows):
        s = snf.s[i][i] if i < rank else 0
        ti = t[i]
        if s % d == 0:
            if ti % d != 0:
                raise NoSolution(f"row {i}: 0 = {ti} (mod {d})")
            continue
        g = math.gcd(s, d)
        if ti % g != 0:
            raise NoSolution(f"row {i}: gcd condition fails ({s} y = {ti} mod {d})")
        y[i] = (ti // g) * inverse_mod((s // g) % (d // g), d // g) % (d // g)
    x = [sum(vv * yy for vv, yy in zip(row, y)) % d for row in snf.v]
    return tuple(x)


def inverse_matrix(a: ModMatrix) -> ModMatrix:
    """Inverse of A mod d via the integer SNF; NotInvertible if det is no unit."""
    if not a.is_square():
        raise ShapeMismatch("inverse needs a square matrix")
    d = a.d
    snf = smith_normal_form(a)
    diag = snf.diagonal()
    if any(math.gcd(s, d) != 1 for s in diag):
        raise NotInvertible(f"det shares the factor gcd chain {diag} with {d}")
    # U A V = S  =>  A^{-1} = V S^{-1} U  (mod d)
    n = a.rows
    inv_diag = [inverse_mod(s % d if s % d else d, d) for s in diag]
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            row.append(sum(snf.v[i][t] * inv_diag[t] * snf.u[t][j] for t in range(n)) % d)
        rows.append(row)
    return ModMatrix.from_rows(rows, a.modulus)


def det_mod(a: ModMatrix) -> int:
    """det(A) reduced into Z_d."""
    return det_int(a) % a.d


# ---------------------------------------------------------------------------
# basis extension
# ---------------------------------------------------------------------------


def _complete_unimodular_vector(vec: Sequence[int], d: int) -> ModMatrix:
    """An n x n matrix over Z_d with first column `vec` and determinant 1.

    Requires gcd(vec entries, d) = 1, i.e. the vector has order d.  Follows
    the Bezout recursion on n: extract a common factor g from the first
    n-1 entries until the quotients are coprime to d, complete the quotient
    vector recursively, then stitch with a Bezout pair for (g, a_n).
    """
    a = [v % d for v in vec]
    n = len(a)
    if math.gcd(*a, d) != 1 if n > 1 else math.gcd(a[0], d) != 1:
        raise NotIndependent(f"vector {tuple(a)} has order < {d}")
    if n == 1:
        return ModMatrix.from_rows([[a[0]]], d)

    prefix, last = a[:-1], a[-1]
    if all(v == 0 for v in prefix):
        # (0, ..., 0, unit): shift columns, then rescale to determinant 1
        cols = [tuple(a)] + [
            tuple(1 if r == i else 0 for r in range(n)) for i in range(n - 1)
        ]
        mat = ModMatrix.from_columns(cols, d)
        return mat.with_scaled_column(1, inverse_mod(det_mod(mat), d))

    # grow g until the quotients share no factor with d
    g = math.gcd(*prefix, d)
    quotients = [v // g for v in prefix]
    while math.gcd(*quotients, d) != 1:
        t = math.gcd(*quotients, g)
        if t == 1:
            raise NotIndependent(f"factor extraction stalled on {tuple(a)} mod {d}")
        g *= t
        quotients = [v // g for v in prefix]

    b = _complete_unimodular_vector(quotients, d)  # first column = quotients, det unit
    bt = b.transpose()
    gq, x, y = bezout(g, last)
    scale = inverse_mod(gq % d if gq % d else d, d)
    s = x * scale % d
    r = -y * scale % d
    # rows of the transposed completion, Bezout row last
    at_rows = [list(prefix) + [last]]
    for i in range(1, n - 1):
        at_rows.append(list(bt.entries[i]) + [0])
    at_rows.append([r * q % d for q in quotients] + [s])
    mat = ModMatrix.from_rows(at_rows, d).transpose()
    delta = det_mod(mat)
    if delta != 1:
        mat = mat.with_scaled_column(1, inverse_mod(delta, d))
    return mat


def extend_to_basis(columns: ModMatrix) -> ModMatrix:
    """Extend m linearly independent columns to an invertible n x n matrix.

    The first m columns of the output equal the input columns verbatim.
    """
    if not is_linearly_independent(columns):
        raise NotIndependent("input columns are dependent over Z_d")
    n, m, d = columns.rows, columns.cols, columns.d
    if m == n:
        return columns

    cols = columns.columns()
    q_total = inverse_matrix(_complete_unimodular_vector(cols[0], d))
    for j in range(1, m):
        c = q_total.apply(cols[j])
        head, tail = list(c[:j]), list(c[j:])
        completion = _complete_unimodular_vector(tail, d)
        block = block_matrix(
            [
                [ModMatrix.identity(j, d), None],
                [None, inverse_matrix(completion)],
            ],
            d,
        )
        # kill the leading coefficients so column j maps onto e_j
        t_rows = _identity_rows(n)
        for i in range(j):
            t_rows[i][j] = -head[i] % d
        t = ModMatrix.from_rows(t_rows, d)
        q_total = t @ (block @ q_total)
    return inverse_matrix(q_total)
