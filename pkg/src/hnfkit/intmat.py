"""Dense arbitrary-precision integer matrices and the reduction primitives.

Everything downstream works on `IntMat`: an immutable row-major matrix of
Python ints.  Diagonal moduli get their own small types (`DiagonalModulus`,
`SmithForm`) so that column/row reduction and divisibility-chain invariants
are checked at construction time.  `HermiteBasis` wraps a matrix that has
been verified to satisfy the Hermite invariants (upper triangular, positive
diagonal, off-diagonal entries reduced below the column diagonal).

Residues are always taken in [0, d), i.e. the mathematical mod, never the
sign-following remainder.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

_INVARIANT_CHECKS = False


def set_invariant_checks(enabled: bool) -> None:
    """Globally enable the expensive runtime assertion suite."""
    global _INVARIANT_CHECKS
    _INVARIANT_CHECKS = bool(enabled)


def invariant_checks_enabled() -> bool:
    return _INVARIANT_CHECKS


class PreconditionError(ValueError):
    """A mathematical precondition was violated (rank, reduction, shape...)."""


class DimensionError(PreconditionError):
    """Operands have incompatible dimensions."""


class ParseError(ValueError):
    """Matrix text input is malformed."""


class IntMat:
    """Immutable dense matrix of arbitrary-precision signed integers."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data: Iterable[Iterable[int]], rows: int | None = None,
                 cols: int | None = None):
        tup = tuple(tuple(int(x) for x in row) for row in data)
        if rows is None:
            rows = len(tup)
        if cols is None:
            cols = len(tup[0]) if tup else 0
        if rows < 0 or cols < 0:
            raise DimensionError("negative dimensions")
        if cols == 0:
            if any(len(r) != 0 for r in tup) or len(tup) not in (0, rows):
                raise DimensionError("ragged or mis-sized row data")
            tup = ((),) * rows
        elif len(tup) != rows or any(len(r) != cols for r in tup):
            raise DimensionError("ragged or mis-sized row data")
        if rows == 0:
            tup = ()
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "data", tup)

    def __setattr__(self, name, value):
        raise AttributeError("IntMat is immutable")

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMat":
        return cls([[0] * cols for _ in range(rows)], rows, cols)

    @classmethod
    def identity(cls, n: int) -> "IntMat":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], n, n)

    @classmethod
    def from_flat(cls, rows: int, cols: int, entries: Sequence[int]) -> "IntMat":
        if len(entries) != rows * cols:
            raise DimensionError("entry count does not match rows*cols")
        return cls([entries[i * cols:(i + 1) * cols] for i in range(rows)], rows, cols)

    @classmethod
    def diagonal(cls, entries: Sequence[int]) -> "IntMat":
        n = len(entries)
        return cls([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)], n, n)

    def __getitem__(self, ij) -> int:
        i, j = ij
        return self.data[i][j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.data[i]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self.data)

    def to_rows(self) -> list[list[int]]:
        return [list(r) for r in self.data]

    def transpose(self) -> "IntMat":
        return IntMat([[self.data[i][j] for i in range(self.rows)]
                       for j in range(self.cols)], self.cols, self.rows)

    def submatrix(self, r0: int, r1: int, c0: int, c1: int) -> "IntMat":
        if not (0 <= r0 <= r1 <= self.rows and 0 <= c0 <= c1 <= self.cols):
            raise DimensionError("submatrix range out of bounds")
        return IntMat([r[c0:c1] for r in self.data[r0:r1]], r1 - r0, c1 - c0)

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.data for x in r)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def __eq__(self, other) -> bool:
        return (isinstance(other, IntMat) and self.rows == other.rows
                and self.cols == other.cols and self.data == other.data)

    def __hash__(self):
        return hash((self.rows, self.cols, self.data))

    def __repr__(self):
        if self.rows == 0 or self.cols == 0:
            return f"IntMat({self.rows}x{self.cols})"
        body = "; ".join(" ".join(str(x) for x in r) for r in self.data)
        return f"IntMat({self.rows}x{self.cols}: {body})"


@dataclass(frozen=True)
class DiagonalModulus:
    """Nonnegative diagonal matrix stored as its diagonal vector."""

    diag: tuple[int, ...]

    def __init__(self, diag: Sequence[int]):
        entries = tuple(int(d) for d in diag)
        if any(d < 0 for d in entries):
            raise PreconditionError("diagonal modulus entries must be nonnegative")
        object.__setattr__(self, "diag", entries)

    @property
    def dim(self) -> int:
        return len(self.diag)

    def is_nonsingular(self) -> bool:
        return all(d > 0 for d in self.diag)

    def require_nonsingular(self) -> None:
        if not self.is_nonsingular():
            raise PreconditionError("diagonal modulus has a zero entry")

    def determinant(self) -> int:
        p = 1
        for d in self.diag:
            p *= d
        return p

    def ceil_log2_det(self) -> int:
        # ceil(log2 det) for a nonsingular modulus; 0 when det == 1
        d = self.determinant()
        return (d - 1).bit_length()

    def as_matrix(self) -> IntMat:
        return IntMat.diagonal(self.diag)


class SmithForm(DiagonalModulus):
    """Diagonal modulus with the Smith divisibility chain s_i | s_{i+1}."""

    def __init__(self, diag: Sequence[int]):
        entries = tuple(int(d) for d in diag)
        if any(d < 1 for d in entries):
            raise PreconditionError("Smith form entries must be >= 1")
        for a, b in zip(entries, entries[1:]):
            if b % a != 0:
                raise PreconditionError(f"divisibility chain broken: {a} does not divide {b}")
        object.__setattr__(self, "diag", entries)

    @classmethod
    def identity(cls, n: int) -> "SmithForm":
        return cls((1,) * n)

    @property
    def largest(self) -> int:
        """Largest invariant factor (1 for the empty form)."""
        return self.diag[-1] if self.diag else 1


class HermiteBasis:
    """Square nonsingular matrix verified to be in Hermite form.

    Optional index metadata (k, m) records that the basis is trivial outside
    an m-column band starting at column k: diagonals before the band and
    after it are all 1.
    """

    __slots__ = ("mat", "index_k", "index_m")

    def __init__(self, mat: IntMat, index_k: int | None = None,
                 index_m: int | None = None):
        if not mat.is_square():
            raise PreconditionError("Hermite basis must be square")
        n = mat.rows
        for i in range(n):
            if mat[i, i] <= 0:
                raise PreconditionError("Hermite basis needs positive diagonal entries")
            for j in range(i):
                if mat[i, j] != 0:
                    raise PreconditionError("Hermite basis must be upper triangular")
        for j in range(n):
            d = mat[j, j]
            for i in range(j):
                if not (0 <= mat[i, j] < d):
                    raise PreconditionError("off-diagonal entry not reduced below its column diagonal")
        if (index_k is None) != (index_m is None):
            raise PreconditionError("index metadata needs both k and m")
        if index_k is not None:
            k, m = index_k, index_m
            if not (0 <= k <= k + m <= n):
                raise PreconditionError("index (k, m) out of range")
            for i in range(k):
                if mat[i, i] != 1:
                    raise PreconditionError("index (k, m) basis needs unit leading diagonals")
            for i in range(k + m, n):
                if mat[i, i] != 1:
                    raise PreconditionError("index (k, m) basis needs unit trailing diagonals")
        object.__setattr__(self, "mat", mat)
        object.__setattr__(self, "index_k", index_k)
        object.__setattr__(self, "index_m", index_m)

    def __setattr__(self, name, value):
        raise AttributeError("HermiteBasis is immutable")

    @property
    def dim(self) -> int:
        return self.mat.rows

    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.mat[i, i] for i in range(self.dim))

    def determinant(self) -> int:
        p = 1
        for d in self.diagonal():
            p *= d
        return p

    def __eq__(self, other) -> bool:
        return isinstance(other, HermiteBasis) and self.mat == other.mat

    def __hash__(self):
        return hash(self.mat)

    def __repr__(self):
        idx = "" if self.index_k is None else f", index=({self.index_k},{self.index_m})"
        return f"HermiteBasis({self.mat!r}{idx})"


def colmod(a: IntMat, s: DiagonalModulus) -> IntMat:
    """Reduce each column of `a` modulo the matching diagonal entry of `s`."""
    if a.cols != s.dim:
        raise DimensionError(f"colmod: {a.cols} columns vs modulus of dimension {s.dim}")
    s.require_nonsingular()
    d = s.diag
    return IntMat([[row[j] % d[j] for j in range(a.cols)] for row in a.data],
                  a.rows, a.cols)


def rowmod(a: IntMat, s: DiagonalModulus) -> IntMat:
    """Reduce each row of `a` modulo the matching diagonal entry of `s`."""
    if a.rows != s.dim:
        raise DimensionError(f"rowmod: {a.rows} rows vs modulus of dimension {s.dim}")
    s.require_nonsingular()
    return IntMat([[x % d for x in row] for row, d in zip(a.data, s.diag)],
                  a.rows, a.cols)


def matmul(a: IntMat, b: IntMat) -> IntMat:
    """Exact product; an empty inner dimension yields the zero matrix."""
    if a.cols != b.rows:
        raise DimensionError(f"matmul: {a.rows}x{a.cols} times {b.rows}x{b.cols}")
    if a.cols == 0:
        return IntMat.zeros(a.rows, b.cols)
    bt = b.transpose().data
    out = []
    for arow in a.data:
        out.append([sum(x * y for x, y in zip(arow, bcol)) for bcol in bt])
    return IntMat(out, a.rows, b.cols)


def matadd(a: IntMat, b: IntMat) -> IntMat:
    if a.rows != b.rows or a.cols != b.cols:
        raise DimensionError("matadd: shape mismatch")
    return IntMat([[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a.data, b.data)],
                  a.rows, a.cols)


def matsub(a: IntMat, b: IntMat) -> IntMat:
    if a.rows != b.rows or a.cols != b.cols:
        raise DimensionError("matsub: shape mismatch")
    return IntMat([[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a.data, b.data)],
                  a.rows, a.cols)


def matneg(a: IntMat) -> IntMat:
    return IntMat([[-x for x in r] for r in a.data], a.rows, a.cols)


def scalar_mul(c: int, a: IntMat) -> IntMat:
    return IntMat([[c * x for x in r] for r in a.data], a.rows, a.cols)


def hstack(*mats: IntMat) -> IntMat:
    mats = tuple(m for m in mats)
    if not mats:
        raise DimensionError("hstack of nothing")
    rows = mats[0].rows
    if any(m.rows != rows for m in mats):
        raise DimensionError("hstack: row counts differ")
    return IntMat([sum((list(m.data[i]) for m in mats), []) for i in range(rows)],
                  rows, sum(m.cols for m in mats))


def vstack(*mats: IntMat) -> IntMat:
    mats = tuple(m for m in mats)
    if not mats:
        raise DimensionError("vstack of nothing")
    cols = mats[0].cols
    if any(m.cols != cols for m in mats):
        raise DimensionError("vstack: column counts differ")
    data = []
    for m in mats:
        data.extend(m.to_rows())
    return IntMat(data, sum(m.rows for m in mats), cols)


def determinant(a: IntMat) -> int:
    """Exact determinant by Bareiss fraction-free elimination."""
    if not a.is_square():
        raise DimensionError("determinant of a non-square matrix")
    n = a.rows
    if n == 0:
        return 1
    m = a.to_rows()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * pivot - mik * m[k][j]) // prev
            m[i][k] = 0
        prev = pivot
    return sign * m[n - 1][n - 1]


def lattice_contains(h: HermiteBasis, v: Sequence[int]) -> bool:
    """Is the row vector v an integer combination of the rows of h?

    Back-substitution column by column: the coefficient of row j is fixed by
    coordinate j once rows before j are peeled off, and each step must divide
    exactly by the diagonal.
    """
    n = h.dim
    if len(v) != n:
        raise DimensionError("vector length does not match basis dimension")
    x = [int(c) for c in v]
    rows = h.mat.data
    for j in range(n):
        q, r = divmod(x[j], rows[j][j])
        if r != 0:
            return False
        if q:
            for c in range(j, n):
                x[c] -= q * rows[j][c]
    return True


def lattice_equal(h1: HermiteBasis, h2: HermiteBasis) -> bool:
    """Hermite bases are canonical, so lattice equality is matrix equality."""
    return h1.mat == h2.mat


_TOKEN_OK = frozenset("0123456789")


def _parse_int(tok: str) -> int:
    body = tok[1:] if tok.startswith("-") else tok
    if not body or any(c not in _TOKEN_OK for c in body):
        raise ParseError(f"bad integer token {tok!r}")
    return int(tok)


def parse_matrix(text: str) -> IntMat:
    """Parse the matrix text format: `rows cols` then row-major entries."""
    toks = text.split()
    if len(toks) < 2:
        raise ParseError("matrix text needs at least the two dimension tokens")
    rows, cols = _parse_int(toks[0]), _parse_int(toks[1])
    if rows < 0 or cols < 0:
        raise ParseError("negative dimension")
    need = rows * cols
    if len(toks) - 2 != need:
        raise ParseError(f"expected {need} entries, found {len(toks) - 2}")
    return IntMat.from_flat(rows, cols, [_parse_int(t) for t in toks[2:]])


def format_matrix(a: IntMat) -> str:
    """Bit-exact writer: header line, then one row per line, trailing newline."""
    lines = [f"{a.rows} {a.cols}"]
    if a.cols > 0:
        lines.extend(" ".join(str(x) for x in row) for row in a.data)
    return "\n".join(lines) + "\n"
