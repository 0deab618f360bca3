"""Recursive divide-and-conquer computation of relations-lattice Hermite bases.

Given a coprime pair (S, F) with S a nonsingular Smith form, the Hermite
basis H of the relations lattice factors as H = H2*H1 along any column
partition of its nontrivial band.  Part 1 builds a subproblem whose basis is
H1 by stacking the trailing rows of F onto S, compressing to a Hermite
modulus, and massaging it to Smith form; part 2 folds H1 through F, strips
the common divisor, massages again, and recurses for H2.  The two factors
overlay into H without any arithmetic.

The band is described by an index pair (k, m): the basis is the identity
outside an m-column window starting at column k.  The base case m == 1 is a
single modular division.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Callable

from .intmat import (
    DiagonalModulus,
    DimensionError,
    HermiteBasis,
    IntMat,
    PreconditionError,
    SmithForm,
    invariant_checks_enabled,
    matmul,
)
from .linmul import colmod_mul_hermite, colmod_mul_tall_square
from .massager import smith_massager
from .relations import to_smith_coprime
from .structured_hermite import coprime_parts, hermite_of_stack

TraceFn = Callable[[dict], None]


@dataclass(frozen=True)
class HBCall:
    """One invocation frame: modulus S, reduced F, band (k, m), budget."""

    s: SmithForm
    f: IntMat
    k: int
    m: int
    epsilon: float = 0.5

    def __post_init__(self):
        if self.s.dim != self.m or self.f.cols != self.m:
            raise DimensionError("S and F must have column dimension m")
        if not 0 <= self.k <= self.f.rows - self.m:
            raise PreconditionError("band index out of range: need 0 <= k <= n - m")
        for row in self.f.data:
            for v, d in zip(row, self.s.diag):
                if not 0 <= v < d:
                    raise PreconditionError("F must be reduced column-modulo S")


def base_case(s: int, f: IntMat, k: int) -> HermiteBasis:
    """Index (k, 1) Hermite basis of the relations lattice of (s*I_1, F).

    The only nontrivial column has diagonal s; the entries above it are the
    unique residues c with c*F[k] == -F[i] (mod s).  Requires F[k] to be a
    unit modulo s and F zero below row k, both consequences of the claimed
    index; violations raise.
    """
    if f.cols != 1:
        raise DimensionError("base case needs a single column")
    n = f.rows
    if not 0 <= k <= n - 1:
        raise PreconditionError("band index out of range")
    if s < 1:
        raise PreconditionError("modulus must be positive")
    col = [f[i, 0] % s for i in range(n)]
    for i in range(k + 1, n):
        if col[i] != 0:
            raise PreconditionError("claimed index (k, 1) but F is nonzero below row k")
    pivot = col[k]
    if gcd(pivot, s) != 1:
        raise PreconditionError("claimed index (k, 1) but the pivot entry is not a unit")
    inv = pow(pivot, -1, s) if s > 1 else 0
    rows = IntMat.identity(n).to_rows()
    rows[k][k] = s
    for i in range(k):
        rows[i][k] = (-col[i] * inv) % s
    return HermiteBasis(IntMat(rows, n, n), index_k=k, index_m=1)


def _overlay(h2: HermiteBasis, h1: HermiteBasis, k: int, m1: int, m2: int) -> HermiteBasis:
    """Assemble H2*H1 by block overlay; the product costs no arithmetic.

    H1 is index (k, m1) and H2 index (k+m1, m2): every block of the product
    is a block of one factor, because each factor is the identity where the
    other is nontrivial.
    """
    n = h1.dim
    rows = h2.mat.to_rows()
    for i in range(k + m1):
        for j in range(k, k + m1):
            rows[i][j] = h1.mat[i, j]
    out = HermiteBasis(IntMat(rows, n, n), index_k=k, index_m=m1 + m2)
    if invariant_checks_enabled():
        assert out.mat == matmul(h2.mat, h1.mat)
    return out


def hermite_basis(call: HBCall, trace: TraceFn | None = None) -> HermiteBasis:
    """Hermite basis of the relations lattice of a coprime (S, F).

    Preconditions: (S, F) coprime and the basis is index (k, m).  Splits the
    band m = floor(m/2) + ceil(m/2), computes H1 from the first part and H2
    from the second, and overlays.  The failure budget epsilon is split in
    four between the massager calls and the recursive calls, matching the
    interface of a Las Vegas massager engine; the deterministic engine
    ignores it.
    """
    s, f, k, m, eps = call.s, call.f, call.k, call.m, call.epsilon
    n = f.rows
    if m == 0:
        return HermiteBasis(IntMat.identity(n), index_k=k, index_m=0)
    if m == 1:
        h = base_case(s.diag[0], f, k)
        if trace is not None:
            trace({"kind": "base", "k": k, "s": s.diag[0], "f": f, "h": h})
        _check_result(h, s, f)
        return h
    m1 = m // 2
    m2 = m - m1
    # part 1: H1 from the relations lattice of ([S; A], F), A = last n-k-m1 rows
    a = f.submatrix(k + m1, n, 0, m)
    t = hermite_of_stack(a, s)
    mas1 = smith_massager(t.mat, eps / 4)
    s1, v1 = mas1.s, mas1.f
    f1 = colmod_mul_tall_square(f, s, v1, s1)
    s1bar, f1bar = _strip_to_band(s1, f1, m1)
    h1 = hermite_basis(HBCall(s1bar, f1bar, k, m1, eps / 4), trace)
    # part 2: H2 from the relations lattice of (S, H1*F)
    b = colmod_mul_hermite(h1, f, s)
    c, kk = coprime_parts(t, b, s)
    mas2 = smith_massager(kk.mat, eps / 4)
    s2, v2 = mas2.s, mas2.f
    f2 = colmod_mul_tall_square(c, DiagonalModulus(kk.diagonal()), v2, s2)
    s2bar, f2bar = _strip_to_band(s2, f2, m2)
    h2 = hermite_basis(HBCall(s2bar, f2bar, k + m1, m2, eps / 4), trace)
    h = _overlay(h2, h1, k, m1, m2)
    if trace is not None:
        trace({"kind": "split", "k": k, "m": m, "s": s, "f": f, "t": t,
               "h1": h1, "b": b, "c": c, "kk": kk, "s2bar": s2bar,
               "f2bar": f2bar, "h2": h2, "h": h})
    _check_result(h, s, f)
    return h


def _strip_to_band(s: SmithForm, f: IntMat, band: int) -> tuple[SmithForm, IntMat]:
    """Keep the trailing `band` columns; the leading ones must be trivial."""
    m = s.dim
    lead = m - band
    if any(d != 1 for d in s.diag[:lead]):
        raise PreconditionError(
            "subproblem modulus has a nontrivial invariant factor outside its band; "
            "the claimed index (k, m) is too narrow")
    return SmithForm(s.diag[lead:]), f.submatrix(0, f.rows, lead, m)


def _check_result(h: HermiteBasis, s: SmithForm, f: IntMat) -> None:
    det = 1
    for d in h.diagonal():
        det *= d
    if det != s.determinant():
        raise PreconditionError("determinant of the basis differs from det S")
    if invariant_checks_enabled():
        prod = matmul(h.mat, f)
        for row in prod.data:
            for v, d in zip(row, s.diag):
                if v % d != 0:
                    raise PreconditionError("H*F is not zero column-modulo S")


def relations_hermite_basis(m: IntMat, g: IntMat, epsilon: float = 0.5,
                            index: tuple[int, int] | None = None,
                            seed: int | None = None,
                            trace: TraceFn | None = None) -> HermiteBasis:
    """Hermite basis of the relations lattice of an arbitrary (M, G).

    M must have full column rank.  The input is first rewritten as a coprime
    Smith-modulus pair, then solved recursively.  `index` may supply a known
    (k, m) band of the answer; the default is the whole dimension (0, n).
    """
    n = g.rows
    s, f = to_smith_coprime(m, g, epsilon / 2, seed=seed)
    lead = 0
    while lead < s.dim and s.diag[lead] == 1:
        lead += 1
    s_hat = SmithForm(s.diag[lead:])
    f_hat = f.submatrix(0, n, lead, s.dim)
    k, band = index if index is not None else (0, n)
    if not 0 <= k <= n - band:
        raise PreconditionError("index band out of range")
    if s_hat.dim > band:
        raise PreconditionError("claimed index band is narrower than the modulus")
    pad = band - s_hat.dim
    s_pad = SmithForm((1,) * pad + s_hat.diag)
    f_pad = IntMat([[0] * pad + list(row) for row in f_hat.data], n, band)
    return hermite_basis(HBCall(s_pad, f_pad, k, band, epsilon / 2), trace)
