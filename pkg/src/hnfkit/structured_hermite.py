"""Fast modular Hermite computations over a Smith-form modulus.

Two related problems are solved here for a nonsingular Smith form S and a
reduced A:

* `hermite_of_stack` computes the Hermite basis T of L(A) + L(S);
* `coprime_parts` computes blocks C, K with [I C; 0 K] the Hermite form of
  [I -A*T^{-1}; 0 S*T^{-1}], without ever forming T^{-1}, so the relations
  lattice of (S, A) equals that of (K, C) with coprime inputs.

Both run the same staged slicing driver: each stage fixes the leading half of
the columns not yet in Hermite form by solving a small Hermite problem modulo
the largest invariant factor of that slice, then pushes the transform through
the trailing columns with partially linearized modular products.  Halving the
slice each stage keeps every stage's scalar modulus near the average
invariant-factor bitlength instead of the largest one.
"""

from __future__ import annotations

from dataclasses import dataclass

from .howell import hermite_via_howell, hermite_with_eliminator
from .intmat import (
    DiagonalModulus,
    DimensionError,
    HermiteBasis,
    IntMat,
    PreconditionError,
    SmithForm,
    colmod,
    hstack,
    invariant_checks_enabled,
    lattice_contains,
    matadd,
    matmul,
    matsub,
    vstack,
)
from .linmul import colmod_mul_tall_square, colmod_mul_wide_tall


@dataclass(frozen=True)
class StageTransform:
    """Blocks of one stage's unimodular transform, entries in [0, s].

    e eliminates the slice into its Hermite block; q, c, k push the
    elimination through the rows above, beside, and below.  The starred
    blocks completing the unimodular matrix exist but are never computed;
    tests reconstruct them by exact division.
    """

    e: IntMat
    q: IntMat
    c: IntMat
    k: HermiteBasis
    s: int


def _require_reduced(a: IntMat, s: SmithForm, what: str) -> None:
    if a.cols != s.dim:
        raise DimensionError(f"{what}: column count vs modulus dimension")
    for row in a.data:
        for v, d in zip(row, s.diag):
            if not 0 <= v < d:
                raise PreconditionError(f"{what} must be reduced column-modulo the Smith form")


def structured_hermite_blocks(f: IntMat, t: HermiteBasis, a: IntMat,
                              s: SmithForm) -> tuple[IntMat, IntMat, IntMat, IntMat]:
    """Blocks (G, Q, C, K) of the Hermite form of the bordered stack.

    The bordered matrix [I F 0 0; 0 T 0 I; 0 A I 0; 0 S 0 0] has Hermite form
    [I G 0 Q; 0 T 0 *; 0 0 I C; 0 0 0 K].  Requires L(S) and L(A) inside
    L(T), and F, A reduced modulo the largest invariant factor s.  Computed
    chunkwise: rows of A (and of F) are processed m at a time, each chunk by
    one Hermite lift over Z/(s^2) of a matrix of dimension at most 3m.
    """
    m = s.dim
    if t.dim != m or f.cols != m or a.cols != m:
        raise DimensionError("block computation needs matching column dimensions")
    sval = s.largest
    for j, d in enumerate(s.diag):
        if not lattice_contains(t, [d if i == j else 0 for i in range(m)]):
            raise PreconditionError("L(S) is not contained in L(T)")
    for row in a.data:
        if not lattice_contains(t, row):
            raise PreconditionError("L(A) is not contained in L(T)")
    if sval == 1:
        return (IntMat.zeros(f.rows, m), IntMat.zeros(f.rows, m),
                IntMat.zeros(a.rows, m), IntMat.identity(m))
    tmat = t.mat
    smat = s.as_matrix()
    k_block: IntMat | None = None
    c_rows: list[list[int]] = []
    if a.rows == 0:
        probe = vstack(hstack(tmat, IntMat.identity(m)),
                       hstack(smat, IntMat.zeros(m, m)))
        hb = hermite_via_howell(probe, sval).mat
        if hb.submatrix(0, m, 0, m) != tmat:
            raise PreconditionError("T is not the Hermite basis of its stack")
        k_block = hb.submatrix(m, 2 * m, m, 2 * m)
    for lo in range(0, a.rows, m):
        hi = min(lo + m, a.rows)
        h = hi - lo
        chunk = a.submatrix(lo, hi, 0, m)
        bordered = vstack(
            hstack(tmat, IntMat.zeros(m, h), IntMat.identity(m)),
            hstack(chunk, IntMat.identity(h), IntMat.zeros(h, m)),
            hstack(smat, IntMat.zeros(m, h), IntMat.zeros(m, m)))
        hb = hermite_via_howell(bordered, sval).mat
        if hb.submatrix(0, m, 0, m) != tmat or \
                hb.submatrix(m, m + h, m, m + h) != IntMat.identity(h):
            raise PreconditionError("T is not the Hermite basis of its stack")
        c_rows.extend(hb.submatrix(m, m + h, m + h, 2 * m + h).to_rows())
        kb = hb.submatrix(m + h, 2 * m + h, m + h, 2 * m + h)
        if k_block is not None and kb != k_block:
            raise PreconditionError("inconsistent trailing block across chunks")
        k_block = kb
    g_rows: list[list[int]] = []
    q_rows: list[list[int]] = []
    for lo in range(0, f.rows, m):
        hi = min(lo + m, f.rows)
        h = hi - lo
        chunk = f.submatrix(lo, hi, 0, m)
        bordered = vstack(
            hstack(IntMat.identity(h), chunk, IntMat.zeros(h, m)),
            hstack(IntMat.zeros(m, h), tmat, IntMat.identity(m)),
            hstack(IntMat.zeros(m, h), smat, IntMat.zeros(m, m)))
        hb = hermite_via_howell(bordered, sval).mat
        if hb.submatrix(h, h + m, h, h + m) != tmat:
            raise PreconditionError("T is not the Hermite basis of its stack")
        g_rows.extend(hb.submatrix(0, h, h, h + m).to_rows())
        q_rows.extend(hb.submatrix(0, h, h + m, h + 2 * m).to_rows())
        kb = hb.submatrix(h + m, h + 2 * m, h + m, h + 2 * m)
        if k_block is not None and kb != k_block:
            raise PreconditionError("inconsistent trailing block across chunks")
        k_block = kb
    assert k_block is not None
    return (IntMat(g_rows, f.rows, m), IntMat(q_rows, f.rows, m),
            IntMat(c_rows, a.rows, m), k_block)


def stage_transform(f1: IntMat, a1: IntMat, s1: SmithForm
                    ) -> tuple[StageTransform, IntMat, HermiteBasis]:
    """One stage's transform blocks from the leading slice (F1, A1, S1).

    Returns the transform, the finished rows G1 above the new Hermite block,
    and the Hermite block T1 itself; [I G1; 0 T1] is in Hermite form.  When
    the slice's largest invariant factor is 1 the stage is a no-op with an
    identity block and zero transforms.
    """
    _require_reduced(f1, s1, "upper slice")
    _require_reduced(a1, s1, "lower slice")
    m1 = s1.dim
    sval = s1.largest
    if sval == 1:
        ident = HermiteBasis(IntMat.identity(m1))
        tr = StageTransform(IntMat.zeros(m1, a1.rows), IntMat.zeros(f1.rows, m1),
                            IntMat.zeros(a1.rows, m1), ident, 1)
        return tr, IntMat.zeros(f1.rows, m1), ident
    t1, e = hermite_with_eliminator(s1, a1)
    g1, q, c, k = structured_hermite_blocks(f1, t1, a1, s1)
    tr = StageTransform(e, q, c, HermiteBasis(k), sval)
    if invariant_checks_enabled():
        verify_stage_identity(tr, g1, t1, f1, a1, s1)
    return tr, g1, t1


def _exact_div_cols(num: IntMat, s: SmithForm, context: str) -> IntMat:
    out = []
    for row in num.data:
        new = []
        for v, d in zip(row, s.diag):
            q, r = divmod(v, d)
            if r:
                raise PreconditionError(f"stage identity failed ({context}): inexact division")
            new.append(q)
        out.append(new)
    return IntMat(out, num.rows, num.cols)


def verify_stage_identity(tr: StageTransform, g1: IntMat, t1: HermiteBasis,
                          f1: IntMat, a1: IntMat, s1: SmithForm) -> None:
    """Reconstruct the four starred blocks by exact division.

    The stage contract says the transform maps [F1; 0; A1; S1] to
    [G1; T1; 0; 0] for some integer starred blocks multiplying the S1 rows.
    Each starred block is the exact column quotient of the residual by the
    slice moduli, so the four divisions succeeding is the identity.
    """
    _exact_div_cols(matsub(t1.mat, matmul(tr.e, a1)), s1, "eliminator rows")
    _exact_div_cols(matsub(matsub(g1, f1), matmul(tr.q, t1.mat)), s1, "upper rows")
    _exact_div_cols(matadd(a1, matmul(tr.c, t1.mat)), s1, "middle rows")
    _exact_div_cols(matmul(tr.k.mat, t1.mat), s1, "modulus rows")
    for j in range(t1.dim):
        d = t1.mat[j, j]
        for i in range(g1.rows):
            if not 0 <= g1[i, j] < d:
                raise PreconditionError("stage identity failed: G1 not reduced below T1")


def stage_apply(tr: StageTransform, f2: IntMat, a2: IntMat, s2: SmithForm
                ) -> tuple[IntMat, IntMat]:
    """Push one stage's transform through the trailing columns.

    Returns ([F2 + Q*E*A2; E*A2], [A2 + C*E*A2; K*E*A2]), each reduced
    column-modulo S2.  Three steps: a wide-by-tall product for B = E*A2, one
    stacked tall-by-square product for [Q; I; C; K]*B, and a modular add.
    """
    if f2.cols != s2.dim or a2.cols != s2.dim:
        raise DimensionError("trailing slice does not match its modulus")
    m1 = tr.k.dim
    row_bounds = DiagonalModulus((2 * tr.s,) * m1)
    b = colmod_mul_wide_tall(tr.e, row_bounds, a2, s2)
    stacked = vstack(tr.q, IntMat.identity(m1), tr.c, tr.k.mat)
    col_bounds = DiagonalModulus((2 * tr.s,) * m1)
    prod = colmod_mul_tall_square(stacked, col_bounds, b, s2)
    qb = prod.submatrix(0, f2.rows, 0, s2.dim)
    eb = prod.submatrix(f2.rows, f2.rows + m1, 0, s2.dim)
    cb = prod.submatrix(f2.rows + m1, f2.rows + m1 + a2.rows, 0, s2.dim)
    kb = prod.submatrix(f2.rows + m1 + a2.rows, f2.rows + 2 * m1 + a2.rows, 0, s2.dim)
    new_f = vstack(_add_mod(f2, qb, s2), eb)
    new_a = vstack(_add_mod(a2, cb, s2), kb)
    return new_f, new_a


def _add_mod(a: IntMat, b: IntMat, s: SmithForm) -> IntMat:
    return IntMat([[(x + y) % d for x, y, d in zip(ra, rb, s.diag)]
                   for ra, rb in zip(a.data, b.data)], a.rows, a.cols)


def _stage_split(mbar: int) -> tuple[int, int]:
    m1 = (mbar + 1) // 2
    return m1, mbar - m1


def _check_stage_bound(s_full: SmithForm, sval: int, mbar: int) -> None:
    # bitlength(s) <= 2*bitlength(det S)/mbar + 1 at every stage
    det_bits = max(1, s_full.determinant().bit_length())
    if sval.bit_length() * mbar > 2 * det_bits + mbar:
        raise AssertionError("stage modulus exceeded the average-bitlength bound")


def hermite_of_stack(a: IntMat, s: SmithForm) -> HermiteBasis:
    """Hermite basis T of L(A) + L(S), by staged slicing.

    A must be reduced column-modulo S.  Stage k fixes the leading half of the
    columns not yet in Hermite form, so the scalar modulus of every stage is
    bounded near the average invariant-factor bitlength.
    """
    _require_reduced(a, s, "stack block")
    m = s.dim
    if m == 0:
        return HermiteBasis(IntMat.identity(0))
    done_rows: list[list[int]] = []   # finished T rows; width grows to m
    fbar = IntMat.zeros(0, m)
    abar = a
    sbar = s
    d = 0
    while sbar.dim > 0:
        mbar = sbar.dim
        m1, _ = _stage_split(mbar)
        s1 = SmithForm(sbar.diag[:m1])
        s2 = SmithForm(sbar.diag[m1:])
        if invariant_checks_enabled():
            _check_stage_bound(s, s1.largest, mbar)
        f1 = fbar.submatrix(0, fbar.rows, 0, m1)
        f2 = fbar.submatrix(0, fbar.rows, m1, mbar)
        a1 = abar.submatrix(0, abar.rows, 0, m1)
        a2 = abar.submatrix(0, abar.rows, m1, mbar)
        tr, g1, t1 = stage_transform(f1, a1, s1)
        for row, grow in zip(done_rows, g1.data):
            row.extend(grow)
        for i in range(m1):
            done_rows.append([0] * d + list(t1.mat.row(i)))
        fbar, abar = stage_apply(tr, f2, a2, s2)
        sbar = s2
        d += m1
    return HermiteBasis(IntMat(done_rows, m, m))


def coprime_parts(t: HermiteBasis, a: IntMat, s: SmithForm
                  ) -> tuple[IntMat, HermiteBasis]:
    """Blocks (C, K) rewriting the relations lattice of (S, A) coprimely.

    Requires t == hermite_of_stack(a, s).  [I C; 0 K] is the Hermite form of
    [I -A*T^{-1}; 0 S*T^{-1}]; the relations lattice of (K, C) equals that of
    (S, A) and the pair (K, C) is coprime.  Runs the slicing driver with the
    eliminator step skipped: the Hermite block of each slice is read off T,
    and the transform's upper block is zero, so only the A-side products are
    performed.
    """
    _require_reduced(a, s, "relations input")
    m = s.dim
    n = a.rows
    if t.dim != m:
        raise DimensionError("basis dimension does not match the modulus")
    if invariant_checks_enabled():
        if t != hermite_of_stack(a, s):
            raise PreconditionError("T is not the Hermite basis of the stack")
    if m == 0:
        return IntMat.zeros(n, 0), HermiteBasis(IntMat.identity(0))
    c_cols: list[IntMat] = []
    k_grid = [[0] * m for _ in range(m)]
    abar = a
    sbar = s
    d = 0
    while sbar.dim > 0:
        mbar = sbar.dim
        m1, m2 = _stage_split(mbar)
        s1 = SmithForm(sbar.diag[:m1])
        s2 = SmithForm(sbar.diag[m1:])
        if invariant_checks_enabled():
            _check_stage_bound(s, s1.largest, mbar)
        a1 = abar.submatrix(0, abar.rows, 0, m1)
        a2 = abar.submatrix(0, abar.rows, m1, mbar)
        t1 = HermiteBasis(t.mat.submatrix(d, d + m1, d, d + m1))
        sval = s1.largest
        if sval == 1:
            cst = IntMat.zeros(abar.rows, m1)
            kst = IntMat.identity(m1)
        else:
            _, _, cst, kst = structured_hermite_blocks(IntMat.zeros(0, m1), t1, a1, s1)
        c_cols.append(cst.submatrix(0, n, 0, m1))
        for i in range(abar.rows - n):
            k_grid[i][d:d + m1] = list(cst.row(n + i))
        for i in range(m1):
            k_grid[d + i][d:d + m1] = list(kst.row(i))
        # residual of the fixed T rows against the trailing slice
        tgam = colmod(t.mat.submatrix(d, d + m1, d + m1, d + mbar), s2)
        ck = vstack(cst, kst)
        bounds = DiagonalModulus((2 * sval,) * m1)
        prod = colmod_mul_tall_square(ck, bounds, tgam, s2)
        new_top = _add_mod(a2, prod.submatrix(0, abar.rows, 0, m2), s2)
        abar = vstack(new_top, prod.submatrix(abar.rows, abar.rows + m1, 0, m2))
        sbar = s2
        d += m1
    c = hstack(*c_cols) if c_cols else IntMat.zeros(n, 0)
    k = HermiteBasis(IntMat(k_grid, m, m))
    if t.determinant() * k.determinant() != s.determinant():
        raise PreconditionError("determinant identity det(T)*det(K) == det(S) failed")
    for j in range(m):
        dj = k.mat[j, j]
        for i in range(n):
            if not 0 <= c[i, j] < dj:
                raise PreconditionError("C block not reduced below the K diagonal")
    return c, k
