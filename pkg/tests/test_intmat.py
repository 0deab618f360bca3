import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hnfkit.intmat import (
    DiagonalModulus,
    DimensionError,
    HermiteBasis,
    IntMat,
    ParseError,
    PreconditionError,
    SmithForm,
    colmod,
    determinant,
    format_matrix,
    lattice_contains,
    lattice_equal,
    matmul,
    parse_matrix,
    rowmod,
)
from .conftest import rand_mat

EX4 = IntMat([[1, 2, 3], [4, 5, 6], [7, 8, 1]])
EX4_HNF = IntMat([[1, 2, 3], [0, 3, 6], [0, 0, 8]])


class TestColmod:
    def test_worked_column(self):
        got = colmod(IntMat([[39], [30], [3]]), DiagonalModulus([24]))
        assert got == IntMat([[15], [6], [3]])

    def test_mod_one_is_zero(self):
        a = IntMat([[5, -7], [2, 9]])
        assert colmod(a, DiagonalModulus([1, 1])) == IntMat.zeros(2, 2)

    def test_negative_entries(self):
        assert colmod(IntMat([[-1, 7]]), DiagonalModulus([5, 4])) == IntMat([[4, 3]])

    def test_idempotent(self, rng):
        for _ in range(25):
            n, m = rng.randint(1, 5), rng.randint(1, 5)
            s = DiagonalModulus([rng.randint(1, 30) for _ in range(m)])
            a = rand_mat(rng, n, m, -99, 99)
            r = colmod(a, s)
            assert colmod(r, s) == r

    def test_difference_divisible(self, rng):
        for _ in range(25):
            n, m = rng.randint(1, 5), rng.randint(1, 5)
            s = DiagonalModulus([rng.randint(1, 30) for _ in range(m)])
            a = rand_mat(rng, n, m, -99, 99)
            r = colmod(a, s)
            for i in range(n):
                for j in range(m):
                    assert (a[i, j] - r[i, j]) % s.diag[j] == 0

    def test_zero_modulus_rejected(self):
        with pytest.raises(PreconditionError):
            colmod(IntMat([[1]]), DiagonalModulus([0]))

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            colmod(IntMat([[1, 2]]), DiagonalModulus([3]))


class TestRowmod:
    def test_per_row_residues(self):
        got = rowmod(IntMat([[7, -1], [9, 9]]), DiagonalModulus([5, 4]))
        assert got == IntMat([[2, 4], [1, 1]])

    def test_zero_matrix(self):
        z = IntMat.zeros(2, 3)
        assert rowmod(z, DiagonalModulus([7, 9])) == z

    def test_mod_one(self):
        a = IntMat([[5, 6], [7, 8]])
        assert rowmod(a, DiagonalModulus([1, 1])) == IntMat.zeros(2, 2)


class TestMatmul:
    def test_massager_product(self):
        assert matmul(EX4, IntMat([[19], [10], [3]])) == IntMat([[48], [144], [216]])

    def test_identity(self, rng):
        a = rand_mat(rng, 4, 4)
        assert matmul(a, IntMat.identity(4)) == a

    def test_against_schoolbook(self, rng):
        a = rand_mat(rng, 4, 4)
        b = rand_mat(rng, 4, 4)
        expect = [[sum(a[i, k] * b[k, j] for k in range(4)) for j in range(4)]
                  for i in range(4)]
        assert matmul(a, b) == IntMat(expect)

    def test_empty_inner_dimension(self):
        a = IntMat([], 2, 0)
        b = IntMat([], 0, 3)
        assert matmul(a, b) == IntMat.zeros(2, 3)


class TestDeterminant:
    def test_golden(self):
        assert determinant(EX4) == 24

    def test_identity(self):
        assert determinant(IntMat.identity(5)) == 1

    def test_repeated_row(self):
        assert determinant(IntMat([[1, 2], [1, 2]])) == 0

    def test_multiplicative(self, rng):
        for _ in range(20):
            n = rng.randint(1, 6)
            a = rand_mat(rng, n, n, -9, 9)
            b = rand_mat(rng, n, n, -9, 9)
            assert determinant(matmul(a, b)) == determinant(a) * determinant(b)


class TestLattice:
    def test_golden_row_membership(self):
        h = HermiteBasis(EX4_HNF)
        assert lattice_contains(h, [1, 2, 3])

    def test_zero_vector(self):
        h = HermiteBasis(EX4_HNF)
        assert lattice_contains(h, [0, 0, 0])

    def test_strict_diagonal(self):
        assert not lattice_contains(HermiteBasis(IntMat([[2]])), [1])

    def test_every_basis_row(self, rng):
        from .conftest import rand_hermite
        for _ in range(20):
            h = rand_hermite(rng, rng.randint(1, 5))
            for i in range(h.dim):
                assert lattice_contains(h, h.mat.row(i))

    def test_equality_is_matrix_equality(self):
        assert lattice_equal(HermiteBasis(IntMat.identity(2)),
                             HermiteBasis(IntMat.identity(2)))
        assert not lattice_equal(HermiteBasis(IntMat([[2]])),
                                 HermiteBasis(IntMat([[3]])))


class TestHermiteBasisType:
    def test_rejects_lower_triangle(self):
        with pytest.raises(PreconditionError):
            HermiteBasis(IntMat([[1, 0], [1, 1]]))

    def test_rejects_unreduced(self):
        with pytest.raises(PreconditionError):
            HermiteBasis(IntMat([[1, 5], [0, 3]]))

    def test_index_metadata(self):
        h = HermiteBasis(IntMat([[1, 0, 3], [0, 1, 6], [0, 0, 8]]), index_k=2, index_m=1)
        assert (h.index_k, h.index_m) == (2, 1)
        with pytest.raises(PreconditionError):
            HermiteBasis(IntMat([[2, 0], [0, 1]]), index_k=1, index_m=1)


class TestSmithFormType:
    def test_chain_enforced(self):
        with pytest.raises(PreconditionError):
            SmithForm([2, 3])
        assert SmithForm([2, 6, 12]).largest == 12

    def test_zero_rejected(self):
        with pytest.raises(PreconditionError):
            SmithForm([0, 2])


class TestTextFormat:
    def test_golden_round_trip(self):
        text = format_matrix(EX4)
        assert text == "3 3\n1 2 3\n4 5 6\n7 8 1\n"
        assert parse_matrix(text) == EX4

    @settings(max_examples=60, deadline=None)
    @given(st.integers(0, 4), st.integers(0, 4), st.data())
    def test_round_trip(self, rows, cols, data):
        entries = [data.draw(st.integers(-(10 ** 30), 10 ** 30))
                   for _ in range(rows * cols)]
        a = IntMat.from_flat(rows, cols, entries)
        assert parse_matrix(format_matrix(a)) == a

    def test_rejects_bad_tokens(self):
        with pytest.raises(ParseError):
            parse_matrix("1 1\n+3\n")
        with pytest.raises(ParseError):
            parse_matrix("1 2\n5\n")
        with pytest.raises(ParseError):
            parse_matrix("1 1 5 9")

    def test_zero_dimension(self):
        a = IntMat([], 0, 3)
        assert parse_matrix(format_matrix(a)) == a
        b = IntMat([[], []], 2, 0)
        assert parse_matrix(format_matrix(b)) == b
