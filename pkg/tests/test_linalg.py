from fractions import Fraction
from random import Random

from ncpoint.linalg import (
    Matrix,
    RowReducer,
    kernel_basis,
    kernel_basis_tracking_pivots,
    rank,
    rref,
    solve_affine,
    span_equal,
)
from ncpoint.scalars import T

F = Fraction


class TestRref:
    def test_proportional_rows(self):
        r, pivots, red = rref(Matrix([[F(1), F(2)], [F(2), F(4)]]))
        assert r == 1
        assert pivots == [0]
        assert red.rows[0] == [F(1), F(2)]
        assert red.rows[1] == [F(0), F(0)]

    def test_identity(self):
        r, pivots, _ = rref(Matrix.identity(3))
        assert r == 3
        assert pivots == [0, 1, 2]

    def test_rational_function_rank_one(self):
        # second row is t times the first: hand elimination gives rank 1
        m = Matrix([[F(1), T], [T, T * T]])
        r, pivots, red = rref(m)
        assert r == 1
        assert pivots == [0]
        assert red.rows[0] == [F(1), T]

    def test_empty(self):
        r, pivots, _ = rref(Matrix([], ncols=3))
        assert r == 0 and pivots == []

    def test_idempotent_and_row_space_preserved(self):
        rng = Random(7)
        for _ in range(20):
            m = Matrix([[F(rng.randint(-5, 5)) for _ in range(4)]
                        for _ in range(3)])
            r1, p1, red = rref(m)
            r2, p2, red2 = rref(red)
            assert (r1, p1) == (r2, p2)
            assert red2.rows == red.rows
            assert span_equal(
                [{j: v for j, v in enumerate(row) if v} for row in m.rows],
                [{j: v for j, v in enumerate(row) if v} for row in red.rows])

    def test_rank_equals_transpose_rank(self):
        rng = Random(3)
        for _ in range(25):
            ncols = rng.randint(1, 5)
            m = Matrix([[F(rng.randint(-4, 4)) for _ in range(ncols)]
                        for _ in range(rng.randint(1, 5))])
            assert rank(m) == rank(m.transpose())


class TestKernel:
    def test_single_row(self):
        basis = kernel_basis(Matrix([[F(1), F(1)]]))
        assert len(basis) == 1
        v = basis[0]
        assert v[0] + v[1] == 0 and any(v)

    def test_identity_empty_kernel(self):
        assert kernel_basis(Matrix.identity(2)) == []

    def test_rank_nullity_and_exactness(self):
        m = Matrix([[F(1), F(2), F(3)]])
        basis = kernel_basis(m)
        assert len(basis) == 2  # 3 columns - rank 1
        for v in basis:
            assert m.mul_vec(v) == [F(0)]

    def test_random_kernel_vectors_multiply_to_zero(self):
        rng = Random(11)
        for _ in range(25):
            m = Matrix([[F(rng.randint(-5, 5)) for _ in range(4)]
                        for _ in range(rng.randint(1, 4))])
            basis = kernel_basis(m)
            assert len(basis) == 4 - rank(m)
            for v in basis:
                assert all(e == 0 for e in m.mul_vec(v))


class TestSolveAffine:
    def test_scalar_equation(self):
        sol, ker = solve_affine(Matrix([[F(3)]]), [F(6)])
        assert sol == [F(2)] and ker == []

    def test_underdetermined(self):
        sol, ker = solve_affine(Matrix([[F(1), F(1)]]), [F(0)])
        assert sol == [F(0), F(0)]
        assert len(ker) == 1

    def test_inconsistent(self):
        sol, ker = solve_affine(Matrix([[F(1)], [F(2)]]), [F(1), F(1)])
        assert sol is None

    def test_solution_is_exact(self):
        rng = Random(5)
        for _ in range(20):
            m = Matrix([[F(rng.randint(-5, 5)) for _ in range(3)]
                        for _ in range(3)])
            b = [F(rng.randint(-5, 5)) for _ in range(3)]
            sol, ker = solve_affine(m, b)
            if sol is not None:
                assert m.mul_vec(sol) == b


class TestTrackingPivots:
    def test_specials_from_vanishing_pivot(self):
        # rank drops exactly at t = 0 and t = 1
        m = Matrix([[T, F(0)], [F(0), T - 1]])
        basis, specials = kernel_basis_tracking_pivots(m)
        assert basis == []
        assert F(0) in specials and F(1) in specials

    def test_no_specials_over_q(self):
        basis, specials = kernel_basis_tracking_pivots(Matrix([[F(1), F(1)]]))
        assert specials == []
        assert len(basis) == 1


class TestRowReducer:
    def test_insert_and_reduce(self):
        red = RowReducer()
        assert red.insert({0: F(1), 1: F(2)}) == 0
        assert red.insert({0: F(2), 1: F(4)}) is None
        assert red.insert({1: F(1)}) == 1
        assert red.rank == 2
        assert red.reduce({0: F(5), 1: F(7)}) == {}

    def test_canonical_span_comparison(self):
        a = [{0: F(1), 1: F(1)}, {1: F(1)}]
        b = [{0: F(1)}, {0: F(3), 1: F(2)}]
        assert span_equal(a, b)
        assert not span_equal(a, [{0: F(1), 1: F(1)}])
