import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cyclat.errors import PreconditionError
from cyclat.intlinalg import (
    IntMatrix,
    Lattice,
    QuotientInvariants,
    charpoly,
    column_rank,
    det,
    hnf,
    inv_unimodular,
    kernel_basis,
    quotient_invariants,
    snf,
    solve_columns,
    xgcd,
)


def mat(rows):
    return IntMatrix(rows)


@st.composite
def small_matrices(draw, max_dim=5, max_entry=9):
    m = draw(st.integers(1, max_dim))
    n = draw(st.integers(1, max_dim))
    ent = draw(
        st.lists(
            st.lists(st.integers(-max_entry, max_entry), min_size=n, max_size=n),
            min_size=m,
            max_size=m,
        )
    )
    return IntMatrix(ent)


class TestMatrixBasics:
    def test_shape_and_indexing(self):
        a = mat([[1, 2, 3], [4, 5, 6]])
        assert (a.rows, a.cols) == (2, 3)
        assert a[1, 2] == 6
        assert a.col(1) == (2, 5)
        assert a.row(0) == (1, 2, 3)

    def test_empty_shapes(self):
        z = IntMatrix.zeros(3, 0)
        assert (z.rows, z.cols) == (3, 0)
        assert IntMatrix.zeros(0, 2).cols == 2
        assert z.is_zero()

    def test_ragged_rejected(self):
        with pytest.raises(PreconditionError):
            IntMatrix([[1, 2], [3]])

    def test_immutable(self):
        a = mat([[1]])
        with pytest.raises(AttributeError):
            a.rows = 2

    def test_matmul(self):
        a = mat([[1, 2], [3, 4]])
        b = mat([[0, 1], [1, 0]])
        assert a @ b == mat([[2, 1], [4, 3]])
        assert a.apply((1, 1)) == (3, 7)

    def test_arithmetic(self):
        a = mat([[1, 2], [3, 4]])
        assert a + a == 2 * a
        assert a - a == IntMatrix.zeros(2, 2)
        assert -a == -1 * a

    def test_stacking(self):
        a = mat([[1], [2]])
        b = mat([[3], [4]])
        assert IntMatrix.hstack(a, b) == mat([[1, 3], [2, 4]])
        assert IntMatrix.vstack(a, b) == mat([[1], [2], [3], [4]])
        assert IntMatrix.block_diag(mat([[1]]), mat([[2]])) == mat([[1, 0], [0, 2]])

    def test_pow(self):
        a = mat([[0, -1], [1, -1]])  # order 3
        assert a.pow(3) == IntMatrix.identity(2)
        assert a.pow(0) == IntMatrix.identity(2)


class TestXgcd:
    @pytest.mark.parametrize(
        "a,b",
        [(12, 18), (-12, 18), (0, 5), (5, 0), (0, 0), (17, 1), (-4, -6), (240, 46)],
    )
    def test_bezout(self, a, b):
        g, x, y = xgcd(a, b)
        assert g == a * x + b * y
        assert g >= 0
        if a or b:
            assert a % g == 0 and b % g == 0


class TestHnf:
    def test_same_lattice_same_form(self):
        # both column sets span {(x, y) : x == y mod 2}
        a = IntMatrix.from_cols([(2, 0), (1, 1)])
        b = IntMatrix.from_cols([(1, 1), (-1, 1)])
        ha, _ = hnf(a)
        hb, _ = hnf(b)
        assert ha == hb == IntMatrix.from_cols([(1, 1), (0, 2)])

    def test_different_lattices_differ(self):
        ha, _ = hnf(IntMatrix.from_cols([(2, 0), (0, 1)]))
        hb, _ = hnf(IntMatrix.from_cols([(1, 0), (0, 2)]))
        assert ha == IntMatrix.from_cols([(2, 0), (0, 1)])
        assert hb == IntMatrix.from_cols([(1, 0), (0, 2)])
        assert ha != hb

    def test_zero_columns_trail(self):
        h, u = hnf(mat([[1, 2, 3]]))
        assert h == mat([[1, 0, 0]])
        assert mat([[1, 2, 3]]) @ u == h

    def test_rank_deficient(self):
        a = mat([[1, 2], [2, 4], [3, 6]])
        h, u = hnf(a)
        assert a @ u == h
        assert column_rank(a) == 1

    @given(small_matrices())
    @settings(max_examples=120, deadline=None)
    def test_transform_identity(self, a):
        h, u = hnf(a)
        assert a @ u == h
        # U unimodular: inverse exists
        inv_unimodular(u)

    @given(small_matrices())
    @settings(max_examples=60, deadline=None)
    def test_canonical_under_column_shuffle(self, a):
        cols = a.columns()
        rng = random.Random(11)
        shuffled = cols[:]
        rng.shuffle(shuffled)
        shuffled = [tuple(-x for x in c) if i % 2 else c for i, c in enumerate(shuffled)]
        b = IntMatrix.from_cols(shuffled, rows=a.rows)
        assert hnf(a)[0] == hnf(b)[0]


class TestKernel:
    def test_explicit(self):
        k = kernel_basis(mat([[1, 2, 3]]))
        assert k.rank == 2
        assert k.basis == IntMatrix.from_cols([(1, 1, -1), (0, 3, -2)])

    def test_full_rank_trivial_kernel(self):
        assert kernel_basis(mat([[2, 0], [0, 3]])).is_zero()

    @given(small_matrices())
    @settings(max_examples=120, deadline=None)
    def test_annihilates_and_spans(self, a):
        k = kernel_basis(a)
        if k.rank:
            assert (a @ k.basis).is_zero()
        assert column_rank(a) + k.rank == a.cols


class TestSnf:
    @pytest.mark.parametrize(
        "rows,expect",
        [
            ([[2, 4], [6, 8]], (2, 4)),
            ([[1, 0], [0, 0]], (1, 0)),
            ([[0, 0], [0, 0]], (0, 0)),
            ([[6, 10], [10, 6]], (2, 32)),
            ([[2, 0, 0], [0, 3, 0]], (1, 6)),
        ],
    )
    def test_known_diagonals(self, rows, expect):
        assert snf(mat(rows)).diag == expect

    @given(small_matrices())
    @settings(max_examples=120, deadline=None)
    def test_transforms_and_divisibility(self, a):
        r = snf(a)
        assert r.u @ a @ r.v == r.s
        d = r.diag
        for x, y in zip(d, d[1:]):
            assert x >= 0 and y >= 0
            if x:
                assert y % x == 0
            else:
                assert y == 0
        inv_unimodular(r.u)
        inv_unimodular(r.v)

    @given(small_matrices(max_dim=4))
    @settings(max_examples=60, deadline=None)
    def test_det_matches_diag_product(self, a):
        if not a.is_square():
            return
        prod = 1
        for x in snf(a).diag:
            prod *= x
        assert abs(det(a)) == prod


class TestSolveAndInverse:
    def test_solvable(self):
        a = mat([[2, 0], [0, 3]])
        x = solve_columns(a, mat([[4], [9]]))
        assert x == mat([[2], [3]])

    def test_unsolvable_divisibility(self):
        assert solve_columns(mat([[2, 0], [0, 3]]), mat([[3], [3]])) is None

    def test_unsolvable_out_of_span(self):
        assert solve_columns(mat([[1], [1]]), mat([[1], [2]])) is None

    def test_underdetermined_picks_integral(self):
        a = mat([[2, 3]])
        x = solve_columns(a, mat([[1]]))
        assert x is not None and a @ x == mat([[1]])

    def test_inverse(self):
        u = mat([[1, 1], [0, 1]])
        assert inv_unimodular(u) == mat([[1, -1], [0, 1]])
        with pytest.raises(PreconditionError):
            inv_unimodular(mat([[2, 0], [0, 1]]))


class TestCharpoly:
    def test_swap(self):
        assert charpoly(mat([[0, 1], [1, 0]])) == (-1, 0, 1)

    def test_order_three_rotation(self):
        assert charpoly(mat([[0, -1], [1, -1]])) == (1, 1, 1)

    def test_companion(self):
        # companion matrix of x^3 - 2x + 5
        c = mat([[0, 0, -5], [1, 0, 2], [0, 1, 0]])
        assert charpoly(c) == (5, -2, 0, 1)

    def test_det_consistency(self):
        a = mat([[3, 1, 0], [1, -2, 4], [0, 5, 1]])
        cp = charpoly(a)
        assert cp[0] == (-1) ** 3 * det(a)


class TestLattice:
    def test_membership(self):
        lat = Lattice.spanned_by([(2, 0), (1, 1)], ambient=2)
        assert lat.member((3, 1))
        assert lat.member((0, 2))
        assert not lat.member((1, 0))
        assert lat.coords((3, 1)) is not None

    def test_equality_is_subgroup_equality(self):
        a = Lattice.spanned_by([(2, 0), (1, 1)], ambient=2)
        b = Lattice.spanned_by([(1, 1), (-1, 1)], ambient=2)
        assert a == b
        assert hash(a) == hash(b)
        assert a != Lattice.spanned_by([(1, 0), (0, 2)], ambient=2)

    def test_sum_and_intersection(self):
        a = Lattice.spanned_by([(2, 0), (0, 1)], ambient=2)
        b = Lattice.spanned_by([(1, 0), (0, 3)], ambient=2)
        assert a + b == Lattice.full(2)
        assert a.intersect(b) == Lattice.spanned_by([(2, 0), (0, 3)], ambient=2)

    def test_intersection_with_zero(self):
        z = Lattice(3)
        assert Lattice.full(3).intersect(z) == z

    def test_index(self):
        assert Lattice.spanned_by([(2, 0), (0, 3)], ambient=2).index() == 6
        with pytest.raises(PreconditionError):
            Lattice.spanned_by([(2, 0)], ambient=2).index()

    def test_transform(self):
        shear = mat([[1, 1], [0, 1]])
        lat = Lattice.spanned_by([(2, 0), (0, 2)], ambient=2)
        assert lat.transform(shear) == Lattice.spanned_by([(2, 0), (2, 2)], ambient=2)

    def test_contains(self):
        big = Lattice.spanned_by([(1, 1), (0, 2)], ambient=2)
        small = Lattice.spanned_by([(2, 2), (0, 4)], ambient=2)
        assert big.contains(small)
        assert not small.contains(big)

    @given(small_matrices(max_dim=4, max_entry=6))
    @settings(max_examples=80, deadline=None)
    def test_coords_roundtrip(self, a):
        lat = Lattice(a.rows, a)
        rng = random.Random(7)
        if lat.rank == 0:
            return
        coeffs = [rng.randint(-5, 5) for _ in range(lat.rank)]
        v = lat.basis.apply(coeffs)
        got = lat.coords(v)
        assert got == tuple(coeffs)


class TestQuotientInvariants:
    def test_finite(self):
        q = quotient_invariants(2, Lattice.spanned_by([(2, 0), (0, 4)], ambient=2))
        assert q == QuotientInvariants((2, 4), 0)
        assert q.order() == 8
        assert q.describe() == "Z/2 x Z/4"

    def test_mixed(self):
        q = quotient_invariants(2, Lattice.spanned_by([(2, 0)], ambient=2))
        assert q == QuotientInvariants((2,), 1)
        with pytest.raises(PreconditionError):
            q.order()

    def test_trivial(self):
        q = quotient_invariants(2, Lattice.full(2))
        assert q.is_trivial()
        assert q.describe() == "0"

    def test_between_proper_lattices(self):
        top = Lattice.spanned_by([(2, 0), (0, 1)], ambient=2)
        bottom = Lattice.spanned_by([(4, 0), (0, 3)], ambient=2)
        # top/bottom has coordinate matrix diag(2, 3), i.e. the group Z/6
        assert quotient_invariants(top, bottom) == QuotientInvariants((6,), 0)

    def test_non_containment_rejected(self):
        with pytest.raises(PreconditionError):
            quotient_invariants(
                Lattice.spanned_by([(2, 0)], ambient=2),
                Lattice.spanned_by([(1, 0)], ambient=2),
            )

    def test_invariant_factor_chain_not_primary(self):
        # Z/2 x Z/2 x Z/4, not the primary decomposition ordering
        sub = Lattice.spanned_by([(2, 0, 0), (0, 2, 0), (0, 0, 4)], ambient=3)
        assert quotient_invariants(3, sub).torsion == (2, 2, 4)
