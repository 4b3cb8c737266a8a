"""Tests for exact linear algebra over Z and Q."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.polys.matrices.normalforms import invariant_factors

from fihom.errors import ContainmentError, DimensionError
from fihom.linalg import (
    GroupSummary,
    Lattice,
    LatticeBuilder,
    PresentedAbelianGroup,
    hnf,
    lattice_ops,
    left_kernel,
    snf,
)
from fihom.linalg.rings import Ring, matrix, rows_of

small_matrices = st.integers(min_value=1, max_value=5).flatmap(
    lambda rows: st.integers(min_value=1, max_value=5).flatmap(
        lambda cols: st.lists(
            st.lists(st.integers(min_value=-6, max_value=6), min_size=cols, max_size=cols),
            min_size=rows,
            max_size=rows,
        )
    )
)


def _ints(m):
    return [[int(x) for x in row] for row in rows_of(m)]


class TestSmithForm:
    """Tests for the Smith normal form."""

    def test_sharpness_relation_matrix(self):
        """Test the degree-3 relations of the sharpness module."""
        m = matrix([[1, 1, 0], [1, 0, 1], [0, 1, 1]], 3, Ring.Z)

        assert snf(m).invariant_factors == (1, 1, 2)

    def test_rational_factors_are_units(self):
        """Test that every invariant factor over Q is 1."""
        m = matrix([[1, 1, 0], [1, 0, 1], [0, 1, 1]], 3, Ring.Q)

        assert snf(m).invariant_factors == (1, 1, 1)

    def test_transforms_diagonalize(self):
        """Test that left * m * right is the diagonal of invariant factors."""
        m = matrix([[2, 4, 4], [-6, 6, 12], [10, -4, -16]], 3, Ring.Z)
        form = snf(m)

        diagonal = _ints(form.left * m * form.right)
        assert form.invariant_factors == (2, 6, 12)
        assert [diagonal[i][i] for i in range(3)] == [2, 6, 12]
        assert all(diagonal[i][j] == 0 for i in range(3) for j in range(3) if i != j)

    @settings(max_examples=60, deadline=None)
    @given(small_matrices)
    def test_matches_sympy(self, rows):
        """Test the invariant factors against sympy."""
        m = matrix(rows, len(rows[0]), Ring.Z)
        oracle = tuple(sorted(abs(int(x)) for x in invariant_factors(m) if x))

        assert tuple(sorted(snf(m).invariant_factors)) == oracle


class TestHermiteForm:
    """Tests for the row Hermite normal form."""

    def test_canonical_rows(self):
        """Test the row HNF of [[2, 4], [1, 3]].

        Pivots are positive and every entry above a pivot p lies in [0, p),
        so the canonical rows are [1, 1] and [0, 2].
        """
        form = hnf(matrix([[2, 4], [1, 3]], 2, Ring.Z))

        assert _ints(form.h) == [[1, 1], [0, 2]]
        assert form.pivots == (0, 1)

    def test_unimodular_transform(self):
        """Test u * m = [h; 0] with |det u| = 1."""
        m = matrix([[2, 4], [1, 3], [3, 7]], 2, Ring.Z)
        form = hnf(m)

        assert form.rank == 2
        assert _ints(form.u * m) == _ints(form.h) + [[0, 0]]
        assert abs(int(form.u.det())) == 1

    def test_kernel_rows(self):
        """Test that the rows of u below the rank span the left kernel."""
        m = matrix([[1, 2], [2, 4], [0, 1]], 2, Ring.Z)
        form = hnf(m)

        assert form.kernel.shape == (1, 3)
        assert _ints(form.kernel * m) == [[0, 0]]
        assert _ints(left_kernel(m)) == [[2, -1, 0]]

    def test_rational_mode_is_rref(self):
        """Test that Q gives the reduced row echelon form."""
        form = hnf(matrix([[2, 4], [1, 3]], 2, Ring.Q))

        assert _ints(form.h) == [[1, 0], [0, 1]]


class TestLattice:
    """Tests for sublattices and their quotients."""

    def test_sum_and_intersection(self):
        """Test 2Z + 3Z = Z and 2Z cap 3Z = 6Z."""
        two = Lattice.span([[2]], 1, Ring.Z)
        three = Lattice.span([[3]], 1, Ring.Z)

        assert (two + three).is_full
        assert two.intersection(three) == Lattice.span([[6]], 1, Ring.Z)

    def test_saturation(self):
        """Test that 2Z^2 saturates to Z^2."""
        lattice = Lattice.span([[2, 0], [0, 2]], 2, Ring.Z)

        assert not lattice.is_full
        assert lattice.saturation().is_full
        assert lattice.quotient().summary() == GroupSummary(ring=Ring.Z, torsion=(2, 2))

    def test_coordinates(self):
        """Test coordinates in the canonical basis, and membership."""
        lattice = Lattice.span([[1, 1, 0], [0, 2, 2]], 3, Ring.Z)

        assert lattice.contains([1, 3, 2])
        assert not lattice.contains([0, 1, 1])
        assert lattice.coordinates([0, 1, 1]) is None

    def test_quotient_of_requires_containment(self):
        """Test that quotient_of rejects a lattice outside the superlattice."""
        sub = Lattice.span([[1, 0]], 2, Ring.Z)
        sup = Lattice.span([[0, 1]], 2, Ring.Z)

        with pytest.raises(ContainmentError):
            sub.quotient_of(sup)

    def test_ambient_mismatch(self):
        """Test that lattices in different ranks cannot be added."""
        with pytest.raises(DimensionError):
            Lattice.zero(2, Ring.Z) + Lattice.zero(3, Ring.Z)

    def test_preimage(self):
        """Test the preimage of a lattice under a matrix."""
        m = matrix([[2, 0], [0, 1]], 2, Ring.Z)
        target = Lattice.span([[4, 0], [0, 1]], 2, Ring.Z)

        assert Lattice.preimage(m, target) == Lattice.span([[2, 0], [0, 1]], 2, Ring.Z)

    def test_builder_grows_through_gcd_step(self):
        """Test that lowering a pivot from 2 to 1 counts as growth."""
        builder = LatticeBuilder(2, Ring.Z)
        assert builder.add([2, 0])
        assert builder.add([0, 2])

        assert not builder.contains([1, 0])
        assert builder.add([1, 0])
        assert builder.contains([1, 0])
        assert not builder.add([3, 4])
        assert builder.lattice() == Lattice.span([[1, 0], [0, 2]], 2, Ring.Z)
        assert Lattice.span([[2, 0], [0, 2], [1, 0]], 2, Ring.Z) == builder.lattice()

    def test_lattice_ops(self):
        """Test the bundled sum, intersection, membership and quotient."""
        a = Lattice.span([[2, 0], [0, 1]], 2, Ring.Z)
        b = Lattice.span([[1, 0]], 2, Ring.Z)
        ops = lattice_ops(a, b)

        assert ops.sum.is_full
        assert ops.intersection == Lattice.span([[2, 0]], 2, Ring.Z)
        assert ops.contains([2, 5])
        assert not ops.contains([1, 0])
        assert ops.quotient.summary() == GroupSummary(ring=Ring.Z, torsion=(2,))


class TestPresentedGroup:
    """Tests for presented abelian groups."""

    def test_cyclic_summary(self):
        """Test Z^2 / <(2, 4)> = Z + Z/2."""
        group = PresentedAbelianGroup(Ring.Z, 2, ((2, 4),))

        assert group.summary() == GroupSummary(ring=Ring.Z, rank=1, torsion=(2,))
        assert str(group) == "Z + Z/2"

    def test_zero_group(self):
        """Test that a full relation lattice gives the zero group."""
        assert PresentedAbelianGroup(Ring.Z, 1, ((1,),)).is_zero
        assert str(PresentedAbelianGroup(Ring.Q, 0)) == "0"
