"""Tests for FI-homology, syzygies and subset colimits."""

import pytest

from fihom.errors import DimensionError
from fihom.fi import FIMap
from fihom.fi.maps import map_from_rows
from fihom.homology import (
    fi_homology,
    free_cover,
    koszul_complex,
    minimal_degree,
    regularity,
    regularity_check,
    subset_colimit,
    syzygy_degrees,
)
from fihom.homology.colimit import colimit_failures
from fihom.homology.koszul import (
    derivative_homology_check,
    euler_characteristic_check,
    kernel_generation_check,
    resolution_check,
)
from fihom.homology.syzygy import graded_piece_check, relation_degree_check
from fihom.linalg.rings import Ring


class TestKoszulComplex:
    """Tests for the complex computing FI-homology."""

    def test_simplex_ranks(self, free_module):
        """Test that M(0) at n = 3 gives the augmented simplex of [3]."""
        complex_ = koszul_complex(free_module("trivial", 0, 3), 3, 3)

        assert complex_.ranks == (1, 3, 3, 1)
        assert all(complex_.homology(k).is_zero for k in range(4))

    def test_m1_ranks(self, free_module):
        """Test the chain ranks of M(1) at n = 2."""
        complex_ = koszul_complex(free_module("trivial", 1, 2), 2, 2)

        assert complex_.ranks == (2, 2, 0)
        assert complex_.euler_characteristic() == 0

    def test_top_capped_by_degree(self, free_module):
        """Test that the complex stops at homological degree n."""
        assert koszul_complex(free_module("trivial", 0, 4), 2, 5).top == 2

    @pytest.mark.parametrize("n", [0, 1, 2, 3, 4])
    def test_euler_characteristic(self, free_module, n):
        """Test that chain and homology Euler characteristics agree."""
        assert euler_characteristic_check(free_module("trivial", 1, 4), n).ok


class TestFIHomology:
    """Tests for H_p over every degree."""

    @pytest.mark.parametrize(("kind", "degree"), [("trivial", 0), ("trivial", 1), ("sign", 2), ("regular", 2)])
    def test_free_modules_acyclic(self, free_module, kind, degree):
        """Test deg H_0 M(W) = m and H_p M(W) = 0 for p >= 1."""
        table = fi_homology(free_module(kind, degree, 4), 3)

        assert table.degree(0).value == degree
        assert all(table.degree(p).is_neg_inf for p in range(1, 4))
        assert table.h0_consistent

    def test_sharpness_degrees(self, sharpness_q):
        """Test deg H_0 W = 1 and deg H_1 W = 2."""
        table = fi_homology(sharpness_q.quotient, 2)

        assert table.degree(0).value == 1
        assert table.degree(1).value == 2
        assert not table.degree(1).truncation_limited
        assert str(table.group(1, 2)) == "Q"

    def test_regularity_bound(self, sharpness_q):
        """Test deg H_p <= p + k + d - 1 on the sharpness module."""
        report = regularity_check(sharpness_q.quotient, 1, 2, 2)

        assert report.applicable
        assert report.ok
        assert [row.bound for row in report.rows] == [3, 4]

    def test_regularity_inapplicable(self, sharpness_q):
        """Test that an understated k leaves the check inapplicable."""
        report = regularity_check(sharpness_q.quotient, 0, 2, 2)

        assert not report.applicable
        assert report.rows == []

    def test_derivative_homology(self, sharpness_q):
        """Test deg D^a W <= k + d - 1 - a and the kernel bound on the sharpness module."""
        report = derivative_homology_check(sharpness_q.sub, 1, 2, 2)

        assert [row.derivative_bound for row in report.rows] == [1, 0]
        assert all(row.holds is True for row in report.rows)

    def test_regularity_of_free_module(self, free_module):
        """Test that a free module has regularity -inf."""
        assert regularity(fi_homology(free_module("trivial", 1, 3), 2)).is_neg_inf

    @pytest.mark.parametrize(("s", "t"), [(0, 0), (0, 2), (1, 1), (1, 3), (2, 2), (2, 4)])
    def test_pointwise_resolution(self, s, t):
        """Test that C_*(S, T) resolves the bijections S -> T."""
        report = resolution_check(s, t)

        assert report.resolves
        assert report.bijections == (2 if (s, t) == (2, 2) else 1 if s == t else 0)


class TestSyzygies:
    """Tests for free covers and the syzygy bound."""

    def test_free_cover_of_sharpness(self, sharpness_q):
        """Test that W is covered by M(1)."""
        cover = free_cover(sharpness_q.quotient)

        assert cover.generator_degree.value == 1
        assert cover.free.ranks == (0, 1, 2, 3, 4, 5)
        assert cover.cover.check_equivariance() == []

    def test_syzygy_bound(self, sharpness_q):
        """Test deg H_0(X_p) <= k + d - 1 + p."""
        report = syzygy_degrees(sharpness_q.quotient, 2)

        assert (report.k, report.d) == (1, 2)
        assert report.rows[0].degree.value == 1
        assert report.rows[1].degree.value == 2
        assert report.ok

    def test_relation_degree(self, sharpness_q):
        """Test that W is related in degree <= max(deg H_0, deg H_1)."""
        report = relation_degree_check(sharpness_q.quotient)

        assert report.bound == 2
        assert report.holds is True

    def test_kernel_generation(self, free_module):
        """Test that the kernel of M(1) -> M(0), e_i -> e, is generated by e_1 - e_2."""
        phi = map_from_rows(free_module("trivial", 1, 4), free_module("trivial", 0, 4), [[[1]] * n for n in range(5)])
        report = kernel_generation_check(phi)

        assert (report.k, report.d, report.bound) == (0, 1, 2)
        assert report.kernel_h0_degree.value == 2
        assert report.holds is True

    def test_kernel_generation_zero_map(self, free_module):
        """Test that the zero map has the whole source as kernel."""
        m = free_module("trivial", 1, 4)
        report = kernel_generation_check(FIMap.zero(m, free_module("trivial", 0, 4)))

        assert report.kernel_h0_degree.value == 1
        assert report.holds is True

    def test_graded_piece(self, sharpness_q):
        """Test that the top graded piece is free on H_0(W)_m once m >= deg H_1."""
        report = graded_piece_check(sharpness_q.quotient, 2)

        assert report.applicable
        assert report.ok


class TestColimits:
    """Tests for colimits over small subsets."""

    def test_free_module_generated_in_degree_one(self, free_module):
        """Test that M(1)_[3] is the colimit over subsets of size <= 1."""
        result = subset_colimit(free_module("trivial", 1, 3, Ring.Q), 3, 1)

        assert result.is_isomorphism

    def test_cap_too_small(self, free_module):
        """Test that M(1) is not a colimit over the empty set."""
        assert not subset_colimit(free_module("trivial", 1, 3, Ring.Q), 2, 0).surjective

    def test_cap_exceeding_t(self, free_module):
        """Test that the cap cannot exceed |T|."""
        with pytest.raises(DimensionError):
            subset_colimit(free_module("trivial", 1, 3), 2, 3)

    def test_sharpness_minimal_degree(self, sharpness_q):
        """Test that the minimal cap equals max(deg H_0, deg H_1) = 2."""
        report = minimal_degree(sharpness_q.quotient)

        assert report.minimal == 2
        assert report.agrees is True
        assert 3 in report.failures

    def test_concentrated_module(self, concentrated_in_two):
        """Test that a module supported in degree 2 needs cap 3."""
        report = minimal_degree(concentrated_in_two)

        assert report.minimal == 3
        assert report.agrees is True
        assert colimit_failures(concentrated_in_two, 2) == [3, 4]
