"""Tests for the stable-range arithmetic."""

import pytest
from hypothesis import given
from hypothesis import strategies as st
from pydantic import ValidationError

from fihom.stable_range import (
    DegreeSpectralInput,
    colimit_cap,
    congruence_bounds,
    n_bound,
    propagate_claim,
    putman_threshold,
    threshold,
)


class TestClosedForms:
    """Tests for the closed-form thresholds."""

    @pytest.mark.parametrize(("k", "expected"), [(2, 11), (3, 22), (4, 44), (5, 88)])
    def test_threshold_for_d_1(self, k, expected):
        """Test |S| < 11 * 2^{k-2} for d = 1."""
        assert threshold(1, k) == expected

    def test_colimit_cap(self):
        """Test the largest subset size strictly below the threshold."""
        assert colimit_cap(1, 2) == 10
        assert colimit_cap(1, 1) == 5

    @pytest.mark.parametrize("k", [2, 3, 4, 5, 6])
    def test_putman_threshold(self, k):
        """Test 18 * 2^{k-2} - 3 for d = 1, always above the new threshold."""
        assert putman_threshold(1, k) == 18 * 2 ** (k - 2) - 3
        assert putman_threshold(1, k) > threshold(1, k)

    def test_n_bound(self):
        """Test N_{p,m} = 2^{m-1}(2d+9) - 4 + p."""
        assert n_bound(1, 2, 2) == 20
        assert n_bound(0, 3, 1) == 8


class TestCongruenceBounds:
    """Tests for the bound table."""

    def test_thresholds_are_integers(self):
        """Test that integral thresholds print without a fraction part."""
        table = congruence_bounds(1, 4)

        assert table.thresholds == {2: 11, 3: 22, 4: 44}
        assert all(isinstance(t, int) for t in table.thresholds.values())

    def test_row_bounds(self):
        """Test the column bounds at k = 2."""
        row = congruence_bounds(1, 3, p_max=3).row(2)

        assert (row.h0_bound, row.h1_bound) == (9, 10)
        assert row.higher == {2: 20, 3: 21}
        assert row.putman_threshold == 15

    def test_invalid_arguments(self):
        """Test that negative d and k_max < 2 are rejected."""
        with pytest.raises(ValueError):
            congruence_bounds(-1, 4)
        with pytest.raises(ValueError):
            congruence_bounds(1, 1)

    def test_missing_row(self):
        """Test that asking for a row outside the table fails."""
        with pytest.raises(KeyError):
            congruence_bounds(1, 3).row(7)


class TestClaimPropagation:
    """Tests for the induction on q."""

    @given(st.integers(min_value=0, max_value=8), st.integers(min_value=2, max_value=9))
    def test_matches_closed_forms(self, d, k_max):
        """Test that the induction reproduces the closed forms."""
        table = propagate_claim(DegreeSpectralInput(d=d), k_max)

        assert table.ok
        assert all(row.closed_form is True for row in table.rows if row.k >= 1)

    def test_base_cases(self):
        """Test deg E_00 <= d, deg E_01 <= d + 2 and deg E_11 <= d + 4."""
        table = propagate_claim(DegreeSpectralInput(d=3), 2)

        assert table.row(0).h0_bound == 3
        assert table.row(0).h1_bound is None
        assert (table.row(1).h0_bound, table.row(1).h1_bound) == (5, 7)

    def test_fractional_threshold(self):
        """Test that k < 2 gives a fractional threshold."""
        assert propagate_claim(DegreeSpectralInput(d=1), 2).row(0).threshold == 2.75

    def test_declared_bounds_tighten(self):
        """Test that a declared H_0 bound is used and closed forms are skipped."""
        spec = DegreeSpectralInput(d=1, declared_h0={1: 2})
        table = propagate_claim(spec, 3)

        assert table.row(1).h0_bound == 2
        assert all(row.closed_form is None for row in table.rows)

    def test_missing_hypotheses(self):
        """Test that the induction needs the bottom row to vanish."""
        table = propagate_claim(DegreeSpectralInput(d=1, bottom_row_vanishes=False), 4)

        assert not table.applicable
        assert table.rows == []
        assert not table.ok

    def test_negative_offset_rejected(self):
        """Test that d must be non-negative."""
        with pytest.raises(ValidationError):
            DegreeSpectralInput(d=-1)
