"""Tests for FI-modules, maps and functors."""

from dataclasses import replace

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fihom.errors import CoxeterError, DimensionError, HypothesisError, TruncationError
from fihom.fi import (
    FBModule,
    FIMap,
    FreeBasisLabel,
    Injection,
    adjacent_word,
    apply_injection,
    cokernel_of_map,
    derivative_and_kernel,
    generation_filtration,
    h0,
    iterated_derivative,
    kernel_of_map,
    quotient_module,
    shift,
    span_submodule,
    torsion_kernel,
    validate_presentation,
)
from fihom.fi.functors import derivative_kernel_degrees, generated_in_degree, generation_degree_from_derivative
from fihom.fi.module import FIModule, degree_of
from fihom.fi.permutations import compose, sign, transposition
from fihom.linalg import Lattice
from fihom.linalg.rings import Ring, matrix, rows_of


def _ints(m):
    return [[int(x) for x in row] for row in rows_of(m)]


class TestPermutations:
    """Tests for injections and adjacent-transposition words."""

    @given(st.integers(min_value=1, max_value=6).flatmap(lambda n: st.permutations(range(1, n + 1))))
    def test_word_reproduces_permutation(self, perm):
        """Test that composing the word gives back the permutation."""
        perm = tuple(perm)
        n = len(perm)
        out = tuple(range(1, n + 1))
        for j in adjacent_word(perm):
            out = compose(transposition(n, j, j + 1), out)

        assert out == perm
        assert sign(perm) == (-1) ** len(adjacent_word(perm))

    def test_factor(self):
        """Test f = sigma o standard inclusion."""
        f = Injection(2, 4, (3, 1))
        sigma = Injection.from_permutation(f.factor())

        assert sigma.compose(Injection.standard(2, 4)) == f

    def test_missing(self):
        """Test the order-preserving injection missing a point."""
        assert Injection.missing(3, 2).images == (1, 3)

    def test_invalid_injection(self):
        """Test that repeated images are rejected."""
        with pytest.raises(DimensionError):
            Injection(2, 3, (1, 1))


class TestFBModule:
    """Tests for FB-modules."""

    def test_regular_rank(self):
        """Test that the regular representation of S_3 has rank 6."""
        assert FBModule.regular(3).rank(3) == 6

    def test_direct_sum(self):
        """Test ranks of a direct sum in different degrees."""
        w = FBModule.trivial(1).direct_sum(FBModule.sign(2))

        assert w.ranks == (0, 1, 1)
        assert w.nonzero_degrees == [1, 2]

    def test_coxeter_checked(self):
        """Test that a non-involution is rejected."""
        with pytest.raises(CoxeterError):
            FBModule.concentrated(Ring.Z, 2, 1, [[[2]]])

    def test_braid_checked(self):
        """Test that mixed signs violate the braid relation."""
        with pytest.raises(CoxeterError):
            FBModule.concentrated(Ring.Z, 3, 1, [[[1]], [[-1]]])


class TestFreeModule:
    """Tests for free FI-modules."""

    def test_ranks(self, free_module):
        """Test rank M(W)_n = C(n, m) * rank W_m."""
        assert free_module("trivial", 1, 4).ranks == (0, 1, 2, 3, 4)
        assert free_module("regular", 2, 4).ranks == (0, 0, 2, 6, 12)

    def test_presentation_holds(self, free_module):
        """Test the FI relations on a free module."""
        assert validate_presentation(free_module("regular", 2, 4)).ok
        assert validate_presentation(free_module("sign", 2, 4)).ok

    def test_broken_inclusion_flagged(self, free_module):
        """Test that iota_1 sending e_1 to e_2 breaks t_2 iota_2 iota_1 = iota_2 iota_1."""
        m = free_module("trivial", 1, 3)
        broken = replace(m, inclusions=(m.inclusions[0], matrix([[0, 1]], 2, Ring.Z), m.inclusions[2]), _cache={})
        report = validate_presentation(broken)

        assert not report.ok
        assert {(v.relation, v.degree) for v in report.violations} == {("R5", 2)}

    def test_injection_action(self, free_module):
        """Test that f_* moves e_S to e_f(S)."""
        m = free_module("trivial", 1, 3)
        f = Injection(1, 3, (3,))

        assert _ints(m.injection_matrix(f)) == [[0, 0, 1]]
        image = apply_injection(m, f, m.basis_element(1, 0))
        assert [int(x) for x in image.coords] == [0, 0, 1]

    def test_sign_action(self, free_module):
        """Test that t_1 negates e_{12} in M(sign_2)."""
        m = free_module("sign", 2, 3)
        label = FreeBasisLabel(2, (1, 2), 1)
        k = m.label_index(3, label)

        assert rows_of(m.transposition(3, 1))[k][k] == -1

    def test_label_outside_module(self, free_module):
        """Test that a label of the wrong degree is rejected."""
        m = free_module("trivial", 1, 3)

        with pytest.raises(DimensionError):
            m.label_index(2, FreeBasisLabel(2, (1, 2), 1))

    def test_truncation_enforced(self, free_module):
        """Test that degrees beyond the truncation are rejected."""
        with pytest.raises(TruncationError):
            free_module("trivial", 1, 3).rank(4)


class TestSubmodules:
    """Tests for spans and quotients."""

    def test_span_fills_degree_three(self, free_module):
        """Test that e_1 + e_2 spans all of Q^3 in degree 3."""
        m = free_module("trivial", 1, 4, Ring.Q)
        v = m.from_labels(2, {FreeBasisLabel(1, (1,), 1): 1, FreeBasisLabel(1, (2,), 1): 1})
        sub = span_submodule(m, [v])

        assert [lat.rank for lat in sub.lattices] == [0, 0, 1, 3, 4]
        assert sub.lattices[3].is_full

    def test_span_closed_after_gcd_step(self, free_module):
        """Test closure when a generator only lowers a pivot of the inherited span."""
        m = free_module("trivial", 1, 3)
        label = FreeBasisLabel(1, (1,), 1)
        sub = span_submodule(m, [m.from_labels(2, {label: 1}), m.from_labels(1, {label: 2})])

        assert sub.lattices[1] == Lattice.span([[2]], 1, Ring.Z)
        assert sub.lattices[2].is_full
        assert sub.lattices[3].is_full
        for n, lat in enumerate(sub.lattices):
            for i in range(1, n):
                assert lat.contains_lattice(lat.image(m.transposition(n, i)))
        assert str(quotient_module(m, sub).summary(1)) == "Z/2"

    def test_quotient_summaries(self, sharpness_q, sharpness_z):
        """Test W_1 = Q, W_2 = Q, W_3 = 0 over Q and W_3 = Z/2 over Z."""
        w = sharpness_q.quotient

        assert [str(w.summary(n)) for n in range(4)] == ["0", "Q", "Q", "0"]
        assert str(sharpness_z.quotient.summary(3)) == "Z/2"
        assert degree_of(w).value == 2
        assert not degree_of(w).truncation_limited

    def test_span_needs_based_module(self, sharpness_q):
        """Test that span_submodule rejects a presented module."""
        with pytest.raises(HypothesisError):
            span_submodule(sharpness_q.quotient, [])

    def test_quotient_by_everything(self, free_module):
        """Test that M / M is zero."""
        m = free_module("trivial", 0, 3)
        everything = span_submodule(m, [m.basis_element(0, 0)])

        assert quotient_module(m, everything).is_zero

    def test_zero_module(self):
        """Test the zero module in every degree."""
        zero = FIModule.zero(Ring.Z, 3)

        assert zero.is_zero
        assert degree_of(zero).is_neg_inf


class TestMaps:
    """Tests for FI-maps."""

    def test_identity(self, free_module):
        """Test kernel and cokernel of the identity."""
        m = free_module("trivial", 1, 3)
        phi = FIMap.identity(m)

        assert phi.check_equivariance() == []
        assert kernel_of_map(phi).module.is_zero
        assert cokernel_of_map(phi).is_zero

    def test_zero_map(self, free_module):
        """Test that the kernel of the zero map is everything."""
        m = free_module("trivial", 1, 3)
        kernel = kernel_of_map(FIMap.zero(m, m))

        assert all(lat.is_full for lat in kernel.lattices)


class TestFunctors:
    """Tests for shift, derivative and H_0."""

    def test_shift_of_m0(self, free_module):
        """Test that S M(0) = M(0), one degree shorter."""
        s = shift(free_module("trivial", 0, 4))

        assert s.ranks == (1, 1, 1, 1)

    def test_derivative_of_m1(self, free_module):
        """Test D M(1) = M(0) and K M(1) = 0."""
        dv, kv = derivative_and_kernel(free_module("trivial", 1, 4))

        assert [dv.summary(n).rank for n in range(dv.truncation + 1)] == [1, 1, 1, 1]
        assert kv.module.is_zero

    def test_iterated_derivative_vanishes(self, free_module):
        """Test D^{k+1} M(k) = 0."""
        assert iterated_derivative(free_module("trivial", 1, 4), 2).is_zero
        assert not iterated_derivative(free_module("regular", 2, 4), 2).is_zero

    def test_torsion_of_sharpness(self, sharpness_q):
        """Test that the only torsion of W sits in degree 2."""
        kw = torsion_kernel(sharpness_q.quotient).module

        assert [kw.summary(n).rank for n in range(kw.truncation + 1)] == [0, 0, 1, 0, 0]

    def test_h0_of_free(self, free_module):
        """Test deg H_0(M(m)) = m."""
        assert h0(free_module("regular", 2, 4)).degree.value == 2
        assert len(h0(free_module("trivial", 1, 4)).generators) == 1

    def test_generation(self, free_module, sharpness_q):
        """Test generation degrees of M(1) and W."""
        assert generated_in_degree(free_module("trivial", 1, 4), 1)
        assert not generated_in_degree(free_module("trivial", 1, 4), 0)
        assert h0(sharpness_q.quotient).degree.value == 1

    def test_derivative_bounds_generation(self, sharpness_q):
        """Test that derivative degrees bound the generation degree."""
        assert generation_degree_from_derivative(sharpness_q.quotient, 3).ok

    def test_derivative_order_checked(self, free_module):
        """Test that D^0 is rejected."""
        with pytest.raises(ValueError):
            iterated_derivative(free_module("trivial", 1, 3), 0)

    def test_generation_filtration(self, free_module):
        """Test that M(1) has nothing generated in degree 0 and everything in degree 1."""
        m = free_module("trivial", 1, 4)

        assert all(lat.rank == 0 for lat in generation_filtration(m, 0).lattices)
        assert all(lat.is_full for lat in generation_filtration(m, 1).lattices)

    def test_derivative_kernels_of_everything(self, free_module):
        """Test that ker(D^a M -> D^a M) vanishes for V = M."""
        m = free_module("trivial", 1, 4)
        everything = span_submodule(m, [m.basis_element(1, 0)])
        table = derivative_kernel_degrees(everything, 2)

        assert [row.label for row in table.rows] == ["ker D^1", "ker D^2"]
        assert all(row.degree.is_neg_inf for row in table.rows)
