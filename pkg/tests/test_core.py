import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from btensor import (
    DimensionMismatch,
    Tensor,
    UnsupportedOrder,
    contract,
    contract_batch,
    contraction_jacobian,
    homogeneous_form,
    is_entry_symmetric,
    root_map,
    scaled_map,
    vector_norm,
    vector_power,
)
from btensor.structure import random_tensor

from oracles import naive_contract


class TestTensorType:
    def test_flat_storage_is_lexicographic(self):
        t = Tensor.from_flat(2, 2, [1.0, 2.0, 3.0, 4.0])
        assert t.array[0, 1] == 2.0
        assert t.array[1, 0] == 3.0
        assert list(t.entries) == [1.0, 2.0, 3.0, 4.0]

    def test_entry_count_must_match(self):
        with pytest.raises(ValueError, match="expected 8 entries"):
            Tensor.from_flat(3, 2, np.zeros(7))

    def test_order_and_dim_validation(self):
        with pytest.raises(ValueError):
            Tensor(np.zeros(3))  # order 1
        with pytest.raises(ValueError):
            Tensor(np.zeros((2, 3)))  # ragged axes

    def test_entries_are_immutable(self):
        t = Tensor.from_flat(2, 2, np.arange(4.0))
        with pytest.raises(ValueError):
            t.array[0, 0] = 5.0

    def test_diagonal_tensor(self):
        t = Tensor.diagonal_tensor(3, 2)
        assert list(t.diagonal) == [1.0, 1.0]
        assert t.entries.sum() == 2.0

    def test_symmetry_check(self, ex41):
        assert is_entry_symmetric(ex41)
        lopsided = Tensor.from_flat(2, 2, [0.0, 1.0, 2.0, 3.0])
        assert not is_entry_symmetric(lopsided)


class TestContract:
    def test_diagonal_gives_componentwise_power(self):
        t = Tensor.diagonal_tensor(3, 2)
        assert np.array_equal(contract(t, [2.0, 3.0]), [4.0, 9.0])

    def test_bundled_example_row_sums(self, ex41, ex42):
        np.testing.assert_allclose(contract(ex41, np.ones(3)), [57.0, 55.5, 54.5], atol=1e-9)
        np.testing.assert_allclose(
            contract(ex42, np.ones(4)), [65.7, 65.5, 64.5, 65.1], atol=1e-9
        )

    def test_dimension_mismatch(self, ex41):
        with pytest.raises(DimensionMismatch):
            contract(ex41, np.ones(4))

    @pytest.mark.parametrize("order,dim", [(2, 5), (3, 4), (4, 3), (5, 2)])
    def test_triple_check_against_oracle(self, order, dim, rng):
        tensor = random_tensor(order, dim, rng)
        x = rng.uniform(-2.0, 2.0, dim)
        expected = naive_contract(tensor, x)
        scale = 1.0 + float(np.max(np.abs(expected)))
        fast = contract(tensor, x)
        batched = contract_batch(tensor, x[None, :])[0]
        assert np.max(np.abs(fast - expected)) <= 1e-12 * scale
        assert np.max(np.abs(batched - expected)) <= 1e-12 * scale

    @given(t=st.floats(min_value=0.001, max_value=1000.0))
    @settings(max_examples=50, deadline=None)
    def test_positive_scaling_homogeneity(self, t):
        rng = np.random.default_rng(7)
        tensor = random_tensor(3, 3, rng)
        x = rng.uniform(-1.0, 1.0, 3)
        lhs = contract(tensor, t * x)
        rhs = t ** (tensor.order - 1) * contract(tensor, x)
        assert np.max(np.abs(lhs - rhs)) <= 1e-12 * (1.0 + np.max(np.abs(rhs)))

    def test_batch_matches_single(self, ex41, rng):
        pts = rng.uniform(-1.0, 1.0, size=(11, 3))
        batched = contract_batch(ex41, pts)
        for row, point in zip(batched, pts):
            np.testing.assert_allclose(row, contract(ex41, point), rtol=1e-13, atol=1e-13)

    def test_jacobian_matches_finite_differences(self, rng):
        tensor = random_tensor(4, 3, rng)
        x = rng.uniform(0.2, 1.0, 3)
        jac = contraction_jacobian(tensor, x)
        h = 1e-6
        for j in range(3):
            bump = np.zeros(3)
            bump[j] = h
            column = (contract(tensor, x + bump) - contract(tensor, x - bump)) / (2 * h)
            np.testing.assert_allclose(jac[:, j], column, rtol=1e-5, atol=1e-6)


class TestHomogeneousForm:
    def test_diagonal_unit(self):
        t = Tensor.diagonal_tensor(4, 2)
        assert homogeneous_form(t, np.ones(2)) == 2.0

    def test_bundled_example_total(self, ex41):
        assert abs(homogeneous_form(ex41, np.ones(3)) - 167.0) <= 1e-9

    def test_zero_vector(self, ex41):
        assert homogeneous_form(ex41, np.zeros(3)) == 0.0

    def test_equals_dot_with_contraction(self, rng):
        tensor = random_tensor(3, 4, rng)
        x = rng.uniform(-1.0, 1.0, 4)
        assert homogeneous_form(tensor, x) == float(np.dot(x, contract(tensor, x)))


class TestVectorPower:
    def test_square_root(self):
        np.testing.assert_allclose(vector_power([4.0, 9.0], 0.5), [2.0, 3.0])

    def test_odd_power_keeps_sign(self):
        np.testing.assert_allclose(vector_power([2.0, -3.0], 3), [8.0, -27.0])

    @pytest.mark.parametrize("r", [0.5, 2, 3, 7.5])
    def test_ones_fixed_point(self, r):
        np.testing.assert_array_equal(vector_power(np.ones(5), r), np.ones(5))

    def test_negative_with_fractional_exponent_rejected(self):
        with pytest.raises(ValueError, match="non-integer exponent"):
            vector_power([1.0, -1.0], 0.5)


class TestVectorNorm:
    def test_euclidean(self):
        assert vector_norm([3.0, -4.0], 2) == 5.0

    def test_max_norm_of_ones(self):
        assert vector_norm(np.ones(6), math.inf) == 1.0

    @pytest.mark.parametrize("n,p", [(4, 1.0), (4, 2.0), (9, 3.0)])
    def test_ones_p_norm(self, n, p):
        assert abs(vector_norm(np.ones(n), p) - n ** (1 / p)) <= 1e-12

    def test_p_below_one_rejected(self):
        with pytest.raises(ValueError):
            vector_norm([1.0], 0.5)

    def test_monotone_in_p_and_limit(self, rng):
        x = rng.uniform(-3.0, 3.0, 6)
        values = [vector_norm(x, p) for p in (1, 2, 4, 8, 16, 32, 64)]
        assert all(a >= b - 1e-12 for a, b in zip(values, values[1:]))
        top = vector_norm(x, math.inf)
        assert abs(vector_norm(x, 64) - top) <= 0.05 * top


class TestHomogeneousMaps:
    def test_scaled_map_at_origin(self, ex41):
        assert np.array_equal(scaled_map(ex41, np.zeros(3)), np.zeros(3))

    def test_scaled_map_on_uniform_vector(self, ex41):
        expected = 3.0 ** ((2 - 4) / 2) * np.array([57.0, 55.5, 54.5])
        np.testing.assert_allclose(scaled_map(ex41, np.ones(3)), expected, rtol=1e-13)

    def test_scaled_map_diagonal_basis_vector(self):
        t = Tensor.diagonal_tensor(3, 2)
        np.testing.assert_allclose(scaled_map(t, [1.0, 0.0]), [1.0, 0.0])

    def test_root_map_on_uniform_vector(self, ex41):
        expected = np.array([57.0, 55.5, 54.5]) ** (1 / 3)
        np.testing.assert_allclose(root_map(ex41, np.ones(3)), expected, rtol=1e-13)

    def test_root_map_of_diagonal_is_identity(self, rng):
        t = Tensor.diagonal_tensor(4, 2)
        x = rng.uniform(-2.0, 2.0, 2)
        np.testing.assert_allclose(root_map(t, x), x, rtol=1e-12, atol=1e-12)

    def test_root_map_zero(self, ex41):
        assert np.array_equal(root_map(ex41, np.zeros(3)), np.zeros(3))

    def test_root_map_needs_even_order(self):
        t = Tensor.diagonal_tensor(3, 2)
        with pytest.raises(UnsupportedOrder):
            root_map(t, [1.0, 1.0])

    @given(t=st.floats(min_value=0.001, max_value=1000.0))
    @settings(max_examples=50, deadline=None)
    def test_degree_one_homogeneity(self, t):
        rng = np.random.default_rng(11)
        tensor = random_tensor(4, 3, rng)
        x = rng.uniform(-1.0, 1.0, 3)
        for mapping in (scaled_map, root_map):
            lhs = mapping(tensor, t * x)
            rhs = t * mapping(tensor, x)
            assert np.max(np.abs(lhs - rhs)) <= 1e-10 * (1.0 + np.max(np.abs(rhs)))
