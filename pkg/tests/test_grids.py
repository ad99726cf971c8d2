import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cubetopo import ScalarGrid, downsample, iter_grids, split_batch, to_grid
from cubetopo.errors import BadChannelIndex, NonFiniteGridValue


class TestToGrid:
    def test_2d_unchanged_under_any_policy(self):
        arr = np.arange(16, dtype=float).reshape(4, 4)
        for policy in ("volume", "mean", "select:0"):
            g = to_grid(arr, policy)
            assert g.dims == (4, 4)
            np.testing.assert_array_equal(g.values, arr)

    def test_volume_keeps_channel_axis(self):
        arr = np.zeros((4, 4, 3))
        g = to_grid(arr, "volume")
        assert g.dims == (4, 4, 3)

    def test_mean_averages_channels(self):
        # channel pairs (1,2),(3,4),(5,6),(7,8) per spatial position
        arr = np.array([1, 2, 3, 4, 5, 6, 7, 8], float).reshape(2, 2, 2)
        g = to_grid(arr, "mean")
        np.testing.assert_array_equal(g.values, [[1.5, 3.5], [5.5, 7.5]])

    def test_select_channel(self):
        arr = np.arange(8, dtype=float).reshape(2, 2, 2)
        g = to_grid(arr, "select:1")
        np.testing.assert_array_equal(g.values, arr[:, :, 1])

    def test_select_out_of_range(self):
        with pytest.raises(BadChannelIndex):
            to_grid(np.zeros((2, 2, 2)), "select:2")

    def test_bad_policy(self):
        with pytest.raises(ValueError):
            to_grid(np.zeros((2, 2)), "median")

    def test_non_finite_rejected(self):
        arr = np.zeros((3, 3))
        arr[1, 1] = np.nan
        with pytest.raises(NonFiniteGridValue):
            to_grid(arr, "volume")

    @settings(max_examples=50, deadline=None)
    @given(st.lists(st.integers(0, 9), min_size=24, max_size=24))
    def test_volume_is_pure_relabeling(self, vals):
        arr = np.array(vals, float).reshape(2, 3, 4)
        g = to_grid(arr, "volume")
        assert sorted(g.values.ravel()) == sorted(arr.ravel())


class TestBatch:
    def test_batch_splits_into_images(self):
        arr = np.arange(2 * 3 * 3 * 2, dtype=float).reshape(2, 3, 3, 2)
        grids = iter_grids(arr, "volume")
        assert len(grids) == 2
        assert grids[0].dims == (3, 3, 2)
        np.testing.assert_array_equal(grids[1].values, arr[1])

    def test_single_image_passthrough(self):
        assert len(split_batch(np.zeros((3, 3)))) == 1


class TestDownsample:
    def test_factor_one_is_identity(self):
        g = ScalarGrid(np.arange(12, dtype=float).reshape(3, 4))
        assert downsample(g, 1, "stride") is g
        assert downsample(g, 1, "max_pool") is g

    def test_stride_takes_corners(self):
        g = ScalarGrid(np.arange(16, dtype=float).reshape(4, 4))
        out = downsample(g, 2, "stride")
        np.testing.assert_array_equal(out.values, [[0, 2], [8, 10]])

    def test_max_pool_matches_brute_force(self, rng):
        vals = rng.standard_normal((7, 5))
        g = ScalarGrid(vals)
        out = downsample(g, 2, "max_pool")
        expect = np.empty((4, 3))
        for i in range(4):
            for j in range(3):
                expect[i, j] = vals[2 * i : 2 * i + 2, 2 * j : 2 * j + 2].max()
        np.testing.assert_array_equal(out.values, expect)

    def test_channel_axis_untouched(self):
        g = ScalarGrid(np.zeros((8, 8, 5)))
        out = downsample(g, 4, "max_pool")
        assert out.dims == (2, 2, 5)

    def test_degenerate_result_is_legal(self):
        g = ScalarGrid(np.arange(9, dtype=float).reshape(3, 3))
        out = downsample(g, 5, "max_pool")
        assert out.dims == (1, 1)
        assert out.values[0, 0] == 8

    def test_bad_factor(self):
        g = ScalarGrid(np.zeros((2, 2)))
        with pytest.raises(ValueError):
            downsample(g, 0)

    @settings(max_examples=30, deadline=None)
    @given(st.integers(1, 4), st.sampled_from(["stride", "max_pool"]))
    def test_shape_contract(self, factor, mode):
        g = ScalarGrid(np.zeros((10, 7)))
        out = downsample(g, factor, mode)
        assert out.dims == (-(-10 // factor), -(-7 // factor))
