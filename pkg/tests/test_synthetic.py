import numpy as np

from cubetopo import ScalarGrid, diagram_of_grid, omega_for_image
from cubetopo.synthetic import (
    blob_image,
    ring_image,
    scatter_image,
    shape_dataset,
    smooth,
    stage_pipeline,
)

ETA = 0.5


def omega(img):
    return omega_for_image(diagram_of_grid(ScalarGrid(img)), ETA)


def test_clean_ring_has_component_and_loop():
    rng = np.random.default_rng(0)
    assert omega(ring_image(32, rng)) == 2


def test_clean_blob_is_single_component():
    rng = np.random.default_rng(0)
    assert omega(blob_image(32, rng)) == 1


def test_speckles_add_components():
    rng = np.random.default_rng(5)
    base = blob_image(32, rng, speckles=0)
    rng = np.random.default_rng(5)
    noisy = blob_image(32, rng, speckles=4)
    assert omega(noisy) >= omega(base)


def test_scatter_image_exact_count():
    for count in (1, 3, 5):
        assert omega(scatter_image(9, count)) == count


def test_smooth_shrinks_dynamic_range():
    rng = np.random.default_rng(2)
    img = ring_image(32, rng, speckles=4)
    out = smooth(img, passes=3)
    assert out.min() > img.min()
    assert out.max() <= img.max() + 1e-12


def test_shape_dataset_is_balanced_and_reproducible():
    batch1, labels1 = shape_dataset(10, 32, seed=9)
    batch2, labels2 = shape_dataset(10, 32, seed=9)
    np.testing.assert_array_equal(batch1, batch2)
    assert labels1 == labels2
    assert labels1.count("ring") == labels1.count("blob") == 5


def test_stage_pipeline_decays_complexity():
    batch, _ = shape_dataset(6, 32, seed=3)
    stages = stage_pipeline(batch, n_stages=3)
    means = [float(np.mean([omega(img) for img in st])) for st in stages]
    assert means[0] > means[-1]
    assert means[-1] <= 1.0
