import numpy as np
import pytest
from PIL import Image

from actdump import extract

from dump_helpers import tiny_config


@pytest.fixture(scope="session")
def image_folder(tmp_path_factory):
    """Two-class folder of small synthetic PNGs."""
    root = tmp_path_factory.mktemp("images")
    rng = np.random.default_rng(0)
    for label in ("ring", "blob"):
        d = root / label
        d.mkdir()
        for i in range(5):
            arr = rng.integers(0, 255, size=(64, 64, 3), dtype=np.uint8)
            Image.fromarray(arr).save(d / f"{label}{i}.png")
    return root


@pytest.fixture(scope="session")
def resnet18_dump(image_folder, tmp_path_factory):
    """One shared extraction run: resnet18, 2 images, random seeded weights."""
    out = tmp_path_factory.mktemp("dump")
    manifest_path = extract(tiny_config(image_folder, out))
    return manifest_path
