from pathlib import Path

import numpy as np

from actdump import dump_softmax

from dump_helpers import tiny_config

from cubetopo.cli import _read_labels, _read_softmax
from cubetopo.ranking import leep


def read_matrix(path):
    lines = Path(path).read_text().strip().splitlines()
    header = lines[0].split(",")
    rows = [line.split(",") for line in lines[1:]]
    ids = [r[0] for r in rows]
    matrix = np.array([[float(v) for v in r[1:]] for r in rows])
    return header, ids, matrix


def test_rows_sum_to_one_for_ten_images(image_folder, tmp_path):
    path = dump_softmax(tiny_config(image_folder, tmp_path, per_class=5, seed=1))
    _, _, matrix = read_matrix(path)
    assert matrix.shape[0] == 10
    np.testing.assert_allclose(matrix.sum(axis=1), 1.0, atol=1e-6)


def test_header_and_row_count(image_folder, tmp_path):
    path = dump_softmax(tiny_config(image_folder, tmp_path, per_class=2, seed=1))
    header, ids, matrix = read_matrix(path)
    assert header[0] == "image_id"
    assert len(header) == 1 + 1000  # ImageNet head
    assert matrix.shape == (4, 1000)
    assert len(set(ids)) == 4


def test_deterministic_across_runs(image_folder, tmp_path):
    p1 = dump_softmax(tiny_config(image_folder, tmp_path / "a", seed=2))
    p2 = dump_softmax(tiny_config(image_folder, tmp_path / "b", seed=2))
    assert Path(p1).read_bytes() == Path(p2).read_bytes()


def test_primary_leep_reader_consumes_the_dump(image_folder, tmp_path):
    path = dump_softmax(tiny_config(image_folder, tmp_path, per_class=3, seed=1))
    ids, matrix = _read_softmax(path)
    labels = _read_labels(Path(path).parent / "labels.csv")
    names = sorted(set(labels.values()))
    y = [names.index(labels[i]) for i in ids]
    assert leep(matrix, y) <= 0.0
