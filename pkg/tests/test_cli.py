import numpy as np

from cubetopo import write_tensor
from cubetopo.cli import main
from cubetopo.synthetic import scatter_image, write_stage_manifest

RING = np.array([[0, 0, 0], [0, 9, 0], [0, 0, 0]], dtype=float)


def write_ring_tensor(tmp_path):
    path = tmp_path / "ring.npy"
    write_tensor(path, RING)
    return path


def read_rows(path):
    lines = path.read_text().strip().splitlines()
    return lines[0], [line.split(",") for line in lines[1:]]


class TestDiagramCommand:
    def test_constant_tensor(self, tmp_path):
        tensor = tmp_path / "c.npy"
        write_tensor(tensor, np.full((4, 4), 7.0))
        out = tmp_path / "out"
        assert main(["diagram", str(tensor), "--out", str(out)]) == 0
        header, rows = read_rows(out / "diagram.csv")
        assert header == "dim,birth,death"
        assert rows == [["0", "7.0", "inf"]]

    def test_ring_tensor(self, tmp_path):
        tensor = write_ring_tensor(tmp_path)
        out = tmp_path / "out"
        assert main(["diagram", str(tensor), "--out", str(out)]) == 0
        _, rows = read_rows(out / "diagram.csv")
        assert rows == [["0", "0.0", "inf"], ["1", "0.0", "9.0"]]
        svg = (out / "diagram.svg").read_text()
        assert '<circle class="h0"' in svg
        assert '<rect class="h1"' in svg
        assert ">inf</text>" in svg

    def test_missing_file_exits_2(self, tmp_path, capsys):
        code = main(["diagram", str(tmp_path / "nope.npy"), "--out", str(tmp_path / "o")])
        assert code == 2
        assert "error" in capsys.readouterr().err

    def test_batch_index(self, tmp_path):
        batch = np.stack([RING[..., None], np.full((3, 3, 1), 2.0)])
        tensor = tmp_path / "b.npy"
        write_tensor(tensor, batch)
        out = tmp_path / "out"
        assert main(["diagram", str(tensor), "--index", "1", "--out", str(out)]) == 0
        _, rows = read_rows(out / "diagram.csv")
        assert rows == [["0", "2.0", "inf"]]

    def test_bad_index_exits_2(self, tmp_path):
        tensor = write_ring_tensor(tmp_path)
        assert main(["diagram", str(tensor), "--index", "5",
                     "--out", str(tmp_path / "o")]) == 2


class TestBettiCommand:
    def test_ring_curve(self, tmp_path):
        tensor = write_ring_tensor(tmp_path)
        out = tmp_path / "out"
        assert main(["betti", str(tensor), "--grid", "0:10:11", "--out", str(out)]) == 0
        _, rows = read_rows(out / "betti.csv")
        b1 = [row[2] for row in rows]
        assert b1 == ["1"] * 9 + ["0", "0"]
        svg = (out / "betti.svg").read_text()
        assert '<polyline class="b1"' in svg

    def test_constant_image_step(self, tmp_path):
        tensor = tmp_path / "c.npy"
        write_tensor(tensor, np.full((3, 3), 4.0))
        out = tmp_path / "out"
        assert main(["betti", str(tensor), "--grid", "3:5:3", "--out", str(out)]) == 0
        _, rows = read_rows(out / "betti.csv")
        assert [row[1] for row in rows] == ["0", "1", "1"]

    def test_single_point_grid_is_usage_error(self, tmp_path, capsys):
        tensor = write_ring_tensor(tmp_path)
        code = main(["betti", str(tensor), "--grid", "0:10:1", "--out", str(tmp_path / "o")])
        assert code == 2


class TestOmegaCommand:
    def write_manifest(self, tmp_path, counts):
        stages = [scatter_image(9, c)[np.newaxis, ...] for c in counts]
        return write_stage_manifest(tmp_path / "data", stages,
                                    model_id="toy", dataset_id="synthetic")

    def test_engineered_decay(self, tmp_path):
        manifest = self.write_manifest(tmp_path, [5, 3, 1])
        out = tmp_path / "out"
        assert main(["omega", str(manifest), "--eta", "0.5", "--out", str(out)]) == 0
        header, rows = read_rows(out / "omega.csv")
        assert header == ("layer_index,layer_name,eta,n_images,"
                          "omega_mean,omega_std,omega_min,omega_max")
        assert [row[4] for row in rows] == ["5.0", "3.0", "1.0"]

    def test_single_layer(self, tmp_path):
        manifest = self.write_manifest(tmp_path, [2])
        out = tmp_path / "out"
        assert main(["omega", str(manifest), "--eta", "0.5", "--out", str(out)]) == 0
        _, rows = read_rows(out / "omega.csv")
        assert len(rows) == 1
        assert '<circle class="omega"' in (out / "omega.svg").read_text()

    def test_unreadable_tensor_names_layer(self, tmp_path, capsys):
        manifest = self.write_manifest(tmp_path, [3, 2])
        (tmp_path / "data" / "stage1.npy").write_bytes(b"junk")
        code = main(["omega", str(manifest), "--eta", "0.5", "--out", str(tmp_path / "o")])
        assert code == 2
        assert "stage1" in capsys.readouterr().err

    def test_auto_eta_failure_has_hint(self, tmp_path, capsys):
        # flat 2D images never gain a void, so the auto rule cannot succeed
        manifest = self.write_manifest(tmp_path, [3, 2])
        code = main(["omega", str(manifest), "--out", str(tmp_path / "o")])
        assert code == 1
        err = capsys.readouterr().err
        assert "--eta" in err

    def test_failure_leaves_no_partial_output(self, tmp_path):
        manifest = self.write_manifest(tmp_path, [3, 2])
        out = tmp_path / "o"
        main(["omega", str(manifest), "--out", str(out)])
        assert not list(out.glob("*.csv")) if out.exists() else True


class TestRankCommand:
    def write_model(self, tmp_path, name, counts, accuracy):
        # one image per layer with exactly `count` dark pixels, so the
        # complexity profile is the counts themselves
        stages = [scatter_image(11, c)[np.newaxis, ...] for c in counts]
        return write_stage_manifest(tmp_path / name, stages, model_id=name,
                                    dataset_id="synthetic", accuracy=accuracy)

    def rank_three(self, tmp_path):
        paths = [
            self.write_model(tmp_path, "a", [9, 7, 5, 3, 1], 0.9),   # theta -8
            self.write_model(tmp_path, "b", [9, 8, 7, 6, 5], 0.8),   # theta -4
            self.write_model(tmp_path, "c", [9, 9, 9, 9, 9], 0.7),   # theta 0
        ]
        out = tmp_path / "out"
        args = ["rank", *map(str, paths), "--eta", "0.5", "--degree", "1",
                "--out", str(out)]
        return main(args), out

    def test_perfect_inverse_ranking_footer(self, tmp_path):
        code, out = self.rank_three(tmp_path)
        assert code == 0
        text = (out / "ranking.csv").read_text()
        assert "pearson_ttp=-1.0" in text
        lines = text.strip().splitlines()
        assert lines[0] == "model_id,theta,accuracy,leep"
        assert [line.split(",")[0] for line in lines[1:4]] == ["a", "b", "c"]
        svg = (out / "ranking.svg").read_text()
        assert '<circle class="model"' in svg
        assert '<line class="trend"' in svg

    def test_two_models_is_usage_error(self, tmp_path, capsys):
        paths = [
            self.write_model(tmp_path, "a", [9, 7, 5, 3, 1], 0.9),
            self.write_model(tmp_path, "b", [9, 8, 7, 6, 5], 0.8),
        ]
        code = main(["rank", *map(str, paths), "--eta", "0.5",
                     "--out", str(tmp_path / "o")])
        assert code == 2

    def test_missing_accuracy_noted_in_footer(self, tmp_path):
        paths = [
            self.write_model(tmp_path, "a", [9, 7, 5, 3, 1], 0.9),
            self.write_model(tmp_path, "b", [9, 8, 7, 6, 5], 0.8),
            self.write_model(tmp_path, "c", [9, 9, 9, 9, 9], 0.7),
            self.write_model(tmp_path, "d", [9, 5, 3, 2, 1], None),
        ]
        out = tmp_path / "out"
        code = main(["rank", *map(str, paths), "--eta", "0.5", "--degree", "1",
                     "--out", str(out)])
        assert code == 0
        text = (out / "ranking.csv").read_text()
        assert "excluded_from_pearson=d" in text
        assert any(line.startswith("d,") for line in text.splitlines())

    def test_directory_input(self, tmp_path):
        self.write_model(tmp_path, "a", [9, 7, 5, 3, 1], 0.9)
        self.write_model(tmp_path, "b", [9, 8, 7, 6, 5], 0.8)
        self.write_model(tmp_path, "c", [9, 9, 9, 9, 9], 0.7)
        # manifest.json files live one level down; collect via explicit paths
        paths = sorted(tmp_path.glob("*/manifest.json"))
        out = tmp_path / "out"
        code = main(["rank", *map(str, paths), "--eta", "0.5", "--degree", "1",
                     "--out", str(out)])
        assert code == 0


class TestDeterminism:
    def test_reproducible_byte_identical(self, tmp_path):
        tensor = write_ring_tensor(tmp_path)
        outs = []
        for name in ("o1", "o2"):
            out = tmp_path / name
            assert main(["diagram", str(tensor), "--out", str(out),
                         "--reproducible"]) == 0
            outs.append(out)
        for fname in ("diagram.csv", "diagram.svg"):
            assert (outs[0] / fname).read_bytes() == (outs[1] / fname).read_bytes()

    def test_worker_count_does_not_change_csv(self, tmp_path):
        stages = [scatter_image(9, c)[np.newaxis, ...].repeat(4, axis=0)
                  for c in (4, 2)]
        manifest = write_stage_manifest(tmp_path / "d", stages,
                                        model_id="m", dataset_id="s")
        texts = []
        for name, workers in (("w1", "1"), ("w2", "3")):
            out = tmp_path / name
            assert main(["omega", str(manifest), "--eta", "0.5",
                         "--workers", workers, "--out", str(out),
                         "--reproducible"]) == 0
            texts.append((out / "omega.csv").read_bytes())
        assert texts[0] == texts[1]

    def test_usage_error_from_argparse(self):
        assert main(["no-such-command"]) == 2
