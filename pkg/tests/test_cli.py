import json

import pytest

from islandkit.cli import main
from islandkit.decomposition import PathDecomposition, write_decomposition
from islandkit.graphs import vset


@pytest.fixture
def k23(tmp_path):
    path = tmp_path / "K23.txt"
    assert main(["gen", "complete_bipartite", "2", "3", str(path)]) == 0
    return str(path)


@pytest.fixture
def grid10(tmp_path):
    path = tmp_path / "grid10.txt"
    assert main(["gen", "triangulated_grid", "10", "10", str(path)]) == 0
    return str(path)


class TestGen:
    def test_fan(self, tmp_path, capsys):
        out = tmp_path / "fan.txt"
        assert main(["gen", "fan", "1", "3", str(out)]) == 0
        captured = capsys.readouterr().out
        assert "n: 4" in captured

    def test_unknown_family(self, tmp_path):
        assert main(["gen", "moebius", "3", str(tmp_path / "x.txt")]) == 1


class TestIsland:
    def test_brute(self, k23, capsys):
        assert main(["island", k23, "2", "brute"]) == 0
        assert "min_island_size: 3" in capsys.readouterr().out

    def test_t_above_degree(self, k23, capsys):
        assert main(["island", k23, "9", "brute"]) == 0
        assert "min_island_size: 1" in capsys.readouterr().out

    def test_sparse_on_grid(self, grid10, capsys):
        assert main(["island", grid10, "4", "sparse", "0.3"]) == 0
        assert "verified: True" in capsys.readouterr().out

    def test_sparse_dense_negative(self, tmp_path, capsys):
        path = tmp_path / "K55.txt"
        main(["gen", "complete_bipartite", "5", "5", str(path)])
        assert main(["island", str(path), "2", "sparse", "0.25"]) == 2


class TestColorPercolateShatter:
    def test_color_grid(self, grid10, capsys):
        assert main(["color", grid10, "4"]) == 0
        assert "verified: True" in capsys.readouterr().out

    def test_percolate(self, k23, capsys):
        assert main(["percolate", k23, "0,1", "2"]) == 0
        assert "percolates: True" in capsys.readouterr().out

    def test_shatter_json_deterministic(self, grid10, capsys):
        assert main(["--json", "shatter", grid10, "0.2"]) == 0
        first = json.loads(capsys.readouterr().out)
        assert main(["--json", "shatter", grid10, "0.2"]) == 0
        second = json.loads(capsys.readouterr().out)
        assert first["payload"] == second["payload"]
        assert first["input_digest"] == second["input_digest"]


class TestPathdecomp:
    def test_fan_chain_to_minor(self, tmp_path, capsys):
        graph = tmp_path / "fan50.txt"
        main(["gen", "fan", "1", "50", str(graph)])
        P = PathDecomposition(tuple(vset([i, i + 1, 50]) for i in range(49)))
        pd = tmp_path / "fan50.pd"
        pd.write_text(write_decomposition(P))
        code = main(
            ["pathdecomp", str(graph), str(pd), "linked,appuniv,largeint,extract", "2", "3", "1"]
        )
        assert code == 0
        assert "'kind': 'minor'" in capsys.readouterr().out

    def test_too_small_negative_exit(self, tmp_path):
        graph = tmp_path / "p6.txt"
        main(["gen", "path", "6", str(graph)])
        P = PathDecomposition(tuple(vset([i, i + 1]) for i in range(5)))
        pd = tmp_path / "p6.pd"
        pd.write_text(write_decomposition(P))
        assert main(["pathdecomp", str(graph), str(pd), "largeint,extract", "2", "9", "9"]) == 2


class TestVerify:
    def test_island_ok(self, k23):
        assert main(["verify", k23, "--island", "0,2,3", "--t", "2"]) == 0

    def test_island_bad(self, k23):
        assert main(["verify", k23, "--island", "2,3", "--t", "2"]) == 2

    def test_missing_file_is_error(self):
        assert main(["verify", "no-such-file.txt"]) == 1
