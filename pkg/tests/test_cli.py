from latticerig.cli import main
from latticerig.generators import knight_2d
from latticerig.io_formats import read_canonical, write_canonical
from latticerig.core import Framework


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestGenerate:
    def test_knight2d(self, tmp_path, capsys):
        code, out, _ = run(capsys, "generate", "--kind", "knight2d",
                           "--board", "5x5", "--out-dir", str(tmp_path))
        assert code == 0
        assert "25 joints, 48 bars" in out
        assert (tmp_path / "framework.txt").exists()
        assert (tmp_path / "framefile.txt").exists()
        assert (tmp_path / "sparsematrix.txt").exists()
        assert read_canonical(
            (tmp_path / "framework.txt").read_text()) == knight_2d(5, 5)

    def test_lattice(self, tmp_path, capsys):
        code, out, _ = run(capsys, "generate", "--kind", "lattice",
                           "--n", "4", "--dim", "3", "--out-dir", str(tmp_path))
        assert code == 0
        assert "64 joints, 288 bars" in out
        assert not (tmp_path / "framefile.txt").exists()

    def test_tiny_board(self, tmp_path, capsys):
        code, out, _ = run(capsys, "generate", "--kind", "leaper",
                           "--board", "1x1", "--a", "2", "--b", "2",
                           "--out-dir", str(tmp_path))
        assert code == 0
        assert "1 joints, 0 bars" in out

    def test_missing_board_is_error(self, tmp_path, capsys):
        code, _, err = run(capsys, "generate", "--kind", "knight2d",
                           "--out-dir", str(tmp_path))
        assert code == 1
        assert "board" in err

    def test_invalid_params_error(self, tmp_path, capsys):
        code, _, err = run(capsys, "generate", "--kind", "knight2d",
                           "--board", "0x5", "--out-dir", str(tmp_path))
        assert code == 1


class TestAnalyze:
    def write(self, tmp_path, framework) -> str:
        path = tmp_path / "f.txt"
        path.write_text(write_canonical(framework))
        return str(path)

    def test_knight_rigid(self, tmp_path, capsys):
        path = self.write(tmp_path, knight_2d(5, 5))
        code, out, _ = run(capsys, "analyze", path)
        assert code == 0
        assert "Required rank for rigidity:" in out
        assert "47" in out
        assert "RIGID" in out
        assert "RESULT" in out

    def test_square_flexible(self, tmp_path, capsys):
        square = Framework(2, [(0, 0), (1, 0), (1, 1), (0, 1)],
                           [(0, 1), (1, 2), (2, 3), (0, 3)])
        path = self.write(tmp_path, square)
        code, out, _ = run(capsys, "analyze", path)
        assert code == 0
        assert "FLEXIBLE" in out
        assert "trivially flexible" in out

    def test_degenerate(self, tmp_path, capsys):
        line = Framework(2, [(0, 0), (1, 0), (2, 0)], [(0, 1), (1, 2)])
        path = self.write(tmp_path, line)
        code, out, _ = run(capsys, "analyze", path)
        assert code == 0
        assert "degenerate span" in out
        assert "NO VERDICT" in out

    def test_missing_file(self, capsys):
        code, _, err = run(capsys, "analyze", "/nonexistent/f.txt")
        assert code == 1

    def test_corrupt_file(self, tmp_path, capsys):
        path = tmp_path / "bad.txt"
        path.write_text("not a framework\n")
        code, _, err = run(capsys, "analyze", str(path))
        assert code == 1


class TestSearch:
    def test_finds_girth4(self, tmp_path, capsys):
        code, out, _ = run(capsys, "search", "--n", "5", "--m", "5",
                           "--girth", "4", "--trials", "40", "--seed", "1",
                           "--workers", "1", "--out-dir", str(tmp_path))
        assert code == 0
        assert "girth | n | m | joints | bars | trials" in out
        assert "found=rigid" in out
        for name in ("framework.txt", "framefile.txt", "sparsematrix.txt",
                     "drawing.svg", "adjacency.pgm"):
            assert (tmp_path / name).exists()

    def test_zero_trials_not_found_exit(self, tmp_path, capsys):
        code, out, _ = run(capsys, "search", "--n", "5", "--m", "5",
                           "--girth", "4", "--trials", "0", "--seed", "1",
                           "--out-dir", str(tmp_path))
        assert code == 2

    def test_unlucky_search_not_found(self, tmp_path, capsys):
        code, out, _ = run(capsys, "search", "--n", "9", "--m", "5",
                           "--girth", "6", "--trials", "2", "--seed", "3",
                           "--workers", "1", "--out-dir", str(tmp_path))
        # either outcome is legal, but the exit code must say which
        assert (code == 0) == ("found=rigid" in out)
        assert code in (0, 2)

    def test_bad_m_is_hard_error(self, tmp_path, capsys):
        code, _, err = run(capsys, "search", "--n", "5", "--m", "3",
                           "--girth", "4", "--trials", "1",
                           "--out-dir", str(tmp_path))
        assert code == 1

    def test_deterministic_outputs(self, tmp_path, capsys):
        args = ("search", "--n", "5", "--m", "5", "--girth", "4",
                "--trials", "25", "--seed", "7", "--workers", "1")
        run(capsys, *args, "--out-dir", str(tmp_path / "a"))
        run(capsys, *args, "--out-dir", str(tmp_path / "b"))
        for name in ("framework.txt", "framefile.txt", "sparsematrix.txt"):
            assert (tmp_path / "a" / name).read_text() == \
                (tmp_path / "b" / name).read_text()


class TestVerify:
    def test_search_output_passes(self, tmp_path, capsys):
        run(capsys, "search", "--n", "5", "--m", "5", "--girth", "4",
            "--trials", "40", "--seed", "1", "--workers", "1",
            "--out-dir", str(tmp_path))
        code, out, _ = run(capsys, "verify", str(tmp_path / "framework.txt"),
                           "--girth", "4")
        assert code == 0
        assert "[PASS] unit-bar" in out
        assert "[PASS] bipartite" in out
        assert "[PASS] girth" in out
        assert "[PASS] degree" in out
        assert "[PASS] round-trip" in out

    def test_corrupted_bar_length_fails_unit_bar(self, tmp_path, capsys):
        f = knight_2d(5, 5)
        bad = Framework(2, f.joints, f.bars + ((0, 1),))  # length-1 bar
        path = tmp_path / "bad.txt"
        path.write_text(write_canonical(bad))
        code, out, _ = run(capsys, "verify", str(path), "--min-degree", "0")
        assert code == 1
        assert "[FAIL] unit-bar" in out

    def test_empty_framework_passes_vacuously(self, tmp_path, capsys):
        path = tmp_path / "empty.txt"
        path.write_text(write_canonical(Framework(2)))
        code, out, _ = run(capsys, "verify", str(path))
        assert code == 0
