import numpy as np
import pytest

from latticerig.core import Framework
from latticerig.generators import knight_2d, knight_lattice
from latticerig.girth_builder import BuildConfig, build_one, derive_trial_seed
from latticerig.io_formats import (
    FormatError,
    adjacency_image,
    draw_svg,
    read_canonical,
    read_framefile,
    write_canonical,
    write_framefile,
    write_sparsematrix,
)

from oracles import random_grid_framework, reference_writers


class TestFramefile:
    def test_single_bar_line(self):
        f = Framework(2, [(0, 0), (1, 2)], [(0, 1)])
        assert write_framefile(f, 5) == "0,11\n"

    def test_empty(self):
        assert write_framefile(Framework(2), 5) == ""

    def test_round_trip_bars(self):
        rng = np.random.default_rng(19)
        for _ in range(100):
            f = random_grid_framework(rng)
            text = write_framefile(f, 7)
            back = read_framefile(text, 7)
            orig = {frozenset((f.joints[i], f.joints[j])) for i, j in f.bars}
            echo = {frozenset((back.joints[i], back.joints[j]))
                    for i, j in back.bars}
            assert orig == echo

    def test_rejects_malformed_line(self):
        with pytest.raises(FormatError):
            read_framefile("0,1,2\n", 5)
        with pytest.raises(FormatError):
            read_framefile("0;1\n", 5)

    def test_rejects_out_of_range_id(self):
        with pytest.raises(FormatError):
            read_framefile("0,25\n", 5)

    def test_rejects_misordered_ids(self):
        with pytest.raises(FormatError):
            read_framefile("11,0\n", 5)

    def test_rejects_off_grid_framework(self):
        f = Framework(2, [(0, 0), (9, 9)], [(0, 1)])
        with pytest.raises(FormatError):
            write_framefile(f, 5)

    def test_rejects_3d(self):
        with pytest.raises(FormatError):
            write_framefile(knight_lattice(3, 3), 3)


class TestSparseMatrix:
    def test_single_bar(self):
        f = Framework(2, [(0, 0), (1, 2)], [(0, 1)])
        assert write_sparsematrix(f) == "1,3,-1,-2,1,2\n"

    def test_empty(self):
        assert write_sparsematrix(Framework(2)) == ""

    def test_knight_framework_line_count(self):
        text = write_sparsematrix(knight_2d(5, 5))
        assert text.count("\n") == 48

    def test_entries_negate(self):
        rng = np.random.default_rng(29)
        for _ in range(20):
            f = random_grid_framework(rng)
            for line in write_sparsematrix(f).splitlines():
                c1, c2, e1, e2, e3, e4 = (int(t) for t in line.split(","))
                assert c1 % 2 == 1 and c2 % 2 == 1
                assert (e3, e4) == (-e1, -e2)


class TestAgainstReferenceWriters:
    def test_knight_framework_byte_exact(self):
        f = knight_2d(5, 5)
        ref_frame, ref_sparse = reference_writers(f, 5)
        assert write_framefile(f, 5) == ref_frame
        assert write_sparsematrix(f) == ref_sparse

    def test_random_frameworks_byte_exact(self):
        rng = np.random.default_rng(37)
        for _ in range(100):
            f = random_grid_framework(rng)
            ref_frame, ref_sparse = reference_writers(f, 7)
            assert write_framefile(f, 7) == ref_frame
            assert write_sparsematrix(f) == ref_sparse

    def test_build_output_byte_exact(self):
        config = BuildConfig(n=9, m=5, target_girth=6, seed=5, trials=1)
        f = build_one(config, derive_trial_seed(5, 0)).framework
        ref_frame, ref_sparse = reference_writers(f, 9)
        assert write_framefile(f, 9) == ref_frame
        assert write_sparsematrix(f) == ref_sparse


class TestCanonical:
    def test_exact_round_trip(self):
        rng = np.random.default_rng(43)
        frameworks = [
            Framework(2),
            Framework(1, [(5,)], []),
            knight_2d(4, 6),
            knight_lattice(3, 3),
        ] + [random_grid_framework(rng) for _ in range(50)]
        for f in frameworks:
            assert read_canonical(write_canonical(f)) == f

    def test_header_shape(self):
        text = write_canonical(knight_2d(5, 5))
        lines = text.splitlines()
        assert lines[0] == "dim 2"
        assert lines[1] == "size 25 48"
        assert len(lines) == 2 + 25 + 48

    def test_rejects_bad_header(self):
        with pytest.raises(FormatError):
            read_canonical("hello\n")

    def test_rejects_truncated_body(self):
        text = write_canonical(knight_2d(5, 5))
        with pytest.raises(FormatError):
            read_canonical("".join(text.splitlines(keepends=True)[:-2]))

    def test_rejects_non_integer(self):
        with pytest.raises(FormatError):
            read_canonical("dim 2\nsize 1 0\n0 x\n")


class TestSvg:
    def test_knight_counts(self):
        svg = draw_svg(knight_2d(5, 5))
        assert svg.count("<circle") == 25
        assert svg.count("<line") == 48

    def test_empty_framework(self):
        svg = draw_svg(Framework(2))
        assert svg.count("<circle") == 0
        assert svg.count("<line") == 0
        assert "<svg" in svg

    def test_deterministic(self):
        f = knight_2d(4, 7)
        assert draw_svg(f) == draw_svg(f)

    def test_build_output_counts(self):
        config = BuildConfig(n=9, m=5, target_girth=6, seed=5, trials=1)
        f = build_one(config, derive_trial_seed(5, 0)).framework
        svg = draw_svg(f)
        assert svg.count("<circle") == len(f.joints)
        assert svg.count("<line") == len(f.bars)

    def test_refuses_other_dimensions(self):
        with pytest.raises(FormatError):
            draw_svg(knight_lattice(3, 3))


def pgm_pixels(text: str) -> list[list[int]]:
    lines = text.splitlines()
    assert lines[0] == "P2"
    w, h = (int(t) for t in lines[1].split())
    assert lines[2] == "255"
    rows = [[int(t) for t in line.split()] for line in lines[3:]]
    assert len(rows) == h and all(len(r) == w for r in rows)
    return rows


class TestAdjacencyImage:
    def test_single_bar_two_black_pixels(self):
        f = Framework(2, [(0, 0), (1, 2)], [(0, 1)])
        pixels = pgm_pixels(adjacency_image(f))
        assert pixels[0][1] == 0 and pixels[1][0] == 0
        assert pixels[0][0] == 255 and pixels[1][1] == 255

    def test_empty_all_white(self):
        f = Framework(2, [(0, 0), (5, 5)], [])
        pixels = pgm_pixels(adjacency_image(f))
        assert all(p == 255 for row in pixels for p in row)

    def test_knight_framework_blackness(self):
        pixels = pgm_pixels(adjacency_image(knight_2d(5, 5)))
        assert len(pixels) == 25
        black = sum(1 for row in pixels for p in row if p == 0)
        assert black == 96

    def test_symmetric(self):
        rng = np.random.default_rng(47)
        for _ in range(20):
            f = random_grid_framework(rng)
            pixels = pgm_pixels(adjacency_image(f))
            n = len(pixels)
            for i in range(n):
                for j in range(n):
                    assert pixels[i][j] == pixels[j][i]

    def test_blocked_density(self):
        f = knight_2d(5, 5)
        pixels = pgm_pixels(adjacency_image(f, block=5))
        assert len(pixels) == 5
        assert min(p for row in pixels for p in row) == 0
