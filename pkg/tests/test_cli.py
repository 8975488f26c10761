"""
Test Command-Line Interface
End-to-end runs of main() on temporary files: outputs, stdout reports and exit codes
"""

import os
import sys

import numpy as np
import pytest

# Add src directory to path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from codec.container import read_container
from image_io.pgm import ImageGray, load_image, save_image
from main import main


def parse_pairs(text: str) -> dict:
    pairs = {}
    for line in text.strip().splitlines():
        key, _, value = line.partition("=")
        pairs[key] = value
    return pairs


@pytest.fixture
def gradient_pgm(tmp_path):
    """32x24 smooth image with some texture."""
    rows, cols = np.mgrid[0:32, 0:24]
    pixels = (4 * rows + 3 * cols + 10 * ((rows * cols) % 5)) % 256
    path = tmp_path / "gradient.pgm"
    save_image(ImageGray(pixels.astype(np.uint8)), path)
    return path


class TestCompressDecompress:

    def test_compress_reports_and_writes(self, gradient_pgm, tmp_path, capsys):
        """Test 1: compress --rank writes a container and one summary line"""
        out = tmp_path / "g.svdc"
        code = main(["compress", str(gradient_pgm), str(out), "--rank", "6"])
        stdout = capsys.readouterr().out
        print(stdout)

        assert code == 0
        assert stdout.startswith("k=6 e=")
        assert "precision=f32" in stdout
        container = read_container(out.read_bytes())
        assert (container.rows, container.cols, container.k) == (32, 24, 6)

    def test_roundtrip_full_rank(self, gradient_pgm, tmp_path):
        """Test 2: full rank at f64 decodes to the original pixels"""
        container = tmp_path / "g.svdc"
        decoded = tmp_path / "g.pgm"

        assert main(["compress", str(gradient_pgm), str(container), "--rank", "24", "--precision", "f64"]) == 0
        assert main(["decompress", str(container), str(decoded)]) == 0
        assert load_image(decoded) == load_image(gradient_pgm)

    def test_target_e(self, gradient_pgm, tmp_path, capsys):
        """Test 3: --target-e picks a rank whose E reaches the target"""
        out = tmp_path / "g.svdc"
        code = main(["compress", str(gradient_pgm), str(out), "--target-e", "0.999"])
        fields = dict(part.split("=", 1) for part in capsys.readouterr().out.split() if "=" in part)

        assert code == 0
        assert float(fields["e"]) >= 0.999
        assert fields["zone"] in ("999", "9999")

    def test_rank_and_target_exclusive(self, gradient_pgm, tmp_path):
        """Test 4: --rank and --target-e together is a usage error"""
        out = tmp_path / "g.svdc"
        assert main(["compress", str(gradient_pgm), str(out), "--rank", "4", "--target-e", "0.99"]) == 2
        assert main(["compress", str(gradient_pgm), str(out)]) == 2

    def test_rank_too_large(self, gradient_pgm, tmp_path, capsys):
        """Test 5: k above min(m, n) exits with the input code"""
        code = main(["compress", str(gradient_pgm), str(tmp_path / "g.svdc"), "--rank", "25"])

        assert code == 2
        assert "rank out of range" in capsys.readouterr().err

    def test_bad_magic(self, tmp_path, capsys):
        """Test 6: decompressing a non-container exits 2 with bad magic on stderr"""
        bogus = tmp_path / "bogus.svdc"
        bogus.write_bytes(b"NOT A CONTAINER AT ALL")
        code = main(["decompress", str(bogus), str(tmp_path / "out.pgm")])

        assert code == 2
        assert "bad magic" in capsys.readouterr().err

    def test_missing_file(self, tmp_path, capsys):
        """Test 7: unreadable input is an I/O error with exit code 2"""
        code = main(["decompress", str(tmp_path / "absent.svdc"), str(tmp_path / "out.pgm")])

        assert code == 2
        assert capsys.readouterr().err.startswith("svdc: error:")

    def test_zero_image_numeric_error(self, tmp_path):
        """Test 8: compressing an all-black image fails with the numeric code"""
        black = tmp_path / "black.pgm"
        save_image(ImageGray(np.zeros((12, 12), dtype=np.uint8)), black)

        assert main(["compress", str(black), str(tmp_path / "b.svdc"), "--rank", "2"]) == 3

    def test_constant_gray_compresses(self, tmp_path, capsys):
        """Test 8b: a uniform gray image is rank 1 and compresses losslessly at k=1"""
        gray = tmp_path / "gray.pgm"
        container = tmp_path / "gray.svdc"
        decoded = tmp_path / "gray_out.pgm"
        save_image(ImageGray(np.full((16, 16), 128, dtype=np.uint8)), gray)

        assert main(["compress", str(gray), str(container), "--rank", "1"]) == 0
        assert "e=1.0 zone=9999" in capsys.readouterr().out
        assert main(["decompress", str(container), str(decoded)]) == 0
        assert load_image(decoded) == load_image(gray)


class TestMetricsCommand:

    def test_identical_files(self, gradient_pgm, capsys):
        """Test 9: an image against itself is lossless"""
        code = main(["metrics", str(gradient_pgm), str(gradient_pgm)])
        pairs = parse_pairs(capsys.readouterr().out)

        assert code == 0
        assert pairs["mse"] == "0.0"
        assert pairs["psnr"] == "inf"
        assert pairs["ssim"] == "1.0"

    def test_against_container(self, gradient_pgm, tmp_path, capsys):
        """Test 10: a container as the second file adds k, e and zone"""
        container = tmp_path / "g.svdc"
        main(["compress", str(gradient_pgm), str(container), "--rank", "3"])
        capsys.readouterr()

        code = main(["metrics", str(gradient_pgm), str(container), "--ssim-mode", "global"])
        pairs = parse_pairs(capsys.readouterr().out)

        assert code == 0
        assert pairs["k"] == "3"
        assert 0.0 < float(pairs["e"]) < 1.0
        assert float(pairs["mse"]) > 0.0

    def test_container_energy_matches_sweep(self, gradient_pgm, tmp_path, capsys):
        """Test 10b: E from an f64 container agrees with the sweep row for the same k"""
        container = tmp_path / "g.svdc"
        sweep = tmp_path / "sweep.csv"
        assert main(["compress", str(gradient_pgm), str(container), "--rank", "6", "--precision", "f64"]) == 0
        capsys.readouterr()

        assert main(["metrics", str(gradient_pgm), str(container), "--ssim-mode", "global"]) == 0
        container_e = float(parse_pairs(capsys.readouterr().out)["e"])
        assert main(["sweep", str(gradient_pgm), str(sweep), "--ks", "6", "--ssim-mode", "global"]) == 0
        row = sweep.read_text().splitlines()[1].split(",")
        print(f"\ncontainer e={container_e!r} sweep e={row[4]}")

        assert row[0] == "6"
        assert container_e == pytest.approx(float(row[4]), abs=1e-12)

    def test_size_mismatch(self, gradient_pgm, tmp_path):
        """Test 11: images of different sizes exit 2"""
        other = tmp_path / "small.pgm"
        save_image(ImageGray(np.zeros((4, 4), dtype=np.uint8)), other)

        assert main(["metrics", str(gradient_pgm), str(other)]) == 2


class TestSweepCommands:

    def test_sweep_csv(self, gradient_pgm, tmp_path, capsys):
        """Test 12: sweep writes one CSV row per k plus a zone summary"""
        out = tmp_path / "sweep.csv"
        summary = tmp_path / "zones.csv"
        code = main(["sweep", str(gradient_pgm), str(out), "--ks", "1:24", "--ssim-mode", "global",
                     "--summary", str(summary)])
        report = capsys.readouterr().out

        assert code == 0
        lines = out.read_text().splitlines()
        assert len(lines) == 25
        assert [int(line.split(",")[0]) for line in lines[1:]] == list(range(1, 25))
        assert report.startswith("rows=24 ")
        assert summary.read_text().splitlines()[-1].startswith("9999,")

    def test_sweep_invalid_range(self, gradient_pgm, tmp_path, capsys):
        """Test 13: a bad --ks exits 2 and mentions the range"""
        code = main(["sweep", str(gradient_pgm), str(tmp_path / "s.csv"), "--ks", "20:10"])

        assert code == 2
        assert "invalid range" in capsys.readouterr().err

    def test_spectrum(self, gradient_pgm, tmp_path, capsys):
        """Test 14: spectrum lists every k"""
        out = tmp_path / "spectrum.csv"

        assert main(["spectrum", str(gradient_pgm), str(out)]) == 0
        assert len(out.read_text().splitlines()) == 25
        assert capsys.readouterr().out.startswith("rank=")

    def test_table(self, gradient_pgm, tmp_path, capsys):
        """Test 15: table averages two images and prints per-zone lines"""
        second = tmp_path / "second.pgm"
        rng = np.random.default_rng(15)
        save_image(ImageGray(rng.integers(0, 256, size=(32, 24)).astype(np.uint8)), second)
        out = tmp_path / "table.csv"

        code = main(["table", str(out), str(gradient_pgm), str(second), "--ks", "4:24:4",
                     "--ssim-mode", "global"])
        stdout = capsys.readouterr().out

        assert code == 0
        assert len(out.read_text().splitlines()) == 7
        assert "zone=9999" in stdout

    def test_help_and_unknown_command(self, capsys):
        """Test 16: --help exits 0, an unknown command exits 2"""
        assert main(["--help"]) == 0
        assert main(["explode"]) == 2
        capsys.readouterr()
