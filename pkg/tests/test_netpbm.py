"""Bit-exact PGM/PPM round-trips, header parsing, PNG convenience input."""

import numpy as np
import pytest

from fusionqa import netpbm
from fusionqa.raster import Band, MultibandImage


def random_image(rng, w, h):
    return MultibandImage(
        Band(rng.integers(0, 256, size=(h, w), dtype=np.uint8)),
        Band(rng.integers(0, 256, size=(h, w), dtype=np.uint8)),
        Band(rng.integers(0, 256, size=(h, w), dtype=np.uint8)),
        label="test",
    )


class TestRoundTrip:
    @pytest.mark.parametrize("w,h", [(1, 1), (3, 7), (64, 48), (600, 525)])
    def test_pgm(self, rng, tmp_path, w, h):
        band = Band(rng.integers(0, 256, size=(h, w), dtype=np.uint8))
        path = tmp_path / "band.pgm"
        netpbm.write_pgm(band, path)
        assert netpbm.read_pgm(path) == band

    @pytest.mark.parametrize("w,h", [(1, 1), (5, 4), (600, 525)])
    def test_ppm(self, rng, tmp_path, w, h):
        img = random_image(rng, w, h)
        path = tmp_path / "img.ppm"
        netpbm.write_ppm(img, path)
        loaded = netpbm.read_ppm(path)
        assert loaded.r == img.r and loaded.g == img.g and loaded.b == img.b

    def test_write_read_write_byte_identical(self, rng, tmp_path):
        band = Band(rng.integers(0, 256, size=(33, 17), dtype=np.uint8))
        p1, p2 = tmp_path / "a.pgm", tmp_path / "b.pgm"
        netpbm.write_pgm(band, p1)
        netpbm.write_pgm(netpbm.read_pgm(p1), p2)
        assert p1.read_bytes() == p2.read_bytes()


class TestHeaderParsing:
    def test_comments_anywhere_in_header(self, tmp_path):
        raster = bytes([1, 2, 3, 4, 5, 6])
        path = tmp_path / "c.pgm"
        path.write_bytes(b"P5\n# a comment\n3 # trailing\n# more\n2\n255\n" + raster)
        band = netpbm.read_pgm(path)
        assert band.data.tolist() == [[1, 2, 3], [4, 5, 6]]

    def test_comment_directly_after_token(self, tmp_path):
        # the comment's newline delimits the width token; 3 must not merge with 2
        path = tmp_path / "c2.pgm"
        path.write_bytes(b"P5\n3#c\n2\n255\n" + bytes(6))
        band = netpbm.read_pgm(path)
        assert (band.width, band.height) == (3, 2)

    def test_six_bit_maxval_scales_up(self, tmp_path):
        path = tmp_path / "six.pgm"
        path.write_bytes(b"P5\n2 1\n63\n" + bytes([0, 63]))
        band = netpbm.read_pgm(path)
        assert band.data.tolist() == [[0, 252]]

    def test_unsupported_maxval(self, tmp_path):
        path = tmp_path / "bad.pgm"
        path.write_bytes(b"P5\n1 1\n100\n" + bytes([1]))
        with pytest.raises(ValueError, match="maxval"):
            netpbm.read_pgm(path)

    def test_bad_magic(self, tmp_path):
        path = tmp_path / "bad.pgm"
        path.write_bytes(b"P3\n1 1\n255\n1")
        with pytest.raises(ValueError, match="magic"):
            netpbm.read_pgm(path)

    def test_truncated_raster(self, tmp_path):
        path = tmp_path / "short.pgm"
        path.write_bytes(b"P5\n4 4\n255\n" + bytes(5))
        with pytest.raises(ValueError, match="truncated"):
            netpbm.read_pgm(path)

    def test_wrong_format_cross_read(self, rng, tmp_path):
        band = Band(rng.integers(0, 256, size=(2, 2), dtype=np.uint8))
        path = tmp_path / "x.pgm"
        netpbm.write_pgm(band, path)
        with pytest.raises(ValueError, match="expected PPM"):
            netpbm.read_ppm(path)


class TestPng:
    def test_grayscale_png(self, rng, tmp_path):
        from PIL import Image

        arr = rng.integers(0, 256, size=(9, 11), dtype=np.uint8)
        path = tmp_path / "g.png"
        Image.fromarray(arr, mode="L").save(path)
        assert (netpbm.read_band(path).data == arr).all()

    def test_rgb_png(self, rng, tmp_path):
        from PIL import Image

        arr = rng.integers(0, 256, size=(6, 8, 3), dtype=np.uint8)
        path = tmp_path / "c.png"
        Image.fromarray(arr, mode="RGB").save(path)
        img = netpbm.read_rgb(path)
        assert (img.r.data == arr[:, :, 0]).all()
        assert (img.b.data == arr[:, :, 2]).all()

    def test_missing_file(self, tmp_path):
        with pytest.raises(OSError):
            netpbm.read_band(tmp_path / "nope.pgm")
