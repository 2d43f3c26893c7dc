"""Core raster types, resampling, L derivation, block extraction, statistics."""

import numpy as np
import pytest

from fusionqa.errors import BoundsError, EmptyRegionError
from fusionqa.raster import (
    Band,
    MultibandImage,
    RegionSpec,
    extract_block,
    l_component,
    pixel_stats,
    upsample_nearest,
)

from oracles import naive_mean, naive_std, naive_upsample


class TestBand:
    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            Band(np.zeros((0, 4), dtype=np.uint8))

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            Band(np.array([[300, 0]], dtype=np.int32))
        with pytest.raises(ValueError):
            Band(np.array([[-1, 0]], dtype=np.int32))

    def test_accepts_plain_integers(self):
        band = Band(np.array([[1, 2], [3, 4]]))
        assert band.data.dtype == np.uint8
        assert band.width == 2 and band.height == 2

    def test_immutable(self, random_band):
        with pytest.raises(ValueError):
            random_band.data[0, 0] = 0


class TestMultibandImage:
    def test_mismatched_bands_rejected(self, constant_band):
        other = Band(np.zeros((5, 5), dtype=np.uint8))
        with pytest.raises(ValueError):
            MultibandImage(constant_band, constant_band, other)

    def test_band_lookup(self, constant_image):
        assert constant_image.band("R") is constant_image.r
        with pytest.raises(KeyError):
            constant_image.band("X")


class TestUpsampleNearest:
    def test_single_pixel_replication(self):
        out = upsample_nearest(Band(np.array([[7]], dtype=np.uint8)), 3)
        assert out.shape == (3, 3)
        assert (out.data == 7).all()

    def test_block_replication(self):
        src = Band(np.array([[1, 2], [3, 4]], dtype=np.uint8))
        out = upsample_nearest(src, 2)
        expected = np.array(
            [[1, 1, 2, 2], [1, 1, 2, 2], [3, 3, 4, 4], [3, 3, 4, 4]], dtype=np.uint8
        )
        assert (out.data == expected).all()

    def test_scene_scale_dimensions(self, rng):
        src = Band(rng.integers(0, 256, size=(105, 120), dtype=np.uint8))
        out = upsample_nearest(src, 5)
        assert (out.width, out.height) == (600, 525)

    def test_rejects_factor_zero(self, constant_band):
        with pytest.raises(ValueError):
            upsample_nearest(constant_band, 0)

    def test_matches_naive(self, rng):
        src = rng.integers(0, 256, size=(7, 5), dtype=np.uint8)
        out = upsample_nearest(Band(src), 3)
        assert out.data.tolist() == naive_upsample(src.tolist(), 3)

    @pytest.mark.parametrize("a", [1, 2, 3, 4])
    @pytest.mark.parametrize("c", [1, 2, 3, 4])
    def test_composition(self, rng, a, c):
        src = Band(rng.integers(0, 256, size=(6, 9), dtype=np.uint8))
        twice = upsample_nearest(upsample_nearest(src, a), c)
        once = upsample_nearest(src, a * c)
        assert twice == once


class TestLComponent:
    def test_gray_idempotent(self, rng):
        band = Band(rng.integers(0, 256, size=(16, 16), dtype=np.uint8))
        gray = MultibandImage(band, band, band)
        assert l_component(gray) == band

    def test_examples(self):
        img = MultibandImage(
            Band(np.array([[0, 10]], dtype=np.uint8)),
            Band(np.array([[0, 20]], dtype=np.uint8)),
            Band(np.array([[255, 30]], dtype=np.uint8)),
        )
        out = l_component(img)
        assert out.data[0, 0] == 85
        assert out.data[0, 1] == 20

    def test_rounds_half_up(self):
        # (1 + 2 + 2) / 3 = 5/3 -> 2; (1 + 1 + 2) / 3 = 4/3 -> 1; (1+2+3)/3 = 2
        img = MultibandImage(
            Band(np.array([[1, 1, 1]], dtype=np.uint8)),
            Band(np.array([[2, 1, 2]], dtype=np.uint8)),
            Band(np.array([[2, 2, 3]], dtype=np.uint8)),
        )
        assert l_component(img).data.tolist() == [[2, 1, 2]]


class TestExtractBlock:
    def test_identity_crop(self, random_band):
        region = RegionSpec("all", 0, 0, random_band.width, random_band.height)
        assert extract_block(random_band, region) == random_band

    def test_single_pixel(self):
        band = Band(np.array([[9, 1], [2, 3]], dtype=np.uint8))
        out = extract_block(band, RegionSpec("px", 0, 0, 1, 1))
        assert out.data.tolist() == [[9]]

    def test_scene_scale_block(self, rng):
        band = Band(rng.integers(0, 256, size=(525, 600), dtype=np.uint8))
        block = extract_block(band, RegionSpec("b1", 40, 40, 30, 30))
        assert block.pixels().size == 900

    def test_out_of_bounds_names_region(self, constant_band):
        with pytest.raises(BoundsError, match="b9"):
            extract_block(constant_band, RegionSpec("b9", 15, 15, 10, 10))

    def test_preserves_values(self, rng):
        band = Band(rng.integers(0, 256, size=(12, 12), dtype=np.uint8))
        region = RegionSpec("r", 3, 4, 5, 6)
        block = extract_block(band, region)
        assert (block.data == band.data[4:10, 3:8]).all()


class TestPixelStats:
    def test_constant(self):
        stats = pixel_stats([5, 5, 5, 5])
        assert stats.mean == 5 and stats.std_dev == 0
        assert stats.min == 5 and stats.max == 5 and stats.n == 4

    def test_two_point_symmetry(self):
        stats = pixel_stats([0, 255])
        assert stats.mean == 127.5
        assert stats.std_dev == 127.5

    def test_three_values(self):
        stats = pixel_stats([50, 100, 150])
        assert stats.mean == 100.0
        assert stats.std_dev == pytest.approx(40.824829046386306, abs=1e-12)

    def test_empty_rejected(self):
        with pytest.raises(EmptyRegionError):
            pixel_stats([])

    def test_matches_two_pass_oracle(self, rng):
        for _ in range(100):
            values = rng.integers(0, 256, size=int(rng.integers(2, 120))).tolist()
            stats = pixel_stats(values)
            assert stats.mean == pytest.approx(naive_mean(values), rel=1e-12)
            assert stats.variance == pytest.approx(naive_std(values) ** 2, rel=1e-9)

    def test_ordering_invariant(self, rng):
        for _ in range(20):
            values = rng.integers(0, 256, size=30)
            stats = pixel_stats(values)
            assert stats.min <= stats.mean <= stats.max
            assert stats.std_dev >= 0
