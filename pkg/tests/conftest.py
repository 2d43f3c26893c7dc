"""Shared fixtures: deterministic RNG, small synthetic bands, and a
session-scoped default scene so the expensive 600x525 generation runs once.
"""

import numpy as np
import pytest

from fusionqa.raster import Band, MultibandImage
from fusionqa.synth import SceneParams, generate_scene, simulate_fusion


@pytest.fixture
def rng():
    """Deterministic random generator (seed 42)."""
    return np.random.default_rng(42)


@pytest.fixture
def constant_band():
    """20x20 uniform band at 128."""
    return Band(np.full((20, 20), 128, dtype=np.uint8))


@pytest.fixture
def constant_image(constant_band):
    return MultibandImage(constant_band, constant_band, constant_band, label="const")


@pytest.fixture
def step_band():
    """32x32 vertical step: left half 40, right half 200."""
    data = np.full((32, 32), 40, dtype=np.uint8)
    data[:, 16:] = 200
    return Band(data)


@pytest.fixture
def random_band(rng):
    return Band(rng.integers(0, 256, size=(32, 32), dtype=np.uint8))


def random_bands(rng, count, shape=(32, 32)):
    return [Band(rng.integers(0, 256, size=shape, dtype=np.uint8)) for _ in range(count)]


@pytest.fixture(scope="session")
def default_scene():
    """Default 600x525 synthetic scene: (params, pan, ms)."""
    params = SceneParams()
    pan, ms = generate_scene(params)
    return params, pan, ms


@pytest.fixture(scope="session")
def fused_by_gain(default_scene):
    """Simulated fused images at hf_gain 0, 0.5, 1, 2 for the default scene."""
    params, pan, ms = default_scene
    return {
        gain: simulate_fusion(pan, ms, gain, blur_radius=params.blur_radius,
                              label=f"hf{gain:g}")
        for gain in (0.0, 0.5, 1.0, 2.0)
    }


@pytest.fixture(scope="session")
def fixture_dir(tmp_path_factory, default_scene):
    """Fixture files on disk: pan.pgm, ms.ppm and three fused images."""
    from fusionqa import netpbm

    params, pan, ms = default_scene
    out = tmp_path_factory.mktemp("fixtures")
    netpbm.write_pgm(pan, out / "pan.pgm")
    netpbm.write_ppm(ms, out / "ms.ppm")
    for gain in (0.5, 1.0, 2.0):
        fused = simulate_fusion(pan, ms, gain, blur_radius=params.blur_radius)
        netpbm.write_ppm(fused, out / f"fused_hf{gain:g}.ppm")
    return out
