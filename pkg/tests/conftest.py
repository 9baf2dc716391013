import numpy as np
import pytest

from chaosimg.cipher import PlainImage
from chaosimg.keyfile import parse_key_text

DEFAULT_KEY_TEXT = """\
map1.r=17.0
map1.x0=0.1
map1.y0=0.1
map2.r=2.35
map2.a=0.5
map2.b=0.3
map2.x0=0.1
map2.y0=0.1
transient=1000
"""


@pytest.fixture
def default_key_text():
    return DEFAULT_KEY_TEXT


@pytest.fixture
def default_keys_from_file():
    return parse_key_text(DEFAULT_KEY_TEXT)


def random_image(rng, max_side=64):
    d = int(rng.choice([1, 3]))
    h = int(rng.integers(1, max_side + 1))
    w = int(rng.integers(1, max_side + 1))
    return PlainImage.from_array(
        rng.integers(0, 256, size=(d, h, w), dtype=np.uint8)
    )


def structured_image(size=256):
    """Smooth gradient plus geometric shapes on a dark background,
    emulating a medical scan."""
    i, j = np.mgrid[0:size, 0:size]
    c = size / 2
    rad2 = (i - c) ** 2 + (j - c) ** 2
    img = (20 + 180 * np.exp(-rad2 / (2 * (size / 6) ** 2))).astype(np.uint8)
    img[rad2 < (size // 8) ** 2] = 230
    img[size // 8: size // 4, size // 8: size // 2] = 90
    return PlainImage.from_array(img)
