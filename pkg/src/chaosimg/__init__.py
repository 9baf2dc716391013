"""Chaos-based split-half image cipher with dynamics and quality tooling."""

from .cipher import (
    CipherEnvelope,
    ImageDims,
    KeyMaterial,
    PlainImage,
    decrypt,
    default_keys,
    encrypt,
)
from .maps import MapId, MapParams, default_map1, default_map2

__all__ = [
    "CipherEnvelope",
    "ImageDims",
    "KeyMaterial",
    "MapId",
    "MapParams",
    "PlainImage",
    "decrypt",
    "default_keys",
    "default_map1",
    "default_map2",
    "encrypt",
]

__version__ = "0.1.0"
