"""Minimal binary PPM (P6) and PGM (P5) readers and writers.

Raw 3-channel frames travel as P6 with a maxval matching the LUT bit
depth; class-label images travel as P5 with label ids as grey values.
Only single-byte sample depths (maxval <= 255) are supported.
"""

from __future__ import annotations

import io
from pathlib import Path

import numpy as np


class PnmFormatError(ValueError):
    """Raised for malformed or unsupported PNM data."""


def _read_header_tokens(stream: io.BufferedIOBase, count: int) -> list[int]:
    """Read whitespace-separated integer tokens, skipping '#' comments."""
    tokens: list[int] = []
    current = b""
    while len(tokens) < count:
        ch = stream.read(1)
        if not ch:
            raise PnmFormatError("truncated PNM header")
        if ch == b"#":
            while ch not in (b"\n", b""):
                ch = stream.read(1)
            continue
        if ch.isspace():
            if current:
                tokens.append(int(current))
                current = b""
            continue
        if not ch.isdigit():
            raise PnmFormatError(f"unexpected byte {ch!r} in PNM header")
        current += ch
    return tokens


def _read_pnm(data: bytes, magic: bytes, channels: int) -> tuple[np.ndarray, int]:
    stream = io.BytesIO(data)
    if stream.read(2) != magic:
        raise PnmFormatError(f"expected {magic.decode()} magic")
    width, height, maxval = _read_header_tokens(stream, 3)
    if width < 0 or height < 0:
        raise PnmFormatError("negative PNM dimensions")
    if not 0 < maxval <= 255:
        raise PnmFormatError(f"unsupported maxval {maxval}")
    expected = width * height * channels
    payload = stream.read(expected)
    if len(payload) != expected:
        raise PnmFormatError("truncated PNM payload")
    arr = np.frombuffer(payload, dtype=np.uint8)
    if channels == 1:
        arr = arr.reshape(height, width)
    else:
        arr = arr.reshape(height, width, channels)
    if arr.size and int(arr.max()) > maxval:
        raise PnmFormatError("sample value exceeds declared maxval")
    return arr.copy(), maxval


def read_ppm(source: bytes | str | Path) -> tuple[np.ndarray, int]:
    """Read a binary PPM; returns ((h, w, 3) uint8 array, maxval)."""
    data = source if isinstance(source, bytes) else Path(source).read_bytes()
    return _read_pnm(data, b"P6", 3)


def read_pgm(source: bytes | str | Path) -> tuple[np.ndarray, int]:
    """Read a binary PGM; returns ((h, w) uint8 array, maxval)."""
    data = source if isinstance(source, bytes) else Path(source).read_bytes()
    return _read_pnm(data, b"P5", 1)


def _encode(arr: np.ndarray, magic: bytes, maxval: int) -> bytes:
    if not 0 < maxval <= 255:
        raise PnmFormatError(f"unsupported maxval {maxval}")
    if arr.size and int(arr.max()) > maxval:
        raise PnmFormatError("sample value exceeds maxval")
    h, w = arr.shape[:2]
    header = b"%s\n%d %d\n%d\n" % (magic, w, h, maxval)
    return header + arr.astype(np.uint8).tobytes()


def write_ppm(image: np.ndarray, target: str | Path | None = None, maxval: int = 255) -> bytes:
    """Encode an (h, w, 3) array as binary PPM, optionally writing to a file."""
    image = np.asarray(image)
    if image.ndim != 3 or image.shape[2] != 3:
        raise PnmFormatError("PPM image must have shape (h, w, 3)")
    data = _encode(image, b"P6", maxval)
    if target is not None:
        Path(target).write_bytes(data)
    return data


def write_pgm(image: np.ndarray, target: str | Path | None = None, maxval: int = 255) -> bytes:
    """Encode an (h, w) array as binary PGM, optionally writing to a file."""
    image = np.asarray(image)
    if image.ndim != 2:
        raise PnmFormatError("PGM image must have shape (h, w)")
    data = _encode(image, b"P5", maxval)
    if target is not None:
        Path(target).write_bytes(data)
    return data
