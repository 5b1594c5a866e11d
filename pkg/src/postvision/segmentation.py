"""Colour look-up-table segmentation.

A LUT maps every 3-channel pixel value (n bits per channel) to a small
colour class label, turning raw frames into class-label images that the
rest of the pipeline consumes. Label 0 is reserved for "unclassified".

LUT file format: one ASCII header line ``LUTv1 <n> <k>\\n`` followed by
exactly ``2**(3*n)`` raw bytes, one label id per byte. Index packing is
``(c0 << 2n) | (c1 << n) | c2``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

UNCLASSIFIED = 0

ClassImage = np.ndarray  # (h, w) uint8 label grid


class LutFormatError(ValueError):
    """Raised for malformed LUT byte streams."""


@dataclass(frozen=True, eq=False)
class Lut:
    """Flat colour look-up table: 2**(3n) entries of label ids < label_count."""

    bits_per_channel: int
    labels: np.ndarray
    label_count: int

    def __post_init__(self) -> None:
        n = self.bits_per_channel
        if not 1 <= n <= 8:
            raise ValueError(f"bits_per_channel must be in 1..8, got {n}")
        if self.label_count < 1 or self.label_count > 256:
            raise ValueError(f"label_count must be in 1..256, got {self.label_count}")
        labels = np.ascontiguousarray(self.labels, dtype=np.uint8)
        if labels.ndim != 1 or labels.size != 1 << (3 * n):
            raise ValueError(
                f"LUT must hold exactly 2**(3*{n}) = {1 << (3 * n)} entries, "
                f"got {labels.size}"
            )
        if labels.size and int(labels.max()) >= self.label_count:
            raise ValueError("LUT entry exceeds label_count")
        object.__setattr__(self, "labels", labels)

    @classmethod
    def constant(cls, bits_per_channel: int, label: int, label_count: int) -> "Lut":
        """A LUT mapping every colour to one label (handy for tests/demos)."""
        size = 1 << (3 * bits_per_channel)
        return cls(bits_per_channel, np.full(size, label, dtype=np.uint8), label_count)


def _pack_index(lut: Lut, pixel: np.ndarray) -> np.ndarray:
    n = lut.bits_per_channel
    c = pixel.astype(np.uint32)
    return (c[..., 0] << (2 * n)) | (c[..., 1] << n) | c[..., 2]


def classify_pixel(lut: Lut, pixel: tuple[int, int, int]) -> int:
    """Map one 3-channel pixel value to its colour class label.

    Pure and total over in-range inputs; raises ValueError when any
    channel is >= 2**bits_per_channel.
    """
    arr = np.asarray(pixel)
    if arr.shape != (3,):
        raise ValueError("pixel must have exactly 3 channels")
    limit = 1 << lut.bits_per_channel
    if arr.min() < 0 or arr.max() >= limit:
        raise ValueError(f"channel value out of range 0..{limit - 1}: {tuple(arr)}")
    return int(lut.labels[_pack_index(lut, arr)])


def classify_image(lut: Lut, image: np.ndarray) -> ClassImage:
    """Classify every pixel of an (h, w, 3) raw image.

    Output has the same (h, w) grid; cell (y, x) equals
    classify_pixel(lut, image[y, x]).
    """
    image = np.asarray(image)
    if image.ndim != 3 or image.shape[2] != 3:
        raise ValueError("raw image must have shape (h, w, 3)")
    limit = 1 << lut.bits_per_channel
    if image.size and (image.min() < 0 or image.max() >= limit):
        raise ValueError(f"channel value out of range 0..{limit - 1}")
    if image.size == 0:
        return np.zeros(image.shape[:2], dtype=np.uint8)
    return lut.labels[_pack_index(lut, image)]


def save_lut(lut: Lut) -> bytes:
    """Serialize a LUT; load_lut(save_lut(l)) reproduces l byte-exactly."""
    header = f"LUTv1 {lut.bits_per_channel} {lut.label_count}\n".encode("ascii")
    return header + lut.labels.tobytes()


def load_lut(data: bytes) -> Lut:
    """Parse LUT bytes, validating header, payload length and label range."""
    newline = data.find(b"\n")
    if newline < 0:
        raise LutFormatError("missing LUT header line")
    fields = data[:newline].split()
    if len(fields) != 3 or fields[0] != b"LUTv1":
        raise LutFormatError("bad LUT magic; expected 'LUTv1 <n> <k>'")
    try:
        n, k = int(fields[1]), int(fields[2])
    except ValueError as exc:
        raise LutFormatError("non-numeric LUT header fields") from exc
    if not 1 <= n <= 8:
        raise LutFormatError(f"bits_per_channel out of range: {n}")
    payload = data[newline + 1:]
    expected = 1 << (3 * n)
    if len(payload) != expected:
        raise LutFormatError(
            f"LUT payload must be {expected} bytes, got {len(payload)}"
        )
    labels = np.frombuffer(payload, dtype=np.uint8)
    if labels.size and int(labels.max()) >= k:
        raise LutFormatError("LUT entry exceeds declared label count")
    try:
        return Lut(n, labels.copy(), k)
    except ValueError as exc:
        raise LutFormatError(str(exc)) from exc
