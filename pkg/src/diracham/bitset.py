"""Vertex sets as Python integers (bit ``v`` set iff vertex ``v`` is a member)."""
from __future__ import annotations

from typing import Iterable

import numpy as np


def from_iter(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def full(n: int) -> int:
    return (1 << n) - 1


def popcount(mask: int) -> int:
    return mask.bit_count()


def members(mask: int) -> list[int]:
    """Sorted list of the vertices in ``mask``."""
    if mask < 0:
        raise ValueError("negative bitset")
    if mask.bit_length() <= 256:
        out = []
        while mask:
            low = mask & -mask
            out.append(low.bit_length() - 1)
            mask ^= low
        return out
    return to_bool(mask, mask.bit_length()).nonzero()[0].tolist()


def lowest(mask: int) -> int:
    """Smallest member, or -1 for the empty set."""
    return (mask & -mask).bit_length() - 1


def to_bool(mask: int, n: int) -> np.ndarray:
    nbytes = (n + 7) // 8
    raw = np.frombuffer(mask.to_bytes(nbytes, "little"), dtype=np.uint8)
    return np.unpackbits(raw, bitorder="little")[:n].astype(bool)


def from_bool(flags: np.ndarray) -> int:
    packed = np.packbits(np.asarray(flags, dtype=bool), bitorder="little")
    return int.from_bytes(packed.tobytes(), "little")
