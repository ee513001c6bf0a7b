"""Bitset helpers over plain Python integers.

Bit ``j`` of an int row stands for vertex ``j``.  CPython performs ``&``,
``|`` and ``^`` on big ints limb by limb, so one row operation touches
``n / 30`` machine words regardless of how many bits are set.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Sequence, Set
from typing import Any

import numpy as np


def full_mask(n: int) -> int:
    return (1 << n) - 1


def popcount(x: int) -> int:
    return x.bit_count()


def lowest_bit(x: int) -> int:
    """Index of the lowest set bit of ``x``; ``-1`` if ``x == 0``."""
    return (x & -x).bit_length() - 1


def iter_bits(x: int) -> Iterator[int]:
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def mask_of(members: Iterable[int]) -> int:
    m = 0
    for v in members:
        m |= 1 << v
    return m


def compress(x: int, keep: int) -> int:
    """Pack the bits of ``x`` selected by ``keep`` into consecutive low bits."""
    out = 0
    pos = 0
    for v in iter_bits(keep):
        if x >> v & 1:
            out |= 1 << pos
        pos += 1
    return out


def rows_to_array(rows: Sequence[int], n: int) -> np.ndarray:
    """Unpack int rows into an ``n x n`` boolean array."""
    nbytes = (n + 7) // 8
    buf = b"".join(r.to_bytes(nbytes, "little") for r in rows)
    packed = np.frombuffer(buf, dtype=np.uint8).reshape(len(rows), nbytes)
    return np.unpackbits(packed, axis=1, count=n, bitorder="little").astype(bool)


def array_to_rows(a: np.ndarray) -> tuple[int, ...]:
    packed = np.packbits(np.asarray(a, dtype=bool), axis=1, bitorder="little")
    return tuple(int.from_bytes(row.tobytes(), "little") for row in packed)


def transpose(rows: Sequence[int], n: int) -> tuple[int, ...]:
    if n <= 64:
        cols = [0] * n
        for i, r in enumerate(rows):
            bit = 1 << i
            for j in iter_bits(r):
                cols[j] |= bit
        return tuple(cols)
    return array_to_rows(rows_to_array(rows, n).T)


def bool_product(left: Sequence[int], right: Sequence[int], n: int) -> list[int]:
    """Boolean matrix product on int rows: ``out[i] = OR of right[k] for k in left[i]``.

    Method of Four Russians: the rows of ``right`` are taken eight at a time
    and all 256 unions of each group are tabulated, so every output row costs
    one table lookup per byte of ``left[i]`` instead of one OR per set bit.
    """
    out = [0] * len(left)
    if n == 0:
        return out
    nbytes = (n + 7) // 8
    left_bytes = [r.to_bytes(nbytes, "little") for r in left]
    table = [0] * 256
    for c in range(nbytes):
        base = 8 * c
        group = right[base : base + 8]
        for b in range(1, 1 << len(group)):
            low = b & -b
            table[b] = table[b ^ low] | group[low.bit_length() - 1]
        for i, lb in enumerate(left_bytes):
            b = lb[c]
            if b:
                out[i] |= table[b]
    return out


class VertexSet(Set):
    """Immutable set of vertices of an ``n``-vertex universe, stored as a bitmask."""

    __slots__ = ("mask", "n")

    def __init__(self, mask: int = 0, n: int | None = None) -> None:
        if mask < 0:
            raise ValueError("negative mask")
        if n is None:
            n = mask.bit_length()
        elif mask >> n:
            raise ValueError(f"vertex set {mask:#x} exceeds universe of size {n}")
        self.mask = mask
        self.n = n

    @classmethod
    def of(cls, members: Iterable[int], n: int) -> VertexSet:
        members = list(members)
        for v in members:
            if not 0 <= v < n:
                raise ValueError(f"vertex {v} out of range for n={n}")
        return cls(mask_of(members), n)

    def __contains__(self, v: Any) -> bool:
        return isinstance(v, int) and v >= 0 and bool(self.mask >> v & 1)

    def __iter__(self) -> Iterator[int]:
        return iter_bits(self.mask)

    def __len__(self) -> int:
        return popcount(self.mask)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, VertexSet):
            return self.mask == other.mask
        return Set.__eq__(self, other)

    def __hash__(self) -> int:
        return self._hash()

    def __le__(self, other: Any) -> bool:
        if isinstance(other, VertexSet):
            return self.mask & ~other.mask == 0
        return Set.__le__(self, other)

    def __lt__(self, other: Any) -> bool:
        if isinstance(other, VertexSet):
            return self <= other and self.mask != other.mask
        return Set.__lt__(self, other)

    def __repr__(self) -> str:
        return f"VertexSet({sorted(self)}, n={self.n})"

    @classmethod
    def _from_iterable(cls, it: Iterable[int]) -> frozenset[int]:
        return frozenset(it)

    def min(self) -> int:
        if not self.mask:
            raise ValueError("empty vertex set")
        return lowest_bit(self.mask)
