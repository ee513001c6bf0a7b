"""Tournaments on vertices ``0..n-1``: construction, enumeration codes, transforms and text I/O."""

from __future__ import annotations

import random
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .bits import (
    VertexSet,
    array_to_rows,
    compress,
    full_mask,
    iter_bits,
    lowest_bit,
    mask_of,
    popcount,
    rows_to_array,
    transpose,
)

MODELS = ("uniform", "transitive", "rotational")

# Above this many vertices index/array conversions go through numpy.
_NUMPY_CUTOFF = 11


class TournamentError(ValueError):
    """Raised for malformed tournaments, codes, or tournament text."""


def num_pairs(n: int) -> int:
    return n * (n - 1) // 2


class Tournament:
    """Complete oriented graph stored as out-neighbour bitset rows.

    ``rows[i]`` has bit ``j`` set iff the edge ``i -> j`` is present.  The
    in-neighbour rows (the transpose) are computed on first use and cached.
    Instances are immutable.
    """

    __slots__ = ("n", "rows", "_cols")

    def __init__(self, n: int, rows: Sequence[int]) -> None:
        rows = tuple(rows)
        if n < 1:
            raise TournamentError(f"tournament needs at least one vertex, got n={n}")
        if len(rows) != n:
            raise TournamentError(f"expected {n} rows, got {len(rows)}")
        self.n = n
        self.rows = rows
        self._cols: tuple[int, ...] | None = None
        self._validate()

    @classmethod
    def _trusted(cls, n: int, rows: tuple[int, ...], cols: tuple[int, ...] | None = None) -> Tournament:
        t = object.__new__(cls)
        t.n = n
        t.rows = rows
        t._cols = cols
        return t

    def _validate(self) -> None:
        n, full = self.n, full_mask(self.n)
        for i, r in enumerate(self.rows):
            if r >> n or r < 0:
                raise TournamentError(f"row {i} names a vertex outside [0, {n})")
            if r >> i & 1:
                raise TournamentError(f"self-loop ({i},{i})")
        cols = self.cols
        for i in range(n):
            both = self.rows[i] & cols[i]
            if both:
                j = lowest_bit(both)
                raise TournamentError(f"double orientation ({min(i, j)},{max(i, j)})")
            missing = full ^ (1 << i) ^ (self.rows[i] | cols[i])
            if missing:
                j = lowest_bit(missing)
                raise TournamentError(f"missing orientation ({min(i, j)},{max(i, j)})")

    @property
    def cols(self) -> tuple[int, ...]:
        """In-neighbour rows: bit ``i`` of ``cols[j]`` is set iff ``i -> j``."""
        if self._cols is None:
            self._cols = transpose(self.rows, self.n)
        return self._cols

    def has_edge(self, i: int, j: int) -> bool:
        return bool(self.rows[i] >> j & 1)

    def out_degree(self, v: int) -> int:
        return popcount(self.rows[v])

    def in_degree(self, v: int) -> int:
        return self.n - 1 - popcount(self.rows[v])

    def out_degrees(self) -> list[int]:
        return [popcount(r) for r in self.rows]

    def edges(self) -> Iterator[tuple[int, int]]:
        for i, r in enumerate(self.rows):
            for j in iter_bits(r):
                yield i, j

    def matrix(self) -> list[list[bool]]:
        return [[bool(r >> j & 1) for j in range(self.n)] for r in self.rows]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Tournament):
            return NotImplemented
        return self.n == other.n and self.rows == other.rows

    def __hash__(self) -> int:
        return hash((self.n, self.rows))

    def __repr__(self) -> str:
        if self.n <= 8:
            return f"Tournament(n={self.n}, code={to_index(self)})"
        return f"Tournament(n={self.n})"


@dataclass(frozen=True, order=True)
class InstanceIndex:
    """Enumeration coordinate of a labelled tournament: ``0 <= code < 2**C(n,2)``."""

    n: int
    code: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise TournamentError(f"n must be >= 1, got {self.n}")
        if not 0 <= self.code < 1 << num_pairs(self.n):
            raise TournamentError(f"code {self.code} out of range for n={self.n}")

    def tournament(self) -> Tournament:
        return from_index(self.n, self.code)

    def hex(self) -> str:
        return format_hex(self.n, self.code)


def build(n: int, orientations: Sequence[Sequence[object]]) -> Tournament:
    """Build a tournament from an ``n x n`` matrix of truthy/falsy orientation flags."""
    if len(orientations) != n or any(len(row) != n for row in orientations):
        raise TournamentError(f"orientation matrix must be {n}x{n}")
    rows = [mask_of(j for j, x in enumerate(row) if x) for row in orientations]
    return Tournament(n, rows)


def from_edges(n: int, edges: Iterable[tuple[int, int]]) -> Tournament:
    rows = [0] * n
    for i, j in edges:
        rows[i] |= 1 << j
    return Tournament(n, rows)


def from_index(n: int, code: int) -> Tournament:
    """Decode a pair code.

    Pairs ``(i, j)`` with ``i < j`` are numbered lexicographically; bit ``k``
    of ``code`` (LSB = pair 0) set means ``i -> j``, clear means ``j -> i``.
    """
    InstanceIndex(n, code)
    if n > _NUMPY_CUTOFF:
        m = num_pairs(n)
        bits = np.unpackbits(
            np.frombuffer(code.to_bytes((m + 7) // 8, "little"), dtype=np.uint8),
            count=m,
            bitorder="little",
        ).astype(bool)
        iu, ju = np.triu_indices(n, 1)
        adj = np.zeros((n, n), dtype=bool)
        adj[iu, ju] = bits
        adj[ju, iu] = ~bits
        return Tournament._trusted(n, array_to_rows(adj), array_to_rows(adj.T))
    rows = [0] * n
    k = 0
    for i in range(n):
        for j in range(i + 1, n):
            if code >> k & 1:
                rows[i] |= 1 << j
            else:
                rows[j] |= 1 << i
            k += 1
    return Tournament._trusted(n, tuple(rows))


def to_index(t: Tournament) -> int:
    n = t.n
    if n > _NUMPY_CUTOFF:
        adj = rows_to_array(t.rows, n)
        bits = adj[np.triu_indices(n, 1)]
        return int.from_bytes(np.packbits(bits, bitorder="little").tobytes(), "little")
    code = 0
    k = 0
    for i in range(n):
        r = t.rows[i]
        for j in range(i + 1, n):
            if r >> j & 1:
                code |= 1 << k
            k += 1
    return code


@lru_cache(maxsize=8)
def all_tournaments(n: int) -> tuple[Tournament, ...]:
    """Every labelled tournament on ``n`` vertices, indexed by code (cached; keep n small)."""
    if n > 5:
        raise TournamentError(f"refusing to materialise all tournaments for n={n}")
    out = []
    for code in range(1 << num_pairs(n)):
        t = from_index(n, code)
        t.cols
        out.append(t)
    return tuple(out)


def out_neighbors(t: Tournament, v: int) -> VertexSet:
    if not 0 <= v < t.n:
        raise TournamentError(f"vertex {v} out of range for n={t.n}")
    return VertexSet(t.rows[v], t.n)


def in_neighbors(t: Tournament, v: int) -> VertexSet:
    if not 0 <= v < t.n:
        raise TournamentError(f"vertex {v} out of range for n={t.n}")
    return VertexSet(t.cols[v], t.n)


def reverse(t: Tournament) -> Tournament:
    return Tournament._trusted(t.n, t.cols, t.rows)


def restrict(t: Tournament, keep: VertexSet | Iterable[int]) -> tuple[Tournament, tuple[int, ...]]:
    """Induced sub-tournament on ``keep``, re-indexed compactly.

    Returns the sub-tournament and ``labels`` where ``labels[new] = old``.
    """
    if isinstance(keep, VertexSet):
        mask = keep.mask
    else:
        keep = list(keep)
        if any(not 0 <= v < t.n for v in keep):
            raise TournamentError(f"keep set leaves the vertex range [0, {t.n})")
        mask = mask_of(keep)
    if mask >> t.n:
        raise TournamentError(f"keep set leaves the vertex range [0, {t.n})")
    if not mask:
        raise TournamentError("cannot restrict to an empty vertex set")
    labels = tuple(iter_bits(mask))
    if t.n > 64:
        idx = np.array(labels)
        sub = rows_to_array(t.rows, t.n)[np.ix_(idx, idx)]
        return Tournament._trusted(len(labels), array_to_rows(sub)), labels
    rows = tuple(compress(t.rows[v], mask) for v in labels)
    return Tournament._trusted(len(labels), rows), labels


def transitive(n: int) -> Tournament:
    """``i -> j`` whenever ``i < j``."""
    full = full_mask(n)
    return Tournament._trusted(n, tuple(full ^ ((1 << (i + 1)) - 1) for i in range(n)))


def rotational(n: int) -> Tournament:
    """Vertex ``i`` beats ``i+1, ..., i+(n-1)/2`` modulo ``n``; needs odd ``n``."""
    if n % 2 == 0:
        raise TournamentError(f"rotational tournament needs odd n, got {n}")
    half = (n - 1) // 2
    rows = []
    for i in range(n):
        rows.append(mask_of((i + d) % n for d in range(1, half + 1)))
    return Tournament._trusted(n, tuple(rows))


def uniform(n: int, seed: int) -> Tournament:
    """Uniformly random tournament, deterministic in ``seed``.

    Draws ``C(n,2)`` bits from ``random.Random(seed).getrandbits`` (Mersenne
    Twister) and decodes them with :func:`from_index`, so bit ``k`` of the
    stream orients pair ``k`` in lexicographic order.
    """
    return from_index(n, random.Random(seed).getrandbits(num_pairs(n)))


def generate(n: int, model: str, seed: int | None = None) -> Tournament:
    if n < 1:
        raise TournamentError(f"n must be >= 1, got {n}")
    if model == "uniform":
        if seed is None:
            raise TournamentError("uniform model requires a seed")
        return uniform(n, seed)
    if model == "transitive":
        return transitive(n)
    if model == "rotational":
        return rotational(n)
    raise TournamentError(f"unknown model {model!r}; expected one of {', '.join(MODELS)}")


# -- text format ------------------------------------------------------------


def format_hex(n: int, code: int) -> str:
    digits = (num_pairs(n) + 3) // 4
    return format(code, "x").zfill(digits) if digits else ""


def serialize(t: Tournament, form: str = "matrix") -> str:
    if form == "matrix":
        lines = ["".join("1" if t.rows[i] >> j & 1 else "0" for j in range(t.n)) for i in range(t.n)]
        return f"{t.n}\n" + "\n".join(lines) + "\n"
    if form == "hex":
        return f"{t.n}\nhex:{format_hex(t.n, to_index(t))}\n"
    raise TournamentError(f"unknown form {form!r}")


def parse(text: str) -> Tournament:
    lines = text.splitlines()
    while lines and not lines[-1].strip():
        lines.pop()
    t, used = parse_lines(lines, 0)
    if used != len(lines):
        raise TournamentError(f"unexpected content after tournament at line {used + 1}")
    return t


def parse_lines(lines: Sequence[str], start: int) -> tuple[Tournament, int]:
    """Parse one tournament from ``lines[start:]``; return it and the next unread line index."""
    if start >= len(lines):
        raise TournamentError("malformed header: missing vertex count")
    header = lines[start].strip()
    if not header.isdigit() or int(header) < 1:
        raise TournamentError(f"malformed header {header!r}: expected a positive decimal n")
    n = int(header)
    pos = start + 1
    if pos < len(lines) and lines[pos].strip().startswith("hex:"):
        digits = lines[pos].strip()[4:]
        want = (num_pairs(n) + 3) // 4
        if len(digits) != want:
            raise TournamentError(f"bad hex length: n={n} needs {want} digits, got {len(digits)}")
        try:
            code = int(digits, 16) if digits else 0
        except ValueError:
            raise TournamentError(f"bad hex digits {digits!r}") from None
        if code >> num_pairs(n):
            raise TournamentError(f"hex code {digits} sets bits beyond the {num_pairs(n)} pair bits")
        return from_index(n, code), pos + 1
    if pos + n > len(lines):
        raise TournamentError(f"expected {n} matrix rows after header, got {len(lines) - pos}")
    rows = []
    for i in range(n):
        line = lines[pos + i].strip()
        if len(line) != n or set(line) - {"0", "1"}:
            raise TournamentError(f"matrix row {i} must be {n} characters of 0/1, got {line!r}")
        if line[i] != "0":
            raise TournamentError(f"self-loop ({i},{i}): diagonal must be 0")
        rows.append(int(line[::-1], 2))
    return Tournament(n, rows), pos + n
