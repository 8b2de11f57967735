"""Partitions, standard Young tableaux (English convention) and RSK."""

from __future__ import annotations

from functools import lru_cache
from math import factorial
from typing import Iterator, Sequence

from .errors import DomainError, StructureError
from .tau import TauSet, tau_mask

Partition = tuple[int, ...]
Tableau = tuple[tuple[int, ...], ...]


def check_partition(shape: Sequence[int]) -> Partition:
    shape = tuple(shape)
    if any(p <= 0 for p in shape):
        raise DomainError(f"partition parts must be positive: {shape}")
    if any(a < b for a, b in zip(shape, shape[1:])):
        raise DomainError(f"partition parts must be weakly decreasing: {shape}")
    return shape


@lru_cache(maxsize=None)
def partitions(m: int, largest: int | None = None) -> tuple[Partition, ...]:
    """Partitions of m in reverse lexicographic order, (m) first."""
    if m == 0:
        return ((),)
    largest = m if largest is None else largest
    out = []
    for first in range(min(m, largest), 0, -1):
        for rest in partitions(m - first, first):
            out.append((first,) + rest)
    return tuple(out)


def outer_corners(shape: Partition) -> list[tuple[int, int]]:
    """Removable cells (row, col), top to bottom."""
    corners = []
    for r, length in enumerate(shape):
        below = shape[r + 1] if r + 1 < len(shape) else 0
        if length > below:
            corners.append((r, length - 1))
    return corners


def remove_cell(shape: Partition, row: int) -> Partition:
    parts = list(shape)
    parts[row] -= 1
    if parts[row] < 0 or (row + 1 < len(parts) and parts[row] < parts[row + 1]):
        raise DomainError(f"row {row} of {shape} has no removable cell")
    return tuple(p for p in parts if p)


def hook_length_count(shape: Sequence[int]) -> int:
    shape = check_partition(shape)
    conj = [sum(1 for p in shape if p > c) for c in range(shape[0])] if shape else []
    prod = 1
    for r, length in enumerate(shape):
        for c in range(length):
            prod *= (length - c - 1) + (conj[c] - r - 1) + 1
    return factorial(sum(shape)) // prod


def standard_tableaux(shape: Sequence[int]) -> list[Tableau]:
    """All SYT of the shape, sorted by their row-reading word."""
    shape = check_partition(shape)
    m = sum(shape)
    rows: list[list[int]] = [[] for _ in shape]
    out: list[Tableau] = []

    def place(k: int) -> None:
        if k > m:
            out.append(tuple(tuple(r) for r in rows))
            return
        for r, length in enumerate(shape):
            if len(rows[r]) < length and (r == 0 or len(rows[r - 1]) > len(rows[r])):
                rows[r].append(k)
                place(k + 1)
                rows[r].pop()

    place(1)
    out.sort(key=lambda t: tuple(x for row in t for x in row))
    return out


def check_tableau(T: Sequence[Sequence[int]]) -> Tableau:
    T = tuple(tuple(row) for row in T)
    check_partition(tuple(len(r) for r in T))
    entries = sorted(x for row in T for x in row)
    if entries != list(range(1, len(entries) + 1)):
        raise StructureError(f"entries must be 1..m: {T}")
    for r, row in enumerate(T):
        for c, x in enumerate(row):
            if c and row[c - 1] >= x:
                raise StructureError(f"row {r} not increasing in {T}")
            if r and T[r - 1][c] >= x:
                raise StructureError(f"column {c} not increasing in {T}")
    return T


def shape_of(T: Tableau) -> Partition:
    return tuple(len(r) for r in T)


def size_of(T: Tableau) -> int:
    return sum(len(r) for r in T)


def positions(T: Tableau) -> dict[int, tuple[int, int]]:
    return {x: (r, c) for r, row in enumerate(T) for c, x in enumerate(row)}


def descent_tau(T: Tableau) -> TauSet:
    """Entries i sitting in a strictly higher row than i + 1."""
    pos = positions(T)
    return tau_mask(i for i in range(1, len(pos)) if pos[i][0] < pos[i + 1][0])


def diagonal(pos: tuple[int, int]) -> int:
    r, c = pos
    return c - r


def content_reading_word(T: Tableau) -> tuple[int, ...]:
    """Diagonals by increasing column - row, each read top to bottom."""
    cells = sorted((c - r, r, x) for r, row in enumerate(T) for c, x in enumerate(row))
    return tuple(x for _, _, x in cells)


def swap_entries(T: Tableau, a: int, b: int) -> Tableau:
    def sub(x):
        return b if x == a else a if x == b else x
    return tuple(tuple(sub(x) for x in row) for row in T)


def dual_knuth_neighbors(T: Tableau) -> list[tuple[Tableau, int, int]]:
    """(U, i, witness) for each dual Knuth move exchanging i and i + 1.

    The witness is i - 1 when both i - 1 and i + 2 qualify.
    """
    pos = positions(T)
    m = len(pos)
    out = []
    for i in range(1, m):
        lo, hi = sorted((diagonal(pos[i]), diagonal(pos[i + 1])))
        for w in (i - 1, i + 2):
            if 1 <= w <= m and lo < diagonal(pos[w]) < hi:
                U = check_tableau(swap_entries(T, i, i + 1))
                out.append((U, i, w))
                break
    return out


def tableau_id(T: Tableau) -> str:
    """Row list serialization, e.g. '1,2,3/4/5'."""
    return "/".join(",".join(map(str, row)) for row in T)


def parse_tableau_id(s: str) -> Tableau:
    return check_tableau(tuple(tuple(int(x) for x in row.split(",")) for row in s.split("/")))


def rsk(word: Sequence[int]) -> tuple[Tableau, Tableau]:
    """Row-insertion RSK: (insertion tableau P, recording tableau Q)."""
    P: list[list[int]] = []
    Q: list[list[int]] = []
    for step, x in enumerate(word, 1):
        r = 0
        while True:
            if r == len(P):
                P.append([x])
                Q.append([step])
                break
            row = P[r]
            k = next((k for k, y in enumerate(row) if y > x), None)
            if k is None:
                row.append(x)
                Q[r].append(step)
                break
            row[k], x = x, row[k]
            r += 1
    return tuple(map(tuple, P)), tuple(map(tuple, Q))
