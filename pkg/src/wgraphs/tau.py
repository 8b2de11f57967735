"""Tau-invariants as bit masks over the generators of type A_n.

Generator ``i`` (1-based) lives at bit ``i``; bit 0 is never set.  Bonds
of the Coxeter graph are the pairs ``(i, i + 1)``.
"""

from __future__ import annotations

from typing import Iterable, Iterator

TauSet = int


def tau_mask(gens: Iterable[int]) -> TauSet:
    mask = 0
    for i in gens:
        mask |= 1 << i
    return mask


def tau_elements(mask: TauSet) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def full_mask(rank: int) -> TauSet:
    """All generators ``1..rank``."""
    return ((1 << (rank + 1)) - 1) & ~1


def contains(mask: TauSet, i: int) -> bool:
    return bool(mask >> i & 1)


def is_subset(a: TauSet, b: TauSet) -> bool:
    return a & ~b == 0


def comparable(a: TauSet, b: TauSet) -> bool:
    return is_subset(a, b) or is_subset(b, a)


def flip(mask: TauSet, rank: int) -> TauSet:
    """Image under the diagram automorphism ``i -> rank + 1 - i``."""
    return tau_mask(rank + 1 - i for i in tau_elements(mask))


def bonds(rank: int, generators: TauSet | None = None) -> Iterator[tuple[int, int]]:
    """Bonds ``(i, i + 1)`` whose endpoints are both active generators."""
    gens = full_mask(rank) if generators is None else generators
    for i in range(1, rank):
        if contains(gens, i) and contains(gens, i + 1):
            yield i, i + 1


def bonded(i: int, j: int) -> bool:
    return abs(i - j) == 1


def format_tau(mask: TauSet) -> str:
    return "{" + ",".join(map(str, tau_elements(mask))) + "}"
