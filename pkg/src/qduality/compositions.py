"""Weak compositions ``d_1 + ... + d_r = d`` in lexicographic order."""
from __future__ import annotations

from math import comb
from typing import Iterator, Sequence


def weak_compositions(d: int, r: int) -> Iterator[tuple[int, ...]]:
    """Yield every ``r``-tuple of non-negative integers summing to ``d``.

    Tuples come out in increasing lexicographic order, so
    ``weak_compositions(1, 2)`` gives ``(0, 1)`` then ``(1, 0)``.
    """
    if d < 0 or r < 0:
        raise ValueError("d and r must be non-negative")
    if r == 0:
        if d == 0:
            yield ()
        return
    if r == 1:
        yield (d,)
        return
    for first in range(d + 1):
        for rest in weak_compositions(d - first, r - 1):
            yield (first,) + rest


def count_weak_compositions(d: int, r: int) -> int:
    if r == 0:
        return int(d == 0)
    return comb(d + r - 1, r - 1)


def difference(parts: Sequence[int], i: int, j: int, indices: Sequence[int] | None = None) -> int:
    """``d_i - d_j``.

    ``i`` and ``j`` are labels from ``indices`` (default ``1..len(parts)``),
    matching how ``d_{ij}`` is written for a composition over an index set.
    """
    labels = list(indices) if indices is not None else list(range(1, len(parts) + 1))
    try:
        return parts[labels.index(i)] - parts[labels.index(j)]
    except ValueError:
        raise IndexError(f"index {i if i not in labels else j} not among {labels}") from None
