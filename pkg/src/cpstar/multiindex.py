"""Sorted multi-index utilities.

Symbol tensors are symmetric in each index group, so every index tuple is
stored by its sorted representative.  ``multiplicity(I)`` counts the distinct
orderings of ``I`` (the multinomial ``k! / prod(c_a!)``); it converts between
stored tensor entries and the coefficients of the associated polynomial, i.e.
an unrestricted Einstein sum over index tuples equals a sum over sorted
representatives weighted by their multiplicity.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations_with_replacement
from math import comb, factorial

__all__ = [
    "index_space_size",
    "merge_indices",
    "multiplicity",
    "sorted_tuples",
    "submultiset_splits",
    "subtract_indices",
]

Index = tuple[int, ...]


@lru_cache(maxsize=None)
def multiplicity(index: Index) -> int:
    """Number of distinct orderings of a sorted index tuple."""
    result = factorial(len(index))
    run = 1
    for j in range(1, len(index)):
        if index[j] == index[j - 1]:
            run += 1
        else:
            result //= factorial(run)
            run = 1
    return result // factorial(run) if index else 1


@lru_cache(maxsize=None)
def sorted_tuples(n: int, k: int) -> tuple[Index, ...]:
    """All nondecreasing k-tuples over the alphabet {0, ..., n}."""
    return tuple(combinations_with_replacement(range(n + 1), k))


def index_space_size(n: int, k: int) -> int:
    """Number of sorted k-tuples over {0, ..., n}: C(n + k, k)."""
    return comb(n + k, k)


def merge_indices(left: Index, right: Index) -> Index:
    """Sorted union (with repetitions) of two sorted tuples."""
    return tuple(sorted(left + right))


def subtract_indices(whole: Index, part: Index) -> Index:
    """Remove the multiset ``part`` from ``whole`` (both sorted); assumes containment."""
    out = list(whole)
    for a in part:
        out.remove(a)
    return tuple(out)


@lru_cache(maxsize=None)
def submultiset_splits(index: Index, r: int) -> tuple[tuple[Index, Index], ...]:
    """All distinct splits of a sorted tuple into (submultiset of size r, rest)."""
    if r < 0 or r > len(index):
        return ()
    if r == 0:
        return (((), index),)
    letters = sorted(set(index))
    counts = {a: index.count(a) for a in letters}
    splits: list[tuple[Index, Index]] = []

    def walk(pos: int, remaining: int, chosen: list[int]) -> None:
        if remaining == 0:
            alpha = tuple(chosen)
            splits.append((alpha, subtract_indices(index, alpha)))
            return
        if pos == len(letters):
            return
        letter = letters[pos]
        available = counts[letter]
        # take t copies of this letter, t from high to low keeps output sorted-stable
        for t in range(min(available, remaining), -1, -1):
            walk(pos + 1, remaining - t, chosen + [letter] * t)

    walk(0, r, [])
    return tuple(splits)
