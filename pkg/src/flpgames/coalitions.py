"""Coalitions as bitmasks: player ``i`` (1-based) is bit ``i - 1``."""

from __future__ import annotations

from typing import Iterable, Iterator, Union

Coalition = int
CoalitionLike = Union[int, Iterable[int]]


def grand(n: int) -> Coalition:
    return (1 << n) - 1


def as_mask(S: CoalitionLike, n: int) -> Coalition:
    """Accept a bitmask or an iterable of 1-based player ids."""
    if isinstance(S, int):
        mask = S
    else:
        mask = 0
        for i in S:
            if not 1 <= i <= n:
                raise ValueError(f"player {i} outside 1..{n}")
            mask |= 1 << (i - 1)
    if mask < 0 or mask > grand(n):
        raise ValueError(f"coalition mask {mask} outside the {n}-player game")
    return mask


def members(S: Coalition) -> tuple[int, ...]:
    out, i = [], 1
    while S:
        if S & 1:
            out.append(i)
        S >>= 1
        i += 1
    return tuple(out)


def size(S: Coalition) -> int:
    return bin(S).count("1")


def contains(S: Coalition, i: int) -> bool:
    return bool(S >> (i - 1) & 1)


def nonempty_coalitions(n: int) -> Iterator[Coalition]:
    """All 2**n - 1 nonempty coalitions, ordered by size then mask."""
    return iter(sorted(range(1, grand(n) + 1), key=lambda s: (size(s), s)))


def proper_coalitions(n: int) -> Iterator[Coalition]:
    full = grand(n)
    return (s for s in nonempty_coalitions(n) if s != full)


def fmt_coalition(S: Coalition) -> str:
    return "{" + ",".join(map(str, members(S))) + "}"
