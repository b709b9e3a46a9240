"""Integer partitions and the two Young-diagram counts used for T_n dimensions."""

from __future__ import annotations

from functools import lru_cache
from typing import Iterator


class Partition(tuple):
    """Weakly decreasing tuple of positive integers."""

    def __new__(cls, parts=()):
        parts = tuple(int(p) for p in parts if p)
        if any(p < 0 for p in parts):
            raise ValueError(f"negative part in {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"parts must be weakly decreasing: {parts}")
        return super().__new__(cls, parts)

    @property
    def weight(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def padded(self, n: int) -> tuple[int, ...]:
        if len(self) > n:
            raise ValueError(f"partition {tuple(self)} has more than {n} parts")
        return tuple(self) + (0,) * (n - len(self))

    def conjugate(self) -> "Partition":
        if not self:
            return Partition()
        return Partition(sum(1 for p in self if p > k) for k in range(self[0]))

    def __repr__(self):
        return f"Partition({tuple(self)})"


def partitions(d: int, max_len: int | None = None, max_part: int | None = None) -> Iterator[Partition]:
    """Partitions of ``d`` in reverse lexicographic order (largest first)."""
    if max_part is None:
        max_part = d
    if max_len is None:
        max_len = d

    def rec(rest, cap, room):
        if rest == 0:
            yield ()
            return
        if room == 0:
            return
        for first in range(min(rest, cap), 0, -1):
            # remaining parts can hold at most first*(room-1)
            if first * room < rest:
                break
            for tail in rec(rest - first, first, room - 1):
                yield (first,) + tail

    for p in rec(d, max_part, max_len):
        yield Partition(p)


@lru_cache(maxsize=None)
def partition_list(d: int, max_len: int) -> tuple[Partition, ...]:
    return tuple(partitions(d, max_len))


def count_ascending_tuples(length: int, total: int) -> int:
    """Brute force |{(u_1..u_length): 0 <= u_1 <= ... <= u_length, sum = total}|."""

    def rec(k, lo, rest):
        if k == 0:
            return 1 if rest == 0 else 0
        # the k remaining entries are each >= lo
        return sum(rec(k - 1, u, rest - u) for u in range(lo, rest // k + 1))

    if length == 0:
        return 1 if total == 0 else 0
    return rec(length, 0, total)


def count_weighted_solutions(length: int, total: int) -> int:
    """Brute force |{(v_1..v_length) >= 0: sum of l*v_l = total}|."""

    def rec(l, rest):
        if l == 0:
            return 1 if rest == 0 else 0
        return sum(rec(l - 1, rest - l * v) for v in range(rest // l + 1))

    return rec(length, total)
