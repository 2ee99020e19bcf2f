"""Interval split-find and interval union-find over the universe [1..n]"""
from __future__ import annotations

from typing import List, Tuple

Interval = Tuple[int, int]


class IntervalError(ValueError):
    """Raised when a position lies outside the universe"""


class BorderError(IntervalError):
    """Raised when a union is requested at a position that is not a border"""


def _check_position(u: int, n: int) -> None:
    if not 1 <= u <= n:
        raise IntervalError(f"Position {u} outside universe [1:{n}]")


class IntervalSplitFind:
    """
    Ordered partition of [1..n] into contiguous intervals that only ever gets finer.

    A border is the right end of an interval; n is always a border. Every
    position carries the id of its interval and every id its (lo, hi), so find
    is two list lookups. A split relabels the smaller side only, which bounds
    the total relabel work by n log n.
    """

    def __init__(self, n: int):
        self.n = n
        self.label = [0] * (n + 1)
        self.lo = [1]
        self.hi = [n]
        self.relabeled = 0

    def find(self, u: int) -> Interval:
        """Return (lo, hi) of the interval containing u"""
        if not 1 <= u <= self.n:
            raise IntervalError(f"Position {u} outside universe [1:{self.n}]")
        i = self.label[u]
        return self.lo[i], self.hi[i]

    def split(self, u: int) -> None:
        """Make u a border; a no-op when it already is one"""
        if not 1 <= u <= self.n:
            raise IntervalError(f"Position {u} outside universe [1:{self.n}]")
        i = self.label[u]
        lo, hi = self.lo[i], self.hi[i]
        if u == hi:
            return
        new = len(self.lo)
        if u - lo < hi - u:
            self.label[lo:u + 1] = [new] * (u - lo + 1)
            self.lo.append(lo)
            self.hi.append(u)
            self.lo[i] = u + 1
            self.relabeled += u - lo + 1
        else:
            self.label[u + 1:hi + 1] = [new] * (hi - u)
            self.lo.append(u + 1)
            self.hi.append(hi)
            self.hi[i] = u
            self.relabeled += hi - u

    def is_border(self, u: int) -> bool:
        _check_position(u, self.n)
        return self.hi[self.label[u]] == u

    def intervals(self) -> List[Interval]:
        result = []
        u = 1
        while u <= self.n:
            lo, hi = self.find(u)
            result.append((lo, hi))
            u = hi + 1
        return result

    def __len__(self) -> int:
        return len(self.lo) if self.n > 0 else 0


class IntervalUnionFind:
    """
    Ordered partition of [1..n] into contiguous intervals that only ever gets coarser.

    Starts from the n singletons. Each set root stores the borders of its
    interval; union by size and path compression keep finds near-constant.
    """

    def __init__(self, n: int):
        self.n = n
        self.parent = list(range(n + 1))
        self.size = [1] * (n + 1)
        self.lo = list(range(n + 1))
        self.hi = list(range(n + 1))

    def _root(self, u: int) -> int:
        parent = self.parent
        root = u
        while parent[root] != root:
            root = parent[root]
        while parent[u] != root:
            parent[u], u = root, parent[u]
        return root

    def find(self, u: int) -> Interval:
        """Return (lo, hi) of the interval containing u"""
        if not 1 <= u <= self.n:
            raise IntervalError(f"Position {u} outside universe [1:{self.n}]")
        root = self._root(u)
        return self.lo[root], self.hi[root]

    def is_border(self, u: int) -> bool:
        _check_position(u, self.n)
        return u < self.n and self.hi[self._root(u)] == u

    def union(self, u: int) -> None:
        """Merge the interval ending at u with its right neighbour"""
        if not self.is_border(u):
            raise BorderError(f"Position {u} is not the right end of a non-final interval")
        left = self._root(u)
        right = self._root(u + 1)
        if self.size[left] < self.size[right]:
            left, right = right, left
        self.parent[right] = left
        self.size[left] += self.size[right]
        self.lo[left] = min(self.lo[left], self.lo[right])
        self.hi[left] = max(self.hi[left], self.hi[right])

    def intervals(self) -> List[Interval]:
        result = []
        u = 1
        while u <= self.n:
            lo, hi = self.find(u)
            result.append((lo, hi))
            u = hi + 1
        return result
