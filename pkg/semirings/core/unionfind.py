"""
Union-find with path halving and union by rank.
Shared by generated congruences and the tensor closure.
"""

from typing import Dict, Iterable, List


class UnionFind:
    """Disjoint sets over the integers 0..size-1."""

    def __init__(self, size: int):
        self.parent: List[int] = list(range(size))
        self.rank: List[int] = [0] * size
        self.merges = 0

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        """Merge the classes of a and b; False if they already coincide."""
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.rank[ra] < self.rank[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        if self.rank[ra] == self.rank[rb]:
            self.rank[ra] += 1
        self.merges += 1
        return True

    def same(self, a: int, b: int) -> bool:
        return self.find(a) == self.find(b)

    def least_members(self, elements: Iterable[int]) -> Dict[int, int]:
        """Map each root to the least element of its class."""
        least: Dict[int, int] = {}
        for x in elements:
            root = self.find(x)
            if root not in least or x < least[root]:
                least[root] = x
        return least
