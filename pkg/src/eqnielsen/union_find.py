"""
Union-find over hashable items, plus orbit partitions of generated actions.
"""

from typing import Callable, Dict, Hashable, Iterable, List, Sequence, TypeVar

T = TypeVar("T", bound=Hashable)
S = TypeVar("S")


class UnionFind:
    def __init__(self, items: Iterable[T]):
        self.parent: Dict[T, T] = {x: x for x in items}
        self.rank: Dict[T, int] = {x: 0 for x in self.parent}

    def find(self, x: T) -> T:
        y = self.parent[x]
        if self.parent[y] != y:
            y = self.parent[x] = self.find(y)
        return y

    def union(self, x: T, y: T) -> None:
        x, y = self.find(x), self.find(y)
        if x == y:
            return
        if self.rank[x] < self.rank[y]:
            x, y = y, x
        elif self.rank[x] == self.rank[y]:
            self.rank[x] += 1
        self.parent[y] = x

    def groups(self, order: Sequence[T]) -> List[List[T]]:
        """Blocks listed in order of their first member in `order`, members kept in that order."""
        blocks: Dict[T, List[T]] = {}
        for x in order:
            blocks.setdefault(self.find(x), []).append(x)
        return list(blocks.values())


def find_orbits(gens: Iterable[S], space: Sequence[T], action: Callable[[S, T], T]) -> List[List[T]]:
    """Orbits of the group generated by `gens`, each listed in `space` order."""
    uf = UnionFind(space)
    for g in gens:
        for x in space:
            uf.union(x, action(g, x))
    return uf.groups(space)
