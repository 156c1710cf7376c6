"""Pure-Python union-find, used when the compiled kernel is unavailable."""


class UnionFind:
    """Disjoint sets over 0..n-1 with path compression and union by size.

    ``labels`` returns, for every element, the minimal element index of
    its class, which is the canonical class id everywhere in stratkit.
    """

    __slots__ = ("parent", "size", "least")

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n
        self.least = list(range(n))

    def find(self, x: int) -> int:
        parent = self.parent
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, x: int, y: int) -> None:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return
        if self.size[rx] < self.size[ry]:
            rx, ry = ry, rx
        self.parent[ry] = rx
        self.size[rx] += self.size[ry]
        if self.least[ry] < self.least[rx]:
            self.least[rx] = self.least[ry]

    def union_edges(self, us, vs) -> None:
        for u, v in zip(us, vs):
            self.union(u, v)

    def labels(self) -> list:
        return [self.least[self.find(x)] for x in range(len(self.parent))]

    def n_classes(self) -> int:
        return len({self.find(x) for x in range(len(self.parent))})


IMPLEMENTATION = "python"
