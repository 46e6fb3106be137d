"""Small shared helpers."""


class UnionFind:
    """Union-find over hashable keys, with path splitting."""

    def __init__(self, items=()):
        self.parent = {x: x for x in items}

    def add(self, x):
        if x not in self.parent:
            self.parent[x] = x

    def find(self, x):
        p = self.parent
        while p[x] != x:
            x, p[x] = p[x], p[p[x]]
        return x

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            # keep the smaller root so representatives are deterministic
            if ry < rx:
                rx, ry = ry, rx
            self.parent[ry] = rx

    def classes(self):
        """Partition as a sorted list of sorted lists."""
        buckets = {}
        for x in self.parent:
            buckets.setdefault(self.find(x), []).append(x)
        out = [sorted(v) for v in buckets.values()]
        out.sort()
        return out
