"""Dimension-generic bar-joint framework model and the graph routines on it.

A framework is a graph embedded in Z^d: joints at distinct integer points,
bars as straight segments between them. Joints are addressed by index;
coordinates are payload. Everything here is immutable and side-effect free,
so frameworks can be shared freely between threads or worker processes.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from functools import cached_property

Coords = tuple[int, ...]
Bar = tuple[int, int]


class FrameworkError(ValueError):
    """Construction data violates a framework invariant."""


@dataclass(frozen=True)
class Framework:
    """Joints (integer coordinate vectors) plus undirected bars (index pairs).

    Bars are normalized to (i, j) with i < j and stored sorted, so identical
    frameworks compare equal and all derived output is deterministic.
    """

    dimension: int
    joints: tuple[Coords, ...] = ()
    bars: tuple[Bar, ...] = ()

    def __post_init__(self):
        if self.dimension < 1:
            raise FrameworkError("dimension must be >= 1")
        joints = tuple(tuple(int(c) for c in p) for p in self.joints)
        object.__setattr__(self, "joints", joints)
        for p in joints:
            if len(p) != self.dimension:
                raise FrameworkError(f"joint {p} is not {self.dimension}-dimensional")
        if len(set(joints)) != len(joints):
            raise FrameworkError("joints must be distinct points")
        v = len(joints)
        seen: set[Bar] = set()
        norm = []
        for pair in self.bars:
            i, j = (int(x) for x in pair)
            if i == j:
                raise FrameworkError(f"self-loop at joint {i}")
            if not (0 <= i < v and 0 <= j < v):
                raise FrameworkError(f"bar ({i},{j}) references a missing joint")
            if i > j:
                i, j = j, i
            if (i, j) in seen:
                raise FrameworkError(f"duplicate bar ({i},{j})")
            seen.add((i, j))
            norm.append((i, j))
        object.__setattr__(self, "bars", tuple(sorted(norm)))

    @property
    def num_joints(self) -> int:
        return len(self.joints)

    @property
    def num_bars(self) -> int:
        return len(self.bars)

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        """Neighbor lists in ascending index order."""
        adj: list[list[int]] = [[] for _ in range(len(self.joints))]
        for i, j in self.bars:
            adj[i].append(j)
            adj[j].append(i)
        return tuple(tuple(sorted(nbrs)) for nbrs in adj)

    def degrees(self) -> tuple[int, ...]:
        return tuple(len(nbrs) for nbrs in self.adjacency)


@dataclass(frozen=True)
class MotionField:
    """One velocity vector per joint, exact rational components."""

    velocities: tuple[tuple, ...]

    def __post_init__(self):
        velocities = tuple(tuple(v) for v in self.velocities)
        object.__setattr__(self, "velocities", velocities)
        if velocities:
            d = len(velocities[0])
            if any(len(v) != d for v in velocities):
                raise FrameworkError("all velocities must share one dimension")

    @property
    def dimension(self) -> int:
        if not self.velocities:
            raise FrameworkError("empty motion field has no dimension")
        return len(self.velocities[0])


def squared_bar_lengths(framework: Framework) -> list[int]:
    """Exact squared Euclidean length of every bar, in bar order."""
    out = []
    for i, j in framework.bars:
        p, q = framework.joints[i], framework.joints[j]
        out.append(sum((a - b) ** 2 for a, b in zip(p, q)))
    return out


def is_unit_bar(framework: Framework) -> bool:
    """True iff all bars share one length; vacuously true for <= 1 bar."""
    lengths = squared_bar_lengths(framework)
    return len(set(lengths)) <= 1


def bipartition(framework: Framework) -> tuple[int, ...] | None:
    """A proper 2-coloring of the bar graph, or None if an odd cycle exists.

    Each connected component is rooted at its lowest joint index, which gets
    color 0, so the coloring is canonical.
    """
    adj = framework.adjacency
    n = len(framework.joints)
    color = [-1] * n
    for root in range(n):
        if color[root] != -1:
            continue
        color[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                if color[w] == -1:
                    color[w] = 1 - color[u]
                    queue.append(w)
                elif color[w] == color[u]:
                    return None
    return tuple(color)


def bfs_ball(adjacency, start: int, radius: int) -> list[int]:
    """All vertices within graph distance `radius` of `start`, in BFS order.

    `adjacency` is anything indexable by vertex yielding an iterable of
    neighbors (a tuple-of-tuples or a dict of lists both work).
    """
    depth = {start: 0}
    order = [start]
    queue = deque([start])
    while queue:
        u = queue.popleft()
        du = depth[u]
        if du == radius:
            continue
        for w in adjacency[u]:
            if w not in depth:
                depth[w] = du + 1
                order.append(w)
                queue.append(w)
    return order


def within_distance(adjacency, start: int, target: int, limit: int) -> bool:
    """True iff `target` lies within graph distance `limit` of `start`."""
    if start == target:
        return True
    if limit <= 0:
        return False
    depth = {start: 0}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        du = depth[u]
        if du == limit:
            continue
        for w in adjacency[u]:
            if w == target:
                return True
            if w not in depth:
                depth[w] = du + 1
                queue.append(w)
    return False


def neighborhood(framework: Framework, start: int, radius: int) -> list[int]:
    """Joints at graph distance <= radius from `start` (inclusive), BFS order."""
    if not 0 <= start < len(framework.joints):
        raise IndexError(f"joint index {start} out of range")
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    return bfs_ball(framework.adjacency, start, radius)


def girth(framework: Framework):
    """Length of the shortest cycle of the bar graph; math.inf for forests.

    BFS from every joint: a non-tree edge seen at depths (du, dw) closes a
    walk of length du + dw + 1 through the root, which contains a cycle no
    longer than that, and for some root on a shortest cycle the bound is
    attained. Roots are pruned once they cannot improve the current best.
    """
    adj = framework.adjacency
    n = len(framework.joints)
    best = math.inf
    for root in range(n):
        depth = {root: 0}
        parent = {root: -1}
        queue = deque([root])
        while queue:
            u = queue.popleft()
            du = depth[u]
            if 2 * du + 1 >= best:
                break
            for w in adj[u]:
                if w not in depth:
                    depth[w] = du + 1
                    parent[w] = u
                    queue.append(w)
                elif w != parent[u]:
                    cand = du + depth[w] + 1
                    if cand < best:
                        best = cand
    return best


def prune_min_degree(framework: Framework, min_degree: int) -> Framework:
    """Repeatedly delete a minimum-degree joint while that degree < min_degree.

    Each round removes the lowest-indexed joint among those of minimum
    degree, so pruning is reproducible. Surviving joints are re-indexed
    densely, preserving their relative order.
    """
    if min_degree < 0:
        raise ValueError("min_degree must be nonnegative")
    n = len(framework.joints)
    neighbors: list[set[int]] = [set(nbrs) for nbrs in framework.adjacency]
    alive = [True] * n
    alive_count = n
    while alive_count:
        victim = -1
        lowest = min_degree
        for v in range(n):
            if alive[v] and len(neighbors[v]) < lowest:
                lowest = len(neighbors[v])
                victim = v
        if victim < 0:
            break
        for w in neighbors[victim]:
            neighbors[w].discard(victim)
        neighbors[victim].clear()
        alive[victim] = False
        alive_count -= 1
    keep = [v for v in range(n) if alive[v]]
    remap = {v: k for k, v in enumerate(keep)}
    joints = tuple(framework.joints[v] for v in keep)
    bars = tuple(
        (remap[i], remap[j])
        for i, j in framework.bars
        if alive[i] and alive[j]
    )
    return Framework(framework.dimension, joints, bars)
