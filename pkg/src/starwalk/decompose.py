"""Edge partition of a d-sparse graph into rooted forests, 6-coloring, star forests.

Pipeline: ``forest_decompose`` splits E into d forests whose edges point from
the smaller to the larger label, ``cole_vishkin_color`` 6-colors each forest by
deterministic coin flipping, and ``star_partition`` groups every forest's
edges by the color of their head vertex, which leaves a disjoint union of
stars per (forest, color) class.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import Graph, degree_profile

NUM_COLORS = 6


@dataclass(frozen=True)
class RootedForest:
    """``parent[v]`` is the parent of v, or -1 for roots and isolated vertices."""

    num_vertices: int
    parent: tuple[int, ...]
    forest_index: int

    def edges(self) -> list[tuple[int, int]]:
        """Directed (parent, child) pairs in child order."""
        return [(p, v) for v, p in enumerate(self.parent) if p >= 0]

    def __len__(self) -> int:
        return sum(1 for p in self.parent if p >= 0)


@dataclass(frozen=True)
class ProperColoring:
    color: tuple[int, ...]
    rounds_used: int


@dataclass(frozen=True)
class Star:
    center: int
    leaves: tuple[int, ...]

    def __post_init__(self):
        if not self.leaves:
            raise ValueError("a star needs at least one leaf")
        if self.center in self.leaves:
            raise ValueError(f"center {self.center} is also a leaf")
        if len(set(self.leaves)) != len(self.leaves):
            raise ValueError("repeated leaf")
        object.__setattr__(self, "leaves", tuple(sorted(self.leaves)))

    @property
    def size(self) -> int:
        return len(self.leaves)

    def vertices(self) -> set[int]:
        return {self.center, *self.leaves}

    def edges(self) -> list[tuple[int, int]]:
        return [(min(self.center, x), max(self.center, x)) for x in self.leaves]


@dataclass(frozen=True)
class StarForest:
    stars: tuple[Star, ...]
    forest_index: int
    color_class: int

    def __post_init__(self):
        seen: set[int] = set()
        for s in self.stars:
            vs = s.vertices()
            if seen & vs:
                raise ValueError(f"stars overlap on vertices {sorted(seen & vs)}")
            seen |= vs

    @property
    def origin(self) -> tuple[int, int]:
        return self.forest_index, self.color_class

    def edges(self) -> list[tuple[int, int]]:
        return [e for s in self.stars for e in s.edges()]


def forest_decompose(g: Graph) -> list[RootedForest]:
    """Partition E into ``max_degree`` rooted forests.

    Every vertex ranks its incident edges by ascending neighbor label (rank
    1..deg). Edge {u, v} with u < v takes v's rank as its forest index and is
    oriented u -> v, so v gets exactly one parent per forest.
    """
    d = degree_profile(g).max_degree
    if d == 0:
        return []
    parents = [[-1] * g.num_vertices for _ in range(d)]
    for v, nbrs in enumerate(g.neighbors()):
        for rank, u in enumerate(nbrs):
            if u < v:
                parents[rank][v] = u
    return [RootedForest(g.num_vertices, tuple(p), i + 1) for i, p in enumerate(parents)]


def _recolor(color: np.ndarray, parent: np.ndarray) -> np.ndarray:
    is_root = parent < 0
    ref = np.where(is_root, 0, color[np.where(is_root, 0, parent)])
    diff = color ^ ref
    # roots compare against nothing: k = 0
    diff = np.where(is_root, 1, diff)
    if np.any(diff == 0):
        raise ValueError("coloring is not proper along a forest edge")
    lowbit = diff & -diff
    k = np.log2(lowbit.astype(np.float64)).astype(np.int64)
    return 2 * k + ((color >> k) & 1)


def cole_vishkin_color(f: RootedForest) -> ProperColoring:
    """Six-color a rooted forest by synchronous deterministic coin flipping.

    Colors start as vertex labels. Each round a vertex finds the lowest bit k
    where its color differs from its parent's previous-round color and becomes
    2k + bit_k; roots use k = 0. Rounds repeat while colors need more than 3
    bits, then one last round lands every color in 0..5.
    """
    parent = np.asarray(f.parent, dtype=np.int64)
    color = np.arange(f.num_vertices, dtype=np.int64)
    rounds = 0

    def bit_length() -> int:
        return max(1, int(color.max()).bit_length())

    while bit_length() > 3:
        color = _recolor(color, parent)
        rounds += 1
    color = _recolor(color, parent)
    rounds += 1
    assert color.max() < NUM_COLORS
    return ProperColoring(tuple(int(c) for c in color), rounds)


def star_partition(f: RootedForest, coloring: ProperColoring) -> list[StarForest]:
    """Split a colored forest into six star forests keyed by head-vertex color."""
    color = coloring.color
    groups: list[dict[int, list[int]]] = [{} for _ in range(NUM_COLORS)]
    for p, v in f.edges():
        if color[p] == color[v]:
            raise ValueError(f"improper coloring on edge {p}->{v}")
        groups[color[v]].setdefault(p, []).append(v)
    return [
        StarForest(
            tuple(Star(c, tuple(leaves)) for c, leaves in sorted(grp.items())),
            f.forest_index,
            k,
        )
        for k, grp in enumerate(groups)
    ]


def decompose_to_stars(g: Graph) -> list[StarForest]:
    """Nonempty star forests sorted by (forest index, color class)."""
    out = []
    for f in forest_decompose(g):
        coloring = cole_vishkin_color(f)
        out += [sf for sf in star_partition(f, coloring) if sf.stars]
    return out


def log_star(n: float) -> int:
    """Iterated base-2 logarithm: 0 for n <= 1."""
    count = 0
    while n > 1:
        n = np.log2(n)
        count += 1
    return count
