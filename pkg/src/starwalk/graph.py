"""Undirected simple graphs, edge-list I/O and the adjacency matrix of the walk."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

DENSE_VERTEX_CAP = 4096


class GraphFormatError(ValueError):
    """Raised for malformed graph files; carries the 1-based line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class SizeCapError(ValueError):
    """A dense object was requested beyond its configured size cap."""


@dataclass(frozen=True)
class Graph:
    num_vertices: int
    edges: frozenset[tuple[int, int]]

    def __post_init__(self):
        if self.num_vertices < 1:
            raise ValueError("a graph needs at least one vertex")
        for u, v in self.edges:
            if not u < v:
                raise ValueError(f"edge ({u}, {v}) is not stored as (low, high)")
            if v >= self.num_vertices or u < 0:
                raise ValueError(f"edge ({u}, {v}) out of range for N={self.num_vertices}")

    @classmethod
    def from_edges(cls, num_vertices: int, edges: Iterable[tuple[int, int]]) -> Graph:
        norm = set()
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            e = (min(u, v), max(u, v))
            if e in norm:
                raise ValueError(f"duplicate edge {e}")
            norm.add(e)
        return cls(num_vertices, frozenset(norm))

    @property
    def num_qubits(self) -> int:
        """Working-register width n with 2**n >= N."""
        return max(1, math.ceil(math.log2(self.num_vertices)))

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def neighbors(self) -> list[list[int]]:
        nbrs: list[list[int]] = [[] for _ in range(self.num_vertices)]
        for u, v in self.edges:
            nbrs[u].append(v)
            nbrs[v].append(u)
        for row in nbrs:
            row.sort()
        return nbrs


@dataclass(frozen=True)
class DegreeProfile:
    degrees: tuple[int, ...]
    max_degree: int


def degree_profile(g: Graph) -> DegreeProfile:
    degrees = [0] * g.num_vertices
    for u, v in g.edges:
        degrees[u] += 1
        degrees[v] += 1
    return DegreeProfile(tuple(degrees), max(degrees))


def adjacency_matrix(g: Graph, cap: int = DENSE_VERTEX_CAP, dim: int | None = None) -> np.ndarray:
    """Dense 0/1 adjacency matrix, optionally zero-padded to ``dim`` rows.

    Only the verification path needs this, so it refuses graphs above ``cap``
    vertices rather than allocating an N x N array.
    """
    size = g.num_vertices if dim is None else dim
    if size < g.num_vertices:
        raise ValueError(f"padding dimension {size} is smaller than N={g.num_vertices}")
    if size > cap:
        raise SizeCapError(f"dense adjacency of dimension {size} exceeds cap {cap}")
    a = np.zeros((size, size))
    if g.edges:
        idx = np.array(sorted(g.edges))
        a[idx[:, 0], idx[:, 1]] = 1.0
        a[idx[:, 1], idx[:, 0]] = 1.0
    return a


def parse_edge_list(text: str) -> Graph:
    header = None
    expected = 0
    n = 0
    seen: dict[tuple[int, int], int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphFormatError(f"expected two integers, got {line!r}", lineno)
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError(f"non-integer token in {line!r}", lineno) from None
        if header is None:
            if a < 1 or b < 0:
                raise GraphFormatError(f"bad header 'N M' = {a} {b}", lineno)
            header = (a, b)
            n, expected = a, b
            continue
        if len(seen) >= expected:
            raise GraphFormatError(f"more edge lines than the declared M={expected}", lineno)
        if not (0 <= a < n and 0 <= b < n):
            raise GraphFormatError(f"endpoint out of range [0, {n}) in {line!r}", lineno)
        if a == b:
            raise GraphFormatError(f"self-loop at vertex {a}", lineno)
        e = (min(a, b), max(a, b))
        if e in seen:
            raise GraphFormatError(f"duplicate edge {e}, first seen on line {seen[e]}", lineno)
        seen[e] = lineno
    if header is None:
        raise GraphFormatError("missing 'N M' header")
    if len(seen) != expected:
        raise GraphFormatError(f"declared M={expected} edges but found {len(seen)}")
    return Graph(n, frozenset(seen))


def export_edge_list(g: Graph) -> str:
    lines = [f"{g.num_vertices} {len(g.edges)}"]
    lines += [f"{u} {v}" for u, v in g.sorted_edges()]
    return "\n".join(lines) + "\n"


# benchmark families

def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def random_regular_graph(d: int, n: int, seed: int = 0) -> Graph:
    import networkx as nx

    nxg = nx.random_regular_graph(d, n, seed=seed)
    return Graph.from_edges(n, nxg.edges())


def random_sparse_graph(n: int, max_degree: int, rng: np.random.Generator, density: float = 0.7) -> Graph:
    """Random graph with degrees bounded by ``max_degree``.

    Candidate edges are visited in random order and kept while both endpoints
    have spare degree, so roughly ``density * n * max_degree / 2`` edges survive.
    """
    target = int(density * n * max_degree / 2)
    deg = [0] * n
    edges: set[tuple[int, int]] = set()
    attempts = 0
    while len(edges) < target and attempts < 20 * target + 100:
        attempts += 1
        u, v = (int(x) for x in rng.integers(0, n, size=2))
        if u == v:
            continue
        e = (min(u, v), max(u, v))
        if e in edges or deg[u] >= max_degree or deg[v] >= max_degree:
            continue
        edges.add(e)
        deg[u] += 1
        deg[v] += 1
    return Graph(n, frozenset(edges))
