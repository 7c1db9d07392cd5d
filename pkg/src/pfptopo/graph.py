"""Append-only undirected simple graph with dense integer node ids.

Node ids are assigned in creation order, so an id doubles as the node's age.
Neighbor lists are kept sorted.
"""

from __future__ import annotations

from bisect import bisect_left, insort
from typing import Iterable, Iterator

import numpy as np


class InvalidNodeError(IndexError):
    """Raised when a node id does not belong to the graph."""


class Graph:
    def __init__(self, node_count: int = 0):
        if node_count < 0:
            raise ValueError("node_count must be non-negative")
        self._adj: list[list[int]] = [[] for _ in range(node_count)]
        self.edge_count = 0
        self.meta: dict = {}
        self._csr: tuple[np.ndarray, np.ndarray] | None = None

    @classmethod
    def from_edges(cls, node_count: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        g = cls(node_count)
        for u, v in edges:
            g.add_edge(u, v)
        return g

    @property
    def node_count(self) -> int:
        return len(self._adj)

    def __len__(self) -> int:
        return len(self._adj)

    def __repr__(self) -> str:
        return f"Graph(N={self.node_count}, L={self.edge_count})"

    def _check(self, v: int) -> None:
        if not 0 <= v < len(self._adj):
            raise InvalidNodeError(f"node {v} not in graph with {len(self._adj)} nodes")

    def add_node(self) -> int:
        self._adj.append([])
        self._csr = None
        return len(self._adj) - 1

    def add_edge(self, u: int, v: int) -> bool:
        """Insert the edge u-v. Returns False for self-loops and existing edges."""
        self._check(u)
        self._check(v)
        if u == v or self.has_edge(u, v):
            return False
        insort(self._adj[u], v)
        insort(self._adj[v], u)
        self.edge_count += 1
        self._csr = None
        return True

    def has_edge(self, u: int, v: int) -> bool:
        self._check(u)
        self._check(v)
        nbrs = self._adj[u]
        i = bisect_left(nbrs, v)
        return i < len(nbrs) and nbrs[i] == v

    def degree(self, v: int) -> int:
        self._check(v)
        return len(self._adj[v])

    def neighbors(self, v: int) -> list[int]:
        self._check(v)
        return self._adj[v]

    def degrees(self) -> np.ndarray:
        return np.fromiter((len(a) for a in self._adj), dtype=np.int64, count=len(self._adj))

    def edges(self) -> Iterator[tuple[int, int]]:
        """Each edge once as (u, v) with u < v, in lexicographic order."""
        for u, nbrs in enumerate(self._adj):
            for v in nbrs[bisect_left(nbrs, u + 1):]:
                yield u, v

    def edge_set(self) -> set[tuple[int, int]]:
        return set(self.edges())

    def csr(self) -> tuple[np.ndarray, np.ndarray]:
        """Compressed adjacency (indptr, indices) as int64 arrays, cached until the next mutation."""
        if self._csr is None:
            deg = self.degrees()
            indptr = np.zeros(len(deg) + 1, dtype=np.int64)
            np.cumsum(deg, out=indptr[1:])
            indices = np.fromiter(
                (v for nbrs in self._adj for v in nbrs), dtype=np.int64, count=int(indptr[-1])
            )
            self._csr = (indptr, indices)
        return self._csr

    def check_invariants(self) -> None:
        """Assert simplicity, symmetry and the handshake identity."""
        total = 0
        for v, nbrs in enumerate(self._adj):
            assert v not in nbrs, f"self-loop at {v}"
            assert all(a < b for a, b in zip(nbrs, nbrs[1:])), f"unsorted or repeated neighbors at {v}"
            for u in nbrs:
                assert self.has_edge(u, v), f"asymmetric edge {v}-{u}"
            total += len(nbrs)
        assert total == 2 * self.edge_count, "degree sum differs from 2L"
