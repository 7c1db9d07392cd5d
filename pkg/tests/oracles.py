"""Brute-force reference computations for small graphs (n <= 12).

These deliberately share no code with pfptopo.metrics: distances come from
Floyd-Warshall, cycles from enumerating node subsets, betweenness from
explicit enumeration of every shortest path.
"""

import itertools
import random
from fractions import Fraction

import numpy as np

from pfptopo.graph import Graph

INF = float("inf")


def adjacency_sets(g: Graph) -> list[set]:
    return [set(g.neighbors(v)) for v in range(g.node_count)]


def floyd_warshall(g: Graph) -> list[list[float]]:
    n = g.node_count
    d = [[0 if i == j else INF for j in range(n)] for i in range(n)]
    for u, v in g.edges():
        d[u][v] = d[v][u] = 1
    for k in range(n):
        for i in range(n):
            for j in range(n):
                if d[i][k] + d[k][j] < d[i][j]:
                    d[i][j] = d[i][k] + d[k][j]
    return d


def triangles(g: Graph) -> list[int]:
    adj = adjacency_sets(g)
    out = [0] * g.node_count
    for a, b, c in itertools.combinations(range(g.node_count), 3):
        if b in adj[a] and c in adj[a] and c in adj[b]:
            for v in (a, b, c):
                out[v] += 1
    return out


def quadrangles(g: Graph) -> list[int]:
    """Every 4-subset supports up to three distinct 4-cycles: a-b-c-d, a-b-d-c, a-c-b-d."""
    adj = adjacency_sets(g)
    out = [0] * g.node_count
    for a, b, c, d in itertools.combinations(range(g.node_count), 4):
        for w, x, y, z in ((a, b, c, d), (a, b, d, c), (a, c, b, d)):
            if x in adj[w] and y in adj[x] and z in adj[y] and w in adj[z]:
                for v in (a, b, c, d):
                    out[v] += 1
    return out


def count_four_cycles(g: Graph) -> int:
    """Distinct 4-cycles as sets of four edges."""
    cycles = set()
    adj = adjacency_sets(g)
    for order in itertools.permutations(range(g.node_count), 4):
        if all(order[(i + 1) % 4] in adj[order[i]] for i in range(4)):
            cycles.add(frozenset(frozenset((order[i], order[(i + 1) % 4])) for i in range(4)))
    return len(cycles)


def all_shortest_paths(g: Graph, dist, s: int, d: int) -> list[tuple]:
    adj = adjacency_sets(g)
    paths = []

    def walk(path):
        v = path[-1]
        if v == d:
            paths.append(tuple(path))
            return
        for w in adj[v]:
            if dist[s][w] == len(path) and dist[w][d] == dist[s][d] - len(path):
                walk(path + [w])

    walk([s])
    return paths


def betweenness_star(g: Graph) -> list[Fraction]:
    """Endpoint-inclusive ordered-pair betweenness divided by N, as exact fractions."""
    n = g.node_count
    dist = floyd_warshall(g)
    cb = [Fraction(0)] * n
    for s in range(n):
        for d in range(n):
            if s == d:
                continue
            paths = all_shortest_paths(g, dist, s, d)
            for w in range(n):
                through = sum(1 for p in paths if w in p)
                cb[w] += Fraction(through, len(paths))
    return [c / n for c in cb]


def mean_distances(g: Graph) -> list[float]:
    dist = floyd_warshall(g)
    n = g.node_count
    return [sum(dist[v]) / (n - 1) for v in range(n)]


def rich_club(g: Graph) -> list[float]:
    """phi for r = 2..N using the degree ranking with ascending-id ties."""
    n = g.node_count
    order = sorted(range(n), key=lambda v: (-g.degree(v), v))
    out = []
    for r in range(2, n + 1):
        club = set(order[:r])
        links = sum(1 for u, v in g.edges() if u in club and v in club)
        out.append(links / (r * (r - 1) / 2))
    return out


def knn(g: Graph) -> list[float]:
    return [sum(g.degree(u) for u in g.neighbors(v)) / g.degree(v) for v in range(g.node_count)]


def random_connected_graph(rng: random.Random, n: int, extra_p: float) -> Graph:
    """Random tree plus each remaining pair with probability ``extra_p``, then relabelled."""
    perm = list(range(n))
    rng.shuffle(perm)
    g = Graph(n)
    for v in range(1, n):
        g.add_edge(perm[v], perm[rng.randrange(v)])
    for u, v in itertools.combinations(range(n), 2):
        if rng.random() < extra_p:
            g.add_edge(u, v)
    return g


def all_graphs(n: int):
    """Every labelled simple graph on n nodes."""
    pairs = list(itertools.combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield Graph.from_edges(n, (pairs[i] for i in range(len(pairs)) if mask >> i & 1))


def is_connected(g: Graph) -> bool:
    dist = floyd_warshall(g)
    return all(x < INF for x in dist[0])


def as_array(values) -> np.ndarray:
    return np.array([float(v) for v in values])
