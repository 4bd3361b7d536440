"""Homogeneity graphs and their k-core decomposition."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable


def _edge(a: str, b: str) -> frozenset[str]:
    return frozenset((a, b))


@dataclass(frozen=True)
class HomogeneityGraph:
    """Units as nodes; an edge joins two units whose distributions do not differ."""

    nodes: tuple[str, ...]
    edges: frozenset[frozenset[str]] = field(default_factory=frozenset)

    def __post_init__(self):
        if len(set(self.nodes)) != len(self.nodes):
            raise ValueError("duplicate node labels")
        known = set(self.nodes)
        for e in self.edges:
            if len(e) != 2:
                raise ValueError("self-loops are not allowed")
            if not e <= known:
                raise ValueError(f"edge {sorted(e)} references an unknown node")

    @classmethod
    def from_pairs(cls, nodes: Iterable[str], pairs: Iterable[tuple[str, str]]) -> HomogeneityGraph:
        return cls(tuple(nodes), frozenset(_edge(a, b) for a, b in pairs))

    def neighbors(self) -> dict[str, set[str]]:
        adj: dict[str, set[str]] = {v: set() for v in self.nodes}
        for e in self.edges:
            a, b = tuple(e)
            adj[a].add(b)
            adj[b].add(a)
        return adj

    def degree(self) -> dict[str, int]:
        return {v: len(nb) for v, nb in self.neighbors().items()}

    def sorted_edges(self) -> list[tuple[int, int]]:
        """Edges as 0-based index pairs (i < j) in canonical node order."""
        index = {v: i for i, v in enumerate(self.nodes)}
        pairs = []
        for e in self.edges:
            i, j = sorted(index[v] for v in e)
            pairs.append((i, j))
        return sorted(pairs)

    def components(self) -> list[list[str]]:
        """Connected components, each in canonical node order."""
        adj = self.neighbors()
        seen: set[str] = set()
        out = []
        for start in self.nodes:
            if start in seen:
                continue
            comp = {start}
            stack = [start]
            while stack:
                v = stack.pop()
                for u in adj[v]:
                    if u not in comp:
                        comp.add(u)
                        stack.append(u)
            seen |= comp
            out.append([v for v in self.nodes if v in comp])
        return out


def build_graph(matrix) -> HomogeneityGraph:
    """Link every pair of distinct labels that is *not* significantly different."""
    sig = matrix.significant
    labels = tuple(matrix.labels)
    k = len(labels)
    for i in range(k):
        for j in range(i + 1, k):
            if bool(sig[i][j]) != bool(sig[j][i]):
                raise ValueError("significance matrix is not symmetric")
    pairs = [(labels[i], labels[j]) for i in range(k) for j in range(i + 1, k) if not sig[i][j]]
    return HomogeneityGraph.from_pairs(labels, pairs)


def core_numbers(graph: HomogeneityGraph) -> dict[str, int]:
    """Core number of every node by repeated removal of a minimum-degree node.

    Bucket-queue peeling (Batagelj & Zaversnik), O(V + E).
    """
    adj = graph.neighbors()
    degree = {v: len(nb) for v, nb in adj.items()}
    if not degree:
        return {}
    max_deg = max(degree.values())
    buckets: list[set[str]] = [set() for _ in range(max_deg + 1)]
    for v, d in degree.items():
        buckets[d].add(v)
    core: dict[str, int] = {}
    k = 0
    for _ in range(len(degree)):
        d = 0
        while not buckets[d]:
            d += 1
        k = max(k, d)
        v = min(buckets[d])  # deterministic pick
        buckets[d].remove(v)
        core[v] = k
        for u in adj[v]:
            if u in core:
                continue
            du = degree[u]
            if du > d:
                buckets[du].remove(u)
                degree[u] = du - 1
                buckets[du - 1].add(u)
    return {v: core[v] for v in graph.nodes}


def k_core(graph: HomogeneityGraph, k: int) -> HomogeneityGraph:
    """Induced subgraph on nodes with core number at least ``k``."""
    cores = core_numbers(graph)
    keep = tuple(v for v in graph.nodes if cores[v] >= k)
    kept = set(keep)
    return HomogeneityGraph(keep, frozenset(e for e in graph.edges if e <= kept))
