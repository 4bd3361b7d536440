"""Kamada-Kawai style 2-D layout by stress majorization."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from .graph import HomogeneityGraph

COMPONENT_GAP = 1.0


def graph_distances(graph: HomogeneityGraph, nodes: list[str]) -> np.ndarray:
    """Unweighted shortest-path lengths among ``nodes`` (inf when unreachable)."""
    adj = graph.neighbors()
    index = {v: i for i, v in enumerate(nodes)}
    n = len(nodes)
    dist = np.full((n, n), np.inf)
    for src in nodes:
        row = dist[index[src]]
        row[index[src]] = 0.0
        queue = deque([src])
        while queue:
            v = queue.popleft()
            for u in adj[v]:
                if u in index and np.isinf(row[index[u]]):
                    row[index[u]] = row[index[v]] + 1.0
                    queue.append(u)
    return dist


def stress(pos: np.ndarray, dist: np.ndarray) -> float:
    """Sum over pairs of (|p_i - p_j| - d_ij)^2 / d_ij^2."""
    n = len(pos)
    if n < 2:
        return 0.0
    iu = np.triu_indices(n, 1)
    diff = pos[:, None, :] - pos[None, :, :]
    eucl = np.sqrt((diff ** 2).sum(-1))[iu]
    d = dist[iu]
    return float((((eucl - d) / d) ** 2).sum())


def minimize_stress(dist: np.ndarray, init: np.ndarray, iterations: int,
                    tol: float = 1e-12) -> tuple[np.ndarray, list[float]]:
    """SMACOF iterations with weights 1/d^2; the energy never increases.

    Returns the final positions and the energy before the first and after
    every accepted iteration.
    """
    n = len(init)
    pos = np.array(init, dtype=float)
    energies = [stress(pos, dist)]
    if n < 2:
        return pos, energies
    with np.errstate(divide="ignore"):
        w = np.where(dist > 0, 1.0 / dist ** 2, 0.0)
    lap = -w.copy()
    np.fill_diagonal(lap, w.sum(1))
    lap_pinv = np.linalg.pinv(lap)
    for _ in range(iterations):
        diff = pos[:, None, :] - pos[None, :, :]
        eucl = np.sqrt((diff ** 2).sum(-1))
        with np.errstate(divide="ignore", invalid="ignore"):
            b = np.where(eucl > 0, -w * dist / eucl, 0.0)
        np.fill_diagonal(b, 0.0)
        np.fill_diagonal(b, -b.sum(1))
        candidate = lap_pinv @ (b @ pos)
        energy = stress(candidate, dist)
        if energy > energies[-1]:
            break
        pos = candidate
        improvement = energies[-1] - energy
        energies.append(energy)
        if improvement <= tol * max(energy, 1.0):
            break
    return pos, energies


@dataclass(frozen=True)
class Layout:
    positions: dict[str, tuple[float, float]]
    energy_trace: list[float]


def _initial_positions(n: int, rng: np.random.Generator) -> np.ndarray:
    radius = max(n / (2 * np.pi), 0.5)
    angles = 2 * np.pi * np.arange(n) / n
    circle = radius * np.column_stack((np.cos(angles), np.sin(angles)))
    return circle + rng.uniform(-0.05, 0.05, size=(n, 2)) * radius


def kamada_kawai(graph: HomogeneityGraph, iterations: int = 300, seed: int = 0) -> Layout:
    """Lay out each connected component separately, then pack them left to right.

    Nodes start on a circle in label order with a seeded jitter, so the
    result depends only on the graph, ``iterations`` and ``seed``.
    """
    if iterations < 1:
        raise ValueError("iterations must be at least 1")
    rng = np.random.default_rng(seed)
    labels = sorted(graph.nodes)
    canon = HomogeneityGraph(tuple(labels), graph.edges)
    comps = sorted(canon.components(), key=lambda c: (-len(c), c[0]))
    placed: dict[str, tuple[float, float]] = {}
    traces = []
    cursor = 0.0
    for comp in comps:
        dist = graph_distances(canon, comp)
        pos, trace = minimize_stress(dist, _initial_positions(len(comp), rng), iterations)
        traces.append(trace)
        lo, hi = pos.min(0), pos.max(0)
        pos = pos - [lo[0] - cursor, (lo[1] + hi[1]) / 2]
        cursor += (hi[0] - lo[0]) + COMPONENT_GAP
        for label, (x, y) in zip(comp, pos):
            placed[label] = (float(x), float(y))
    length = max((len(t) for t in traces), default=1)
    total = [sum(t[min(i, len(t) - 1)] for t in traces) for i in range(length)]
    return Layout({v: placed[v] for v in graph.nodes}, total)


def kamada_kawai_layout(graph: HomogeneityGraph, iterations: int = 300, seed: int = 0) -> dict[str, tuple[float, float]]:
    return kamada_kawai(graph, iterations, seed).positions
