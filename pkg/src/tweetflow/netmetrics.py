"""The four node-importance measures over undirected, unweighted graphs.

All functions accept either a graph object exposing adjacency() or a
plain node -> neighbors mapping. Shortest paths are unweighted (BFS);
the word networks are disconnected in practice, so closeness uses the
reach-scaled form

    C(v) = ((r - 1) / (N - 1)) * ((r - 1) / sum of distances from v)

where r is the number of nodes v can reach (itself included), which
degrades gracefully to 0 for isolated nodes. Betweenness follows
Brandes' dependency accumulation; eigenvector centrality is power
iteration with a self-damping fallback for bipartite oscillation.
"""

from __future__ import annotations

import logging
from collections import deque
from collections.abc import Mapping, Sequence
from dataclasses import dataclass

from .errors import DataError

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class CentralityScores:
    measure: str
    values: dict[str, float]
    normalized: bool


def _adjacency(graph) -> dict[str, list[str]]:
    if hasattr(graph, "adjacency"):
        return graph.adjacency()
    return {node: sorted(neigh) for node, neigh in sorted(graph.items())}


def degree_centrality(graph) -> CentralityScores:
    """Unweighted neighbor count scaled by N-1."""
    adj = _adjacency(graph)
    n = len(adj)
    if n < 2:
        raise DataError("degree centrality needs at least 2 nodes")
    values = {node: len(neigh) / (n - 1) for node, neigh in adj.items()}
    return CentralityScores("degree", values, normalized=True)


def _bfs_distances(adj: Mapping[str, Sequence[str]], source: str) -> dict[str, int]:
    dist = {source: 0}
    queue = deque([source])
    while queue:
        v = queue.popleft()
        for w in adj[v]:
            if w not in dist:
                dist[w] = dist[v] + 1
                queue.append(w)
    return dist


def closeness_centrality(graph) -> CentralityScores:
    """Reach-scaled closeness per component; isolated nodes score 0."""
    adj = _adjacency(graph)
    n = len(adj)
    if n < 2:
        raise DataError("closeness centrality needs at least 2 nodes")
    values = {}
    for node in adj:
        dist = _bfs_distances(adj, node)
        reach = len(dist)
        total = sum(dist.values())
        if reach > 1 and total > 0:
            values[node] = ((reach - 1) / (n - 1)) * ((reach - 1) / total)
        else:
            values[node] = 0.0
    return CentralityScores("closeness", values, normalized=True)


def betweenness_centrality(graph, normalized: bool = False) -> CentralityScores:
    """Brandes' algorithm over unweighted shortest paths.

    Raw scores count each unordered node pair once; the normalized option
    divides by (N-1)(N-2)/2.
    """
    adj = _adjacency(graph)
    nodes = list(adj)
    centrality = {v: 0.0 for v in nodes}
    for source in nodes:
        stack: list[str] = []
        preds: dict[str, list[str]] = {v: [] for v in nodes}
        sigma = {v: 0.0 for v in nodes}
        dist = {v: -1 for v in nodes}
        sigma[source] = 1.0
        dist[source] = 0
        queue = deque([source])
        while queue:
            v = queue.popleft()
            stack.append(v)
            for w in adj[v]:
                if dist[w] < 0:
                    dist[w] = dist[v] + 1
                    queue.append(w)
                if dist[w] == dist[v] + 1:
                    sigma[w] += sigma[v]
                    preds[w].append(v)
        delta = {v: 0.0 for v in nodes}
        while stack:
            w = stack.pop()
            for v in preds[w]:
                delta[v] += (sigma[v] / sigma[w]) * (1.0 + delta[w])
            if w != source:
                centrality[w] += delta[w]
    # each unordered pair was accumulated from both endpoints
    for v in centrality:
        centrality[v] /= 2.0
    if normalized:
        n = len(nodes)
        if n > 2:
            scale = 2.0 / ((n - 1) * (n - 2))
            for v in centrality:
                centrality[v] *= scale
    return CentralityScores("betweenness", dict(sorted(centrality.items())), normalized)


class NonConvergenceError(DataError):
    """Power iteration failed to converge even with damping."""


def _power_iteration(
    adj: Mapping[str, Sequence[str]],
    nodes: list[str],
    tol: float,
    max_iters: int,
    damping: float,
) -> dict[str, float] | None:
    n = len(nodes)
    index = {v: i for i, v in enumerate(nodes)}
    neighbor_ids = [[index[w] for w in adj[v]] for v in nodes]
    x = [1.0 / n ** 0.5] * n
    for _ in range(max_iters):
        nxt = [damping * xi for xi in x]
        for i, neigh in enumerate(neighbor_ids):
            acc = nxt[i]
            for j in neigh:
                acc += x[j]
            nxt[i] = acc
        norm = sum(v * v for v in nxt) ** 0.5
        if norm == 0.0:
            return None
        nxt = [v / norm for v in nxt]
        if max(abs(a - b) for a, b in zip(nxt, x)) < tol:
            return dict(zip(nodes, nxt))
        x = nxt
    return None


def eigenvector_centrality(
    graph, tol: float = 1e-10, max_iters: int = 1000
) -> CentralityScores:
    """Dominant eigenvector of the adjacency operator, L2-normalized.

    Starts from the uniform positive vector; if plain power iteration
    oscillates (bipartite spectrum), a 0.5 self-damping term is added,
    which shifts the spectrum without changing eigenvectors.
    """
    adj = _adjacency(graph)
    if not any(adj.values()):
        raise DataError("eigenvector centrality needs at least one edge")
    nodes = list(adj)
    values = _power_iteration(adj, nodes, tol, max_iters, damping=0.0)
    if values is None:
        log.debug("eigenvector: undamped iteration did not converge, damping")
        values = _power_iteration(adj, nodes, tol, max_iters, damping=0.5)
    if values is None:
        raise NonConvergenceError(
            f"power iteration did not converge in {max_iters} iterations"
        )
    return CentralityScores("eigenvector", values, normalized=True)


def top_k(scores: CentralityScores, k: int) -> list[tuple[str, float]]:
    """Highest-scoring nodes, descending; ties lexicographic; k may exceed N."""
    ranked = sorted(scores.values.items(), key=lambda kv: (-kv[1], kv[0]))
    return ranked[:k]
