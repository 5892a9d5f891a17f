"""Non-separating independent sets in the simple dual graph.

A face set usable in an extended spanning tree is independent in the
simple dual and leaves it connected after removal, so the maximum NSIS
size bounds the achievable m from above.  This module solves the graph
problem exactly by branch and bound, approximates it through many-leaf
spanning trees, and tabulates the observed size ratios.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .cells import DualGraph
from .errors import DiagramError


@dataclass(frozen=True)
class SimpleGraph:
    """Undirected graph with deduplicated adjacency and no self-loops."""

    vertices: tuple[int, ...]
    adjacency: dict[int, frozenset[int]]
    classes: tuple[frozenset[int], frozenset[int]] | None = None

    def __post_init__(self):
        vs = set(self.vertices)
        if len(vs) != len(self.vertices):
            raise DiagramError("duplicate vertices")
        for v, nbrs in self.adjacency.items():
            if v not in vs:
                raise DiagramError(f"adjacency lists unknown vertex {v}")
            if v in nbrs:
                raise DiagramError(f"self-loop at {v}")
            for u in nbrs:
                if u not in vs or v not in self.adjacency.get(u, ()):
                    raise DiagramError("adjacency is not symmetric")
        for v in vs:
            if v not in self.adjacency:
                raise DiagramError(f"vertex {v} missing from adjacency")

    @classmethod
    def from_dual(cls, dual: DualGraph) -> "SimpleGraph":
        return cls(vertices=tuple(range(dual.face_count)),
                   adjacency=dict(dual.adjacency),
                   classes=dual.classes)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def is_connected(self) -> bool:
        return _connected(set(self.vertices), self.adjacency)


@dataclass(frozen=True)
class NsisResult:
    size: int
    vertices: frozenset[int]
    exact: bool
    nodes: int


def _connected(verts: set[int], adj: dict[int, frozenset[int]]) -> bool:
    if not verts:
        return False
    seen = set()
    frontier = [min(verts)]
    seen.add(frontier[0])
    while frontier:
        v = frontier.pop()
        for u in adj[v]:
            if u in verts and u not in seen:
                seen.add(u)
                frontier.append(u)
    return seen == verts


def _articulation_points(verts: set[int],
                         adj: dict[int, frozenset[int]]) -> set[int]:
    """Cut vertices of the induced subgraph on verts (assumed connected)."""
    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    parent: dict[int, int | None] = {}
    out: set[int] = set()
    counter = 0
    root = min(verts)
    stack = []
    parent[root] = None
    disc[root] = low[root] = counter
    counter += 1
    stack.append((root, iter(sorted(u for u in adj[root] if u in verts))))
    root_children = 0
    while stack:
        v, it = stack[-1]
        advanced = False
        for u in it:
            if u not in disc:
                parent[u] = v
                disc[u] = low[u] = counter
                counter += 1
                if v == root:
                    root_children += 1
                stack.append(
                    (u, iter(sorted(w for w in adj[u] if w in verts))))
                advanced = True
                break
            elif u != parent[v]:
                low[v] = min(low[v], disc[u])
        if not advanced:
            stack.pop()
            p = parent[v]
            if p is not None:
                low[p] = min(low[p], low[v])
                if p != root and low[v] >= disc[p]:
                    out.add(p)
    if root_children > 1:
        out.add(root)
    return out


def is_nsis(graph: SimpleGraph, subset) -> bool:
    """Independent, and removal leaves a non-empty connected rest."""
    chosen = frozenset(subset)
    verts = set(graph.vertices)
    if not chosen <= verts:
        return False
    for v in chosen:
        if graph.adjacency[v] & chosen:
            return False
    return _connected(verts - chosen, graph.adjacency)


def nsis_exact(graph: SimpleGraph, budget: int = 10_000_000) -> NsisResult:
    """Maximum NSIS by branch and bound.

    Including a vertex keeps the choice set independent by construction;
    a disconnected residual prunes the whole subtree (valid sets keep
    every residual along the way connected), and articulation points of
    the current residual can never be added, so they drop out of the
    candidate list.  Exceeding the node budget only costs exactness.
    """
    if not graph.is_connected():
        raise DiagramError("nsis search requires a connected graph")
    order = sorted(graph.vertices, key=lambda v: (-graph.degree(v), v))
    verts = set(graph.vertices)
    adj = graph.adjacency

    best: list = [0, frozenset()]
    state = {"nodes": 0, "exhausted": False}

    def descend(chosen: frozenset[int], candidates: list[int]) -> None:
        state["nodes"] += 1
        if state["nodes"] > budget:
            state["exhausted"] = True
            return
        if len(chosen) > best[0]:
            best[0], best[1] = len(chosen), chosen
        if not candidates or len(chosen) + len(candidates) <= best[0]:
            return
        v, rest = candidates[0], candidates[1:]
        with_v = chosen | {v}
        residual = verts - with_v
        if residual and _connected(residual, adj):
            cut = _articulation_points(residual, adj)
            keep = [u for u in rest if u not in adj[v] and u not in cut]
            descend(with_v, keep)
            if state["exhausted"]:
                return
        descend(chosen, rest)

    start_cut = _articulation_points(verts, adj) if len(verts) > 1 else set()
    descend(frozenset(), [v for v in order if v not in start_cut])
    return NsisResult(size=best[0], vertices=best[1],
                      exact=not state["exhausted"], nodes=state["nodes"])


def nsis_greedy_leafy(graph: SimpleGraph, seed: int = 0) -> frozenset[int]:
    """NSIS from the leaves of a greedily grown many-leaf spanning tree.

    Grows the tree by always expanding the vertex that adds the most new
    neighbors, takes the leaves inside the better bipartition class
    (same-class vertices are independent when the classes are genuine),
    then keeps only leaves whose removal preserves connectivity.  The
    result always satisfies is_nsis; it may be empty.
    """
    if not graph.is_connected():
        raise DiagramError("nsis search requires a connected graph")
    if graph.classes is None:
        raise DiagramError("leafy heuristic needs bipartition classes")
    rng = random.Random(seed)
    adj = graph.adjacency
    verts = set(graph.vertices)

    root = max(verts, key=lambda v: (graph.degree(v), -v))
    in_tree = {root}
    tree_deg = {root: 0}
    while in_tree != verts:
        gain, pick = -1, None
        for v in sorted(in_tree):
            new = len(adj[v] - in_tree)
            if new > gain:
                gain, pick = new, v
        if gain <= 0:
            raise DiagramError("graph is not connected")
        for u in sorted(adj[pick] - in_tree):
            in_tree.add(u)
            tree_deg[u] = 1
            tree_deg[pick] = tree_deg.get(pick, 0) + 1

    leaves = {v for v, k in tree_deg.items() if k == 1}
    side_a, side_b = graph.classes
    in_a, in_b = leaves & side_a, leaves & side_b
    candidates = sorted(in_a if len(in_a) >= len(in_b) else in_b)
    rng.shuffle(candidates)

    kept: set[int] = set()
    for v in candidates:
        if adj[v] & kept:
            continue
        rest = verts - kept - {v}
        if rest and _connected(rest, adj):
            kept.add(v)
    return frozenset(kept)


def nsis_ratio_report(records) -> dict:
    """Tabulate nsis_max/n and m_max/n over per-diagram records.

    Each record needs name, n, nsis_max and m_max.  Reports the table
    sorted by name plus the minima of both ratios; reporting only, no
    claim is attached to the numbers.
    """
    rows = []
    for rec in records:
        n = rec["n"]
        rows.append({
            "name": rec["name"],
            "n": n,
            "nsis_max": rec["nsis_max"],
            "m_max": rec["m_max"],
            "nsis_ratio": rec["nsis_max"] / n,
            "m_ratio": rec["m_max"] / n,
        })
    rows.sort(key=lambda r: r["name"])
    return {
        "rows": rows,
        "min_nsis_ratio": min((r["nsis_ratio"] for r in rows), default=None),
        "min_m_ratio": min((r["m_ratio"] for r in rows), default=None),
    }
