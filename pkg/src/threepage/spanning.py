"""Spanning trees and their extensions by pairwise edge-disjoint faces.

An extended spanning tree is a closed subcomplex that contains every
crossing, is connected and contractible, and whose 2-cells are pairwise
edge-disjoint.  Its edge count is forced: crossings - 1 + number of
faces.  Each included face removes one binding point from the circle
built later, so the searches below maximize the face count.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .cells import (CellComplex, Subcomplex, euler_characteristic,
                    subcomplex_components)
from .errors import DiagramError, InternalError


@dataclass(frozen=True)
class ExtendedSpanningTree:
    edges: frozenset[int]
    faces: frozenset[int]

    def subcomplex(self, cx: CellComplex) -> Subcomplex:
        return Subcomplex(vertices=frozenset(range(cx.n)),
                          edges=self.edges, faces=self.faces)


@dataclass(frozen=True)
class SearchResult:
    m: int
    est: ExtendedSpanningTree
    exact: bool
    nodes: int


@dataclass(frozen=True)
class Witness:
    """Two tree edges at a shared crossing and a feasible face pair."""
    edge_a: int
    edge_b: int
    face_a: int
    face_b: int


def spanning_tree(cx: CellComplex, strategy: str = "bfs",
                  seed: int = 0) -> frozenset[int]:
    """Edge set of a spanning tree of the 1-skeleton.

    Deterministic for a given (strategy, seed).  bfs and dfs explore
    edges in id order from crossing 0; random shuffles the edge order
    and runs a union-find sweep.
    """
    d = cx.diagram
    if strategy == "random":
        order = list(range(d.edge_count))
        random.Random(seed).shuffle(order)
        parent = list(range(d.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        chosen = []
        for e in order:
            a, b = d.edge_endpoints(e)
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb
                chosen.append(e)
        return frozenset(chosen)

    if strategy not in ("bfs", "dfs"):
        raise DiagramError(f"unknown spanning tree strategy: {strategy}")
    incident: list[list[int]] = [[] for _ in range(d.n)]
    for e in range(d.edge_count):
        a, b = d.edge_endpoints(e)
        incident[a].append(e)
        if b != a:
            incident[b].append(e)
    seen = [False] * d.n
    seen[0] = True
    chosen = []
    frontier = [0]
    while frontier:
        v = frontier.pop(0 if strategy == "bfs" else -1)
        for e in incident[v]:
            a, b = d.edge_endpoints(e)
            w = b if a == v else a
            if not seen[w]:
                seen[w] = True
                chosen.append(e)
                frontier.append(w)
    if len(chosen) != d.n - 1:
        raise InternalError("spanning tree construction missed vertices")
    return frozenset(chosen)


def _boundary_edges(faces, cx: CellComplex) -> frozenset[int]:
    out: set[int] = set()
    for f in faces:
        out.update(cx.face_edges(f))
    return frozenset(out)


def _pairwise_edge_disjoint(faces, cx: CellComplex) -> bool:
    seen: set[int] = set()
    for f in faces:
        edges = cx.face_edges(f)
        if any(e in seen for e in edges):
            return False
        seen.update(edges)
    return True


def face_set_feasible(faces, cx: CellComplex) -> bool:
    """Whether some extended spanning tree has exactly this face set.

    True iff the faces are pairwise edge-disjoint and every connected
    component of (all vertices, their boundaries, the faces) has Euler
    characteristic 1.  Components with a cycle can never be completed:
    bridging edges only merge components, they cannot kill homology.
    The subcomplex-enumeration oracle validates this criterion.
    """
    faces = frozenset(faces)
    if not _pairwise_edge_disjoint(faces, cx):
        return False
    closed = Subcomplex(vertices=frozenset(range(cx.n)),
                        edges=_boundary_edges(faces, cx), faces=faces)
    return all(euler_characteristic(comp, cx) == 1
               for comp in subcomplex_components(closed, cx))


def complete_to_est(faces, cx: CellComplex) -> ExtendedSpanningTree:
    """Bridge the components of a feasible face set into one tree-like Y.

    Added edges never lie on a face boundary; each merges two components,
    so the final edge count is n + |faces| - 1.
    """
    faces = frozenset(faces)
    if not face_set_feasible(faces, cx):
        raise DiagramError("face set is not feasible")
    edges = set(_boundary_edges(faces, cx))
    comps = subcomplex_components(
        Subcomplex(vertices=frozenset(range(cx.n)),
                   edges=frozenset(edges), faces=faces), cx)
    comp_of = {}
    for i, comp in enumerate(comps):
        for v in comp.vertices:
            comp_of[v] = i

    parent = list(range(len(comps)))

    def root(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    d = cx.diagram
    for e in range(d.edge_count):
        if e in edges:
            continue
        a, b = d.edge_endpoints(e)
        ra, rb = root(comp_of[a]), root(comp_of[b])
        if ra != rb:
            parent[ra] = rb
            edges.add(e)
    if len({root(i) for i in range(len(comps))}) != 1:
        raise InternalError("could not bridge face components")
    est = ExtendedSpanningTree(edges=frozenset(edges), faces=faces)
    if len(est.edges) != cx.n + len(faces) - 1:
        raise InternalError("extended spanning tree has wrong edge count")
    return est


def _face_order(cx: CellComplex, order: str, seed: int) -> list[int]:
    faces = list(range(cx.face_count))
    if order == "by-size":
        faces.sort(key=lambda f: (cx.face_size(f), f))
    elif order == "by-dual-degree":
        adj = cx.dual_graph().adjacency
        faces.sort(key=lambda f: (len(adj[f]), f))
    elif order == "random":
        random.Random(seed).shuffle(faces)
    else:
        raise DiagramError(f"unknown greedy order: {order}")
    return faces


def greedy_max_faces(cx: CellComplex, order: str = "by-size",
                     seed: int = 0) -> ExtendedSpanningTree:
    """Grow a feasible face set greedily, then bridge it."""
    chosen: set[int] = set()
    for f in _face_order(cx, order, seed):
        if face_set_feasible(chosen | {f}, cx):
            chosen.add(f)
    return complete_to_est(chosen, cx)


def exact_max_faces(cx: CellComplex, budget: int = 10_000_000) -> SearchResult:
    """Branch and bound over independent face sets, feasibility-pruned.

    Feasibility is hereditary (every subset of a feasible set is
    feasible), so an infeasible partial set can be cut off.  The bound is
    current size plus remaining candidates.  When the node budget runs
    out the best set found so far is returned with exact=False.
    """
    adj = cx.dual_graph().adjacency
    order = sorted(range(cx.face_count), key=lambda f: (len(adj[f]), f))
    face_edges = [frozenset(cx.face_edges(f)) for f in range(cx.face_count)]

    best: list = [0, frozenset()]
    nodes = 0
    exhausted = False

    def descend(chosen: frozenset[int], used_edges: frozenset[int],
                candidates: list[int]) -> None:
        nonlocal nodes, exhausted
        nodes += 1
        if nodes > budget:
            exhausted = True
            return
        if len(chosen) > best[0]:
            best[0], best[1] = len(chosen), chosen
        if not candidates or len(chosen) + len(candidates) <= best[0]:
            return
        f, rest = candidates[0], candidates[1:]
        if not (face_edges[f] & used_edges) and \
                face_set_feasible(chosen | {f}, cx):
            keep = [g for g in rest if not (face_edges[g] & face_edges[f])]
            descend(chosen | {f}, used_edges | face_edges[f], keep)
            if exhausted:
                return
        descend(chosen, used_edges, rest)

    descend(frozenset(), frozenset(), order)
    return SearchResult(m=best[0], est=complete_to_est(best[1], cx),
                        exact=not exhausted, nodes=nodes)


def oracle_max_faces(cx: CellComplex) -> int:
    """Maximum face count by direct enumeration of subcomplexes.

    Walks all face subsets and, for each, all edge supersets of the
    boundary with the size a contractible subcomplex must have
    (chi = 1 forces |edges| = n + |faces| - 1), testing connectivity and
    pairwise edge-disjointness directly.  Exponential; limited to n <= 6.
    """
    d = cx.diagram
    if d.n > 6:
        raise DiagramError("oracle enumeration is limited to n <= 6")
    face_edge_sets = [frozenset(cx.face_edges(f)) for f in range(cx.face_count)]
    all_edges = range(d.edge_count)

    def connects(edge_set) -> bool:
        parent = list(range(d.n))

        def root(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for e in edge_set:
            a, b = d.edge_endpoints(e)
            ra, rb = root(a), root(b)
            if ra != rb:
                parent[ra] = rb
        return len({root(v) for v in range(d.n)}) == 1

    for m in range(cx.face_count, -1, -1):
        for faces in itertools.combinations(range(cx.face_count), m):
            if not _pairwise_edge_disjoint(faces, cx):
                continue
            required = frozenset().union(*(face_edge_sets[f] for f in faces)) \
                if faces else frozenset()
            need = d.n + m - 1 - len(required)
            if need < 0:
                continue
            spare = [e for e in all_edges if e not in required]
            for extra in itertools.combinations(spare, need):
                if connects(required | frozenset(extra)):
                    return m
    raise InternalError("enumeration found no subcomplex at all")


def witness_pair(cx: CellComplex) -> Witness:
    """A feasible two-face certificate around a length-two tree path.

    For a reduced connected diagram with n >= 3 there are two edges
    sharing a crossing, one face incident to each, such that the two
    faces share no edge and their face set is feasible.  The returned
    edges are part of a spanning tree by construction (two distinct
    non-loop, non-parallel adjacent edges always extend to one).
    """
    d = cx.diagram
    if d.n < 3:
        raise DiagramError("witness search requires n >= 3")
    if not d.is_reduced():
        raise DiagramError("witness search requires a reduced diagram")
    incident: list[list[int]] = [[] for _ in range(d.n)]
    for e in range(d.edge_count):
        a, b = d.edge_endpoints(e)
        incident[a].append(e)
        incident[b].append(e)
    for c in range(d.n):
        edges = sorted(set(incident[c]))
        for ea, eb in itertools.combinations(edges, 2):
            if set(d.edge_endpoints(ea)) == set(d.edge_endpoints(eb)):
                continue  # parallel pair cannot both sit in a tree
            for fa in cx.edge_sides(ea):
                for fb in cx.edge_sides(eb):
                    if fa == fb:
                        continue
                    if set(cx.face_edges(fa)) & set(cx.face_edges(fb)):
                        continue
                    if face_set_feasible({fa, fb}, cx):
                        return Witness(edge_a=ea, edge_b=eb,
                                       face_a=fa, face_b=fb)
    raise InternalError(
        "no feasible face pair sits on two edges sharing a crossing; "
        "the length-two-path argument does not apply to this diagram "
        "(a feasible pair may still exist away from any shared crossing)")
