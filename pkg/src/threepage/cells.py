"""The cell structure a connected diagram induces on the sphere.

Crossings are the 0-cells, edges the 1-cells, and complementary regions
the 2-cells.  Faces are traced from the rotation system: the dart after
``d`` along a face boundary is the rotation successor of the reversed
dart, ``rotate(opposite(d))``.  For a diagram with n crossings the trace
must produce n + 2 faces; anything else means the rotation system does
not describe a sphere embedding and the input is rejected.
"""

from __future__ import annotations

from dataclasses import dataclass

from .diagram import PlaneDiagram, crossing_of, rotate
from .errors import DiagramError


class CellComplex:
    """Faces, incidences and the dual graph of a connected diagram."""

    def __init__(self, diagram: PlaneDiagram):
        if diagram.n == 0:
            raise DiagramError("cell complex requires at least one crossing")
        if not diagram.is_connected():
            raise DiagramError("cell complex requires a connected diagram")
        self.diagram = diagram

        total = 4 * diagram.n
        face_of = [-1] * total
        faces = []
        for start in range(total):
            if face_of[start] >= 0:
                continue
            cycle = []
            d = start
            while face_of[d] < 0:
                face_of[d] = len(faces)
                cycle.append(d)
                d = rotate(diagram.opposite(d))
            if d != start:
                raise DiagramError("face trace did not close; corrupt pairing")
            faces.append(tuple(cycle))
        self.faces = tuple(faces)
        self._face_of_dart = face_of

        n, e, f = diagram.n, diagram.edge_count, len(self.faces)
        if n - e + f != 2:
            raise DiagramError(
                f"rotation system is not spherical: V-E+F = {n}-{e}+{f} != 2")

        self._face_edges = tuple(
            tuple(sorted({diagram.edge_of(d) for d in cycle}))
            for cycle in self.faces)
        self._face_vertices = tuple(
            tuple(sorted({crossing_of(d) for d in cycle}))
            for cycle in self.faces)

    @property
    def n(self) -> int:
        return self.diagram.n

    @property
    def face_count(self) -> int:
        return len(self.faces)

    def face_of(self, dart: int) -> int:
        return self._face_of_dart[dart]

    def face_edges(self, face: int) -> tuple[int, ...]:
        return self._face_edges[face]

    def face_vertices(self, face: int) -> tuple[int, ...]:
        return self._face_vertices[face]

    def face_size(self, face: int) -> int:
        """Boundary walk length in darts (counts repeated edges twice)."""
        return len(self.faces[face])

    def edge_sides(self, edge: int) -> tuple[int, int]:
        """The two face-sides of an edge, in dart order."""
        d1, d2 = self.diagram.edge_darts[edge]
        return self._face_of_dart[d1], self._face_of_dart[d2]

    def checkerboard(self) -> tuple[int, ...]:
        """Proper 2-coloring of the faces, color 0 on face 0.

        Exists for every diagram of a link: the underlying graph is
        four-valent, hence Eulerian, hence its dual is bipartite.
        """
        colors = [-1] * self.face_count
        colors[0] = 0
        queue = [0]
        while queue:
            f = queue.pop()
            for e in self._face_edges[f]:
                a, b = self.edge_sides(e)
                g = b if a == f else a
                if colors[g] < 0:
                    colors[g] = 1 - colors[f]
                    queue.append(g)
                elif colors[g] == colors[f]:
                    raise DiagramError("checkerboard coloring failed; "
                                       "dual graph is not bipartite")
        if min(colors) < 0:
            raise DiagramError("dual graph is disconnected")
        return tuple(colors)

    def dual_graph(self) -> "DualGraph":
        colors = self.checkerboard()
        parallel = tuple((e, *self.edge_sides(e))
                         for e in range(self.diagram.edge_count))
        adj: dict[int, set[int]] = {f: set() for f in range(self.face_count)}
        for _, a, b in parallel:
            if a != b:
                adj[a].add(b)
                adj[b].add(a)
        return DualGraph(
            face_count=self.face_count,
            parallel_edges=parallel,
            adjacency={f: frozenset(s) for f, s in adj.items()},
            classes=(frozenset(f for f, c in enumerate(colors) if c == 0),
                     frozenset(f for f, c in enumerate(colors) if c == 1)),
        )

    def full_subcomplex(self) -> "Subcomplex":
        return Subcomplex(
            vertices=frozenset(range(self.n)),
            edges=frozenset(range(self.diagram.edge_count)),
            faces=frozenset(range(self.face_count)),
        )


@dataclass(frozen=True)
class DualGraph:
    """Faces as vertices; one parallel edge per primal edge."""

    face_count: int
    parallel_edges: tuple[tuple[int, int, int], ...]  # (primal edge, f, g)
    adjacency: dict[int, frozenset[int]]
    classes: tuple[frozenset[int], frozenset[int]]


@dataclass(frozen=True)
class Subcomplex:
    """A set of cells of a CellComplex, one frozen set per dimension."""

    vertices: frozenset[int]
    edges: frozenset[int]
    faces: frozenset[int]

    def cell_count(self) -> int:
        return len(self.vertices) + len(self.edges) + len(self.faces)


def is_closed(sub: Subcomplex, cx: CellComplex) -> bool:
    """Closure: boundaries of included cells are included too."""
    for f in sub.faces:
        if not set(cx.face_edges(f)) <= sub.edges:
            return False
    for e in sub.edges:
        if not set(cx.diagram.edge_endpoints(e)) <= sub.vertices:
            return False
    return True


def _require_closed(sub: Subcomplex, cx: CellComplex) -> None:
    if not is_closed(sub, cx):
        raise DiagramError("subcomplex is not closed")


def euler_characteristic(sub: Subcomplex, cx: CellComplex) -> int:
    _require_closed(sub, cx)
    return len(sub.vertices) - len(sub.edges) + len(sub.faces)


def subcomplex_components(sub: Subcomplex, cx: CellComplex) -> list[Subcomplex]:
    """Connected pieces of the underlying space, via cell incidence."""
    _require_closed(sub, cx)
    parent: dict[tuple[str, int], tuple[str, int]] = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    for v in sub.vertices:
        parent[("v", v)] = ("v", v)
    for e in sub.edges:
        parent[("e", e)] = ("e", e)
    for f in sub.faces:
        parent[("f", f)] = ("f", f)
    for e in sub.edges:
        for v in cx.diagram.edge_endpoints(e):
            union(("e", e), ("v", v))
    for f in sub.faces:
        for e in cx.face_edges(f):
            union(("f", f), ("e", e))

    groups: dict[tuple[str, int], list[tuple[str, int]]] = {}
    for cell in parent:
        groups.setdefault(find(cell), []).append(cell)
    comps = []
    for cells in groups.values():
        comps.append(Subcomplex(
            vertices=frozenset(i for kind, i in cells if kind == "v"),
            edges=frozenset(i for kind, i in cells if kind == "e"),
            faces=frozenset(i for kind, i in cells if kind == "f"),
        ))
    comps.sort(key=lambda s: (min(s.vertices) if s.vertices else -1,
                              min(s.edges) if s.edges else -1))
    return comps


def is_contractible(sub: Subcomplex, cx: CellComplex) -> bool:
    """Connected, Euler characteristic 1, and not the whole complex.

    For closed subcomplexes of the sphere complex this is equivalent to
    contractibility: a proper subcomplex carries no 2-cycles, so it is
    contractible exactly when it is connected with trivial first homology,
    and chi = 1 pins that down.  The complement-connectivity count below
    stays available as an independent check of the same property.
    """
    if sub == cx.full_subcomplex():
        return False
    if sub.cell_count() == 0:
        return False
    comps = subcomplex_components(sub, cx)
    return len(comps) == 1 and euler_characteristic(sub, cx) == 1


def complement_components(sub: Subcomplex, cx: CellComplex) -> int:
    """Components of the complement, glued across omitted edges.

    Vertices of the counted graph are the faces outside ``sub``; an
    omitted primal edge joins its two face-sides whenever both are
    outside ``sub``.
    """
    _require_closed(sub, cx)
    outside = [f for f in range(cx.face_count) if f not in sub.faces]
    if not outside:
        return 0
    parent = {f: f for f in outside}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in range(cx.diagram.edge_count):
        if e in sub.edges:
            continue
        a, b = cx.edge_sides(e)
        if a in parent and b in parent:
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb
    return len({find(f) for f in outside})
