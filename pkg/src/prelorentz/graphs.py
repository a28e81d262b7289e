"""Graphs, coloured graphs and partitioned graphs, plus the glueing operators.

All values are immutable.  Vertex and colour identifiers are plain strings;
vertex order is insertion order and edges are kept sorted by the positions of
their endpoints, so every constructor below is byte-reproducible.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

from .exceptions import InputError

Edge = tuple[str, str]


@dataclass(frozen=True)
class Graph:
    """Finite simple undirected graph."""

    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]
    _pos: Mapping[str, int] = field(init=False, repr=False, compare=False)
    _adj: Mapping[str, frozenset[str]] = field(init=False, repr=False, compare=False)

    def __init__(self, vertices: Iterable[str] = (), edges: Iterable[Sequence[str]] = ()):
        vertices = tuple(vertices)
        for v in vertices:
            if not isinstance(v, str):
                raise InputError(f"vertex identifiers must be strings, got {v!r}")
        pos = {v: i for i, v in enumerate(vertices)}
        if len(pos) != len(vertices):
            dup = [v for v, k in Counter(vertices).items() if k > 1]
            raise InputError(f"duplicate vertices {dup!r}")
        seen: set[Edge] = set()
        for e in edges:
            if len(e) != 2:
                raise InputError(f"edge {e!r} must have two endpoints")
            u, v = e
            if u not in pos or v not in pos:
                raise InputError(f"edge {e!r} has an endpoint outside the vertex set")
            if u == v:
                raise InputError(f"self-loop at {u!r}")
            key = (u, v) if pos[u] < pos[v] else (v, u)
            if key in seen:
                raise InputError(f"duplicate edge {key!r}")
            seen.add(key)
        norm = tuple(sorted(seen, key=lambda e: (pos[e[0]], pos[e[1]])))
        adj: dict[str, set[str]] = {v: set() for v in vertices}
        for u, v in norm:
            adj[u].add(v)
            adj[v].add(u)
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "edges", norm)
        object.__setattr__(self, "_pos", MappingProxyType(pos))
        object.__setattr__(
            self, "_adj", MappingProxyType({v: frozenset(n) for v, n in adj.items()})
        )

    def __len__(self) -> int:
        return len(self.vertices)

    def neighbours(self, v: str) -> frozenset[str]:
        return self._adj[v]

    def degree(self, v: str) -> int:
        return len(self._adj[v])

    def has_edge(self, u: str, v: str) -> bool:
        return v in self._adj.get(u, ())

    def position(self, v: str) -> int:
        return self._pos[v]

    def adjacency_masks(self) -> list[int]:
        """Neighbourhood of each vertex as a bitmask over vertex positions."""
        masks = [0] * len(self.vertices)
        for u, v in self.edges:
            i, j = self._pos[u], self._pos[v]
            masks[i] |= 1 << j
            masks[j] |= 1 << i
        return masks

    def components(self) -> list[tuple[str, ...]]:
        seen: set[str] = set()
        out = []
        for s in self.vertices:
            if s in seen:
                continue
            comp, stack = [], [s]
            seen.add(s)
            while stack:
                u = stack.pop()
                comp.append(u)
                for w in self._adj[u]:
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
            out.append(tuple(sorted(comp, key=self._pos.__getitem__)))
        return out

    def to_json(self) -> dict:
        return {"vertices": list(self.vertices), "edges": [list(e) for e in self.edges]}


@dataclass(frozen=True)
class ColouredGraph:
    """A graph with a total (not necessarily proper) vertex colouring."""

    graph: Graph
    colouring: Mapping[str, str]

    def __init__(self, graph: Graph, colouring: Mapping[str, str] | None = None):
        if colouring is None:
            colouring = {v: v for v in graph.vertices}
        missing = [v for v in graph.vertices if v not in colouring]
        extra = [v for v in colouring if v not in graph._pos]
        if missing or extra:
            raise InputError(f"colouring must cover exactly the vertices (missing {missing}, extra {extra})")
        for c in colouring.values():
            if not isinstance(c, str):
                raise InputError(f"colour identifiers must be strings, got {c!r}")
        ordered = {v: colouring[v] for v in graph.vertices}
        object.__setattr__(self, "graph", graph)
        object.__setattr__(self, "colouring", MappingProxyType(ordered))

    @property
    def colours(self) -> tuple[str, ...]:
        """Colours in order of first appearance along the vertex order."""
        return tuple(dict.fromkeys(self.colouring.values()))

    def colour_class(self, colour: str) -> tuple[str, ...]:
        return tuple(v for v, c in self.colouring.items() if c == colour)

    def is_free(self, colour: str) -> bool:
        return len(self.colour_class(colour)) == 1

    def free_colours(self) -> tuple[str, ...]:
        counts = Counter(self.colouring.values())
        return tuple(c for c in self.colours if counts[c] == 1)

    def to_json(self) -> dict:
        d = self.graph.to_json()
        d["colours"] = dict(self.colouring)
        return d


@dataclass(frozen=True)
class PartitionedGraph:
    """Coloured graph with one bound colour; every other colour is free."""

    coloured: ColouredGraph
    bound_colour: str

    def __post_init__(self):
        cg = self.coloured
        if len(cg.graph) and self.bound_colour not in cg.colours:
            raise InputError(f"bound colour {self.bound_colour!r} does not occur")
        counts = Counter(cg.colouring.values())
        shared = [c for c, k in counts.items() if k > 1 and c != self.bound_colour]
        if shared:
            raise InputError(f"colours {shared!r} are neither bound nor free")

    @property
    def graph(self) -> Graph:
        return self.coloured.graph

    def free_colours(self) -> tuple[str, ...]:
        return tuple(c for c in self.coloured.colours if c != self.bound_colour)

    def to_json(self) -> dict:
        d = self.coloured.to_json()
        d["bound_colour"] = self.bound_colour
        return d


@dataclass(frozen=True)
class GlueSpec:
    colour_a: str
    colour_b: str


# -- JSON -------------------------------------------------------------------


def graph_from_json(data: Mapping) -> Graph | ColouredGraph | PartitionedGraph:
    """Read the graph schema; the richest type the data supports is returned."""
    if not isinstance(data, Mapping):
        raise InputError("graph JSON must be an object")
    verts = data.get("vertices")
    edges = data.get("edges", [])
    if not isinstance(verts, list) or not isinstance(edges, list):
        raise InputError("graph JSON needs a 'vertices' list and an 'edges' list")
    if not all(isinstance(e, list) for e in edges):
        raise InputError("edges must be two-element lists")
    g = Graph(verts, [tuple(e) for e in edges])
    if "colours" not in data:
        if "bound_colour" in data:
            raise InputError("'bound_colour' given without 'colours'")
        return g
    colours = data["colours"]
    if not isinstance(colours, Mapping):
        raise InputError("'colours' must map vertex to colour")
    cg = ColouredGraph(g, colours)
    if "bound_colour" in data:
        return PartitionedGraph(cg, data["bound_colour"])
    return cg


def as_coloured(g: Graph | ColouredGraph | PartitionedGraph) -> ColouredGraph:
    if isinstance(g, PartitionedGraph):
        return g.coloured
    if isinstance(g, ColouredGraph):
        return g
    return ColouredGraph(g)


def as_graph(g: Graph | ColouredGraph | PartitionedGraph) -> Graph:
    if isinstance(g, PartitionedGraph):
        return g.coloured.graph
    if isinstance(g, ColouredGraph):
        return g.graph
    return g


# -- operators --------------------------------------------------------------


def _fresh(name: str, taken: set[str]) -> str:
    k = 2
    cand = f"{name}#{k}"
    while cand in taken:
        k += 1
        cand = f"{name}#{k}"
    return cand


def _disjoint_union(
    g1: ColouredGraph, g2: ColouredGraph
) -> tuple[ColouredGraph, dict[str, str], dict[str, str]]:
    """Union plus the vertex and colour renamings applied to ``g2``."""
    taken_v = set(g1.graph.vertices) | set(g2.graph.vertices)
    vmap: dict[str, str] = {}
    for v in g2.graph.vertices:
        if v in g1.graph._pos:
            new = _fresh(v, taken_v)
            taken_v.add(new)
            vmap[v] = new
        else:
            vmap[v] = v
    cols1 = set(g1.colours)
    taken_c = cols1 | set(g2.colours)
    cmap: dict[str, str] = {}
    for c in g2.colours:
        if c in cols1:
            new = _fresh(c, taken_c)
            taken_c.add(new)
            cmap[c] = new
        else:
            cmap[c] = c
    verts = g1.graph.vertices + tuple(vmap[v] for v in g2.graph.vertices)
    edges = list(g1.graph.edges) + [(vmap[u], vmap[v]) for u, v in g2.graph.edges]
    colouring = dict(g1.colouring)
    colouring.update({vmap[v]: cmap[c] for v, c in g2.colouring.items()})
    return ColouredGraph(Graph(verts, edges), colouring), vmap, cmap


def disjoint_union(g1: ColouredGraph, g2: ColouredGraph) -> ColouredGraph:
    """Disjoint union; clashing vertex names and colours of ``g2`` get a ``#k`` suffix."""
    return _disjoint_union(as_coloured(g1), as_coloured(g2))[0]


def _merge_colours(cg: ColouredGraph, keep: str, drop: str, clique: bool) -> ColouredGraph:
    colouring = {v: (keep if c == drop else c) for v, c in cg.colouring.items()}
    edges = list(cg.graph.edges)
    if clique:
        cls = [v for v, c in colouring.items() if c == keep]
        for i, u in enumerate(cls):
            for w in cls[i + 1:]:
                if not cg.graph.has_edge(u, w):
                    edges.append((u, w))
    return ColouredGraph(Graph(cg.graph.vertices, edges), colouring)


def glue(g1: ColouredGraph, g2: ColouredGraph, spec: GlueSpec) -> ColouredGraph:
    """Disjoint union with ``spec.colour_a`` and ``spec.colour_b`` merged into a clique.

    The merged colour keeps the name ``spec.colour_a``.
    """
    g1, g2 = as_coloured(g1), as_coloured(g2)
    if spec.colour_a not in g1.colours:
        raise InputError(f"colour {spec.colour_a!r} not in first graph")
    if spec.colour_b not in g2.colours:
        raise InputError(f"colour {spec.colour_b!r} not in second graph")
    union, _, cmap = _disjoint_union(g1, g2)
    return _merge_colours(union, spec.colour_a, cmap[spec.colour_b], clique=True)


def glue_partitioned(g1: PartitionedGraph, g2: PartitionedGraph, spec: GlueSpec) -> PartitionedGraph:
    """Glue across two free colours, then fold every non-free colour into ``g1``'s bound colour.

    After glueing, the merged colour class holds two vertices and is no longer
    free, so it joins the bound colour together with ``g2``'s bound colour.
    """
    for g, c, which in ((g1, spec.colour_a, "first"), (g2, spec.colour_b, "second")):
        if c == g.bound_colour or c not in g.coloured.colours:
            raise InputError(f"{c!r} is not a free colour of the {which} graph")
    union, _, cmap = _disjoint_union(g1.coloured, g2.coloured)
    glued = _merge_colours(union, spec.colour_a, cmap[spec.colour_b], clique=True)
    glued = _merge_colours(glued, g1.bound_colour, cmap[g2.bound_colour], clique=False)
    glued = _merge_colours(glued, g1.bound_colour, spec.colour_a, clique=False)
    return PartitionedGraph(glued, g1.bound_colour)


def glue_free_within(g: PartitionedGraph, colour_a: str, colour_b: str) -> PartitionedGraph:
    """Glue two free colours of the same partitioned graph (closes a cycle)."""
    free = g.free_colours()
    for c in (colour_a, colour_b):
        if c not in free:
            raise InputError(f"{c!r} is not a free colour")
    if colour_a == colour_b:
        raise InputError("cannot glue a colour to itself")
    glued = _merge_colours(g.coloured, colour_a, colour_b, clique=True)
    glued = _merge_colours(glued, g.bound_colour, colour_a, clique=False)
    return PartitionedGraph(glued, g.bound_colour)


def replace_w4(g: Graph) -> Graph:
    """Replace every edge u-v by a size-4 caterpillar.

    The path is ``u - m1 - m2 - v``; ``m1`` and ``m2`` get one pendant leaf
    each, and every original vertex gets one pendant leaf per incident edge.
    """
    g = as_graph(g)
    verts = list(g.vertices)
    edges: list[Edge] = []
    leaf_count: Counter[str] = Counter()
    for u, v in g.edges:
        m1, m2 = f"{u}~{v}~m1", f"{u}~{v}~m2"
        l1, l2 = f"{m1}~leaf", f"{m2}~leaf"
        verts += [m1, m2, l1, l2]
        edges += [(u, m1), (m1, m2), (m2, v), (m1, l1), (m2, l2)]
        for w in (u, v):
            leaf_count[w] += 1
            leaf = f"{w}~leaf~{leaf_count[w]}"
            verts.append(leaf)
            edges.append((w, leaf))
    return Graph(verts, edges)


def leafy_star(n: int) -> PartitionedGraph:
    """Centre ``c`` with ``n`` bound leaves and ``n`` free neighbours, each with a bound leaf.

    The bound colour is ``x`` and the free colours are ``x1 .. xn``.
    """
    if not isinstance(n, int) or n < 1:
        raise InputError("leafy_star needs n >= 1")
    verts = ["c"]
    edges: list[Edge] = []
    colouring = {"c": "x"}
    for i in range(1, n + 1):
        verts.append(f"b{i}")
        edges.append(("c", f"b{i}"))
        colouring[f"b{i}"] = "x"
    for i in range(1, n + 1):
        f, leaf = f"f{i}", f"l{i}"
        verts += [f, leaf]
        edges += [("c", f), (f, leaf)]
        colouring[f] = f"x{i}"
        colouring[leaf] = "x"
    return PartitionedGraph(ColouredGraph(Graph(verts, edges), colouring), "x")


def single_bound_vertex(name: str = "c") -> PartitionedGraph:
    return PartitionedGraph(ColouredGraph(Graph([name]), {name: "x"}), "x")


def w4_from_leafy_stars(g: Graph) -> PartitionedGraph:
    """Rebuild ``replace_w4(g)`` by glueing one leafy star per vertex across free vertices.

    Star ``i`` is a copy of ``leafy_star(deg(v_i))``; each edge of ``g`` glues
    one unused free vertex of each endpoint's star.  Isolated vertices become
    single bound vertices.  Vertex names are those of the glued stars, so the
    result matches ``replace_w4(g)`` up to relabelling only.
    """
    g = as_graph(g)
    if not len(g):
        return PartitionedGraph(ColouredGraph(Graph()), "x")
    stars: dict[str, PartitionedGraph] = {}
    for v in g.vertices:
        d = g.degree(v)
        star = leafy_star(d) if d else single_bound_vertex()
        # Prefix names so each star is distinct and traceable.
        vren = {w: f"{v}:{w}" for w in star.graph.vertices}
        cren = {c: f"{v}:{c}" for c in star.coloured.colours}
        cg = ColouredGraph(
            Graph([vren[w] for w in star.graph.vertices], [(vren[a], vren[b]) for a, b in star.graph.edges]),
            {vren[w]: cren[c] for w, c in star.coloured.colouring.items()},
        )
        stars[v] = PartitionedGraph(cg, cren[star.bound_colour])
    next_free = {v: 1 for v in g.vertices}

    def take(v: str) -> str:
        c = f"{v}:x{next_free[v]}"
        next_free[v] += 1
        return c

    result: PartitionedGraph | None = None
    for comp in g.components():
        part = stars[comp[0]]
        inside = {comp[0]}
        # BFS order so every tree edge glues a new star onto the growing part.
        pending = [e for e in g.edges if e[0] in comp]
        while pending:
            progress = False
            rest = []
            for u, v in pending:
                if u in inside and v in inside:
                    part = glue_free_within(part, take(u), take(v))
                elif u in inside or v in inside:
                    a, b = (u, v) if u in inside else (v, u)
                    part = glue_partitioned(part, stars[b], GlueSpec(take(a), take(b)))
                    inside.add(b)
                else:
                    rest.append((u, v))
                    continue
                progress = True
            pending = rest
            if not progress:
                raise AssertionError("component traversal stalled")
        result = part if result is None else _union_partitioned(result, part)
    return result


def _union_partitioned(g1: PartitionedGraph, g2: PartitionedGraph) -> PartitionedGraph:
    union, _, cmap = _disjoint_union(g1.coloured, g2.coloured)
    merged = _merge_colours(union, g1.bound_colour, cmap[g2.bound_colour], clique=False)
    return PartitionedGraph(merged, g1.bound_colour)
