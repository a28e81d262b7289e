import json
from collections import Counter
from itertools import combinations

import pytest

from conftest import random_coloured, random_graph, subset_coloured_poly, subset_indep_counts
from prelorentz import (
    ColouredGraph,
    GlueSpec,
    Graph,
    PartitionedGraph,
    coloured_indep_poly,
    disjoint_union,
    glue,
    glue_partitioned,
    graph_from_json,
    indep_poly,
    leafy_star,
    replace_w4,
    w4_from_leafy_stars,
)
from prelorentz.exceptions import InputError
from prelorentz.graphs import glue_free_within
from prelorentz.polynomials import MultiPoly, extend_vars


def path(names):
    return Graph(names, list(zip(names, names[1:])))


def edge_set(g):
    return {frozenset(e) for e in g.edges}


# -- construction and validation ------------------------------------------------


@pytest.mark.parametrize(
    "verts,edges",
    [
        (["a"], [("a", "a")]),
        (["a", "b"], [("a", "b"), ("b", "a")]),
        (["a"], [("a", "z")]),
        (["a", "a"], []),
    ],
)
def test_graph_rejects_bad_input(verts, edges):
    with pytest.raises(InputError):
        Graph(verts, edges)


def test_partitioned_requires_free_non_bound_colours():
    cg = ColouredGraph(path(["a", "b", "c"]), {"a": "x", "b": "y", "c": "y"})
    with pytest.raises(InputError):
        PartitionedGraph(cg, "x")
    assert PartitionedGraph(cg, "y").free_colours() == ("x",)


def test_default_colouring_is_free():
    cg = ColouredGraph(path(["a", "b"]))
    assert cg.colours == ("a", "b")
    assert all(cg.is_free(c) for c in cg.colours)


# -- disjoint union ------------------------------------------------------------------


def test_union_of_two_edges():
    k2 = ColouredGraph(Graph(["a", "b"], [("a", "b")]))
    u = disjoint_union(k2, k2)
    assert len(u.graph) == 4 and len(u.graph.edges) == 2 and len(u.colours) == 4


def test_union_with_empty_is_identity():
    g = ColouredGraph(path(["a", "b", "c"]))
    u = disjoint_union(ColouredGraph(Graph()), g)
    assert u.graph == g.graph and dict(u.colouring) == dict(g.colouring)
    assert disjoint_union(g, ColouredGraph(Graph())).graph == g.graph


def test_union_of_two_p3_multiplies():
    p3 = ColouredGraph(path(["a", "b", "c"]))
    u = disjoint_union(p3, p3)
    assert (len(u.graph), len(u.graph.edges)) == (6, 4)
    assert subset_coloured_poly(u) == coloured_indep_poly(u)
    p = subset_coloured_poly(p3)
    q = MultiPoly(("a#2", "b#2", "c#2"), p.terms)
    c1, c2 = extend_vars(p, q)
    assert c1 * c2 == coloured_indep_poly(u)


def test_union_multiplicative_random(rng):
    for _ in range(50):
        g1 = random_coloured(rng, rng.randint(0, 5), "r", "u")
        g2 = random_coloured(rng, rng.randint(0, 5), "s", "w")
        p1, p2 = extend_vars(coloured_indep_poly(g1), coloured_indep_poly(g2))
        u = coloured_indep_poly(disjoint_union(g1, g2))
        assert p1 * p2 == u.extend_vars(p1.vars)


def test_union_renames_clashes():
    g = ColouredGraph(Graph(["a"]), {"a": "red"})
    u = disjoint_union(g, g)
    assert u.graph.vertices == ("a", "a#2")
    assert u.colours == ("red", "red#2")


# -- glue --------------------------------------------------------------------------


def test_glue_two_edges_gives_p4():
    g1 = ColouredGraph(Graph(["a", "b"], [("a", "b")]))
    g2 = ColouredGraph(Graph(["c", "d"], [("c", "d")]))
    out = glue(g1, g2, GlueSpec("b", "c"))
    assert edge_set(out.graph) == edge_set(path(["a", "b", "c", "d"]))
    assert indep_poly(out.graph) == (1, 4, 3)


def test_worked_glue_example():
    g1 = ColouredGraph(
        Graph(["1", "2", "3", "4", "5"], [("1", "2"), ("2", "3"), ("1", "3"), ("3", "5"), ("4", "1"), ("4", "2")]),
        {"1": "green", "2": "red", "3": "red", "4": "green", "5": "green"},
    )
    g2 = ColouredGraph(
        Graph(["6", "7", "8", "9", "10", "11"], [("6", "9"), ("6", "8"), ("11", "10"), ("7", "8"), ("6", "11")]),
        {"6": "yellow", "7": "blue", "8": "blue", "9": "blue", "10": "yellow", "11": "black"},
    )
    out = glue(g1, g2, GlueSpec("red", "blue"))
    added = edge_set(out.graph) - edge_set(g1.graph) - edge_set(g2.graph)
    expected = {frozenset(e) for e in ["27", "28", "29", "37", "38", "39", "89", "79"]}
    assert added == expected
    assert out.colour_class("red") == ("2", "3", "7", "8", "9")
    assert "blue" not in out.colours


def test_glue_free_colours_adds_one_edge(rng):
    for _ in range(100):
        g1 = random_coloured(rng, rng.randint(1, 6), "r", "u")
        g2 = random_coloured(rng, rng.randint(1, 6), "s", "w")
        free1, free2 = g1.free_colours(), g2.free_colours()
        if not free1 or not free2:
            continue
        out = glue(g1, g2, GlueSpec(rng.choice(free1), rng.choice(free2)))
        assert len(out.graph.edges) == len(g1.graph.edges) + len(g2.graph.edges) + 1


def test_glue_unknown_colour():
    g = ColouredGraph(Graph(["a"]))
    with pytest.raises(InputError):
        glue(g, g, GlueSpec("zz", "a"))
    with pytest.raises(InputError):
        glue(g, g, GlueSpec("a", "zz"))


# -- partitioned glueing and the W4 construction -----------------------------------


def test_l1_glued_to_l1_is_w4():
    out = glue_partitioned(leafy_star(1), leafy_star(1), GlueSpec("x1", "x1"))
    w4 = replace_w4(Graph(["u", "v"], [("u", "v")]))
    assert (len(out.graph), len(out.graph.edges)) == (len(w4), len(w4.edges)) == (8, 7)
    assert sorted(Counter(out.graph.degree(v) for v in out.graph.vertices).items()) == sorted(
        Counter(w4.degree(v) for v in w4.vertices).items()
    )
    assert indep_poly(out.graph) == indep_poly(w4) == subset_indep_counts(w4)
    assert out.free_colours() == ()
    assert out.coloured.colours == ("x",)


def test_p3_recipe():
    mid = glue_partitioned(leafy_star(2), leafy_star(1), GlueSpec("x1", "x1"))
    out = glue_partitioned(mid, leafy_star(1), GlueSpec("x2", "x1"))
    target = replace_w4(path(["a", "b", "c"]))
    assert (len(out.graph), len(out.graph.edges)) == (len(target), len(target.edges)) == (15, 14)
    assert subset_indep_counts(out.graph) == subset_indep_counts(target) == indep_poly(target)


def test_partitioned_glue_keeps_invariant(rng):
    g = leafy_star(3)
    for n in (1, 2, 3):
        g = glue_partitioned(g, leafy_star(n), GlueSpec(g.free_colours()[0], "x1"))
        assert all(c == g.bound_colour or g.coloured.is_free(c) for c in g.coloured.colours)


def test_partitioned_glue_rejects_bound_colour():
    with pytest.raises(InputError):
        glue_partitioned(leafy_star(1), leafy_star(1), GlueSpec("x", "x1"))


def test_glue_free_within_closes_cycle():
    g = glue_free_within(leafy_star(2), "x1", "x2")
    assert g.graph.has_edge("f1", "f2")
    assert g.free_colours() == ()


def test_replace_w4_k2():
    w4 = replace_w4(Graph(["u", "v"], [("u", "v")]))
    assert (len(w4), len(w4.edges)) == (8, 7)
    assert sorted(w4.degree(v) for v in w4.vertices) == [1, 1, 1, 1, 2, 2, 3, 3]


def test_replace_w4_k3_and_empty():
    k3 = Graph("abc", combinations("abc", 2))
    out = replace_w4(k3)
    assert (len(out), len(out.edges)) == (21, 21)
    empty = Graph(["a", "b", "c"])
    assert replace_w4(empty) == empty
    assert replace_w4(Graph()) == Graph()


def test_replace_w4_counts_random(rng):
    for _ in range(200):
        g = random_graph(rng, rng.randint(0, 6))
        out = replace_w4(g)
        assert len(out) == len(g) + 6 * len(g.edges)
        assert len(out.edges) == 7 * len(g.edges)
        for v in g.vertices:
            assert out.degree(v) == 2 * g.degree(v)


def connected_graphs(max_n):
    for n in range(1, max_n + 1):
        verts = [f"v{i}" for i in range(n)]
        pairs = list(combinations(verts, 2))
        for mask in range(1 << len(pairs)):
            g = Graph(verts, [p for b, p in enumerate(pairs) if mask >> b & 1])
            if len(g.components()) == 1:
                yield g


def test_leafy_star_reconstruction_of_w4():
    count = 0
    for g in connected_graphs(4):
        built = w4_from_leafy_stars(g)
        target = replace_w4(g)
        assert (len(built.graph), len(built.graph.edges)) == (len(target), len(target.edges))
        assert sorted(built.graph.degree(v) for v in built.graph.vertices) == sorted(
            target.degree(v) for v in target.vertices
        )
        assert indep_poly(built.graph) == indep_poly(target)
        assert built.free_colours() == ()
        count += 1
    # connected labelled graphs on 1..4 vertices: 1 + 1 + 4 + 38
    assert count == 44


def test_reconstruction_of_disconnected_graph():
    g = Graph(["a", "b", "c", "d"], [("a", "b")])
    assert indep_poly(w4_from_leafy_stars(g).graph) == indep_poly(replace_w4(g))


# -- leafy stars ---------------------------------------------------------------


def test_leafy_star_1_is_a_path():
    g = leafy_star(1)
    assert edge_set(g.graph) == edge_set(path(["b1", "c", "f1", "l1"]))
    assert [g.coloured.colouring[v] for v in ("b1", "c", "f1", "l1")] == ["x", "x", "x1", "x"]


@pytest.mark.parametrize("n", [1, 2, 3, 5])
def test_leafy_star_counts(n):
    g = leafy_star(n)
    assert (len(g.graph), len(g.graph.edges)) == (3 * n + 1, 3 * n)
    assert g.free_colours() == tuple(f"x{i}" for i in range(1, n + 1))


@pytest.mark.parametrize("n", [0, -1])
def test_leafy_star_rejects(n):
    with pytest.raises(InputError):
        leafy_star(n)


# -- JSON ---------------------------------------------------------------------


def test_json_round_trips():
    for g in (path(["a", "b"]), ColouredGraph(path(["a", "b", "c"]), {"a": "r", "b": "r", "c": "s"}), leafy_star(2)):
        data = json.loads(json.dumps(g.to_json()))
        assert graph_from_json(data) == g


@pytest.mark.parametrize(
    "data",
    [
        {"edges": []},
        {"vertices": ["a"], "edges": [["a"]]},
        {"vertices": ["a"], "edges": [], "colours": {"b": "r"}},
        {"vertices": ["a", "b"], "edges": [], "colours": {"a": "r"}},
        {"vertices": ["a"], "edges": [], "bound_colour": "x"},
        {"vertices": [1], "edges": []},
    ],
)
def test_bad_json(data):
    with pytest.raises(InputError):
        graph_from_json(data)
