"""Shared oracles and random generators for the test suite.

The oracles here deliberately avoid the library's elimination code: they
enumerate vertex subsets directly.
"""

from __future__ import annotations

import random
from itertools import combinations

import pytest

from prelorentz import ColouredGraph, Graph, MultiPoly


def random_graph(rng: random.Random, n: int, p: float | None = None, prefix: str = "v") -> Graph:
    p = rng.random() if p is None else p
    verts = [f"{prefix}{i}" for i in range(n)]
    edges = [(a, b) for a, b in combinations(verts, 2) if rng.random() < p]
    return Graph(verts, edges)


def random_coloured(rng: random.Random, n: int, colour_prefix: str, vertex_prefix: str) -> ColouredGraph:
    g = random_graph(rng, n, prefix=vertex_prefix)
    ncol = rng.randint(1, max(n, 1))
    colouring = {v: f"{colour_prefix}{rng.randrange(ncol)}" for v in g.vertices}
    return ColouredGraph(g, colouring)


def subset_is_independent(g: Graph, verts) -> bool:
    return not any(g.has_edge(a, b) for a, b in combinations(verts, 2))


def subset_indep_counts(g: Graph) -> tuple[int, ...]:
    """Independent sets by size, by testing all 2^n subsets."""
    counts = [0] * (len(g) + 1)
    for mask in range(1 << len(g)):
        verts = [v for i, v in enumerate(g.vertices) if mask >> i & 1]
        if subset_is_independent(g, verts):
            counts[len(verts)] += 1
    while len(counts) > 1 and counts[-1] == 0:
        counts.pop()
    return tuple(counts)


def subset_coloured_poly(cg: ColouredGraph) -> MultiPoly:
    """C(G) by enumerating subsets with a bitmask independence test."""
    g = cg.graph
    colours = cg.colours
    slot = {c: i for i, c in enumerate(colours)}
    vslot = [slot[cg.colouring[v]] for v in g.vertices]
    adj = g.adjacency_masks()
    terms: dict = {}
    for mask in range(1 << len(g)):
        ok = True
        exp = [0] * len(colours)
        m = mask
        while m:
            b = m & -m
            m ^= b
            i = b.bit_length() - 1
            if adj[i] & mask:
                ok = False
                break
            exp[vslot[i]] += 1
        if ok:
            e = tuple(exp)
            terms[e] = terms.get(e, 0) + 1
    return MultiPoly(colours, terms)


def expand_linear_product(vars, factors) -> dict:
    """Expand a product of linear forms by choosing one term from each factor.

    Each factor is a mapping var -> coefficient.  Returns exponent -> coefficient.
    """
    index = {v: i for i, v in enumerate(vars)}
    out = {(0,) * len(vars): 1}
    for f in factors:
        nxt: dict = {}
        for e, c in out.items():
            for v, a in f.items():
                ne = list(e)
                ne[index[v]] += 1
                ne = tuple(ne)
                nxt[ne] = nxt.get(ne, 0) + c * a
        out = nxt
    return {e: c for e, c in out.items() if c}


@pytest.fixture
def rng():
    return random.Random(20240611)


# -- acceptance reporting -------------------------------------------------------

_ACCEPTANCE: dict[int, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): one acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("acceptance")
    if mark is None:
        return
    number, title = mark.args
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _ACCEPTANCE[number] = (title, "PASS" if report.passed else "FAIL")


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        title, verdict = _ACCEPTANCE[number]
        terminalreporter.write_line(f"{verdict} criterion {number:>2}: {title}")
