"""Independence polynomials: univariate, multivariate and coloured.

The main paths all use vertex elimination,
``I(G) = I(G - v) + x_v I(G - N[v])``, on the vertex of largest remaining
degree, multiplying connected components separately.
:func:`brute_force_indep_sets` is a deliberately separate backtracking
enumerator used as a test oracle.
"""

from __future__ import annotations

from . import kernels
from .exceptions import InputError
from .graphs import ColouredGraph, Graph, as_coloured, as_graph
from .polynomials import MultiPoly, identify_variables

BRUTE_FORCE_LIMIT = 30
MEMO_LIMIT = 1 << 18


def indep_poly(g: Graph) -> tuple[int, ...]:
    """Independence sequence ``(i_0, ..., i_alpha)`` of ``g``."""
    g = as_graph(g)
    return tuple(kernels.indep_counts(g.adjacency_masks()))


def indep_polynomial(g: Graph, var: str = "x") -> MultiPoly:
    """I(G; x) as a univariate :class:`MultiPoly`."""
    return MultiPoly((var,), {(k,): c for k, c in enumerate(indep_poly(g))})


def _coloured_elimination(adj: list[int], slots: list[int], nvars: int) -> dict:
    """Terms of sum over independent S of prod x_{slot(v)}, as exponent dict."""
    one = (0,) * nvars
    memo: dict[int, dict] = {}

    def mul(a: dict, b: dict) -> dict:
        out: dict = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return out

    def components(mask: int) -> list[int]:
        comps = []
        rest = mask
        while rest:
            comp = frontier = rest & -rest
            while frontier:
                b = frontier & -frontier
                frontier ^= b
                new = adj[b.bit_length() - 1] & mask & ~comp
                comp |= new
                frontier |= new
            comps.append(comp)
            rest &= ~comp
        return comps

    def rec(mask: int) -> dict:
        if not mask:
            return {one: 1}
        hit = memo.get(mask)
        if hit is not None:
            return hit
        comps = components(mask)
        if len(comps) > 1:
            res = {one: 1}
            for c in comps:
                res = mul(res, rec(c))
        else:
            best, best_deg = -1, -1
            m = mask
            while m:
                b = m & -m
                m ^= b
                v = b.bit_length() - 1
                d = bin(adj[v] & mask).count("1")
                if d > best_deg:
                    best, best_deg = v, d
            res = dict(rec(mask & ~(1 << best)))
            s = slots[best]
            for e, c in rec(mask & ~(adj[best] | (1 << best))).items():
                ne = e[:s] + (e[s] + 1,) + e[s + 1:]
                res[ne] = res.get(ne, 0) + c
        if len(memo) >= MEMO_LIMIT:
            del memo[next(iter(memo))]
        memo[mask] = res
        return res

    return rec((1 << len(adj)) - 1)


def multivariate_indep_poly(g: Graph) -> MultiPoly:
    """M(G): one variable per vertex, named after the vertex."""
    g = as_graph(g)
    n = len(g)
    terms = _coloured_elimination(g.adjacency_masks(), list(range(n)), n)
    return MultiPoly(g.vertices, terms)


def coloured_indep_poly(g: ColouredGraph) -> MultiPoly:
    """C(G): M(G) with the variables of equally coloured vertices identified.

    Variables are the colour names, in order of first appearance.  Computed
    by elimination directly over the colour variables, which agrees exactly
    with ``identify_variables(multivariate_indep_poly(g), colouring)``.
    """
    cg = as_coloured(g)
    colours = cg.colours
    slot = {c: i for i, c in enumerate(colours)}
    slots = [slot[cg.colouring[v]] for v in cg.graph.vertices]
    terms = _coloured_elimination(cg.graph.adjacency_masks(), slots, len(colours))
    return MultiPoly(colours, terms)


def coloured_via_identification(g: ColouredGraph) -> MultiPoly:
    """Reference route: identify variables of M(G) along the colouring."""
    cg = as_coloured(g)
    return identify_variables(multivariate_indep_poly(cg.graph), dict(cg.colouring), cg.colours)


def brute_force_indep_sets(g: Graph, limit: int = BRUTE_FORCE_LIMIT) -> tuple[int, ...]:
    """Count independent sets by size with plain backtracking.

    Shares no code with the elimination path.  Refuses graphs with more than
    ``limit`` vertices.
    """
    g = as_graph(g)
    n = len(g)
    if n > limit:
        raise InputError(f"brute force limited to {limit} vertices, graph has {n}")
    order = list(g.vertices)
    later_nbrs = [
        {order.index(w) for w in g.neighbours(v) if order.index(w) > i} for i, v in enumerate(order)
    ]
    counts = [0] * (n + 1)
    blocked = [0] * n

    def extend(start: int, size: int) -> None:
        counts[size] += 1
        for i in range(start, n):
            if blocked[i]:
                continue
            for j in later_nbrs[i]:
                blocked[j] += 1
            extend(i + 1, size + 1)
            for j in later_nbrs[i]:
                blocked[j] -= 1

    extend(0, 0)
    while len(counts) > 1 and counts[-1] == 0:
        counts.pop()
    return tuple(counts)
