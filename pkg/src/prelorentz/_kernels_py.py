"""Pure-Python kernels.  ``_kernels.pyx`` mirrors these function for function."""

from __future__ import annotations

from fractions import Fraction

MEMO_LIMIT = 1 << 20


def _poly_mul(a: list, b: list) -> list:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _components(mask: int, adj: list) -> list:
    comps = []
    rest = mask
    while rest:
        low = rest & -rest
        comp = low
        frontier = low
        while frontier:
            b = frontier & -frontier
            frontier ^= b
            new = adj[b.bit_length() - 1] & mask & ~comp
            comp |= new
            frontier |= new
        comps.append(comp)
        rest &= ~comp
    return comps


def indep_counts(adj: list) -> list:
    """Independence sequence from neighbourhood bitmasks.

    Vertex elimination ``I(G) = I(G - v) + x I(G - N[v])`` on the
    max-degree vertex, with connected components multiplied separately and
    subproblems memoised by vertex mask (FIFO eviction past ``MEMO_LIMIT``).
    """
    memo: dict = {}

    def rec(mask: int) -> list:
        if not mask:
            return [1]
        hit = memo.get(mask)
        if hit is not None:
            return hit
        comps = _components(mask, adj)
        if len(comps) > 1:
            res = [1]
            for c in comps:
                res = _poly_mul(res, rec(c))
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
            if best_deg == 0:
                # single isolated vertex
                res = [1, 1]
            else:
                without = rec(mask & ~(1 << best))
                with_v = rec(mask & ~(adj[best] | (1 << best)))
                res = list(without) + [0] * max(0, len(with_v) + 1 - len(without))
                for i, c in enumerate(with_v):
                    res[i + 1] += c
        if len(memo) >= MEMO_LIMIT:
            del memo[next(iter(memo))]
        memo[mask] = res
        return res

    full = (1 << len(adj)) - 1
    out = rec(full)
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def charpoly(a: list) -> list:
    """Coefficients of det(tI - A), index = power of t (Faddeev-LeVerrier).

    Integer matrices stay in integer arithmetic; the division by ``k`` is exact.
    """
    n = len(a)
    integral = all(isinstance(x, int) for row in a for x in row)
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    # m holds M_k; start from M_1 = I.
    m = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for k in range(1, n + 1):
        am = [[sum(a[i][t] * m[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        tr = sum(am[i][i] for i in range(n))
        if integral:
            c = -(tr // k) if tr >= 0 else (-tr) // k
        else:
            c = Fraction(-tr) / k
            if c.denominator == 1:
                c = c.numerator
        coeffs[n - k] = c
        if k < n:
            for i in range(n):
                am[i][i] += c
            m = am
    return coeffs


def sign_changes(seq: list) -> int:
    last = 0
    count = 0
    for c in seq:
        if c:
            if last and (c > 0) != (last > 0):
                count += 1
            last = c
    return count


def positive_root_count(coeffs: list) -> int:
    """Descartes count for a real-rooted polynomial (index = power)."""
    k = 0
    while k < len(coeffs) and coeffs[k] == 0:
        k += 1
    return sign_changes(coeffs[k:])


def hessian_at(coeffs: dict, alpha: tuple, weights: dict) -> list:
    """Hessian of the ``alpha`` partial derivative of a homogeneous polynomial.

    Entry (i, j) is ``c[alpha + e_i + e_j] * (alpha + e_i + e_j)!`` where the
    factorial is taken componentwise; ``weights`` caches those factorials.
    """
    m = len(alpha)
    h = [[0] * m for _ in range(m)]
    base = list(alpha)
    for i in range(m):
        base[i] += 1
        for j in range(i, m):
            base[j] += 1
            key = tuple(base)
            c = coeffs.get(key)
            if c:
                v = c * weights[key]
                h[i][j] = v
                h[j][i] = v
            base[j] -= 1
        base[i] -= 1
    return h


def sweep_hessians(coeffs: dict, alphas: list, weights: dict, exhaustive: bool) -> list:
    """Return ``(position, positive_count)`` for every alpha whose Hessian has
    more than one positive eigenvalue; stops at the first one unless
    ``exhaustive``."""
    bad = []
    for pos, alpha in enumerate(alphas):
        h = hessian_at(coeffs, alpha, weights)
        npos = positive_root_count(charpoly(h))
        if npos > 1:
            bad.append((pos, npos))
            if not exhaustive:
                break
    return bad
