# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled kernels; same contracts as ``_kernels_py``.

Vertex sets are ``uint64`` masks, so ``indep_counts`` handles at most 64
vertices and defers to the Python kernel beyond that.  Coefficients stay
Python integers (arbitrary precision); the gain comes from typed loops.
"""

from fractions import Fraction

from libc.stdint cimport uint64_t

from . import _kernels_py

cdef extern from *:
    int __builtin_popcountll(unsigned long long)
    int __builtin_ctzll(unsigned long long)

MEMO_LIMIT = _kernels_py.MEMO_LIMIT


cdef list _poly_mul(list a, list b):
    cdef Py_ssize_t i, j, la = len(a), lb = len(b)
    cdef list out = [0] * (la + lb - 1)
    for i in range(la):
        x = a[i]
        if x:
            for j in range(lb):
                out[i + j] += x * b[j]
    return out


cdef class _IndepCounter:
    cdef uint64_t adj[64]
    cdef int n
    cdef dict memo
    cdef Py_ssize_t limit

    def __init__(self, list masks, Py_ssize_t limit):
        cdef int i
        self.n = len(masks)
        for i in range(self.n):
            self.adj[i] = <uint64_t>masks[i]
        self.memo = {}
        self.limit = limit

    cdef uint64_t _component(self, uint64_t mask, uint64_t seed):
        cdef uint64_t comp = seed, frontier = seed, new
        cdef int v
        while frontier:
            v = __builtin_ctzll(frontier)
            frontier &= frontier - 1
            new = self.adj[v] & mask & ~comp
            comp |= new
            frontier |= new
        return comp

    cdef list rec(self, uint64_t mask):
        cdef uint64_t comp, rest, m
        cdef int v, d, best, best_deg
        cdef list res, without, with_v
        cdef Py_ssize_t i
        if mask == 0:
            return [1]
        key = mask
        hit = self.memo.get(key)
        if hit is not None:
            return <list>hit
        comp = self._component(mask, mask & (~mask + 1))
        if comp != mask:
            res = [1]
            rest = mask
            while rest:
                comp = self._component(mask, rest & (~rest + 1))
                res = _poly_mul(res, self.rec(comp))
                rest &= ~comp
        else:
            best = -1
            best_deg = -1
            m = mask
            while m:
                v = __builtin_ctzll(m)
                m &= m - 1
                d = __builtin_popcountll(self.adj[v] & mask)
                if d > best_deg:
                    best = v
                    best_deg = d
            if best_deg == 0:
                res = [1, 1]
            else:
                without = self.rec(mask & ~((<uint64_t>1) << best))
                with_v = self.rec(mask & ~(self.adj[best] | ((<uint64_t>1) << best)))
                res = list(without)
                if len(with_v) + 1 > len(res):
                    res.extend([0] * (len(with_v) + 1 - len(res)))
                for i in range(len(with_v)):
                    res[i + 1] += with_v[i]
        if len(self.memo) >= self.limit:
            del self.memo[next(iter(self.memo))]
        self.memo[key] = res
        return res


def indep_counts(list adj):
    cdef int n = len(adj)
    if n > 64:
        return _kernels_py.indep_counts(adj)
    cdef uint64_t full = (<uint64_t>0xFFFFFFFFFFFFFFFF) if n == 64 else (((<uint64_t>1) << n) - 1)
    out = list(_IndepCounter(adj, MEMO_LIMIT).rec(full))
    while len(out) > 1 and out[len(out) - 1] == 0:
        out.pop()
    return out


def charpoly(list a):
    cdef Py_ssize_t n = len(a), i, j, t, k
    cdef bint integral = True
    for row in a:
        for x in row:
            if not isinstance(x, int):
                integral = False
    cdef list coeffs = [0] * (n + 1)
    coeffs[n] = 1
    cdef list m = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    cdef list am, arow, amrow
    for k in range(1, n + 1):
        am = []
        for i in range(n):
            arow = <list>a[i]
            amrow = [0] * n
            for t in range(n):
                x = arow[t]
                if x:
                    mrow = <list>m[t]
                    for j in range(n):
                        amrow[j] += x * mrow[j]
            am.append(amrow)
        tr = 0
        for i in range(n):
            tr += (<list>am[i])[i]
        if integral:
            c = -tr // k
        else:
            c = Fraction(-tr) / k
            if c.denominator == 1:
                c = c.numerator
        coeffs[n - k] = c
        if k < n:
            for i in range(n):
                (<list>am[i])[i] += c
            m = am
    return coeffs


def sign_changes(seq):
    cdef int count = 0
    last = 0
    for c in seq:
        if c:
            if last and (c > 0) != (last > 0):
                count += 1
            last = c
    return count


def positive_root_count(list coeffs):
    cdef Py_ssize_t k = 0, n = len(coeffs)
    while k < n and coeffs[k] == 0:
        k += 1
    return sign_changes(coeffs[k:])


def hessian_at(dict coeffs, tuple alpha, dict weights):
    cdef Py_ssize_t m = len(alpha), i, j
    cdef list h = [[0] * m for _ in range(m)]
    cdef list base = list(alpha)
    for i in range(m):
        base[i] += 1
        for j in range(i, m):
            base[j] += 1
            key = tuple(base)
            c = coeffs.get(key)
            if c:
                v = c * weights[key]
                (<list>h[i])[j] = v
                (<list>h[j])[i] = v
            base[j] -= 1
        base[i] -= 1
    return h


def sweep_hessians(dict coeffs, list alphas, dict weights, bint exhaustive):
    cdef list bad = []
    cdef Py_ssize_t pos
    cdef int npos
    for pos in range(len(alphas)):
        h = hessian_at(coeffs, alphas[pos], weights)
        npos = positive_root_count(charpoly(h))
        if npos > 1:
            bad.append((pos, npos))
            if not exhaustive:
                break
    return bad
