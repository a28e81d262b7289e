"""Lorentzian and pre-Lorentzian certification.

A homogeneous polynomial of degree ``d`` with non-negative coefficients is
Lorentzian when its support is M-convex and every ``(d-2)``-th partial
derivative (a quadratic form) has a Hessian with at most one positive
eigenvalue.  Eigenvalue signs are counted exactly from the characteristic
polynomial with Descartes' rule of signs.

The derivative sweep does not differentiate symbolically.  For a multiset
``alpha`` of size ``d-2`` the Hessian of ``d^alpha p`` is

    H[i][j] = c[alpha + e_i + e_j] * (alpha + e_i + e_j)!

(factorial taken componentwise), so only multisets reachable from the
support by removing two units can give a nonzero Hessian; all others are the
zero matrix and pass trivially.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from . import kernels
from .exceptions import InputError
from .graphs import PartitionedGraph
from .independence import coloured_indep_poly
from .matrices import (
    Matrix,
    determinant,
    positive_eigenvalue_count,
    principal_minor_sum,
    trace,
)
from .polynomials import (
    MultiPoly,
    format_coefficient,
    grlex_key,
    homogenize,
    partial_derivative,
)

CERTIFIED = "certified"
REFUTED = "refuted"
INCONCLUSIVE = "inconclusive"

DEFAULT_MAX_HESSIANS = 10**6


@dataclass
class Certificate:
    """Outcome of a certification run.

    ``witness`` is empty on success.  On refutation it holds enough data to
    re-check the failure without re-running the search: a negative term, an
    M-convex exchange failure ``(alpha, beta, i)`` with ``i`` counted from 1,
    or a derivative multiset with its Hessian and positive-eigenvalue count.
    """

    verdict: str
    witness: dict = field(default_factory=dict)
    k: int | None = None
    hessians_checked: int = 0
    derivatives_total: int = 0
    failures: list = field(default_factory=list)

    @property
    def certified(self) -> bool:
        return self.verdict == CERTIFIED

    def __bool__(self) -> bool:
        return self.certified

    def to_json(self) -> dict:
        out: dict = {"verdict": self.verdict}
        if self.k is not None:
            out["k"] = self.k
        if self.witness:
            out["witness"] = self.witness
        out["hessians_checked"] = self.hessians_checked
        out["derivatives_total"] = self.derivatives_total
        if self.failures:
            out["failures"] = self.failures
        return out


def _matrix_json(m: Matrix) -> list:
    return [[format_coefficient(x) for x in row] for row in m]


# -- M-convexity --------------------------------------------------------------


def is_m_convex(points: Iterable[Sequence[int]]) -> Certificate:
    """Check the exchange axiom; pairs are scanned in canonical (grlex) term order."""
    pts = sorted({tuple(p) for p in points}, key=grlex_key)
    if not pts:
        return Certificate(CERTIFIED)
    n = len(pts[0])
    if any(len(p) != n for p in pts):
        raise InputError("all points must have the same length")
    members = set(pts)
    for a in pts:
        for b in pts:
            if a == b:
                continue
            for i in range(n):
                if a[i] <= b[i]:
                    continue
                ok = False
                for j in range(n):
                    if b[j] > a[j]:
                        cand = list(a)
                        cand[i] -= 1
                        cand[j] += 1
                        if tuple(cand) in members:
                            ok = True
                            break
                if not ok:
                    return Certificate(
                        REFUTED,
                        {"kind": "support_not_m_convex", "alpha": list(a), "beta": list(b), "i": i + 1},
                    )
    return Certificate(CERTIFIED)


def check_m_convex_witness(points: Iterable[Sequence[int]], witness: dict) -> bool:
    """True when the witness really exhibits a failed exchange in ``points``."""
    members = {tuple(p) for p in points}
    a, b, i = tuple(witness["alpha"]), tuple(witness["beta"]), witness["i"] - 1
    if a not in members or b not in members or not a[i] > b[i]:
        return False
    for j in range(len(a)):
        if b[j] > a[j]:
            cand = list(a)
            cand[i] -= 1
            cand[j] += 1
            if tuple(cand) in members:
                return False
    return True


# -- Hessians -----------------------------------------------------------------


def hessian(q2: MultiPoly) -> Matrix:
    """Constant Hessian of a quadratic form (or of zero)."""
    if q2.is_zero():
        return [[0] * q2.nvars for _ in range(q2.nvars)]
    if q2.degree() != 2 or not q2.is_homogeneous():
        raise InputError("hessian needs a homogeneous quadratic")
    m = q2.nvars
    h: Matrix = [[0] * m for _ in range(m)]
    for e, c in q2.terms.items():
        idx = [i for i, k in enumerate(e) for _ in range(k)]
        i, j = idx
        if i == j:
            h[i][i] = 2 * c
        else:
            h[i][j] = h[j][i] = c
    return h


def derivative_count(degree: int, nvars: int) -> int:
    """Number of (degree-2)-th derivative multisets over ``nvars`` variables."""
    if degree < 2 or nvars == 0:
        return 0
    return math.comb(degree - 2 + nvars - 1, nvars - 1)


def _multiset(alpha: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(i for i, k in enumerate(alpha) for _ in range(k))


def _candidate_alphas(support: Iterable[tuple[int, ...]], nvars: int) -> list[tuple[int, ...]]:
    cands: set[tuple[int, ...]] = set()
    for g in support:
        nz = [i for i, k in enumerate(g) if k]
        for a in range(len(nz)):
            i = nz[a]
            for b in range(a, len(nz)):
                j = nz[b]
                if i == j and g[i] < 2:
                    continue
                e = list(g)
                e[i] -= 1
                e[j] -= 1
                cands.add(tuple(e))
    return sorted(cands, key=_multiset)


def _weights(terms: dict) -> dict:
    return {e: math.prod(math.factorial(k) for k in e) for e in terms}


def _sweep_chunk(args):
    coeffs, alphas, weights, exhaustive, offset = args
    return [(offset + pos, npos) for pos, npos in kernels.sweep_hessians(coeffs, alphas, weights, exhaustive)]


def _default_workers() -> int:
    try:
        return max(1, int(os.environ.get("PRELORENTZ_WORKERS", "1")))
    except ValueError:
        return 1


def hessian_condition(
    p: MultiPoly,
    *,
    exhaustive: bool = False,
    max_hessians: int = DEFAULT_MAX_HESSIANS,
    workers: int | None = None,
) -> Certificate:
    """Check only the eigenvalue half of the definition on a homogeneous ``p``.

    Failures are reported in lexicographic multiset order regardless of the
    number of worker processes.
    """
    d = p.degree()
    total = derivative_count(d, p.nvars)
    if total > max_hessians:
        raise InputError(f"{total} derivative Hessians exceed the cap of {max_hessians}")
    if d < 2:
        return Certificate(CERTIFIED, derivatives_total=total)
    alphas = _candidate_alphas(p.terms, p.nvars)
    coeffs = dict(p.terms)
    weights = _weights(coeffs)
    workers = _default_workers() if workers is None else max(1, workers)
    if workers == 1 or len(alphas) < 256:
        bad = kernels.sweep_hessians(coeffs, alphas, weights, exhaustive)
        checked = len(alphas) if (exhaustive or not bad) else bad[0][0] + 1
    else:
        size = -(-len(alphas) // workers)
        jobs = [
            (coeffs, alphas[s:s + size], weights, exhaustive, s) for s in range(0, len(alphas), size)
        ]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_sweep_chunk, jobs))
        bad = sorted(x for part in parts for x in part)
        if not exhaustive:
            bad = bad[:1]
        checked = len(alphas) if (exhaustive or not bad) else bad[0][0] + 1
    if not bad:
        return Certificate(CERTIFIED, hessians_checked=checked, derivatives_total=total)

    def describe(pos: int, npos: int) -> dict:
        alpha = alphas[pos]
        return {
            "kind": "hessian_inertia",
            "derivative": [p.vars[i] for i in _multiset(alpha)],
            "hessian": _matrix_json(kernels.hessian_at(coeffs, alpha, weights)),
            "positive_eigenvalues": npos,
        }

    cert = Certificate(REFUTED, describe(*bad[0]), hessians_checked=checked, derivatives_total=total)
    if exhaustive:
        cert.failures = [describe(*b) for b in bad]
    return cert


def derivative_hessian(p: MultiPoly, derivative: Sequence[str]) -> Matrix:
    """Hessian of the given multiset derivative, by symbolic differentiation."""
    q = p
    for v in derivative:
        q = partial_derivative(q, v)
    return hessian(q)


def check_hessian_witness(p: MultiPoly, witness: dict) -> bool:
    """Recompute the witnessed Hessian symbolically and recount its eigenvalues."""
    h = derivative_hessian(p, witness["derivative"])
    return (
        _matrix_json(h) == witness["hessian"]
        and positive_eigenvalue_count(h) == witness["positive_eigenvalues"]
        and witness["positive_eigenvalues"] > 1
    )


def _first_negative(p: MultiPoly) -> dict | None:
    for e, c in p.sorted_terms():
        if c < 0:
            return {"kind": "negative_coefficient", "exp": list(e), "coef": format_coefficient(c)}
    return None


def is_lorentzian(
    p: MultiPoly,
    *,
    exhaustive: bool = False,
    max_hessians: int = DEFAULT_MAX_HESSIANS,
    workers: int | None = None,
) -> Certificate:
    if not p.is_homogeneous():
        raise InputError("is_lorentzian needs a homogeneous polynomial")
    if p.is_zero():
        return Certificate(CERTIFIED)
    neg = _first_negative(p)
    if neg:
        return Certificate(REFUTED, neg)
    mc = is_m_convex(p.terms)
    if not mc:
        return mc
    return hessian_condition(p, exhaustive=exhaustive, max_hessians=max_hessians, workers=workers)


def is_lorentzian_bivariate(p: MultiPoly) -> Certificate:
    """Coefficient test: non-negative, ultra log-concave, no internal zeros."""
    if p.nvars != 2:
        raise InputError("is_lorentzian_bivariate needs exactly two variables")
    if not p.is_homogeneous():
        raise InputError("is_lorentzian_bivariate needs a homogeneous polynomial")
    if p.is_zero():
        return Certificate(CERTIFIED)
    d = p.degree()
    seq = [p.coefficient((k, d - k)) for k in range(d + 1)]
    for k, c in enumerate(seq):
        if c < 0:
            return Certificate(REFUTED, {"kind": "negative_coefficient", "index": k})
    nz = [k for k, c in enumerate(seq) if c]
    for k in range(nz[0], nz[-1] + 1):
        if not seq[k]:
            return Certificate(REFUTED, {"kind": "internal_zero", "index": k})
    for k in range(1, d):
        lhs = Fraction(seq[k]) ** 2 / math.comb(d, k) ** 2
        rhs = Fraction(seq[k - 1] * seq[k + 1]) / (math.comb(d, k - 1) * math.comb(d, k + 1))
        if lhs < rhs:
            return Certificate(REFUTED, {"kind": "not_ultra_log_concave", "index": k})
    return Certificate(CERTIFIED)


def _fresh_name(base: str, taken: Sequence[str]) -> str:
    name = base
    while name in taken:
        name += "'"
    return name


def shift_by_xy(h: MultiPoly, x: str, y: str, k: int) -> MultiPoly:
    """(x y)^k * h, by exponent shift."""
    ix, iy = h.index(x), h.index(y)
    terms = {}
    for e, c in h.terms.items():
        ne = list(e)
        ne[ix] += k
        ne[iy] += k
        terms[tuple(ne)] = c
    return MultiPoly(h.vars, terms)


def pre_lorentzian_polynomial(g: PartitionedGraph) -> tuple[MultiPoly, str, str]:
    """Homogenised coloured independence polynomial with its bound and homogenising variables."""
    c = coloured_indep_poly(g.coloured)
    y = _fresh_name("y", c.vars)
    return homogenize(c, y), g.bound_colour, y


def is_pre_lorentzian(
    g: PartitionedGraph,
    k_max: int,
    *,
    max_hessians: int = DEFAULT_MAX_HESSIANS,
    workers: int | None = None,
) -> Certificate:
    """Search ``k = 0..k_max`` for ``(xy)^k * homog(C(g))`` being Lorentzian.

    Returns the smallest certifying ``k``.  Exhausting the range gives
    ``inconclusive``, not a proof of failure.  An M-convexity failure is a
    genuine refutation since shifting by ``(xy)^k`` cannot repair it.
    """
    if not isinstance(k_max, int) or k_max < 0:
        raise InputError("k_max must be a non-negative integer")
    if not len(g.graph):
        return Certificate(CERTIFIED, k=0)
    h, x, y = pre_lorentzian_polynomial(g)
    mc = is_m_convex(h.terms)
    if not mc:
        return mc
    checked = 0
    last: Certificate | None = None
    for k in range(k_max + 1):
        q = shift_by_xy(h, x, y, k)
        cert = hessian_condition(q, max_hessians=max_hessians, workers=workers)
        checked += cert.hessians_checked
        if cert:
            cert.k = k
            cert.hessians_checked = checked
            return cert
        last = cert
    witness = dict(last.witness) if last else {}
    witness["k"] = k_max
    return Certificate(
        INCONCLUSIVE,
        witness,
        hessians_checked=checked,
        derivatives_total=last.derivatives_total if last else 0,
    )


# -- reduced Hessians -----------------------------------------------------------


@dataclass(frozen=True)
class ReducedHessianParams:
    """Block size ``n`` and the six non-negative entries of the structured matrix."""

    n: int
    a: Fraction | int
    b: Fraction | int
    c: Fraction | int
    d: Fraction | int
    e: Fraction | int
    f: Fraction | int

    def __post_init__(self):
        for name in "abcdef":
            v = getattr(self, name)
            if isinstance(v, bool) or not isinstance(v, (int, Fraction)):
                raise InputError(f"parameter {name} must be an exact rational")
            if v < 0:
                raise InputError(f"parameter {name} must be non-negative")


def structured_matrix(params: ReducedHessianParams) -> Matrix:
    """The ``(n+2) x (n+2)`` symmetric matrix with a zero-diagonal ``a`` block,
    then rows of ``b`` and ``c``, closed by ``[[d, f], [f, e]]``."""
    n, a, b, c, d, e, f = (params.n, params.a, params.b, params.c, params.d, params.e, params.f)
    if n < 1:
        raise InputError("block size must be positive")
    m: Matrix = [[0 if i == j else a for j in range(n)] + [b, c] for i in range(n)]
    m.append([b] * n + [d, f])
    m.append([c] * n + [f, e])
    return m


def reduced_hessian(params: ReducedHessianParams) -> Matrix:
    """3x3 (non-symmetric) matrix sharing the remaining eigenvalues of the structured one."""
    n = params.n
    if n < 2:
        raise InputError("reduced_hessian needs n >= 2")
    a, b, c, d, e, f = params.a, params.b, params.c, params.d, params.e, params.f
    return [[(n - 1) * a, b, c], [n * b, d, f], [n * c, f, e]]


def extract_params(m: Matrix) -> ReducedHessianParams | None:
    """Read ``(n, a..f)`` off a matrix of the structured shape, or None if it is not."""
    size = len(m)
    n = size - 2
    if n < 1:
        return None
    try:
        p = ReducedHessianParams(
            n,
            m[0][1] if n > 1 else 0,
            m[n][0],
            m[n + 1][0],
            m[n][n],
            m[n + 1][n + 1],
            m[n][n + 1],
        )
    except InputError:
        return None
    return p if structured_matrix(p) == m else None


def descartes_positive_sign_test(a: Sequence[Sequence]) -> bool:
    """Sufficient test for exactly one positive eigenvalue of a 3x3 real-spectrum matrix:
    positive trace, non-positive sum of principal 2x2 minors, non-negative determinant."""
    if len(a) != 3 or any(len(r) != 3 for r in a):
        raise InputError("descartes_positive_sign_test needs a 3x3 matrix")
    return trace(a) > 0 and principal_minor_sum(a, 2) <= 0 and determinant(a) >= 0


def case_reduced_hessian(case: int, n: int, k: int) -> Matrix:
    """Closed-form reduced Hessian for the x-derivative order ``l = k-1, k, k+1``
    (cases 2, 3, 4) of ``(xy)^k (x y^(n-1) + prod (x + x_i + y))``, after
    removing the common factorial factor."""
    if case not in (2, 3, 4):
        raise InputError("case must be 2, 3 or 4")
    if n < 3 or k < 0:
        raise InputError("need n >= 3 and k >= 0")
    C = math.comb
    if case == 2:
        return [
            [0, k, 0],
            [n * k, k * (n + 1) * (k + 1), k * (n + k)],
            [0, k * (n + k), 0],
        ]
    if case == 3:
        return [
            [n - 1, (k + 1) * (n - 1), n + k - 1],
            [n * (k + 1) * (n - 1), (k + 2) * (k + 1) * C(n, 2), (k + 1) * (n + k - 1) * (n + 1)],
            [n * (n + k - 1), (k + 1) * (n + k - 1) * (n + 1), (n + k) * (n + k - 1)],
        ]
    return [
        [(n - 1) * (n - 2), (k + 2) * C(n - 1, 2), (n + k - 2) * (n - 1)],
        [n * (k + 2) * C(n - 1, 2), (k + 3) * (k + 2) * C(n, 3), (k + 2) * (n + k - 2) * C(n, 2)],
        [n * (n + k - 2) * (n - 1), (k + 2) * (n + k - 2) * C(n, 2), (n + 1) * (n + k - 1) * (n + k - 2)],
    ]


def case_leading_matrix(case: int, n: int) -> Matrix:
    """Cases 3 and 4 with every k-dependent factor removed; its determinant
    is the leading k^4 coefficient of the reduced Hessian's determinant."""
    C = math.comb
    if case == 3:
        return [[n - 1, n - 1, 1], [n * (n - 1), C(n, 2), n + 1], [n, n + 1, 1]]
    if case == 4:
        return [
            [(n - 1) * (n - 2), C(n - 1, 2), n - 1],
            [n * C(n - 1, 2), C(n, 3), C(n, 2)],
            [n * (n - 1), C(n, 2), n + 1],
        ]
    raise InputError("leading matrix defined for cases 3 and 4")


def leafy_star_q(n: int, k: int) -> MultiPoly:
    """``x^(k+1) y^(n+k-1) + x^k y^k prod_i (x + x_i + y)`` over ``(x1..xn, x, y)``."""
    vars = tuple(f"x{i}" for i in range(1, n + 1)) + ("x", "y")
    X = MultiPoly.variable(vars, "x")
    Y = MultiPoly.variable(vars, "y")
    prod = MultiPoly.constant(vars, 1)
    for i in range(1, n + 1):
        prod = prod * (X + MultiPoly.variable(vars, f"x{i}") + Y)
    return MultiPoly.monomial(vars, {"x": k + 1, "y": n + k - 1}) + MultiPoly.monomial(
        vars, {"x": k, "y": k}
    ) * prod


_CASE_L = {2: -1, 3: 0, 4: 1}


def case_factor(case: int, n: int, k: int) -> int:
    l = k + _CASE_L[case]
    return math.factorial(l) * math.factorial(n + 2 * k - l - 2)


def direct_case_hessian(case: int, n: int, k: int) -> Matrix:
    """Full Hessian of ``d_x^l d_y^(n+2k-l-2) q`` by symbolic differentiation."""
    l = k + _CASE_L[case]
    if l < 0:
        raise InputError("x-derivative order would be negative")
    q = leafy_star_q(n, k)
    q = partial_derivative(q, "x", l)
    q = partial_derivative(q, "y", n + 2 * k - l - 2)
    return hessian(q)


def verify_case_matrix_against_direct_hessian(case: int, n: int, k: int) -> bool:
    """Differentiate, reduce and rescale directly, then compare with the closed form."""
    if case not in (2, 3, 4):
        raise InputError("case must be 2, 3 or 4")
    if not (3 <= n <= 5 and 0 <= k <= 4):
        raise InputError("direct check limited to 3 <= n <= 5, 0 <= k <= 4")
    if k + _CASE_L[case] < 0:
        raise InputError("case 2 needs k >= 1")
    h = direct_case_hessian(case, n, k)
    params = extract_params(h)
    if params is None:
        return False
    red = reduced_hessian(params)
    factor = case_factor(case, n, k)
    if any(x % factor for row in red for x in row):
        return False
    scaled = [[x // factor for x in row] for row in red]
    return scaled == case_reduced_hessian(case, n, k)
