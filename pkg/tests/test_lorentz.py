from fractions import Fraction
from itertools import product

import pytest

from prelorentz import (
    Graph,
    PartitionedGraph,
    ColouredGraph,
    leafy_star,
)
from prelorentz.exceptions import InputError
from prelorentz.lorentz import (
    CERTIFIED,
    INCONCLUSIVE,
    REFUTED,
    ReducedHessianParams,
    case_leading_matrix,
    case_reduced_hessian,
    check_hessian_witness,
    check_m_convex_witness,
    derivative_count,
    descartes_positive_sign_test,
    hessian,
    hessian_condition,
    is_lorentzian,
    is_lorentzian_bivariate,
    is_m_convex,
    is_pre_lorentzian,
    leafy_star_q,
    pre_lorentzian_polynomial,
    reduced_hessian,
    shift_by_xy,
    structured_matrix,
    verify_case_matrix_against_direct_hessian,
)
from prelorentz.matrices import charpoly, determinant, positive_eigenvalue_count
from prelorentz.polynomials import MultiPoly, homogenize, partial_derivative, support
from prelorentz.independence import coloured_indep_poly


def var(vars, name):
    return MultiPoly.variable(vars, name)


def linear_product(vars, n_free):
    x, y = var(vars, "x"), var(vars, "y")
    p = MultiPoly.constant(vars, 1)
    for i in range(1, n_free + 1):
        p = p * (x + var(vars, f"x{i}") + y)
    return p


# -- M-convexity -------------------------------------------------------------


def test_simplex_is_m_convex():
    assert is_m_convex([(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    assert is_m_convex([])


def test_two_squares_witness():
    cert = is_m_convex([(2, 0), (0, 2)])
    assert cert.verdict == REFUTED
    assert cert.witness == {"kind": "support_not_m_convex", "alpha": [2, 0], "beta": [0, 2], "i": 1}
    assert check_m_convex_witness([(2, 0), (0, 2)], cert.witness)


def test_product_support_is_m_convex():
    vars = ("x1", "x2", "x3", "x", "y")
    assert is_m_convex(support(linear_product(vars, 3)))


def test_mixed_lengths_rejected():
    with pytest.raises(InputError):
        is_m_convex([(1, 0), (1,)])


def test_m_convex_translation_invariance_and_witnesses(rng):
    refuted = 0
    for _ in range(300):
        n = rng.randint(1, 3)
        d = rng.randint(1, 3)
        pts = {tuple(rng.randint(0, d) for _ in range(n)) for _ in range(rng.randint(1, 6))}
        cert = is_m_convex(pts)
        shift = tuple(rng.randint(-3, 3) for _ in range(n))
        moved = [tuple(a + s for a, s in zip(p, shift)) for p in pts]
        assert bool(is_m_convex(moved)) == bool(cert)
        if not cert:
            refuted += 1
            assert check_m_convex_witness(pts, cert.witness)
    assert refuted > 50


def test_bad_m_convex_witness_rejected():
    pts = [(1, 0), (0, 1)]
    assert not check_m_convex_witness(pts, {"alpha": [1, 0], "beta": [0, 1], "i": 1})


# -- Hessians ---------------------------------------------------------------------


def test_hessian_examples():
    vars = ("x", "y")
    x, y = var(vars, "x"), var(vars, "y")
    assert hessian(x * y) == [[0, 1], [1, 0]]
    assert hessian(x * x) == [[2, 0], [0, 0]]
    assert hessian(MultiPoly.zero(vars)) == [[0, 0], [0, 0]]
    with pytest.raises(InputError):
        hessian(x)
    with pytest.raises(InputError):
        hessian(x * x + y)


def leafy2_p():
    vars = ("x1", "x2", "x", "y")
    x, y = var(vars, "x"), var(vars, "y")
    return (x + y) * (x * y + linear_product(vars, 2))


def test_n2_derivative_hessian():
    h = hessian(partial_derivative(leafy2_p(), "x"))
    assert h == [[0, 1, 2, 2], [1, 0, 2, 2], [2, 2, 6, 8], [2, 2, 8, 8]]
    # eigenvalues 0, -1 and the roots of t^2 - 15t - 18
    assert charpoly(h) == [0, -18, -33, -14, 1]
    assert positive_eigenvalue_count(h) == 1


# -- Lorentzian checks ---------------------------------------------------------


def test_lorentzian_examples():
    vars = ("x", "y")
    x, y = var(vars, "x"), var(vars, "y")
    bad = x * x + x * y + y * y
    cert = is_lorentzian(bad)
    assert cert.verdict == REFUTED
    assert cert.witness["kind"] == "hessian_inertia"
    assert cert.witness["hessian"] == [["2", "1"], ["1", "2"]]
    assert cert.witness["positive_eigenvalues"] == 2
    assert check_hessian_witness(bad, cert.witness)
    assert is_lorentzian((x + y) ** 2)
    l1 = homogenize(coloured_indep_poly(leafy_star(1).coloured))
    v = l1.vars
    assert l1 == (var(v, "x") + var(v, "y")) * (var(v, "x").scale(2) + var(v, "x1") + var(v, "y"))
    assert is_lorentzian(l1)


def test_lorentzian_edge_cases():
    vars = ("x", "y")
    x, y = var(vars, "x"), var(vars, "y")
    assert is_lorentzian(MultiPoly.zero(vars))
    assert is_lorentzian(x + y.scale(3))
    assert is_lorentzian(MultiPoly.constant(vars, 5))
    neg = is_lorentzian(x * x - x * y + y * y)
    assert neg.verdict == REFUTED and neg.witness["kind"] == "negative_coefficient"
    assert neg.witness["exp"] == [1, 1]
    gap = is_lorentzian(x * x + y * y)
    assert gap.witness["kind"] == "support_not_m_convex"
    with pytest.raises(InputError):
        is_lorentzian(x * x + y)


def test_elementary_symmetric_is_lorentzian():
    vars = ("a", "b", "c", "d")
    vs = [var(vars, v) for v in vars]
    e2 = sum((vs[i] * vs[j] for i in range(4) for j in range(i + 1, 4)), MultiPoly.zero(vars))
    assert is_lorentzian(e2)
    assert is_lorentzian(e2 * (vs[0] + vs[1]))


def test_bivariate_examples():
    vars = ("x", "y")
    x, y = var(vars, "x"), var(vars, "y")
    assert is_lorentzian_bivariate((x + y) ** 2)
    cert = is_lorentzian_bivariate(x * x + y * y)
    assert cert.witness["kind"] == "internal_zero"
    assert is_lorentzian_bivariate(x * x + x * y + y * y).witness["kind"] == "not_ultra_log_concave"
    with pytest.raises(InputError):
        is_lorentzian_bivariate(MultiPoly.variable(("x",), "x"))


def test_bivariate_agreement(rng):
    vars = ("x", "y")
    yes = 0
    for _ in range(200):
        d = rng.randint(0, 6)
        p = MultiPoly(vars, {(k, d - k): rng.choice([0, 1, 2, 3, 5, 9]) for k in range(d + 1)})
        a, b = is_lorentzian_bivariate(p), is_lorentzian(p)
        assert bool(a) == bool(b), str(p)
        yes += bool(a)
    assert yes > 20


def test_exhaustive_mode_and_counts():
    h, x, y = pre_lorentzian_polynomial(leafy_star(3))
    first = is_lorentzian(h)
    full = is_lorentzian(h, exhaustive=True)
    assert first.verdict == full.verdict == REFUTED
    assert full.witness == first.witness
    assert len(full.failures) == 3
    assert all(check_hessian_witness(h, w) for w in full.failures)
    assert full.derivatives_total == derivative_count(6, 5) == 70
    assert first.hessians_checked <= full.hessians_checked


def test_cap():
    h, _, _ = pre_lorentzian_polynomial(leafy_star(3))
    with pytest.raises(InputError):
        is_lorentzian(h, max_hessians=10)


def _two_spikes():
    vars = tuple(f"z{i}" for i in range(8))
    s = sum((var(vars, v) for v in vars), MultiPoly.zero(vars)) ** 6
    spikes = MultiPoly.monomial(vars, {"z0": 6}, 1000) + MultiPoly.monomial(vars, {"z7": 6}, 1000)
    return s + spikes


def test_parallel_sweep_is_deterministic():
    p = _two_spikes()
    serial = hessian_condition(p, exhaustive=True, workers=1)
    parallel = hessian_condition(p, exhaustive=True, workers=3)
    assert serial.verdict == parallel.verdict == REFUTED
    assert serial.witness == parallel.witness
    assert serial.failures == parallel.failures
    assert len(serial.failures) == 2
    assert serial.witness["derivative"] == ["z0"] * 4
    fast = hessian_condition(p, workers=3)
    assert fast.witness == serial.witness


# -- pre-Lorentzian -------------------------------------------------------------


@pytest.mark.parametrize("n", [1, 2])
def test_small_leafy_stars_certify_at_zero(n):
    cert = is_pre_lorentzian(leafy_star(n), 0)
    assert cert.verdict == CERTIFIED and cert.k == 0


def test_leafy_star_three():
    cert = is_pre_lorentzian(leafy_star(3), 12)
    assert cert.verdict == CERTIFIED
    assert cert.k == 1  # minimal k found by the search
    h, x, y = pre_lorentzian_polynomial(leafy_star(3))
    for k in (1, 2, 3):
        assert is_lorentzian(shift_by_xy(h, x, y, k))
    none = is_pre_lorentzian(leafy_star(3), 0)
    assert none.verdict == INCONCLUSIVE


def test_bare_factor_needs_k_seven():
    # x y^(n-1) + prod (x + x_i + y) for n = 3, without the (x+y)^n factor
    q0 = leafy_star_q(3, 0)
    assert q0.is_homogeneous() and q0.degree() == 3
    found = next(k for k in range(12) if is_lorentzian(shift_by_xy(q0, "x", "y", k)))
    assert found == 7
    assert q0 * MultiPoly.monomial(q0.vars, {"x": 2, "y": 2}) == leafy_star_q(3, 2)


def test_pre_lorentzian_edge_cases():
    empty = PartitionedGraph(ColouredGraph(Graph()), "x")
    assert is_pre_lorentzian(empty, 0).k == 0
    with pytest.raises(InputError):
        is_pre_lorentzian(leafy_star(1), -1)


# -- structured matrices -------------------------------------------------------


def test_reduced_hessian_example():
    params = ReducedHessianParams(2, 1, 2, 3, 4, 5, 6)
    assert reduced_hessian(params) == [[1, 2, 3], [4, 4, 6], [6, 6, 5]]
    with pytest.raises(InputError):
        reduced_hessian(ReducedHessianParams(1, 1, 2, 3, 4, 5, 6))
    with pytest.raises(InputError):
        ReducedHessianParams(2, -1, 2, 3, 4, 5, 6)
    with pytest.raises(InputError):
        ReducedHessianParams(2, 0.5, 2, 3, 4, 5, 6)


def random_params(rng, n):
    vals = []
    for _ in range(6):
        if rng.random() < 0.5:
            vals.append(rng.randint(0, 9))
        else:
            vals.append(Fraction(rng.randint(0, 20), rng.randint(1, 7)))
    return ReducedHessianParams(n, *vals)


def test_structured_charpoly_factorises(rng):
    from prelorentz.matrices import upoly_divmod, upoly_gcd, upoly_monic, upoly_mul

    for _ in range(30):
        params = random_params(rng, rng.randint(2, 6))
        cm = charpoly(structured_matrix(params))
        cr = charpoly(reduced_hessian(params))
        factor = [1]
        for _ in range(params.n - 1):
            factor = upoly_mul(factor, [params.a, 1])
        q, r = upoly_divmod(cm, factor)
        assert r == []
        assert q == upoly_monic(cr)
        assert upoly_gcd(cm, cr) == upoly_monic(cr)


def test_descartes_examples():
    assert not descartes_positive_sign_test([[1, 0, 0], [0, -1, 0], [0, 0, -1]])
    assert descartes_positive_sign_test(case_reduced_hessian(2, 3, 2))
    assert not descartes_positive_sign_test(case_reduced_hessian(3, 3, 2))
    assert descartes_positive_sign_test(case_reduced_hessian(3, 3, 40))
    with pytest.raises(InputError):
        descartes_positive_sign_test([[1, 0], [0, 1]])


def test_case_three_threshold_for_n3():
    results = [descartes_positive_sign_test(case_reduced_hessian(3, 3, k)) for k in range(12)]
    assert results == [False] * 7 + [True] * 5


@pytest.mark.parametrize("case,n,k", [(2, 3, 2), (3, 3, 2), (4, 4, 3), (3, 5, 0), (4, 3, 0)])
def test_case_matrices_against_direct(case, n, k):
    assert verify_case_matrix_against_direct_hessian(case, n, k)


def test_case_errors():
    with pytest.raises(InputError):
        verify_case_matrix_against_direct_hessian(2, 3, 0)
    with pytest.raises(InputError):
        verify_case_matrix_against_direct_hessian(3, 6, 1)
    with pytest.raises(InputError):
        case_reduced_hessian(5, 3, 1)
    with pytest.raises(InputError):
        case_reduced_hessian(3, 2, 1)
    with pytest.raises(InputError):
        case_leading_matrix(2, 3)


def test_case_determinants():
    for n in range(3, 11):
        assert determinant(case_leading_matrix(3, n)) == Fraction(n * n - 3 * n, 2) + 1
        assert determinant(case_leading_matrix(4, n)) == Fraction(n**4 - 4 * n**3 + 5 * n**2 - 2 * n, 6)
    for n, k in product(range(3, 9), range(1, 11)):
        assert determinant(case_reduced_hessian(2, n, k)) == 0


def test_case_one_derivatives_ignore_the_extra_monomial():
    n = 3
    for k in range(0, 4):
        q = leafy_star_q(n, k)
        rest = q - MultiPoly.monomial(q.vars, {"x": k + 1, "y": n + k - 1})
        d = n + 2 * k
        for l in range(0, d - 1):
            if k - 1 <= l <= k + 1:
                continue
            a = partial_derivative(partial_derivative(q, "x", l), "y", d - 2 - l)
            b = partial_derivative(partial_derivative(rest, "x", l), "y", d - 2 - l)
            assert a == b
