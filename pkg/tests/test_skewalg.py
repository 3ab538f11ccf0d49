import random

import pytest

from qdilog.commtree import bracket, leaf
from qdilog.qrat import ONE, QQ, QScalar, q_power, qint
from qdilog.rootsys import affine_A
from qdilog.skewalg import (S_MATRIX, X_B, DoubleMonomial, QuiverOrientation,
                            SkewRing, SkewSeries, check_admissible, chi_rewrite,
                            dilog_E, dilog_E_from_log, exp_of, exp_q_of, log_of,
                            mirror_image, mirror_image_direct, normal_order,
                            pochhammer, project_tree, project_tree_direct, psi_R,
                            psi_S, quad, series_inverse, w_ring, x_ring)
from qdilog.theta import quiver_for

q = q_power(1)
A2 = affine_A(2)


def x_series(N, c=ONE):
    ring = SkewRing([[0]])
    return SkewSeries.monomial(ring, N, (1,), c)


# -- orientations --------------------------------------------------------------

def test_orientation_pairing_even():
    quiv = quiver_for("A2")
    assert all(x % 2 == 0 for row in quiv.pairing for x in row)
    with pytest.raises(ValueError):
        QuiverOrientation(A2, ((0, 1, 0), (-1, 0, 0), (0, 0, 0)))


def test_all_plus_kills_e0e1():
    quiv = QuiverOrientation.from_signs(A2, {(0, 1): 1, (0, 2): 1, (1, 2): 1})
    assert project_tree(quiv, bracket(leaf(0), leaf(1))) is None
    assert project_tree_direct(quiv, bracket(leaf(0), leaf(1))) is None


def test_leaf_projects_to_generator():
    quiv = quiver_for("A2")
    assert project_tree(quiv, leaf(0)) == (ONE, (1, 0, 0))
    assert mirror_image(quiv, (ONE, (1, 0, 0))) == (ONE, (1, 0, 0))


def test_e1e0_against_direct_product():
    quiv = QuiverOrientation.from_signs(A2, {(0, 1): 1, (0, 2): 1, (1, 2): 1})
    t = bracket(leaf(1), leaf(0))
    c, e = project_tree(quiv, t)
    assert e == (1, 1, 0)
    assert (c, e) == project_tree_direct(quiv, t)
    # e_1 e_0 = q e_0 e_1, so [E_1,E_0]_q = (q - q^-1) e_0 e_1
    assert c == QQ


def _random_tree(rng, n, depth):
    if depth == 0 or rng.random() < 0.25:
        return leaf(rng.randrange(n))
    return bracket(_random_tree(rng, n, depth - 1), _random_tree(rng, n, depth - 1))


def test_projection_and_mirror_oracles():
    rng = random.Random(11)
    quivers = [QuiverOrientation.from_signs(A2, {(0, 1): a, (0, 2): b, (1, 2): c})
               for a in (1, -1) for b in (1, -1) for c in (1, -1)]
    nonzero = 0
    for _ in range(300):
        quiv = rng.choice(quivers)
        t = _random_tree(rng, 3, 4)
        img = project_tree(quiv, t)
        assert img == project_tree_direct(quiv, t)
        assert mirror_image(quiv, img) == mirror_image_direct(quiv, t)
        nonzero += img is not None
    assert nonzero > 50


def test_bar_involution_on_mirror_coefficients():
    quiv = quiver_for("A2")
    c, e = project_tree(quiv, bracket(bracket(leaf(0), leaf(1)), leaf(2))) or (ONE, (1, 1, 1))
    assert c.bar().bar() == c


def test_double_monomial_product():
    quiv = quiver_for("A1")
    a = DoubleMonomial(ONE, (1, 0), (1, 0))
    b = DoubleMonomial(ONE, (0, 1), (0, 1))
    ab = a.mul(b, quiv)
    assert ab.e_exponents == (1, 1)
    kappa = -(QQ * QQ)
    scalar, m = ab.to_y(kappa)
    assert m == (1, 1) and scalar == kappa ** -2
    with pytest.raises(ValueError):
        DoubleMonomial(ONE, (1, 0), (0, 1)).to_y(kappa)


# -- series -------------------------------------------------------------------

def test_unit_and_commutation():
    ring = quiver_for("A1").y_ring()
    N = 4
    y0, y1 = SkewSeries.variable(ring, N, 0), SkewSeries.variable(ring, N, 1)
    one = SkewSeries.one(ring, N)
    assert one * y0 == y0
    assert y0 * y1 == (y1 * y0).scale(q_power(-4))


def test_hand_expansion():
    ring = quiver_for("A1").y_ring()
    N = 2
    one = SkewSeries.one(ring, N)
    y0, y1 = SkewSeries.variable(ring, N, 0), SkewSeries.variable(ring, N, 1)
    got = (one + y0) * (one + y1)
    assert got.terms == {(0, 0): ONE, (1, 0): ONE, (0, 1): ONE, (1, 1): ONE}


def test_ring_commutation_relations():
    rng = random.Random(5)
    for _ in range(20):
        n = rng.randint(2, 4)
        B = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                B[i][j] = rng.randint(-2, 2)
                B[j][i] = -B[i][j]
        ring = SkewRing.from_B(B)
        for i in range(n):
            for j in range(n):
                xi, xj = SkewSeries.variable(ring, 3, i), SkewSeries.variable(ring, 3, j)
                assert xi * xj == (xj * xi).scale(q_power(ring.M[i][j]))


def test_truncation_and_ring_mismatch():
    ring = SkewRing([[0]])
    s = SkewSeries(ring, 3, {(5,): ONE, (2,): ONE})
    assert s.terms == {(2,): ONE}
    with pytest.raises(ValueError):
        s * SkewSeries.one(quiver_for("A1").y_ring(), 3)
    with pytest.raises(ValueError):
        SkewSeries(ring, 3, {(-1,): ONE})


def test_normal_order_examples():
    ring1 = quiver_for("A1").y_ring()
    ring2 = quiver_for("A2").y_ring()
    assert normal_order(ring2, (0, 1, 0)) == ONE
    for m0 in range(3):
        for m1 in range(3):
            assert normal_order(ring1, (m0, m1)) == q_power(2 * m0 * m1)
    for m in [(1, 1, 1), (2, 0, 3), (1, 2, 3)]:
        assert normal_order(ring2, m) == q_power(m[0] * m[1] + m[0] * m[2] + m[1] * m[2])
    with pytest.raises(ValueError):
        normal_order(SkewRing([[0]]), (1,))


def test_dilog_examples():
    ring = SkewRing([[0]])
    assert dilog_E(SkewSeries.zero(ring, 5)) == SkewSeries.one(ring, 5)
    E = dilog_E(x_series(3))
    assert E.terms[(1,)] == -q / (1 - q ** 2)
    # first order of 1/(-qx; q^2)_inf
    assert series_inverse(pochhammer(x_series(1, -q), 2)).terms[(1,)] == E.terms[(1,)]
    assert exp_q_of(x_series(3)).terms[(2,)] == q_power(-1) / qint(2)


def test_dilog_definitions_agree():
    x = x_series(10)
    assert dilog_E(x) == dilog_E_from_log(x)
    assert log_of(exp_of(x)) == x


def test_series_inverse_and_constant_term_errors():
    ring = SkewRing([[0]])
    u = SkewSeries(ring, 6, {(0,): QScalar(2), (1,): q})
    assert u * series_inverse(u) == SkewSeries.one(ring, 6)
    with pytest.raises(ValueError):
        dilog_E(u)
    with pytest.raises(ValueError):
        series_inverse(x_series(3))


# -- substitutions ----------------------------------------------------------------

R_A1 = ((0, 2), (1, 3))


def test_a1_r_is_admissible():
    assert check_admissible(R_A1, quiver_for("A1").b_matrix, X_B)
    with pytest.raises(ValueError, match="admissibility"):
        check_admissible(((1, 0), (0, 1)), quiver_for("A1").b_matrix, X_B)


def test_psi_hat_of_y1():
    ring = quiver_for("A1").y_ring()
    y1 = SkewSeries.variable(ring, 1, 1)
    got = psi_R(y1, R_A1, x_ring(), 5)
    assert got.terms == {(2, 3): q_power(-6)}


def test_zero_column_is_a_continuity_error():
    with pytest.raises(ValueError, match="continuity"):
        check_admissible(((0, 0), (1, 0)), ((0, 0), (0, 0)), X_B)


def test_chi_rewrite_examples():
    xr = x_ring()
    assert chi_rewrite(SkewSeries.variable(xr, 3, 1)) == SkewSeries.variable(w_ring(), 3, 1)
    wr = w_ring()
    w1, w2 = SkewSeries.variable(wr, 3, 0), SkewSeries.variable(wr, 3, 1)
    assert w1 * w2 == (w2 * w1).scale(q_power(2))
    # tS B' S = B'
    S = S_MATRIX
    assert all(sum(S[a][i] * X_B[a][b] * S[b][j] for a in range(2) for b in range(2)) == X_B[i][j]
               for i in range(2) for j in range(2))
    # psi_S(x_1) = q^2 x_1 x_2^-2
    assert psi_S(SkewSeries.variable(xr, 3, 0)).terms == {(1, -2): q_power(2)}


def test_u_argument_is_normal_ordered():
    L = x_ring().normal_lower
    for m in range(4):
        for n in range(-2 * m, 3):
            if m == 0 and n < 0:
                continue
            assert quad(L, (m, n), (m, n)) == -m * n
