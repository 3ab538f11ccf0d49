import json
import random

import pytest

from qdilog.identities import (DEFAULT_DEGREE, IDENTITY_IDS, R_D4_PRINTED, R_MATRICES,
                               IdentityCase, OutOfRing, VerificationReport, build_U,
                               dgs_factors, dgs_product, first_difference,
                               golden_factors, golden_product, u_argument,
                               verify)
from qdilog.qrat import ONE, QScalar, q_power
from qdilog.skewalg import (SkewRing, SkewSeries, check_admissible, chi_rewrite, dilog_E,
                            psi_R, psi_S, quad, w_ring, x_ring)
from qdilog.theta import normal_monomial, quiver_for, theta_image


def test_catalog():
    assert len(IDENTITY_IDS) == 8
    assert IdentityCase.get("a2-DGS").id == "A2-dgs"
    with pytest.raises(KeyError):
        IdentityCase.get("B2-y")
    assert DEFAULT_DEGREE == 12


def test_u_examples():
    ring = w_ring()
    assert build_U(0, 1, ring, 5) == dilog_E(SkewSeries.variable(ring, 5, 1))
    c, v = u_argument(2, -1)
    assert v == (2, 3)
    assert c == q_power(quad(ring.normal_lower, v, v))
    c, v = u_argument(1, -2)
    assert v == (1, 0) and c == ONE
    with pytest.raises(OutOfRing):
        u_argument(1, -3)


def test_u_argument_matches_x_ring():
    # :w^{(m, n+2m)}: is q^{-mn} x_1^m x_2^n in the Laurent x-ring
    for m, n in [(1, 0), (2, -1), (0, 3), (1, -2), (2, 1)]:
        c, v = u_argument(m, n)
        got = psi_S(SkewSeries.monomial(x_ring(), 10, v, c))
        assert got.terms == {(m, n): q_power(-m * n)}
        assert chi_rewrite(SkewSeries.monomial(x_ring(), 10, v, c)) == SkewSeries.monomial(w_ring(), 10, v, c)


def test_r_matrices_admissible():
    for case, R in R_MATRICES.items():
        assert check_admissible(R, quiver_for(case).b_matrix, ((0, 1), (-1, 0)))


def test_printed_d4_r_does_not_give_the_dgs_side():
    N = 6
    lhs_y = theta_image("D4", "forward", N=N)
    good = chi_rewrite(psi_R(lhs_y, R_MATRICES["D4"], x_ring(), N))
    assert good == dgs_product("D4", "lhs", N)
    try:
        bad = chi_rewrite(psi_R(lhs_y, R_D4_PRINTED, x_ring(), N))
    except ValueError:
        return
    assert bad != dgs_product("D4", "lhs", N)


def test_d4_middle_factor():
    rhs = dgs_factors("D4", "rhs", 12)
    k = rhs.index(("block",))
    assert rhs[k - 6:k] == [("U", 1, 0)] * 6
    assert ("U", 1, 0) not in rhs[:k - 6]


@pytest.mark.parametrize("case", ["A1", "A2", "A3", "D4"])
def test_golden_lists_agree_with_streams(case):
    N = 8
    assert golden_product(case, "lhs", N) == theta_image(case, "forward", N=N)
    assert golden_product(case, "rhs", N) == theta_image(case, "reversed", N=N)


def test_golden_a1_shape():
    assert golden_factors("A1", "rhs", 3) == [(1, 0), (2, 1), "block", (1, 2), (0, 1)]


def test_a1_y_low_degree():
    rep = verify(IdentityCase.get("A1-y", 6))
    assert rep.equal and rep.witness is None


def test_mutation_control_reports_witness():
    ident = IdentityCase("A1-y", "A1", "y", 6, drop_rhs_factor=1)
    rep = verify(ident)
    assert not rep.equal
    assert rep.witness is not None
    assert "first difference" in rep.text()


def test_d4_dgs():
    rep = verify(IdentityCase.get("D4-dgs", 12))
    assert rep.equal, rep.text()
    assert all(rep.checks.values()) and len(rep.checks) == 2


def test_report_json_schema():
    rep = verify(IdentityCase.get("A2-y", 4))
    body = json.loads(json.dumps(rep.to_json()))
    assert set(body) == {"id", "degree", "equal", "counts", "witness", "millis"}
    assert body["equal"] is True and body["degree"] == 4
    back = VerificationReport(**body)
    assert back.to_json() == body


def test_first_difference():
    ring = SkewRing([[0]])
    a = SkewSeries(ring, 3, {(1,): ONE, (2,): ONE})
    b = SkewSeries(ring, 3, {(1,): ONE})
    assert first_difference(a, a) is None
    assert first_difference(a, b) == {"monomial": [2], "lhs": "1", "rhs": "0"}


# q -> q^-1 with all products reversed is an anti-automorphism of the ring

def anti(s):
    L = s.ring.lower
    return SkewSeries(s.ring, s.N, {e: c.bar().shift(quad(L, e, e)) for e, c in s.terms.items()})


def test_anti_automorphism():
    rng = random.Random(9)
    ring = quiver_for("A2").y_ring()
    N = 4

    def rand():
        return SkewSeries(ring, N, {tuple(rng.randint(0, 1) for _ in range(3)):
                                    QScalar(rng.randint(-2, 2)) * q_power(rng.randint(-2, 2))
                                    for _ in range(4)})
    for _ in range(20):
        a, b = rand(), rand()
        assert anti(a * b) == anti(b) * anti(a)
    for m in [(1, 1, 0), (2, 1, 1)]:
        assert anti(normal_monomial(ring, N, m)) == normal_monomial(ring, N, m)


@pytest.mark.parametrize("case", ["A1", "A2"])
def test_mirrored_identity(case):
    # reverse and bar each factor of both sides; the results still agree
    from qdilog.theta import factor_images
    N = 6
    quiv = quiver_for(case)
    sides = []
    for side in ("forward", "reversed"):
        acc = SkewSeries.one(quiv.y_ring(), N)
        for _, s in reversed(factor_images(case, side, quiv, N)):
            acc = acc * anti(s)
        sides.append(acc)
    assert sides[0] == sides[1]
