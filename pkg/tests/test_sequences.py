import math

import pytest

from decaylab.codes import det_abs_squared
from decaylab.exact_ring import GaloisMap, RingElem, RingPoly, abs_squared, apply_galois, mul
from decaylab.sequences import (
    TABLE1_N,
    alpha_power,
    balanced_split,
    det_closed_form,
    factor_atoms,
    factor_z5n,
    log_abs_det,
    m_factor,
    p_factor,
    phi20,
    split_options,
    table1,
    table1_row,
    unbalanced_series,
    x5_factors,
    z_element,
)

SQRT5 = 5**0.5


def test_alpha_power_small():
    assert (alpha_power(0).a, alpha_power(0).b) == (1, 0)
    assert (alpha_power(1).a, alpha_power(1).b) == (2, 1)
    assert (alpha_power(2).a, alpha_power(2).b) == (9, 4)
    ap = alpha_power(5)
    assert ap.a**2 - 5 * ap.b**2 == -1
    with pytest.raises(ValueError):
        alpha_power(-1)


def test_alpha_power_invariants_to_200():
    prev = alpha_power(0)
    for n in range(1, 201):
        ap = alpha_power(n)
        assert (ap.a, ap.b) == (2 * prev.a + 5 * prev.b, prev.a + 2 * prev.b)
        assert ap.a**2 - 5 * ap.b**2 == (-1) ** n
        assert abs(ap.b) < abs(ap.a)
        prev = ap


def test_alpha_power_quad_value():
    for n in range(0, 20):
        assert float(alpha_power(n).quad) == pytest.approx((2 - SQRT5) ** n, rel=1e-9, abs=1e-15)


def test_z_element():
    assert z_element(1).coords == (2, -1, 0, 2)
    assert z_element(2).coords == (9, -4, 0, 8)
    for n in range(1, 15):
        ap = alpha_power(n)
        assert float(abs_squared(z_element(n))) == pytest.approx(ap.a**2 + 5 * ap.b**2, rel=1e-12)
    with pytest.raises(ValueError):
        z_element(0)


def test_m_factor_examples():
    assert m_factor(2, 1).coords == (-8, -1, 16, 1)
    assert m_factor(4, 1).coords == (-8, 0, 16, -1)
    with pytest.raises(ValueError):
        m_factor(5, 1)
    with pytest.raises(ValueError):
        m_factor(1, 0)


@pytest.mark.parametrize("n", range(1, 11))
def test_m_factor_mu_relations(n):
    mu = GaloisMap.MU
    assert apply_galois(mu, m_factor(1, n)) == -m_factor(3, n)
    assert apply_galois(mu, m_factor(2, n)) == -m_factor(4, n)


def test_m_factor_is_scaled_p_of_unit_power():
    # m_j(n) = u^{-1} p_j(u) with u = (2 + sqrt5)^{2n}, i.e. u * m_j(n) = p_j(u)
    for n in (1, 2, 3):
        ap = alpha_power(2 * n)  # (2 - sqrt5)^{2n} = u^{-1}
        u = RingElem(ap.a - ap.b, 0, 2 * ap.b, 0)  # a + b*sqrt5
        for j in range(1, 5):
            assert mul(u, m_factor(j, n)) == p_factor(j)(u)


def test_factorisation_identity_to_40():
    for n in range(1, 41):
        zn, a, b = factor_z5n(n)
        assert mul(mul(zn, a), b) == z_element(5 * n)
    assert z_element(200).max_abs_coord() > 10**100


def test_factor_parity():
    _, a, b = factor_z5n(1)
    assert (a, b) == (m_factor(2, 1), m_factor(4, 1))
    _, a, b = factor_z5n(2)
    assert (a, b) == (m_factor(1, 2), m_factor(3, 2))


def test_factor_atoms_recursive():
    labels = [l for l, _ in factor_atoms(25)]
    assert labels == ["z1", "m2(1)", "m4(1)", "m2(5)", "m4(5)"]
    prod = RingElem(1, 0, 0, 0)
    for _, e in factor_atoms(25):
        prod = mul(prod, e)
    assert prod == z_element(25)
    assert [l for l, _ in factor_atoms(7)] == ["z7"]


def test_split_options_cover_all_partitions():
    atoms = factor_atoms(10)
    opts = split_options(atoms)
    assert len(opts) == 2 ** len(atoms)
    for s in opts:
        assert mul(s.x1, apply_galois(GaloisMap.SIGMA, s.x2)) == z_element(10)
    best = balanced_split(atoms)
    assert best.m == min(s.m for s in opts)


def test_cyclotomic_identities():
    prod = RingPoly([1])
    for j in range(1, 5):
        prod = prod * p_factor(j)
    assert prod == phi20()
    x10_plus_1 = RingPoly([1] + [0] * 9 + [1])
    assert RingPoly([1, 0, 1]) * phi20() == x10_plus_1
    for sign in (1, -1):
        lin, quart = x5_factors(sign)
        x5 = RingPoly([RingElem(0, sign, 0, 0), 0, 0, 0, 0, 1])
        assert lin * quart == x5


def test_table1_row_n5():
    r = table1_row(5)
    assert r.m == 38
    assert r.delta_rounded == "1.889"
    assert r.x1.coords == (-19, 38, 33, 2)
    assert r.x1 == mul(z_element(1), m_factor(2, 1))
    assert r.x2 == apply_galois(GaloisMap.SIGMA, m_factor(4, 1))


@pytest.mark.parametrize(
    "n,m,delta",
    [(5, 38, "1.889"), (10, 2880, "1.769"), (20, 16692480, "1.715"), (25, 66563198, "1.984")],
)
def test_table1_rows_reproduced(n, m, delta):
    r = table1_row(n)
    assert r.m == m
    assert r.delta_rounded == delta


def test_table1_row_n15_minimal_split():
    # 219640, the reference value, is the coordinate of z3*m4(3), which is
    # not the minimal partition; the acceptance suite checks that value
    r = table1_row(15)
    assert r.m == 219602
    assert r.delta_rounded == "1.732"


def test_table1_rejects_other_n():
    with pytest.raises(ValueError):
        table1_row(30)


def test_sequence_record_invariants():
    for r in table1():
        assert mul(r.x1, apply_galois(GaloisMap.SIGMA, r.x2)) == r.z_n
        assert r.detsq == det_abs_squared(r.x1, r.x2) == det_closed_form(r.n)
        assert float(r.detsq) == pytest.approx(2 * abs(2 - SQRT5) ** (2 * r.n), rel=1e-12)
        assert r.m == max(r.x1.max_abs_coord(), r.x2.max_abs_coord())
        assert r.delta_estimate == pytest.approx(-log_abs_det(r.n) / math.log(r.m))
    assert tuple(r.n for r in table1()) == TABLE1_N


def test_det_closed_form_large_n():
    # float of the exact value stays accurate even when |det|^2 ~ 1e-250
    for n in (40, 100, 200):
        got = math.log(float(det_closed_form(n)))
        assert got == pytest.approx(2 * log_abs_det(n), rel=1e-12)


def test_unbalanced_series():
    ws = unbalanced_series(6)
    first = ws[0]
    t5 = table1_row(5)
    assert (first.x1, first.x2) == (t5.x1, t5.x2)
    for w in ws:
        assert w.detsq == det_closed_form(w.n)
        assert mul(w.x1, apply_galois(GaloisMap.SIGMA, w.x2)) == z_element(w.n)
    ratios = [w.log_size_ratio for w in ws]
    assert all(b > a for a, b in zip(ratios, ratios[1:]))
    assert abs(ratios[-1] - 1.5) < 0.05
    with pytest.raises(ValueError):
        unbalanced_series(0)
