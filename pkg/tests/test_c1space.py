import dataclasses
from fractions import Fraction as F

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from mixedc1.c1space import (DegreeExceeded, NotDivisible, SubcaseExhausted, WrongCase, algorithm1,
                             case_a_space, case_b_space, case_c_space, dimension, eta, interior_count,
                             parabolic_remainders)
from mixedc1.corpus import bundled_mesh
from mixedc1.gluing import classify_interface, compute_gluing, remainder_determinant
from mixedc1.linalg import nullspace, rank
from mixedc1.polyalg import Poly, quo_rem, to_bernstein

from conftest import CORPUS, setup

BETA = Poly([F(5, 4), -1, 1])
V = Poly([0, 1])


def fake_gluing(ha1, ha2, hb1, hb2, beta=BETA):
    """Gluing data whose remainders are the given polynomials (other fields reuse a real mesh)."""
    base = compute_gluing(bundled_mesh("ex1-generic"))
    return dataclasses.replace(base, beta=beta, hat_alpha1=Poly(ha1), hat_alpha2=Poly(ha2),
                               hat_beta1=Poly(hb1), hat_beta2=Poly(hb2))


def remainder_solutions(g):
    """Nullspace of ``(tau, omega) -> rem(hat_alpha_l*omega + hat_beta_l*tau, beta)``, l = 1, 2."""
    cols = []
    for k in range(4):
        tau = Poly([int(k == 0), int(k == 1)])
        om = Poly([int(k == 2), int(k == 3)])
        col = []
        for ell in (1, 2):
            _, r = quo_rem(g.hat_alpha(ell) * om + g.hat_beta(ell) * tau, g.beta)
            col += [r.cf(0), r.cf(1)]
        cols.append(col)
    rows = [[cols[k][i] for k in range(4)] for i in range(4)]
    return nullspace(rows, 4)


def check_remainder_pair(g):
    tag, d1, d2 = parabolic_remainders(g)
    sol = remainder_solutions(g)
    assert len(sol) == 2
    vecs = [[t.cf(0), t.cf(1), w.cf(0), w.cf(1)] for t, w in (d1, d2)]
    for t, w in (d1, d2):
        for ell in (1, 2):
            _, r = quo_rem(g.hat_alpha(ell) * w + g.hat_beta(ell) * t, g.beta)
            assert r.is_zero()
    assert rank(vecs, 4) == 2
    return tag


@pytest.mark.parametrize("hats, tag", [
    # common linear factor 1 + v
    (([2, 2], [4, 4], [1, 1], [2, 2]), "C:dependent-common-factor"),
    # all constant
    (([1], [2], [3], [6]), "C:dependent-common-factor"),
    (([1, 1], [2, -1], [], []), "C:dependent-beta-hats-zero"),
    (([3, 3], [6, -3], [1, 1], [2, -1]), "C:dependent-alpha-prop-beta"),
    (([1, 2], [2, 4], [3, -1], [6, -2]), "C:dependent-rows-prop-alpha"),
    (([1, 2], [], [3, -1], []), "C:dependent-rows-prop-alpha"),
    (([], [1, 2], [], [3, -1]), "C:dependent-rows-prop-alpha"),
    (([2], [6], [1, 1], [3, 3]), "C:dependent-rows-prop-beta"),
    (([0, 1], [F(-5, 4)], [1], [-1, 1]), "C:independent"),
])
def test_remainder_subcases_against_nullspace(hats, tag):
    g = fake_gluing(*hats)
    assert check_remainder_pair(g) == tag


small = st.integers(-6, 6)
lin = st.tuples(small, small).map(lambda t: Poly(list(t)))


@given(lin, lin, lin, lin)
@settings(max_examples=200, deadline=None)
def test_generic_remainders_against_nullspace(ha1, ha2, hb1, hb2):
    # alpha_1, alpha_2 are coprime, so beta cannot divide both
    assume(not (ha1.is_zero() and ha2.is_zero()))
    g = fake_gluing(ha1.coeffs, ha2.coeffs, hb1.coeffs, hb2.coeffs)
    lhs = ha1 * hb2 - ha2 * hb1
    _, r = quo_rem(lhs, BETA)
    # only remainder combinations that can come from a real edge
    assume(r.is_zero())
    check_remainder_pair(g)


@given(lin, lin, st.fractions(min_value=-3, max_value=3, max_denominator=4))
@settings(max_examples=150, deadline=None)
def test_proportional_rows_against_nullspace(ha1, hb1, k):
    assume(not ha1.is_zero() and k != 0)
    g = fake_gluing(ha1.coeffs, (ha1 * k).coeffs, hb1.coeffs, (hb1 * k).coeffs)
    assert remainder_determinant(g) == 0
    check_remainder_pair(g)


def test_vanishing_alpha_remainders_rejected():
    with pytest.raises(SubcaseExhausted):
        parabolic_remainders(fake_gluing([], [], [1], [2]))


def test_irreducible_beta_never_exhausts():
    # every zero-determinant configuration falls into one of the handled sub-cases
    for hats in [([1, 1], [1, 1], [0, 1], [0, 1]), ([0, 1], [0, 2], [5], [10])]:
        g = fake_gluing(*hats)
        try:
            check_remainder_pair(g)
        except SubcaseExhausted:
            pytest.fail("sub-case dispatch exhausted")


@pytest.mark.parametrize("name", CORPUS)
@pytest.mark.parametrize("d", [2, 3, 4, 6])
def test_every_direction_is_admissible(name, d):
    m, g, tns = setup(name, d)
    for p in tns.params:
        for ell in (1, 2):
            eta(g, p.theta, p.omega, ell, d)
        assert p.theta.degree <= d


@pytest.mark.parametrize("name", CORPUS)
def test_directions_independent(name):
    d = 5
    _, g, tns = setup(name, d)
    vecs = [to_bernstein(p.theta, d) + to_bernstein(p.omega, d + 3) for p in tns.params]
    assert rank(vecs, len(vecs[0])) == len(tns.params)


EXPECTED_COUNTS = {
    # name: (branch, n_theta, n_omega, n_mu) as functions of d
    "ex1-generic": ("C:independent", lambda d: (d - 1, d - 2, 2)),
    "ex1-special-c": ("C:independent", lambda d: (d - 1, d - 1, 2)),
    "ex1-gamma-beta": ("C:dependent-beta-hats-zero", lambda d: (d - 1, d, 2)),
    "ex2-generic": ("B(1)", lambda d: (d, d - 1, 0)),
    "ex2-case2": ("B(2)", lambda d: (d + 1, d - 1, 0)),
    "ex2-choice3": ("B(1)", lambda d: (d, d, 0)),
    "ex2-choice4": ("B(2)", lambda d: (d + 1, d, 0)),
    "ex3": ("A(1)", lambda d: (d, d - 1, 0)),
    "ex3-case2": ("A(2)", lambda d: (d + 1, d - 1, 0)),
}


@pytest.mark.parametrize("name", sorted(EXPECTED_COUNTS))
@pytest.mark.parametrize("d", [3, 6])
def test_parameter_counts(name, d):
    _, _, tns = setup(name, d)
    tag, counts = EXPECTED_COUNTS[name]
    assert tns.case_record == tag
    assert tns.counts == counts(d)


def test_nonuniform_case2_remainders():
    _, g, tns = setup("ex2-case2", 4)
    mu2 = next(p for p in tns.params if p.name == "mu2")
    rho = Poly([F(2, 3), F(2, 3)])
    # tau_hat = a_L, omega_hat = -b_L * rho with the normalized gcd
    assert mu2.theta.deriv() == Poly([F(1, 3)])
    assert mu2.omega == rho * F(32, 15)


def test_dimension_formula():
    _, g, tns = setup("ex1-generic", 6)
    dims = dimension(g, tns, 6)
    assert (dims.D0, dims.interface_dofs, dims.total) == (50, 11, 61)


@pytest.mark.parametrize("s1, s2", [(0, 0), (0, 1), (1, 0), (1, 1)])
def test_interior_count_small(s1, s2):
    assert interior_count(2, s1, s2) == [2, 4, 4, 6][2 * s1 + s2]


def test_wrong_case_guards():
    m = bundled_mesh("ex3")
    g = compute_gluing(m)
    with pytest.raises(WrongCase):
        case_c_space(g, 4)
    with pytest.raises(WrongCase):
        case_b_space(g, classify_interface(m), 4)
    with pytest.raises(WrongCase):
        case_a_space(compute_gluing(bundled_mesh("ex1-generic")), 4)
    with pytest.raises(ValueError):
        algorithm1(g, classify_interface(m), 1)


def test_eta_rejects_inadmissible_pairs():
    _, g, _ = setup("ex1-generic", 4)
    with pytest.raises(NotDivisible):
        eta(g, Poly([0, 1]), Poly(), 1)
    # omega = beta * v^3 gives a divisible r_1 of too high degree
    with pytest.raises(DegreeExceeded):
        eta(g, Poly(), g.beta * Poly.monomial(3), 1, 3)
