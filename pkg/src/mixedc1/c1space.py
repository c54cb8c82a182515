"""Admissible traces and normal derivatives across the interface.

Every admissible pair ``(theta, omega)`` is written as a linear combination of
named free parameters.  Each parameter carries its own direction pair, so the
whole space is the span of ``params``.  The construction follows the three
edge cases (uniform straight, non-uniform straight, parabolic) and their
sub-cases exactly; all tests between polynomials are rational equalities.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .gluing import CASE_A, CASE_B, CASE_C, GluingData, InterfaceClass, remainder_determinant
from .polyalg import NEG_INF, Poly, bernstein_poly, divides, quo_rem


class WrongCase(ValueError):
    pass


class SubcaseExhausted(AssertionError):
    pass


class FormulaMismatch(AssertionError):
    pass


class NotDivisible(ArithmeticError):
    pass


class DegreeExceeded(ArithmeticError):
    pass


ZERO = Poly()
ONE = Poly([1])
V = Poly.var()


@dataclass(frozen=True)
class Param:
    name: str
    block: str  # "theta" | "omega" | "mu"
    theta: Poly
    omega: Poly


@dataclass(frozen=True)
class SpaceConfig:
    d: int
    d_tau: int | float
    d_omega: int
    delta: int = 2

    @classmethod
    def from_gluing(cls, g: GluingData, d: int) -> "SpaceConfig":
        if d < 2:
            raise ValueError("function degree must be at least 2")
        d_omega = min(d - 1 + g.sigma(l) - g.alpha(l).degree for l in (1, 2))
        d_tau = min(d - 1 - g.beta.degree,
                    *(d - 1 + g.sigma(l) - g.beta_l(l).degree for l in (1, 2)))
        return cls(d, d_tau, int(d_omega))


@dataclass(frozen=True)
class TraceNormalSpace:
    d: int
    config: SpaceConfig
    params: tuple[Param, ...]
    kappa: int
    case_record: str
    remainders: dict = field(default_factory=dict, compare=False)

    def block(self, name: str) -> list[Param]:
        return [p for p in self.params if p.block == name]

    @property
    def n_theta(self) -> int:
        return len(self.block("theta"))

    @property
    def n_omega(self) -> int:
        return len(self.block("omega"))

    @property
    def n_mu(self) -> int:
        return len(self.block("mu"))

    @property
    def counts(self) -> tuple[int, int, int]:
        return self.n_theta, self.n_omega, self.n_mu

    def combine(self, weights) -> tuple[Poly, Poly]:
        """``(theta, omega)`` for the given parameter values (in ``params`` order)."""
        theta, omega = ZERO, ZERO
        for w, p in zip(weights, self.params):
            w = Fraction(w)
            if w:
                theta = theta + p.theta * w
                omega = omega + p.omega * w
        return theta, omega

    def to_json(self) -> dict:
        return {
            "case_record": self.case_record,
            "d": self.d,
            "d_tau": self.config.d_tau if self.config.d_tau != NEG_INF else None,
            "d_omega": self.config.d_omega,
            "n_theta": self.n_theta,
            "n_omega": self.n_omega,
            "n_mu": self.n_mu,
            "kappa": self.kappa,
            "free_parameters": {
                blk: [p.name for p in self.block(blk)] for blk in ("theta", "omega", "mu")
            },
            "remainders": {k: v.to_json() if isinstance(v, Poly) else v
                           for k, v in self.remainders.items()},
        }


def _bern_block(prefix: str, deg: int) -> list[tuple[str, Poly]]:
    # P_k = {0} for negative k
    return [(f"{prefix}{i}", bernstein_poly(deg, i)) for i in range(deg + 1)] if deg >= 0 else []


def _low_part_params(g: GluingData, cfg: SpaceConfig) -> tuple[list[Param], list[Param]]:
    """theta_0, tau*-coefficients and omega*-coefficients shared by cases B and C."""
    theta = [Param("theta0", "theta", ONE, ZERO)]
    for name, b in _bern_block("tau", cfg.d - 3):
        theta.append(Param(name, "theta", (b * g.beta).integ(), ZERO))
    omega = [Param(name, "omega", ZERO, b * g.beta) for name, b in _bern_block("omega", cfg.d_omega)]
    return theta, omega


def case_a_space(g: GluingData, d: int) -> TraceNormalSpace:
    if g.beta.degree != 0:
        raise WrongCase("uniform straight edge expected (constant beta)")
    cfg = SpaceConfig.from_gluing(g, d)
    a1, a2, b1, b2 = g.alpha1, g.alpha2, g.beta1, g.beta2
    s1, s2 = g.sigma1, g.sigma2
    lhs = (a1 * b2 - a2 * b1).degree
    rhs = max(a1.degree + s2, a2.degree + s1) + 1
    if lhs == rhs:
        params = [Param(n, "theta", b, ZERO) for n, b in _bern_block("theta", d - 1)]
        params += [Param(n, "omega", ZERO, b) for n, b in _bern_block("omega", cfg.d_omega)]
        return TraceNormalSpace(d, cfg, tuple(params), 0, "A(1)")
    # index attaining the minimum in d_omega carries the leading-coefficient tie
    L = 1 if s1 - a1.degree <= s2 - a2.degree else 2
    aL, bL, sL = g.alpha(L), g.beta_l(L), g.sigma(L)
    tie = -d * bL.cf(sL + 1) / aL.lc()
    n = cfg.d_omega + 1
    params = []
    for name, b in _bern_block("theta", d):
        params.append(Param(name, "theta", b, Poly.monomial(n, tie * b.cf(d))))
    for name, b in _bern_block("omega", n)[:-1]:
        params.append(Param(name, "omega", ZERO, b - Poly.monomial(n, b.cf(n))))
    return TraceNormalSpace(d, cfg, tuple(params), 1, "A(2)", {"tie": str(tie), "L": L})


def case_b_space(g: GluingData, cls: InterfaceClass, d: int) -> TraceNormalSpace:
    if cls.case != CASE_B:
        raise WrongCase("non-uniform straight edge expected")
    cfg = SpaceConfig.from_gluing(g, d)
    rho = cls.rho
    theta, omega = _low_part_params(g, cfg)
    a = [quo_rem(g.alpha(l), rho)[1].cf(0) for l in (1, 2)]
    b = [quo_rem(quo_rem(g.beta_l(l), rho)[0], rho)[1].cf(0) for l in (1, 2)]
    theta.append(Param("mu1", "theta", rho.integ(), ZERO))
    cross = g.alpha1 * g.beta2 - g.alpha2 * g.beta1
    if not divides(g.beta, cross):
        if a[1] * b[0] == a[0] * b[1]:
            raise AssertionError("remainder test disagrees with divisibility test")
        rec = {"a1": str(a[0]), "a2": str(a[1]), "b1": str(b[0]), "b2": str(b[1]),
               "hat_tau": "mu1*rho", "hat_omega": "0"}
        return TraceNormalSpace(d, cfg, tuple(theta + omega), 0, "B(1)", rec)
    L = 1 if a[0] != 0 else 2
    aL, bL = a[L - 1], b[L - 1]
    theta.append(Param("mu2", "theta", Poly([0, aL]), rho * (-bL)))
    rec = {"a1": str(a[0]), "a2": str(a[1]), "b1": str(b[0]), "b2": str(b[1]), "L": L,
           "hat_tau": f"mu1*rho + ({aL})*mu2", "hat_omega": f"({-bL})*mu2*rho"}
    return TraceNormalSpace(d, cfg, tuple(theta + omega), 1, "B(2)", rec)


def _proportional(p: Poly, q: Poly):
    """Scalar ``c`` with ``p = c*q`` (``q`` nonzero), else ``None``."""
    if q.is_zero():
        return None
    c = p.lc() / q.lc() if not p.is_zero() else Fraction(0)
    return c if p == q * c else None


def _in_basis(p: Poly, base: Poly) -> list[Fraction]:
    """Coefficients of ``p`` in powers of the linear polynomial ``base``."""
    b0, b1 = base.cf(0), base.cf(1)
    inv = Poly([-b0 / b1, 1 / b1])  # v as a polynomial in base
    q = p.compose(inv)
    return [q.cf(k) for k in range(3)]


def parabolic_remainders(g: GluingData) -> tuple[str, tuple[Poly, Poly], tuple[Poly, Poly]]:
    """Branch tag and ``(hat_tau, hat_omega)`` for ``mu = (1, 0)`` and ``mu = (0, 1)``."""
    ha = (g.hat_alpha1, g.hat_alpha2)
    hb = (g.hat_beta1, g.hat_beta2)
    if ha[0].is_zero() and ha[1].is_zero():
        # alpha_1, alpha_2 are coprime, so beta cannot divide both
        raise SubcaseExhausted("both alpha remainders vanish")
    c = remainder_determinant(g)
    if c != 0:
        return ("C:independent", (ha[0], -hb[0]), (ha[1], -hb[1]))

    hats = [*ha, *hb]
    nonzero = [h for h in hats if not h.is_zero()]
    zeta = None
    if all(h.degree <= 0 for h in nonzero):
        zeta = ONE
    elif all(h.degree == 1 for h in nonzero) and all(_proportional(h, nonzero[0]) is not None for h in nonzero):
        zeta = nonzero[0]
    if zeta is not None:
        av = [_proportional(h, zeta) for h in ha]
        bv = [_proportional(h, zeta) for h in hb]
        L = 1 if (av[0], bv[0]) != (0, 0) else 2
        aL, bL = av[L - 1], bv[L - 1]
        # tau = aL*(mu1 v + mu2), omega = -bL*(mu1 v + mu2)
        return ("C:dependent-common-factor", (V * aL, V * (-bL)), (ONE * aL, ONE * (-bL)))

    if hb[0].is_zero() and hb[1].is_zero():
        return ("C:dependent-beta-hats-zero", (ONE, ZERO), (V, ZERO))
    ct = None
    for l in (0, 1):
        if not hb[l].is_zero():
            ct = _proportional(ha[l], hb[l])
            break
    if ct is not None and all(ha[l] == hb[l] * ct for l in (0, 1)):
        return ("C:dependent-alpha-prop-beta", (V * (-ct), V), (ONE * (-ct), ONE))

    L = 1 if not (ha[0].is_zero() and hb[0].is_zero()) else 2
    o = 2 if L == 1 else 1
    aL, bL = ha[L - 1], hb[L - 1]
    ao, bo = ha[o - 1], hb[o - 1]
    if not (ao.is_zero() and bo.is_zero()):
        ct = _proportional(ao, aL) if not aL.is_zero() else _proportional(bo, bL)
        if ct is None or ao != aL * ct or bo != bL * ct:
            raise SubcaseExhausted("remainder rows are neither proportional nor share a factor")
    if aL.degree == 1:
        b1_, b0_ = _proportional_split(bL, aL)
        c0, c1, c2 = _in_basis(g.beta, aL)
        tau1, om1 = aL, aL * (-b1_) + (-b0_)
        tau2, om2 = ONE, aL * (b0_ * c2 / c0) + (b0_ * c1 - b1_ * c0) / c0
        return ("C:dependent-rows-prop-alpha", (tau1, om1), (tau2, om2))
    if bL.degree == 1:
        a1_, a0_ = _proportional_split(aL, bL)
        c0, c1, c2 = _in_basis(g.beta, bL)
        tau1 = bL * (-a1_) + (-a0_)
        om1 = bL
        tau2 = bL * (a0_ * c2 / c0) + (a0_ * c1 - a1_ * c0) / c0
        om2 = ONE
        return ("C:dependent-rows-prop-beta", (tau1, om1), (tau2, om2))
    raise SubcaseExhausted("no remainder sub-case applies")


def _proportional_split(p: Poly, base: Poly) -> tuple[Fraction, Fraction]:
    """``(k1, k0)`` with ``p = k1*base + k0`` for linear ``base``."""
    k1 = p.cf(1) / base.cf(1)
    k0 = p.cf(0) - k1 * base.cf(0)
    return k1, k0


def case_c_space(g: GluingData, d: int) -> TraceNormalSpace:
    if g.beta.degree != 2 or g.beta.cf(1) ** 2 - 4 * g.beta.cf(0) * g.beta.cf(2) >= 0:
        raise WrongCase("parabolic edge expected (irreducible quadratic beta)")
    cfg = SpaceConfig.from_gluing(g, d)
    theta, omega = _low_part_params(g, cfg)
    tag, (tau1, om1), (tau2, om2) = parabolic_remainders(g)
    mu = [Param("mu1", "mu", tau1.integ(), om1), Param("mu2", "mu", tau2.integ(), om2)]
    rec = {"c": str(remainder_determinant(g)), "hat_tau_mu1": tau1, "hat_omega_mu1": om1,
           "hat_tau_mu2": tau2, "hat_omega_mu2": om2}
    return TraceNormalSpace(d, cfg, tuple(theta + omega + mu), 1, tag, rec)


def algorithm1(g: GluingData, cls: InterfaceClass, d: int) -> TraceNormalSpace:
    if d < 2:
        raise ValueError("function degree must be at least 2")
    if cls.case == CASE_A:
        return case_a_space(g, d)
    if cls.case == CASE_B:
        return case_b_space(g, cls, d)
    if cls.case == CASE_C:
        return case_c_space(g, d)
    raise WrongCase(f"unknown case {cls.case!r}")


@dataclass(frozen=True)
class SpaceDimensions:
    D0: int
    interface_dofs: int
    total: int

    def to_json(self) -> dict:
        return {"D0": self.D0, "interface_dofs": self.interface_dofs, "total": self.total}


def interior_count(d: int, sigma1: int, sigma2: int) -> int:
    return math.comb(d, 2) * (2 - sigma1 - sigma2) + (d - 1) * (d + 1) * (sigma1 + sigma2)


def dimension(g: GluingData, tns: TraceNormalSpace, d: int) -> SpaceDimensions:
    D0 = interior_count(d, g.sigma1, g.sigma2)
    formula = D0 + 2 * d + min(g.sigma(l) - g.alpha(l).degree for l in (1, 2)) + tns.kappa
    ledger = tns.n_theta + tns.n_omega + tns.n_mu
    if formula != D0 + ledger:
        raise FormulaMismatch(f"parameter count {D0 + ledger} disagrees with dimension formula {formula}")
    return SpaceDimensions(D0, ledger, int(formula))


def eta(g: GluingData, theta: Poly, omega: Poly, elem: int, d: int | None = None) -> Poly:
    """Quotient of ``alpha_l*omega + beta_l*theta'`` by ``beta``; checks divisibility and degree."""
    r = g.alpha(elem) * omega + g.beta_l(elem) * theta.deriv()
    q, rem = quo_rem(r, g.beta)
    if not rem.is_zero():
        raise NotDivisible(f"beta does not divide r_{elem}")
    if d is not None and q.degree > d - 1 + g.sigma(elem):
        raise DegreeExceeded(f"deg eta_{elem} = {q.degree} exceeds {d - 1 + g.sigma(elem)}")
    return q
