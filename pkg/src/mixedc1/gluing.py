"""Gluing data along the interface and classification of the edge."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .geometry import MeshError, MeshPair, edge_derivatives
from .polyalg import Poly, exact_div, gcd_normalized, quo_rem, sign_constant_on_unit_interval

CASE_A = "A_uniform_linear"
CASE_B = "B_nonuniform_linear"
CASE_C = "C_parabolic"


class IrregularGluing(MeshError):
    pass


class DegenerateEdge(MeshError):
    pass


class InternalInconsistency(AssertionError):
    """A relation guaranteed by the theory failed; indicates a bug."""


def perp(p: tuple[Poly, Poly]) -> tuple[Poly, Poly]:
    x, y = p
    return y, -x


def dot(p, q) -> Poly:
    return p[0] * q[0] + p[1] * q[1]


def det2(p, q) -> Poly:
    return p[0] * q[1] - p[1] * q[0]


@dataclass(frozen=True)
class GluingData:
    alpha_tilde1: Poly
    alpha_tilde2: Poly
    gamma: Poly
    alpha1: Poly
    alpha2: Poly
    alpha_cross: Poly
    beta: Poly
    beta1: Poly
    beta2: Poly
    hat_alpha1: Poly
    hat_alpha2: Poly
    hat_beta1: Poly
    hat_beta2: Poly
    star_alpha1: Poly
    star_alpha2: Poly
    star_beta1: Poly
    star_beta2: Poly
    sigma1: int
    sigma2: int

    def alpha(self, ell: int) -> Poly:
        return self.alpha1 if ell == 1 else self.alpha2

    def beta_l(self, ell: int) -> Poly:
        return self.beta1 if ell == 1 else self.beta2

    def hat_alpha(self, ell: int) -> Poly:
        return self.hat_alpha1 if ell == 1 else self.hat_alpha2

    def hat_beta(self, ell: int) -> Poly:
        return self.hat_beta1 if ell == 1 else self.hat_beta2

    def sigma(self, ell: int) -> int:
        return self.sigma1 if ell == 1 else self.sigma2

    def to_json(self) -> dict:
        names = ["alpha_tilde1", "alpha_tilde2", "gamma", "alpha1", "alpha2", "alpha_cross",
                 "beta", "beta1", "beta2", "hat_alpha1", "hat_alpha2", "hat_beta1", "hat_beta2",
                 "star_alpha1", "star_alpha2", "star_beta1", "star_beta2"]
        out = {n: getattr(self, n).to_json() for n in names}
        out["sigma1"], out["sigma2"] = self.sigma1, self.sigma2
        return out


@dataclass(frozen=True)
class InterfaceClass:
    case: str
    lam: Fraction | None = None
    rho: Poly | None = None
    n0: tuple[Fraction, Fraction] | None = None

    def to_json(self) -> dict:
        from .polyalg import format_rational
        out: dict = {"case": self.case}
        if self.case == CASE_B:
            out["lambda"] = format_rational(self.lam)
            out["rho"] = self.rho.to_json()
            out["n0"] = [format_rational(c) for c in self.n0]
        return out


def compute_gluing(m: MeshPair) -> GluingData:
    du1, dv1 = edge_derivatives(m, 1)
    du2, _ = edge_derivatives(m, 2)
    at1 = det2(du1, dv1)
    at2 = det2(du2, dv1)
    n = perp(dv1)
    beta = dot(n, n)
    beta1 = dot(perp(du1), n)
    beta2 = dot(perp(du2), n)
    alpha_cross = det2(du2, du1)
    for name, p in (("alpha_tilde1", at1), ("alpha_tilde2", at2)):
        if sign_constant_on_unit_interval(p) == "has_zero":
            raise IrregularGluing(f"{name} vanishes on [0, 1]")
    gamma = gcd_normalized(at1, at2)
    if sign_constant_on_unit_interval(gamma) == "has_zero":
        raise IrregularGluing("gcd of the Jacobian determinants vanishes on [0, 1]")
    a1, a2 = exact_div(at1, gamma), exact_div(at2, gamma)
    if sign_constant_on_unit_interval(beta) != "positive":
        raise IrregularGluing("edge tangent vanishes on [0, 1]")
    sa1, ha1 = quo_rem(a1, beta)
    sa2, ha2 = quo_rem(a2, beta)
    sb1, hb1 = quo_rem(beta1, beta)
    sb2, hb2 = quo_rem(beta2, beta)
    g = GluingData(at1, at2, gamma, a1, a2, alpha_cross, beta, beta1, beta2,
                   ha1, ha2, hb1, hb2, sa1, sa2, sb1, sb2, *m.sigmas)
    if beta * alpha_cross != gamma * a2 * beta1 - gamma * a1 * beta2:
        raise InternalInconsistency("beta*alpha != gamma*(alpha2*beta1 - alpha1*beta2)")
    return g


def classify_interface(m: MeshPair) -> InterfaceClass:
    c0, c1, c2 = m.edge_net
    chord = (c2[0] - c0[0], c2[1] - c0[1])
    off = (c1[0] - c0[0], c1[1] - c0[1])
    cross = chord[0] * off[1] - chord[1] * off[0]
    if cross != 0:
        return InterfaceClass(CASE_C)
    if chord == (0, 0):
        raise DegenerateEdge("edge end points coincide")
    # collinear: C1 = (1 - lam) C0 + lam C2
    k = 0 if chord[0] != 0 else 1
    lam = off[k] / chord[k]
    if lam == Fraction(1, 2):
        return InterfaceClass(CASE_A)
    rho = Poly([2 * lam, 2 * (1 - 2 * lam)])
    n0 = (chord[1], -chord[0])
    return InterfaceClass(CASE_B, lam=lam, rho=rho, n0=n0)


def remainder_determinant(g: GluingData) -> Fraction:
    """Constant ``c`` with ``hat_alpha1*hat_beta2 - hat_alpha2*hat_beta1 = c*beta``."""
    if g.beta.degree != 2:
        raise ValueError("only meaningful for a parabolic edge")
    lhs = g.hat_alpha1 * g.hat_beta2 - g.hat_alpha2 * g.hat_beta1
    q, r = quo_rem(lhs, g.beta)
    if not r.is_zero() or q.degree > 0:
        raise InternalInconsistency("beta does not divide the remainder determinant")
    return q.cf(0)
