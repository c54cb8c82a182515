"""Concrete C1 basis functions on the two-element mesh.

Interface functions come from an interpolation problem on the trace ``theta``
and the scaled normal derivative ``omega``; interior functions are single
Bezier coefficients away from the interface.  Everything is exact.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .c1space import TraceNormalSpace, eta, interior_count
from .geometry import MeshPair
from .gluing import GluingData
from .linalg import SingularMatrix, solve
from .polyalg import BiPoly, Poly, bernstein_index_set, bezier_bipoly, format_rational, to_bernstein


class SingularCollocation(ArithmeticError):
    pass


class DegreeMismatch(ValueError):
    pass


class MixedOrientation(ValueError):
    pass


SCALINGS = ("factorial", "unit")


def falling(n: int, k: int) -> int:
    return math.prod(range(n, n - k, -1))


@dataclass(frozen=True)
class Functional:
    target: str  # "theta" | "omega"
    t: Fraction
    order: int
    scale: Fraction

    def __call__(self, theta: Poly, omega: Poly) -> Fraction:
        p = theta if self.target == "theta" else omega
        return self.scale * p.deriv(self.order)(self.t)

    @property
    def label(self) -> str:
        return f"{self.target}^({self.order})({format_rational(self.t)})"


@dataclass(frozen=True)
class FunctionalSet:
    K: int
    functionals: tuple[Functional, ...]

    def __len__(self):
        return len(self.functionals)

    @property
    def trace(self) -> list[Functional]:
        return [f for f in self.functionals if f.target == "theta"]

    @property
    def normal(self) -> list[Functional]:
        return [f for f in self.functionals if f.target == "omega"]


def build_functionals(tns: TraceNormalSpace, d: int, scaling: str = "factorial") -> FunctionalSet:
    """Endpoint derivatives up to order ``K`` plus uniform interior point values.

    With ``scaling="factorial"`` a trace derivative of order ``j`` is divided by
    ``d (d-1) ... (d-j+1)`` and a normal derivative of order ``j`` by
    ``(d-1) (d-2) ... (d-1-j)``; interior point values use the order-0
    factors.  ``"unit"`` leaves every functional unscaled.
    """
    if scaling not in SCALINGS:
        raise ValueError(f"scaling must be one of {SCALINGS}")
    nt, nw = tns.n_theta, tns.n_omega
    factorial = scaling == "factorial"

    def th_scale(j):
        return Fraction(1, falling(d, j)) if factorial else Fraction(1)

    def om_scale(j):
        return Fraction(1, falling(d - 1, j + 1)) if factorial and d > 1 + j else Fraction(1)

    fs: list[Functional] = []
    if nt < 2:
        # too few trace parameters for endpoint conditions: point values only
        fs += [Functional("theta", Fraction(i + 1, nt + 1), 0, Fraction(1)) for i in range(nt)]
        fs += [Functional("omega", Fraction(j + 1, nw + 1), 0, Fraction(1)) for j in range(nw)]
        return FunctionalSet(0, tuple(fs))
    K = min((nt - 2) // 2, nw // 2)
    for t in (0, 1):
        fs += [Functional("theta", Fraction(t), j, th_scale(j)) for j in range(K + 1)]
    for t in (0, 1):
        fs += [Functional("omega", Fraction(t), j, om_scale(j)) for j in range(K)]
    n_ti, n_wi = nt - 2 * K - 2, nw - 2 * K
    if n_ti:
        fs += [Functional("theta", Fraction(i, n_ti + 1), 0, Fraction(1)) for i in range(1, n_ti + 1)]
    if n_wi:
        fs += [Functional("omega", Fraction(j, n_wi + 1), 0, om_scale(0)) for j in range(1, n_wi + 1)]
    return FunctionalSet(K, tuple(fs))


@dataclass
class IsoFunction:
    d: int
    kinds: tuple[str, str]
    net1: dict
    net2: dict
    tag: str = ""
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def net(self, ell: int) -> dict:
        return self.net1 if ell == 1 else self.net2

    def bipoly(self, ell: int) -> BiPoly:
        if ell not in self._cache:
            self._cache[ell] = bezier_bipoly(self.net(ell), self.d, self.kinds[ell - 1])
        return self._cache[ell]

    def combine(self, other: "IsoFunction", a, b) -> "IsoFunction":
        a, b = Fraction(a), Fraction(b)
        nets = [{k: a * n[k] + b * o[k] for k in n} for n, o in ((self.net1, other.net1), (self.net2, other.net2))]
        return IsoFunction(self.d, self.kinds, nets[0], nets[1], self.tag)

    def to_json(self) -> dict:
        def ser(net):
            return [[i, j, format_rational(net[(i, j)])] for (i, j) in sorted(net)]
        return {"tag": self.tag, "net1": ser(self.net1), "net2": ser(self.net2)}


def _kinds(g: GluingData) -> tuple[str, str]:
    return tuple("square" if s else "triangle" for s in (g.sigma1, g.sigma2))


def _empty_net(kind: str, d: int) -> dict:
    return {k: Fraction(0) for k in bernstein_index_set(kind, d)}


def assemble_net(g: GluingData, theta: Poly, eta1: Poly, eta2: Poly, interior: dict | None, d: int,
                 tag: str = "") -> IsoFunction:
    """Bezier nets from trace, transversal derivatives and free interior coefficients.

    ``interior`` maps ``(ell, i, j)`` with ``i >= 2`` to a coefficient.
    """
    if theta.degree > d:
        raise DegreeMismatch(f"trace degree {theta.degree} exceeds {d}")
    kinds = _kinds(g)
    row0 = to_bernstein(theta, d)
    nets = []
    for ell, (kind, et) in enumerate(zip(kinds, (eta1, eta2)), start=1):
        deg = d - 1 + g.sigma(ell)
        if et.degree > deg:
            raise DegreeMismatch(f"eta_{ell} degree {et.degree} exceeds {deg}")
        row1 = to_bernstein(et, deg)
        net = _empty_net(kind, d)
        for j in range(d + 1):
            net[(0, j)] = row0[j]
        for j in range(deg + 1):
            net[(1, j)] = net[(0, j)] + row1[j] / d
        nets.append(net)
    for (ell, i, j), c in (interior or {}).items():
        if i < 2 or (i, j) not in nets[ell - 1]:
            raise DegreeMismatch(f"({i}, {j}) is not an interior coefficient of element {ell}")
        nets[ell - 1][(i, j)] = Fraction(c)
    return IsoFunction(d, kinds, nets[0], nets[1], tag)


def interior_keys(kinds, d: int) -> list[tuple[int, int, int]]:
    keys = []
    for ell, kind in enumerate(kinds, start=1):
        keys += [(ell, i, j) for (i, j) in bernstein_index_set(kind, d) if i >= 2]
    return keys


def interior_block(d: int, kinds) -> list[IsoFunction]:
    kinds = tuple("square" if k in ("square", "quadrilateral") else "triangle" for k in kinds)
    out = []
    for ell, i, j in interior_keys(kinds, d):
        nets = [_empty_net(k, d) for k in kinds]
        nets[ell - 1][(i, j)] = Fraction(1)
        out.append(IsoFunction(d, kinds, nets[0], nets[1], f"interior[{ell},{i},{j}]"))
    return out


def _orientation(m: MeshPair) -> tuple[int, int]:
    signs = []
    for elem in m.elements:
        det = elem.jacobian_det()
        s = det(0, Fraction(1, 2))
        if s == 0:
            raise MixedOrientation("degenerate Jacobian at the interface midpoint")
        signs.append(1 if s > 0 else -1)
    return tuple(signs)


def inner_product(f: IsoFunction, h: IsoFunction, m: MeshPair) -> Fraction:
    """Exact L2 product on the physical domain, using ``|det|`` per element."""
    total = Fraction(0)
    for ell, (elem, s) in enumerate(zip(m.elements, _orientation(m)), start=1):
        total += s * (f.bipoly(ell) * h.bipoly(ell) * elem.jacobian_det()).integral()
    return total


@dataclass
class BasisSet:
    functionals: FunctionalSet
    collocation_matrix: list[list[Fraction]]
    interface_functions: list[IsoFunction]
    interior_functions: list[IsoFunction]

    @property
    def functions(self) -> list[IsoFunction]:
        return self.interface_functions + self.interior_functions

    def __len__(self):
        return len(self.interface_functions) + len(self.interior_functions)


def collocation_matrix(tns: TraceNormalSpace, fs: FunctionalSet) -> list[list[Fraction]]:
    """Functionals (rows) applied to the theta/omega parameter directions (columns)."""
    cols = [p for p in tns.params if p.block != "mu"]
    return [[lam(p.theta, p.omega) for p in cols] for lam in fs.functionals]


def _to_iso(g, tns, weights, d, tag) -> IsoFunction:
    theta, omega = tns.combine(weights)
    return assemble_net(g, theta, eta(g, theta, omega, 1, d), eta(g, theta, omega, 2, d), None, d, tag)


def collocate(g: GluingData, tns: TraceNormalSpace, fs: FunctionalSet, m: MeshPair | None = None,
              mu_orthogonalize: bool = True) -> tuple[list[list[Fraction]], list[IsoFunction]]:
    d = tns.d
    a = collocation_matrix(tns, fs)
    n = len(a)
    if n != tns.n_theta + tns.n_omega or any(len(r) != n for r in a):
        raise SingularCollocation("collocation system is not square")
    mu_idx = [k for k, p in enumerate(tns.params) if p.block == "mu"]
    free_idx = [k for k, p in enumerate(tns.params) if p.block != "mu"]
    rhs = [[Fraction(int(i == k)) for i in range(n)] for k in range(n)]
    for k in mu_idx:
        p = tns.params[k]
        rhs.append([-lam(p.theta, p.omega) for lam in fs.functionals])
    try:
        sols = solve(a, rhs) if n else [[] for _ in rhs]
    except SingularMatrix as exc:
        raise SingularCollocation(f"{exc}; try different interior nodes") from None
    funcs = []
    for col, sol in enumerate(sols):
        w = [Fraction(0)] * len(tns.params)
        for k, x in zip(free_idx, sol):
            w[k] = x
        if col < n:
            tag = fs.functionals[col].label
        else:
            k = mu_idx[col - n]
            w[k] = Fraction(1)
            tag = tns.params[k].name
        funcs.append(_to_iso(g, tns, w, d, tag))
    if mu_idx and mu_orthogonalize:
        if m is None:
            raise ValueError("the mesh is needed for the orthogonalization")
        g1, g2 = funcs[n], funcs[n + 1]
        c = inner_product(g2, g1, m) / inner_product(g1, g1, m)
        funcs[n + 1] = g2.combine(g1, 1, -c)
    return a, funcs


def build_basis(g: GluingData, tns: TraceNormalSpace, m: MeshPair, scaling: str = "factorial",
                mu_orthogonalize: bool = True) -> BasisSet:
    fs = build_functionals(tns, tns.d, scaling)
    a, iface = collocate(g, tns, fs, m, mu_orthogonalize)
    inner = interior_block(tns.d, _kinds(g))
    assert len(inner) == interior_count(tns.d, g.sigma1, g.sigma2)
    return BasisSet(fs, a, iface, inner)
