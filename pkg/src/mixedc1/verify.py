"""Independent checks of C1 smoothness, dimensions and conditioning."""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass

import numpy as np

from .geometry import MeshPair, edge_derivatives
from .gluing import GluingData, det2
from .linalg import rank
from .polyalg import BiPoly, Poly, _square_basis, _triangle_basis, bernstein_index_set


@dataclass(frozen=True)
class C1Report:
    trace_residual: Poly
    identity_residual: Poly

    @property
    def passed(self) -> bool:
        return self.trace_residual.is_zero() and self.identity_residual.is_zero()

    def to_json(self) -> dict:
        return {"pass": self.passed, "trace_residual": self.trace_residual.to_json(),
                "identity_residual": self.identity_residual.to_json()}


def _pullbacks(f) -> tuple[BiPoly, BiPoly]:
    return f.bipoly(1), f.bipoly(2)


def c1_identity_check(f, g: GluingData) -> C1Report:
    """Exact residuals of the trace equality and the determinant identity along ``u = 0``."""
    f1, f2 = _pullbacks(f)
    trace = f1.restrict_u0() - f2.restrict_u0()
    du1 = f1.partial_u().restrict_u0()
    du2 = f2.partial_u().restrict_u0()
    dv1 = f1.partial_v().restrict_u0()
    res = g.gamma * g.alpha1 * du2 - g.gamma * g.alpha2 * du1 + g.alpha_cross * dv1
    return C1Report(trace, res)


@dataclass(frozen=True)
class OracleResult:
    rows: int
    cols: int
    rank: int

    @property
    def nullspace_dim(self) -> int:
        return self.cols - self.rank

    def to_json(self) -> dict:
        return {"constraint_rows": self.rows, "unknowns": self.cols, "nullspace_dim": self.nullspace_dim}


def _edge_data(basis: dict, key) -> tuple[Poly, Poly, Poly]:
    b = basis[key]
    return b.restrict_u0(), b.partial_u().restrict_u0(), b.partial_v().restrict_u0()


def dimension_oracle(m: MeshPair, d: int) -> OracleResult:
    """Dimension of the C1 space from the raw constraint system on all Bezier coefficients.

    The constraints are trace equality and the vanishing of
    ``det[dF2/du, dF1/du, dF1/dv]`` with the function value appended as third
    coordinate.  Nothing from the gluing-data construction (gcd, remainders)
    is used.
    """
    (du1x, du1y), (dv1x, dv1y) = edge_derivatives(m, 1)
    (du2x, du2y), _ = edge_derivatives(m, 2)
    a1 = det2((du1x, du1y), (dv1x, dv1y))
    a2 = det2((du2x, du2y), (dv1x, dv1y))
    ac = det2((du2x, du2y), (du1x, du1y))
    cols = []  # per unknown: (trace contribution, determinant contribution)
    for ell, elem in enumerate(m.elements, start=1):
        basis = _triangle_basis(d) if elem.domain == "triangle" else _square_basis(d)
        for key in bernstein_index_set(elem.domain, d):
            tr, du, dv = _edge_data(basis, key)
            if ell == 1:
                cols.append((tr, -a2 * du + ac * dv))
            else:
                cols.append((-tr, a1 * du))
    ntr = max(c[0].degree for c in cols if not c[0].is_zero()) + 1
    ndet = max(c[1].degree for c in cols if not c[1].is_zero()) + 1
    rows = [[c[0].cf(k) for c in cols] for k in range(ntr)]
    rows += [[c[1].cf(k) for c in cols] for k in range(ndet)]
    return OracleResult(len(rows), len(cols), rank(rows, len(cols)))


def _grad_xy(elem, fb: BiPoly, u: float, v: float) -> np.ndarray:
    jac = np.array([[elem.x.partial_u().evalf(u, v), elem.x.partial_v().evalf(u, v)],
                    [elem.y.partial_u().evalf(u, v), elem.y.partial_v().evalf(u, v)]])
    g = np.array([fb.partial_u().evalf(u, v), fb.partial_v().evalf(u, v)])
    return np.linalg.solve(jac.T, g)


def gradient_jump(f, m: MeshPair, samples: int = 101) -> float:
    """Largest Euclidean difference of the physical gradients across the interface."""
    f1, f2 = _pullbacks(f)
    worst = 0.0
    for t in np.linspace(0.0, 1.0, samples):
        g1 = _grad_xy(m.elem1, f1, 0.0, float(t))
        g2 = _grad_xy(m.elem2, f2, 0.0, float(t))
        worst = max(worst, float(np.linalg.norm(g1 - g2)))
    return worst


def condition_number(basis_set) -> float:
    a = np.array([[float(x) for x in row] for row in basis_set.collocation_matrix])
    return float(np.linalg.cond(a, 2))


def sample_surface(f, m: MeshPair, n: int) -> list[tuple]:
    """``(elem, u, v, x, y, value)`` on an ``n``-interval grid per element."""
    rows = []
    grid = [k / n for k in range(n + 1)] if n > 0 else [0.0]
    for ell, elem in enumerate(m.elements, start=1):
        fb = f.bipoly(ell)
        for u in grid:
            for v in grid:
                if elem.domain == "triangle" and u + v > 1 + 1e-12:
                    continue
                x, y = elem.evalf(u, v)
                rows.append((ell, u, v, x, y, fb.evalf(u, v)))
    return rows


def sample_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["elem", "u", "v", "x", "y", "value"])
    for r in rows:
        w.writerow([r[0]] + [repr(float(c)) for c in r[1:]])
    return buf.getvalue()
