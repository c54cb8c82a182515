"""Named two-element configurations used as a regression corpus.

All meshes pair a quadratic triangle (element 1) with a biquadratic
quadrilateral (element 2).  The free control points are substituted exactly.
"""
from __future__ import annotations

from fractions import Fraction as Fr

from .geometry import Element, MeshPair

# parabolic edge (0,0), (1/4,1/2), (0,1)
_PARABOLIC_EDGE = [(0, 0), (Fr(1, 4), Fr(1, 2)), (0, 1)]
# straight edge, middle point at one third
_SKEWED_EDGE = [(0, 0), (0, Fr(1, 3)), (0, 1)]
# straight edge, uniform
_UNIFORM_EDGE = [(0, 0), (0, Fr(1, 2)), (0, 1)]


def two_element_mesh(edge, p1, p2) -> MeshPair:
    """Triangle + quadrilateral sharing ``edge`` with free points ``p1``, ``p2``."""
    c0, c1, c2 = edge
    tri = Element.from_points("triangle", [
        c0, c1, c2,
        p1, (Fr(3, 4), 1),
        (Fr(6, 5), Fr(3, 4)),
    ])
    quad = Element.from_points("quadrilateral", [
        c0, c1, c2,
        (Fr(-2, 3), Fr(-1, 5)), p2, (Fr(-7, 10), Fr(6, 5)),
        (-1, 0), (Fr(-5, 4), Fr(1, 2)), (-1, 1),
    ])
    return MeshPair(tri, quad)


def parabolic_mesh(x1, y1, x2, y2) -> MeshPair:
    return two_element_mesh(_PARABOLIC_EDGE, (Fr(x1), Fr(y1)), (Fr(x2), Fr(y2)))


def skewed_line_mesh(x1, y1, x2, y2) -> MeshPair:
    return two_element_mesh(_SKEWED_EDGE, (Fr(x1), Fr(y1)), (Fr(x2), Fr(y2)))


def uniform_line_mesh(x1, y1, x2, y2) -> MeshPair:
    return two_element_mesh(_UNIFORM_EDGE, (Fr(x1), Fr(y1)), (Fr(x2), Fr(y2)))


def ex1_common_quadratic_factor(x1, y1) -> MeshPair:
    """Second free point placed so the two Jacobians share a quadratic factor."""
    x1, y1 = Fr(x1), Fr(y1)
    den = 60 * (2 * x1 - y1)
    x2 = (24 * x1 * y1 - 48 * x1 ** 2 + 54 * x1 - 44 * y1 - 17) / den
    y2 = (-48 * x1 * y1 + 84 * x1 + 24 * y1 ** 2 - 8 * y1 - 17) / den
    return parabolic_mesh(x1, y1, x2, y2)


def ex3_case2_y2(x1, y1, x2) -> Fr:
    """Solve the uniform-edge degeneracy condition for y2."""
    x1, y1, x2 = Fr(x1), Fr(y1), Fr(x2)
    rest = Fr(86, 15) - 4 * x1 + 4 * x2 - Fr(82, 15) * y1 - 8 * x2 * y1
    return rest / (6 - 8 * x1)


_HALF, _M15 = Fr(1, 2), Fr(-1, 5)

BUNDLED = {
    "ex1-generic": lambda: parabolic_mesh(_HALF, _M15, -_HALF, Fr(2, 3)),
    "ex1-proportional": lambda: parabolic_mesh(_HALF, _M15, Fr(-2, 5), Fr(61, 75)),
    "ex1-special-c": lambda: parabolic_mesh(Fr(9, 10), Fr(14, 25), -_HALF, Fr(41, 100)),
    "ex1-special-c1": lambda: parabolic_mesh(Fr(9, 10), Fr(14, 25), Fr(-19, 45), Fr(397, 900)),
    "ex1-gamma-quadratic": lambda: ex1_common_quadratic_factor(_HALF, _M15),
    "ex1-gamma-beta": lambda: ex1_common_quadratic_factor(Fr(7, 10), Fr(-1, 10)),
    "ex2-generic": lambda: skewed_line_mesh(_HALF, _M15, -_HALF, Fr(2, 3)),
    "ex2-case2": lambda: skewed_line_mesh(_HALF, _M15, Fr(-85, 100), -(3067 + 3840 * Fr(-85, 100)) / 900),
    "ex2-choice3": lambda: skewed_line_mesh(Fr(3, 8), _M15, Fr(-101, 120), Fr(2, 3)),
    "ex2-choice4": lambda: skewed_line_mesh(Fr(3, 8), Fr(1, 3), Fr(-101, 120), Fr(11, 60)),
    "ex3": lambda: uniform_line_mesh(_HALF, _M15, -_HALF, Fr(2, 3)),
    "ex3-case2": lambda: uniform_line_mesh(_HALF, _M15, -_HALF, ex3_case2_y2(_HALF, _M15, -_HALF)),
}


def bundled_mesh(name: str) -> MeshPair:
    try:
        return BUNDLED[name]()
    except KeyError:
        raise KeyError(f"unknown example {name!r}; choose from {', '.join(BUNDLED)}") from None
