"""Quadratic triangle / biquadratic quadrilateral elements and the shared edge."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Mapping, Sequence

from .polyalg import (BiPoly, Poly, as_rational, bernstein_index_set, bezier_bipoly,
                      format_rational, sign_constant_on_unit_interval)

GEOMETRY_DEGREE = 2

Point = tuple[Fraction, Fraction]


class MeshError(ValueError):
    """Base class for rejected mesh input."""


class EdgeMismatch(MeshError):
    pass


class IrregularOnInterface(MeshError):
    pass


class MeshFormatError(MeshError):
    pass


def _kind_domain(kind: str) -> str:
    return "triangle" if kind == "triangle" else "square"


@dataclass(frozen=True)
class Element:
    kind: str
    net: Mapping[tuple[int, int], Point]
    x: BiPoly = field(init=False, repr=False, compare=False)
    y: BiPoly = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.kind not in ("triangle", "quadrilateral"):
            raise MeshFormatError(f"unknown element kind {self.kind!r}")
        expected = set(bernstein_index_set(self.domain, GEOMETRY_DEGREE))
        if set(self.net) != expected:
            raise MeshFormatError(f"{self.kind} net must have indices {sorted(expected)}")
        net = {k: (as_rational(p[0]), as_rational(p[1])) for k, p in self.net.items()}
        object.__setattr__(self, "net", net)
        object.__setattr__(self, "x", bezier_bipoly({k: p[0] for k, p in net.items()},
                                                    GEOMETRY_DEGREE, self.domain))
        object.__setattr__(self, "y", bezier_bipoly({k: p[1] for k, p in net.items()},
                                                    GEOMETRY_DEGREE, self.domain))

    @property
    def domain(self) -> str:
        return _kind_domain(self.kind)

    @property
    def sigma(self) -> int:
        return 1 if self.kind == "quadrilateral" else 0

    @classmethod
    def from_points(cls, kind: str, points: Sequence[Sequence]) -> "Element":
        keys = bernstein_index_set(_kind_domain(kind), GEOMETRY_DEGREE)
        if len(points) != len(keys):
            raise MeshFormatError(f"{kind} needs {len(keys)} control points, got {len(points)}")
        net = {}
        for k, p in zip(keys, points):
            if len(p) != 2:
                raise MeshFormatError(f"control point {p!r} is not a pair")
            net[k] = (as_rational(p[0]), as_rational(p[1]))
        return cls(kind, net)

    def points(self) -> list[Point]:
        return [self.net[k] for k in bernstein_index_set(self.domain, GEOMETRY_DEGREE)]

    def jacobian_det(self) -> BiPoly:
        return self.x.partial_u() * self.y.partial_v() - self.x.partial_v() * self.y.partial_u()

    def __call__(self, u, v) -> Point:
        return self.x(u, v), self.y(u, v)

    def evalf(self, u: float, v: float) -> tuple[float, float]:
        return self.x.evalf(u, v), self.y.evalf(u, v)


@dataclass(frozen=True)
class MeshPair:
    elem1: Element
    elem2: Element

    @property
    def elements(self) -> tuple[Element, Element]:
        return self.elem1, self.elem2

    def element(self, ell: int) -> Element:
        if ell not in (1, 2):
            raise ValueError("element index must be 1 or 2")
        return self.elem1 if ell == 1 else self.elem2

    @property
    def edge_net(self) -> tuple[Point, Point, Point]:
        return tuple(self.elem1.net[(0, j)] for j in range(3))

    @property
    def sigmas(self) -> tuple[int, int]:
        return self.elem1.sigma, self.elem2.sigma

    def swapped(self) -> "MeshPair":
        return MeshPair(self.elem2, self.elem1)

    def to_json(self) -> dict:
        return {
            "degree_geometry": GEOMETRY_DEGREE,
            "elements": [
                {"kind": e.kind,
                 "control_points": [[format_rational(p[0]), format_rational(p[1])] for p in e.points()]}
                for e in self.elements
            ],
        }


def validate_mesh(raw: MeshPair) -> MeshPair:
    """Check the shared edge and regularity along it; returns ``raw`` unchanged."""
    for j in range(3):
        if raw.elem1.net[(0, j)] != raw.elem2.net[(0, j)]:
            raise EdgeMismatch(f"edge control point C_0,{j} differs between the elements: "
                               f"{raw.elem1.net[(0, j)]} vs {raw.elem2.net[(0, j)]}")
    for ell, elem in enumerate(raw.elements, start=1):
        det0 = elem.jacobian_det().restrict_u0()
        if sign_constant_on_unit_interval(det0) == "has_zero":
            raise IrregularOnInterface(f"Jacobian determinant of element {ell} vanishes on the interface")
    return raw


def mesh_from_json(data: dict) -> MeshPair:
    try:
        if data.get("degree_geometry", GEOMETRY_DEGREE) != GEOMETRY_DEGREE:
            raise MeshFormatError("only degree_geometry = 2 is supported")
        elems = data["elements"]
        if len(elems) != 2:
            raise MeshFormatError("exactly two elements are required")
        e1, e2 = (Element.from_points(e["kind"], e["control_points"]) for e in elems)
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        if isinstance(exc, MeshFormatError):
            raise
        raise MeshFormatError(f"malformed mesh description: {exc}") from exc
    return MeshPair(e1, e2)


def load_mesh(path: str | Path) -> MeshPair:
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise MeshFormatError(f"{path}: {exc}") from exc
    return mesh_from_json(data)


def edge_derivatives(m: MeshPair, elem: int) -> tuple[tuple[Poly, Poly], tuple[Poly, Poly]]:
    """``(dF/du(0, v), dF/dv(0, v))`` as pairs of polynomials in ``v``."""
    e = m.element(elem)
    du = (e.x.partial_u().restrict_u0(), e.y.partial_u().restrict_u0())
    dv = (e.x.partial_v().restrict_u0(), e.y.partial_v().restrict_u0())
    return du, dv


def jacobian_det(m: MeshPair, elem: int) -> BiPoly:
    return m.element(elem).jacobian_det()
