from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import pytest

from mixedc1.basisgen import build_basis
from mixedc1.c1space import algorithm1
from mixedc1.corpus import BUNDLED, bundled_mesh
from mixedc1.gluing import classify_interface, compute_gluing
from mixedc1.linalg import solve
from mixedc1.polyalg import BiPoly, _square_basis, _triangle_basis, bernstein_index_set

CORPUS = sorted(BUNDLED)


@lru_cache(maxsize=None)
def setup(name: str, d: int):
    m = bundled_mesh(name)
    g = compute_gluing(m)
    tns = algorithm1(g, classify_interface(m), d)
    return m, g, tns


@lru_cache(maxsize=None)
def basis_for(name: str, d: int, scaling: str = "factorial"):
    m, g, tns = setup(name, d)
    return build_basis(g, tns, m, scaling)


def bernstein_net(f: BiPoly, d: int) -> dict:
    """Degree-``d`` Bernstein coefficients of ``f`` by solving the basis change directly."""
    kind = f.kind
    basis = _triangle_basis(d) if kind == "triangle" else _square_basis(d)
    keys = bernstein_index_set(kind, d)
    monos = sorted({mono for k in keys for mono in basis[k].terms})
    a = [[basis[k].terms.get(mono, Fraction(0)) for k in keys] for mono in monos]
    rhs = [f.terms.get(mono, Fraction(0)) for mono in monos]
    # square system only when the monomial set matches the basis size
    assert len(monos) == len(keys)
    (sol,) = solve(a, [rhs])
    return dict(zip(keys, sol))


@pytest.fixture(params=CORPUS)
def corpus_name(request):
    return request.param
