"""Polyhedral convex functions and their (singular) subdifferentials.

A function is stored as a maximum of affine pieces over a polyhedral
domain and is ``+inf`` off the domain.  Values are Fractions, with
``math.inf`` standing for ``+inf``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import DimensionMismatch, ImproperFunctionError
from .polyhedron import (
    HPolyhedron,
    VPolyhedron,
    contains_point,
    h_to_v,
    intersect,
    minkowski_sum,
    normalize,
    section,
)
from .rational import RatLike, Vec, dot, to_rat, vec, zeros

Extended = Union[Fraction, float]


@dataclass(frozen=True)
class PolyhedralFunction:
    """``f(x) = max_k <v_k, x> + beta_k`` on ``domain``, ``+inf`` elsewhere.

    Construction rejects improper data: an empty piece list or an empty domain.
    """

    dim: int
    domain: HPolyhedron
    pieces: tuple[tuple[Vec, Fraction], ...]

    def __post_init__(self):
        pieces = tuple((vec(v), to_rat(b)) for v, b in self.pieces)
        if not pieces:
            raise ImproperFunctionError("a polyhedral function needs at least one affine piece")
        if self.domain.dim != self.dim:
            raise DimensionMismatch(f"domain has dimension {self.domain.dim}, function {self.dim}")
        for v, _ in pieces:
            if len(v) != self.dim:
                raise DimensionMismatch(f"piece slope has {len(v)} entries, expected {self.dim}")
        if h_to_v(self.domain).empty:
            raise ImproperFunctionError("the domain is empty")
        object.__setattr__(self, "pieces", pieces)

    @classmethod
    def affine(cls, v: Sequence[RatLike], beta: RatLike = 0, domain: HPolyhedron | None = None):
        v = vec(v)
        return cls(len(v), domain or HPolyhedron.universe(len(v)), ((v, to_rat(beta)),))

    @classmethod
    def max_of(cls, pieces: Iterable[tuple[Sequence[RatLike], RatLike]], domain: HPolyhedron | None = None, dim: int | None = None):
        pieces = tuple((vec(v), to_rat(b)) for v, b in pieces)
        if dim is None:
            dim = len(pieces[0][0]) if pieces else domain.dim
        return cls(dim, domain or HPolyhedron.universe(dim), pieces)

    def __call__(self, x: Sequence[RatLike]) -> Extended:
        return evaluate(self, x)

    def active_pieces(self, x: Vec) -> list[int]:
        fx = max(dot(v, x) + b for v, b in self.pieces)
        return [k for k, (v, b) in enumerate(self.pieces) if dot(v, x) + b == fx]


def _check_point(f: PolyhedralFunction, x) -> Vec:
    x = vec(x)
    if len(x) != f.dim:
        raise DimensionMismatch(f"point has dimension {len(x)}, function {f.dim}")
    return x


def evaluate(f: PolyhedralFunction, x: Sequence[RatLike]) -> Extended:
    x = _check_point(f, x)
    if not contains_point(f.domain, x):
        return math.inf
    return max(dot(v, x) + b for v, b in f.pieces)


def indicator(c: HPolyhedron) -> PolyhedralFunction:
    """The indicator function of ``c`` (0 on ``c``, ``+inf`` off it)."""
    if h_to_v(c).empty:
        raise ImproperFunctionError("indicator of the empty set is not proper")
    return PolyhedralFunction(c.dim, c, ((zeros(c.dim), Fraction(0)),))


def normal_cone(c: HPolyhedron, x: Sequence[RatLike]) -> VPolyhedron:
    """Normal cone of ``c`` at ``x``: active inequality rows generate it as a
    cone, equality rows as a subspace.  Empty when ``x`` is not in ``c``."""
    x = vec(x)
    if len(x) != c.dim:
        raise DimensionMismatch(f"point has dimension {len(x)}, set {c.dim}")
    if not contains_point(c, x):
        return VPolyhedron.empty_set(c.dim)
    active = [row for row, b in zip(c.ineq_lhs, c.ineq_rhs) if dot(row, x) == b]
    return normalize(VPolyhedron.cone(c.dim, active, c.eq_lhs))


def epigraph(f: PolyhedralFunction) -> HPolyhedron:
    """``{(x, t) : x in dom f, <v_k, x> + beta_k <= t for all k}``."""
    d = f.domain
    ineq_lhs = tuple(r + (Fraction(0),) for r in d.ineq_lhs)
    ineq_lhs += tuple(v + (Fraction(-1),) for v, _ in f.pieces)
    ineq_rhs = d.ineq_rhs + tuple(-b for _, b in f.pieces)
    eq_lhs = tuple(r + (Fraction(0),) for r in d.eq_lhs)
    return HPolyhedron(f.dim + 1, eq_lhs, d.eq_rhs, ineq_lhs, ineq_rhs)


def subdifferential(f: PolyhedralFunction, x: Sequence[RatLike]) -> VPolyhedron:
    """Convex hull of the active slopes plus the normal cone of the domain."""
    x = _check_point(f, x)
    if not contains_point(f.domain, x):
        return VPolyhedron.empty_set(f.dim)
    slopes = tuple(f.pieces[k][0] for k in f.active_pieces(x))
    return minkowski_sum(VPolyhedron(f.dim, slopes), normal_cone(f.domain, x))


def singular_subdifferential(f: PolyhedralFunction, x: Sequence[RatLike]) -> VPolyhedron:
    x = _check_point(f, x)
    return normal_cone(f.domain, x)


def epigraph_normal_slice(f: PolyhedralFunction, x: Sequence[RatLike], last: RatLike) -> VPolyhedron:
    """``{x* : (x*, last) in N((x, f(x)); epi f)}``.

    With ``last = -1`` this is the subdifferential straight from its
    epigraphical characterization; with ``last = 0`` it is the singular
    subdifferential by definition.
    """
    x = _check_point(f, x)
    fx = evaluate(f, x)
    if fx == math.inf:
        return VPolyhedron.empty_set(f.dim)
    cone = normal_cone(epigraph(f), x + (fx,))
    return h_to_v(section(cone, {f.dim: last}))


def function_sum(f1: PolyhedralFunction, f2: PolyhedralFunction) -> PolyhedralFunction:
    if f1.dim != f2.dim:
        raise DimensionMismatch(f"dimension mismatch: {f1.dim} vs {f2.dim}")
    domain = intersect(f1.domain, f2.domain)
    if h_to_v(domain).empty:
        raise ImproperFunctionError("the domains do not intersect")
    pieces = tuple(
        (tuple(a + b for a, b in zip(v1, v2)), b1 + b2)
        for v1, b1 in f1.pieces
        for v2, b2 in f2.pieces
    )
    return PolyhedralFunction(f1.dim, domain, pieces)
