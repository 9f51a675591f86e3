"""Optimal value function of a parametric polyhedral program and its
(singular) subdifferential, computed two ways.

The problem is ``min { phi(x, y) : y in G(x) }`` with ``phi`` a polyhedral
function on ``R^n x R^m`` and ``G`` given by its polyhedral graph.  Points of
the product space are ordered ``(x, y)`` and dual vectors are identified with
primal ones through the dot product.

Route one builds the value function ``mu`` explicitly (projecting the
epigraph of ``phi + indicator(gph G)``) and reads ``d mu`` off the normal cone
of its epigraph.  Route two evaluates the estimate formulas at a minimizer
``y_bar``::

    B0     = pr_x[(d phi(x, y) + N((x, y); gph G)) cap (R^n x {0})]
    A0     = union over (x*, y*) in d phi(x, y) of x* + D*G(x, y)(y*)

and their singular counterparts with ``d^inf phi`` in place of ``d phi``.
In finite dimensions sums and projections of polyhedra are closed, so the
closed sets ``A``, ``B`` coincide with ``A0``, ``B0``.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence, Union

from .convex import (
    Extended,
    PolyhedralFunction,
    epigraph,
    epigraph_normal_slice,
    normal_cone,
    singular_subdifferential,
    subdifferential,
)
from .errors import (
    DimensionMismatch,
    HypothesisViolation,
    ImproperFunctionError,
    NoSolutionError,
    PreconditionError,
)
from .polyhedron import (
    HPolyhedron,
    VPolyhedron,
    as_h,
    contains_point,
    h_to_v,
    includes,
    intersect,
    linear_image,
    minkowski_sum,
    project,
    sample_point,
    section,
    set_equal,
    v_to_h,
)
from .rational import RatLike, Vec, vec


@dataclass(frozen=True)
class PolyhedralMap:
    """Set-valued map ``G(x) = {y : (x, y) in graph}``."""

    dim_x: int
    dim_y: int
    graph: HPolyhedron

    def __post_init__(self):
        if self.graph.dim != self.dim_x + self.dim_y:
            raise DimensionMismatch(
                f"graph has dimension {self.graph.dim}, expected {self.dim_x} + {self.dim_y}"
            )


@dataclass(frozen=True)
class ParametricProblem:
    phi: PolyhedralFunction
    G: PolyhedralMap

    def __post_init__(self):
        if self.phi.dim != self.G.graph.dim:
            raise DimensionMismatch(f"phi has dimension {self.phi.dim}, graph {self.G.graph.dim}")

    @property
    def dim_x(self) -> int:
        return self.G.dim_x

    @property
    def dim_y(self) -> int:
        return self.G.dim_y


@dataclass(frozen=True)
class ImproperValue:
    """Returned by :func:`value_function` when ``mu`` is not proper.

    ``reason`` is ``"minus_infinity"`` (unbounded below somewhere) or
    ``"empty_domain"`` (``mu`` is identically ``+inf``).
    """

    reason: str


def _x(problem: ParametricProblem, x: Sequence[RatLike]) -> Vec:
    x = vec(x)
    if len(x) != problem.dim_x:
        raise DimensionMismatch(f"parameter has dimension {len(x)}, expected {problem.dim_x}")
    return x


def _lifted(problem: ParametricProblem) -> HPolyhedron:
    """``{(x, y, t) : (x, y) in dom phi cap gph G, phi(x, y) <= t}``."""
    g = problem.G.graph
    pad = lambda rows: tuple(r + (Fraction(0),) for r in rows)
    graph_in_xyt = HPolyhedron(g.dim + 1, pad(g.eq_lhs), g.eq_rhs, pad(g.ineq_lhs), g.ineq_rhs)
    return intersect(epigraph(problem.phi), graph_in_xyt)


def _parameter_section(problem: ParametricProblem, x: Vec) -> VPolyhedron:
    """Generators of ``{(y, t) : y in G(x), phi(x, y) <= t}``."""
    return h_to_v(section(_lifted(problem), dict(enumerate(x))))


def map_value(G: PolyhedralMap, x: Sequence[RatLike]) -> VPolyhedron:
    x = vec(x)
    if len(x) != G.dim_x:
        raise DimensionMismatch(f"parameter has dimension {len(x)}, expected {G.dim_x}")
    return h_to_v(section(G.graph, dict(enumerate(x))))


def coderivative(
    G: PolyhedralMap, x_bar: Sequence[RatLike], y_bar: Sequence[RatLike], y_star: Sequence[RatLike]
) -> VPolyhedron:
    """``{x* : (x*, -y*) in N((x_bar, y_bar); gph G)}``; empty off the graph."""
    x_bar, y_bar, y_star = vec(x_bar), vec(y_bar), vec(y_star)
    if (len(x_bar), len(y_bar), len(y_star)) != (G.dim_x, G.dim_y, G.dim_y):
        raise DimensionMismatch("coderivative arguments do not match the map's dimensions")
    cone = normal_cone(G.graph, x_bar + y_bar)
    if cone.empty:
        return VPolyhedron.empty_set(G.dim_x)
    fixed = {G.dim_x + j: -v for j, v in enumerate(y_star)}
    return h_to_v(section(cone, fixed))


def optimal_value(problem: ParametricProblem, x: Sequence[RatLike]) -> Extended:
    """``mu(x)``: a Fraction, ``math.inf`` (infeasible) or ``-math.inf``."""
    x = _x(problem, x)
    s = _parameter_section(problem, x)
    if s.empty:
        return math.inf
    m = problem.dim_y
    if any(l[m] != 0 for l in s.lines) or any(r[m] < 0 for r in s.rays):
        return -math.inf
    return min(v[m] for v in s.vertices)


def _solution_set(problem: ParametricProblem, x: Vec, mu: Fraction) -> VPolyhedron:
    m = problem.dim_y
    s = section(_lifted(problem), {**dict(enumerate(x)), problem.dim_x + m: mu})
    return h_to_v(s)


def solution_set(problem: ParametricProblem, x: Sequence[RatLike]) -> VPolyhedron:
    """``M(x)``, the set of minimizers; requires ``mu(x)`` finite."""
    x = _x(problem, x)
    mu = optimal_value(problem, x)
    if not isinstance(mu, Fraction):
        raise NoSolutionError(f"mu(x) = {mu}; there are no minimizers")
    return _solution_set(problem, x, mu)


def value_function(problem: ParametricProblem) -> Union[PolyhedralFunction, ImproperValue]:
    """``mu`` as an explicit polyhedral function, or :class:`ImproperValue`.

    The epigraph of ``mu`` is the projection of the lifted set onto
    ``(x, t)``; its facets with a negative ``t`` coefficient are the affine
    pieces and those without ``t`` cut out the domain.
    """
    n, m = problem.dim_x, problem.dim_y
    epi = project(h_to_v(_lifted(problem)), list(range(n)) + [n + m])
    if epi.empty:
        return ImproperValue("empty_domain")
    h = v_to_h(epi)
    # (0, -1) is a recession direction of epi mu exactly when mu hits -inf
    if all(r[n] >= 0 for r in h.ineq_lhs) and all(r[n] == 0 for r in h.eq_lhs):
        return ImproperValue("minus_infinity")
    dom_lhs, dom_rhs, pieces = [], [], []
    for row, b in zip(h.ineq_lhs, h.ineq_rhs):
        a_t = row[n]
        if a_t == 0:
            dom_lhs.append(row[:n])
            dom_rhs.append(b)
        elif a_t < 0:
            pieces.append((tuple(a / -a_t for a in row[:n]), b / a_t))
        else:
            raise AssertionError("epigraph facet bounds t from above")
    domain = HPolyhedron(n, tuple(r[:n] for r in h.eq_lhs), h.eq_rhs, tuple(dom_lhs), tuple(dom_rhs))
    return PolyhedralFunction(n, domain, tuple(pieces))


def mu_subdifferential(problem: ParametricProblem, x_bar: Sequence[RatLike]) -> tuple[VPolyhedron, VPolyhedron]:
    """``(d mu(x_bar), d^inf mu(x_bar))`` from the explicit value function.

    Uses the epigraph characterization ``(x*, -1) in N(epi mu)`` and the
    normal cone of ``dom mu``; the estimate formulas are not involved.
    """
    x_bar = _x(problem, x_bar)
    mu = value_function(problem)
    if isinstance(mu, ImproperValue):
        raise ImproperFunctionError(f"the optimal value function is improper ({mu.reason})")
    if mu(x_bar) == math.inf:
        raise HypothesisViolation("x_bar is outside dom mu")
    return epigraph_normal_slice(mu, x_bar, -1), normal_cone(mu.domain, x_bar)


# -- estimate sets ------------------------------------------------------------

def _finite_mu(problem: ParametricProblem, x_bar: Vec) -> Fraction:
    mu = optimal_value(problem, x_bar)
    if not isinstance(mu, Fraction):
        raise HypothesisViolation(f"mu(x_bar) = {mu} is not finite")
    return mu


def _check_minimizer(problem: ParametricProblem, x_bar: Sequence[RatLike], y_bar: Sequence[RatLike]) -> tuple[Vec, Vec]:
    x_bar = _x(problem, x_bar)
    y_bar = vec(y_bar)
    if len(y_bar) != problem.dim_y:
        raise DimensionMismatch(f"y_bar has dimension {len(y_bar)}, expected {problem.dim_y}")
    mu = _finite_mu(problem, x_bar)
    if not contains_point(_solution_set(problem, x_bar, mu), y_bar):
        raise PreconditionError("y_bar is not a minimizer at x_bar")
    return x_bar, y_bar


def _phi_part(problem: ParametricProblem, point: Vec, singular: bool) -> VPolyhedron:
    if singular:
        return singular_subdifferential(problem.phi, point)
    return subdifferential(problem.phi, point)


def _b0(problem: ParametricProblem, x_bar: Vec, y_bar: Vec, singular: bool) -> VPolyhedron:
    n, m = problem.dim_x, problem.dim_y
    point = x_bar + y_bar
    total = minkowski_sum(_phi_part(problem, point, singular), normal_cone(problem.G.graph, point))
    return h_to_v(section(total, {n + j: 0 for j in range(m)}))


def _a0_lifted(problem: ParametricProblem, x_bar: Vec, y_bar: Vec, singular: bool) -> VPolyhedron:
    """The union defining A0, as the image of ``{(x*, y*, xi) : (x*, y*) in d phi,
    xi in D*G(y*)}`` under ``(x*, y*, xi) -> x* + xi``."""
    n, m = problem.dim_x, problem.dim_y
    point = x_bar + y_bar
    sub = as_h(_phi_part(problem, point, singular))
    cone = as_h(normal_cone(problem.G.graph, point))
    zn = (Fraction(0),) * n

    def from_sub(row):
        return tuple(row) + zn

    def from_cone(row):
        # (a_x, a_y) . (xi, -y*)
        return zn + tuple(-a for a in row[n:]) + tuple(row[:n])

    lifted = HPolyhedron(
        2 * n + m,
        tuple(map(from_sub, sub.eq_lhs)) + tuple(map(from_cone, cone.eq_lhs)),
        sub.eq_rhs + cone.eq_rhs,
        tuple(map(from_sub, sub.ineq_lhs)) + tuple(map(from_cone, cone.ineq_lhs)),
        sub.ineq_rhs + cone.ineq_rhs,
    )
    image = [
        [Fraction(int(j == i or j == n + m + i)) for j in range(2 * n + m)] for i in range(n)
    ]
    return linear_image(h_to_v(lifted), image)


def a0_witness(
    problem: ParametricProblem,
    x_bar: Sequence[RatLike],
    y_bar: Sequence[RatLike],
    u_star: Sequence[RatLike],
    singular: bool = False,
) -> HPolyhedron:
    """``{(x*, y*) in d phi(x_bar, y_bar) : (u* - x*, -y*) in N((x_bar, y_bar); gph G)}``.

    ``u*`` belongs to A0 exactly when this set is nonempty.
    """
    n = problem.dim_x
    x_bar, y_bar, u = vec(x_bar), vec(y_bar), vec(u_star)
    point = x_bar + y_bar
    sub = as_h(_phi_part(problem, point, singular))
    cone = as_h(normal_cone(problem.G.graph, point))

    def shift(lhs, rhs):
        rows, vals = [], []
        for row, b in zip(lhs, rhs):
            rows.append(tuple(-a for a in row))
            vals.append(b - sum((a * ui for a, ui in zip(row[:n], u)), Fraction(0)))
        return tuple(rows), tuple(vals)

    eq_l, eq_r = shift(cone.eq_lhs, cone.eq_rhs)
    in_l, in_r = shift(cone.ineq_lhs, cone.ineq_rhs)
    return intersect(sub, HPolyhedron(sub.dim, eq_l, eq_r, in_l, in_r))


def estimate_B0(problem: ParametricProblem, x_bar: Sequence[RatLike], y_bar: Sequence[RatLike]) -> VPolyhedron:
    x_bar, y_bar = _check_minimizer(problem, x_bar, y_bar)
    return _b0(problem, x_bar, y_bar, singular=False)


def estimate_B0_infty(problem: ParametricProblem, x_bar: Sequence[RatLike], y_bar: Sequence[RatLike]) -> VPolyhedron:
    x_bar, y_bar = _check_minimizer(problem, x_bar, y_bar)
    return _b0(problem, x_bar, y_bar, singular=True)


def estimate_A0(problem: ParametricProblem, x_bar: Sequence[RatLike], y_bar: Sequence[RatLike], singular: bool = False) -> VPolyhedron:
    x_bar, y_bar = _check_minimizer(problem, x_bar, y_bar)
    return _a0_lifted(problem, x_bar, y_bar, singular)


# -- verification -------------------------------------------------------------

CLOSURE_NOTE = (
    "closures are identities here: Minkowski sums and projections of polyhedra "
    "are closed, so A = A0, B = B0, A_inf = A0_inf, B_inf = B0_inf"
)


@dataclass(frozen=True)
class StabilityReport:
    x_bar: Vec
    y_bar: Vec
    mu_at_x_bar: Fraction
    sub_mu: VPolyhedron
    sing_mu: VPolyhedron
    A0: VPolyhedron
    B0: VPolyhedron
    B: VPolyhedron
    Ainf0: VPolyhedron
    Binf0: VPolyhedron
    Binf: VPolyhedron
    notes: tuple[str, ...] = field(default=(CLOSURE_NOTE,))

    @property
    def A(self) -> VPolyhedron:
        return self.A0

    @property
    def Ainf(self) -> VPolyhedron:
        return self.Ainf0

    @property
    def verdicts(self) -> dict[str, bool]:
        """Recomputed from the stored sets on every access."""
        sub, sing = self.sub_mu, self.sing_mu
        return {
            "A0_eq_B0": set_equal(self.A0, self.B0),
            "Ainf0_eq_Binf0": set_equal(self.Ainf0, self.Binf0),
            "A_sub_B": includes(self.B, self.A) and includes(self.Binf, self.Ainf),
            "inclusion_sub": includes(sub, self.A) and includes(self.B, sub),
            "inclusion_sing": includes(sing, self.Ainf) and includes(self.Binf, sing),
            "upper_equality_sub": set_equal(sub, self.B),
            "upper_equality_sing": set_equal(sing, self.Binf),
            "chain_sub": all(set_equal(sub, s) for s in (self.A0, self.A, self.B0, self.B)),
            "chain_sing": all(set_equal(sing, s) for s in (self.Ainf0, self.Ainf, self.Binf0, self.Binf)),
        }

    @property
    def failed(self) -> list[str]:
        return [name for name, ok in self.verdicts.items() if not ok]

    @property
    def all_passed(self) -> bool:
        return not self.failed


def verify_stability(
    problem: ParametricProblem, x_bar: Sequence[RatLike], y_bar: Sequence[RatLike] | None = None
) -> StabilityReport:
    """Compute both sides of every subdifferential identity at ``x_bar``.

    Without ``y_bar`` the lexicographically smallest vertex of ``M(x_bar)``
    is used.
    """
    x_bar = _x(problem, x_bar)
    mu = _finite_mu(problem, x_bar)
    minimizers = _solution_set(problem, x_bar, mu)
    if y_bar is None:
        y_bar = min(minimizers.vertices)
    else:
        y_bar = vec(y_bar)
        if len(y_bar) != problem.dim_y:
            raise DimensionMismatch(f"y_bar has dimension {len(y_bar)}, expected {problem.dim_y}")
        if not contains_point(minimizers, y_bar):
            raise PreconditionError("y_bar is not a minimizer at x_bar")
    sub_mu, sing_mu = mu_subdifferential(problem, x_bar)
    b0 = _b0(problem, x_bar, y_bar, singular=False)
    binf0 = _b0(problem, x_bar, y_bar, singular=True)
    return StabilityReport(
        x_bar=x_bar,
        y_bar=y_bar,
        mu_at_x_bar=mu,
        sub_mu=sub_mu,
        sing_mu=sing_mu,
        A0=_a0_lifted(problem, x_bar, y_bar, singular=False),
        B0=b0,
        B=b0,
        Ainf0=_a0_lifted(problem, x_bar, y_bar, singular=True),
        Binf0=binf0,
        Binf=binf0,
    )


def choice_independence(problem: ParametricProblem, x_bar: Sequence[RatLike], seed: int = 0) -> bool:
    """Whether B0 and B0_inf are the same at every vertex of ``M(x_bar)``
    and at one random point of ``M(x_bar)``."""
    x_bar = _x(problem, x_bar)
    mu = _finite_mu(problem, x_bar)
    minimizers = _solution_set(problem, x_bar, mu)
    choices = list(minimizers.vertices) + [sample_point(minimizers, random.Random(seed))]
    ref_sub = _b0(problem, x_bar, choices[0], singular=False)
    ref_sing = _b0(problem, x_bar, choices[0], singular=True)
    for y in choices[1:]:
        if not set_equal(ref_sub, _b0(problem, x_bar, y, singular=False)):
            return False
        if not set_equal(ref_sing, _b0(problem, x_bar, y, singular=True)):
            return False
    return True
