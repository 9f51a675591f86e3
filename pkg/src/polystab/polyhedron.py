"""Polyhedral convex sets in constraint (H) and generator (V) form.

Conversion in both directions is the double description method run on a
homogenized cone, in exact integer arithmetic.  Two rays are combined only
when they are adjacent, which is decided by the rank of the constraint rows
active at both of them.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

from .errors import DimensionMismatch, ResourceLimitError
from .rational import (
    Mat,
    RatLike,
    Vec,
    int_rank,
    is_zero,
    mat,
    null_space,
    rref,
    solve_linear,
    to_primitive_int,
    to_rat,
    vec,
    zeros,
)

MAX_DIM = 12
MAX_GENERATORS = 100_000


def _guard(dim: int, n_generators: int = 0) -> None:
    if dim > MAX_DIM:
        raise ResourceLimitError(f"dimension {dim} exceeds the limit of {MAX_DIM}")
    if n_generators > MAX_GENERATORS:
        raise ResourceLimitError(f"{n_generators} generators exceed the limit of {MAX_GENERATORS}")


@dataclass(frozen=True)
class HPolyhedron:
    """The set ``{x : eq_lhs x = eq_rhs, ineq_lhs x <= ineq_rhs}`` in R^dim."""

    dim: int
    eq_lhs: Mat = ()
    eq_rhs: Vec = ()
    ineq_lhs: Mat = ()
    ineq_rhs: Vec = ()

    def __post_init__(self):
        if self.dim < 0:
            raise DimensionMismatch("negative dimension")
        for lhs_name, rhs_name in (("eq_lhs", "eq_rhs"), ("ineq_lhs", "ineq_rhs")):
            lhs = mat(getattr(self, lhs_name))
            rhs = vec(getattr(self, rhs_name))
            if lhs and len(lhs[0]) != self.dim:
                raise DimensionMismatch(f"{lhs_name} rows have length {len(lhs[0])}, expected {self.dim}")
            if len(lhs) != len(rhs):
                raise DimensionMismatch(f"{lhs_name} has {len(lhs)} rows but {rhs_name} has {len(rhs)} entries")
            object.__setattr__(self, lhs_name, lhs)
            object.__setattr__(self, rhs_name, rhs)

    @classmethod
    def universe(cls, dim: int) -> "HPolyhedron":
        return cls(dim)

    @classmethod
    def from_constraints(
        cls,
        dim: int,
        eq: Iterable[tuple[Sequence[RatLike], RatLike]] = (),
        ineq: Iterable[tuple[Sequence[RatLike], RatLike]] = (),
    ) -> "HPolyhedron":
        """Build from ``(row, rhs)`` pairs, e.g. ``ineq=[((-1, 0), 0)]`` for x1 >= 0."""
        eq = list(eq)
        ineq = list(ineq)
        return cls(
            dim,
            tuple(r for r, _ in eq),
            tuple(b for _, b in eq),
            tuple(r for r, _ in ineq),
            tuple(b for _, b in ineq),
        )


@dataclass(frozen=True)
class VPolyhedron:
    """The set ``conv(vertices) + cone(rays) + span(lines)`` in R^dim.

    The empty set has ``empty=True`` and no generators.  Zero rays and lines
    are dropped on construction.
    """

    dim: int
    vertices: Mat = ()
    rays: Mat = ()
    lines: Mat = ()
    empty: bool = False

    def __post_init__(self):
        if self.dim < 0:
            raise DimensionMismatch("negative dimension")
        for name in ("vertices", "rays", "lines"):
            rows = mat(getattr(self, name))
            if rows and len(rows[0]) != self.dim:
                raise DimensionMismatch(f"{name} have length {len(rows[0])}, expected {self.dim}")
            if name != "vertices":
                rows = tuple(r for r in rows if not is_zero(r))
            object.__setattr__(self, name, rows)
        if self.empty:
            if self.vertices or self.rays or self.lines:
                raise ValueError("an empty VPolyhedron carries no generators")
        elif not self.vertices:
            raise ValueError("a nonempty VPolyhedron needs at least one vertex")

    @classmethod
    def empty_set(cls, dim: int) -> "VPolyhedron":
        return cls(dim, empty=True)

    @classmethod
    def point(cls, x: Sequence[RatLike]) -> "VPolyhedron":
        x = vec(x)
        return cls(len(x), (x,))

    @classmethod
    def cone(cls, dim: int, rays: Iterable = (), lines: Iterable = ()) -> "VPolyhedron":
        return cls(dim, (zeros(dim),), tuple(rays), tuple(lines))

    @property
    def is_bounded(self) -> bool:
        return not self.rays and not self.lines


Polyhedron = Union[HPolyhedron, VPolyhedron]


# -- double description core --------------------------------------------------

def _idot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


def _dd_cone(n: int, eq_rows: list[tuple[int, ...]], ineq_rows: list[tuple[int, ...]]):
    """Generators of ``{z in R^n : E z = 0, A z <= 0}`` for integer E, A.

    Returns ``(lines, rays)``: a basis of the lineality space and the extreme
    rays of the cone modulo lineality, all as primitive integer vectors.
    """
    eq_rows = [r for r in eq_rows if any(r)]
    ineq_rows = [r for r in ineq_rows if any(r)]
    lines = [to_primitive_int(v) for v in null_space([[Fraction(x) for x in r] for r in eq_rows], n)]
    eq_rank = n - len(lines)
    rays: list[tuple[tuple[int, ...], frozenset[int]]] = []

    for idx, a in enumerate(ineq_rows):
        k = next((i for i, l in enumerate(lines) if _idot(a, l) != 0), None)
        if k is not None:
            l = lines.pop(k)
            al = _idot(a, l)
            if al > 0:
                l = tuple(-x for x in l)
                al = -al
            lines = [
                to_primitive_int([Fraction(al * x - _idot(a, l2) * y) for x, y in zip(l2, l)])
                for l2 in lines
            ]
            new_rays = []
            for r, z in rays:
                ar = _idot(a, r)
                if ar:
                    r = tuple(-al * x + ar * y for x, y in zip(r, l))
                    r = to_primitive_int([Fraction(x) for x in r])
                new_rays.append((r, z | {idx}))
            new_rays.append((l, frozenset(range(idx))))
            rays = new_rays
            continue

        pos, neg, keep = [], [], []
        for r, z in rays:
            ar = _idot(a, r)
            if ar > 0:
                pos.append((r, z, ar))
            elif ar < 0:
                neg.append((r, z, ar))
                keep.append((r, z))
            else:
                keep.append((r, z | {idx}))
        if pos and neg:
            # adjacent iff the rows active at both span codimension 2 beyond the lineality
            target = n - len(lines) - 2
            need = target - eq_rank
            for p, zp, ap in pos:
                for q, zq, aq in neg:
                    common = zp & zq
                    if len(common) < need:
                        continue
                    rows = eq_rows + [ineq_rows[i] for i in common]
                    if int_rank(rows) != target:
                        continue
                    w = tuple(ap * y - aq * x for x, y in zip(p, q))
                    keep.append((to_primitive_int([Fraction(x) for x in w]), common | {idx}))
        rays = keep
        _guard(0, len(rays))
    return lines, [r for r, _ in rays]


def _orth_project(vectors: list[Vec], basis: list[Vec]) -> list[Vec]:
    """Project each vector onto the orthogonal complement of span(basis)."""
    if not basis:
        return vectors
    gram = [[sum(a * b for a, b in zip(u, v)) for v in basis] for u in basis]
    out = []
    for x in vectors:
        rhs = [sum(a * b for a, b in zip(u, x)) for u in basis]
        coef = solve_linear(gram, rhs).particular
        out.append(tuple(xi - sum(c * u[i] for c, u in zip(coef, basis)) for i, xi in enumerate(x)))
    return out


def _canonical(dim: int, vertices, rays, lines) -> VPolyhedron:
    """Canonical generator form of an irredundant generator list.

    Lines become the reduced echelon basis scaled to primitive integers
    (leading entry positive); vertices and rays are projected onto the
    orthogonal complement of the lineality space; rays become primitive
    integer vectors.  Everything is deduplicated and sorted.
    """
    lines = [tuple(Fraction(x) for x in l) for l in lines]
    basis, _ = rref(lines, dim) if lines else ([], [])
    basis = [tuple(Fraction(x) for x in to_primitive_int(b)) for b in basis]
    verts = _orth_project([tuple(Fraction(x) for x in v) for v in vertices], basis)
    rs = _orth_project([tuple(Fraction(x) for x in r) for r in rays], basis)
    rs = {tuple(Fraction(x) for x in to_primitive_int(r)) for r in rs if not is_zero(r)}
    return VPolyhedron(dim, tuple(sorted(set(verts))), tuple(sorted(rs)), tuple(sorted(basis)))


def _homogenized_row(row: Sequence[Fraction], rhs: Fraction) -> tuple[int, ...]:
    return to_primitive_int(tuple(row) + (-rhs,))


def h_to_v(p: HPolyhedron) -> VPolyhedron:
    """Generators of an H-polyhedron (empty flag set iff infeasible)."""
    _guard(p.dim)
    n = p.dim
    eq = [_homogenized_row(r, b) for r, b in zip(p.eq_lhs, p.eq_rhs)]
    ineq = [(0,) * n + (-1,)]
    ineq += [_homogenized_row(r, b) for r, b in zip(p.ineq_lhs, p.ineq_rhs)]
    lines, rays = _dd_cone(n + 1, eq, ineq)
    vertices = [tuple(Fraction(x, r[n]) for x in r[:n]) for r in rays if r[n] > 0]
    if not vertices:
        return VPolyhedron.empty_set(n)
    rec = [r[:n] for r in rays if r[n] == 0]
    return _canonical(n, vertices, rec, [l[:n] for l in lines])


def _trivial(ray: Sequence[int], eq_rows: list[Vec], n: int) -> bool:
    """Whether ``a x <= b`` is ``0 <= 1`` plus a combination of the equalities."""
    if not eq_rows:
        return not any(ray[:n])
    sol = solve_linear([[r[i] for r in eq_rows] for i in range(n)], ray[:n], n_cols=len(eq_rows))
    return sol.consistent


def v_to_h(q: VPolyhedron) -> HPolyhedron:
    """Constraint form of a V-polyhedron (facet enumeration via the polar cone)."""
    _guard(q.dim, len(q.vertices) + len(q.rays) + len(q.lines))
    n = q.dim
    if q.empty:
        return HPolyhedron(n, ineq_lhs=(zeros(n),), ineq_rhs=(Fraction(-1),))
    ineq = [to_primitive_int(tuple(v) + (Fraction(-1),)) for v in q.vertices]
    ineq += [to_primitive_int(tuple(r) + (Fraction(0),)) for r in q.rays]
    eq = [to_primitive_int(tuple(l) + (Fraction(0),)) for l in q.lines]
    lines, rays = _dd_cone(n + 1, eq, ineq)

    eq_rows = [tuple(Fraction(x) for x in l) for l in lines]
    eq_rows, _ = rref(eq_rows, n + 1) if eq_rows else ([], [])
    eq_rows = sorted(tuple(Fraction(x) for x in to_primitive_int(r)) for r in eq_rows)
    ineq_rows = sorted({tuple(Fraction(x) for x in r) for r in rays if not _trivial(r, eq_rows, n)})
    return HPolyhedron(
        n,
        tuple(r[:n] for r in eq_rows),
        tuple(r[n] for r in eq_rows),
        tuple(r[:n] for r in ineq_rows),
        tuple(r[n] for r in ineq_rows),
    )


def as_v(p: Polyhedron) -> VPolyhedron:
    return p if isinstance(p, VPolyhedron) else h_to_v(p)


def as_h(p: Polyhedron) -> HPolyhedron:
    return p if isinstance(p, HPolyhedron) else v_to_h(p)


def normalize(q: Polyhedron) -> VPolyhedron:
    """Irredundant, canonically ordered generator form of ``q``."""
    if isinstance(q, HPolyhedron):
        return h_to_v(q)
    if q.empty:
        return q
    return h_to_v(v_to_h(q))


def is_empty(p: Polyhedron) -> bool:
    return as_v(p).empty


# -- set operations -------------------------------------------------------------

def project(p: Polyhedron, keep: Sequence[int]) -> VPolyhedron:
    """Image of ``p`` under ``x -> (x[keep[0]], x[keep[1]], ...)``."""
    q = as_v(p)
    for i in keep:
        if not 0 <= i < q.dim:
            raise DimensionMismatch(f"index {i} out of range for dimension {q.dim}")
    if q.empty:
        return VPolyhedron.empty_set(len(keep))

    def pick(rows):
        return tuple(tuple(r[i] for i in keep) for r in rows)

    return normalize(VPolyhedron(len(keep), pick(q.vertices), pick(q.rays), pick(q.lines)))


def linear_image(p: Polyhedron, matrix: Sequence[Sequence[RatLike]]) -> VPolyhedron:
    """Image of ``p`` under ``x -> matrix @ x``."""
    m = mat(matrix)
    q = as_v(p)
    if m and len(m[0]) != q.dim:
        raise DimensionMismatch(f"matrix has {len(m[0])} columns, polyhedron has dimension {q.dim}")
    k = len(m)
    if q.empty:
        return VPolyhedron.empty_set(k)

    def apply(rows):
        return tuple(tuple(sum((a * b for a, b in zip(row, r)), Fraction(0)) for row in m) for r in rows)

    return normalize(VPolyhedron(k, apply(q.vertices), apply(q.rays), apply(q.lines)))


def minkowski_sum(p: Polyhedron, q: Polyhedron) -> VPolyhedron:
    p, q = as_v(p), as_v(q)
    if p.dim != q.dim:
        raise DimensionMismatch(f"dimension mismatch: {p.dim} vs {q.dim}")
    if p.empty or q.empty:
        return VPolyhedron.empty_set(p.dim)
    vertices = tuple(tuple(a + b for a, b in zip(u, v)) for u in p.vertices for v in q.vertices)
    _guard(p.dim, len(vertices))
    return normalize(VPolyhedron(p.dim, vertices, p.rays + q.rays, p.lines + q.lines))


def intersect(p: Polyhedron, q: Polyhedron) -> HPolyhedron:
    p, q = as_h(p), as_h(q)
    if p.dim != q.dim:
        raise DimensionMismatch(f"dimension mismatch: {p.dim} vs {q.dim}")
    return HPolyhedron(
        p.dim,
        p.eq_lhs + q.eq_lhs,
        p.eq_rhs + q.eq_rhs,
        p.ineq_lhs + q.ineq_lhs,
        p.ineq_rhs + q.ineq_rhs,
    )


def section(p: Polyhedron, fixed: Mapping[int, RatLike]) -> HPolyhedron:
    """``{z : (z with coordinates in fixed substituted) in p}`` over the free coordinates.

    Equivalent to intersecting with the coordinate-fixing equalities and
    projecting onto the remaining coordinates, in their original order.
    """
    h = as_h(p)
    fixed = {i: to_rat(v) for i, v in fixed.items()}
    for i in fixed:
        if not 0 <= i < h.dim:
            raise DimensionMismatch(f"index {i} out of range for dimension {h.dim}")
    free = [i for i in range(h.dim) if i not in fixed]

    def split(lhs, rhs):
        rows, vals = [], []
        for row, b in zip(lhs, rhs):
            rows.append(tuple(row[i] for i in free))
            vals.append(b - sum((row[i] * v for i, v in fixed.items()), Fraction(0)))
        return tuple(rows), tuple(vals)

    eq_l, eq_r = split(h.eq_lhs, h.eq_rhs)
    in_l, in_r = split(h.ineq_lhs, h.ineq_rhs)
    return HPolyhedron(len(free), eq_l, eq_r, in_l, in_r)


def contains_point(p: Polyhedron, x: Sequence[RatLike]) -> bool:
    h = as_h(p)
    x = vec(x)
    if len(x) != h.dim:
        raise DimensionMismatch(f"point has dimension {len(x)}, polyhedron {h.dim}")
    return all(_dot(r, x) == b for r, b in zip(h.eq_lhs, h.eq_rhs)) and all(
        _dot(r, x) <= b for r, b in zip(h.ineq_lhs, h.ineq_rhs)
    )


def _dot(a, b) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def includes(p: Polyhedron, q: Polyhedron) -> bool:
    """True iff ``q`` is a subset of ``p``."""
    if p.dim != q.dim:
        raise DimensionMismatch(f"dimension mismatch: {p.dim} vs {q.dim}")
    h = as_h(p)
    g = as_v(q)
    if g.empty:
        return True
    if not all(contains_point(h, v) for v in g.vertices):
        return False
    for r in g.rays:
        if any(_dot(a, r) != 0 for a in h.eq_lhs) or any(_dot(a, r) > 0 for a in h.ineq_lhs):
            return False
    for l in g.lines:
        if any(_dot(a, l) != 0 for a in h.eq_lhs + h.ineq_lhs):
            return False
    return True


def set_equal(p: Polyhedron, q: Polyhedron) -> bool:
    return includes(p, q) and includes(q, p)


def sample_point(q: Polyhedron, rng: random.Random) -> Vec:
    """A random point of ``q``: a strict convex combination of the vertices
    plus random nonnegative ray and arbitrary line multiples."""
    g = as_v(q)
    if g.empty:
        raise ValueError("cannot sample from the empty set")
    weights = [Fraction(rng.randint(1, 6)) for _ in g.vertices]
    total = sum(weights)
    x = [Fraction(0)] * g.dim
    for w, v in zip(weights, g.vertices):
        for i in range(g.dim):
            x[i] += w / total * v[i]
    for r in g.rays:
        c = Fraction(rng.randint(0, 3))
        for i in range(g.dim):
            x[i] += c * r[i]
    for l in g.lines:
        c = Fraction(rng.randint(-3, 3))
        for i in range(g.dim):
            x[i] += c * l[i]
    return tuple(x)
