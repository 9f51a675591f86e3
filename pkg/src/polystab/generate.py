"""Seeded random instances and batch verification.

Every random object plants an anchor point that satisfies all of its
constraints, so domains and feasible sets are never empty.  Generated
parametric problems put the parameter part of the anchor at the origin,
which makes ``x_bar = 0`` a point of ``dom mu``.
"""

from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .convex import PolyhedralFunction
from .errors import GenerationError, PolystabError, SchemaError
from .polyhedron import HPolyhedron
from .rational import Vec, dot, zeros
from .stability import ImproperValue, ParametricProblem, PolyhedralMap, value_function, verify_stability

MAX_ATTEMPTS = 1000


@dataclass(frozen=True)
class InstanceSpec:
    seed: int
    dim_x: int = 1
    dim_y: int = 1
    max_constraints: int = 6
    max_pieces: int = 4
    coefficient_bound: int = 5

    def __post_init__(self):
        if not 0 <= self.seed < 2**64:
            raise SchemaError("seed must be a 64-bit unsigned integer")
        if not (0 <= self.dim_x <= 3 and 0 <= self.dim_y <= 3):
            raise SchemaError("dim_x and dim_y must lie in 0..3")
        if not 0 <= self.max_constraints <= 6:
            raise SchemaError("max_constraints must lie in 0..6")
        if not 1 <= self.max_pieces <= 4:
            raise SchemaError("max_pieces must lie in 1..4")
        if self.coefficient_bound < 1:
            raise SchemaError("coefficient_bound must be positive")


def _row(rng: random.Random, dim: int, bound: int) -> Vec:
    while True:
        row = tuple(Fraction(rng.randint(-bound, bound)) for _ in range(dim))
        if any(row) or dim == 0:
            return row


def random_constraints(rng: random.Random, anchor: Vec, n_ineq: int, n_eq: int, bound: int):
    """Random ``(row, rhs)`` pairs all satisfied by ``anchor``; roughly half are tight."""
    dim = len(anchor)
    eq = []
    for _ in range(n_eq):
        row = _row(rng, dim, bound)
        eq.append((row, dot(row, anchor)))
    ineq = []
    for _ in range(n_ineq):
        row = _row(rng, dim, bound)
        ineq.append((row, dot(row, anchor) + rng.choice((0, 0, 1, 2))))
    return eq, ineq


def random_hpolyhedron(rng: random.Random, dim: int, max_ineq: int = 6, max_eq: int = 1, bound: int = 5, feasible: bool = True) -> HPolyhedron:
    """A random H-polyhedron; with ``feasible`` an anchor point is planted."""
    if feasible:
        anchor = tuple(Fraction(rng.randint(-2, 2)) for _ in range(dim))
        eq, ineq = random_constraints(rng, anchor, rng.randint(0, max_ineq), rng.randint(0, max_eq), bound)
    else:
        eq = [(_row(rng, dim, bound), Fraction(rng.randint(-bound, bound))) for _ in range(rng.randint(0, max_eq))]
        ineq = [(_row(rng, dim, bound), Fraction(rng.randint(-bound, bound))) for _ in range(rng.randint(0, max_ineq))]
    return HPolyhedron.from_constraints(dim, eq, ineq)


def random_function(rng: random.Random, dim: int, max_pieces: int = 4, max_constraints: int = 4, bound: int = 5) -> tuple[PolyhedralFunction, Vec]:
    """A random polyhedral function and a planted point of its domain."""
    anchor = tuple(Fraction(rng.randint(-2, 2)) for _ in range(dim))
    n_eq = 1 if dim > 1 and rng.random() < 0.15 else 0
    eq, ineq = random_constraints(rng, anchor, rng.randint(0, max_constraints - n_eq), n_eq, bound)
    pieces = [
        (tuple(Fraction(rng.randint(-bound, bound)) for _ in range(dim)), Fraction(rng.randint(-bound, bound)))
        for _ in range(rng.randint(1, max_pieces))
    ]
    return PolyhedralFunction(dim, HPolyhedron.from_constraints(dim, eq, ineq), tuple(pieces)), anchor


def _attempt(rng: random.Random, spec: InstanceSpec) -> ParametricProblem:
    n, m, bound = spec.dim_x, spec.dim_y, spec.coefficient_bound
    anchor = zeros(n) + tuple(Fraction(rng.randint(-2, 2)) for _ in range(m))
    level = Fraction(rng.randint(-bound, bound))
    pieces = []
    for _ in range(rng.randint(1, spec.max_pieces)):
        v = [Fraction(rng.randint(-bound, bound)) for _ in range(n + m)]
        if rng.random() < 0.25:
            v[n:] = [Fraction(0)] * m
        # half the pieces pass through (anchor, level) so that ties occur
        beta = level - dot(v, anchor) if rng.random() < 0.5 else Fraction(rng.randint(-bound, bound))
        pieces.append((tuple(v), beta))
    n_total = rng.randint(0, spec.max_constraints)
    n_eq = 1 if n + m > 1 and n_total and rng.random() < 0.15 else 0
    eq, ineq = random_constraints(rng, anchor, n_total - n_eq, n_eq, bound)
    dom_eq, gph_eq, dom_ineq, gph_ineq = [], [], [], []
    for c in eq:
        (dom_eq if rng.random() < 0.5 else gph_eq).append(c)
    for c in ineq:
        (dom_ineq if rng.random() < 0.5 else gph_ineq).append(c)
    domain = HPolyhedron.from_constraints(n + m, dom_eq, dom_ineq)
    graph = HPolyhedron.from_constraints(n + m, gph_eq, gph_ineq)
    phi = PolyhedralFunction(n + m, domain, tuple(pieces))
    return ParametricProblem(phi, PolyhedralMap(n, m, graph))


def generate_instance(spec: InstanceSpec) -> ParametricProblem:
    """Deterministic random problem for ``spec.seed`` with a proper value function."""
    rng = random.Random(spec.seed)
    for _ in range(MAX_ATTEMPTS):
        problem = _attempt(rng, spec)
        if not isinstance(value_function(problem), ImproperValue):
            return problem
    raise GenerationError(f"no proper instance after {MAX_ATTEMPTS} attempts (seed {spec.seed})")


@dataclass
class BatchSummary:
    count: int
    failures: list[tuple[int, str]] = field(default_factory=list)
    wall_time: float = 0.0

    def to_json(self, timing: bool = True) -> dict:
        out = {
            "count": self.count,
            "failures": [{"seed": s, "verdict": v} for s, v in self.failures],
        }
        if timing:
            out["wall_time"] = round(self.wall_time, 3)
        return out


def check_seed(seed: int, dim_x: int, dim_y: int) -> list[str]:
    """Names of the verdicts that fail on the instance for ``seed`` (at ``x_bar = 0``)."""
    try:
        problem = generate_instance(InstanceSpec(seed, dim_x, dim_y))
        return verify_stability(problem, zeros(dim_x)).failed
    except PolystabError as exc:
        return [f"error:{exc.code}"]


def run_batch(count: int, seed: int, dim_x: int, dim_y: int, jobs: int = 1) -> BatchSummary:
    start = time.perf_counter()
    seeds = range(seed, seed + count)
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as pool:
            results = dict(zip(seeds, pool.map(check_seed, seeds, [dim_x] * count, [dim_y] * count)))
    else:
        results = {s: check_seed(s, dim_x, dim_y) for s in seeds}
    failures = [(s, name) for s in sorted(results) for name in results[s]]
    return BatchSummary(count, failures, time.perf_counter() - start)
