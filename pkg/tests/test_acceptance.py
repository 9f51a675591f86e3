"""Acceptance suite: one test per headline criterion, all comparisons exact.

Each test prints a single ``PASS``/``FAIL`` line (visible even without
``-s``).  Run alone with ``pytest tests/test_acceptance.py -v``.
"""

import random
import time
from fractions import Fraction

import pytest

from polystab.convex import PolyhedralFunction, epigraph_normal_slice, function_sum, singular_subdifferential, subdifferential
from polystab.generate import InstanceSpec, generate_instance, random_function, random_hpolyhedron
from polystab.polyhedron import (
    HPolyhedron,
    VPolyhedron,
    as_h,
    contains_point,
    h_to_v,
    includes,
    minkowski_sum,
    project,
    sample_point,
    set_equal,
    v_to_h,
)
from polystab.rational import dot
from polystab.stability import (
    ParametricProblem,
    PolyhedralMap,
    a0_witness,
    choice_independence,
    optimal_value,
    solution_set,
    verify_stability,
)

pytestmark = pytest.mark.acceptance

SUITE_SIZE = 200


@pytest.fixture
def line(capsys):
    def emit(name, failures, detail=""):
        status = "PASS" if not failures else "FAIL"
        with capsys.disabled():
            print(f"\n[{status}] {name}: {detail}" + (f" failures={failures[:5]}" if failures else ""))
        assert not failures, failures

    return emit


def _suite_instance(seed):
    rng = random.Random(seed)
    spec = InstanceSpec(seed, dim_x=rng.randint(1, 3), dim_y=rng.randint(1, 3))
    return generate_instance(spec), (Fraction(0),) * spec.dim_x


@pytest.fixture(scope="module")
def suite():
    start = time.perf_counter()
    runs = []
    for seed in range(SUITE_SIZE):
        problem, x_bar = _suite_instance(seed)
        runs.append((seed, problem, x_bar, verify_stability(problem, x_bar)))
    return runs, time.perf_counter() - start


# 1 ---------------------------------------------------------------------------------

def test_golden_worked_example(line):
    start = time.perf_counter()
    g = PolyhedralMap(1, 1, HPolyhedron.from_constraints(2, ineq=[((1, -1), 0), ((-1, -1), 0)]))
    problem = ParametricProblem(PolyhedralFunction.affine((0, 1)), g)
    report = verify_stability(problem, (0,))
    elapsed = time.perf_counter() - start

    interval = VPolyhedron(1, [(-1,), (1,)])
    origin = VPolyhedron.point((0,))
    failures = []
    if optimal_value(problem, (0,)) != 0:
        failures.append("mu(0)")
    if not set_equal(solution_set(problem, (0,)), origin):
        failures.append("M(0)")
    for name in ("sub_mu", "A0", "A", "B0", "B"):
        if not set_equal(getattr(report, name), interval):
            failures.append(name)
    for name in ("sing_mu", "Ainf0", "Ainf", "Binf0", "Binf"):
        if not set_equal(getattr(report, name), origin):
            failures.append(name)
    failures += report.failed
    if elapsed >= 1.0:
        failures.append(f"runtime {elapsed:.3f}s")
    line("golden worked example", failures, f"{elapsed * 1000:.1f} ms (limit 1 s)")


# 2 ---------------------------------------------------------------------------------

def test_upper_equality_and_full_chains(line, suite):
    runs, elapsed = suite
    failures = []
    for seed, _, _, r in runs:
        if not set_equal(r.sub_mu, r.B0):
            failures.append((seed, "sub_mu != B0"))
        if not set_equal(r.sing_mu, r.Binf0):
            failures.append((seed, "sing_mu != Binf0"))
        for name in ("chain_sub", "chain_sing"):
            if not r.verdicts[name]:
                failures.append((seed, name))
    if elapsed >= 120:
        failures.append(("runtime", f"{elapsed:.1f}s"))
    line("upper-estimate equality and full chains", failures, f"{len(runs)} instances, {elapsed:.1f} s (limit 120 s)")


# 3 ---------------------------------------------------------------------------------

def test_inclusion_with_membership_witnesses(line, suite):
    runs, _ = suite
    failures = []
    checked = 0
    for seed, problem, x_bar, r in runs:
        rng = random.Random(seed)
        if not includes(r.B0, r.sub_mu):
            failures.append((seed, "sub_mu not in B0"))
        if not includes(r.Binf0, r.sing_mu):
            failures.append((seed, "sing_mu not in Binf0"))
        for singular, a0, target in ((False, r.A0, r.sub_mu), (True, r.Ainf0, r.sing_mu)):
            target_h = as_h(target)
            for _ in range(5):
                u = sample_point(a0, rng)
                # u is certified in A0 by a witness and must then lie in the left-hand side
                if h_to_v(a0_witness(problem, x_bar, r.y_bar, u, singular)).empty:
                    failures.append((seed, "no witness for a point of A0"))
                elif not contains_point(target_h, u):
                    failures.append((seed, "witnessed point outside the subdifferential"))
                checked += 1
    line("inclusion chain with A0 witnesses", failures, f"{len(runs)} instances, {checked} witnessed points")


# 4 ---------------------------------------------------------------------------------

def test_singular_subdifferential_is_horizontal_epigraph_normal(line):
    failures = []
    for seed in range(100):
        rng = random.Random(10_000 + seed)
        f, anchor = random_function(rng, rng.randint(1, 3))
        dom = h_to_v(f.domain)
        points = [anchor] + [sample_point(dom, rng) for _ in range(2)]
        for x in points:
            if not set_equal(singular_subdifferential(f, x), epigraph_normal_slice(f, x, 0)):
                failures.append((seed, x))
    line("singular subdifferential vs epigraph slice", failures, "100 functions x 3 points")


# 5 ---------------------------------------------------------------------------------

def _through(domain: HPolyhedron, point, rng) -> HPolyhedron:
    """The same constraint normals, with right-hand sides relaxed to admit ``point``."""
    ineq_rhs = tuple(max(b, dot(r, point)) + rng.choice((0, 0, 1)) for r, b in zip(domain.ineq_lhs, domain.ineq_rhs))
    eq_rhs = tuple(dot(r, point) for r in domain.eq_lhs)
    return HPolyhedron(domain.dim, domain.eq_lhs, eq_rhs, domain.ineq_lhs, ineq_rhs)


def test_exact_sum_rule(line):
    failures = []
    for seed in range(100):
        rng = random.Random(20_000 + seed)
        dim = rng.randint(1, 3)
        f1, shared = random_function(rng, dim)
        g, _ = random_function(rng, dim)
        f2 = PolyhedralFunction(dim, _through(g.domain, shared, rng), g.pieces)
        total = function_sum(f1, f2)
        for x in (shared, sample_point(h_to_v(total.domain), rng)):
            rhs = minkowski_sum(subdifferential(f1, x), subdifferential(f2, x))
            if not set_equal(subdifferential(total, x), rhs):
                failures.append((seed, x))
    line("exact sum rule", failures, "100 pairs with intersecting domains")


# 6 ---------------------------------------------------------------------------------

def test_choice_independence(line):
    failures = []
    found = 0
    seed = 50_000
    while found < 100:
        problem, x_bar = _suite_instance(seed)
        if len(solution_set(problem, x_bar).vertices) >= 2:
            found += 1
            if not choice_independence(problem, x_bar, seed=seed):
                failures.append(seed)
        seed += 1
    line("choice independence", failures, f"100 instances with >= 2 minimizer vertices (scanned {seed - 50_000} seeds)")


# 7 ---------------------------------------------------------------------------------

def test_kernel(line):
    start = time.perf_counter()
    failures = []
    for seed in range(300):
        rng = random.Random(30_000 + seed)
        dim = rng.randint(1, 4)
        p = random_hpolyhedron(rng, dim, max_ineq=6, max_eq=1)
        v = h_to_v(p)
        if not set_equal(p, v_to_h(v)):
            failures.append((seed, "round trip"))
        first = rng.sample(range(dim), rng.randint(0, dim))
        second = rng.sample(range(len(first)), rng.randint(0, len(first)))
        if not set_equal(project(project(p, first), second), project(p, [first[j] for j in second])):
            failures.append((seed, "projection composition"))
        q = h_to_v(random_hpolyhedron(rng, dim, max_ineq=4, max_eq=1))
        total = v_to_h(minkowski_sum(v, q))
        for _ in range(3):
            a, b = sample_point(v, rng), sample_point(q, rng)
            if not contains_point(total, tuple(x + y for x, y in zip(a, b))):
                failures.append((seed, "minkowski membership"))
    elapsed = time.perf_counter() - start
    if elapsed >= 60:
        failures.append(("runtime", f"{elapsed:.1f}s"))
    line("polyhedral kernel", failures, f"300 polyhedra, {elapsed:.1f} s (limit 60 s)")
