import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from polystab.errors import DimensionMismatch, GenerationError, ImproperFunctionError, SchemaError
from polystab.generate import InstanceSpec, generate_instance, run_batch
from polystab.io import (
    dumps,
    hpoly_from_json,
    hpoly_to_json,
    parse_problem,
    problem_to_json,
    report_to_json,
    vpoly_from_json,
    vpoly_to_json,
)
from polystab.polyhedron import h_to_v, sample_point, set_equal
from polystab.stability import optimal_value, value_function, verify_stability


def _running(fixture_path):
    return json.loads((fixture_path / "running_example.json").read_text())


def test_parse_running_example(running_example_json):
    assert (running_example_json.dim_x, running_example_json.dim_y) == (1, 1)
    assert optimal_value(running_example_json, (-3,)) == 3


def test_parse_empty_pieces(fixture_path):
    obj = _running(fixture_path)
    obj["phi"]["pieces"] = []
    with pytest.raises(ImproperFunctionError) as info:
        parse_problem(json.dumps(obj))
    assert info.value.code == "improper-function"


def test_parse_wrong_vector_length(fixture_path):
    obj = _running(fixture_path)
    obj["G"]["graph"]["ineq"][0] = ["1", "-1", "0"]
    with pytest.raises(DimensionMismatch) as info:
        parse_problem(json.dumps(obj))
    assert info.value.code == "dimension-mismatch"


@pytest.mark.parametrize(
    "text",
    [
        "{not json",
        "[]",
        '{"dim_x": 1}',
        '{"dim_x": "1", "dim_y": 1, "phi": {}, "G": {}}',
    ],
)
def test_parse_schema_errors(text):
    with pytest.raises(SchemaError) as info:
        parse_problem(text)
    assert info.value.code == "schema"


def test_error_codes_are_distinct():
    codes = {SchemaError.code, ImproperFunctionError.code, DimensionMismatch.code}
    assert len(codes) == 3


def test_float_coefficients_rejected(fixture_path):
    obj = _running(fixture_path)
    obj["phi"]["pieces"][0]["beta"] = 0.5
    with pytest.raises(SchemaError):
        parse_problem(json.dumps(obj))


def test_polyhedron_json_round_trip(fixture_path):
    square = hpoly_from_json(json.loads((fixture_path / "square.json").read_text()))
    v = h_to_v(square)
    assert vpoly_from_json(vpoly_to_json(v)) == v
    assert set_equal(hpoly_from_json(hpoly_to_json(square)), square)


def test_golden_seed_zero(fixture_path):
    golden = (fixture_path / "instance_seed0.json").read_text()
    assert dumps(problem_to_json(generate_instance(InstanceSpec(0)))) + "\n" == golden


def test_generation_is_deterministic():
    a = dumps(problem_to_json(generate_instance(InstanceSpec(0))))
    b = dumps(problem_to_json(generate_instance(InstanceSpec(0))))
    assert a == b
    assert a != dumps(problem_to_json(generate_instance(InstanceSpec(1))))


def test_zero_dimensional_parameter():
    problem = generate_instance(InstanceSpec(3, dim_x=0, dim_y=2))
    assert isinstance(optimal_value(problem, ()), Fraction)
    assert verify_stability(problem, ()).all_passed


@pytest.mark.parametrize("kwargs", [{"dim_x": 4}, {"max_constraints": 7}, {"max_pieces": 5}, {"seed": -1}])
def test_instance_spec_bounds(kwargs):
    with pytest.raises(SchemaError):
        InstanceSpec(**{"seed": 0, **kwargs})


def test_generation_error_is_coded():
    assert GenerationError.code == "generation-failure"


def test_batch_is_reproducible():
    a = run_batch(6, 11, 2, 1).to_json(timing=False)
    b = run_batch(6, 11, 2, 1, jobs=2).to_json(timing=False)
    assert dumps(a) == dumps(b)
    assert a == {"count": 6, "failures": []}


def test_report_json(running_example):
    out = report_to_json(verify_stability(running_example, (0,)), h_form=True)
    assert out["all_passed"] and out["mu_at_x_bar"] == "0"
    assert out["B0"]["vertices"] == [["-1"], ["1"]]
    assert "h_form" in out["sub_mu"]


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_serialization_round_trip(seed):
    rng = random.Random(seed)
    spec = InstanceSpec(seed, dim_x=rng.randint(0, 3), dim_y=rng.randint(0, 3))
    p = generate_instance(spec)
    q = parse_problem(dumps(problem_to_json(p)))
    assert dumps(problem_to_json(q)) == dumps(problem_to_json(p))
    mu_p, mu_q = value_function(p), value_function(q)
    dom = h_to_v(mu_p.domain)
    for _ in range(5):
        x = sample_point(dom, rng)
        assert optimal_value(p, x) == optimal_value(q, x) == mu_q(x) == mu_p(x)
    x_bar = (Fraction(0),) * spec.dim_x
    rp, rq = verify_stability(p, x_bar), verify_stability(q, x_bar)
    assert set_equal(rp.B0, rq.B0) and set_equal(rp.sub_mu, rq.sub_mu)
