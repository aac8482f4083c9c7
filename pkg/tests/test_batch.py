import json

import pytest

from fscalc.batch import HANDLERS, QueryResult, run_batch, run_query
from fscalc.wrappers import trace_to_dict


def test_every_command_has_a_handler():
    assert sorted(HANDLERS) == [
        "bmap",
        "bootstrap",
        "classify",
        "dk",
        "embed",
        "join",
        "ns-exist",
        "op-apply",
        "product",
        "pstar",
        "render",
        "replay",
        "sector",
    ]


@pytest.mark.parametrize(
    "query, accepted, fields",
    [
        (
            {"command": "dk", "n": 3, "k": 2, "space": "F:2,2,2"},
            True,
            {"threshold": "3/2", "position": "inside"},
        ),
        (
            {"command": "sector", "n": 3, "problem": "neumann", "space": "F:3/2,2,2"},
            False,
            {"threshold": "3/2", "position": "boundary"},
        ),
        (
            {"command": "classify", "space": "B:1/2,inf,inf"},
            True,
            {"classical": "C^{1/2}_*"},
        ),
        (
            {"command": "join", "n": 3, "a": "F:3/2,2,2", "b": "F:2,2,2"},
            True,
            {"join": "F:3/2,2,2"},
        ),
        (
            {"command": "product", "n": 3, "a": "F:-1,2,2", "b": "F:1/2,2,2", "target": "F:0,2,2"},
            False,
            {"defined": False, "failed_conditions": ["defined"]},
        ),
        (
            {"command": "bmap", "n": 3, "space": "F:2,2,2", "eps": "1/8"},
            True,
            {"image": "F:1,2,2", "deficit": "1", "eps": "1/8"},
        ),
        (
            {"command": "op-apply", "n": 3, "op": "gamma0", "space": "F:1,2,2"},
            True,
            {"image": "B:1/2,2,2@boundary"},
        ),
        (
            {"command": "ns-exist", "n": 3, "space": "F:2,2,2", "g_zero": True, "flux_zero": True},
            True,
            {"space": "F:2,2,2"},
        ),
    ],
)
def test_run_query(query, accepted, fields):
    result = run_query(query)
    assert result.accepted is accepted, result.reason
    assert result.command == query["command"]
    for key, value in fields.items():
        assert result.payload[key] == value


def test_bootstrap_and_replay(calculator_factory):
    calculator = calculator_factory()
    result = run_query(
        {
            "command": "bootstrap",
            "problem": "neumann",
            "n": 3,
            "start": "F:41/20,1,2",
            "target": "F:3/2,4,2",
        },
        calculator,
    )
    assert result.accepted
    trace = result.payload["trace"]
    replayed = run_query({"command": "replay", "trace": json.dumps(trace)}, calculator)
    assert replayed.accepted
    assert replayed.payload == {
        "valid": True,
        "checked": len(trace["steps"]),
        "errors": [],
    }
    rendered = run_query({"command": "render", "trace": trace}, calculator)
    assert rendered.payload["svg"].startswith("<?xml")


def test_query_eps_overrides_calculator(calculator_factory):
    calculator = calculator_factory({"FSCALC_EPS": "1/2"})
    query = {"command": "bmap", "n": 3, "space": "F:3/2,2,2"}
    assert run_query(query, calculator).payload["image"] == "F:0,2,2"
    query["eps"] = "1/4"
    assert run_query(query, calculator).payload["image"] == "F:1/4,2,2"


class TestInvalidQueries:
    def test_unknown_command(self):
        result = run_query({"command": "integrate"})
        assert not result.accepted
        assert result.invalid
        assert result.reason == "unknown command 'integrate'"

    def test_not_an_object(self):
        result = run_query(["embed"])
        assert result.invalid

    def test_missing_field(self):
        result = run_query({"command": "embed", "n": 3, "a": "F:1,2,2"})
        assert result.invalid
        assert result.reason == "missing field 'b'"
        assert result.payload == {}

    def test_bad_literal(self):
        result = run_query({"command": "classify", "space": "F:1,inf,2"})
        assert result.invalid
        assert "F-scale requires p<∞" in result.reason

    def test_unknown_operator(self):
        result = run_query({"command": "op-apply", "n": 3, "op": "gamma2", "space": "F:2,2,2"})
        assert result.invalid
        assert "gamma2" in result.reason

    def test_boundary_space(self):
        result = run_query({"command": "dk", "n": 3, "k": 1, "space": "B:1,2,2@boundary"})
        assert result.invalid
        assert result.reason == "D_k is defined for interior spaces, got B:1,2,2@boundary"
        result = run_query({"command": "sector", "n": 3, "space": "B:1,2,2@boundary"})
        assert result.invalid

    def test_scale_mismatch(self):
        result = run_query({"command": "embed", "n": 3, "a": "F:3,3,2", "b": "B:2,2,2"})
        assert result.invalid
        assert "mixed B/F" in result.reason

    def test_malformed_trace(self):
        result = run_query({"command": "replay", "trace": {"problem": "dirichlet"}})
        assert result.invalid
        assert result.reason.startswith("malformed trace")

    @pytest.mark.parametrize("field", ["g_zero", "flux_zero", "connected"])
    @pytest.mark.parametrize("value", ["false", "true", 0, 1, None])
    def test_flags_must_be_booleans(self, field, value):
        query = {
            "command": "ns-exist",
            "n": 3,
            "space": "F:2,2,2",
            "g_zero": True,
            "flux_zero": True,
            field: value,
        }
        result = run_query(query)
        assert result.invalid
        assert result.reason == f"field '{field}' must be true or false, got {value!r}"

    def test_sharp_flag_must_be_boolean(self):
        result = run_query({"command": "bmap", "n": 3, "space": "F:2,2,2", "sharp": "yes"})
        assert result.invalid


class TestNegativeAnswers:
    def test_not_invalid(self):
        for query in (
            {"command": "embed", "n": 3, "a": "F:1,2,2", "b": "F:2,2,2"},
            {"command": "dk", "n": 2, "k": 1, "space": "F:1/2,2,2"},
            {"command": "bmap", "n": 3, "space": "F:1/4,2,2"},
            {
                "command": "ns-exist",
                "n": 3,
                "space": "F:2,2,2",
                "g_zero": False,
                "flux_zero": True,
            },
        ):
            result = run_query(query)
            assert not result.accepted
            assert not result.invalid
            assert "error" not in result.as_dict()

    def test_undefined_product(self):
        result = run_query({"command": "pstar", "n": 3, "a": "F:-1,2,2", "b": "F:1/2,2,2"})
        assert not result.accepted
        assert not result.invalid
        assert result.payload == {"a": "F:-1,2,2", "b": "F:1/2,2,2"}
        assert "is not defined" in result.reason


def test_as_dict():
    result = QueryResult("embed", False, {"holds": False}, "no")
    assert result.as_dict() == {
        "command": "embed",
        "accepted": False,
        "holds": False,
        "reason": "no",
    }
    assert "reason" not in QueryResult("embed", True, {}).as_dict()
    assert QueryResult("embed", False, {}, "bad", True).as_dict() == {
        "command": "embed",
        "accepted": False,
        "reason": "bad",
        "error": True,
    }


def test_batch_is_deterministic():
    queries = [
        {"command": "embed", "n": 3, "a": "F:3,3,2", "b": "F:2,2,2"},
        {"command": "bootstrap", "n": 3, "start": "F:1,2,2", "target": "F:2,2,2"},
        {"command": "nothing"},
    ]
    first = [result.as_dict() for result in run_batch(queries)]
    second = [result.as_dict() for result in run_batch(queries)]
    assert json.dumps(first, sort_keys=True) == json.dumps(second, sort_keys=True)
    assert [entry["accepted"] for entry in first] == [True, True, False]


class TestCalculatorRouting:
    def test_replay(self, calculator_factory, dirichlet_trace, mocker):
        calculator = calculator_factory()
        spy = mocker.spy(calculator, "replay")
        result = run_query(
            {"command": "replay", "trace": trace_to_dict(dirichlet_trace)}, calculator
        )
        assert result.accepted
        spy.assert_called_once()
        assert spy.call_args.args[0] == dirichlet_trace
        assert spy.spy_return.checked == len(dirichlet_trace.steps)

    @pytest.mark.parametrize(
        "sharp, method, image",
        [
            (False, "map_b_standard", "F:1,2,2"),
            (True, "map_b_sharp", "F:1,2,2"),
        ],
    )
    def test_bmap(self, calculator_factory, mocker, sharp, method, image):
        calculator = calculator_factory()
        spy = mocker.spy(calculator, method)
        result = run_query(
            {"command": "bmap", "n": 3, "space": "F:2,2,2", "sharp": sharp}, calculator
        )
        assert result.payload["image"] == image
        spy.assert_called_once()

    def test_ns_existence(self, calculator_factory, mocker):
        calculator = calculator_factory()
        spy = mocker.spy(calculator, "ns_existence")
        query = {"command": "ns-exist", "n": 3, "space": "B:1,2,2"}
        run_query({**query, "g_zero": True, "flux_zero": True}, calculator)
        assert spy.spy_return.condition == 3
