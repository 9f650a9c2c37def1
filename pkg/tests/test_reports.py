"""Report schema validation and rejection paths."""

import jsonschema
import pytest

from quasilab.reports import SCHEMAS, UnknownReportKind, validate_report


def test_every_schema_has_a_kind_constant():
    for kind, schema in SCHEMAS.items():
        assert schema["properties"]["kind"] == {"const": kind}
        assert "kind" in schema["required"]


def test_minimal_documents_validate():
    docs = [
        {"kind": "validate", "valid": True},
        {"kind": "check-identity", "identity": "(x*y) = (y*x)", "holds": False},
        {"kind": "translations", "order": 2, "left": [[0, 1]], "right": [[1, 0]]},
        {
            "kind": "mlt",
            "which": "both",
            "degree": 3,
            "order": 6,
            "transitive": True,
            "generators": [[1, 2, 0]],
        },
        {
            "kind": "measure",
            "order": 2,
            "measure": ["1", "1"],
            "left_cocycle": ["1", "1"],
            "right_cocycle": ["1", "1"],
            "dimension": 1,
            "degenerate": True,
        },
        {
            "kind": "characters",
            "order": 2,
            "dimension": 0,
            "positive_sum_oracle": True,
            "agreement": True,
        },
        {"kind": "axb-verify", "seed": 0, "trials": 1, "max_errors": {}, "passed": True},
    ]
    for doc in docs:
        assert validate_report(doc) == doc["kind"]


def test_rational_strings_are_checked():
    good = {
        "kind": "measure",
        "order": 1,
        "measure": ["3/2"],
        "left_cocycle": ["1"],
        "right_cocycle": ["-2/7"],
        "dimension": 1,
        "degenerate": True,
    }
    assert validate_report(good) == "measure"
    bad = dict(good, measure=["1.5"])  # floats are not exact rationals
    with pytest.raises(jsonschema.ValidationError):
        validate_report(bad)


def test_missing_required_field_is_rejected():
    with pytest.raises(jsonschema.ValidationError):
        validate_report({"kind": "validate"})
    with pytest.raises(jsonschema.ValidationError):
        validate_report(
            {"kind": "kunen-scan", "order": 3, "mode": "full", "total_squares": 12}
        )


def test_wrong_types_are_rejected():
    with pytest.raises(jsonschema.ValidationError):
        validate_report({"kind": "validate", "valid": "yes"})
    with pytest.raises(jsonschema.ValidationError):
        validate_report(
            {
                "kind": "mlt",
                "which": "middle",
                "degree": 3,
                "order": 6,
                "transitive": True,
                "generators": [],
            }
        )


def test_unknown_kind():
    with pytest.raises(UnknownReportKind) as info:
        validate_report({"kind": "mystery"})
    assert info.value.kind == "mystery"
    with pytest.raises(UnknownReportKind):
        validate_report({})
    with pytest.raises(jsonschema.ValidationError):
        validate_report(["not", "an", "object"])
