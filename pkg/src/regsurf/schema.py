"""JSON schemas for certification and computation reports."""
from __future__ import annotations

import jsonschema

_VERDICT = {
    "type": ["object", "null"],
    "required": ["verdict", "method", "prime"],
    "properties": {
        "verdict": {"type": "boolean"},
        "method": {"type": "string"},
        "prime": {"type": ["integer", "null"]},
        "primes_tried": {"type": "array", "items": {"type": "integer"}},
    },
}

CERT_REPORT_V1 = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "certification report",
    "type": "object",
    "required": [
        "m",
        "degree",
        "maxdeg_lower_bound",
        "L_invertible",
        "W_invertible",
        "eg_violated",
        "conjectured_regularity",
        "timings",
        "tool_version",
    ],
    "properties": {
        "m": {"type": "integer", "minimum": 6},
        "k": {"type": ["integer", "null"]},
        "degree": {"type": "integer"},
        "maxdeg_lower_bound": {"type": ["integer", "null"]},
        "L_invertible": _VERDICT,
        "W_invertible": _VERDICT,
        "eg_violated": {"type": ["boolean", "null"]},
        "conjectured_regularity": {
            "type": "object",
            "required": ["value", "status"],
            "properties": {"value": {"type": "integer"}, "status": {"const": "conjectural"}},
        },
        "timings": {"type": "object", "additionalProperties": {"type": "number"}},
        "tool_version": {"type": "string"},
    },
}

COMPUTATION_REPORT_V1 = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "computation report",
    "type": "object",
    "required": ["command", "result", "tool_version"],
    "properties": {
        "command": {"type": "string"},
        "result": {},
        "tool_version": {"type": "string"},
    },
}

SCHEMAS = {1: {"certify": CERT_REPORT_V1, "computation": COMPUTATION_REPORT_V1}}


def report_schema(version: int = 1, kind: str = "certify") -> dict:
    if version not in SCHEMAS:
        raise ValueError(f"unknown schema version {version}")
    if kind not in SCHEMAS[version]:
        raise ValueError(f"unknown report kind {kind!r}")
    return SCHEMAS[version][kind]


def validate(report: dict, version: int = 1, kind: str = "certify") -> None:
    """Raise jsonschema.ValidationError when the report does not conform."""
    jsonschema.validate(report, report_schema(version, kind))
