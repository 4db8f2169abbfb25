"""JSON schemas for every artifact the CLI emits; reports validate on write.

Non-finite floats cannot live in strict JSON, so every numeric slot that can
carry them also admits the strings "inf", "-inf" and "nan" (see reportio).
"""

_NUM = {"type": ["number", "string"]}

_CONVEX = {
    "type": "object",
    "properties": {
        "type": {"const": "convex_polygon"},
        "vertices": {
            "type": "array", "minItems": 3,
            "items": {"type": "array", "items": {"type": "number"},
                      "minItems": 2, "maxItems": 2},
        },
    },
    "required": ["type", "vertices"],
    "additionalProperties": False,
}

REGION_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "$defs": {"convex_polygon": _CONVEX},
    "oneOf": [
        {"$ref": "#/$defs/convex_polygon"},
        {
            "type": "object",
            "properties": {
                "type": {"const": "two_component"},
                "first": {"$ref": "#/$defs/convex_polygon"},
                "second": {"$ref": "#/$defs/convex_polygon"},
            },
            "required": ["type", "first", "second"],
            "additionalProperties": False,
        },
        {
            "type": "object",
            "properties": {
                "type": {"const": "polar"},
                "r_base": {"type": "number", "exclusiveMinimum": 0},
                "segments": {
                    "type": "array",
                    "items": {"type": "array", "items": {"type": "number"},
                              "minItems": 4, "maxItems": 4},
                },
            },
            "required": ["type", "r_base", "segments"],
            "additionalProperties": False,
        },
        {
            "type": "object",
            "properties": {
                "type": {"const": "raster"},
                "origin": {"type": "array", "items": {"type": "number"},
                           "minItems": 2, "maxItems": 2},
                "cell_size": {"type": "number", "exclusiveMinimum": 0},
                "rows": {"type": "array", "items": {"type": "string",
                                                    "pattern": "^[01]*$"}},
            },
            "required": ["type", "origin", "cell_size", "rows"],
            "additionalProperties": False,
        },
    ],
}

_SAMPLE = {
    "type": "object",
    "properties": {
        "t": {"type": "number"},
        "value": _NUM,
        "error": _NUM,
        "stable": {"type": ["boolean", "null"]},
        "resolution_limited": {"type": "boolean"},
    },
    "required": ["t", "value", "error", "resolution_limited"],
}

_REPORT = {
    "type": "object",
    "properties": {
        "history": {"type": "string"},
        "metric": {"type": "string"},
        "schedule": {"type": "object"},
        "samples": {"type": "array", "items": _SAMPLE},
        "verdict": {"enum": ["ConvergesToZero", "Diverges", "BoundedAway",
                             "Inconclusive"]},
        "tol": _NUM,
        "notes": {"type": "string"},
    },
    "required": ["history", "metric", "schedule", "samples", "verdict", "tol"],
}

METRIC_REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "properties": {
        "command": {"const": "metric"},
        "inputs": {
            "type": "object",
            "properties": {"p": {"type": "string"}, "q": {"type": "string"}},
            "required": ["p", "q"],
        },
        "settings": {"type": "object"},
        "results": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {
                    "metric": {"type": "string"},
                    "value": _NUM,
                    "error": _NUM,
                    "stable": {"type": ["boolean", "null"]},
                },
                "required": ["metric", "value", "error"],
            },
        },
    },
    "required": ["command", "inputs", "results"],
}

HISTORY_REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "$defs": {"report": _REPORT},
    "type": "object",
    "properties": {
        "command": {"const": "history"},
        "name": {"type": "string"},
        "params": {"type": "object"},
        "reports": {"type": "array", "items": {"$ref": "#/$defs/report"}},
    },
    "required": ["command", "name", "reports"],
}

MATRIX_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "$defs": {"report": _REPORT},
    "type": "object",
    "properties": {
        "command": {"const": "matrix"},
        "space": {"enum": ["C", "D", "S"]},
        "metrics": {"type": "array", "items": {"type": "string"}},
        "entries": {
            "type": "object",
            "patternProperties": {
                "^[^|]+\\|[^|]+$": {
                    "type": "object",
                    "properties": {
                        "relation": {"enum": ["NOT-FINER",
                                              "CONSISTENT-WITH-FINER"]},
                        "witnesses": {"type": "array",
                                      "items": {"type": "string"}},
                    },
                    "required": ["relation", "witnesses"],
                },
            },
            "additionalProperties": False,
        },
        "tracks": {
            "type": "object",
            "additionalProperties": {"$ref": "#/$defs/report"},
        },
        "experiment": {"type": "object"},
    },
    "required": ["command", "space", "metrics", "entries"],
}

AUDIT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "properties": {
        "command": {"const": "audit"},
        "trials": {"type": "integer", "minimum": 1},
        "seed": {"type": "integer"},
        "audits": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {
                    "name": {"type": "string"},
                    "trials": {"type": "integer"},
                    "checked": {"type": "integer"},
                    "skipped": {"type": "integer"},
                    "violations": {"type": "integer"},
                    "worst_margin": _NUM,
                    "note": {"type": "string"},
                },
                "required": ["name", "trials", "checked", "skipped",
                             "violations", "worst_margin"],
            },
        },
    },
    "required": ["command", "trials", "seed", "audits"],
}

PLAN_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "properties": {
        "generator": {"type": "string"},
        "total_cost": _NUM,
        "value": _NUM,
        "pairs": {"type": "array",
                  "items": {"type": "array", "minItems": 3, "maxItems": 3}},
        "src_points": {"type": "array"},
        "tgt_points": {"type": "array"},
    },
    "required": ["generator", "total_cost", "value", "pairs"],
}

SCHEMAS = {
    "region": REGION_SCHEMA,
    "metric": METRIC_REPORT_SCHEMA,
    "history": HISTORY_REPORT_SCHEMA,
    "matrix": MATRIX_SCHEMA,
    "audit": AUDIT_SCHEMA,
    "plan": PLAN_SCHEMA,
}
