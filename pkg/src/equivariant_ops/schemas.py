"""JSON Schemas for the exchange formats written by the CLI."""

RATIONAL = {"type": "string", "pattern": r"^-?[0-9]+(/[0-9]+)?$"}

MULTIGRAPH = {
    "type": "object",
    "required": ["n", "edges"],
    "properties": {
        "n": {"type": "integer", "minimum": 0},
        "edges": {
            "type": "array",
            "items": {"type": "array", "items": {"type": "integer", "minimum": 0}, "minItems": 2, "maxItems": 2},
        },
    },
}

DEGREE_VECTOR = {
    "type": "object",
    "required": ["beta0", "vec"],
    "properties": {
        "beta0": {"type": "integer", "minimum": 0},
        "vec": {"type": "array", "items": {"type": "integer", "minimum": 0}},
    },
}

MATCHING = {
    "type": "array",
    "items": {"type": "array", "items": {"type": "integer", "minimum": 1}, "minItems": 2, "maxItems": 2},
}

KERNEL_BASIS = {
    "type": "object",
    "required": ["p", "d", "matching_order", "basis"],
    "properties": {
        "p": {"type": "integer", "minimum": 0},
        "d": {"type": "integer", "minimum": 1},
        "matching_order": {"type": "array", "items": MATCHING},
        "basis": {"type": "array", "items": {"type": "array", "items": RATIONAL}},
    },
}

OPERATOR_EXPR = {
    "type": "object",
    "required": ["terms"],
    "properties": {
        "terms": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["coeff", "beta0", "graph"],
                "properties": {"coeff": RATIONAL, "beta0": {"type": "integer", "minimum": 0}, "graph": MULTIGRAPH},
            },
        }
    },
}

IDENTITY = {
    "type": "object",
    "required": ["dim", "beta", "terms", "status", "provenance"],
    "properties": {
        "dim": {"type": "integer", "minimum": 1},
        "beta": DEGREE_VECTOR,
        "terms": {
            "type": "array",
            "minItems": 1,
            "items": {
                "type": "object",
                "required": ["coeff", "graph"],
                "properties": {"coeff": RATIONAL, "graph": MULTIGRAPH},
            },
        },
        "status": {
            "type": "object",
            "properties": {
                "verified_zero": {"type": "object", "required": ["dim", "trials", "seed"]},
                "witnessed_nonzero": {
                    "type": "object",
                    "required": ["dim", "f", "x", "value"],
                    "properties": {"value": RATIONAL, "x": {"type": "array", "items": RATIONAL}},
                },
            },
        },
        "provenance": {
            "type": "object",
            "required": ["kernel_row"],
            "properties": {"kernel_row": {"type": ["integer", "null"]}},
        },
    },
}
