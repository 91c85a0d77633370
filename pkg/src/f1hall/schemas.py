"""JSON schemas for the machine-readable outputs of the command-line tool."""

RATIONAL = {"type": "string", "pattern": r"^-?\d+(/\d+)?$"}
INT_STR = {"type": "string", "pattern": r"^-?\d+$"}

LAURENT = {
    "type": "object",
    "required": ["vars", "terms"],
    "properties": {
        "vars": {"type": "array", "items": {"type": "string"}},
        "terms": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["exp", "num", "den"],
                "properties": {
                    "exp": {"type": "array", "items": {"type": "integer"}},
                    "num": INT_STR,
                    "den": {"type": "string", "pattern": r"^\d+$"},
                },
            },
        },
    },
}

VECTOR = {"type": "array", "items": {"type": "integer"}, "minItems": 2, "maxItems": 2}

MONOMIAL = {
    "type": "array",
    "items": {"type": "array", "prefixItems": [VECTOR, {"type": "integer", "minimum": 1}], "minItems": 2, "maxItems": 2},
}

ELEMENT = {
    "type": "object",
    "required": ["terms"],
    "properties": {
        "terms": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["mono", "coeff"],
                "properties": {"mono": MONOMIAL, "coeff": LAURENT},
            },
        }
    },
}

EHA_EVAL = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["input", "normal_form", "element"],
    "properties": {"input": {"type": "string"}, "normal_form": {"type": "string"}, "element": ELEMENT},
}

EHA_TABLE = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["max_norm", "brackets"],
    "properties": {
        "max_norm": {"type": "integer"},
        "brackets": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["x", "y", "terms"],
                "properties": {"x": VECTOR, "y": VECTOR, "terms": ELEMENT["properties"]["terms"]},
            },
        },
    },
}

THETA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["k", "terms"],
    "properties": {
        "k": {"type": "integer", "minimum": 1},
        "terms": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["monomial", "coeff"],
                "properties": {
                    "monomial": {"type": "array", "items": {"type": "array", "items": {"type": "integer"}}},
                    "coeff": LAURENT,
                },
            },
        },
    },
}

MONOID = {
    "type": "object",
    "required": ["elements", "mul"],
    "properties": {
        "elements": {"type": "array", "items": {"type": "string"}, "minItems": 2},
        "mul": {"type": "array", "items": {"type": "array", "items": {"type": "string"}}},
        "zero": {"type": "string"},
        "one": {"type": "string"},
    },
}

MODULE = {
    "type": "object",
    "required": ["points", "action"],
    "properties": {
        "points": {"type": "array", "items": {"type": "string"}},
        "base": {"type": "string"},
        "action": {"type": "object", "additionalProperties": {"type": "object", "additionalProperties": {"type": "string"}}},
    },
}

HALL_TABLE = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["monoid", "classes", "products"],
    "properties": {
        "monoid": MONOID,
        "classes": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "size", "aut"],
                "properties": {
                    "name": {"type": "string"},
                    "size": {"type": "integer", "minimum": 0},
                    "aut": {"type": "integer", "minimum": 1},
                },
            },
        },
        "products": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["left", "right", "product"],
                "properties": {
                    "left": {"type": "string"},
                    "right": {"type": "string"},
                    "product": {"type": "object", "additionalProperties": RATIONAL},
                },
            },
        },
    },
}

DOUBLE_TABLE = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["monoid", "max_size", "entries"],
    "properties": {
        "monoid": MONOID,
        "max_size": {"type": "integer"},
        "entries": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["n", "m", "straightened", "cross_relation"],
                "properties": {
                    "n": {"type": "string"},
                    "m": {"type": "string"},
                    "cross_relation": {"type": "boolean"},
                    "straightened": {
                        "type": "array",
                        "items": {
                            "type": "object",
                            "required": ["left", "right", "coeff"],
                            "properties": {"left": {"type": "string"}, "right": {"type": "string"}, "coeff": RATIONAL},
                        },
                    },
                },
            },
        },
    },
}

MATRIX = {"type": "array", "items": VECTOR, "minItems": 2, "maxItems": 2}

ATLAS = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["range", "charts", "transitions", "z_action"],
    "properties": {
        "range": VECTOR,
        "charts": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["index", "inequalities", "generators", "relations"],
                "properties": {
                    "index": {"type": "integer"},
                    "inequalities": {"type": "array", "items": VECTOR},
                    "generators": {
                        "type": "object",
                        "required": ["x", "y", "q"],
                        "additionalProperties": VECTOR,
                    },
                    "relations": {"type": "array", "items": {"type": "string"}},
                },
            },
        },
        "transitions": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["from", "to", "matrix"],
                "properties": {"from": {"type": "integer"}, "to": {"type": "integer"}, "matrix": MATRIX},
            },
        },
        "z_action": {
            "type": "object",
            "required": ["fan_matrix", "lattice_matrix"],
            "properties": {"fan_matrix": MATRIX, "lattice_matrix": MATRIX},
        },
    },
}
