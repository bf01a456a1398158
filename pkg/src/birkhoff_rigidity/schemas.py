"""JSON schemas for space files and for the documents the CLI writes."""

_number_or_pair = {
    "oneOf": [
        {"type": "number"},
        {"type": "array", "items": {"type": "number"}, "minItems": 2, "maxItems": 2},
    ]
}
_pair = {"type": "array", "items": {"type": "number"}, "minItems": 2, "maxItems": 2}
_point_id = {"type": ["integer", "string", "array"]}
_matrix = {"type": "array", "items": {"type": "array", "items": _number_or_pair}}

NORM = {
    "type": "object",
    "required": ["variant"],
    "properties": {
        "variant": {"enum": ["Lp", "HilbertGram", "Polyhedral", "LipschitzFin",
                             "LipschitzDual", "BlockSum"]},
    },
}

MODEL = {
    "type": "object",
    "required": ["points", "basis", "norm"],
    "properties": {
        "points": {"type": "array", "minItems": 1},
        "proximity": {"type": "object"},
        "basis": _matrix,
        "norm": NORM,
        "flags": {"type": "array", "items": {"type": "string"}},
    },
}

SPACE_FILE = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "space file",
    "type": "object",
    "required": ["space"],
    "properties": {
        "space": {"oneOf": [MODEL, NORM]},
        "operators": {"type": "object", "additionalProperties": _matrix},
        "weights": {"type": "object",
                    "additionalProperties": {"type": "array", "items": _number_or_pair}},
    },
}

_margin = {
    "type": "object",
    "required": ["pair", "xy", "yx", "verdict_xy", "verdict_yx"],
    "properties": {
        "pair": {"type": "array", "items": _point_id, "minItems": 2, "maxItems": 2},
        "xy": {"type": "number"},
        "yx": {"type": "number"},
        "verdict_xy": {"enum": ["orthogonal", "not_orthogonal", "indeterminate"]},
        "verdict_yx": {"enum": ["orthogonal", "not_orthogonal", "indeterminate"]},
    },
}

GRAPH = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "Birkhoff graph",
    "type": "object",
    "required": ["vertices", "edges", "soft_edges", "components", "margins", "tol"],
    "properties": {
        "vertices": {"type": "array", "items": _point_id},
        "edges": {"type": "array", "items": {"type": "array", "items": _point_id,
                                             "minItems": 2, "maxItems": 2}},
        "soft_edges": {"type": "array"},
        "components": {"type": "array", "items": {"type": "array", "items": _point_id,
                                                  "minItems": 1}},
        "margins": {"type": "array", "items": _margin},
        "tol": {"type": "number"},
    },
}

RIGIDITY = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "rigidity report",
    "type": "object",
    "required": ["points", "omega", "components", "lambda_per_component", "verdict",
                 "isometry_evidence"],
    "properties": {
        "points": {"type": "array", "items": _point_id},
        "omega": {"type": "array", "items": _pair},
        "components": {"type": "array", "items": {"type": "array", "items": _point_id}},
        "lambda_per_component": {"type": "array", "items": _pair},
        "verdict": {
            "type": "object",
            "required": ["kind"],
            "properties": {
                "kind": {"enum": ["Scalar", "NonScalarWitness"]},
                "lambda": _pair,
                "components": {"type": "array", "items": {"type": "integer"}},
                "values": {"type": "array", "items": _pair},
            },
        },
        "isometry_evidence": {
            "type": "object",
            "required": ["kind", "isometric", "deviation", "samples", "condition"],
            "properties": {
                "kind": {"enum": ["exact", "structural", "sampled"]},
                "isometric": {"type": "boolean"},
                "deviation": {"type": "number"},
                "samples": {"type": "integer"},
                "condition": {"type": "number"},
            },
        },
        "core_dimension": {"type": "integer"},
        "notes": {"type": "array", "items": {"type": "string"}},
    },
}

_direction = {
    "type": "object",
    "required": ["orthogonal", "verdict", "deficit", "norm", "line_min", "t_star"],
    "properties": {
        "orthogonal": {"type": "boolean"},
        "verdict": {"enum": ["orthogonal", "not_orthogonal", "indeterminate"]},
        "deficit": {"type": "number"},
        "norm": {"type": "number"},
        "line_min": {"type": "number"},
        "t_star": _pair,
        "dual": {"type": "object"},
    },
}

ORTHO = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "orthogonality report",
    "type": "object",
    "required": ["mode", "tol", "e_f", "f_e"],
    "properties": {
        "mode": {"enum": ["vectors", "point-evaluations"]},
        "tol": {"type": "number"},
        "e_f": _direction,
        "f_e": _direction,
    },
}

CORPUS = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "corpus reports",
    "type": "array",
    "items": {
        "type": "object",
        "required": ["scenario", "pass", "claims", "artifacts"],
        "properties": {
            "scenario": {"type": "string"},
            "pass": {"type": "boolean"},
            "claims": {
                "type": "array",
                "items": {
                    "type": "object",
                    "required": ["description", "expected", "observed", "pass", "tolerance"],
                    "properties": {"pass": {"type": "boolean"},
                                   "tolerance": {"type": ["number", "null"]}},
                },
            },
            "artifacts": {"type": "object"},
        },
    },
}

ALL = {
    "space_file": SPACE_FILE,
    "graph": GRAPH,
    "rigidity": RIGIDITY,
    "ortho": ORTHO,
    "corpus": CORPUS,
}
