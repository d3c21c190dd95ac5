"""JSON Schemas describing the output of each CLI subcommand."""

_num = {"type": ["number", "null"]}
_int = {"type": "integer"}


def _row(props: dict) -> dict:
    return {"type": "object", "required": list(props), "properties": props}


STRUCTURE = {
    "type": "object",
    "required": ["kind", "rows"],
    "properties": {
        "kind": {"type": "string"},
        "rows": {
            "type": "array",
            "items": _row({"n": _int, "f_closed": _num, "f_recurrence": _num, "abs_diff": _num}),
        },
    },
}

CLASSIFY = {
    "type": "object",
    "required": ["case", "window", "lambda_head", "diagnostics", "casimir"],
    "properties": {
        "case": {"type": "string"},
        "window": {"type": "array", "items": {"type": ["integer", "null"]}, "minItems": 2, "maxItems": 2},
        "lambda_head": {"type": "array", "items": _num},
        "diagnostics": {"type": "object"},
        "casimir": {"type": "object"},
    },
}

REP = {
    "type": "object",
    "required": ["dim", "relation_residual", "relations", "casimir_residuals", "block_dim", "lambda_head"],
    "properties": {
        "dim": _int,
        "relation_residual": _num,
        "relations": {"type": "object", "additionalProperties": _num},
        "casimir_residuals": {"type": "object", "additionalProperties": _num},
        "block_dim": _int,
        "lambda_head": {"type": "array", "items": _num},
    },
}

HERMITE = {
    "type": "object",
    "properties": {
        "value": _row({"n": _int, "q": _num, "x": _num, "explicit": _num, "recurrence": _num, "psi": _num}),
        "gram": {"type": "array", "items": {"type": "array", "items": _num}},
        "gram_target": {"type": "array", "items": _num},
    },
}

_complex = _row({"re": _num, "im": _num})

COHERENT = {
    "type": "object",
    "required": ["z", "q", "n_terms", "coefficients", "eigen_residual", "norm_sq"],
    "properties": {
        "z": _complex,
        "q": _num,
        "n_terms": _int,
        "coefficients": {"type": "array", "items": _complex},
        "eigen_residual": _num,
        "norm_sq": _row({"series": _num, "product": _num}),
    },
}

MOMENTS = {
    "type": "object",
    "required": ["q", "k_range", "I0", "rows"],
    "properties": {
        "q": _num,
        "k_range": _int,
        "I0": _num,
        "rows": {
            "type": "array",
            "items": _row({"n": _int, "target": _num, "measured": _num, "rel_err": _num, "gram_diag": _num}),
        },
    },
}

KERR = {
    "type": "object",
    "required": ["omega0", "kappa", "matcher", "rows", "scaling"],
    "properties": {
        "omega0": _num,
        "kappa": _num,
        "matcher": {"type": "string"},
        "rows": {"type": "array", "items": _row({"n": _int, "kerr": _num, "deformed": _num, "deviation": _num})},
        "scaling": _row({"ratio": _num, "transition_ratio": _num, "in_band": {"type": "boolean"}, "inconclusive": {"type": "boolean"}}),
    },
}

VERIFY = {
    "type": "object",
    "required": ["passed", "criteria"],
    "properties": {
        "passed": {"type": "boolean"},
        "criteria": {
            "type": "array",
            "items": _row(
                {
                    "number": _int,
                    "title": {"type": "string"},
                    "passed": {"type": "boolean"},
                    "detail": {"type": "string"},
                    "seconds": _num,
                    "metrics": {"type": "object"},
                }
            ),
        },
    },
}

SCHEMAS = {
    "structure": STRUCTURE,
    "classify": CLASSIFY,
    "rep": REP,
    "hermite": HERMITE,
    "coherent": COHERENT,
    "moments": MOMENTS,
    "kerr": KERR,
    "verify": VERIFY,
}
