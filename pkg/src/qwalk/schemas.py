"""JSON Schemas for every JSON document the CLI emits."""

_num = {"type": "number"}
_num_list = {"type": "array", "items": _num}

GRAPH = {
    "type": "object",
    "required": ["n", "edges", "family"],
    "properties": {
        "n": {"type": "integer", "minimum": 1},
        "edges": {
            "type": "array",
            "items": {"type": "array", "items": {"type": "integer", "minimum": 0}, "minItems": 2, "maxItems": 2},
        },
        "family": {
            "oneOf": [
                {"type": "null"},
                {"type": "object", "required": ["name"], "properties": {"name": {"type": "string"}}},
            ]
        },
    },
}

CONNECTIVITY = {
    "type": "object",
    "required": [
        "graph", "n", "degree_min", "degree_max", "vertex_connectivity",
        "edge_connectivity", "algebraic_connectivity", "normalized_algebraic_connectivity", "connected",
    ],
    "properties": {
        "graph": {"type": "string"},
        "n": {"type": "integer"},
        "degree_min": {"type": "integer"},
        "degree_max": {"type": "integer"},
        "vertex_connectivity": {"type": "integer", "minimum": 0},
        "edge_connectivity": {"type": "integer", "minimum": 0},
        "algebraic_connectivity": {"type": "number", "minimum": 0},
        "normalized_algebraic_connectivity": {"type": "number", "minimum": 0},
        "connected": {"type": "boolean"},
    },
}

SPECTRUM = {
    "type": "object",
    "required": ["graph", "marked", "gamma", "mode", "reduced", "dim", "eigenvalues", "overlaps"],
    "properties": {
        "graph": {"type": "string"},
        "marked": {"type": "integer"},
        "gamma": _num,
        "mode": {"enum": ["laplacian", "adjacency"]},
        "reduced": {"type": "boolean"},
        "dim": {"type": "integer"},
        "cells": {"type": "array", "items": {"type": "object"}},
        "eigenvalues": _num_list,
        "overlaps": {"type": "object", "additionalProperties": _num_list},
    },
}

TIME_SERIES = {
    "type": "object",
    "required": ["graph", "marked", "mode", "stages", "times", "probabilities", "peaks"],
    "properties": {
        "graph": {"type": "string"},
        "marked": {"type": "integer"},
        "mode": {"enum": ["laplacian", "adjacency"]},
        "stages": {"type": "array", "items": {"type": "array", "items": _num, "minItems": 2, "maxItems": 2}},
        "times": _num_list,
        "probabilities": {"type": "object", "additionalProperties": _num_list},
        "peaks": {
            "type": "object",
            "additionalProperties": {
                "type": "object",
                "required": ["time", "probability"],
                "properties": {"time": _num, "probability": _num},
            },
        },
    },
}

PREDICTION = {
    "type": "object",
    "required": ["graph", "predictions"],
    "properties": {
        "graph": {"type": "string"},
        "predictions": {
            "type": "array",
            "items": {
                "type": "object",
                "required": [
                    "stage", "critical_gammas", "energy_gap", "runtime",
                    "peak_probability", "eigenstate_pairing",
                ],
                "properties": {
                    "stage": {"type": "string"},
                    "critical_gammas": _num_list,
                    "energy_gap": {"type": "number", "exclusiveMinimum": 0},
                    "runtime": {"type": "number", "exclusiveMinimum": 0},
                    "peak_probability": {"type": "number", "exclusiveMinimum": 0, "maximum": 1},
                    "eigenstate_pairing": {"type": "string"},
                },
            },
        },
        "schedule": {"type": "array", "items": {"type": "array", "items": _num}},
    },
}

_cmp_entry = {
    "type": "object",
    "required": ["predicted", "numeric", "rel_error"],
    "properties": {"predicted": _num, "numeric": _num, "rel_error": {"type": "number", "minimum": 0}},
}

COMPARE = {
    "type": "object",
    "required": ["graph", "marked", "mode", "stages"],
    "properties": {
        "graph": {"type": "string"},
        "marked": {"type": "integer"},
        "mode": {"enum": ["laplacian", "adjacency"]},
        "stages": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["stage", "gamma_c", "gap", "runtime", "peak_probability"],
                "properties": {
                    "stage": {"type": "string"},
                    "gamma_c": _cmp_entry,
                    "gap": _cmp_entry,
                    "runtime": _cmp_entry,
                    "peak_probability": _cmp_entry,
                },
            },
        },
    },
}

ERROR = {
    "type": "object",
    "required": ["error", "message", "exit_code"],
    "properties": {
        "error": {"enum": ["config_error", "numerical_contract_violation", "error"]},
        "message": {"type": "string"},
        "exit_code": {"type": "integer"},
    },
}
