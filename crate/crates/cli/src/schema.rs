//! Documented JSON formats, printed by `--schema`.

use serde_json::{json, Value};

pub const EVAL: &str = "holant.eval/1";
pub const GADGET: &str = "holant.gadget/1";
pub const CLASSIFY: &str = "holant.classify/1";
pub const COLOR_COUNT: &str = "holant.color-count/1";
pub const TUTTE: &str = "holant.tutte/1";
pub const MEDIAL: &str = "holant.medial/1";
pub const INTERP_DEMO: &str = "holant.interp-demo/1";
pub const INTERP_MATRIX: &str = "holant.interp-matrix/1";
pub const CERTIFY: &str = "holant.certify/1";
pub const VERIFY_FORMULAS: &str = "holant.verify-formulas/1";

fn scalar() -> Value {
    json!({
        "type": "string",
        "description": "exact scalar: integer or n/d, Gaussian a+b*i, cyclotomic [c0,c1,c2,c3] in powers of a primitive 12th root of unity, or a float when it contains a decimal point"
    })
}

fn signature() -> Value {
    json!({
        "type": "object",
        "required": ["kind", "values"],
        "properties": {
            "kind": {"enum": ["dense", "tau1", "tau2", "tau3", "tau4", "tau_color", "tau4_prime"]},
            "arity": {"type": "integer", "description": "optional; inferred from kind or value count"},
            "values": {"type": "array", "items": scalar(), "description": "dense values in lexicographic tuple order, or succinct entries in part order"}
        }
    })
}

fn certificate() -> Value {
    json!({
        "type": "object",
        "required": ["claim", "status", "work"],
        "properties": {
            "claim": {"type": "string"},
            "status": {"enum": ["verified", "falsified_with", "checked_up_to"]},
            "detail": {"description": "witness string for falsified_with, bound for checked_up_to"},
            "work": {"type": "integer", "description": "number of elementary checks"}
        }
    })
}

/// Every input and output format, keyed by name.
pub fn all() -> Value {
    json!({
        "inputs": {
            "grid": {
                "type": "object",
                "required": ["kappa", "signatures", "vertices", "edges"],
                "properties": {
                    "kappa": {"type": "integer", "minimum": 1},
                    "signatures": {"type": "array", "items": signature()},
                    "vertices": {"type": "array", "items": {
                        "type": "object",
                        "properties": {
                            "sig": {"type": "integer", "description": "index into signatures"},
                            "edges": {"type": "array", "items": {"type": "integer"}, "description": "incident edge ids in counterclockwise order"}
                        }
                    }},
                    "edges": {"type": "array", "description": "one entry per edge id: [[v, slot], [w, slot]] for an internal edge, [[v, slot], \"dangling\", d] for the d-th dangling edge"}
                }
            },
            "graph": {
                "type": "object",
                "required": ["n", "edges"],
                "properties": {
                    "n": {"type": "integer"},
                    "edges": {"type": "array", "items": {"type": "array", "minItems": 2, "maxItems": 2}},
                    "rotation": {"type": "array", "description": "optional per-vertex counterclockwise list of darts, 2e for the first end of edge e and 2e+1 for the second; defaults to listing order"}
                },
                "builtins": ["digon", "theta", "k4", "k33", "prism", "bridge", "self-loop", "bridged-cubic", "c<n>"]
            },
            "construction": {
                "type": "object",
                "required": ["gate", "hole"],
                "properties": {"gate": {"$ref": "#/inputs/grid"}, "hole": {"type": "integer", "description": "vertex acting as the arity-4 placeholder"}}
            },
            "config": {
                "format": "toml",
                "keys": {"mode": "exact | float", "tol": "float tolerance", "cap": "enumeration cap", "workers": "thread count", "format": "human | json", "seed": "random seed"}
            }
        },
        "records": {
            EVAL: {"value": scalar(), "method": "string", "brute": scalar(), "agrees": "bool (with --compare)", "expected": "scalar (with --expect)", "matches_expected": "bool"},
            GADGET: {"gadget": "string", "kappa": "int", "closed": signature(), "oracle": signature(), "agrees": "bool", "exhaustive": "bool"},
            CLASSIFY: {
                "kappa": "int", "abc": [scalar()], "verdict": {"enum": ["Tractable", "Hard"]},
                "case": "int or null", "evaluator": "string or null", "witness": "string or null",
                "route": "string or null", "route_steps": ["string"],
                "discriminants": {"A": scalar(), "B": scalar(), "C": scalar()}, "approximate": "bool"
            },
            COLOR_COUNT: {"graph": "string", "kappa": "int", "count": scalar(), "expected": "scalar (with --expect)", "matches_expected": "bool"},
            TUTTE: {"graph": "string", "x": scalar(), "y": scalar(), "value": scalar(), "polynomial": "string", "expected": "scalar (with --expect)", "matches_expected": "bool"},
            MEDIAL: {"graph": "string", "medial": {"$ref": "#/inputs/graph"}, "arcs": "[[[v, slot], [w, slot]]] (with --directed)", "slots": "[[arc; 4]]", "alternates": "bool"},
            INTERP_DEMO: {"graph": "string", "kappa": "int", "samples": [[scalar(), scalar()]], "coefficients": [scalar()], "value": scalar(), "direct": scalar(), "closed_form_holds": "bool", "agrees": "bool"},
            INTERP_MATRIX: {"construction": "string", "kappa": "int", "space": "string", "matrix": [[scalar()]], "char_poly": "string or null", "eigenvalues": "[int] or null", "matches_table": "bool or null"},
            CERTIFY: {"suite": "string", "reports": [certificate()], "evidence": "suite-specific object or null"},
            VERIFY_FORMULAS: {"kappa": "int", "trials": "int", "seed": "int", "exhaustive": "bool", "gadgets": [{"gadget": "string", "agreements": "int", "trials": "int", "mismatch": "object or null"}]}
        },
        "exit_codes": {"0": "success", "1": "usage or module error", "2": "verification mismatch"}
    })
}
