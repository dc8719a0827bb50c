"""JSON schemas for the CLI reports."""

from __future__ import annotations

import jsonschema

from .errors import SchemaError

_int = {"type": "integer"}
_bool = {"type": "boolean"}
_ints = {"type": "array", "items": _int}
_strs = {"type": "array", "items": {"type": "string"}}


def _obj(required: dict, extra: dict | None = None) -> dict:
    props = dict(required)
    props.update(extra or {})
    return {"type": "object", "required": sorted(required), "properties": props}


REPORT_SCHEMAS = {
    "prim-images": _obj({
        "images": _ints, "image_labels": _strs, "kernel_primitive": _bool,
        "witnesses": {"type": "object", "additionalProperties": {"type": "string"}},
        "visited": _int, "depth": _int, "component_has_redundant": _bool}),
    "kernel-primitive": _obj({"kernel_primitive": _bool, "witness": {"type": ["string", "null"]}}),
    "irrpr": _obj({"irrpr_rows": _ints, "missing_rows": _ints, "dims": _ints, "num_irr": _int}),
    "chartable": _obj({"group": {"type": "object"}, "classes": {"type": "array"}, "chars": {"type": "array"},
                       "dims": _ints}),
    "chevalley-weil": _obj({"cw_check": _bool, "dim": _int, "expected_dim": _int, "character": _ints}),
    "prim-homology": _obj({
        "cw_check": _bool, "dim": _int, "irrpr_rows": _ints, "lower_mult": _ints, "upper_mult": _ints,
        "determined": _bool, "budget": _int, "rank": _int, "depth": _int, "truncated": _bool,
        "orbits_checked": _int, "words_used": _int}),
    "quotient-check": _obj({
        "all_equal": _bool,
        "checks": {"type": "array", "items": _obj({"element": _int, "fixed_dim": _int, "quotient_rank": _int})}}),
    "scc-images": _obj({"scc_images": _ints, "image_labels": _strs, "identity_is_scc_image": _bool}),
    "irrscc": _obj({"irrscc_rows": _ints, "bound_mult": _ints, "scc_images": _ints, "num_irr": _int,
                    "missing_rows": _ints}),
    "torus-example": _obj({"ok": _bool, "reports": {"type": "array", "items": _obj(
        {"ok": _bool, "p": _int, "counts": {"type": "object"}, "action": {"type": "object"}})}}),
    "gamma-example": _obj({"ok": _bool, "checks": {"type": "object", "additionalProperties": _bool},
                           "rho_row": _int, "irrpr_rows": _ints, "primitive_images": _ints}),
    "sphere-search": _obj({
        "ok": _bool, "rank": _int, "max_order": _int, "groups": _int, "all_kernel_primitive": _bool,
        "counterexamples": {"type": "object"}, "num_counterexamples": {"type": "object"},
        "budget_exceeded": {"type": "object"}, "tuples": _int, "searched": _int, "seconds": {"type": "number"}}),
}

for _s in REPORT_SCHEMAS.values():
    jsonschema.Draft7Validator.check_schema(_s)


def validate_report(command: str, report: dict) -> None:
    try:
        jsonschema.validate(report, REPORT_SCHEMAS[command])
    except KeyError as exc:
        raise SchemaError(f"no schema for {command!r}") from exc
    except jsonschema.ValidationError as exc:
        raise SchemaError(f"{command} report: {exc.message}") from exc
