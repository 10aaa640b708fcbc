"""
This module reads and writes correspondence documents and serialises analysis results as JSON.

An input document has one of two forms:

- direct form::

    {"algebra": {"blocks": [{"label": "a", "dim": 1}, ...]},
     "module": {"fullness": {"a": 1, ...},
                "action": [{"on": "c", "by": "a", "mult": 1}, ...]}}

- graph form::

    {"graph": {"vertices": [{"label": "v0"}, ...],
               "edges": [{"src": "v0", "dst": "v2", "count": 1}, ...]}}

Multiplicities are non-negative integers or the string "inf". Missing fullness entries and
missing action entries are 0. The layout is checked against `DOCUMENT_SCHEMA` with
jsonschema before any number is interpreted.
"""

import json
import logging
from typing import Any, Dict, List, Tuple

from jsonschema import Draft202012Validator
from jsonschema.exceptions import best_match

from cplattice.algebra.checks import CheckResult
from cplattice.algebra.constructions import DerivedCorrespondence, GraphDesc, graph_to_correspondence
from cplattice.algebra.correspondence import Correspondence, IdealSet, validate_correspondence
from cplattice.algebra.ideal_calculus import ClosureReport, InvarianceReport, StructuralIdeals
from cplattice.algebra.pairs import IdealPair, PairLattice, RelCPReport
from cplattice.algebra.structure import MatrixBlockStructure
from cplattice.common.errors import DuplicateLabel, InputReadError, InputValidationError, ParseError, SchemaError
from cplattice.common.extnat import ExtNat

logger = logging.getLogger(__name__)

ROOT_FIELD = "$"

_NUMBER = {"type": ["integer", "string"]}

DOCUMENT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "properties": {
        "algebra": {
            "type": "object",
            "properties": {
                "blocks": {
                    "type": "array",
                    "items": {
                        "type": "object",
                        "properties": {"label": {"type": "string"}, "dim": {"type": "integer"}},
                        "required": ["label", "dim"],
                        "additionalProperties": False,
                    },
                },
            },
            "required": ["blocks"],
            "additionalProperties": False,
        },
        "module": {
            "type": "object",
            "properties": {
                "fullness": {"type": "object", "additionalProperties": _NUMBER},
                "action": {
                    "type": "array",
                    "items": {
                        "type": "object",
                        "properties": {"on": {"type": "string"}, "by": {"type": "string"}, "mult": _NUMBER},
                        "required": ["on", "by", "mult"],
                        "additionalProperties": False,
                    },
                },
            },
            "required": ["fullness", "action"],
            "additionalProperties": False,
        },
        "graph": {
            "type": "object",
            "properties": {
                "vertices": {
                    "type": "array",
                    "items": {
                        "type": "object",
                        "properties": {"label": {"type": "string"}},
                        "required": ["label"],
                        "additionalProperties": False,
                    },
                },
                "edges": {
                    "type": "array",
                    "items": {
                        "type": "object",
                        "properties": {"src": {"type": "string"}, "dst": {"type": "string"}, "count": _NUMBER},
                        "required": ["src", "dst", "count"],
                        "additionalProperties": False,
                    },
                },
            },
            "required": ["vertices", "edges"],
            "additionalProperties": False,
        },
    },
    "oneOf": [
        {"required": ["algebra", "module"], "not": {"required": ["graph"]}},
        {"required": ["graph"], "not": {"anyOf": [{"required": ["algebra"]}, {"required": ["module"]}]}},
    ],
    "additionalProperties": False,
}

_VALIDATOR = Draft202012Validator(DOCUMENT_SCHEMA)


def _field_path(path) -> str:
    parts = [str(p) for p in path]
    return "/".join(parts) if parts else ROOT_FIELD


def _unique_keys(pairs: List[Tuple[str, Any]]) -> Dict[str, Any]:
    obj = {}
    for key, value in pairs:
        if key in obj:
            raise DuplicateLabel(f"key {key!r} given twice in one object")
        obj[key] = value
    return obj


def load_document(text: str) -> Dict[str, Any]:
    """
    Decodes a JSON document and checks its layout.

    Raises
    ------
    ParseError
        If the text is not valid JSON.
    DuplicateLabel
        If a key appears twice in one JSON object.
    SchemaError
        If the document does not match `DOCUMENT_SCHEMA`.
    """
    try:
        doc = json.loads(text, object_pairs_hook=_unique_keys)
    except json.JSONDecodeError as err:
        raise ParseError(err.msg, err.lineno, err.colno) from None
    error = best_match(_VALIDATOR.iter_errors(doc))
    if error is not None:
        if error.validator in ("oneOf", "not", "required") and not error.absolute_path:
            raise SchemaError(ROOT_FIELD, "document must contain either 'algebra' and 'module' or 'graph'")
        raise SchemaError(_field_path(error.absolute_path), error.message)
    return doc


def parse_input(text: str) -> Correspondence:
    """
    Parses a direct-form or graph-form document into a validated correspondence.

    Parameters
    ----------
    text : str
        The JSON document.

    Returns
    -------
    Correspondence
        The described correspondence.

    Raises
    ------
    ParseError, SchemaError
        If the text is not a well-formed document.
    InputValidationError
        If the described data is inconsistent (unknown labels, fullness violations, ...).
    """
    doc = load_document(text)
    if "graph" in doc:
        graph = doc["graph"]
        desc = GraphDesc(
            vertices=tuple(v["label"] for v in graph["vertices"]),
            edges=tuple((e["src"], e["dst"], ExtNat.parse(e["count"])) for e in graph["edges"]),
        )
        logger.debug("graph document with %d vertices and %d edges", len(desc.vertices), len(desc.edges))
        return graph_to_correspondence(desc)

    action = {}
    for entry in doc["module"]["action"]:
        key = (entry["on"], entry["by"])
        if key in action:
            raise InputValidationError(f"action entry on={key[0]!r} by={key[1]!r} given twice")
        action[key] = entry["mult"]
    return validate_correspondence(doc["algebra"]["blocks"], doc["module"]["fullness"], action)


def read_input(path: str) -> Correspondence:
    """
    Reads and parses a document from a UTF-8 file.

    Raises
    ------
    InputReadError
        If the file cannot be read.
    ParseError
        If the file is not valid UTF-8 or not valid JSON.
    """
    try:
        with open(path, "rb") as f:
            raw = f.read()
    except OSError as err:
        raise InputReadError(f"cannot read {path}: {err.strerror}") from None
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError as err:
        raise ParseError(f"invalid UTF-8 at byte {err.start}") from None
    return parse_input(text)


def emit_document(corr: Correspondence) -> Dict[str, Any]:
    """
    Returns the direct-form document of a correspondence.

    The fullness map lists every block; action entries are the non-zero entries ordered by
    module block, then acting block. `parse_input` reads the result back to an equal
    correspondence.
    """
    algebra = corr.algebra
    blocks = [{"label": label, "dim": dim} for label, dim in zip(algebra.labels, algebra.dims)]
    fullness = {label: corr.fullness_of(label).to_json() for label in algebra.labels}
    action = [
        {"on": algebra.label(j), "by": algebra.label(i), "mult": corr.action[j, i].to_json()}
        for j in range(corr.n)
        for i in range(corr.n)
        if corr.action[j, i]
    ]
    return {"algebra": {"blocks": blocks}, "module": {"fullness": fullness, "action": action}}


def render_json(obj: Any, indent: int = 2) -> str:
    return json.dumps(obj, indent=indent, ensure_ascii=False) + "\n"


def ideal_to_json(ideal: IdealSet) -> List[str]:
    return ideal.labels


def pair_to_json(pair: IdealPair) -> Dict[str, Any]:
    return {"first": ideal_to_json(pair.first), "second": ideal_to_json(pair.second)}


def structural_to_json(ideals: StructuralIdeals) -> Dict[str, Any]:
    return {
        "ker": ideal_to_json(ideals.ker),
        "compactly_acting": ideal_to_json(ideals.compactly_acting),
        "katsura": ideal_to_json(ideals.katsura),
    }


def invariance_to_json(report: InvarianceReport) -> Dict[str, bool]:
    return {
        "positively_invariant": report.positively_invariant,
        "negatively_invariant": report.negatively_invariant,
        "invariant": report.invariant,
    }


def closures_to_json(report: ClosureReport) -> Dict[str, Any]:
    return {
        "forward_tower": [ideal_to_json(i) for i in report.forward_tower],
        "backward_tower": [ideal_to_json(i) for i in report.backward_tower],
        "positive_closure": ideal_to_json(report.positive_closure),
        "negative_closure": ideal_to_json(report.negative_closure),
        "invariant_closure": ideal_to_json(report.invariant_closure),
    }


def lattice_to_json(lattice: PairLattice) -> Dict[str, Any]:
    return {
        "kind": lattice.kind.value,
        "pairs": [pair_to_json(p) for p in lattice],
        "covers": [list(edge) for edge in lattice.covering_edges],
    }


def relcp_to_json(report: RelCPReport) -> Dict[str, Any]:
    return {
        "ideal": ideal_to_json(report.ideal),
        "tower": [ideal_to_json(i) for i in report.tower],
        "limit": ideal_to_json(report.limit),
        "omega": pair_to_json(report.omega),
        "kernel_of_pi": ideal_to_json(report.kernel_of_pi),
        "algebra_is_zero": report.algebra_is_zero,
        "pi_injective": report.pi_injective,
    }


def structure_to_json(structure: MatrixBlockStructure) -> Dict[str, Any]:
    return {
        "structure": str(structure),
        "dimension": structure.dimension,
        "summands": [{"sink": label, "size": size} for label, size in structure.summands],
    }


def derived_to_json(derived: DerivedCorrespondence) -> Dict[str, Any]:
    return emit_document(derived.result)


def checks_to_json(results: List[CheckResult]) -> Dict[str, Any]:
    return {
        "passed": all(r.passed for r in results),
        "checks": [{"name": r.name, "passed": r.passed, "detail": r.detail} for r in results],
    }
