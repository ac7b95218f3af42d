"""Loading and validating corpus documents (JSON, schema ``satnorm/1``)."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path

import jsonschema

from .algebra import AlgebraMorphism, PresentedAlgebra, Sequence, failing_relations
from .diagram import DiagramSquare
from .errors import (
    InvalidMorphism,
    InvalidSequence,
    NonCommuting,
    SatnormError,
    SchemaError,
    UnresolvedReference,
    ValidationError,
)
from .field import FieldSpec
from .ideals import Ideal

SCHEMA_VERSION = "satnorm/1"

_NAME = {"type": "string", "minLength": 1}
_POLY = {"type": "string"}
_VAR = {"type": "string", "pattern": r"^[a-zA-Z][a-zA-Z0-9_]*$"}

CORPUS_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["field"],
    "additionalProperties": False,
    "properties": {
        "schema": {"const": SCHEMA_VERSION},
        "field": {
            "oneOf": [
                {"const": "Q"},
                {
                    "type": "object",
                    "required": ["Fp"],
                    "additionalProperties": False,
                    "properties": {"Fp": {"type": "integer", "minimum": 2}},
                },
            ]
        },
        "algebras": {
            "type": "object",
            "additionalProperties": {
                "type": "object",
                "required": ["vars", "relations"],
                "additionalProperties": False,
                "properties": {
                    "vars": {"type": "array", "items": _VAR, "uniqueItems": True},
                    "relations": {"type": "array", "items": _POLY},
                    "over": _NAME,
                    "structure": _NAME,
                },
            },
        },
        "morphisms": {
            "type": "object",
            "additionalProperties": {
                "type": "object",
                "required": ["from", "to", "images"],
                "additionalProperties": False,
                "properties": {
                    "from": _NAME,
                    "to": _NAME,
                    "images": {"type": "object", "additionalProperties": _POLY},
                },
            },
        },
        "sequences": {
            "type": "object",
            "additionalProperties": {
                "type": "object",
                "required": ["base", "mid", "top", "tau", "g"],
                "additionalProperties": False,
                "properties": {k: _NAME for k in ("base", "mid", "top", "tau", "g")},
            },
        },
        "diagrams": {
            "type": "object",
            "additionalProperties": {
                "type": "object",
                "required": ["top", "bottom", "fR", "fA", "f"],
                "additionalProperties": False,
                "properties": {k: _NAME for k in ("top", "bottom", "fR", "fA", "f", "retraction")},
            },
        },
        "ideals": {
            "type": "object",
            "additionalProperties": {
                "type": "object",
                "required": ["in", "gens"],
                "additionalProperties": False,
                "properties": {"in": _NAME, "gens": {"type": "array", "items": _POLY}},
            },
        },
        "testsets": {
            "type": "object",
            "additionalProperties": {"type": "array", "items": _POLY},
        },
    },
}


def _pointer(parts) -> str:
    return "".join("/" + str(p).replace("~", "~0").replace("/", "~1") for p in parts)


@dataclass
class CorpusDocument:
    path: str
    sha256: str
    field: FieldSpec
    algebras: dict = field(default_factory=dict)
    morphisms: dict = field(default_factory=dict)
    sequences: dict = field(default_factory=dict)
    diagrams: dict = field(default_factory=dict)
    ideals: dict = field(default_factory=dict)
    testsets: dict = field(default_factory=dict)

    @property
    def name(self) -> str:
        return Path(self.path).name

    def parse_testset(self, name: str, algebra: PresentedAlgebra):
        """Elements of a test set in ``algebra``, or None if some do not parse there."""
        try:
            return [algebra(s) for s in self.testsets[name]]
        except (SatnormError, KeyError, ValueError):
            return None

    def testsets_for(self, algebra: PresentedAlgebra) -> dict:
        out = {}
        for name in self.testsets:
            elems = self.parse_testset(name, algebra)
            if elems is not None:
                out[name] = elems
        return out


def _lookup(table: dict, name: str, kind: str, pointer: str):
    try:
        return table[name]
    except KeyError:
        raise UnresolvedReference(f"{pointer}: unknown {kind} {name!r}") from None


def _parse(algebra: PresentedAlgebra, text: str, pointer: str):
    try:
        return algebra.ring.parse(text)
    except (SatnormError, ValueError, KeyError) as exc:
        raise SchemaError(f"cannot parse {text!r} in {algebra.ring}: {exc}", pointer) from None


def load_document(data: dict, path: str = "<memory>", sha256: str = "") -> CorpusDocument:
    validator = jsonschema.Draft202012Validator(CORPUS_SCHEMA)
    err = jsonschema.exceptions.best_match(validator.iter_errors(data))
    if err is not None:
        raise SchemaError(err.message, _pointer(err.absolute_path))

    raw_field = data["field"]
    try:
        fld = FieldSpec() if raw_field == "Q" else FieldSpec.prime(raw_field["Fp"])
    except ValueError as exc:
        raise SchemaError(str(exc), "/field/Fp") from None
    doc = CorpusDocument(path, sha256, fld)

    for name, entry in data.get("algebras", {}).items():
        ptr = _pointer(["algebras", name])
        alg = PresentedAlgebra.from_strings(name, entry["vars"], (), fld)
        rels = tuple(
            _parse(alg, r, f"{ptr}/relations/{i}") for i, r in enumerate(entry["relations"])
        )
        doc.algebras[name] = PresentedAlgebra(name, alg.ring, rels)

    for name, entry in data.get("morphisms", {}).items():
        ptr = _pointer(["morphisms", name])
        src = _lookup(doc.algebras, entry["from"], "algebra", f"{ptr}/from")
        tgt = _lookup(doc.algebras, entry["to"], "algebra", f"{ptr}/to")
        images = entry["images"]
        missing = [v for v in src.vars if v not in images]
        extra = [v for v in images if v not in src.vars]
        if missing or extra:
            raise ValidationError(
                f"morphism {name}: images must cover {list(src.vars)} exactly "
                f"(missing {missing}, unexpected {extra})"
            )
        ims = tuple(tgt.reduce(_parse(tgt, images[v], f"{ptr}/images/{v}")) for v in src.vars)
        psi = AlgebraMorphism(src, tgt, ims, name)
        bad = failing_relations(psi)
        if bad:
            raise ValidationError(
                f"morphism {name}: relation {bad[0]} of {src.name} does not map to zero in {tgt.name}"
            )
        doc.morphisms[name] = psi

    for name, entry in data.get("algebras", {}).items():
        ptr = _pointer(["algebras", name])
        alg = doc.algebras[name]
        if "structure" in entry:
            psi = _lookup(doc.morphisms, entry["structure"], "morphism", f"{ptr}/structure")
            if psi.target != alg or ("over" in entry and psi.source.name != entry["over"]):
                raise ValidationError(
                    f"algebra {name}: structure {psi.name} must map {entry.get('over', '?')} -> {name}"
                )
        if "over" in entry:
            base = _lookup(doc.algebras, entry["over"], "algebra", f"{ptr}/over")
            if "structure" not in entry and base.vars:
                raise ValidationError(
                    f"algebra {name}: over {base.name} needs a structure morphism"
                )

    for name, entry in data.get("sequences", {}).items():
        ptr = _pointer(["sequences", name])
        parts = {
            k: _lookup(doc.algebras, entry[k], "algebra", f"{ptr}/{k}") for k in ("base", "mid", "top")
        }
        tau = _lookup(doc.morphisms, entry["tau"], "morphism", f"{ptr}/tau")
        g = _lookup(doc.morphisms, entry["g"], "morphism", f"{ptr}/g")
        try:
            doc.sequences[name] = Sequence(parts["base"], parts["mid"], parts["top"], tau, g, name)
        except InvalidSequence as exc:
            raise ValidationError(str(exc)) from None

    for name, entry in data.get("diagrams", {}).items():
        ptr = _pointer(["diagrams", name])
        top = _lookup(doc.sequences, entry["top"], "sequence", f"{ptr}/top")
        bottom = _lookup(doc.sequences, entry["bottom"], "sequence", f"{ptr}/bottom")
        maps = [
            _lookup(doc.morphisms, entry[k], "morphism", f"{ptr}/{k}") for k in ("fR", "fA", "f")
        ]
        h = None
        if "retraction" in entry:
            h = _lookup(doc.morphisms, entry["retraction"], "morphism", f"{ptr}/retraction")
        try:
            doc.diagrams[name] = DiagramSquare(top, bottom, *maps, retraction=h, name=name)
        except (NonCommuting, InvalidMorphism, SatnormError) as exc:
            raise ValidationError(f"diagram {name}: {exc}") from None

    for name, entry in data.get("ideals", {}).items():
        ptr = _pointer(["ideals", name])
        alg = _lookup(doc.algebras, entry["in"], "algebra", f"{ptr}/in")
        gens = [alg.reduce(_parse(alg, s, f"{ptr}/gens/{i}")) for i, s in enumerate(entry["gens"])]
        doc.ideals[name] = Ideal(alg.ring, gens, alg.relations)

    for name, elems in data.get("testsets", {}).items():
        doc.testsets[name] = list(elems)
    return doc


def load_corpus(path) -> CorpusDocument:
    path = Path(path)
    blob = path.read_bytes()
    try:
        data = json.loads(blob)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc.msg} (line {exc.lineno})", "") from None
    return load_document(data, str(path), hashlib.sha256(blob).hexdigest())


def corpus_files(path) -> list:
    """A single document, or every ``*.json`` in a directory (sorted by name)."""
    path = Path(path)
    if path.is_dir():
        return sorted(path.glob("*.json"))
    return [path]
