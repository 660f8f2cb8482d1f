"""Self-describing instance files.

One JSON document with a required ``format`` tag covers all three input
kinds: quadric systems, halfspace presentations, and construction recipes.
Rationals are written as integers or strings like ``"3/4"``; floats are
rejected so every instance stays exact.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any

from .corpus import Recipe, format_recipe, parse_recipe
from .errors import MalformedRecipe, ParseError, SchemaError
from .polytopes import PolytopePresentation
from .quadrics import QuadricSystem


@dataclass(frozen=True)
class InstanceFile:
    format: str
    name: str | None
    description: str | None
    quadrics: QuadricSystem | None = None
    polytope: PolytopePresentation | None = None
    recipe: Recipe | None = None
    seed: int | None = None


def _parse_rational(value: Any, location: str) -> Fraction:
    if isinstance(value, bool):
        raise SchemaError("rationals must be integers or 'p/q' strings", location)
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise SchemaError(f"invalid rational {value!r}: {exc}", location) from None
    if isinstance(value, float):
        raise SchemaError(
            f"floats are not exact, write {value!r} as a 'p/q' string", location
        )
    raise SchemaError(f"expected a rational, got {type(value).__name__}", location)


def _parse_matrix(value: Any, location: str) -> list[list[Fraction]]:
    if not isinstance(value, list) or not value:
        raise SchemaError("expected a nonempty list of rows", location)
    rows = []
    width = None
    for i, row in enumerate(value):
        if not isinstance(row, list):
            raise SchemaError("expected a list of entries", f"{location}[{i}]")
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise SchemaError(
                f"row has {len(row)} entries, expected {width}", f"{location}[{i}]"
            )
        rows.append([_parse_rational(e, f"{location}[{i}][{j}]") for j, e in enumerate(row)])
    return rows


def _parse_vector(value: Any, location: str) -> list[Fraction]:
    if not isinstance(value, list):
        raise SchemaError("expected a list", location)
    return [_parse_rational(e, f"{location}[{i}]") for i, e in enumerate(value)]


def parse_instance_text(text: str) -> InstanceFile:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise SchemaError("instance document must be a JSON object")
    fmt = doc.get("format")
    if fmt not in ("quadrics", "polytope", "recipe"):
        raise SchemaError(
            f"format must be 'quadrics', 'polytope' or 'recipe', got {fmt!r}", "format"
        )
    name = doc.get("name")
    description = doc.get("description")
    for field, value in (("name", name), ("description", description)):
        if value is not None and not isinstance(value, str):
            raise SchemaError("metadata must be a string", field)

    if fmt == "quadrics":
        if "gamma" not in doc or "c" not in doc:
            raise SchemaError("quadrics instances need 'gamma' and 'c'", "gamma")
        gamma = _parse_matrix(doc["gamma"], "gamma")
        c = _parse_vector(doc["c"], "c")
        if len(c) != len(gamma):
            raise SchemaError(
                f"c has {len(c)} entries but gamma has {len(gamma)} rows", "c"
            )
        try:
            system = QuadricSystem.from_rows(gamma, c)
        except ValueError as exc:
            raise SchemaError(str(exc), "gamma") from None
        return InstanceFile(fmt, name, description, quadrics=system)

    if fmt == "polytope":
        if "a" not in doc or "b" not in doc:
            raise SchemaError("polytope instances need 'a' and 'b'", "a")
        a = _parse_matrix(doc["a"], "a")
        b = _parse_vector(doc["b"], "b")
        if len(b) != len(a):
            raise SchemaError(f"b has {len(b)} entries but a has {len(a)} rows", "b")
        try:
            presentation = PolytopePresentation.from_rows(a, b)
        except ValueError as exc:
            raise SchemaError(str(exc), "a") from None
        return InstanceFile(fmt, name, description, polytope=presentation)

    text_field = doc.get("recipe")
    if not isinstance(text_field, str):
        raise SchemaError("recipe instances need a 'recipe' expression string", "recipe")
    try:
        recipe = parse_recipe(text_field)
    except MalformedRecipe as exc:
        raise SchemaError(f"bad recipe: {exc}", "recipe") from None
    seed = doc.get("seed")
    if seed is not None and not isinstance(seed, int):
        raise SchemaError("seed must be an integer", "seed")
    return InstanceFile(fmt, name, description, recipe=recipe, seed=seed)


def parse_instance(path: str | Path) -> InstanceFile:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None
    return parse_instance_text(text)


def _rational_str(value: Fraction) -> str:
    return str(value)


def quadrics_document(system: QuadricSystem, name: str | None = None,
                      description: str | None = None) -> dict:
    doc: dict[str, Any] = {"format": "quadrics"}
    if name:
        doc["name"] = name
    if description:
        doc["description"] = description
    doc["gamma"] = [[_rational_str(e) for e in row] for row in system.gamma.entries]
    doc["c"] = [_rational_str(e) for e in system.c]
    return doc


def polytope_document(p: PolytopePresentation, name: str | None = None,
                      description: str | None = None) -> dict:
    doc: dict[str, Any] = {"format": "polytope"}
    if name:
        doc["name"] = name
    if description:
        doc["description"] = description
    doc["a"] = [[_rational_str(e) for e in row] for row in p.a.entries]
    doc["b"] = [_rational_str(e) for e in p.b]
    return doc


def recipe_document(recipe: Recipe, name: str | None = None,
                    seed: int | None = None) -> dict:
    doc: dict[str, Any] = {"format": "recipe", "recipe": format_recipe(recipe)}
    if name:
        doc["name"] = name
    if seed is not None:
        doc["seed"] = seed
    return doc


def emit_instance(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"
