"""Instance files (JSON or TOML): schema validation and construction of prelog rings."""

from __future__ import annotations

import json
import re
import sys
from dataclasses import dataclass, field
from pathlib import Path

import jsonschema

from .errors import InputError, InstanceError, NotAHomomorphism
from .monoid import AffineMonoid
from .prelog import PrelogRing
from .ring import BaseSpec, PresentedRing

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

_poly = {"type": "string", "minLength": 1}
_coord = {"oneOf": [{"type": "string"}, {"type": "integer"}]}

SCHEMA = {
    "type": "object",
    "required": ["base", "ring", "monoid", "alpha"],
    "additionalProperties": False,
    "properties": {
        "name": {"type": "string"},
        "description": {"type": "string"},
        "tags": {"type": "array", "items": {"type": "string"}},
        "base": {
            "type": "object",
            "required": ["base", "p"],
            "additionalProperties": False,
            "properties": {
                "base": {"enum": ["Fq", "FpRational", "ZpLocal"]},
                "p": {"type": "integer", "minimum": 2},
                "m": {"type": "integer", "minimum": 1, "maximum": 6},
                "r": {"type": "integer", "minimum": 1, "maximum": 3},
            },
        },
        "ring": {
            "type": "object",
            "required": ["variables"],
            "additionalProperties": False,
            "properties": {
                "variables": {
                    "type": "array",
                    "items": {"type": "string", "pattern": "^[A-Za-z][A-Za-z0-9_]*$"},
                    "uniqueItems": True,
                },
                "ideal": {"type": "array", "items": _poly},
                "point": {"type": "array", "items": _coord},
            },
        },
        "monoid": {
            "type": "object",
            "required": ["ambient_rank", "generators"],
            "additionalProperties": False,
            "properties": {
                "ambient_rank": {"type": "integer", "minimum": 0},
                "generators": {"type": "array", "items": {"type": "array", "items": {"type": "integer"}}},
            },
        },
        "alpha": {
            "type": "object",
            "propertyNames": {"pattern": "^e[1-9][0-9]*$"},
            "additionalProperties": _poly,
        },
        "expected": {"type": "object"},
    },
}


@dataclass
class Instance:
    name: str
    base: BaseSpec
    ring: PresentedRing
    monoid: AffineMonoid
    alpha_text: dict  # listed generator -> polynomial string
    tags: tuple[str, ...] = ()
    description: str = ""
    expected: dict = field(default_factory=dict)
    raw: dict = field(default_factory=dict)

    def prelog(self) -> PrelogRing:
        alpha = []
        for g in self.monoid.generators:
            alpha.append(self.ring.ambient.parse(self.alpha_text[g]))
        return PrelogRing(self.ring, self.monoid, tuple(alpha))


def _pointer(err: jsonschema.ValidationError) -> str:
    return "/" + "/".join(str(x) for x in err.absolute_path)


def load_dict(data: dict, name: str = "instance") -> Instance:
    """Validate a decoded instance and build its ring, monoid and alpha table."""
    validator = jsonschema.Draft7Validator(SCHEMA)
    errors = sorted(validator.iter_errors(data), key=lambda e: list(e.absolute_path))
    if errors:
        err = errors[0]
        raise InstanceError(err.message, _pointer(err))
    try:
        base = BaseSpec.from_json(data["base"])
    except InputError as exc:
        raise _with_field(exc, "/base")
    ring_d = data["ring"]
    try:
        ring = PresentedRing(base, ring_d["variables"], ring_d.get("ideal", []), ring_d.get("point"))
    except InstanceError:
        raise
    except (InputError, ValueError, SyntaxError) as exc:
        raise _with_field(exc, "/ring")
    mon_d = data["monoid"]
    try:
        monoid = AffineMonoid(mon_d["ambient_rank"], tuple(tuple(g) for g in mon_d["generators"]))
    except InputError as exc:
        raise _with_field(exc, "/monoid/generators")
    listed = [tuple(g) for g in mon_d["generators"]]
    alpha_in = data["alpha"]
    for key in alpha_in:
        i = int(key[1:])
        if i > len(listed):
            raise InstanceError(f"there are only {len(listed)} monoid generators", f"/alpha/{key}")
    table: dict = {}
    for i, g in enumerate(listed, start=1):
        key = f"e{i}"
        if key not in alpha_in:
            raise InstanceError(f"missing image of generator {list(g)}", f"/alpha/{key}")
        text = alpha_in[key]
        try:
            value = ring.ambient.parse(text)
        except (InputError, ValueError, SyntaxError) as exc:
            raise InstanceError(f"{exc}", f"/alpha/{key}") from exc
        if not any(g):
            if value != ring.ambient.one:
                raise NotAHomomorphism(f"/alpha/{key}: the zero element must map to 1")
            continue
        if g in table and ring.ambient.parse(table[g]) != value:
            raise NotAHomomorphism(f"/alpha/{key}: generator {list(g)} listed twice with different images")
        table[g] = text
    return Instance(
        name=data.get("name", name),
        base=base,
        ring=ring,
        monoid=monoid,
        alpha_text=table,
        tags=tuple(data.get("tags", ())),
        description=data.get("description", ""),
        expected=dict(data.get("expected", {})),
        raw=data,
    )


def _with_field(exc: Exception, pointer: str) -> InputError:
    if isinstance(exc, InputError):
        exc.args = (f"{pointer}: {exc}",)
        return exc
    return InstanceError(str(exc), pointer)


def load(path: str | Path) -> Instance:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InstanceError(f"cannot read {path}: {exc}") from exc
    try:
        if path.suffix.lower() == ".toml":
            data = tomllib.loads(text)
        else:
            data = json.loads(text)
    except (json.JSONDecodeError, tomllib.TOMLDecodeError) as exc:
        raise InstanceError(f"{path}: {exc}") from exc
    return load_dict(data, name=re.sub(r"\.(json|toml)$", "", path.name))
