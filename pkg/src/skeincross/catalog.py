"""Bundled diagrams and path scripts, plus the JSON text parsers.

Fixture layout (``SKEIN_FIXTURES`` overrides the directory)::

    diagrams/<file>.json    one catalog entry per file, keyed by "name"
    scenarios/<name>.json   path scripts; "start" may be a catalog name
    meridians.json          parameters of the meridian suite

Every file carries ``"schema": 1``.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path as FsPath

from . import diagram as dg
from .diagram import DiagramError, FramingData, LongDiagram
from .homotopy import Path, path_from_json, validate_path
from .poly import LaurentPoly, ParseError, parse

__all__ = [
    "CatalogEntry",
    "UnknownName",
    "ValidationError",
    "fixture_dir",
    "names",
    "scenario_names",
    "get",
    "scenario",
    "scenario_json",
    "meridian_parameters",
    "parse_diagram",
    "parse_path",
    "resolve",
]

SCHEMA = 1


class UnknownName(KeyError):
    pass


class ValidationError(DiagramError):
    """A fixture parsed as JSON but does not describe a valid object."""


@dataclass(frozen=True)
class Unknotting:
    crossing: int
    ind: int
    expected_cross: LaurentPoly | None


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    diagram: LongDiagram
    framing: FramingData
    unknotting: tuple
    provenance: str

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "name": self.name,
            "diagram": dg.diagram_to_json(self.diagram),
            "framing": {"writhe": self.framing.writhe, "whitney": self.framing.whitney},
            "unknotting": [
                {
                    "crossing": u.crossing,
                    "ind": u.ind,
                    **({"expected_cross": str(u.expected_cross)} if u.expected_cross is not None else {}),
                }
                for u in self.unknotting
            ],
            "provenance": self.provenance,
        }


def fixture_dir() -> FsPath:
    env = os.environ.get("SKEIN_FIXTURES")
    if env:
        return FsPath(env)
    return FsPath(__file__).with_name("fixtures")


def _loads(text: str, what: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{what}: {exc.msg} at line {exc.lineno} column {exc.colno}", exc.pos) from None


def _schema(obj, what: str) -> None:
    if not isinstance(obj, dict):
        raise ValidationError(f"{what}: expected a JSON object")
    if obj.get("schema") != SCHEMA:
        raise ValidationError(f"{what}: missing or unsupported schema version {obj.get('schema')!r}")


def _entry_from_json(obj, what: str) -> CatalogEntry:
    _schema(obj, what)
    try:
        d = dg.diagram_from_json(obj["diagram"])
    except KeyError:
        raise ValidationError(f"{what}: missing 'diagram'") from None
    except DiagramError as exc:
        raise ValidationError(f"{what}: {exc}") from None
    fr = dg.framing(d)
    anchor = obj.get("framing")
    if anchor is not None and (anchor.get("writhe"), anchor.get("whitney")) != (fr.writhe, fr.whitney):
        raise ValidationError(f"{what}: framing anchor {anchor} does not match the diagram ({fr})")
    unk = []
    for i, u in enumerate(obj.get("unknotting", [])):
        c, ind = u.get("crossing"), u.get("ind")
        if not isinstance(c, int) or not 0 <= c < len(d.vertices) or ind not in (1, -1):
            raise ValidationError(f"{what}: unknotting record {i} is malformed")
        if d.vertices[c].sign != -ind:
            raise ValidationError(f"{what}: unknotting record {i}: crossing {c} cannot be changed with ind {ind}")
        exp = u.get("expected_cross")
        unk.append(Unknotting(c, ind, parse(exp) if exp is not None else None))
    return CatalogEntry(str(obj.get("name", "")), d, fr, tuple(unk), str(obj.get("provenance", "")))


@lru_cache(maxsize=None)
def _load_entries(root: str) -> dict:
    out = {}
    folder = FsPath(root) / "diagrams"
    for f in sorted(folder.glob("*.json")):
        entry = _entry_from_json(_loads(f.read_text(), f.name), f.name)
        out[entry.name] = entry
    return out


def _entries() -> dict:
    return _load_entries(str(fixture_dir()))


def names() -> list[str]:
    return list(_entries())


def get(name: str) -> CatalogEntry:
    try:
        return _entries()[name]
    except KeyError:
        raise UnknownName(name) from None


def resolve(name: str) -> LongDiagram:
    """Diagram of a catalog entry (``@`` prefix allowed)."""
    return get(name[1:] if name.startswith("@") else name).diagram


def scenario_names() -> list[str]:
    return sorted(f.stem for f in (fixture_dir() / "scenarios").glob("*.json"))


def scenario_json(name: str) -> dict:
    f = fixture_dir() / "scenarios" / f"{name}.json"
    if not f.is_file():
        raise UnknownName(name)
    return _loads(f.read_text(), f.name)


def scenario(name: str) -> Path:
    """The named path script, validated."""
    p = _path_from_obj(scenario_json(name), f"scenario {name}")
    tr = validate_path(p)
    if not tr.ok:
        raise ValidationError(f"scenario {name}: event {tr.failed_at}: {tr.reason}")
    return p


def meridian_parameters() -> dict:
    f = fixture_dir() / "meridians.json"
    obj = _loads(f.read_text(), f.name)
    _schema(obj, f.name)
    return obj


def parse_diagram(text: str) -> LongDiagram:
    """A diagram from JSON text: either a bare diagram object or a catalog
    entry with a ``diagram`` field."""
    obj = _loads(text, "diagram")
    if isinstance(obj, dict) and "diagram" in obj:
        return _entry_from_json(obj, "diagram").diagram
    try:
        return dg.diagram_from_json(obj)
    except DiagramError as exc:
        raise ValidationError(str(exc)) from None


def _path_from_obj(obj, what: str) -> Path:
    try:
        return path_from_json(obj, resolve)
    except UnknownName as exc:
        raise ValidationError(f"{what}: unknown catalog name {exc.args[0]!r}") from None
    except DiagramError as exc:
        raise ValidationError(f"{what}: {exc}") from None


def parse_path(text: str) -> Path:
    return _path_from_obj(_loads(text, "path"), "path")
