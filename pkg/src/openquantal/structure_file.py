"""Summary: Load and emit the JSON structure files shared by every kind of structure.

Importance: Fixtures stay human-auditable, and diagnostics name the exact JSON field path.
Alternatives: Pickle validated objects, or keep one ad hoc format per kind.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Mapping, Sequence, Union

from openquantal.errors import InputError
from openquantal.groupoid import (
    FiniteSpace,
    SemigroupAction,
    TopGroupoid,
    validate_action,
    validate_groupoid,
    validate_space,
)
from openquantal.lattice import FiniteLattice
from openquantal.quantale import Quantale
from openquantal.semigroup import InverseSemigroup, validate_inverse_semigroup

logger = logging.getLogger(__name__)

STRUCTURE_KINDS = ("frame", "quantale", "inverse_semigroup", "groupoid", "action")

Subject = Union[FiniteLattice, Quantale, InverseSemigroup, TopGroupoid, SemigroupAction]


@dataclass(frozen=True)
class StructureFile:
    """Summary: A validated structure together with the metadata of its file.

    Importance: Services read the subject, and compare the `expected` flags with their
    findings.
    Alternatives: Return the bare subject and re-read metadata where needed.
    """

    kind: str
    title: str
    subject: Subject
    expected: Mapping[str, bool] = field(default_factory=dict)
    ideal: tuple[int, ...] | None = None
    source: str = "<document>"


def load(path: str | Path) -> StructureFile:
    """Summary: Read, parse, and validate a structure file.

    Importance: Empty and malformed files become InputErrors with a line and column.
    Alternatives: Let json.JSONDecodeError propagate to the caller.
    """

    location = str(path)
    text = Path(path).read_text(encoding="utf-8")
    return loads(text, location)


def loads(text: str, source: str = "<document>") -> StructureFile:
    if not text.strip():
        raise InputError("empty structure file", location=f"{source}:1:1")
    try:
        document = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(exc.msg, location=f"{source}:{exc.lineno}:{exc.colno}") from exc
    return parse_document(document, source)


def parse_document(document: Any, source: str = "<document>") -> StructureFile:
    """Summary: Validate a decoded document of any supported kind.

    Importance: Used for files on disk and for documents posted to the HTTP surface.
    Alternatives: Accept only file paths.
    """

    if not isinstance(document, Mapping):
        raise InputError("structure document must be a JSON object", location="$")
    kind = document.get("kind")
    if kind not in STRUCTURE_KINDS:
        raise InputError(f"kind must be one of {', '.join(STRUCTURE_KINDS)}", location="kind")
    title = document.get("title", "")
    if not isinstance(title, str):
        raise InputError("title must be a string", location="title")
    title = title or Path(source).stem
    expected = _expected(document.get("expected", {}))

    ideal = None
    if kind == "frame":
        subject: Subject = _frame(document, "")
    elif kind == "quantale":
        subject = _quantale(document, "", title)
        if "ideal" in document:
            ideal = tuple(
                _lookup(subject.frame.names, name, f"ideal[{offset}]")
                for offset, name in enumerate(_string_list(document["ideal"], "ideal"))
            )
    elif kind == "inverse_semigroup":
        subject = _semigroup(document, "", title)
    elif kind == "groupoid":
        subject = _groupoid(document, title)
    else:
        subject = _action(document, title)
    logger.info("Loaded %s %s from %s", kind, title, source)
    return StructureFile(kind, title, subject, expected, ideal, source)


def _path(prefix: str, key: str) -> str:
    return f"{prefix}.{key}" if prefix else key


def _require(document: Mapping[str, Any], key: str, prefix: str) -> Any:
    if key not in document:
        raise InputError("missing field", location=_path(prefix, key))
    return document[key]


def _string_list(values: Any, location: str) -> list[str]:
    if not isinstance(values, list) or not all(isinstance(item, str) for item in values):
        raise InputError("expected a list of names", location=location)
    return values


def _names(values: Any, location: str) -> tuple[str, ...]:
    names = _string_list(values, location)
    seen: set[str] = set()
    for offset, name in enumerate(names):
        if name in seen:
            raise InputError(f"duplicate name {name!r}", location=f"{location}[{offset}]")
        seen.add(name)
    return tuple(names)


def _lookup(names: Sequence[str], name: Any, location: str) -> int:
    if not isinstance(name, str):
        raise InputError("expected a name", location=location)
    try:
        return names.index(name)
    except ValueError as exc:
        raise InputError(f"undeclared name {name!r}", location=location) from exc


def _tuples(values: Any, width: int, location: str) -> list[list[str]]:
    if not isinstance(values, list):
        raise InputError(f"expected a list of {width}-element lists", location=location)
    for offset, item in enumerate(values):
        if (
            not isinstance(item, list)
            or len(item) != width
            or not all(isinstance(name, str) for name in item)
        ):
            raise InputError(f"expected {width} names", location=f"{location}[{offset}]")
    return values


def _name_map(values: Any, names: Sequence[str], location: str, total: bool) -> dict[int, int]:
    if not isinstance(values, Mapping):
        raise InputError("expected an object from names to names", location=location)
    result = {
        _lookup(names, key, f"{location}.{key}"): _lookup(names, value, f"{location}.{key}")
        for key, value in values.items()
    }
    if total:
        missing = [name for position, name in enumerate(names) if position not in result]
        if missing:
            raise InputError(f"not defined on {missing[0]!r}", location=location)
    return result


def _expected(values: Any) -> dict[str, bool]:
    if not isinstance(values, Mapping):
        raise InputError("expected must map flag names to booleans", location="expected")
    for key, value in values.items():
        if not isinstance(value, bool):
            raise InputError("expected a boolean", location=f"expected.{key}")
    return dict(values)


def _frame(document: Mapping[str, Any], prefix: str) -> FiniteLattice:
    if "powerset" in document:
        atoms = _names(document["powerset"], _path(prefix, "powerset"))
        return FiniteLattice.powerset(atoms)
    names = _names(_require(document, "elements", prefix), _path(prefix, "elements"))
    key = "covers" if "covers" in document else "leq"
    location = _path(prefix, key)
    pairs = _tuples(_require(document, key, prefix), 2, location)
    for offset, (low, high) in enumerate(pairs):
        _lookup(names, low, f"{location}[{offset}]")
        _lookup(names, high, f"{location}[{offset}]")
    return FiniteLattice.from_pairs(names, [(low, high) for low, high in pairs])


def _quantale(document: Mapping[str, Any], prefix: str, title: str) -> Quantale:
    frame = _frame(document, prefix)
    names = frame.names
    location = _path(prefix, "mult")
    products: dict[tuple[int, int], int] = {}
    for offset, (a, b, c) in enumerate(_tuples(_require(document, "mult", prefix), 3, location)):
        at = f"{location}[{offset}]"
        pair = (_lookup(names, a, at), _lookup(names, b, at))
        value = _lookup(names, c, at)
        if products.setdefault(pair, value) != value:
            raise InputError(f"conflicting products for {a}·{b}", location=at)
    generators = bool(document.get("generators", False))
    inv = _name_map(
        _require(document, "inv", prefix), names, _path(prefix, "inv"), total=not generators
    )
    if generators:
        return Quantale.from_generators(frame, products, inv, title)
    for a in range(frame.n):
        for b in range(frame.n):
            if (a, b) not in products:
                raise InputError(f"missing product {names[a]}·{names[b]}", location=location)
    table = [[products[(a, b)] for b in range(frame.n)] for a in range(frame.n)]
    return Quantale.build(frame, table, [inv[a] for a in range(frame.n)], title)


def _semigroup(document: Mapping[str, Any], prefix: str, title: str) -> InverseSemigroup:
    names = _names(_require(document, "elements", prefix), _path(prefix, "elements"))
    location = _path(prefix, "mult")
    table: dict[tuple[int, int], int] = {}
    for offset, (s, t, st) in enumerate(_tuples(_require(document, "mult", prefix), 3, location)):
        at = f"{location}[{offset}]"
        pair = (_lookup(names, s, at), _lookup(names, t, at))
        value = _lookup(names, st, at)
        if table.setdefault(pair, value) != value:
            raise InputError(f"conflicting products for {s}·{t}", location=at)
    if len(table) != len(names) ** 2:
        missing = next(
            f"{names[s]}·{names[t]}"
            for s in range(len(names))
            for t in range(len(names))
            if (s, t) not in table
        )
        raise InputError(f"missing product {missing}", location=location)
    inv = _name_map(_require(document, "inv", prefix), names, _path(prefix, "inv"), total=True)
    rows = [[table[(s, t)] for t in range(len(names))] for s in range(len(names))]
    return validate_inverse_semigroup(names, rows, [inv[s] for s in range(len(names))], title)


def _opens(
    document: Mapping[str, Any],
    key: str,
    points: Sequence[str],
    location: str,
    discrete: bool,
) -> list[int]:
    if key not in document:
        if discrete:
            return [1 << x for x in range(len(points))]
        raise InputError("missing open sets (or set discrete: true)", location=location)
    families = document[key]
    if not isinstance(families, list):
        raise InputError("expected a list of open sets", location=location)
    masks = []
    for offset, members in enumerate(families):
        at = f"{location}[{offset}]"
        mask = 0
        for name in _string_list(members, at):
            mask |= 1 << _lookup(points, name, at)
        masks.append(mask)
    return masks


def _space(document: Mapping[str, Any], prefix: str, title: str) -> FiniteSpace:
    points = _names(_require(document, "points", prefix), _path(prefix, "points"))
    discrete = bool(document.get("discrete", False))
    subbasis = bool(document.get("subbasis", False)) or ("opens" not in document and discrete)
    opens = _opens(document, "opens", points, _path(prefix, "opens"), discrete)
    return validate_space(points, opens, title, subbasis=subbasis)


def _groupoid(document: Mapping[str, Any], title: str) -> TopGroupoid:
    objects = _names(_require(document, "objects", ""), "objects")
    rows = _tuples(_require(document, "arrows", ""), 3, "arrows")
    arrows = _names([row[0] for row in rows], "arrows")
    dom = [_lookup(objects, row[1], f"arrows[{offset}]") for offset, row in enumerate(rows)]
    cod = [_lookup(objects, row[2], f"arrows[{offset}]") for offset, row in enumerate(rows)]
    discrete = bool(document.get("discrete", False))
    subbasis = bool(document.get("subbasis", False))
    object_opens = _opens(document, "object_opens", objects, "object_opens", discrete)
    arrow_opens = _opens(document, "arrow_opens", arrows, "arrow_opens", discrete)
    object_space = validate_space(
        objects, object_opens, f"{title}₀", subbasis=subbasis or "object_opens" not in document
    )
    arrow_space = validate_space(
        arrows, arrow_opens, f"{title}₁", subbasis=subbasis or "arrow_opens" not in document
    )

    units_doc = _require(document, "units", "")
    if not isinstance(units_doc, Mapping):
        raise InputError("expected an object from objects to arrows", location="units")
    units = {
        _lookup(objects, key, f"units.{key}"): _lookup(arrows, value, f"units.{key}")
        for key, value in units_doc.items()
    }
    missing = [name for position, name in enumerate(objects) if position not in units]
    if missing:
        raise InputError(f"no unit for object {missing[0]!r}", location="units")
    inverse = _name_map(_require(document, "inverse", ""), arrows, "inverse", total=True)
    compose: dict[tuple[int, int], int] = {}
    for offset, (x, y, z) in enumerate(_tuples(_require(document, "compose", ""), 3, "compose")):
        at = f"compose[{offset}]"
        pair = (_lookup(arrows, x, at), _lookup(arrows, y, at))
        value = _lookup(arrows, z, at)
        if compose.setdefault(pair, value) != value:
            raise InputError(f"conflicting composites for {x}, {y}", location=at)
    return validate_groupoid(
        object_space,
        arrow_space,
        dom,
        cod,
        [inverse[x] for x in range(len(arrows))],
        [units[p] for p in range(len(objects))],
        compose,
        title,
    )


def _action(document: Mapping[str, Any], title: str) -> SemigroupAction:
    block = _require(document, "semigroup", "")
    if not isinstance(block, Mapping):
        raise InputError("expected an object", location="semigroup")
    semigroup = _semigroup(block, "semigroup", f"{title} semigroup")
    space_block = _require(document, "space", "")
    if not isinstance(space_block, Mapping):
        raise InputError("expected an object", location="space")
    space = _space(space_block, "space", f"{title} space")
    maps = _require(document, "action", "")
    if not isinstance(maps, Mapping):
        raise InputError("expected an object from elements to partial maps", location="action")
    images: list[list[int | None]] = []
    for s, name in enumerate(semigroup.names):
        if name not in maps:
            raise InputError(f"no partial map for {name!r}", location="action")
        partial = maps[name]
        if not isinstance(partial, Mapping):
            raise InputError("expected an object from points to points", location=f"action.{name}")
        row: list[int | None] = [None] * space.n
        for x, y in partial.items():
            at = f"action.{name}.{x}"
            row[_lookup(space.points, x, at)] = _lookup(space.points, y, at)
        images.append(row)
    return validate_action(semigroup, space, images, title)


def _covers(lattice: FiniteLattice) -> list[list[str]]:
    pairs = []
    for a in range(lattice.n):
        for b in range(lattice.n):
            if a == b or not lattice.le(a, b):
                continue
            between = any(
                c not in (a, b) and lattice.le(a, c) and lattice.le(c, b) for c in range(lattice.n)
            )
            if not between:
                pairs.append([lattice.names[a], lattice.names[b]])
    return pairs


def _space_document(space: FiniteSpace) -> dict[str, Any]:
    return {
        "points": list(space.points),
        "opens": [
            [space.points[x] for x in range(space.n) if mask >> x & 1] for mask in space.opens
        ],
    }


def _semigroup_document(semigroup: InverseSemigroup) -> dict[str, Any]:
    names = semigroup.names
    return {
        "elements": list(names),
        "mult": [list(triple) for triple in semigroup.triples()],
        "inv": {names[s]: names[semigroup.inv[s]] for s in range(semigroup.n)},
    }


def to_document(
    subject: Subject, title: str | None = None, expected: Mapping[str, bool] | None = None
) -> dict[str, Any]:
    """Summary: Render a validated structure as a structure-file document.

    Importance: Converted structures are written in the same format the loader reads.
    Alternatives: Emit a separate export format per command.
    """

    document: dict[str, Any]
    if isinstance(subject, Quantale):
        document = {"kind": "quantale", "title": title or subject.title}
        document["elements"] = list(subject.names)
        document["covers"] = _covers(subject.frame)
        document["mult"] = [list(triple) for triple in subject.triples()]
        document["inv"] = {
            name: subject.names[subject.star(a)] for a, name in enumerate(subject.names)
        }
    elif isinstance(subject, FiniteLattice):
        document = {"kind": "frame", "title": title or "frame"}
        document["elements"] = list(subject.names)
        document["covers"] = _covers(subject)
    elif isinstance(subject, InverseSemigroup):
        document = {"kind": "inverse_semigroup", "title": title or subject.title}
        document.update(_semigroup_document(subject))
    elif isinstance(subject, TopGroupoid):
        objects, arrows = subject.objects, subject.arrows
        document = {"kind": "groupoid", "title": title or subject.title}
        document["objects"] = list(objects.points)
        document["object_opens"] = _space_document(objects)["opens"]
        document["arrows"] = [
            [arrows.points[x], objects.points[subject.dom[x]], objects.points[subject.cod[x]]]
            for x in range(arrows.n)
        ]
        document["arrow_opens"] = _space_document(arrows)["opens"]
        document["units"] = {
            objects.points[p]: arrows.points[subject.unit[p]] for p in range(objects.n)
        }
        document["inverse"] = {
            arrows.points[x]: arrows.points[subject.inverse[x]] for x in range(arrows.n)
        }
        document["compose"] = [
            [arrows.points[x], arrows.points[y], arrows.points[z]]
            for (x, y), z in sorted(subject.compose.items())
        ]
    elif isinstance(subject, SemigroupAction):
        space = subject.space
        document = {"kind": "action", "title": title or subject.title}
        document["semigroup"] = _semigroup_document(subject.semigroup)
        document["space"] = _space_document(space)
        document["action"] = {
            name: {
                space.points[x]: space.points[image]
                for x, image in enumerate(subject.images[s])
                if image is not None
            }
            for s, name in enumerate(subject.semigroup.names)
        }
    else:
        raise TypeError(f"cannot emit {type(subject).__name__}")
    if expected:
        document["expected"] = dict(expected)
    return document


def dumps(document: Mapping[str, Any]) -> str:
    return json.dumps(document, indent=2, ensure_ascii=False) + "\n"


def save(subject: Subject, path: str | Path, title: str | None = None) -> Path:
    """Write a structure file and return its path."""

    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(dumps(to_document(subject, title)), encoding="utf-8")
    logger.info("Wrote %s", target)
    return target
