"""File formats for spaces, maps, theta relations, partitions, manifests.

All documents are JSON.  Serializers emit a canonical form: fixed key
order, element ids and pairs sorted, two-space indentation, trailing
newline.  Parsing a serialized value returns an equal value, and
serializing is idempotent on its own output.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Mapping

from .algebra import Partition, ThetaRelation
from .constraints import Dataset, ForeignKeyConstraint
from .errors import ParseError, UnresolvedReferenceError
from .maps import SpaceMap
from .space import Space


def _load_json(text: str, source: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as err:
        raise ParseError(err.msg, source=source, line=err.lineno) from err


def _require(doc, key, kind, source):
    if not isinstance(doc, dict):
        raise ParseError(f"expected an object, got {type(doc).__name__}", source=source)
    if key not in doc:
        raise ParseError(f"missing field {key!r}", source=source)
    value = doc[key]
    if not isinstance(value, kind):
        raise ParseError(f"field {key!r} must be {kind.__name__}, "
                         f"got {type(value).__name__}", source=source)
    return value


def _id_pairs(value, field, source):
    pairs = []
    for entry in value:
        if not (isinstance(entry, list) and len(entry) == 2
                and all(isinstance(v, str) for v in entry)):
            raise ParseError(f"{field} entries must be [string, string], "
                             f"got {entry!r}", source=source)
        pairs.append((entry[0], entry[1]))
    return pairs


# -- spaces ------------------------------------------------------------------

def parse_space(text: str, source: str = "<space>") -> Space:
    doc = _load_json(text, source)
    name = _require(doc, "name", str, source)
    raw_elements = _require(doc, "elements", list, source)
    ids = []
    attributes = {}
    for entry in raw_elements:
        if not isinstance(entry, dict) or "id" not in entry:
            raise ParseError(f"elements entries must be objects with an 'id', "
                             f"got {entry!r}", source=source)
        ids.append(entry["id"])
        attrs = entry.get("attrs")
        if attrs is not None:
            if not isinstance(attrs, dict) or not all(
                    isinstance(k, str) and isinstance(v, str) for k, v in attrs.items()):
                raise ParseError(f"attrs of {entry['id']!r} must map strings to strings",
                                 source=source)
            attributes[entry["id"]] = attrs
    incidence = _id_pairs(_require(doc, "incidence", list, source), "incidence", source)
    return Space(name, ids, incidence, attributes)


def serialize_space(space: Space) -> str:
    elements = []
    for element in sorted(space.elements):
        entry: dict = {"id": element}
        attrs = space.attributes.get(element)
        if attrs:
            entry["attrs"] = dict(sorted(attrs.items()))
        elements.append(entry)
    doc = {
        "name": space.name,
        "elements": elements,
        "incidence": [list(pair) for pair in sorted(space.incidence)],
    }
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


# -- maps --------------------------------------------------------------------

def parse_map(text: str, spaces: Mapping[str, Space], source: str = "<map>") -> SpaceMap:
    doc = _load_json(text, source)
    domain_name = _require(doc, "domain", str, source)
    codomain_name = _require(doc, "codomain", str, source)
    for name in (domain_name, codomain_name):
        if name not in spaces:
            raise UnresolvedReferenceError(f"{source}: unknown space {name!r}")
    pairs = _id_pairs(_require(doc, "pairs", list, source), "pairs", source)
    return SpaceMap(spaces[domain_name], spaces[codomain_name], dict(pairs))


def serialize_map(space_map: SpaceMap) -> str:
    doc = {
        "domain": space_map.domain.name,
        "codomain": space_map.codomain.name,
        "pairs": [list(pair) for pair in space_map.pairs()],
    }
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


# -- theta relations -----------------------------------------------------------

def parse_theta(text: str, source: str = "<theta>") -> ThetaRelation:
    doc = _load_json(text, source)
    left = _require(doc, "left", str, source)
    right = _require(doc, "right", str, source)
    pairs = _id_pairs(_require(doc, "pairs", list, source), "pairs", source)
    return ThetaRelation(pairs, left_name=left, right_name=right)


def serialize_theta(theta: ThetaRelation) -> str:
    if theta.left_name is None or theta.right_name is None:
        raise ValueError("theta relation has no space names to serialize")
    doc = {
        "left": theta.left_name,
        "right": theta.right_name,
        "pairs": [list(pair) for pair in sorted(theta.pairs)],
    }
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


# -- partitions ----------------------------------------------------------------

def parse_partition(text: str, spaces: Mapping[str, Space],
                    source: str = "<partition>") -> tuple[str, Partition]:
    doc = _load_json(text, source)
    space_name = _require(doc, "space", str, source)
    if space_name not in spaces:
        raise UnresolvedReferenceError(f"{source}: unknown space {space_name!r}")
    labelled = {}
    for entry in _require(doc, "classes", list, source):
        if not (isinstance(entry, dict) and isinstance(entry.get("label"), str)
                and isinstance(entry.get("members"), list)):
            raise ParseError(f"classes entries must have 'label' and 'members', "
                             f"got {entry!r}", source=source)
        if entry["label"] in labelled:
            raise ParseError(f"class label {entry['label']!r} listed twice", source=source)
        labelled[entry["label"]] = entry["members"]
    return space_name, Partition.from_classes(spaces[space_name], labelled)


def serialize_partition(space_name: str, partition: Partition) -> str:
    by_label: dict[str, list[str]] = {}
    for element, label in partition.classes.items():
        by_label.setdefault(label, []).append(element)
    classes = []
    for label in sorted(by_label):
        members = sorted(by_label[label])
        if members == [label]:
            continue  # singleton default, implied
        classes.append({"label": label, "members": members})
    doc = {"space": space_name, "classes": classes}
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


# -- document detection ----------------------------------------------------------

def detect_kind(text: str, source: str = "<document>") -> str:
    """Classify a document as space, map, theta, or partition by its fields."""
    doc = _load_json(text, source)
    if not isinstance(doc, dict):
        raise ParseError("expected an object at top level", source=source)
    keys = doc.keys()
    if {"elements", "incidence"} <= keys:
        return "space"
    if {"domain", "codomain", "pairs"} <= keys:
        return "map"
    if {"left", "right", "pairs"} <= keys:
        return "theta"
    if {"space", "classes"} <= keys:
        return "partition"
    raise ParseError(f"cannot classify document with fields {sorted(keys)}", source=source)


# -- path helpers -----------------------------------------------------------------

def load_space(path) -> Space:
    path = Path(path)
    return parse_space(path.read_text(encoding="utf-8"), source=str(path))


def save_space(space: Space, path) -> None:
    Path(path).write_text(serialize_space(space), encoding="utf-8")


def load_map(path, spaces: Mapping[str, Space]) -> SpaceMap:
    path = Path(path)
    return parse_map(path.read_text(encoding="utf-8"), spaces, source=str(path))


def save_map(space_map: SpaceMap, path) -> None:
    Path(path).write_text(serialize_map(space_map), encoding="utf-8")


def load_theta(path) -> ThetaRelation:
    path = Path(path)
    return parse_theta(path.read_text(encoding="utf-8"), source=str(path))


# -- dataset manifests ---------------------------------------------------------------

def load_dataset(manifest_path) -> Dataset:
    """Load a dataset manifest: space files, map files, constraints.

    Paths are resolved relative to the manifest.  Spaces are catalogued
    under their own name field; maps, whose format carries no name, are
    catalogued under their file stem.
    """
    manifest_path = Path(manifest_path)
    source = str(manifest_path)
    doc = _load_json(manifest_path.read_text(encoding="utf-8"), source)
    base = manifest_path.parent

    dataset = Dataset()
    for rel in _require(doc, "spaces", list, source):
        if not isinstance(rel, str):
            raise ParseError(f"spaces entries must be paths, got {rel!r}", source=source)
        dataset.add_space(load_space(base / rel))
    for rel in doc.get("maps", []):
        if not isinstance(rel, str):
            raise ParseError(f"maps entries must be paths, got {rel!r}", source=source)
        map_path = base / rel
        dataset.add_map(map_path.stem, load_map(map_path, dataset.spaces))
    for entry in doc.get("constraints", []):
        if not (isinstance(entry, dict) and isinstance(entry.get("name"), str)
                and isinstance(entry.get("map"), str)):
            raise ParseError(f"constraints entries need 'name' and 'map', "
                             f"got {entry!r}", source=source)
        mode = entry.get("mode", "continuous")
        try:
            constraint = ForeignKeyConstraint(entry["name"], entry["map"], mode)
        except ValueError as err:
            raise ParseError(str(err), source=source) from err
        dataset.constraints.append(constraint)
    return dataset
