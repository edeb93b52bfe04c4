"""Cross-space referential constraints checked as continuity constraints.

A foreign key between two stored spaces is a total map; declaring it
``continuous`` additionally requires the map to respect the topologies,
which is the natural consistency rule for level-of-detail references
(every fine element maps to a coarse counterpart compatibly with the
incidences).  ``plain`` mode checks referential integrity only, so a
dataset can stage its migration to checked references.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainMismatchError, UnresolvedReferenceError
from .maps import SpaceMap, compose, is_continuous
from .space import Pair, Space

MODES = ("continuous", "plain")


@dataclass(frozen=True)
class ForeignKeyConstraint:
    name: str
    map_name: str
    mode: str = "continuous"

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"constraint mode must be one of {MODES}, got {self.mode!r}")


class Dataset:
    """Named catalog of spaces, maps, and foreign key constraints."""

    def __init__(self, spaces=None, maps=None, constraints=None):
        self.spaces: dict[str, Space] = dict(spaces or {})
        self.maps: dict[str, SpaceMap] = dict(maps or {})
        self.constraints: list[ForeignKeyConstraint] = list(constraints or [])

    def add_space(self, space: Space) -> None:
        existing = self.spaces.get(space.name)
        if existing is not None and existing != space:
            raise UnresolvedReferenceError(
                f"space name {space.name!r} already bound to different content")
        self.spaces[space.name] = space

    def add_map(self, name: str, space_map: SpaceMap) -> None:
        existing = self.maps.get(name)
        if existing is not None and existing != space_map:
            raise UnresolvedReferenceError(
                f"map name {name!r} already bound to a different map")
        self.maps[name] = space_map

    def resolve_map(self, name: str) -> SpaceMap:
        try:
            return self.maps[name]
        except KeyError:
            raise UnresolvedReferenceError(f"no map named {name!r} in the dataset") from None

    def __repr__(self):
        return (f"Dataset({len(self.spaces)} spaces, {len(self.maps)} maps, "
                f"{len(self.constraints)} constraints)")


@dataclass(frozen=True)
class CheckResult:
    name: str
    mode: str
    ok: bool
    detail: str = ""
    witness: Pair | None = None
    image: Pair | None = None

    def line(self) -> str:
        verdict = "PASS" if self.ok else "FAIL"
        suffix = f": {self.detail}" if self.detail else ""
        return f"{verdict} {self.name} ({self.mode}){suffix}"


@dataclass(frozen=True)
class StageProfile:
    space_name: str
    dimensions: tuple[tuple[int, int], ...]  # (dimension, element count)

    def line(self) -> str:
        profile = " ".join(f"{d}:{n}" for d, n in self.dimensions) or "empty"
        return f"stage {self.space_name}: {profile}"


@dataclass(frozen=True)
class ValidationReport:
    checks: tuple[CheckResult, ...]
    stages: tuple[StageProfile, ...] = ()

    @property
    def ok(self) -> bool:
        return all(check.ok for check in self.checks)

    def lines(self) -> list[str]:
        out = [stage.line() for stage in self.stages]
        out.extend(check.line() for check in self.checks)
        return out


def _integrity_issue(space_map: SpaceMap) -> str:
    """Re-verify totality and codomain membership of an already built map."""
    missing = space_map.domain.elements - space_map.mapping.keys()
    if missing:
        return f"misses {sorted(missing)}"
    stray = sorted(v for v in space_map.mapping.values()
                   if v not in space_map.codomain.elements)
    if stray:
        return f"values outside codomain: {stray}"
    return ""


def _check_constraint(name: str, mode: str, space_map: SpaceMap) -> CheckResult:
    issue = _integrity_issue(space_map)
    if issue:
        return CheckResult(name, mode, False, detail=issue)
    if mode == "continuous":
        verdict = is_continuous(space_map)
        if not verdict:
            return CheckResult(name, mode, False, detail=verdict.describe(),
                               witness=verdict.witness, image=verdict.image)
    return CheckResult(name, mode, True)


def validate(dataset: Dataset) -> ValidationReport:
    """Check every constraint; the report is ordered as declared.

    A failing continuous constraint always carries a witness pair (a, b)
    whose image pair is outside the codomain preorder, so the violation
    can be re-checked independently.
    """
    checks = []
    for constraint in dataset.constraints:
        space_map = dataset.resolve_map(constraint.map_name)
        for space in (space_map.domain, space_map.codomain):
            if dataset.spaces.get(space.name) != space:
                raise UnresolvedReferenceError(
                    f"map {constraint.map_name!r} uses space {space.name!r} "
                    "which is not in the dataset")
        checks.append(_check_constraint(constraint.name, constraint.mode, space_map))
    return ValidationReport(tuple(checks))


def validate_chain(dataset: Dataset, chain: list[str]) -> ValidationReport:
    """Check a chain of maps linking successive levels of detail.

    Each link must be continuous, and so must every composite from the
    finest space onward (implied by the links, verified anyway as defense
    in depth).  The report also profiles the element dimensions of every
    stage along the chain, finest first.
    """
    maps = [dataset.resolve_map(name) for name in chain]
    for left, right in zip(maps, maps[1:]):
        if left.codomain != right.domain:
            raise DomainMismatchError(
                f"chain breaks between {left.codomain.name!r} and {right.domain.name!r}")

    stages = []
    if maps:
        spaces = [maps[0].domain] + [m.codomain for m in maps]
        stages = [StageProfile(s.name, tuple(s.dimension_histogram().items()))
                  for s in spaces]

    checks = []
    for i, (name, space_map) in enumerate(zip(chain, maps)):
        checks.append(_check_constraint(f"link[{i}] {name}", "continuous", space_map))
    running = None
    for i, space_map in enumerate(maps):
        running = space_map if running is None else compose(space_map, running)
        if i > 0:
            checks.append(_check_constraint(f"composite[0..{i}]", "continuous", running))
    return ValidationReport(tuple(checks), tuple(stages))
