"""Total maps between spaces: continuity, composition, homeomorphism.

Continuity is the package's central consistency rule: a map f is
continuous exactly when the image of every incidence pair of its domain
lands in the preorder of its codomain.  ``is_continuous`` therefore needs
only the stored relation plus reachability in the codomain, no open-set
enumeration; the brute-force open-preimage check lives in ``oracle`` and
is used by the tests to confirm agreement.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .errors import (
    DomainMismatchError,
    MapTotalityError,
    SizeBoundError,
    UnknownElementError,
)
from .space import Pair, Space


@dataclass(frozen=True)
class ContinuityResult:
    """Outcome of a continuity check, truthy iff the map is continuous.

    On failure ``witness`` is one violating domain pair (a, b) and
    ``image`` its image pair, which is not in the codomain preorder.
    """

    ok: bool
    witness: Pair | None = None
    image: Pair | None = None

    def __bool__(self) -> bool:
        return self.ok

    def describe(self) -> str:
        if self.ok:
            return "continuous"
        a, b = self.witness
        fa, fb = self.image
        return f"witness ({a},{b}) -> ({fa},{fb})"


class SpaceMap:
    """A total function between the element sets of two spaces.

    The mapping is stored as an explicit table, never as code, so maps
    serialize, compare, and diff exactly.  Construction checks totality
    and that every value is an element of the codomain.
    """

    def __init__(self, domain: Space, codomain: Space, mapping):
        table = dict(mapping)
        missing = domain.elements - table.keys()
        if missing:
            raise MapTotalityError(
                f"map {domain.name!r} -> {codomain.name!r} misses {sorted(missing)}")
        extra = table.keys() - domain.elements
        if extra:
            raise UnknownElementError(
                f"map {domain.name!r} -> {codomain.name!r} maps unknown keys {sorted(extra)}")
        bad = sorted(v for v in table.values() if v not in codomain.elements)
        if bad:
            raise UnknownElementError(
                f"map {domain.name!r} -> {codomain.name!r} has values outside "
                f"the codomain: {bad}")
        self.domain = domain
        self.codomain = codomain
        self.mapping = table
        self._hash = hash((domain, codomain, tuple(sorted(table.items()))))

    def __call__(self, element: str) -> str:
        try:
            return self.mapping[element]
        except KeyError:
            raise UnknownElementError(
                f"{element!r} is not an element of {self.domain.name!r}") from None

    def pairs(self) -> list[Pair]:
        """The table as a sorted list of (source, target) pairs."""
        return sorted(self.mapping.items())

    def __eq__(self, other):
        if not isinstance(other, SpaceMap):
            return NotImplemented
        return (self.domain == other.domain
                and self.codomain == other.codomain
                and self.mapping == other.mapping)

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"SpaceMap({self.domain.name!r} -> {self.codomain.name!r}, {len(self.mapping)} entries)"


def identity_map(space: Space) -> SpaceMap:
    """The identity on a space; always continuous."""
    return SpaceMap(space, space, {e: e for e in space.elements})


def compose(g: SpaceMap, f: SpaceMap) -> SpaceMap:
    """The composite x -> g(f(x)); f is applied first."""
    if f.codomain != g.domain:
        raise DomainMismatchError(
            f"cannot compose: codomain {f.codomain.name!r} of the first map "
            f"differs from domain {g.domain.name!r} of the second")
    return SpaceMap(f.domain, g.codomain, {x: g(f(x)) for x in f.domain.elements})


def is_continuous(f: SpaceMap) -> ContinuityResult:
    """Check continuity; on failure return one violating pair as witness.

    f is continuous iff the image of every incidence pair of the domain
    lies in the preorder (reflexive-transitive closure) of the codomain.
    The witness is the first violation in sorted pair order, so repeated
    checks of the same map report the same pair.
    """
    for a, b in sorted(f.domain.incidence):
        fa, fb = f(a), f(b)
        if not f.codomain.in_preorder(fa, fb):
            return ContinuityResult(False, (a, b), (fa, fb))
    return ContinuityResult(True)


def is_homeomorphism(f: SpaceMap, g: SpaceMap) -> bool:
    """True iff f and g are mutually inverse continuous maps."""
    if f.domain != g.codomain or f.codomain != g.domain:
        raise DomainMismatchError(
            f"homeomorphism check needs maps {f.domain.name!r} <-> {f.codomain.name!r} "
            "in both directions")
    if not is_continuous(f) or not is_continuous(g):
        return False
    if any(g(f(x)) != x for x in f.domain.elements):
        return False
    return all(f(g(y)) == y for y in g.domain.elements)


def _signature(space: Space, element: str) -> tuple[int, int, int]:
    # invariant under homeomorphism: chain length plus preorder degrees
    return (space.dimension(element),
            len(space.down_set(element)),
            len(space.up_set(element)))


def find_homeomorphism(x: Space, y: Space, max_elements: int = 10) -> SpaceMap | None:
    """Search for a homeomorphism from x to y; None when there is none.

    Exact backtracking over bijections.  Candidate images are pruned by
    the (dimension, down-degree, up-degree) signature, which every
    homeomorphism preserves.  Deciding this is as hard as graph
    isomorphism, hence the hard size bound instead of a silent slowdown;
    raise the bound explicitly if you accept the cost.

    Deterministic: elements are tried in lexicographic order, so the same
    inputs always produce the same map.
    """
    if len(x.elements) > max_elements or len(y.elements) > max_elements:
        raise SizeBoundError(
            f"homeomorphism search limited to {max_elements} elements, "
            f"got {len(x.elements)} and {len(y.elements)}")
    if len(x.elements) != len(y.elements):
        return None
    sig_x = {e: _signature(x, e) for e in x.elements}
    sig_y = {e: _signature(y, e) for e in y.elements}
    if Counter(sig_x.values()) != Counter(sig_y.values()):
        return None

    order = sorted(x.elements)
    candidates = {e: sorted(t for t in y.elements if sig_y[t] == sig_x[e]) for e in order}
    assigned: dict[str, str] = {}
    used: set[str] = set()

    def extend(i: int) -> bool:
        if i == len(order):
            return True
        a = order[i]
        for b in candidates[a]:
            if b in used:
                continue
            if all(x.in_preorder(a, u) == y.in_preorder(b, v)
                   and x.in_preorder(u, a) == y.in_preorder(v, b)
                   for u, v in assigned.items()):
                assigned[a] = b
                used.add(b)
                if extend(i + 1):
                    return True
                del assigned[a]
                used.remove(b)
        return False

    if extend(0):
        return SpaceMap(x, y, dict(assigned))
    return None
