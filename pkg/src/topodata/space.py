"""Finite topological spaces stored as incidence DAGs.

A space is a finite set of elements plus an acyclic binary relation on
them, the incidence relation.  A pair ``(a, b)`` reads "a is bounded by
b": b lies in the boundary of a, the way a face is bounded by its edges
and an edge by its vertices.  The relation generates a topology whose
open sets are exactly the subsets A with the property that whenever a
boundary element b of some a lies in A, a lies in A too.  Because the
point set is finite this topology is closed under arbitrary
intersections as well, so the whole space is equivalently described by
the reflexive-transitive closure of the incidence relation (its
specialisation preorder), which is what most queries here work on.
"""

from __future__ import annotations

from collections import Counter, deque
from typing import Iterable, Iterator, Mapping

from .errors import (
    CyclicIncidenceError,
    DanglingIncidenceError,
    DuplicateElementError,
    InvalidElementIdError,
    SelfLoopError,
    UnknownElementError,
)

Pair = tuple[str, str]


def check_element_id(token: object) -> str:
    """Validate an element id: non-empty string, no whitespace, no comma."""
    if not isinstance(token, str) or not token:
        raise InvalidElementIdError(f"element id must be a non-empty string, got {token!r}")
    if "," in token or any(ch.isspace() for ch in token):
        raise InvalidElementIdError(f"element id contains whitespace or a comma: {token!r}")
    return token


def find_cycle(nodes: Iterable[str], successors: Mapping[str, Iterable[str]]) -> list[str] | None:
    """Return one directed cycle as a node list, or None when acyclic.

    Deterministic: roots and successors are visited in sorted order, so the
    same graph always yields the same cycle.
    """
    ACTIVE, DONE = 1, 2
    state: dict[str, int] = {}
    for root in sorted(nodes):
        if root in state:
            continue
        stack: list[tuple[str, Iterator[str]]] = [(root, iter(sorted(successors.get(root, ()))))]
        state[root] = ACTIVE
        path = [root]
        while stack:
            node, children = stack[-1]
            advanced = False
            for child in children:
                if state.get(child) == ACTIVE:
                    return path[path.index(child):] + [child]
                if child not in state:
                    state[child] = ACTIVE
                    path.append(child)
                    stack.append((child, iter(sorted(successors.get(child, ())))))
                    advanced = True
                    break
            if not advanced:
                state[node] = DONE
                path.pop()
                stack.pop()
    return None


class Space:
    """A finite topological space represented by an incidence DAG.

    Spaces are immutable value objects: equality and hashing cover the
    name, the element set, the incidence relation, and the attributes.
    All derived data (reachability, dimensions) is memoised internally,
    never exposed, and safe to share across concurrent readers.

    The incidence relation is stored exactly as given.  It is not closed
    or reduced implicitly; ``preorder`` computes the closure on demand and
    ``transitive_reduce`` returns the canonical minimal relation.
    """

    def __init__(self, name, elements, incidence=(), attributes=None):
        self.name = str(name)

        ids = [check_element_id(e) for e in elements]
        counts = Counter(ids)
        dupes = sorted(e for e, n in counts.items() if n > 1)
        if dupes:
            raise DuplicateElementError(f"duplicate element ids in {self.name!r}: {dupes}")
        self.elements = frozenset(ids)

        pairs = set()
        for pair in incidence:
            a, b = pair
            if a == b:
                raise SelfLoopError(f"self pair ({a!r}, {a!r}) in {self.name!r}")
            for endpoint in (a, b):
                if endpoint not in self.elements:
                    raise DanglingIncidenceError(
                        f"incidence pair ({a!r}, {b!r}) in {self.name!r} "
                        f"references unknown element {endpoint!r}")
            pairs.add((a, b))
        self.incidence = frozenset(pairs)

        succ: dict[str, list[str]] = {e: [] for e in self.elements}
        pred: dict[str, list[str]] = {e: [] for e in self.elements}
        for a, b in pairs:
            succ[a].append(b)
            pred[b].append(a)
        self._succ = {e: tuple(sorted(vs)) for e, vs in succ.items()}
        self._pred = {e: tuple(sorted(vs)) for e, vs in pred.items()}

        cycle = find_cycle(self.elements, self._succ)
        if cycle:
            raise CyclicIncidenceError(
                f"incidence of {self.name!r} has a cycle: {' -> '.join(cycle)}")

        cleaned: dict[str, dict[str, str]] = {}
        for el, kv in (attributes or {}).items():
            if el not in self.elements:
                raise UnknownElementError(
                    f"attributes given for unknown element {el!r} in {self.name!r}")
            entry = {}
            for k, v in dict(kv).items():
                if not isinstance(k, str) or not isinstance(v, str):
                    raise TypeError(f"attribute keys and values must be strings: {k!r}={v!r}")
                entry[k] = v
            if entry:
                cleaned[el] = entry
        self.attributes = cleaned

        attr_key = tuple(sorted((el, tuple(sorted(kv.items()))) for el, kv in cleaned.items()))
        self._hash = hash((self.name, self.elements, self.incidence, attr_key))
        # lazily filled caches; recomputation under a race is benign
        self._down: dict[str, frozenset[str]] = {}
        self._up: dict[str, frozenset[str]] = {}
        self._depth: dict[str, int] = {}

    # -- value semantics ---------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Space):
            return NotImplemented
        return (self.name == other.name
                and self.elements == other.elements
                and self.incidence == other.incidence
                and self.attributes == other.attributes)

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __hash__(self):
        return self._hash

    def __len__(self):
        return len(self.elements)

    def __contains__(self, element):
        return element in self.elements

    def __repr__(self):
        return f"Space({self.name!r}, {len(self.elements)} elements, {len(self.incidence)} pairs)"

    # -- fundamental queries -----------------------------------------------

    def _subset(self, subset: Iterable[str]) -> frozenset[str]:
        sub = frozenset(subset)
        unknown = sub - self.elements
        if unknown:
            raise UnknownElementError(f"not elements of {self.name!r}: {sorted(unknown)}")
        return sub

    def is_open(self, subset: Iterable[str]) -> bool:
        """True iff for every pair (a, b) with b in the subset, a is in it too."""
        inside = self._subset(subset)
        return all(a in inside for a, b in self.incidence if b in inside)

    @staticmethod
    def _reach(adjacency, cache, start):
        got = cache.get(start)
        if got is not None:
            return got
        seen = {start}
        queue = deque((start,))
        while queue:
            current = queue.popleft()
            for nxt in adjacency[current]:
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append(nxt)
        got = frozenset(seen)
        cache[start] = got
        return got

    def down_set(self, element: str) -> frozenset[str]:
        """All elements reachable from ``element``, itself included.

        This is the closure of the singleton {element}.
        """
        if element not in self.elements:
            raise UnknownElementError(f"{element!r} is not an element of {self.name!r}")
        return self._reach(self._succ, self._down, element)

    def up_set(self, element: str) -> frozenset[str]:
        """All elements that reach ``element``, itself included.

        This is the star (minimal open superset) of the singleton {element}.
        """
        if element not in self.elements:
            raise UnknownElementError(f"{element!r} is not an element of {self.name!r}")
        return self._reach(self._pred, self._up, element)

    def in_preorder(self, a: str, b: str) -> bool:
        """True iff (a, b) lies in the reflexive-transitive closure of incidence."""
        return b in self.down_set(a)

    def preorder(self) -> frozenset[Pair]:
        """The reflexive-transitive closure of the incidence relation.

        Acyclicity makes this a partial order: reflexive, transitive, and
        antisymmetric.
        """
        return frozenset((a, b) for a in self.elements for b in self.down_set(a))

    def closure(self, subset: Iterable[str]) -> frozenset[str]:
        """Smallest closed superset: everything reachable from the subset."""
        closed: set[str] = set()
        for element in self._subset(subset):
            closed |= self.down_set(element)
        return frozenset(closed)

    def star(self, subset: Iterable[str]) -> frozenset[str]:
        """Smallest open superset: everything that reaches the subset."""
        opened: set[str] = set()
        for element in self._subset(subset):
            opened |= self.up_set(element)
        return frozenset(opened)

    def dimension(self, element: str) -> int:
        """Length of the longest strictly descending chain starting at ``element``.

        Sinks (elements with empty boundary) have dimension 0; an edge with
        vertices has dimension 1, and so on.
        """
        if element not in self.elements:
            raise UnknownElementError(f"{element!r} is not an element of {self.name!r}")
        depth = self._depth
        if element in depth:
            return depth[element]
        stack = [element]
        while stack:
            current = stack[-1]
            if current in depth:
                stack.pop()
                continue
            pending = [s for s in self._succ[current] if s not in depth]
            if pending:
                stack.extend(pending)
                continue
            succ = self._succ[current]
            depth[current] = 1 + max(depth[s] for s in succ) if succ else 0
            stack.pop()
        return depth[element]

    def space_dimension(self) -> int:
        """Maximal element dimension; -1 for the empty space."""
        if not self.elements:
            return -1
        return max(self.dimension(e) for e in self.elements)

    def dimension_histogram(self) -> dict[int, int]:
        """Mapping dimension -> number of elements of that dimension."""
        counts = Counter(self.dimension(e) for e in self.elements)
        return dict(sorted(counts.items()))

    def transitive_reduce(self) -> "Space":
        """The same space with the unique minimal incidence relation.

        The reduction keeps exactly the covering pairs of the reachability
        order, so the generated topology is unchanged.
        """
        reduced = set()
        for a in self.elements:
            below = self.down_set(a) - {a}
            for b in below:
                if not any(b in self.down_set(c) for c in below if c != b):
                    reduced.add((a, b))
        if frozenset(reduced) == self.incidence:
            return self
        return Space(self.name, self.elements, reduced, self.attributes)
