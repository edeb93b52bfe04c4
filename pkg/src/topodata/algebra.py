"""Relational-style query operators over spaces.

Each operator returns the result space together with the maps linking it
to its inputs (inclusions into sources, or projections onto them), and
every emitted map is continuous by construction.  Selection restricts
the preorder, not the raw relation, so elements stay correctly related
even when the chain between them was dropped; results of the restricting
operators are returned transitively reduced, which makes serialized
output canonical.  Quotient and product instead keep the literally
induced relation (image pairs, respectively the tagged copies of the two
input relations), redundant pairs included.
"""

from __future__ import annotations

import warnings
from typing import Callable, Iterable, Mapping

from .errors import (
    CodomainMismatchError,
    CyclicIncidenceError,
    DuplicateElementError,
    MapTotalityError,
    NotContinuousError,
    QuotientCycleError,
    SeparatorCollisionError,
    UnknownElementError,
)
from .maps import SpaceMap, is_continuous
from .space import Pair, Space

DEFAULT_SEPARATOR = "×"
PRODUCT_WARN_LIMIT = 10 ** 6


class Partition:
    """Assignment of each element of a space to a class label."""

    def __init__(self, classes: Mapping[str, str]):
        table = dict(classes)
        bad = sorted(e for e, label in table.items()
                     if not isinstance(label, str) or not label)
        if bad:
            raise ValueError(f"empty or non-string class labels for {bad}")
        self.classes = table

    @classmethod
    def from_classes(cls, space: Space, labelled: Mapping[str, Iterable[str]]) -> "Partition":
        """Build a partition from explicit classes; unlisted elements become
        singleton classes labelled by their own id."""
        table: dict[str, str] = {}
        for label, members in labelled.items():
            for member in members:
                if member not in space.elements:
                    raise UnknownElementError(
                        f"partition member {member!r} is not in {space.name!r}")
                if member in table:
                    raise DuplicateElementError(
                        f"{member!r} assigned to classes {table[member]!r} and {label!r}")
                table[member] = label
        for element in space.elements:
            table.setdefault(element, element)
        return cls(table)

    def label_of(self, element: str) -> str:
        try:
            return self.classes[element]
        except KeyError:
            raise UnknownElementError(f"partition has no class for {element!r}") from None

    def __eq__(self, other):
        if not isinstance(other, Partition):
            return NotImplemented
        return self.classes == other.classes

    def __repr__(self):
        return f"Partition({len(self.classes)} elements, {len(set(self.classes.values()))} classes)"


class ThetaRelation:
    """Explicit set of cross-space element pairs declared as intersecting.

    The geometric predicate that would decide intersection is outside
    this library; its result is stored as data.  ``left_name`` and
    ``right_name`` record which spaces the sides refer to when known.
    """

    def __init__(self, pairs: Iterable[Pair], left_name: str | None = None,
                 right_name: str | None = None):
        self.pairs = frozenset((a, b) for a, b in pairs)
        self.left_name = left_name
        self.right_name = right_name

    @classmethod
    def from_attribute_equality(cls, x: Space, y: Space, key: str) -> "ThetaRelation":
        """Equi-join convenience: relate elements whose ``key`` attributes match."""
        right_by_value: dict[str, list[str]] = {}
        for b in y.elements:
            value = y.attributes.get(b, {}).get(key)
            if value is not None:
                right_by_value.setdefault(value, []).append(b)
        pairs = []
        for a in x.elements:
            value = x.attributes.get(a, {}).get(key)
            if value is not None:
                pairs.extend((a, b) for b in right_by_value.get(value, ()))
        return cls(pairs, left_name=x.name, right_name=y.name)

    def __eq__(self, other):
        if not isinstance(other, ThetaRelation):
            return NotImplemented
        return self.pairs == other.pairs

    def __len__(self):
        return len(self.pairs)

    def __repr__(self):
        return f"ThetaRelation({len(self.pairs)} pairs)"


def pair_id(left: str, right: str, separator: str = DEFAULT_SEPARATOR) -> str:
    """Render the id of a product element."""
    return f"{left}{separator}{right}"


def _covers(ids: Iterable[str], below_of: Callable[[str], frozenset[str]]) -> set[Pair]:
    # covering pairs of a strict order given as per-element strict down sets
    pairs = set()
    for a in ids:
        below = below_of(a)
        for b in below:
            if not any(b in below_of(c) for c in below if c != b):
                pairs.add((a, b))
    return pairs


def select_subspace(space: Space, keep) -> tuple[Space, SpaceMap]:
    """Subspace on a subset of elements, with its inclusion map.

    ``keep`` is either an iterable of element ids or a predicate over an
    element's attribute dict.  The result relation is the transitive
    reduction of the preorder restricted to the kept elements, not the
    raw relation restricted: two kept elements related only through
    dropped ones stay related.
    """
    if callable(keep):
        kept = frozenset(e for e in space.elements if keep(space.attributes.get(e, {})))
    else:
        kept = frozenset(keep)
        unknown = kept - space.elements
        if unknown:
            raise UnknownElementError(
                f"cannot select {sorted(unknown)}: not elements of {space.name!r}")
    below = {e: (space.down_set(e) & kept) - {e} for e in kept}
    incidence = _covers(kept, below.__getitem__)
    attributes = {e: space.attributes[e] for e in kept if e in space.attributes}
    sub = Space(space.name, kept, incidence, attributes)
    inclusion = SpaceMap(sub, space, {e: e for e in kept})
    return sub, inclusion


def _strongly_connected_components(nodes, edges):
    # Tarjan, iterative
    succ: dict[str, list[str]] = {n: [] for n in nodes}
    for a, b in edges:
        succ[a].append(b)
    index: dict[str, int] = {}
    low: dict[str, int] = {}
    on_stack: set[str] = set()
    stack: list[str] = []
    components: list[list[str]] = []
    counter = [0]

    for root in sorted(nodes):
        if root in index:
            continue
        work = [(root, 0)]
        while work:
            node, child_i = work.pop()
            if child_i == 0:
                index[node] = low[node] = counter[0]
                counter[0] += 1
                stack.append(node)
                on_stack.add(node)
            recurse = False
            children = succ[node]
            for i in range(child_i, len(children)):
                child = children[i]
                if child not in index:
                    work.append((node, i + 1))
                    work.append((child, 0))
                    recurse = True
                    break
                if child in on_stack:
                    low[node] = min(low[node], index[child])
            if recurse:
                continue
            if low[node] == index[node]:
                component = []
                while True:
                    member = stack.pop()
                    on_stack.discard(member)
                    component.append(member)
                    if member == node:
                        break
                components.append(component)
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[node])
    return components


def quotient(space: Space, partition: Partition,
             on_cycle: str = "error") -> tuple[Space, SpaceMap]:
    """Quotient space of a partition, with the projection map.

    Elements are the class labels; the relation is the set of image pairs
    of the source relation with equal-label pairs dropped.  A partition
    can fold the source order into a cycle, which no space may carry:
    with ``on_cycle="error"`` that raises, with ``"collapse"`` each cyclic
    group of classes is merged into a single class named ``scc:<least
    member label>`` and the quotient is rebuilt, which always succeeds.
    """
    if on_cycle not in ("error", "collapse"):
        raise ValueError(f"on_cycle must be 'error' or 'collapse', got {on_cycle!r}")
    missing = space.elements - partition.classes.keys()
    if missing:
        raise MapTotalityError(
            f"partition misses elements of {space.name!r}: {sorted(missing)}")
    extra = partition.classes.keys() - space.elements
    if extra:
        raise UnknownElementError(
            f"partition classifies ids outside {space.name!r}: {sorted(extra)}")

    label = {e: partition.classes[e] for e in space.elements}

    def induced(labelling):
        classes = frozenset(labelling.values())
        pairs = {(labelling[a], labelling[b]) for a, b in space.incidence
                 if labelling[a] != labelling[b]}
        return classes, pairs

    name = f"{space.name}/~"
    classes, pairs = induced(label)
    try:
        result = Space(name, classes, pairs)
    except CyclicIncidenceError as err:
        if on_cycle == "error":
            raise QuotientCycleError(
                f"partition of {space.name!r} induces a cycle on its classes "
                f"({err})") from err
        merged: dict[str, str] = {}
        for component in _strongly_connected_components(classes, pairs):
            target = min(component)
            if len(component) > 1:
                target = "scc:" + target
            for member in component:
                merged[member] = target
        label = {e: merged[label[e]] for e in space.elements}
        classes, pairs = induced(label)
        result = Space(name, classes, pairs)
    projection = SpaceMap(space, result, label)
    return result, projection


def paste_union(x: Space, y: Space) -> tuple[Space, SpaceMap, SpaceMap]:
    """Union of two spaces glued along equal element ids, with inclusions.

    Attributes of shared ids are merged, the right side winning on key
    conflicts.  Gluing can force a cycle between the two relations, which
    is an error.  For a disjoint sum, namespace the ids upstream.
    """
    elements = x.elements | y.elements
    attributes: dict[str, dict[str, str]] = {}
    for source in (x, y):
        for element, kv in source.attributes.items():
            attributes.setdefault(element, {}).update(kv)
    try:
        glued = Space(f"{x.name}∪{y.name}", elements,
                      x.incidence | y.incidence, attributes)
    except CyclicIncidenceError as err:
        raise CyclicIncidenceError(
            f"gluing {x.name!r} and {y.name!r} by shared ids creates a cycle "
            f"({err})") from err
    result = glued.transitive_reduce()
    include_x = SpaceMap(x, result, {e: e for e in x.elements})
    include_y = SpaceMap(y, result, {e: e for e in y.elements})
    return result, include_x, include_y


def pullback_intersection(x: Space, y: Space) -> tuple[Space, SpaceMap, SpaceMap]:
    """Intersection on shared element ids, with inclusions into both inputs.

    Two shared elements are related in the result exactly when they are
    related in the preorders of both inputs, so both inclusions are
    continuous and the result carries the coarsest relation with that
    property.
    """
    common = x.elements & y.elements
    below = {e: frozenset(b for b in (x.down_set(e) & y.down_set(e) & common) if b != e)
             for e in common}
    incidence = _covers(common, below.__getitem__)
    attributes: dict[str, dict[str, str]] = {}
    for source in (x, y):
        for element, kv in source.attributes.items():
            if element in common:
                attributes.setdefault(element, {}).update(kv)
    result = Space(f"{x.name}∩{y.name}", common, incidence, attributes)
    include_x = SpaceMap(result, x, {e: e for e in common})
    include_y = SpaceMap(result, y, {e: e for e in common})
    return result, include_x, include_y


def _check_separator(space: Space, separator: str) -> None:
    clashing = sorted(e for e in space.elements if separator in e)
    if clashing:
        raise SeparatorCollisionError(
            f"elements of {space.name!r} already contain the separator "
            f"{separator!r}: {clashing}")


def product(x: Space, y: Space, separator: str = DEFAULT_SEPARATOR,
            warn_limit: int = PRODUCT_WARN_LIMIT) -> tuple[Space, SpaceMap, SpaceMap]:
    """Product space on all element pairs, with the two projections.

    The relation is the union of the two tagged copies of the input
    relations: for every left element x the pairs (x*a, x*b) with (a, b)
    related on the right, and for every right element y the pairs
    (c*y, d*y) with (c, d) related on the left.  Dimensions of pair
    elements are the sums of the component dimensions.  This is the
    topological generalisation of extrusion.
    """
    _check_separator(x, separator)
    _check_separator(y, separator)
    total = len(x.elements) * len(y.elements)
    if total > warn_limit:
        warnings.warn(f"product has {total} elements, above the advisory "
                      f"limit {warn_limit}", RuntimeWarning, stacklevel=2)
    components = {pair_id(t, u, separator): (t, u)
                  for t in x.elements for u in y.elements}
    incidence: set[Pair] = set()
    for t in x.elements:
        for a, b in y.incidence:
            incidence.add((pair_id(t, a, separator), pair_id(t, b, separator)))
    for c, d in x.incidence:
        for u in y.elements:
            incidence.add((pair_id(c, u, separator), pair_id(d, u, separator)))
    result = Space(f"{x.name}{separator}{y.name}", components.keys(), incidence)
    left = SpaceMap(result, x, {rid: lr[0] for rid, lr in components.items()})
    right = SpaceMap(result, y, {rid: lr[1] for rid, lr in components.items()})
    return result, left, right


def theta_join(x: Space, y: Space, theta: ThetaRelation,
               separator: str = DEFAULT_SEPARATOR) -> tuple[Space, SpaceMap, SpaceMap]:
    """Join of two spaces on an explicit pair relation, with projections.

    Equal by construction to selecting theta's pairs out of the full
    product, but computed without materializing the product: the preorder
    of the product is componentwise, so reachability between kept pairs
    is decided directly on the inputs and only the kept pairs are ever
    touched.
    """
    _check_separator(x, separator)
    _check_separator(y, separator)
    for a, b in theta.pairs:
        if a not in x.elements:
            raise UnknownElementError(f"theta left id {a!r} is not in {x.name!r}")
        if b not in y.elements:
            raise UnknownElementError(f"theta right id {b!r} is not in {y.name!r}")
    kept = sorted(theta.pairs)
    rendered = {pair: pair_id(pair[0], pair[1], separator) for pair in kept}

    below: dict[str, frozenset[str]] = {}
    for l1, r1 in kept:
        below[rendered[(l1, r1)]] = frozenset(
            rendered[(l2, r2)] for l2, r2 in kept
            if (l1, r1) != (l2, r2)
            and x.in_preorder(l1, l2) and y.in_preorder(r1, r2))
    incidence = _covers(below.keys(), below.__getitem__)
    result = Space(f"{x.name}{separator}{y.name}", below.keys(), incidence)
    left = SpaceMap(result, x, {rendered[p]: p[0] for p in kept})
    right = SpaceMap(result, y, {rendered[p]: p[1] for p in kept})
    return result, left, right


def fibre_product(u: SpaceMap, p: SpaceMap,
                  separator: str = DEFAULT_SEPARATOR) -> tuple[Space, SpaceMap, SpaceMap]:
    """Join of two map domains on pairs where the maps agree, with projections.

    Both maps must be continuous into the same index space; the result is
    the subspace of the product of their domains on the pairs (a, b) with
    u(a) = p(b).  With a discrete index space this places each indexed
    piece of one side at every location of the other that names it, the
    detail-library pattern.
    """
    if u.codomain != p.codomain:
        raise CodomainMismatchError(
            f"fibre product needs a common index space, got {u.codomain.name!r} "
            f"and {p.codomain.name!r}")
    for tag, mapping in (("left", u), ("right", p)):
        verdict = is_continuous(mapping)
        if not verdict:
            raise NotContinuousError(
                f"{tag} map {mapping.domain.name!r} -> {mapping.codomain.name!r} "
                f"is not continuous: {verdict.describe()}",
                witness=verdict.witness, image=verdict.image)
    theta = ThetaRelation(
        ((a, b) for a in u.domain.elements for b in p.domain.elements if u(a) == p(b)),
        left_name=u.domain.name, right_name=p.domain.name)
    return theta_join(u.domain, p.domain, theta, separator)


def partition_by_attribute(space: Space, key: str) -> Partition:
    """Group elements by the value of one attribute.

    Elements carrying ``key`` are classed by its value; elements without
    it keep singleton classes labelled by their own id.
    """
    classes = {}
    for element in space.elements:
        value = space.attributes.get(element, {}).get(key)
        classes[element] = value if value is not None else element
    return Partition(classes)
