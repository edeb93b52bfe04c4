"""Query operators: subspace, quotient, pasting, pullback, product, joins."""

from __future__ import annotations

import random
import warnings

import pytest

from topodata import (
    CodomainMismatchError,
    CyclicIncidenceError,
    DuplicateElementError,
    MapTotalityError,
    NotContinuousError,
    Partition,
    QuotientCycleError,
    SeparatorCollisionError,
    Space,
    SpaceMap,
    ThetaRelation,
    UnknownElementError,
    compose,
    enumerate_topology,
    fibre_product,
    find_homeomorphism,
    identity_map,
    is_continuous,
    pair_id,
    partition_by_attribute,
    paste_union,
    product,
    pullback_intersection,
    quotient,
    select_subspace,
    theta_join,
)

from conftest import random_space


def same_structure(a: Space, b: Space) -> bool:
    return a.elements == b.elements and a.incidence == b.incidence


class TestSelectSubspace:
    def test_transitive_pair_survives(self, space_y):
        sub, inclusion = select_subspace(space_y, {"C", "x"})
        assert sub.incidence == {("C", "x")}
        assert is_continuous(inclusion)

    def test_identity_selection(self, space_x):
        sub, _ = select_subspace(space_x, space_x.elements)
        assert sub == space_x

    def test_single_point(self, space_y):
        sub, _ = select_subspace(space_y, {"x"})
        assert sub.elements == {"x"}
        assert sub.incidence == frozenset()

    def test_unknown_element(self, space_y):
        with pytest.raises(UnknownElementError):
            select_subspace(space_y, {"zz"})

    def test_predicate_over_attributes(self):
        space = Space("walls", ["w1", "w2", "d"], [],
                      {"w1": {"kind": "wall"}, "w2": {"kind": "wall"},
                       "d": {"kind": "door"}})
        sub, _ = select_subspace(space, lambda attrs: attrs.get("kind") == "wall")
        assert sub.elements == {"w1", "w2"}

    def test_initial_topology(self):
        # a subset is open in the subspace iff it is keep & U for open U
        rng = random.Random(41)
        for _ in range(20):
            space = random_space(rng, max_elements=6, min_elements=1)
            keep = frozenset(e for e in space.elements if rng.random() < 0.6)
            sub, _ = select_subspace(space, keep)
            expected = {keep & u for u in enumerate_topology(space)}
            assert set(enumerate_topology(sub)) == expected


class TestQuotient:
    def test_merge_edge_with_vertex(self, space_y):
        partition = Partition.from_classes(space_y, {"m": ["c", "x"]})
        result, projection = quotient(space_y, partition)
        assert result.elements == {"C", "b", "m"}
        assert result.incidence == {("C", "m"), ("C", "b"), ("b", "m")}
        assert is_continuous(projection)

    def test_cycle_is_an_error_by_default(self, space_y):
        partition = Partition.from_classes(space_y, {"k": ["C", "x"]})
        with pytest.raises(QuotientCycleError):
            quotient(space_y, partition)

    def test_cycle_collapse_policy(self, space_y):
        partition = Partition.from_classes(space_y, {"k": ["C", "x"]})
        result, projection = quotient(space_y, partition, on_cycle="collapse")
        # k -> b -> k and k -> c -> k all fold into one class
        assert result.elements == {"scc:b"}
        assert result.incidence == frozenset()
        assert is_continuous(projection)

    def test_singleton_partition_is_isomorphic_copy(self, space_x):
        partition = Partition.from_classes(space_x, {})
        result, projection = quotient(space_x, partition)
        assert same_structure(result, space_x)
        assert is_continuous(projection)

    def test_partition_must_be_total(self, space_y):
        with pytest.raises(MapTotalityError):
            quotient(space_y, Partition({"C": "C"}))

    def test_partition_must_not_classify_strangers(self, space_y):
        table = {e: e for e in space_y.elements}
        table["zz"] = "zz"
        with pytest.raises(UnknownElementError):
            quotient(space_y, Partition(table))

    def test_double_assignment_rejected(self, space_y):
        with pytest.raises(DuplicateElementError):
            Partition.from_classes(space_y, {"m": ["c", "x"], "k": ["x"]})

    def test_collapse_matches_mutual_reachability(self):
        rng = random.Random(48)
        for _ in range(30):
            space = random_space(rng, max_elements=7, name="S", min_elements=1)
            labels = {e: f"k{rng.randrange(4)}" for e in space.elements}
            result, projection = quotient(space, Partition(labels), on_cycle="collapse")

            induced = {(labels[a], labels[b]) for a, b in space.incidence
                       if labels[a] != labels[b]}
            classes = set(labels.values())
            reach = {c: {c} for c in classes}
            changed = True
            while changed:
                changed = False
                for a, b in induced:
                    new = reach[b] - reach[a]
                    if new:
                        reach[a] |= new
                        changed = True
            expected = {}
            for c in classes:
                component = {d for d in classes if d in reach[c] and c in reach[d]}
                target = min(component)
                expected[c] = target if len(component) == 1 else "scc:" + target
            assert all(projection(e) == expected[labels[e]] for e in space.elements)
            assert result.elements == set(expected.values())

    def test_final_topology(self):
        # a class set is open iff the union of its members is open below
        rng = random.Random(42)
        for _ in range(20):
            space = random_space(rng, max_elements=6, min_elements=1)
            elements = sorted(space.elements)
            labels = {e: f"k{rng.randrange(1 + len(elements) // 2)}" for e in elements}
            result, projection = quotient(space, Partition(labels), on_cycle="collapse")
            final = {e: projection(e) for e in elements}
            classes = sorted(result.elements)
            for mask in range(1 << len(classes)):
                chosen = {c for i, c in enumerate(classes) if (mask >> i) & 1}
                union = {e for e in elements if final[e] in chosen}
                assert result.is_open(chosen) == space.is_open(union)


class TestPasteUnion:
    def test_glue_two_segments(self):
        left = Space("l", ["e1", "v1", "v2"], [("e1", "v1"), ("e1", "v2")])
        right = Space("r", ["e2", "v2", "v3"], [("e2", "v2"), ("e2", "v3")])
        glued, inl, inr = paste_union(left, right)
        assert glued.elements == {"e1", "e2", "v1", "v2", "v3"}
        assert glued.incidence == {("e1", "v1"), ("e1", "v2"),
                                   ("e2", "v2"), ("e2", "v3")}
        assert is_continuous(inl) and is_continuous(inr)

    def test_idempotent(self, space_x):
        glued, _, _ = paste_union(space_x, space_x)
        assert same_structure(glued, space_x)

    def test_forced_cycle(self):
        one = Space("one", ["a", "b"], [("a", "b")])
        other = Space("other", ["a", "b"], [("b", "a")])
        with pytest.raises(CyclicIncidenceError):
            paste_union(one, other)

    def test_redundant_pair_reduced(self):
        chain = Space("c", ["s", "f", "v"], [("s", "f"), ("f", "v")])
        shortcut = Space("s", ["s", "v"], [("s", "v")])
        glued, _, _ = paste_union(chain, shortcut)
        assert glued.incidence == {("s", "f"), ("f", "v")}


class TestPullbackIntersection:
    def test_single_shared_point(self):
        left = Space("l", ["e1", "v1", "v2"], [("e1", "v1"), ("e1", "v2")])
        right = Space("r", ["e2", "v2", "v3"], [("e2", "v2"), ("e2", "v3")])
        meet, inl, inr = pullback_intersection(left, right)
        assert meet.elements == {"v2"}
        assert meet.incidence == frozenset()
        assert is_continuous(inl) and is_continuous(inr)

    def test_idempotent(self, space_x):
        meet, _, _ = pullback_intersection(space_x, space_x)
        assert same_structure(meet, space_x.transitive_reduce())

    def test_disjoint(self, space_x, space_y):
        meet, _, _ = pullback_intersection(space_x, space_y)
        assert len(meet) == 0

    def test_preorder_is_intersection(self):
        rng = random.Random(43)
        for _ in range(20):
            base = [f"n{i}" for i in range(rng.randint(1, 6))]
            x = Space("x", base + ["xonly"],
                      [(a, b) for i, a in enumerate(base) for b in base[i + 1:]
                       if rng.random() < 0.4])
            y = Space("y", base,
                      [(a, b) for i, a in enumerate(base) for b in base[i + 1:]
                       if rng.random() < 0.4])
            meet, _, _ = pullback_intersection(x, y)
            common = x.elements & y.elements
            expected = {(a, b) for a, b in x.preorder()
                        if a in common and b in common} & y.preorder()
            assert meet.preorder() == expected


class TestProduct:
    def test_lift_of_one_right_pair(self, space_x, space_y):
        prod, _, _ = product(space_x, space_y)
        lift = {(a, b) for a, b in prod.incidence
                if a.endswith("×C") and b.endswith("×c")}
        assert lift == {(pair_id(t, "C"), pair_id(t, "c"))
                        for t in space_x.elements}
        assert len(lift) == 6

    def test_pair_dimension_adds(self, space_x, space_y):
        prod, _, _ = product(space_x, space_y)
        assert prod.dimension(pair_id("B", "b")) == 2

    def test_unit_law(self, space_y):
        point = Space("pt", ["P"], [])
        prod, left, _ = product(space_y, point)
        assert find_homeomorphism(space_y, prod) is not None
        assert is_continuous(left)

    def test_projections_continuous(self, space_x, space_y):
        _, left, right = product(space_x, space_y)
        assert is_continuous(left) and is_continuous(right)

    def test_preorder_is_componentwise(self):
        rng = random.Random(44)
        for _ in range(10):
            x = random_space(rng, max_elements=4, name="X", min_elements=1)
            y = random_space(rng, max_elements=4, name="Y", min_elements=1)
            prod, _, _ = product(x, y)
            for a in x.elements:
                for b in y.elements:
                    for c in x.elements:
                        for d in y.elements:
                            lifted = prod.in_preorder(pair_id(a, b), pair_id(c, d))
                            assert lifted == (x.in_preorder(a, c) and y.in_preorder(b, d))

    def test_dimension_additivity(self):
        rng = random.Random(45)
        for _ in range(15):
            x = random_space(rng, max_elements=5, name="X")
            y = random_space(rng, max_elements=5, name="Y")
            prod, _, _ = product(x, y)
            for a in x.elements:
                for b in y.elements:
                    assert prod.dimension(pair_id(a, b)) == x.dimension(a) + y.dimension(b)

    def test_separator_collision(self, space_y):
        clashing = Space("bad", ["a×b"], [])
        with pytest.raises(SeparatorCollisionError):
            product(clashing, space_y)

    def test_size_warning(self):
        x = Space("x", [f"a{i}" for i in range(3)], [])
        y = Space("y", [f"b{i}" for i in range(3)], [])
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            product(x, y, warn_limit=5)
        assert any("advisory limit" in str(w.message) for w in caught)

    def test_empty_factor(self, space_y):
        empty = Space("none", [], [])
        prod, _, _ = product(empty, space_y)
        assert len(prod) == 0


def naive_theta_join(x, y, theta):
    prod, pleft, pright = product(x, y)
    kept = {pair_id(a, b) for a, b in theta.pairs}
    sub, inclusion = select_subspace(prod, kept)
    return sub, compose(pleft, inclusion), compose(pright, inclusion)


class TestThetaJoin:
    def test_overlay_join_size(self, space_x, space_y, theta):
        join, _, _ = theta_join(space_x, space_y, theta)
        assert len(join) == 14

    def test_edge_with_a_hole(self, space_x, space_y, theta):
        join, _, _ = theta_join(space_x, space_y, theta)
        bb = pair_id("B", "b")
        assert join.closure({bb}) - {bb} == {pair_id("B", "x"), pair_id("e", "b"),
                                             pair_id("f", "b"), pair_id("g", "b")}

    def test_vertex_in_join_was_edge_pair(self, space_x, space_y, theta):
        join, _, _ = theta_join(space_x, space_y, theta)
        assert join.dimension(pair_id("e", "b")) == 0

    def test_unknown_theta_ids(self, space_x, space_y):
        with pytest.raises(UnknownElementError):
            theta_join(space_x, space_y, ThetaRelation([("zz", "C")]))

    def test_projection_composition_is_restriction(self, space_x, space_y, theta):
        join, pleft, _ = theta_join(space_x, space_y, theta)
        prod, prod_left, _ = product(space_x, space_y)
        inclusion = SpaceMap(join, prod, {e: e for e in join.elements})
        assert is_continuous(inclusion)
        assert compose(prod_left, inclusion) == pleft

    def test_full_theta_equals_product_reduced(self, space_x, space_y):
        every = ThetaRelation([(a, b) for a in space_x.elements
                               for b in space_y.elements])
        join, _, _ = theta_join(space_x, space_y, every)
        prod, _, _ = product(space_x, space_y)
        assert join == prod.transitive_reduce()

    def test_matches_naive_definition(self, space_x, space_y, theta):
        fast = theta_join(space_x, space_y, theta)
        slow = naive_theta_join(space_x, space_y, theta)
        assert fast == slow

    def test_matches_naive_on_random_instances(self):
        rng = random.Random(46)
        for _ in range(25):
            x = random_space(rng, max_elements=6, name="X", min_elements=1)
            y = random_space(rng, max_elements=6, name="Y", min_elements=1)
            pairs = {(rng.choice(sorted(x.elements)), rng.choice(sorted(y.elements)))
                     for _ in range(rng.randint(0, 8))}
            theta = ThetaRelation(pairs)
            assert theta_join(x, y, theta) == naive_theta_join(x, y, theta)


class TestFibreProduct:
    def test_macro_placement(self, segment):
        locations = Space("loc", ["p1", "p2"], [])
        index = Space("idx", ["m"], [])
        use = SpaceMap(locations, index, {"p1": "m", "p2": "m"})
        naming = SpaceMap(segment, index, {e: "m" for e in segment.elements})
        placed, left, right = fibre_product(use, naming)
        assert len(placed) == 6
        assert placed.incidence == {
            (pair_id("p1", "e"), pair_id("p1", "v1")),
            (pair_id("p1", "e"), pair_id("p1", "v2")),
            (pair_id("p2", "e"), pair_id("p2", "v1")),
            (pair_id("p2", "e"), pair_id("p2", "v2")),
        }
        assert is_continuous(left) and is_continuous(right)

    def test_pullback_of_identity_is_diagonal(self, space_y):
        ident = identity_map(space_y)
        diag, _, _ = fibre_product(ident, ident)
        assert len(diag) == 4
        assert find_homeomorphism(space_y, diag) is not None

    def test_disjoint_labels_empty(self, segment):
        index = Space("idx", ["m", "n"], [])
        locations = Space("loc", ["p1"], [])
        use = SpaceMap(locations, index, {"p1": "m"})
        naming = SpaceMap(segment, index, {e: "n" for e in segment.elements})
        empty, _, _ = fibre_product(use, naming)
        assert len(empty) == 0

    def test_one_point_index_gives_full_product(self, space_x, space_y):
        index = Space("pt", ["i"], [])
        u = SpaceMap(space_x, index, {e: "i" for e in space_x.elements})
        p = SpaceMap(space_y, index, {e: "i" for e in space_y.elements})
        fibre, _, _ = fibre_product(u, p)
        prod, _, _ = product(space_x, space_y)
        assert fibre == prod.transitive_reduce()

    def test_rejects_discontinuous_input(self, segment):
        swap = SpaceMap(segment, segment, {"e": "v1", "v1": "e", "v2": "v2"})
        with pytest.raises(NotContinuousError) as err:
            fibre_product(swap, identity_map(segment))
        assert err.value.witness == ("e", "v1")

    def test_rejects_codomain_mismatch(self, segment, space_y):
        with pytest.raises(CodomainMismatchError):
            fibre_product(identity_map(segment), identity_map(space_y))


class TestConveniences:
    def test_theta_from_attribute_equality(self):
        x = Space("x", ["a1", "a2"], [], {"a1": {"zone": "n"}, "a2": {"zone": "s"}})
        y = Space("y", ["b1", "b2", "b3"], [],
                  {"b1": {"zone": "n"}, "b2": {"zone": "s"}})
        theta = ThetaRelation.from_attribute_equality(x, y, "zone")
        assert theta.pairs == {("a1", "b1"), ("a2", "b2")}
        assert theta.left_name == "x" and theta.right_name == "y"

    def test_partition_by_attribute(self):
        space = Space("s", ["w1", "w2", "d"], [],
                      {"w1": {"kind": "wall"}, "w2": {"kind": "wall"}})
        partition = partition_by_attribute(space, "kind")
        assert partition.classes == {"w1": "wall", "w2": "wall", "d": "d"}


class TestEmittedMapsAreContinuous:
    def test_on_random_instances(self):
        rng = random.Random(47)
        for _ in range(15):
            x = random_space(rng, max_elements=5, name="X", min_elements=1)
            y = random_space(rng, max_elements=5, name="Y", min_elements=1)
            emitted = []
            sub, inc = select_subspace(
                x, [e for e in sorted(x.elements) if rng.random() < 0.7])
            emitted.append(inc)
            labels = {e: f"k{rng.randrange(3)}" for e in x.elements}
            _, projection = quotient(x, Partition(labels), on_cycle="collapse")
            emitted.append(projection)
            _, inl, inr = paste_union(x, y)
            emitted += [inl, inr]
            _, jnl, jnr = pullback_intersection(x, y)
            emitted += [jnl, jnr]
            _, pl, pr = product(x, y)
            emitted += [pl, pr]
            pairs = {(rng.choice(sorted(x.elements)), rng.choice(sorted(y.elements)))
                     for _ in range(4)}
            _, tl, tr = theta_join(x, y, ThetaRelation(pairs))
            emitted += [tl, tr]
            for space_map in emitted:
                assert is_continuous(space_map)
