"""Summary: Isomorphism search for quantales, inverse semigroups, spaces, and groupoids.

Importance: Round-trip theorems are certified by exhibiting explicit isomorphisms.
Alternatives: Compare canonical invariants only and accept false positives.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import TYPE_CHECKING, Hashable, Iterator, Sequence

import networkx as nx

from openquantal.lattice import FiniteLattice

if TYPE_CHECKING:
    from openquantal.groupoid import FiniteSpace, TopGroupoid
    from openquantal.quantale import Quantale
    from openquantal.semigroup import InverseSemigroup

logger = logging.getLogger(__name__)


def _link(graph: nx.DiGraph, source: Hashable, target: Hashable, role: str) -> None:
    """Add `role` to the edge source → target; roles between the same nodes share one edge."""

    if graph.has_edge(source, target):
        data = graph[source][target]
        data["roles"] = data["roles"] | {role}
    else:
        graph.add_edge(source, target, roles=frozenset({role}))


def _gadget(
    graph: nx.DiGraph,
    node: Hashable,
    label: str,
    first: Hashable,
    second: Hashable,
    value: Hashable,
) -> None:
    """Encode value = first ∘ second as a labelled node with three typed edges."""

    graph.add_node(node, label=label)
    _link(graph, first, node, "first")
    _link(graph, second, node, "second")
    _link(graph, node, value, "value")


def _labels_agree(first: nx.DiGraph, second: nx.DiGraph) -> bool:
    if first.number_of_nodes() != second.number_of_nodes():
        return False
    if first.number_of_edges() != second.number_of_edges():
        return False
    left = sorted(repr(label) for _, label in first.nodes(data="label"))
    right = sorted(repr(label) for _, label in second.nodes(data="label"))
    return left == right


def _matcher(first: nx.DiGraph, second: nx.DiGraph) -> nx.isomorphism.DiGraphMatcher:
    return nx.isomorphism.DiGraphMatcher(
        first,
        second,
        node_match=lambda left, right: left["label"] == right["label"],
        edge_match=lambda left, right: left["roles"] == right["roles"],
    )


def _restrict(mapping: dict[Hashable, tuple], kind: str, size: int) -> tuple[int, ...]:
    return tuple(mapping[(kind, a)][1] for a in range(size))


def lattice_graph(lattice: FiniteLattice, labels: Sequence[Hashable] | None = None) -> nx.DiGraph:
    """Summary: Strict order a < b as edges between element nodes ("x", a).

    Importance: Order isomorphisms of lattices are exactly isomorphisms of this digraph.
    Alternatives: Encode only the covering relation.
    """

    graph = nx.DiGraph()
    for a in range(lattice.n):
        label = labels[a] if labels is not None else (len(lattice.down(a)), len(lattice.up(a)))
        graph.add_node(("x", a), label=label)
    for a in range(lattice.n):
        for b in lattice.up(a):
            if b != a:
                _link(graph, ("x", a), ("x", b), "le")
    return graph


def order_automorphisms(lattice: FiniteLattice) -> Iterator[tuple[int, ...]]:
    """Summary: All order automorphisms of a finite lattice, sorted.

    Importance: Frame automorphisms drive canonical forms in the structure search.
    Alternatives: Try all n! permutations.
    """

    graph = lattice_graph(lattice)
    found = {
        _restrict(mapping, "x", lattice.n)
        for mapping in _matcher(graph, graph).isomorphisms_iter()
    }
    yield from sorted(found)


def is_quantale_isomorphism(first: "Quantale", second: "Quantale", table: Sequence[int]) -> bool:
    """Check that a table is a bijective order, product, and involution preserving map."""

    if first.n != second.n or len(set(table)) != first.n or len(table) != first.n:
        return False
    frame, other = first.frame, second.frame
    for a in range(first.n):
        if table[first.star(a)] != second.star(table[a]):
            return False
        for b in range(first.n):
            if frame.le(a, b) != other.le(table[a], table[b]):
                return False
            if table[first.product(a, b)] != second.product(table[a], table[b]):
                return False
    return True


def _quantale_signature(quantale: "Quantale", a: int) -> tuple[int, ...]:
    frame = quantale.frame
    return (
        len(frame.down(a)),
        len(frame.up(a)),
        int(a in quantale.rs_set),
        int(quantale.star(a) == a),
        sum(1 for x in range(quantale.n) if quantale.product(a, x) == quantale.bot),
        len(frame.down(quantale.product(a, a))),
    )


def quantale_graph(quantale: "Quantale") -> nx.DiGraph:
    """Summary: Order, involution, and products of join-irreducibles as one labelled digraph.

    Importance: Products and the involution preserve joins, so their values on
    join-irreducibles fix them everywhere.
    Alternatives: Encode all n² products.
    """

    frame = quantale.frame
    graph = lattice_graph(frame, [_quantale_signature(quantale, a) for a in range(quantale.n)])
    for a in range(quantale.n):
        _link(graph, ("x", a), ("x", quantale.star(a)), "star")
    for a in frame.join_irreducibles:
        for b in frame.join_irreducibles:
            value = ("x", quantale.product(a, b))
            _gadget(graph, ("p", a, b), "product", ("x", a), ("x", b), value)
    return graph


def quantale_isomorphism(first: "Quantale", second: "Quantale") -> tuple[int, ...] | None:
    """Summary: Find an isomorphism by matching the labelled digraphs of both quantales.

    Importance: Element invariants label the nodes, so VF2 only pairs elements that agree on
    order profile, right-sidedness, and products with themselves.
    Alternatives: Backtrack over assignments of join-irreducibles by hand.
    """

    if first.n != second.n:
        return None
    left, right = quantale_graph(first), quantale_graph(second)
    if not _labels_agree(left, right):
        return None
    for mapping in _matcher(left, right).isomorphisms_iter():
        table = _restrict(mapping, "x", first.n)
        if is_quantale_isomorphism(first, second, table):
            return table
    return None


def _semigroup_signature(semigroup: "InverseSemigroup", s: int) -> tuple[int, ...]:
    powers = []
    current = s
    while current not in powers:
        powers.append(current)
        current = semigroup.product(current, s)
    return (
        int(s in semigroup.idempotent_set),
        len(semigroup.down(s)),
        int(semigroup.natural_leq[s, :].sum()),
        len(powers),
        int(semigroup.inv[s] == s),
        int(semigroup.compatible[s, :].sum()),
    )


def semigroup_graph(semigroup: "InverseSemigroup") -> nx.DiGraph:
    """Inverse edges and one product node per ordered pair, elements labelled by invariants."""

    graph = nx.DiGraph()
    for s in range(semigroup.n):
        graph.add_node(("x", s), label=_semigroup_signature(semigroup, s))
    for s in range(semigroup.n):
        _link(graph, ("x", s), ("x", semigroup.inv[s]), "inv")
        for t in range(semigroup.n):
            _gadget(
                graph, ("p", s, t), "product", ("x", s), ("x", t), ("x", semigroup.product(s, t))
            )
    return graph


def semigroup_isomorphism(
    first: "InverseSemigroup", second: "InverseSemigroup"
) -> tuple[int, ...] | None:
    """Summary: Isomorphism of multiplication tables through a labelled digraph match.

    Importance: Canonical invariant vectors (idempotency, order profile, power cycle) cut the
    candidate pairs to a handful per element.
    Alternatives: Compare multiplication tables under every permutation.
    """

    if first.n != second.n:
        return None
    left, right = semigroup_graph(first), semigroup_graph(second)
    if not _labels_agree(left, right):
        return None
    matcher = _matcher(left, right)
    if not matcher.is_isomorphic():
        return None
    return _restrict(matcher.mapping, "x", first.n)


def space_graph(space: "FiniteSpace", kind: str = "x") -> nx.DiGraph:
    """Edges x → y for y ∈ N(x), y ≠ x; nodes labelled by neighbourhood size and reach."""

    members = [space.neighbourhood_members(x) for x in range(space.n)]
    graph = nx.DiGraph()
    for x in range(space.n):
        reach = sum(x in others for others in members)
        graph.add_node((kind, x), label=(kind, len(members[x]), reach))
    for x in range(space.n):
        for y in members[x]:
            if y != x:
                _link(graph, (kind, x), (kind, y), "nb")
    return graph


def space_homeomorphisms(first: "FiniteSpace", second: "FiniteSpace") -> Iterator[tuple[int, ...]]:
    """Summary: All homeomorphisms between finite T0 spaces.

    Importance: Finite spaces are determined by minimal neighbourhoods, so preserving
    membership y ∈ N(x) both ways is exactly being a homeomorphism.
    Alternatives: Map every open set and compare families at the leaves.
    """

    if first.n != second.n or len(first.opens) != len(second.opens):
        return
    left, right = space_graph(first), space_graph(second)
    if not _labels_agree(left, right):
        return
    for mapping in _matcher(left, right).isomorphisms_iter():
        yield _restrict(mapping, "x", first.n)


def space_homeomorphism(first: "FiniteSpace", second: "FiniteSpace") -> tuple[int, ...] | None:
    return next(space_homeomorphisms(first, second), None)


@dataclass(frozen=True)
class GroupoidIsomorphism:
    """Summary: Object and arrow bijections commuting with all structure maps."""

    objects: tuple[int, ...]
    arrows: tuple[int, ...]


def is_groupoid_isomorphism(
    first: "TopGroupoid", second: "TopGroupoid", objects: Sequence[int], arrows: Sequence[int]
) -> bool:
    """Check both homeomorphisms and that d, r, i, u, m are preserved."""

    if sorted(objects) != list(range(len(second.objects.points))):
        return False
    if sorted(arrows) != list(range(len(second.arrows.points))):
        return False
    if {first.objects.map_open(mask, objects) for mask in first.objects.opens} != set(
        second.objects.opens
    ):
        return False
    if {first.arrows.map_open(mask, arrows) for mask in first.arrows.opens} != set(
        second.arrows.opens
    ):
        return False
    for x in range(len(first.arrows.points)):
        if objects[first.dom[x]] != second.dom[arrows[x]]:
            return False
        if objects[first.cod[x]] != second.cod[arrows[x]]:
            return False
        if arrows[first.inverse[x]] != second.inverse[arrows[x]]:
            return False
    for p in range(len(first.objects.points)):
        if arrows[first.unit[p]] != second.unit[objects[p]]:
            return False
    for (x, y), z in first.compose.items():
        if second.compose.get((arrows[x], arrows[y])) != arrows[z]:
            return False
    return True


def groupoid_graph(groupoid: "TopGroupoid") -> nx.DiGraph:
    """Summary: Both spaces plus d, r, i, u, and composition as one labelled digraph.

    Importance: Objects ("o", p) and arrows ("a", x) carry different labels, so a match
    is a pair of homeomorphisms commuting with every structure map.
    Alternatives: Match objects first and search arrows fibre by fibre.
    """

    graph = nx.compose(space_graph(groupoid.objects, "o"), space_graph(groupoid.arrows, "a"))
    for x in range(groupoid.arrows.n):
        _link(graph, ("a", x), ("o", groupoid.dom[x]), "dom")
        _link(graph, ("a", x), ("o", groupoid.cod[x]), "cod")
        _link(graph, ("a", x), ("a", groupoid.inverse[x]), "inv")
    for p in range(groupoid.objects.n):
        _link(graph, ("o", p), ("a", groupoid.unit[p]), "unit")
    for (x, y), z in groupoid.compose.items():
        _gadget(graph, ("c", x, y), "compose", ("a", x), ("a", y), ("a", z))
    return graph


def groupoid_isomorphism(first: "TopGroupoid", second: "TopGroupoid") -> GroupoidIsomorphism | None:
    """Summary: Match the labelled digraphs of two groupoids and certify the result.

    Importance: Round trips G(O(G)) ≅ G are reported with the explicit bijections.
    Alternatives: Search arrows directly and derive objects from units.
    """

    if first.arrows.n != second.arrows.n or first.objects.n != second.objects.n:
        return None
    left, right = groupoid_graph(first), groupoid_graph(second)
    if not _labels_agree(left, right):
        return None
    for mapping in _matcher(left, right).isomorphisms_iter():
        objects = _restrict(mapping, "o", first.objects.n)
        arrows = _restrict(mapping, "a", first.arrows.n)
        if is_groupoid_isomorphism(first, second, objects, arrows):
            logger.debug("Groupoid isomorphism found between %s and %s", first.title, second.title)
            return GroupoidIsomorphism(objects, arrows)
    return None
