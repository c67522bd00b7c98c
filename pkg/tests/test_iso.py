"""Summary: Tests for isomorphism search across structure kinds.

Importance: Round-trip checks pass only when an explicit isomorphism is found.
Alternatives: Compare invariants and accept false positives.
"""

from __future__ import annotations

import itertools
from pathlib import Path

import networkx as nx

from openquantal.catalog import load_entry, two_point_quantale, z2_groupoid
from openquantal.groupoid import (
    discrete_space,
    disjoint_union,
    pair_groupoid,
    sierpinski_space,
    unit_groupoid,
)
from openquantal.iso import (
    groupoid_graph,
    groupoid_isomorphism,
    is_groupoid_isomorphism,
    is_quantale_isomorphism,
    order_automorphisms,
    quantale_graph,
    quantale_isomorphism,
    semigroup_isomorphism,
    space_homeomorphisms,
)
from openquantal.lattice import FiniteLattice
from openquantal.semigroup import compatibility_graph, compatible_cliques
from openquantal.structure_file import load

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def test_order_automorphisms_of_small_frames() -> None:
    """Summary: Verify P({a,b}) has the swap and identity while a chain is rigid.

    Importance: Canonical forms in the search depend on these automorphisms.
    Alternatives: Enumerate all permutations.
    """

    assert len(list(order_automorphisms(FiniteLattice.powerset(("a", "b"))))) == 2
    assert list(order_automorphisms(FiniteLattice.chain(3))) == [(0, 1, 2)]


def test_quantale_isomorphism_distinguishes_involutions() -> None:
    """Summary: Verify Q_A and Q_B are not isomorphic while Q_A is isomorphic to itself.

    Importance: The involution is part of the structure.
    Alternatives: Compare multiplication tables only.
    """

    first, second = two_point_quantale(False), two_point_quantale(True)
    assert quantale_isomorphism(first, second) is None
    table = quantale_isomorphism(first, two_point_quantale(False))
    assert table is not None
    assert is_quantale_isomorphism(first, first, table)


def test_semigroup_isomorphism_between_presentations_of_i2() -> None:
    """Summary: Verify the hand-written I₂ fixture is isomorphic to the generated one.

    Importance: Element names differ while the structure agrees.
    Alternatives: Compare multiplication tables after renaming.
    """

    generated = load_entry("i2").subject
    handwritten = load(FIXTURES / "i2.json").subject
    table = semigroup_isomorphism(handwritten, generated)
    assert table is not None
    assert sorted(table) == list(range(7))
    assert semigroup_isomorphism(handwritten, load_entry("z2-semigroup").subject) is None


def test_sierpinski_space_is_rigid() -> None:
    """Summary: Verify the only self-homeomorphism of the Sierpiński space is the identity.

    Importance: Homeomorphism search prunes by neighbourhood membership.
    Alternatives: Compare open families at the leaves.
    """

    space = sierpinski_space()
    assert list(space_homeomorphisms(space, space)) == [(0, 1)]


def test_groupoid_isomorphism_with_fixture() -> None:
    """Summary: Verify the pair2_discrete fixture is isomorphic to the built pair groupoid.

    Importance: Fixture files and builders must describe the same groupoid.
    Alternatives: Compare arrow counts.
    """

    built = pair_groupoid(discrete_space(("1", "2")), "pair")
    loaded = load(FIXTURES / "pair2_discrete.json").subject
    iso = groupoid_isomorphism(loaded, built)
    assert iso is not None
    assert is_groupoid_isomorphism(loaded, built, iso.objects, iso.arrows)
    assert groupoid_isomorphism(load_entry("z2-groupoid").subject, built) is None


def test_order_automorphisms_of_three_atoms() -> None:
    """Summary: Verify P({a,b,c}) has the six atom permutations as automorphisms.

    Importance: The search canonicalises structures under every frame automorphism.
    Alternatives: Count automorphisms of two-atom frames only.
    """

    frame = FiniteLattice.powerset(("a", "b", "c"))
    automorphisms = list(order_automorphisms(frame))
    assert len(automorphisms) == 6
    assert automorphisms == sorted(automorphisms)
    assert tuple(range(frame.n)) in automorphisms


def test_quantale_graph_encodes_products_of_join_irreducibles() -> None:
    """Summary: Verify the quantale digraph has one product node per pair of join-irreducibles.

    Importance: Products and the involution preserve joins, so these nodes fix the structure.
    Alternatives: Encode every product.
    """

    quantale = two_point_quantale(False)
    graph = quantale_graph(quantale)
    generators = len(quantale.frame.join_irreducibles)
    assert isinstance(graph, nx.DiGraph)
    assert graph.number_of_nodes() == quantale.n + generators**2
    products = [node for node, label in graph.nodes(data="label") if label == "product"]
    assert len(products) == generators**2


def test_groupoid_isomorphism_of_reordered_union() -> None:
    """Summary: Verify Z/2 ⊔ point and point ⊔ Z/2 are isomorphic with a certified bijection.

    Importance: Round trips rebuild groupoids with their points in a different order.
    Alternatives: Compare arrow counts per object.
    """

    point = unit_groupoid(discrete_space(("p",)), "p")
    first = disjoint_union(z2_groupoid(), point)
    second = disjoint_union(point, z2_groupoid())
    iso = groupoid_isomorphism(first, second)
    assert iso is not None
    assert is_groupoid_isomorphism(first, second, iso.objects, iso.arrows)
    labels = [label for _, label in groupoid_graph(first).nodes(data="label")]
    assert labels.count("compose") == len(first.compose)


def test_compatible_cliques_match_subset_scan() -> None:
    """Summary: Verify networkx cliques of the compatibility graph equal a direct subset scan.

    Importance: The ACP check visits every compatible subset up to the cap.
    Alternatives: Enumerate maximal cliques only.
    """

    semigroup = load_entry("i2").subject
    graph = compatibility_graph(semigroup)
    assert set(graph.nodes) == set(range(semigroup.n))
    expected = sorted(
        subset
        for size in (1, 2, 3)
        for subset in itertools.combinations(range(semigroup.n), size)
        if all(semigroup.compatible[s, t] for s, t in itertools.combinations(subset, 2))
    )
    assert compatible_cliques(semigroup, 3) == expected
