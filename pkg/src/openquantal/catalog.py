"""Summary: Named instances used by tests, the CLI, and the HTTP catalog endpoints.

Importance: Every instance is rendered as a structure document, so catalog entries and
fixture files go through the same loader.
Alternatives: Ship only fixture files and build nothing in code.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any, Callable, Mapping, Sequence

from openquantal.errors import InputError
from openquantal.groupoid import (
    TopGroupoid,
    discrete_space,
    disjoint_union,
    full_subgroupoid,
    group_groupoid,
    pair_groupoid,
    quantale_of,
    sierpinski_space,
    unit_groupoid,
)
from openquantal.lattice import FiniteLattice, format_set
from openquantal.quantale import Quantale
from openquantal.structure_file import StructureFile, parse_document, to_document

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CatalogEntry:
    """Summary: A named structure document with the flags it is known to have.

    Importance: Expected flags turn every catalog check into a regression test.
    Alternatives: Keep expectations only in the test suite.
    """

    name: str
    kind: str
    description: str
    build: Callable[[], dict[str, Any]] = field(repr=False)
    expected: Mapping[str, bool] = field(default_factory=dict)

    def document(self) -> dict[str, Any]:
        document = self.build()
        document["title"] = self.name
        if self.expected:
            document["expected"] = dict(self.expected)
        return document


def _product_table(frame: FiniteLattice, product: Callable[[int, int], int]) -> list[list[int]]:
    return [[product(a, b) for b in range(frame.n)] for a in range(frame.n)]


def two_chain() -> Quantale:
    frame = FiniteLattice.chain(2)
    table = _product_table(frame, lambda a, b: frame.meet_rows[a][b])
    return Quantale.build(frame, table, [0, 1], "2")


def two_point_quantale(swap: bool) -> Quantale:
    """P({a, b}) with {a}² = {a}, {b}² = {b}, {a}{b} = {b}{a} = X."""

    frame = FiniteLattice.powerset(("a", "b"))
    a, b, top = frame.index("{a}"), frame.index("{b}"), frame.index("{a,b}")
    products = {(a, a): a, (b, b): b, (a, b): top, (b, a): top}
    involution = {a: b, b: a} if swap else {a: a, b: b}
    return Quantale.from_generators(frame, products, involution, "Q_B" if swap else "Q_A")


def group_quantale(names: Sequence[str], table: Sequence[Sequence[int]], title: str) -> Quantale:
    """The powerset of a finite group with pointwise products and x* = x⁻¹."""

    frame = FiniteLattice.powerset(names)
    singleton = [frame.index(format_set([name])) for name in names]
    identity = next(
        e for e in range(len(names)) if all(table[e][g] == g for g in range(len(names)))
    )
    products = {
        (singleton[g], singleton[h]): singleton[table[g][h]]
        for g in range(len(names))
        for h in range(len(names))
    }
    inverse = {
        singleton[g]: singleton[next(h for h in range(len(names)) if table[g][h] == identity)]
        for g in range(len(names))
    }
    return Quantale.from_generators(frame, products, inverse, title)


def cyclic_table(order: int) -> list[list[int]]:
    return [[(g + h) % order for h in range(order)] for g in range(order)]


def z2_names() -> tuple[str, str]:
    return ("e", "g")


def partial_injections(points: Sequence[str]) -> list[dict[str, str]]:
    """All partial injections of a finite set, smallest domains first."""

    maps: list[dict[str, str]] = [{}]
    for x in points:
        extended = []
        for partial in maps:
            extended.append(partial)
            for y in points:
                if y not in partial.values():
                    extended.append({**partial, x: y})
        maps = extended
    return sorted(maps, key=lambda partial: (len(partial), sorted(partial.items())))


def _injection_name(partial: Mapping[str, str]) -> str:
    if not partial:
        return "0"
    return "[" + ",".join(f"{x}{y}" for x, y in sorted(partial.items())) + "]"


def symmetric_inverse_document(points: Sequence[str]) -> dict[str, Any]:
    """Summary: The symmetric inverse monoid on a finite set, products as s then t.

    Importance: I₂ is the inverse semigroup behind the discrete pair groupoid.
    Alternatives: Write the 49 products of I₂ by hand.
    """

    maps = partial_injections(points)
    names = [_injection_name(partial) for partial in maps]
    lookup = {_injection_name(partial): partial for partial in maps}
    mult = []
    for s in maps:
        for t in maps:
            product = {x: t[y] for x, y in s.items() if y in t}
            mult.append([_injection_name(s), _injection_name(t), _injection_name(product)])
    inverse = {
        name: _injection_name({y: x for x, y in lookup[name].items()}) for name in names
    }
    return {"kind": "inverse_semigroup", "elements": names, "mult": mult, "inv": inverse}


def _z2_semigroup_document() -> dict[str, Any]:
    e, g = z2_names()
    return {
        "kind": "inverse_semigroup",
        "elements": [e, g],
        "mult": [[e, e, e], [e, g, g], [g, e, g], [g, g, e]],
        "inv": {e: e, g: g},
    }


def _left_zero_document() -> dict[str, Any]:
    return {
        "kind": "inverse_semigroup",
        "elements": ["x", "y"],
        "mult": [["x", "x", "x"], ["x", "y", "x"], ["y", "x", "y"], ["y", "y", "y"]],
        "inv": {"x": "x", "y": "y"},
    }


def _m3_document() -> dict[str, Any]:
    return {
        "kind": "frame",
        "elements": ["0", "a", "b", "c", "1"],
        "covers": [["0", "a"], ["0", "b"], ["0", "c"], ["a", "1"], ["b", "1"], ["c", "1"]],
    }


def _meet_semilattice_document() -> dict[str, Any]:
    return {
        "kind": "frame",
        "elements": ["0", "a", "b"],
        "covers": [["0", "a"], ["0", "b"]],
    }


def z2_groupoid() -> TopGroupoid:
    return group_groupoid(z2_names(), cyclic_table(2), "Z/2")


def equivalence_groupoid() -> TopGroupoid:
    """Three points with classes {1, 2} and {3}."""

    return disjoint_union(
        pair_groupoid(discrete_space(("1", "2")), "pair(1,2)"),
        unit_groupoid(discrete_space(("3",)), "3"),
        "equivalence(12|3)",
    )


def _ideal_document() -> dict[str, Any]:
    groupoid = equivalence_groupoid()
    invariant = 0b011
    subgroupoid = full_subgroupoid(groupoid, invariant)
    arrow_mask = 0
    for x in range(groupoid.arrows.n):
        if groupoid.arrows.points[x] in subgroupoid.arrows.points:
            arrow_mask |= 1 << x
    quantale = quantale_of(groupoid)
    document = to_document(quantale)
    document["ideal"] = [
        quantale.names[a]
        for a, member in enumerate(groupoid.arrows.opens)
        if member & ~arrow_mask == 0
    ]
    return document


def _action_documents() -> dict[str, Callable[[], dict[str, Any]]]:
    def i2_on_points() -> dict[str, Any]:
        points = ("1", "2")
        semigroup = symmetric_inverse_document(points)
        maps = {_injection_name(partial): partial for partial in partial_injections(points)}
        return {
            "kind": "action",
            "semigroup": {key: semigroup[key] for key in ("elements", "mult", "inv")},
            "space": {"points": list(points), "discrete": True},
            "action": {name: dict(partial) for name, partial in maps.items()},
        }

    def chain_on_sierpinski() -> dict[str, Any]:
        chain = ["z", "u", "1"]
        return {
            "kind": "action",
            "semigroup": {
                "elements": list(chain),
                "mult": [
                    [s, t, chain[min(chain.index(s), chain.index(t))]]
                    for s in chain
                    for t in chain
                ],
                "inv": {s: s for s in chain},
            },
            "space": {"points": ["0", "1"], "opens": [[], ["1"], ["0", "1"]]},
            "action": {"z": {}, "u": {"1": "1"}, "1": {"0": "0", "1": "1"}},
        }

    def trivial_on_sierpinski() -> dict[str, Any]:
        return {
            "kind": "action",
            "semigroup": {"elements": ["e"], "mult": [["e", "e", "e"]], "inv": {"e": "e"}},
            "space": {"points": ["0", "1"], "opens": [[], ["1"], ["0", "1"]]},
            "action": {"e": {"0": "0", "1": "1"}},
        }

    return {
        "i2-on-two-points": i2_on_points,
        "chain-on-sierpinski": chain_on_sierpinski,
        "trivial-on-sierpinski": trivial_on_sierpinski,
    }


def _entries() -> list[CatalogEntry]:
    actions = _action_documents()
    return [
        CatalogEntry(
            "two-chain",
            "quantale",
            "2-chain with meet as multiplication",
            lambda: to_document(two_chain()),
            {"B": True, "O": True, "R": True, "U": True, "inverse": True},
        ),
        CatalogEntry(
            "q-a",
            "quantale",
            "P({a,b}) with trivial involution: (B), (O), (U) without (R)",
            lambda: to_document(two_point_quantale(swap=False)),
            {"B": True, "O": True, "R": False, "U": True},
        ),
        CatalogEntry(
            "q-b",
            "quantale",
            "P({a,b}) with swap involution: (B), (O), (R) without (U)",
            lambda: to_document(two_point_quantale(swap=True)),
            {"B": True, "O": True, "R": True, "U": False},
        ),
        CatalogEntry(
            "z2-quantale",
            "quantale",
            "group quantale of Z/2",
            lambda: to_document(group_quantale(z2_names(), cyclic_table(2), "P(Z/2)")),
            {"inverse": True, "multiplicative": True, "enough_bisections": True},
        ),
        CatalogEntry(
            "z3-quantale",
            "quantale",
            "group quantale of Z/3",
            lambda: to_document(group_quantale(("0", "1", "2"), cyclic_table(3), "P(Z/3)")),
            {"inverse": True, "multiplicative": True},
        ),
        CatalogEntry("m3", "frame", "diamond M3, a lattice that is not a frame", _m3_document),
        CatalogEntry(
            "meet-semilattice",
            "frame",
            "meet semilattice without joins, rejected by the loader",
            _meet_semilattice_document,
        ),
        CatalogEntry(
            "i2",
            "inverse_semigroup",
            "symmetric inverse monoid on two points",
            lambda: symmetric_inverse_document(("1", "2")),
            {"acp": True},
        ),
        CatalogEntry(
            "z2-semigroup",
            "inverse_semigroup",
            "Z/2 as an inverse semigroup",
            _z2_semigroup_document,
            {"acp": True},
        ),
        CatalogEntry(
            "left-zero",
            "inverse_semigroup",
            "two-element left-zero semigroup, rejected by the loader",
            _left_zero_document,
        ),
        CatalogEntry(
            "pair-discrete",
            "groupoid",
            "pair groupoid on two discrete points",
            lambda: to_document(pair_groupoid(discrete_space(("1", "2")), "pair(1,2)")),
            {"d_open": True, "etale": True, "inverse": True, "enough_bisections": True},
        ),
        CatalogEntry(
            "sierpinski-pair",
            "groupoid",
            "pair groupoid on the Sierpiński space: open, not étale",
            lambda: to_document(pair_groupoid(sierpinski_space(), "pair(S)")),
            {
                "d_open": True,
                "etale": False,
                "B": True,
                "O": True,
                "R": True,
                "U": True,
                "unital": False,
                "multiplicative": True,
                "weakly_multiplicative": True,
                "enough_bisections": False,
            },
        ),
        CatalogEntry(
            "z2-groupoid",
            "groupoid",
            "Z/2 as a one-object groupoid",
            lambda: to_document(z2_groupoid()),
            {"etale": True, "inverse": True},
        ),
        CatalogEntry(
            "z3-groupoid",
            "groupoid",
            "Z/3 as a one-object groupoid",
            lambda: to_document(group_groupoid(("0", "1", "2"), cyclic_table(3), "Z/3")),
            {"etale": True, "inverse": True},
        ),
        CatalogEntry(
            "z2-plus-point",
            "groupoid",
            "disjoint union of Z/2 and a point",
            lambda: to_document(
                disjoint_union(z2_groupoid(), unit_groupoid(discrete_space(("p",)), "p"))
            ),
            {"etale": True, "inverse": True},
        ),
        CatalogEntry(
            "equivalence-3",
            "groupoid",
            "equivalence relation on three points with classes {1,2} and {3}",
            lambda: to_document(equivalence_groupoid()),
            {"etale": True, "inverse": True},
        ),
        CatalogEntry(
            "equivalence-3-ideal",
            "quantale",
            "O of the equivalence groupoid with the ideal of the invariant open {1,2}",
            _ideal_document,
            {"inverse": True},
        ),
        CatalogEntry(
            "i2-on-two-points",
            "action",
            "I₂ acting on two discrete points",
            actions["i2-on-two-points"],
            {"natural": True},
        ),
        CatalogEntry(
            "chain-on-sierpinski",
            "action",
            "3-chain of idempotents with zero acting on the Sierpiński space by restriction",
            actions["chain-on-sierpinski"],
            {"natural": True},
        ),
        CatalogEntry(
            "trivial-on-sierpinski",
            "action",
            "trivial group acting on the Sierpiński space",
            actions["trivial-on-sierpinski"],
            {"natural": False},
        ),
    ]


CATALOG: dict[str, CatalogEntry] = {entry.name: entry for entry in _entries()}


def catalog_names() -> list[str]:
    return sorted(CATALOG)


def get_entry(name: str) -> CatalogEntry:
    try:
        return CATALOG[name]
    except KeyError as exc:
        raise InputError(f"unknown catalog instance {name!r}", location="catalog") from exc


def load_entry(name: str) -> StructureFile:
    """Validate a catalog instance through the structure-file loader."""

    entry = get_entry(name)
    logger.debug("Building catalog instance %s", name)
    return parse_document(entry.document(), f"catalog:{name}")
