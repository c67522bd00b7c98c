"""Summary: Finite T0 spaces and groupoids, O(G), points, G(Q), round trips, and germs.

Importance: This is the spatial side of the correspondence; every quantale built from a
groupoid, and every groupoid read back from a quantale, passes through here.
Alternatives: Treat groupoids only through their quantales and never materialize points.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterable, Mapping, Sequence

from openquantal.errors import (
    ActionError,
    GroupoidError,
    InconsistencyError,
    PreconditionError,
    TopologyError,
)
from openquantal.iso import GroupoidIsomorphism, groupoid_isomorphism, quantale_isomorphism
from openquantal.lattice import FiniteLattice, format_set, is_frame_hom, validate_frame
from openquantal.models import Finding, Verdict
from openquantal.quantale import Quantale
from openquantal.semigroup import InverseSemigroup, acp_check, lcc_completion
from openquantal.tensor import TensorLattice, is_multiplicative, mu0_star, pushout_oracle

logger = logging.getLogger(__name__)


def _bits(mask: int) -> list[int]:
    return [position for position in range(mask.bit_length()) if mask >> position & 1]


def _mask(members: Iterable[int]) -> int:
    result = 0
    for member in members:
        result |= 1 << member
    return result


def saturate(size: int, subbasis: Iterable[int]) -> list[int]:
    """Summary: The topology generated by a family of subsets of a finite set.

    Importance: Lets structure files list a subbasis instead of every open set.
    Alternatives: Require every open set to be listed.
    """

    full = (1 << size) - 1
    basis = {full}
    for member in subbasis:
        basis.add(member & full)
    changed = True
    while changed:
        changed = False
        for first, second in itertools.combinations(list(basis), 2):
            if first & second not in basis:
                basis.add(first & second)
                changed = True
    opens = {0}
    for member in sorted(basis):
        opens |= {existing | member for existing in opens}
    return sorted(opens, key=lambda mask: (bin(mask).count("1"), mask))


@dataclass(frozen=True, eq=False)
class FiniteSpace:
    """Summary: A finite T0 space as point names plus the family of open bitmasks.

    Importance: Minimal neighbourhoods determine everything about a finite space, so
    continuity and openness reduce to checks on them.
    Alternatives: Store the specialization preorder only.
    """

    points: tuple[str, ...]
    opens: tuple[int, ...]
    title: str = ""

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    @cached_property
    def open_set(self) -> frozenset[int]:
        return frozenset(self.opens)

    def is_open(self, mask: int) -> bool:
        return mask in self.open_set

    @cached_property
    def neighbourhoods(self) -> tuple[int, ...]:
        """Minimal open set containing each point."""

        result = []
        for x in range(self.n):
            mask = self.full
            for member in self.opens:
                if member >> x & 1:
                    mask &= member
            result.append(mask)
        return tuple(result)

    def neighbourhood_members(self, x: int) -> frozenset[int]:
        return frozenset(_bits(self.neighbourhoods[x]))

    @cached_property
    def _index(self) -> dict[str, int]:
        return {name: position for position, name in enumerate(self.points)}

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError as exc:
            raise TopologyError(f"unknown point {name!r}", witness=(name,)) from exc

    def name_of(self, mask: int) -> str:
        return format_set(self.points[x] for x in _bits(mask))

    def map_open(self, mask: int, table: Sequence[int]) -> int:
        """Image of a subset under a point map."""

        return _mask(table[x] for x in _bits(mask))

    def preimage(self, mask: int, table: Sequence[int]) -> int:
        return _mask(x for x in range(self.n) if mask >> table[x] & 1)

    @cached_property
    def frame(self) -> FiniteLattice:
        names = [self.name_of(member) for member in self.opens]
        return FiniteLattice.from_family(names, self.opens)

    @cached_property
    def open_index(self) -> dict[int, int]:
        return {member: offset for offset, member in enumerate(self.opens)}

    def subspace(self, mask: int, title: str = "") -> tuple["FiniteSpace", tuple[int, ...]]:
        """Subspace on the points of a mask, with the embedding into this space."""

        chosen = _bits(mask)
        opens = {
            _mask(offset for offset, x in enumerate(chosen) if member >> x & 1)
            for member in self.opens
        }
        space = FiniteSpace(
            tuple(self.points[x] for x in chosen),
            tuple(sorted(opens, key=lambda value: (bin(value).count("1"), value))),
            title,
        )
        return space, tuple(chosen)


def validate_space(
    points: Sequence[str],
    opens: Iterable[int],
    title: str = "",
    *,
    subbasis: bool = False,
) -> FiniteSpace:
    """Summary: Check that a family is a T0 topology and return the space.

    Importance: Only T0 spaces are admitted, where finite spaces are sober.
    Alternatives: Silently take the generated topology of any family.
    """

    names = tuple(points)
    if len(set(names)) != len(names):
        raise TopologyError("duplicate point names", location="points")
    full = (1 << len(names)) - 1
    family = list(opens)
    if any(member & ~full for member in family):
        raise TopologyError("open set refers to unknown points", location="opens")
    if subbasis:
        family = saturate(len(names), family)
    members = set(family)
    if 0 not in members or full not in members:
        raise TopologyError("topology must contain ∅ and the whole space", location="opens")
    ordered = sorted(members, key=lambda mask: (bin(mask).count("1"), mask))
    space = FiniteSpace(names, tuple(ordered), title)
    for first, second in itertools.combinations(ordered, 2):
        if first | second not in members or first & second not in members:
            raise TopologyError(
                "open sets not closed under union and intersection",
                location="opens",
                witness=(space.name_of(first), space.name_of(second)),
            )
    seen: dict[int, int] = {}
    for x, neighbourhood in enumerate(space.neighbourhoods):
        if neighbourhood in seen:
            raise TopologyError(
                "space is not T0", location="opens", witness=(names[seen[neighbourhood]], names[x])
            )
        seen[neighbourhood] = x
    return space


def discrete_space(points: Sequence[str], title: str = "") -> FiniteSpace:
    return validate_space(points, [1 << x for x in range(len(points))], title, subbasis=True)


def sierpinski_space() -> FiniteSpace:
    """Points 0 and 1 with {1} open."""

    return validate_space(("0", "1"), (0, 0b10, 0b11), "Sierpiński")


def product_space(
    first: FiniteSpace,
    second: FiniteSpace,
    name: Callable[[str, str], str] = lambda a, b: a + b,
    title: str = "",
) -> FiniteSpace:
    """Product topology with points ordered first-coordinate major."""

    points = [name(a, b) for a in first.points for b in second.points]
    rectangles = [
        _mask(x * second.n + y for x in _bits(u) for y in _bits(v))
        for u in first.opens
        for v in second.opens
    ]
    return validate_space(points, rectangles, title, subbasis=True)


def is_continuous(source: FiniteSpace, target: FiniteSpace, table: Sequence[int]) -> Verdict:
    """Summary: Check f(N(x)) ⊆ N(f(x)) for every point.

    Importance: Equivalent to continuity on finite spaces and gives a point witness.
    Alternatives: Check that preimages of all opens are open.
    """

    for x in range(source.n):
        image = source.map_open(source.neighbourhoods[x], table)
        if image & ~target.neighbourhoods[table[x]]:
            return Verdict.fail(source.points[x], detail="not continuous at point")
    return Verdict.ok()


def is_open_map(source: FiniteSpace, target: FiniteSpace, table: Sequence[int]) -> Verdict:
    for member in source.opens:
        image = source.map_open(member, table)
        if not target.is_open(image):
            return Verdict.fail(source.name_of(member), detail=f"image {target.name_of(image)}")
    return Verdict.ok()


@dataclass(frozen=True, eq=False)
class TopGroupoid:
    """Summary: A finite topological groupoid with d, r, i, u, and partial composition.

    Importance: m(x, y) is defined exactly when r(x) = d(y), so d∘m = d∘π₁ and
    r∘m = r∘π₂.
    Alternatives: Store composition as a full table with a sentinel for undefined pairs.
    """

    objects: FiniteSpace
    arrows: FiniteSpace
    dom: tuple[int, ...]
    cod: tuple[int, ...]
    inverse: tuple[int, ...]
    unit: tuple[int, ...]
    compose: Mapping[tuple[int, int], int] = field(repr=False)
    title: str = ""

    @cached_property
    def composable(self) -> tuple[tuple[int, int], ...]:
        return tuple(
            (x, y)
            for x in range(self.arrows.n)
            for y in range(self.arrows.n)
            if self.cod[x] == self.dom[y]
        )

    @cached_property
    def classification(self) -> "GroupoidClassification":
        return classify_groupoid(self)

    def arrow_name(self, x: int) -> str:
        return self.arrows.points[x]

    def object_name(self, p: int) -> str:
        return self.objects.points[p]


def validate_groupoid(
    objects: FiniteSpace,
    arrows: FiniteSpace,
    dom: Sequence[int],
    cod: Sequence[int],
    inverse: Sequence[int],
    unit: Sequence[int],
    compose: Mapping[tuple[int, int], int],
    title: str = "",
) -> TopGroupoid:
    """Summary: Check the groupoid laws pointwise and continuity of all structure maps.

    Importance: Every groupoid, whether loaded or constructed, is certified here.
    Alternatives: Trust constructed groupoids and validate only loaded ones.
    """

    names = arrows.points
    size = arrows.n
    if len(dom) != size or len(cod) != size or len(inverse) != size:
        raise GroupoidError("d, r, and i must be defined on every arrow", location="arrows")
    if len(unit) != objects.n:
        raise GroupoidError("u must be defined on every object", location="units")
    if any(not 0 <= p < objects.n for p in (*dom, *cod)):
        raise GroupoidError("d or r refers to an unknown object", location="arrows")
    if any(not 0 <= x < size for x in (*inverse, *unit, *compose.values())):
        raise GroupoidError("structure map refers to an unknown arrow")
    groupoid = TopGroupoid(
        objects, arrows, tuple(dom), tuple(cod), tuple(inverse), tuple(unit), dict(compose), title
    )
    pairs = set(groupoid.composable)
    for pair in compose:
        if pair not in pairs:
            raise GroupoidError(
                "composition defined on a non-composable pair",
                location="compose",
                witness=(names[pair[0]], names[pair[1]]),
            )
    for pair in groupoid.composable:
        if pair not in compose:
            raise GroupoidError(
                "composition undefined on a composable pair",
                location="compose",
                witness=(names[pair[0]], names[pair[1]]),
            )
    for p, e in enumerate(unit):
        if dom[e] != p or cod[e] != p:
            raise GroupoidError(
                "d(u(p)) = r(u(p)) = p fails", location="units", witness=(objects.points[p],)
            )
    for (x, y), z in compose.items():
        if dom[z] != dom[x] or cod[z] != cod[y]:
            raise GroupoidError(
                "d(m(x,y)) = d(x) and r(m(x,y)) = r(y) fail",
                location="compose",
                witness=(names[x], names[y]),
            )
    for x in range(size):
        if compose[(unit[dom[x]], x)] != x or compose[(x, unit[cod[x]])] != x:
            raise GroupoidError("unit law fails", location="units", witness=(names[x],))
    for (x, y), xy in compose.items():
        for z in range(size):
            if cod[y] == dom[z] and compose[(xy, z)] != compose[(x, compose[(y, z)])]:
                raise GroupoidError(
                    "composition not associative",
                    location="compose",
                    witness=(names[x], names[y], names[z]),
                )
    for x in range(size):
        ix = inverse[x]
        if inverse[ix] != x or dom[ix] != cod[x]:
            raise GroupoidError("inverse laws fail", location="inverse", witness=(names[x],))
        if compose[(x, ix)] != unit[dom[x]] or compose[(ix, x)] != unit[cod[x]]:
            raise GroupoidError(
                "x·x⁻¹ = u(d(x)) fails", location="inverse", witness=(names[x],)
            )
    for label, source, target, table in (
        ("d", arrows, objects, dom),
        ("r", arrows, objects, cod),
        ("i", arrows, arrows, inverse),
        ("u", objects, arrows, unit),
    ):
        verdict = is_continuous(source, target, table)
        if not verdict:
            raise TopologyError(f"{label} is not continuous", witness=verdict.witness)
    verdict = _composition_continuous(groupoid)
    if not verdict:
        raise TopologyError("m is not continuous", witness=verdict.witness)
    logger.debug("Validated groupoid %s: %d objects, %d arrows", title, objects.n, size)
    return groupoid


def _pair_neighbourhood(groupoid: TopGroupoid, x: int, y: int) -> list[tuple[int, int]]:
    first = groupoid.arrows.neighbourhoods[x]
    second = groupoid.arrows.neighbourhoods[y]
    return [
        (a, b)
        for a in _bits(first)
        for b in _bits(second)
        if groupoid.cod[a] == groupoid.dom[b]
    ]


def _composition_continuous(groupoid: TopGroupoid) -> Verdict:
    for x, y in groupoid.composable:
        target = groupoid.arrows.neighbourhoods[groupoid.compose[(x, y)]]
        for a, b in _pair_neighbourhood(groupoid, x, y):
            if not target >> groupoid.compose[(a, b)] & 1:
                return Verdict.fail(groupoid.arrow_name(x), groupoid.arrow_name(y))
    return Verdict.ok()


@dataclass(frozen=True)
class GroupoidClassification:
    """Summary: Openness and étaleness of a finite topological groupoid with witnesses.

    Importance: Open groupoids are exactly those whose quantales satisfy all four axioms.
    Alternatives: Report a single étale flag.
    """

    open: Verdict
    etale: Verdict
    m_open: Verdict
    u_open: Verdict

    def flags(self) -> dict[str, bool]:
        return {
            "d_open": bool(self.open),
            "etale": bool(self.etale),
            "m_open": bool(self.m_open),
            "u_open": bool(self.u_open),
        }

    def findings(self) -> list[Finding]:
        section = "groupoid"
        return [
            Finding.from_verdict(section, "d open", self.open),
            Finding.from_verdict(section, "étale", self.etale),
            Finding.from_verdict(section, "m open", self.m_open),
            Finding.from_verdict(section, "u open", self.u_open),
            Finding.from_verdict(
                section,
                "étale ⇒ open",
                Verdict.ok() if self.open or not self.etale else Verdict.fail(),
                theorem=True,
            ),
        ]


def classify_groupoid(groupoid: TopGroupoid) -> GroupoidClassification:
    """Summary: Decide whether d is open, a local homeomorphism, and whether m and u are open.

    Importance: d is étale iff it is a local homeomorphism on each minimal neighbourhood,
    since those are the smallest candidate opens around each arrow.
    Alternatives: Search all open covers of the arrow space.
    """

    objects, arrows = groupoid.objects, groupoid.arrows
    opened = is_open_map(arrows, objects, groupoid.dom)
    etale = Verdict.ok()
    for x in range(arrows.n):
        neighbourhood = arrows.neighbourhoods[x]
        members = _bits(neighbourhood)
        images = [groupoid.dom[y] for y in members]
        if len(set(images)) != len(images):
            etale = Verdict.fail(arrows.points[x], detail="d not injective on N(x)")
            break
        inside = [member for member in arrows.opens if member & ~neighbourhood == 0]
        if not all(objects.is_open(arrows.map_open(member, groupoid.dom)) for member in inside):
            etale = Verdict.fail(arrows.points[x], detail="d not open on N(x)")
            break
    m_open = Verdict.ok()
    for x, y in groupoid.composable:
        image = _mask(groupoid.compose[pair] for pair in _pair_neighbourhood(groupoid, x, y))
        if not arrows.is_open(image):
            m_open = Verdict.fail(
                arrows.points[x], arrows.points[y], detail="m(N(x)×N(y)) not open"
            )
            break
    u_open = is_open_map(objects, arrows, groupoid.unit)
    logger.info(
        "Classified groupoid %s: open=%s etale=%s",
        groupoid.title or "G",
        opened.holds,
        etale.holds,
    )
    return GroupoidClassification(opened, etale, m_open, u_open)


def quantale_of(groupoid: TopGroupoid) -> Quantale:
    """Summary: O(G): the topology of G1 with pointwise products and U* = i(U).

    Importance: Each open groupoid yields a multiplicative open quantal frame.
    Alternatives: Build the quantale from a basis and extend by joins.
    """

    if not groupoid.classification.open:
        raise PreconditionError("O(G) requires an open groupoid")
    arrows = groupoid.arrows
    opens = arrows.opens
    position = arrows.open_index
    follow: list[list[tuple[int, int]]] = [[] for _ in range(arrows.n)]
    for x, y in groupoid.composable:
        follow[x].append((y, groupoid.compose[(x, y)]))
    table = []
    for u in opens:
        row = []
        for v in opens:
            product = 0
            for x in _bits(u):
                for y, xy in follow[x]:
                    if v >> y & 1:
                        product |= 1 << xy
            if product not in position:
                raise GroupoidError(
                    "groupoid multiplication not open",
                    witness=(arrows.name_of(u), arrows.name_of(v)),
                )
            row.append(position[product])
        table.append(row)
    involution = [position[arrows.map_open(u, groupoid.inverse)] for u in opens]
    return Quantale.build(arrows.frame, table, involution, f"O({groupoid.title or 'G'})")


def quantale_of_checks(groupoid: TopGroupoid) -> list[Finding]:
    """Summary: Theorem checks relating a groupoid to its quantale.

    Importance: O(G) of an open G must satisfy (B), (O), (R), (U) and be multiplicative;
    unitality matches openness of u; étale G gives an inverse quantal frame.
    Alternatives: Only classify O(G) and leave the comparison to the reader.
    """

    section = "O(G)"
    flags = groupoid.classification
    if not flags.open:
        return [Finding.skipped(section, "O(G) axioms", "groupoid not open")]
    quantale = quantale_of(groupoid)
    axioms = quantale.classification
    findings = [
        Finding.from_verdict(section, f"O(G) satisfies ({name})", verdict, theorem=True)
        for name, verdict in (
            ("B", axioms.balanced),
            ("O", axioms.open_law),
            ("R", axioms.rs_law),
            ("U", axioms.u_law),
        )
    ]
    findings.append(
        Finding.from_verdict(
            section,
            "O(G) multiplicative",
            is_multiplicative(TensorLattice.over(quantale)),
            theorem=True,
        )
    )
    agree = bool(flags.u_open) == axioms.unital
    findings.append(
        Finding.from_verdict(
            section,
            "u open ⇔ O(G) unital",
            Verdict.ok() if agree else Verdict.fail(detail=f"unital={axioms.unital}"),
            theorem=True,
        )
    )
    if flags.etale:
        findings.append(
            Finding.from_verdict(
                section,
                "étale ⇒ O(G) inverse",
                Verdict.ok() if axioms.inverse else Verdict.fail(),
                theorem=True,
            )
        )
    return findings


@dataclass(frozen=True, eq=False)
class PointSpace:
    """Summary: Completely prime filters of a finite frame as a space.

    Importance: In a finite frame each completely prime filter is ↑p for a join-irreducible
    p, so points are indexed by join-irreducibles.
    Alternatives: Enumerate all frame maps into the 2-chain.
    """

    lattice: FiniteLattice
    generators: tuple[int, ...]
    space: FiniteSpace
    extents: tuple[int, ...]
    spatial: Verdict

    @cached_property
    def position(self) -> dict[int, int]:
        return {p: offset for offset, p in enumerate(self.generators)}

    def point_from_filter(self, members: set[int], what: str) -> int:
        """Index of the point whose filter is `members`, or InconsistencyError."""

        least = self.lattice.meet_all(members)
        if least not in self.position or set(self.lattice.up(least)) != members:
            raise InconsistencyError(f"{what} is not a completely prime filter")
        return self.position[least]


def points(subject: FiniteLattice | Quantale, title: str = "") -> PointSpace:
    """Summary: The spectrum of a finite frame with ext(a) = {points containing a}.

    Importance: Recovers spaces from topologies and groupoids from quantales.
    Alternatives: Compute prime filters by brute force over all subsets.
    """

    lattice = subject.frame if isinstance(subject, Quantale) else subject
    validate_frame(lattice).require()
    generators = tuple(lattice.join_irreducibles)
    extents = tuple(
        _mask(offset for offset, p in enumerate(generators) if lattice.le(p, a))
        for a in range(lattice.n)
    )
    spatial = Verdict.ok()
    seen: dict[int, int] = {}
    for a, extent in enumerate(extents):
        if extent in seen:
            spatial = Verdict.fail(lattice.names[seen[extent]], lattice.names[a])
            break
        seen[extent] = a
    space = validate_space([lattice.names[p] for p in generators], set(extents), title)
    return PointSpace(lattice, generators, space, extents, spatial)


def groupoid_of(quantale: Quantale, tensor_cap: int | None = None) -> TopGroupoid:
    """Summary: G(Q) with G1 = points(Q) and G0 = points(R(Q)).

    Importance: d, r, i, u come from the frame maps z ↦ z, z ↦ z*, a ↦ a*, υ; composition
    m(p, q) is the point whose filter is {a : (p, q) ∈ μ₀*(a)}.
    Alternatives: Read a groupoid off the partial units, which needs an inverse quantal frame.
    """

    flags = quantale.classification
    if not flags.semiopen:
        raise PreconditionError("G(Q) requires a semiopen quantal frame")
    verdict = is_frame_hom(quantale.upsilon_map)
    if not verdict:
        raise PreconditionError(f"G(Q) requires υ to be a frame homomorphism ({verdict.detail})")
    tensor = TensorLattice.over(quantale)
    if not is_multiplicative(tensor):
        raise PreconditionError("G(Q) requires a multiplicative quantal frame")
    if tensor_cap is not None and quantale.n <= tensor_cap:
        if not pushout_oracle(tensor, tensor_cap).verdict:
            raise PreconditionError("not spatial at finite scale")
    title = quantale.title or "Q"
    arrow_points = points(quantale.frame, f"G({title})₁")
    object_points = points(quantale.rs_lattice, f"G({title})₀")
    if not arrow_points.spatial or not object_points.spatial:
        raise PreconditionError("not spatial at finite scale")
    frame = quantale.frame
    incl = quantale.rs_inclusion
    rs_range = range(quantale.rs_lattice.n)

    dom, cod, inverse = [], [], []
    for p in arrow_points.generators:
        dom.append(
            object_points.point_from_filter(
                {z for z in rs_range if frame.le(p, incl(z))}, f"d({frame.names[p]})"
            )
        )
        cod.append(
            object_points.point_from_filter(
                {z for z in rs_range if frame.le(p, quantale.star(incl(z)))},
                f"r({frame.names[p]})",
            )
        )
        inverse.append(arrow_points.position[quantale.star(p)])
    unit = [
        arrow_points.point_from_filter(
            {a for a in range(quantale.n) if frame.le(incl(g), quantale.upsilon_table[a])},
            f"u({quantale.rs_lattice.names[g]})",
        )
        for g in object_points.generators
    ]
    compose = {}
    generators = arrow_points.generators
    for x, p in enumerate(generators):
        for y, q in enumerate(generators):
            if cod[x] != dom[y]:
                continue
            compose[(x, y)] = arrow_points.point_from_filter(
                {a for a in range(quantale.n) if mu0_star(tensor, a).contains(p, q)},
                f"m({frame.names[p]}, {frame.names[q]})",
            )
    try:
        groupoid = validate_groupoid(
            object_points.space,
            arrow_points.space,
            dom,
            cod,
            inverse,
            unit,
            compose,
            f"G({title})",
        )
    except (GroupoidError, TopologyError) as exc:
        raise InconsistencyError(f"G({title}) is not a topological groupoid: {exc}") from exc
    logger.info(
        "Built G(%s) with %d objects and %d arrows", title, object_points.space.n, len(generators)
    )
    return groupoid


@dataclass(frozen=True)
class RoundtripResult:
    """Summary: Findings of a round trip plus the isomorphism that certifies it."""

    findings: list[Finding]
    groupoid_iso: GroupoidIsomorphism | None = None
    quantale_iso: tuple[int, ...] | None = None


def roundtrip_check(
    subject: TopGroupoid | Quantale, tensor_cap: int | None = None
) -> RoundtripResult:
    """Summary: Build G(O(G)) or O(G(Q)) and search for an isomorphism back.

    Importance: The round trip is verified per instance; a missing isomorphism is a red flag.
    Alternatives: Compare element counts only.
    """

    section = "roundtrip"
    if isinstance(subject, TopGroupoid):
        name = "G(O(G)) ≅ G"
        try:
            rebuilt = groupoid_of(quantale_of(subject), tensor_cap)
        except PreconditionError as exc:
            return RoundtripResult([Finding.skipped(section, name, str(exc))])
        iso = groupoid_isomorphism(rebuilt, subject)
        verdict = Verdict.ok() if iso is not None else Verdict.fail(detail="no isomorphism")
        return RoundtripResult(
            [Finding.from_verdict(section, name, verdict, theorem=True)], groupoid_iso=iso
        )
    name = "O(G(Q)) ≅ Q"
    try:
        rebuilt_quantale = quantale_of(groupoid_of(subject, tensor_cap))
    except PreconditionError as exc:
        return RoundtripResult([Finding.skipped(section, name, str(exc))])
    table = quantale_isomorphism(rebuilt_quantale, subject)
    verdict = Verdict.ok() if table is not None else Verdict.fail(detail="no isomorphism")
    return RoundtripResult(
        [Finding.from_verdict(section, name, verdict, theorem=True)], quantale_iso=table
    )


def pair_groupoid(space: FiniteSpace, title: str = "") -> TopGroupoid:
    """Pair groupoid X×X with the product topology; arrow "xy" goes from x to y."""

    arrows = product_space(space, space)
    size = space.n

    def arrow(x: int, y: int) -> int:
        return x * size + y

    compose = {
        (arrow(x, y), arrow(y, z)): arrow(x, z)
        for x in range(size)
        for y in range(size)
        for z in range(size)
    }
    return validate_groupoid(
        space,
        arrows,
        [x for x in range(size) for _ in range(size)],
        [y for _ in range(size) for y in range(size)],
        [arrow(y, x) for x in range(size) for y in range(size)],
        [arrow(x, x) for x in range(size)],
        compose,
        title or f"pair({space.title or 'X'})",
    )


def group_groupoid(
    names: Sequence[str], table: Sequence[Sequence[int]], title: str = "", obj: str = "*"
) -> TopGroupoid:
    """One-object discrete groupoid of a finite group given by its table."""

    size = len(names)
    identity = next(
        e for e in range(size) if all(table[e][g] == g and table[g][e] == g for g in range(size))
    )
    inverse = [next(h for h in range(size) if table[g][h] == identity) for g in range(size)]
    compose = {(g, h): table[g][h] for g in range(size) for h in range(size)}
    return validate_groupoid(
        discrete_space([obj]),
        discrete_space(names),
        [0] * size,
        [0] * size,
        inverse,
        [identity],
        compose,
        title,
    )


def unit_groupoid(space: FiniteSpace, title: str = "") -> TopGroupoid:
    """The space itself with identity arrows only."""

    ids = list(range(space.n))
    compose = {(x, x): x for x in ids}
    return validate_groupoid(space, space, ids, ids, ids, ids, compose, title or space.title)


def disjoint_union(first: TopGroupoid, second: TopGroupoid, title: str = "") -> TopGroupoid:
    """Disjoint union with second-factor points and arrows shifted after the first."""

    def join_spaces(a: FiniteSpace, b: FiniteSpace) -> FiniteSpace:
        opens = [u | v << a.n for u in a.opens for v in b.opens]
        return validate_space((*a.points, *b.points), set(opens), subbasis=False)

    objects = join_spaces(first.objects, second.objects)
    arrows = join_spaces(first.arrows, second.arrows)
    shift_o, shift_a = first.objects.n, first.arrows.n
    compose = dict(first.compose)
    for (x, y), z in second.compose.items():
        compose[(x + shift_a, y + shift_a)] = z + shift_a
    return validate_groupoid(
        objects,
        arrows,
        [*first.dom, *(p + shift_o for p in second.dom)],
        [*first.cod, *(p + shift_o for p in second.cod)],
        [*first.inverse, *(x + shift_a for x in second.inverse)],
        [*first.unit, *(x + shift_a for x in second.unit)],
        compose,
        title or f"{first.title} ⊔ {second.title}",
    )


def full_subgroupoid(groupoid: TopGroupoid, objects_mask: int, title: str = "") -> TopGroupoid:
    """Arrows with both ends in a set of objects, with subspace topologies."""

    objects, object_embed = groupoid.objects.subspace(objects_mask)
    arrow_mask = _mask(
        x
        for x in range(groupoid.arrows.n)
        if objects_mask >> groupoid.dom[x] & 1 and objects_mask >> groupoid.cod[x] & 1
    )
    arrows, arrow_embed = groupoid.arrows.subspace(arrow_mask)
    object_position = {p: offset for offset, p in enumerate(object_embed)}
    arrow_position = {x: offset for offset, x in enumerate(arrow_embed)}
    compose = {
        (arrow_position[x], arrow_position[y]): arrow_position[z]
        for (x, y), z in groupoid.compose.items()
        if x in arrow_position and y in arrow_position
    }
    return validate_groupoid(
        validate_space(objects.points, objects.opens),
        validate_space(arrows.points, arrows.opens),
        [object_position[groupoid.dom[x]] for x in arrow_embed],
        [object_position[groupoid.cod[x]] for x in arrow_embed],
        [arrow_position[groupoid.inverse[x]] for x in arrow_embed],
        [arrow_position[groupoid.unit[p]] for p in object_embed],
        compose,
        title or f"{groupoid.title}|{objects.name_of(objects.full)}",
    )


@dataclass(frozen=True, eq=False)
class SemigroupAction:
    """Summary: An inverse semigroup acting on a finite space by partial maps.

    Importance: images[s][x] is the image of x under s, or None off the domain of s; the
    product s·t acts as s first, then t.
    Alternatives: Represent each element by its graph as a set of point pairs.
    """

    semigroup: InverseSemigroup
    space: FiniteSpace
    images: tuple[tuple[int | None, ...], ...]
    title: str = ""

    def apply(self, s: int, x: int) -> int | None:
        return self.images[s][x]

    @cached_property
    def domains(self) -> tuple[int, ...]:
        return tuple(
            _mask(x for x, image in enumerate(row) if image is not None) for row in self.images
        )


def validate_action(
    semigroup: InverseSemigroup,
    space: FiniteSpace,
    images: Sequence[Sequence[int | None]],
    title: str = "",
) -> SemigroupAction:
    """Summary: Check that each element acts as a partial homeomorphism between opens.

    Importance: Only such actions have a groupoid of germs that is a topological groupoid.
    Alternatives: Accept any partial maps and let the germ construction fail later.
    """

    names = semigroup.names
    if len(images) != semigroup.n or any(len(row) != space.n for row in images):
        raise ActionError("action must list an image row for every element", location="action")
    action = SemigroupAction(semigroup, space, tuple(tuple(row) for row in images), title)
    for s in range(semigroup.n):
        domain = action.domains[s]
        if not space.is_open(domain):
            raise ActionError(
                "domain is not open", location=f"action.{names[s]}", witness=(names[s],)
            )
        members = _bits(domain)
        targets = [images[s][x] for x in members]
        if len(set(targets)) != len(targets):
            raise ActionError("partial map not injective", witness=(names[s],))
        if not space.is_open(_mask(targets)):
            raise ActionError("image is not open", witness=(names[s],))
        inverse = semigroup.inv[s]
        for x in members:
            if images[inverse][images[s][x]] != x:
                raise ActionError("s⁻¹ does not invert s", witness=(names[s], space.points[x]))
            moved = space.map_open(space.neighbourhoods[x], images[s])
            if moved & ~space.neighbourhoods[images[s][x]]:
                raise ActionError(
                    "partial map not continuous", witness=(names[s], space.points[x])
                )
        if sum(1 for image in images[inverse] if image is not None) != len(members):
            raise ActionError("s⁻¹ has a different domain size", witness=(names[s],))
    for s in range(semigroup.n):
        for t in range(semigroup.n):
            st = semigroup.product(s, t)
            for x in range(space.n):
                first = images[s][x]
                expected = None if first is None else images[t][first]
                if images[st][x] != expected:
                    raise ActionError(
                        "action is not a homomorphism",
                        witness=(names[s], names[t], space.points[x]),
                    )
    covered = _mask(x for e in semigroup.idempotents for x in _bits(action.domains[e]))
    if covered != space.full:
        raise ActionError("idempotent domains do not cover the space")
    return action


def natural_action_check(action: SemigroupAction) -> Verdict:
    """Summary: Check that e ↦ dom(e) is an order isomorphism from E(S) onto the opens.

    Importance: Under this condition the germ groupoid equals G(L∨(S)).
    Alternatives: Require the caller to assert naturality.
    """

    semigroup, space = action.semigroup, action.space
    domains = {e: action.domains[e] for e in semigroup.idempotents}
    family = list(domains.values())
    if semigroup.zero is None:
        family.append(0)
    if len(set(family)) != len(family) or set(family) != space.open_set:
        return Verdict.fail(detail="idempotent domains are not exactly the open sets")
    for e, f in itertools.product(domains, repeat=2):
        if semigroup.le(e, f) != (domains[e] & ~domains[f] == 0):
            return Verdict.fail(semigroup.names[e], semigroup.names[f], detail="order mismatch")
    return Verdict.ok()


def germ_groupoid_direct(action: SemigroupAction) -> TopGroupoid:
    """Summary: Germs [s, x] with [s, x] = [t, x] iff es = et for an idempotent e at x.

    Importance: The classical germ construction, used as the oracle for the completion route.
    Alternatives: Identify germs by comparing the maps on a neighbourhood.
    """

    semigroup, space = action.semigroup, action.space
    representatives: list[tuple[int, int]] = []
    lookup: dict[tuple[int, int], int] = {}
    for x in range(space.n):
        for s in range(semigroup.n):
            if action.apply(s, x) is None:
                continue
            for germ, (t, y) in enumerate(representatives):
                if y == x and _same_germ(action, s, t, x):
                    lookup[(s, x)] = germ
                    break
            else:
                lookup[(s, x)] = len(representatives)
                representatives.append((s, x))
    names = [f"[{semigroup.names[s]},{space.points[x]}]" for s, x in representatives]
    basic = [
        _mask(lookup[(s, y)] for y in _bits(neighbourhood))
        for s in range(semigroup.n)
        for neighbourhood in space.opens
        if neighbourhood & ~action.domains[s] == 0
    ]
    arrows = validate_space(names, basic, f"germs({action.title})", subbasis=True)
    dom = [x for _, x in representatives]
    cod = [action.apply(s, x) for s, x in representatives]
    inverse = [lookup[(semigroup.inv[s], action.apply(s, x))] for s, x in representatives]
    unit = []
    for x in range(space.n):
        e = next(e for e in semigroup.idempotents if action.apply(e, x) is not None)
        unit.append(lookup[(e, x)])
    compose = {}
    for first, (s, x) in enumerate(representatives):
        for second, (t, y) in enumerate(representatives):
            if cod[first] == y:
                compose[(first, second)] = lookup[(semigroup.product(s, t), x)]
    return validate_groupoid(
        space, arrows, dom, cod, inverse, unit, compose, f"germs({action.title or 'S'})"
    )


def _same_germ(action: SemigroupAction, s: int, t: int, x: int) -> bool:
    semigroup = action.semigroup
    return any(
        action.apply(e, x) is not None and semigroup.product(e, s) == semigroup.product(e, t)
        for e in semigroup.idempotents
    )


@dataclass(frozen=True)
class GermComparison:
    """Summary: The germ groupoid by both routes and the isomorphism between them."""

    direct: TopGroupoid
    natural: Verdict
    via_completion: TopGroupoid | None = None
    iso: GroupoidIsomorphism | None = None

    def findings(self) -> list[Finding]:
        section = "germs"
        name = "germs(S) ≅ G(L∨(S))"
        if self.via_completion is None:
            return [Finding.skipped(section, name, self.natural.detail or "action not natural")]
        verdict = Verdict.ok() if self.iso is not None else Verdict.fail(detail="no isomorphism")
        return [Finding.from_verdict(section, name, verdict, theorem=True)]


def germ_groupoid(action: SemigroupAction, subset_cap: int = 4) -> GermComparison:
    """Summary: Germ groupoid of an ACP action, through the completion when the action is natural.

    Importance: Cross-checks G(L∨(S)) against the direct germ construction.
    Alternatives: Use only the direct construction.
    """

    direct = germ_groupoid_direct(action)
    natural = natural_action_check(action)
    if not natural:
        return GermComparison(direct, natural)
    acp = acp_check(action.semigroup, subset_cap)
    if not acp.holds:
        return GermComparison(direct, Verdict.fail(detail="semigroup is not an ACP"))
    completion = lcc_completion(action.semigroup, acp)
    via_completion = groupoid_of(completion.quantale)
    iso = groupoid_isomorphism(via_completion, direct)
    return GermComparison(direct, natural, via_completion, iso)
