"""Summary: Finite inverse semigroups, ACP verification, and the L∨ join completion.

Importance: Links bisections and partial units to inverse quantal frames in both directions.
Alternatives: Model pseudogroups only through their completions.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import networkx as nx
import numpy as np

from openquantal.errors import (
    CapExceededError,
    InconsistencyError,
    PreconditionError,
    SemigroupError,
)
from openquantal.lattice import FiniteLattice
from openquantal.models import Finding, Verdict
from openquantal.quantale import Quantale, partial_units

logger = logging.getLogger(__name__)

CLIQUE_LIMIT = 100_000


def _readonly(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class InverseSemigroup:
    """Summary: A finite inverse semigroup with derived natural order and compatibility.

    Importance: Every ACP check and the completion read these cached matrices.
    Alternatives: Recompute the natural order from products on demand.
    """

    names: tuple[str, ...]
    mult: np.ndarray
    inv: tuple[int, ...]
    title: str = ""

    @property
    def n(self) -> int:
        return len(self.names)

    def __len__(self) -> int:
        return len(self.names)

    @cached_property
    def mult_rows(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(int(value) for value in row) for row in self.mult)

    def product(self, s: int, t: int) -> int:
        return self.mult_rows[s][t]

    @cached_property
    def index(self) -> dict[str, int]:
        return {name: position for position, name in enumerate(self.names)}

    @cached_property
    def idempotents(self) -> tuple[int, ...]:
        return tuple(s for s in range(self.n) if self.product(s, s) == s)

    @cached_property
    def idempotent_set(self) -> frozenset[int]:
        return frozenset(self.idempotents)

    @cached_property
    def natural_leq(self) -> np.ndarray:
        """natural_leq[s, t] iff s = (s s⁻¹) t."""

        ids = np.arange(self.n)
        inv = np.array(self.inv)
        domain = self.mult[ids, inv]
        return _readonly(self.mult[domain[:, None], ids[None, :]] == ids[:, None])

    @cached_property
    def compatible(self) -> np.ndarray:
        """compatible[s, t] iff s⁻¹t and st⁻¹ are idempotent."""

        inv = np.array(self.inv)
        ids = np.arange(self.n)
        is_idempotent = np.zeros(self.n, dtype=bool)
        is_idempotent[list(self.idempotents)] = True
        left = self.mult[inv[:, None], ids[None, :]]
        right = self.mult[ids[:, None], inv[None, :]]
        return _readonly(is_idempotent[left] & is_idempotent[right])

    @cached_property
    def zero(self) -> int | None:
        for z in range(self.n):
            if (self.mult[z, :] == z).all() and (self.mult[:, z] == z).all():
                return z
        return None

    def with_zero(self) -> "InverseSemigroup":
        """S with a zero adjoined, or S itself when it already has one."""

        if self.zero is not None:
            return self
        name = "0"
        while name in self.index:
            name += "′"
        mult = np.full((self.n + 1, self.n + 1), self.n, dtype=self.mult.dtype)
        mult[: self.n, : self.n] = self.mult
        return InverseSemigroup(
            (*self.names, name), _readonly(mult), (*self.inv, self.n), self.title
        )

    def le(self, s: int, t: int) -> bool:
        return bool(self.natural_leq[s, t])

    def down(self, s: int) -> tuple[int, ...]:
        return tuple(int(t) for t in np.flatnonzero(self.natural_leq[:, s]))

    @cached_property
    def down_masks(self) -> tuple[int, ...]:
        """Bitmask of the natural down-set of each element."""

        return tuple(sum(1 << t for t in self.down(s)) for s in range(self.n))

    def natural_join(self, elements: Sequence[int]) -> int | None:
        """Least upper bound of a set in the natural order, or None when absent."""

        chosen = list(elements)
        if not chosen:
            return self.zero
        upper = np.flatnonzero(self.natural_leq[chosen, :].all(axis=0))
        for candidate in upper:
            if self.natural_leq[candidate, upper].all():
                return int(candidate)
        return None

    def triples(self) -> list[tuple[str, str, str]]:
        return [
            (self.names[s], self.names[t], self.names[self.mult_rows[s][t]])
            for s in range(self.n)
            for t in range(self.n)
        ]


def validate_inverse_semigroup(
    names: Sequence[str],
    mult: np.ndarray | Sequence[Sequence[int]],
    inv: Sequence[int],
    title: str = "",
) -> InverseSemigroup:
    """Summary: Check associativity, regularity, unique inverses, and commuting idempotents.

    Importance: The checks run in this order so the first witness names the basic failure.
    Alternatives: Check only that idempotents commute in a regular semigroup.
    """

    table = np.array(mult, dtype=np.int64)
    size = len(names)
    if table.shape != (size, size):
        raise SemigroupError("multiplication table must be total", location="mult")
    if table.min(initial=0) < 0 or table.max(initial=0) >= size:
        raise SemigroupError("multiplication table refers to unknown elements", location="mult")
    involution = np.array(inv, dtype=np.int64)
    if involution.shape != (size,):
        raise SemigroupError("inverse map must be defined on every element", location="inv")
    ids = np.arange(size)

    bad = np.argwhere(
        table[table[:, :, None], ids[None, None, :]] != table[ids[:, None, None], table[None, :, :]]
    )
    if len(bad):
        raise SemigroupError(
            "multiplication not associative",
            location="mult",
            witness=tuple(names[int(value)] for value in bad[0]),
        )
    regular = table[table[ids, involution], ids] == ids
    regular &= table[table[involution, ids], involution] == involution
    if not regular.all():
        bad_element = int(np.flatnonzero(~regular)[0])
        raise SemigroupError(
            "regularity fails: s s⁻¹ s ≠ s", location="inv", witness=(names[bad_element],)
        )
    for s in range(size):
        partners = [
            t
            for t in range(size)
            if table[table[s, t], s] == s and table[table[t, s], t] == t
        ]
        if partners != [int(involution[s])]:
            raise SemigroupError(
                "inverses are not unique",
                location="inv",
                witness=(names[s], *(names[t] for t in partners)),
            )
    idempotents = [e for e in range(size) if table[e, e] == e]
    for e in idempotents:
        for f in idempotents:
            if table[e, f] != table[f, e]:
                raise SemigroupError(
                    "idempotents do not commute", location="mult", witness=(names[e], names[f])
                )
    table.setflags(write=False)
    logger.debug("Validated inverse semigroup %s with %d elements", title or "?", size)
    return InverseSemigroup(
        names=tuple(names), mult=table, inv=tuple(int(v) for v in involution), title=title
    )


@dataclass(frozen=True)
class ACPWitness:
    """Summary: Completeness and distributivity of an inverse semigroup with witnesses.

    Importance: Only ACPs have an inverse quantal frame completion.
    Alternatives: Attempt the completion and inspect failures afterwards.
    """

    semigroup: InverseSemigroup
    complete: Verdict
    distributive: Verdict

    @property
    def holds(self) -> bool:
        return bool(self.complete and self.distributive)


def compatibility_graph(semigroup: InverseSemigroup) -> nx.Graph:
    """Undirected graph on the elements with an edge between distinct compatible elements."""

    graph = nx.Graph()
    graph.add_nodes_from(range(semigroup.n))
    graph.add_edges_from(
        (s, t)
        for s, t in itertools.combinations(range(semigroup.n), 2)
        if semigroup.compatible[s, t]
    )
    return graph


def compatible_cliques(semigroup: InverseSemigroup, max_size: int) -> list[tuple[int, ...]]:
    """Nonempty pairwise-compatible subsets up to a size, in lexicographic order."""

    found: list[tuple[int, ...]] = []
    for clique in nx.enumerate_all_cliques(compatibility_graph(semigroup)):
        if len(clique) > max_size:
            break
        found.append(tuple(sorted(clique)))
        if len(found) > CLIQUE_LIMIT:
            raise CapExceededError(f"more than {CLIQUE_LIMIT} compatible subsets")
    return sorted(found)


def acp_check(semigroup: InverseSemigroup, subset_cap: int = 4) -> ACPWitness:
    """Summary: Check that compatible sets have joins and that products distribute over them.

    Importance: Compatible sets up to the cap are checked directly; beyond the cap, joins are
    reduced to smaller ones, which needs each such join to stay compatible with every element
    compatible with all of its members.
    Alternatives: Enumerate every compatible subset regardless of size.
    """

    names = semigroup.names
    complete = Verdict.ok()
    joins: dict[tuple[int, ...], int] = {}
    for clique in compatible_cliques(semigroup, subset_cap):
        join = semigroup.natural_join(clique)
        if join is None:
            complete = Verdict.fail(
                *(names[s] for s in clique), detail="compatible set without a join"
            )
            break
        joins[clique] = join
    if complete:
        for clique, join in joins.items():
            if len(clique) != subset_cap:
                continue
            for d in range(semigroup.n):
                if d in clique or not all(semigroup.compatible[d, s] for s in clique):
                    continue
                if not semigroup.compatible[join, d]:
                    complete = Verdict.fail(
                        *(names[s] for s in clique),
                        names[d],
                        detail="join not compatible with a common compatible element",
                    )
                    break
            if not complete:
                break

    distributive = Verdict.ok()
    if complete:
        for clique, join in joins.items():
            if len(clique) != 2:
                continue
            t1, t2 = clique
            for s in range(semigroup.n):
                left = semigroup.natural_join(
                    (semigroup.product(s, t1), semigroup.product(s, t2))
                )
                right = semigroup.natural_join(
                    (semigroup.product(t1, s), semigroup.product(t2, s))
                )
                if left != semigroup.product(s, join):
                    distributive = Verdict.fail(
                        names[s], names[t1], names[t2], detail="s(t1∨t2) ≠ st1 ∨ st2"
                    )
                    break
                if right != semigroup.product(join, s):
                    distributive = Verdict.fail(
                        names[s], names[t1], names[t2], detail="(t1∨t2)s ≠ t1s ∨ t2s"
                    )
                    break
            if not distributive:
                break
    else:
        distributive = Verdict.fail(detail="not complete")
    logger.info(
        "ACP check on %s: complete=%s distributive=%s",
        semigroup.title or "semigroup",
        complete.holds,
        distributive.holds,
    )
    return ACPWitness(semigroup, complete, distributive)


def _bits(mask: int) -> list[int]:
    return [position for position in range(mask.bit_length()) if mask >> position & 1]


@dataclass(frozen=True, eq=False)
class Completion:
    """Summary: L∨(S) with its members as bitmasks and the principal embedding.

    Importance: Keeps the set-level data needed to map semigroup elements into the quantale.
    Alternatives: Return only the quantale and lose the link to S.
    """

    semigroup: InverseSemigroup
    members: tuple[int, ...]
    quantale: Quantale
    hat: tuple[int, ...]

    @cached_property
    def _position(self) -> dict[int, int]:
        return {mask: offset for offset, mask in enumerate(self.members)}

    def index_of(self, mask: int) -> int:
        try:
            return self._position[mask]
        except KeyError as exc:
            raise InconsistencyError("subset is not closed in the completion") from exc

    def closure(self, mask: int) -> int:
        return completion_closure(self.semigroup, mask)

    def elements_of(self, member: int) -> list[int]:
        return _bits(self.members[member])


def completion_closure(semigroup: InverseSemigroup, mask: int) -> int:
    """Summary: Smallest down-closed, compatible-join-closed set containing a mask.

    Importance: The elements of L∨(S) are exactly the fixed points of this closure.
    Alternatives: Close under joins of all compatible subsets at once.
    """

    if semigroup.zero is not None:
        mask |= 1 << semigroup.zero
    down_masks = semigroup.down_masks
    while True:
        closed = mask
        for s in _bits(mask):
            closed |= down_masks[s]
        members = _bits(closed)
        for offset, s in enumerate(members):
            for t in members[offset + 1:]:
                if semigroup.compatible[s, t]:
                    join = semigroup.natural_join((s, t))
                    if join is not None:
                        closed |= 1 << join
        if closed == mask:
            return mask
        mask = closed


def _member_name(semigroup: InverseSemigroup, mask: int) -> str:
    members = [s for s in _bits(mask) if s != semigroup.zero]
    maximal = [
        s for s in members if not any(t != s and semigroup.le(s, t) for t in members)
    ]
    return "⟨" + ",".join(semigroup.names[s] for s in maximal) + "⟩"


def lcc_completion(semigroup: InverseSemigroup, acp: ACPWitness | None = None) -> Completion:
    """Summary: Build L∨(S): closed down-sets under inclusion with the product closure.

    Importance: Turns an ACP into its inverse quantal frame.
    Alternatives: Enumerate all subsets of S and keep the closed ones.
    """

    witness = acp or acp_check(semigroup)
    if not witness.holds:
        raise PreconditionError("completion requires an abstract complete pseudogroup")
    principal = [completion_closure(semigroup, 1 << s) for s in range(semigroup.n)]
    bottom = completion_closure(semigroup, 0)
    seen = {bottom}
    frontier = [bottom]
    while frontier:
        following = []
        for mask in frontier:
            for generator in principal:
                candidate = completion_closure(semigroup, mask | generator)
                if candidate not in seen:
                    seen.add(candidate)
                    following.append(candidate)
        frontier = following
    members = sorted(seen, key=lambda mask: (bin(mask).count("1"), _bits(mask)))
    position = {mask: offset for offset, mask in enumerate(members)}
    names = [_member_name(semigroup, mask) for mask in members]
    frame = FiniteLattice.from_family(
        names, members, close=lambda mask: completion_closure(semigroup, mask)
    )
    size = len(members)
    table = np.zeros((size, size), dtype=np.int64)
    for i, first in enumerate(members):
        first_bits = _bits(first)
        for k, second in enumerate(members):
            product = 0
            for s in first_bits:
                for t in _bits(second):
                    product |= 1 << semigroup.product(s, t)
            table[i, k] = position[completion_closure(semigroup, product)]
    involution = [
        position[sum(1 << semigroup.inv[s] for s in _bits(mask))] for mask in members
    ]
    quantale = Quantale.build(frame, table, involution, f"L∨({semigroup.title or 'S'})")
    hat = tuple(position[mask] for mask in principal)
    logger.info("Completed %s into %d elements", semigroup.title or "semigroup", size)
    return Completion(semigroup, tuple(members), quantale, hat)


def completion_checks(completion: Completion) -> list[Finding]:
    """Summary: Verify that L∨(S) is inverse and that s ↦ ŝ is an isomorphism onto I(L∨(S)).

    Importance: These are the proved properties of the completion, checked per instance.
    Alternatives: Only compare cardinalities.
    """

    semigroup, quantale, hat = completion.semigroup, completion.quantale, completion.hat
    names = semigroup.names
    section = "completion"
    findings = [
        Finding.from_verdict(
            section,
            "L∨(S) is an inverse quantal frame",
            Verdict.ok() if quantale.classification.inverse else Verdict.fail(),
            theorem=True,
        )
    ]
    verdict = Verdict.ok()
    if len(set(hat)) != semigroup.n:
        verdict = Verdict.fail(detail="two elements share a principal ideal")
    findings.append(Finding.from_verdict(section, "s ↦ ŝ injective", verdict, theorem=True))

    verdict = Verdict.ok()
    for s in range(semigroup.n):
        if hat[semigroup.inv[s]] != quantale.star(hat[s]):
            verdict = Verdict.fail(names[s], detail="(s⁻¹)^ ≠ ŝ*")
            break
        for t in range(semigroup.n):
            if hat[semigroup.product(s, t)] != quantale.product(hat[s], hat[t]):
                verdict = Verdict.fail(names[s], names[t], detail="(st)^ ≠ ŝt̂")
                break
        if not verdict:
            break
    findings.append(Finding.from_verdict(section, "s ↦ ŝ homomorphism", verdict, theorem=True))

    image = set(hat)
    if semigroup.zero is None:
        image.add(quantale.bot)
    units = set(partial_units(quantale).elements) if quantale.unit is not None else set()
    verdict = Verdict.ok() if image == units else Verdict.fail(
        detail=f"{len(image)} principal ideals vs {len(units)} partial units"
    )
    name = "I(L∨(S)) = principal ideals"
    findings.append(Finding.from_verdict(section, name, verdict, theorem=True))

    verdict = Verdict.ok()
    for s in range(semigroup.n):
        for t in range(semigroup.n):
            if semigroup.le(s, t) != quantale.frame.le(hat[s], hat[t]):
                verdict = Verdict.fail(names[s], names[t])
                break
        if not verdict:
            break
    findings.append(
        Finding.from_verdict(section, "natural order = inclusion of ŝ", verdict, theorem=True)
    )
    return findings


@dataclass(frozen=True)
class PartialUnitSemigroup:
    """Summary: I(Q) as an inverse semigroup with its completion and the isomorphism to Q."""

    semigroup: InverseSemigroup
    elements: tuple[int, ...]
    acp: ACPWitness
    completion: Completion
    iso: tuple[int, ...] | None


def partial_units_semigroup(quantale: Quantale, subset_cap: int = 4) -> PartialUnitSemigroup:
    """Summary: Validate I(Q) as an ACP and exhibit L∨(I(Q)) ≅ Q.

    Importance: Executes the round trip between inverse quantal frames and ACPs.
    Alternatives: Trust the correspondence and only count elements.
    """

    from openquantal.iso import is_quantale_isomorphism, quantale_isomorphism

    if not quantale.classification.inverse:
        raise PreconditionError("partial unit semigroup requires an inverse quantal frame")
    elements = partial_units(quantale).elements
    position = {element: offset for offset, element in enumerate(elements)}
    table = [
        [position[quantale.product(s, t)] for t in elements] for s in elements
    ]
    inverse = [position[quantale.star(s)] for s in elements]
    semigroup = validate_inverse_semigroup(
        [quantale.names[s] for s in elements], table, inverse, f"I({quantale.title or 'Q'})"
    )
    acp = acp_check(semigroup, subset_cap)
    completion = lcc_completion(semigroup, acp)
    canonical = tuple(
        quantale.frame.join_all(elements[s] for s in completion.elements_of(member))
        for member in range(len(completion.members))
    )
    iso: tuple[int, ...] | None = canonical
    if not is_quantale_isomorphism(completion.quantale, quantale, canonical):
        logger.warning("Canonical join map is not an isomorphism; searching")
        iso = quantale_isomorphism(completion.quantale, quantale)
    return PartialUnitSemigroup(semigroup, elements, acp, completion, iso)
