"""Summary: Finite complete lattices, frames, lattice maps, and Galois adjoints.

Importance: Every other module reduces its checks to table lookups on these lattices.
Alternatives: Represent lattices as sets of frozensets and compare by inclusion on demand.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import cached_property, reduce
from typing import Callable, Iterable, Sequence

import numpy as np

from openquantal.errors import AdjointError, LatticeError
from openquantal.models import Verdict

logger = logging.getLogger(__name__)


def format_set(members: Iterable[str]) -> str:
    """Summary: Render a set of point names as an element name.

    Importance: Gives topologies, powersets, and completions readable, stable element names.
    Alternatives: Use positional element ids in reports.
    """

    items = list(members)
    if not items:
        return "∅"
    return "{" + ",".join(items) + "}"


def _readonly(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class FiniteLattice:
    """Summary: A finite lattice with dense element ids and precomputed tables.

    Importance: Joins, meets, and the order are single lookups for all downstream checks.
    Alternatives: Compute bounds lazily from the order relation.
    """

    names: tuple[str, ...]
    leq: np.ndarray
    join: np.ndarray
    meet: np.ndarray
    bot: int
    top: int

    @property
    def n(self) -> int:
        return len(self.names)

    def __len__(self) -> int:
        return len(self.names)

    @cached_property
    def _index(self) -> dict[str, int]:
        return {name: position for position, name in enumerate(self.names)}

    def index(self, name: str) -> int:
        """Return the id of a named element, raising LatticeError when absent."""

        try:
            return self._index[name]
        except KeyError as exc:
            raise LatticeError(f"unknown element {name!r}") from exc

    def label(self, element: int) -> str:
        return self.names[element]

    @cached_property
    def leq_rows(self) -> tuple[tuple[bool, ...], ...]:
        return tuple(tuple(bool(value) for value in row) for row in self.leq)

    @cached_property
    def join_rows(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(int(value) for value in row) for row in self.join)

    @cached_property
    def meet_rows(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(int(value) for value in row) for row in self.meet)

    def le(self, a: int, b: int) -> bool:
        return self.leq_rows[a][b]

    def join_all(self, elements: Iterable[int]) -> int:
        rows = self.join_rows
        return reduce(lambda acc, item: rows[acc][item], elements, self.bot)

    def meet_all(self, elements: Iterable[int]) -> int:
        rows = self.meet_rows
        return reduce(lambda acc, item: rows[acc][item], elements, self.top)

    def down(self, a: int) -> tuple[int, ...]:
        """Return all elements below a, in id order."""

        return tuple(int(b) for b in np.flatnonzero(self.leq[:, a]))

    def up(self, a: int) -> tuple[int, ...]:
        return tuple(int(b) for b in np.flatnonzero(self.leq[a, :]))

    @cached_property
    def join_irreducibles(self) -> tuple[int, ...]:
        """Summary: Elements that are not the join of the elements strictly below them.

        Importance: Every element is the join of the join-irreducibles below it, so maps and
        multiplications are determined by their values on this set.
        Alternatives: Enumerate over all elements and accept the slowdown.
        """

        result = []
        for a in range(self.n):
            if a == self.bot:
                continue
            below = [b for b in self.down(a) if b != a]
            if self.join_all(below) != a:
                result.append(a)
        return tuple(result)

    @cached_property
    def meet_irreducibles(self) -> tuple[int, ...]:
        result = []
        for a in range(self.n):
            if a == self.top:
                continue
            above = [b for b in self.up(a) if b != a]
            if self.meet_all(above) != a:
                result.append(a)
        return tuple(result)

    def sublattice(
        self, elements: Sequence[int], names: Sequence[str] | None = None
    ) -> "FiniteLattice":
        """Summary: Restrict to a subset closed under binary joins and meets.

        Importance: Builds R(Q) and principal down-sets as lattices in their own right.
        Alternatives: Keep subsets as masks and route every query through the parent.
        """

        chosen = list(elements)
        position = {element: offset for offset, element in enumerate(chosen)}
        size = len(chosen)
        join = np.zeros((size, size), dtype=np.int64)
        meet = np.zeros((size, size), dtype=np.int64)
        for i, a in enumerate(chosen):
            for k, b in enumerate(chosen):
                upper = self.join_rows[a][b]
                lower = self.meet_rows[a][b]
                if upper not in position or lower not in position:
                    raise LatticeError(
                        "subset is not a sublattice",
                        witness=(self.names[a], self.names[b]),
                    )
                join[i, k] = position[upper]
                meet[i, k] = position[lower]
        index = np.array(chosen, dtype=np.int64)
        leq = self.leq[np.ix_(index, index)].copy()
        bot = int(np.flatnonzero(leq.all(axis=1))[0])
        top = int(np.flatnonzero(leq.all(axis=0))[0])
        return FiniteLattice(
            names=tuple(names) if names is not None else tuple(self.names[a] for a in chosen),
            leq=_readonly(leq),
            join=_readonly(join),
            meet=_readonly(meet),
            bot=bot,
            top=top,
        )

    def complement(self, a: int) -> int | None:
        for b in range(self.n):
            if self.meet_rows[a][b] == self.bot and self.join_rows[a][b] == self.top:
                return b
        return None

    @cached_property
    def is_boolean(self) -> bool:
        """Summary: True when the lattice is distributive and complemented.

        Importance: A finite frame is Boolean exactly when its point space is discrete.
        Alternatives: Compare the element count against a power of the atom count.
        """

        if not validate_frame(self).distributive:
            return False
        return all(self.complement(a) is not None for a in range(self.n))

    @staticmethod
    def from_leq(names: Sequence[str], leq: np.ndarray) -> "FiniteLattice":
        """Summary: Build a lattice from a full order matrix, computing bounds per pair.

        Importance: Rejects non-orders and missing bounds with the offending pair named.
        Alternatives: Trust the input and compute bounds lazily.
        """

        order = np.array(leq, dtype=bool)
        size = len(names)
        if order.shape != (size, size):
            raise LatticeError(f"order matrix has shape {order.shape}, expected {(size, size)}")
        if not order.diagonal().all():
            bad = int(np.flatnonzero(~order.diagonal())[0])
            raise LatticeError("order is not reflexive", witness=(names[bad],))
        clash = np.argwhere(order & order.T & ~np.eye(size, dtype=bool))
        if len(clash):
            a, b = (int(value) for value in clash[0])
            raise LatticeError("order is not antisymmetric", witness=(names[a], names[b]))
        composed = (order.astype(np.int64) @ order.astype(np.int64)) > 0
        missing = np.argwhere(composed & ~order)
        if len(missing):
            a, b = (int(value) for value in missing[0])
            raise LatticeError("order is not transitive", witness=(names[a], names[b]))

        join = np.zeros((size, size), dtype=np.int64)
        meet = np.zeros((size, size), dtype=np.int64)
        as_float = order.astype(np.float64)
        for a in range(size):
            uppers = order[a][None, :] & order
            below_count = uppers.astype(np.float64) @ as_float.T
            least = uppers & (below_count == uppers.sum(axis=1)[:, None])
            lowers = order[:, a][None, :] & order.T
            above_count = lowers.astype(np.float64) @ as_float
            greatest = lowers & (above_count == lowers.sum(axis=1)[:, None])
            for b in range(size):
                hits = np.flatnonzero(least[b])
                if len(hits) != 1:
                    raise LatticeError(
                        "pair has no least upper bound", witness=(names[a], names[b])
                    )
                join[a, b] = hits[0]
                hits = np.flatnonzero(greatest[b])
                if len(hits) != 1:
                    raise LatticeError(
                        "pair has no greatest lower bound", witness=(names[a], names[b])
                    )
                meet[a, b] = hits[0]
        bottoms = np.flatnonzero(order.all(axis=1))
        tops = np.flatnonzero(order.all(axis=0))
        if len(bottoms) != 1 or len(tops) != 1:
            raise LatticeError("order has no bottom or no top")
        return FiniteLattice(
            names=tuple(names),
            leq=_readonly(order),
            join=_readonly(join),
            meet=_readonly(meet),
            bot=int(bottoms[0]),
            top=int(tops[0]),
        )

    @staticmethod
    def from_pairs(names: Sequence[str], pairs: Iterable[tuple[str, str]]) -> "FiniteLattice":
        """Summary: Build a lattice from covering or order pairs, closing transitively.

        Importance: Structure files list only covers; the closure is computed here.
        Alternatives: Require the full order relation in every file.
        """

        position = {name: offset for offset, name in enumerate(names)}
        if len(position) != len(names):
            raise LatticeError("duplicate element names")
        order = np.eye(len(names), dtype=bool)
        for low, high in pairs:
            for name in (low, high):
                if name not in position:
                    raise LatticeError(f"unknown element {name!r} in order pair")
            order[position[low], position[high]] = True
        for k in range(len(names)):
            order |= order[:, k][:, None] & order[k, :][None, :]
        return FiniteLattice.from_leq(names, order)

    @staticmethod
    def from_family(
        names: Sequence[str],
        masks: Sequence[int],
        close: Callable[[int], int] | None = None,
    ) -> "FiniteLattice":
        """Summary: Build a lattice of subsets (as bitmasks) ordered by inclusion.

        Importance: Topologies and completions have meets by intersection and joins by a
        closure of the union, so bounds need no order search.
        Alternatives: Go through from_leq and search for bounds per pair.
        """

        position = {mask: offset for offset, mask in enumerate(masks)}
        if len(position) != len(masks):
            raise LatticeError("duplicate members in set family")
        size = len(masks)
        leq = np.zeros((size, size), dtype=bool)
        join = np.zeros((size, size), dtype=np.int64)
        meet = np.zeros((size, size), dtype=np.int64)
        for i, a in enumerate(masks):
            for k, b in enumerate(masks):
                leq[i, k] = a & ~b == 0
                union = a | b if close is None else close(a | b)
                if union not in position or (a & b) not in position:
                    raise LatticeError(
                        "set family not closed under union and intersection",
                        witness=(names[i], names[k]),
                    )
                join[i, k] = position[union]
                meet[i, k] = position[a & b]
        smallest = min(range(size), key=lambda offset: bin(masks[offset]).count("1"))
        largest = max(range(size), key=lambda offset: bin(masks[offset]).count("1"))
        return FiniteLattice(
            names=tuple(names),
            leq=_readonly(leq),
            join=_readonly(join),
            meet=_readonly(meet),
            bot=smallest,
            top=largest,
        )

    @staticmethod
    def powerset(atoms: Sequence[str]) -> "FiniteLattice":
        masks = sorted(range(1 << len(atoms)), key=lambda mask: (bin(mask).count("1"), mask))
        names = [
            format_set(atom for bit, atom in enumerate(atoms) if mask >> bit & 1) for mask in masks
        ]
        return FiniteLattice.from_family(names, masks)

    @staticmethod
    def chain(length: int) -> "FiniteLattice":
        names = [str(level) for level in range(length)]
        order = np.triu(np.ones((length, length), dtype=bool))
        return FiniteLattice.from_leq(names, order)


@dataclass(frozen=True)
class FrameWitness:
    """Summary: A lattice together with the outcome of the distributivity check.

    Importance: Frame-only constructions take a witness so the check runs once.
    Alternatives: Re-run the triple check inside every construction.
    """

    lattice: FiniteLattice
    distributive: bool
    witness: tuple[str, ...] = ()

    def require(self) -> FiniteLattice:
        """Return the lattice, raising LatticeError when it is not a frame."""

        if not self.distributive:
            raise LatticeError("lattice is not distributive", witness=self.witness)
        return self.lattice


def validate_frame(lattice: FiniteLattice) -> FrameWitness:
    """Summary: Check a ∧ (b ∨ c) = (a ∧ b) ∨ (a ∧ c) over all triples.

    Importance: On finite lattices this plus a ∧ ⊥ = ⊥ is the full frame law.
    Alternatives: Check only atoms and coatoms.
    """

    join = lattice.join
    meet = lattice.meet
    ids = np.arange(lattice.n)
    lhs = meet[ids[:, None, None], join[None, :, :]]
    rhs = join[meet[:, :, None], meet[:, None, :]]
    bad = np.argwhere(lhs != rhs)
    if len(bad):
        a, b, c = (lattice.names[int(value)] for value in bad[0])
        logger.debug("Distributivity fails at %s, %s, %s", a, b, c)
        return FrameWitness(lattice, False, (a, b, c))
    return FrameWitness(lattice, True)


@dataclass(frozen=True)
class LatticeMap:
    """Summary: A function between finite lattices stored as an element table.

    Importance: Adjoints, frame maps, and structure maps of groupoids are all values.
    Alternatives: Use Python callables and evaluate them on demand.
    """

    src: FiniteLattice
    dst: FiniteLattice
    table: tuple[int, ...]
    label: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        if len(self.table) != self.src.n:
            raise LatticeError(
                f"map {self.label or '?'} has {len(self.table)} values for {self.src.n} elements"
            )

    def __call__(self, element: int) -> int:
        return self.table[element]

    @cached_property
    def array(self) -> np.ndarray:
        return _readonly(np.array(self.table, dtype=np.int64))

    def describe(self) -> dict[str, str]:
        return {self.src.names[a]: self.dst.names[b] for a, b in enumerate(self.table)}


def identity_map(lattice: FiniteLattice, label: str = "id") -> LatticeMap:
    return LatticeMap(lattice, lattice, tuple(range(lattice.n)), label)


def constant_map(src: FiniteLattice, dst: FiniteLattice, value: int, label: str = "") -> LatticeMap:
    return LatticeMap(src, dst, (value,) * src.n, label)


def compose(outer: LatticeMap, inner: LatticeMap) -> LatticeMap:
    """Return outer ∘ inner."""

    if inner.dst is not outer.src:
        raise LatticeError("maps are not composable")
    table = tuple(outer.table[value] for value in inner.table)
    return LatticeMap(inner.src, outer.dst, table, f"{outer.label}∘{inner.label}")


def is_monotone(mapping: LatticeMap) -> Verdict:
    values = mapping.array
    src_leq = mapping.src.leq
    image_leq = mapping.dst.leq[values[:, None], values[None, :]]
    bad = np.argwhere(src_leq & ~image_leq)
    if len(bad):
        a, b = (mapping.src.names[int(value)] for value in bad[0])
        return Verdict.fail(a, b, detail="order not preserved")
    return Verdict.ok()


def preserves_joins(mapping: LatticeMap) -> Verdict:
    """Summary: Check f(⊥) = ⊥ and f(a ∨ b) = f(a) ∨ f(b) for all pairs.

    Importance: On finite lattices this certifies preservation of arbitrary joins.
    Alternatives: Check joins of all subsets.
    """

    src, dst = mapping.src, mapping.dst
    values = mapping.array
    if values[src.bot] != dst.bot:
        return Verdict.fail(src.names[src.bot], detail="bottom not preserved")
    lhs = values[src.join]
    rhs = dst.join[values[:, None], values[None, :]]
    bad = np.argwhere(lhs != rhs)
    if len(bad):
        a, b = (src.names[int(value)] for value in bad[0])
        return Verdict.fail(a, b, detail="binary join not preserved")
    return Verdict.ok()


def preserves_meets(mapping: LatticeMap) -> Verdict:
    src, dst = mapping.src, mapping.dst
    values = mapping.array
    if values[src.top] != dst.top:
        return Verdict.fail(src.names[src.top], detail="top not preserved")
    lhs = values[src.meet]
    rhs = dst.meet[values[:, None], values[None, :]]
    bad = np.argwhere(lhs != rhs)
    if len(bad):
        a, b = (src.names[int(value)] for value in bad[0])
        return Verdict.fail(a, b, detail="binary meet not preserved")
    return Verdict.ok()


def is_frame_hom(mapping: LatticeMap) -> Verdict:
    """Summary: True iff the map preserves top, binary meets, bottom, and binary joins.

    Importance: Frame homomorphisms are the point-free continuous maps used throughout.
    Alternatives: Check joins only and trust meets.
    """

    joins = preserves_joins(mapping)
    if not joins:
        return joins
    return preserves_meets(mapping)


def is_injective(mapping: LatticeMap) -> Verdict:
    seen: dict[int, int] = {}
    for element, value in enumerate(mapping.table):
        if value in seen:
            names = mapping.src.names
            return Verdict.fail(names[seen[value]], names[element], detail="same image")
        seen[value] = element
    return Verdict.ok()


def right_adjoint(mapping: LatticeMap) -> LatticeMap:
    """Summary: Compute f_*(b) = ⋁{a : f(a) ≤ b} for a join-preserving f.

    Importance: Right adjoints give residuals, μ₀*, and the injectivity test f_*∘f = id.
    Alternatives: Solve the adjunction by search for each b separately.
    """

    verdict = preserves_joins(mapping)
    if not verdict:
        raise AdjointError(
            f"right adjoint undefined: {mapping.label or 'map'} does not preserve joins",
            witness=verdict.witness,
        )
    src, dst = mapping.src, mapping.dst
    below = dst.leq[mapping.array, :]
    table = tuple(src.join_all(np.flatnonzero(below[:, b]).tolist()) for b in range(dst.n))
    return LatticeMap(dst, src, table, f"{mapping.label}_*" if mapping.label else "")


def left_adjoint(mapping: LatticeMap) -> LatticeMap:
    """Summary: Compute g_!(a) = ⋀{b : a ≤ g(b)} for a meet-preserving g.

    Importance: Yields d_! and r_! of semiopen quantal frames and s_! of bisections.
    Alternatives: Solve the adjunction by search for each a separately.
    """

    verdict = preserves_meets(mapping)
    if not verdict:
        raise AdjointError(
            f"left adjoint undefined: {mapping.label or 'map'} does not preserve meets",
            witness=verdict.witness,
        )
    src, dst = mapping.src, mapping.dst
    above = dst.leq[:, mapping.array]
    table = tuple(src.meet_all(np.flatnonzero(above[a, :]).tolist()) for a in range(dst.n))
    return LatticeMap(dst, src, table, f"{mapping.label}_!" if mapping.label else "")


def check_adjunction(lower: LatticeMap, upper: LatticeMap) -> Verdict:
    """Check lower(a) ≤ b ⇔ a ≤ upper(b) for all a, b."""

    lhs = lower.dst.leq[lower.array[:, None], np.arange(lower.dst.n)[None, :]]
    rhs = lower.src.leq[np.arange(lower.src.n)[:, None], upper.array[None, :]]
    bad = np.argwhere(lhs != rhs)
    if len(bad):
        a, b = bad[0]
        return Verdict.fail(lower.src.names[int(a)], lower.dst.names[int(b)])
    return Verdict.ok()


def is_closure_operator(mapping: LatticeMap) -> Verdict:
    """Check that an endomap is inflationary, monotone, and idempotent."""

    lattice = mapping.src
    for a in range(lattice.n):
        if not lattice.le(a, mapping(a)):
            return Verdict.fail(lattice.names[a], detail="not inflationary")
        if mapping(mapping(a)) != mapping(a):
            return Verdict.fail(lattice.names[a], detail="not idempotent")
    return is_monotone(mapping)
