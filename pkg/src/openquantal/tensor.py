"""Summary: The tensor Q⊗_{R(Q)}Q as a lattice of bi-ideals, μ₀, and multiplicativity.

Importance: Multiplicativity, the groupoid multiplication of G(Q), and embeddability all live
on bi-ideals; this module never enumerates the tensor unless a cap allows it.
Alternatives: Materialize the full sup-lattice tensor Q⊗Q and quotient it.
"""

from __future__ import annotations

import itertools
import logging
from collections import deque
from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from openquantal.errors import (
    CapExceededError,
    InconsistencyError,
    PreconditionError,
    StructureError,
)
from openquantal.lattice import FiniteLattice, LatticeMap
from openquantal.models import Finding, Verdict
from openquantal.quantale import Quantale

logger = logging.getLogger(__name__)

DEFAULT_RULE_ORDER = ("down", "join", "exchange")
IDEAL_LIMIT = 200_000

Pairs = frozenset[tuple[int, int]]


@dataclass(frozen=True, eq=False)
class TensorLattice:
    """Summary: Closure engine for bi-ideals of a tensor of two modules over a frame.

    Importance: A bi-ideal is stored as one column bound per right element, so closure and
    comparison are linear in the right factor.
    Alternatives: Store bi-ideals as explicit sets of pairs.
    """

    left: FiniteLattice
    right: FiniteLattice
    left_action: tuple[tuple[int, ...], ...]
    right_action: tuple[tuple[int, ...], ...]
    quantale: Quantale | None = None
    label: str = "Q⊗Q"
    rule_order: tuple[str, ...] = DEFAULT_RULE_ORDER

    @staticmethod
    def over(quantale: Quantale) -> "TensorLattice":
        """Summary: Q⊗_{R(Q)}Q with a·z = a ∧ z* on the left and z·b = b ∧ z on the right.

        Importance: This is the domain of the reduced multiplication μ₀.
        Alternatives: Take the tensor over the unit frame and quotient later.
        """

        frame = quantale.frame
        left_action = tuple(
            tuple(frame.meet_rows[x][quantale.star(z)] for x in range(frame.n)) for z in quantale.rs
        )
        right_action = tuple(
            tuple(frame.meet_rows[y][z] for y in range(frame.n)) for z in quantale.rs
        )
        return TensorLattice(
            left=frame,
            right=frame,
            left_action=left_action,
            right_action=right_action,
            quantale=quantale,
            label=f"{quantale.title or 'Q'}⊗{quantale.title or 'Q'}",
        )

    @staticmethod
    def of_modules(
        left: FiniteLattice,
        right: FiniteLattice,
        left_action: Sequence[Sequence[int]],
        right_action: Sequence[Sequence[int]],
        label: str,
    ) -> "TensorLattice":
        if len(left_action) != len(right_action):
            raise StructureError("left and right actions must range over the same scalars")
        return TensorLattice(
            left=left,
            right=right,
            left_action=tuple(tuple(row) for row in left_action),
            right_action=tuple(tuple(row) for row in right_action),
            label=label,
        )

    def with_rule_order(self, order: Sequence[str]) -> "TensorLattice":
        unknown = set(order) - set(DEFAULT_RULE_ORDER)
        if unknown or len(set(order)) != len(DEFAULT_RULE_ORDER):
            raise ValueError(f"rule order must permute {DEFAULT_RULE_ORDER}")
        return replace(self, rule_order=tuple(order))

    @cached_property
    def left_residuals(self) -> tuple[tuple[int, ...], ...]:
        """Right adjoints of the left actions: ρ_k(c) = ⋁{x : x·z_k ≤ c}."""

        rows = []
        for action in self.left_action:
            values = np.array(action, dtype=np.int64)
            rows.append(
                tuple(
                    self.left.join_all(np.flatnonzero(self.left.leq[values, c]).tolist())
                    for c in range(self.left.n)
                )
            )
        return tuple(rows)

    @cached_property
    def memo(self) -> dict[str, object]:
        return {}

    @cached_property
    def _right_up(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(w for w in self.right.up(y) if w != y) for y in range(self.right.n))

    def close(self, cols: Sequence[int]) -> tuple[int, ...]:
        """Summary: Least bi-ideal containing the given column bounds.

        Importance: The three rule families are applied to a fixpoint in `rule_order`;
        the result does not depend on the order.
        Alternatives: Saturate explicit pair sets with a worklist.
        """

        current = list(cols)
        current[self.right.bot] = self.left.top
        rules = {
            "down": self._apply_down,
            "join": self._apply_join,
            "exchange": self._apply_exchange,
        }
        changed = True
        while changed:
            changed = False
            for name in self.rule_order:
                changed = rules[name](current) or changed
        return tuple(current)

    def _apply_down(self, cols: list[int]) -> bool:
        join = self.left.join_rows
        changed = False
        for y in range(self.right.n):
            value = cols[y]
            for w in self._right_up[y]:
                value = join[value][cols[w]]
            if value != cols[y]:
                cols[y] = value
                changed = True
        return changed

    def _apply_join(self, cols: list[int]) -> bool:
        join, meet = self.left.join_rows, self.left.meet_rows
        right_join = self.right.join_rows
        changed = False
        for y1 in range(self.right.n):
            for y2 in range(y1 + 1, self.right.n):
                target = right_join[y1][y2]
                value = join[cols[target]][meet[cols[y1]][cols[y2]]]
                if value != cols[target]:
                    cols[target] = value
                    changed = True
        return changed

    def _apply_exchange(self, cols: list[int]) -> bool:
        join = self.left.join_rows
        changed = False
        for act_left, act_right, residual in zip(
            self.left_action, self.right_action, self.left_residuals
        ):
            for y in range(self.right.n):
                target = act_right[y]
                value = join[cols[target]][residual[cols[y]]]
                if value != cols[target]:
                    cols[target] = value
                    changed = True
                value = join[cols[y]][act_left[cols[target]]]
                if value != cols[y]:
                    cols[y] = value
                    changed = True
        return changed

    def ideal(self, cols: Sequence[int]) -> "BiIdeal":
        return BiIdeal(self, tuple(cols))

    def pure(self, a: int, b: int) -> "BiIdeal":
        """Smallest bi-ideal containing (a, b)."""

        cols = [a if self.right.le(y, b) else self.left.bot for y in range(self.right.n)]
        return BiIdeal(self, self.close(cols))

    @cached_property
    def bottom(self) -> "BiIdeal":
        return BiIdeal(self, self.close([self.left.bot] * self.right.n))

    @cached_property
    def top(self) -> "BiIdeal":
        return BiIdeal(self, (self.left.top,) * self.right.n)

    def from_pairs(self, pairs: Iterable[tuple[int, int]]) -> "BiIdeal":
        cols = [self.left.bot] * self.right.n
        for x, y in pairs:
            for below in self.right.down(y):
                cols[below] = self.left.join_rows[cols[below]][x]
        return BiIdeal(self, self.close(cols))

    def join(self, *ideals: "BiIdeal") -> "BiIdeal":
        """Closure of the union of the given bi-ideals."""

        cols = [self.left.bot] * self.right.n
        for ideal in ideals:
            self._check_owner(ideal)
            cols = [self.left.join_rows[c][d] for c, d in zip(cols, ideal.cols)]
        return BiIdeal(self, self.close(cols))

    def meet(self, first: "BiIdeal", second: "BiIdeal") -> "BiIdeal":
        self._check_owner(first)
        self._check_owner(second)
        return BiIdeal(
            self, tuple(self.left.meet_rows[c][d] for c, d in zip(first.cols, second.cols))
        )

    def _check_owner(self, ideal: "BiIdeal") -> None:
        if ideal.tensor is not self and (
            ideal.tensor.left is not self.left or ideal.tensor.right is not self.right
        ):
            raise StructureError("bi-ideals belong to different tensor lattices")

    def is_closed(self, cols: Sequence[int]) -> bool:
        return self.close(cols) == tuple(cols)

    @cached_property
    def generators(self) -> tuple["BiIdeal", ...]:
        """Distinct non-bottom pure tensors of join-irreducibles, sorted by columns."""

        found = {
            self.pure(p, q)
            for p in self.left.join_irreducibles
            for q in self.right.join_irreducibles
        }
        found.discard(self.bottom)
        return tuple(sorted(found, key=lambda ideal: ideal.cols))

    @cached_property
    def irreducible_generators(self) -> tuple["BiIdeal", ...]:
        """Generators that are not the join of the generators strictly below them."""

        result = []
        for g in self.generators:
            below = [h for h in self.generators if h <= g and h != g]
            if self.join(*below) != g:
                result.append(g)
        return tuple(result)

    def enumerate_ideals(self, cap: int) -> tuple["BiIdeal", ...]:
        """Summary: All bi-ideals, as joins of generators, under a size cap on the base.

        Importance: Serves as the oracle for μ₀* and the pushout comparison.
        Alternatives: Enumerate all subsets of Q×Q and filter closed ones.
        """

        if max(self.left.n, self.right.n) > cap:
            raise CapExceededError(
                f"bi-ideal enumeration limited to |Q| <= {cap}, "
                f"got {max(self.left.n, self.right.n)}"
            )
        seen = {self.bottom}
        queue = deque([self.bottom])
        while queue:
            current = queue.popleft()
            for generator in self.generators:
                candidate = self.join(current, generator)
                if candidate not in seen:
                    seen.add(candidate)
                    queue.append(candidate)
                    if len(seen) > IDEAL_LIMIT:
                        raise CapExceededError(f"more than {IDEAL_LIMIT} bi-ideals")
        logger.info("Enumerated %d bi-ideals of %s", len(seen), self.label)
        return tuple(sorted(seen, key=lambda ideal: ideal.cols))


@dataclass(frozen=True)
class BiIdeal:
    """Summary: A bi-ideal stored as column bounds: (x, y) ∈ I iff x ≤ cols[y].

    Importance: Each column of a bi-ideal is a principal down-set, so one bound suffices.
    Alternatives: Keep the explicit pair bitset; `pairs` derives it when needed.
    """

    tensor: TensorLattice = field(compare=False, repr=False)
    cols: tuple[int, ...]

    def contains(self, x: int, y: int) -> bool:
        return self.tensor.left.le(x, self.cols[y])

    def __le__(self, other: "BiIdeal") -> bool:
        leq = self.tensor.left.leq_rows
        return all(leq[c][d] for c, d in zip(self.cols, other.cols))

    def __or__(self, other: "BiIdeal") -> "BiIdeal":
        return self.tensor.join(self, other)

    def __and__(self, other: "BiIdeal") -> "BiIdeal":
        return self.tensor.meet(self, other)

    @property
    def pairs(self) -> int:
        """Bitset over left × right with bit x·|right| + y."""

        width = self.tensor.right.n
        mask = 0
        for y, bound in enumerate(self.cols):
            for x in self.tensor.left.down(bound):
                mask |= 1 << (x * width + y)
        return mask

    def describe(self) -> dict[str, str]:
        return {
            self.tensor.right.names[y]: self.tensor.left.names[bound]
            for y, bound in enumerate(self.cols)
        }


def require_factorization(quantale: Quantale) -> None:
    """Summary: Raise unless Q is balanced and R(Q) = Q·1.

    Importance: These are the hypotheses under which μ factors through the tensor.
    Alternatives: Compute μ₀ anyway and let the validity assertion fail.
    """

    flags = quantale.classification
    if not flags.balanced:
        raise PreconditionError("reduced multiplication requires (B)")
    ones = {quantale.times_top(a) for a in range(quantale.n)}
    if ones != quantale.rs_set:
        raise PreconditionError("reduced multiplication requires R(Q) = Q1")


def _base(tensor: TensorLattice) -> Quantale:
    if tensor.quantale is None:
        raise PreconditionError(f"{tensor.label} is not the tensor of a quantale over R(Q)")
    return tensor.quantale


def mu0(tensor: TensorLattice, ideal: BiIdeal) -> int:
    """Summary: Reduced multiplication μ₀(I) = ⋁{x·y : (x, y) ∈ I}.

    Importance: On pure tensors it recovers the product a·b.
    Alternatives: Join products over the explicit pair set.
    """

    quantale = _base(tensor)
    require_factorization(quantale)
    return quantale.frame.join_all(
        quantale.product(bound, y) for y, bound in enumerate(ideal.cols)
    )


def mu0_star(tensor: TensorLattice, element: int) -> BiIdeal:
    """Summary: The right adjoint μ₀*(a) = {(x, y) : x·y ≤ a}.

    Importance: Its validity as a bi-ideal is asserted, not assumed.
    Alternatives: Compute it as the join of all bi-ideals below a by enumeration.
    """

    return _mu0_star_table(tensor)[element]


def _mu0_star_table(tensor: TensorLattice) -> tuple[BiIdeal, ...]:
    cached = tensor.memo.get("mu0_star")
    if cached is not None:
        return cached
    quantale = _base(tensor)
    require_factorization(quantale)
    table = []
    for a in range(quantale.n):
        cols = tuple(quantale.residual_left[y][a] for y in range(quantale.n))
        if not tensor.is_closed(cols):
            raise InconsistencyError(
                f"μ₀*({quantale.names[a]}) is not a bi-ideal although Q is balanced"
            )
        table.append(BiIdeal(tensor, cols))
    result = tuple(table)
    tensor.memo["mu0_star"] = result
    return result


def brute_force_adjoint(tensor: TensorLattice, element: int, ideals: Sequence[BiIdeal]) -> BiIdeal:
    """Join of all enumerated bi-ideals I with μ₀(I) ≤ a."""

    quantale = _base(tensor)
    below = [ideal for ideal in ideals if quantale.frame.le(mu0(tensor, ideal), element)]
    return tensor.join(*below)


def is_multiplicative(tensor: TensorLattice) -> Verdict:
    """Summary: Check that μ₀* preserves binary joins and the bottom.

    Importance: Multiplicativity is what makes Q the quantale of an open groupoid.
    Alternatives: Check joins of all subsets of Q.
    """

    quantale = _base(tensor)
    names = quantale.names
    table = _mu0_star_table(tensor)
    if table[quantale.bot] != tensor.bottom:
        return Verdict.fail(names[quantale.bot], detail="μ₀*(0) is not the bottom bi-ideal")
    for a, b in itertools.combinations(range(quantale.n), 2):
        joined = quantale.frame.join_rows[a][b]
        if table[joined] != tensor.join(table[a], table[b]):
            return Verdict.fail(names[a], names[b], detail="μ₀*(a∨b) ≠ μ₀*(a) ∨ μ₀*(b)")
    return Verdict.ok()


def semicategory_check(tensor: TensorLattice) -> list[Finding]:
    """Summary: Verify μ₀*∘d* = π₁*∘d* and μ₀*∘r* = π₂*∘r*, both as frame maps.

    Importance: These equalities make the graph of Q an involutive semicategory.
    Alternatives: Check only on the top element.
    """

    quantale = _base(tensor)
    require_factorization(quantale)
    names = quantale.names
    section = "semicategory"
    findings = []

    first = Verdict.ok()
    second = Verdict.ok()
    for z in quantale.rs:
        if mu0_star(tensor, z) != tensor.pure(z, quantale.top) and first:
            first = Verdict.fail(names[z])
        z_star = quantale.star(z)
        if mu0_star(tensor, z_star) != tensor.pure(quantale.top, z_star) and second:
            second = Verdict.fail(names[z])
    findings.append(Finding.from_verdict(section, "μ₀*(z) = z⊗1", first, theorem=True))
    findings.append(Finding.from_verdict(section, "μ₀*(z*) = 1⊗z*", second, theorem=True))
    for label, star in (("z ↦ μ₀*(z)", False), ("z ↦ μ₀*(z*)", True)):
        verdict = _frame_hom_into_tensor(tensor, quantale, star)
        findings.append(
            Finding.from_verdict(section, f"{label} is a frame map", verdict, theorem=True)
        )
    return findings


def _frame_hom_into_tensor(tensor: TensorLattice, quantale: Quantale, star: bool) -> Verdict:
    names = quantale.names
    frame = quantale.frame

    def image(z: int) -> BiIdeal:
        return mu0_star(tensor, quantale.star(z) if star else z)

    if image(quantale.bot) != tensor.bottom:
        return Verdict.fail(names[quantale.bot])
    if image(quantale.top) != tensor.top:
        return Verdict.fail(names[quantale.top])
    for z, w in itertools.combinations(quantale.rs, 2):
        if image(frame.join_rows[z][w]) != tensor.join(image(z), image(w)):
            return Verdict.fail(names[z], names[w], detail="join")
        if image(frame.meet_rows[z][w]) != tensor.meet(image(z), image(w)):
            return Verdict.fail(names[z], names[w], detail="meet")
    return Verdict.ok()


@dataclass(frozen=True)
class PushoutComparison:
    """Summary: Outcome of comparing bi-ideals with opens of the point pullback."""

    verdict: Verdict
    ideal_count: int
    point_count: int


def tensor_points(tensor: TensorLattice) -> tuple[tuple[int, int], ...]:
    """Pairs of join-irreducibles whose restrictions to the scalars agree."""

    points = []
    for p in tensor.left.join_irreducibles:
        for q in tensor.right.join_irreducibles:
            if all(
                (act_left[p] == p) == (act_right[q] == q)
                for act_left, act_right in zip(tensor.left_action, tensor.right_action)
            ):
                points.append((p, q))
    return tuple(points)


def pushout_oracle(tensor: TensorLattice, cap: int) -> PushoutComparison:
    """Summary: Compare the bi-ideal lattice with the opens of the pullback of point spaces.

    Importance: Independent computation of the frame pushout for small instances.
    Alternatives: Trust the closure rules to present the pushout.
    """

    ideals = tensor.enumerate_ideals(cap)
    points = tensor_points(tensor)
    bit = {point: offset for offset, point in enumerate(points)}

    def extent(ideal: BiIdeal) -> int:
        return sum(1 << bit[(p, q)] for p, q in points if ideal.contains(p, q))

    rectangles = {
        sum(
            1 << bit[(p, q)]
            for p, q in points
            if tensor.left.le(p, a) and tensor.right.le(q, b)
        )
        for a in range(tensor.left.n)
        for b in range(tensor.right.n)
    }
    opens = {0}
    for rectangle in rectangles:
        opens |= {existing | rectangle for existing in opens}
    extents = [extent(ideal) for ideal in ideals]
    if len(set(extents)) != len(ideals):
        return PushoutComparison(
            Verdict.fail(detail="distinct bi-ideals share the same point extent"),
            len(ideals),
            len(points),
        )
    if set(extents) != opens:
        return PushoutComparison(
            Verdict.fail(detail=f"{len(ideals)} bi-ideals vs {len(opens)} pullback opens"),
            len(ideals),
            len(points),
        )
    for first, second in itertools.product(range(len(ideals)), repeat=2):
        included = extents[first] & ~extents[second] == 0
        if (ideals[first] <= ideals[second]) != included:
            return PushoutComparison(
                Verdict.fail(detail="order mismatch"), len(ideals), len(points)
            )
    return PushoutComparison(Verdict.ok(), len(ideals), len(points))


def _galois_closure(tensor: TensorLattice, pairs: Iterable[tuple[int, int]]) -> Pairs:
    """Least element of the sup-lattice tensor left⊗right containing the given pairs."""

    left, right = tensor.left, tensor.right
    current = set(pairs)
    current.update((x, right.bot) for x in range(left.n))
    current.update((left.bot, y) for y in range(right.n))
    # each column and each row becomes a principal down-set
    while True:
        grown = set(current)
        for y in range(right.n):
            bound = left.join_all(x for x in range(left.n) if (x, y) in grown)
            grown.update((x, y) for x in left.down(bound))
        for x in range(left.n):
            bound = right.join_all(y for y in range(right.n) if (x, y) in grown)
            grown.update((x, y) for y in right.down(bound))
        if grown == current:
            return frozenset(current)
        current = grown


def sup_tensor_elements(tensor: TensorLattice) -> tuple[Pairs, ...]:
    """Summary: Every element of the sup-lattice tensor left⊗right as an explicit pair set.

    Importance: Elements are the down-closed sets closed under joins in each coordinate, so no
    scalar relation is built in.
    Alternatives: Present the tensor through column bounds like the bi-ideal engine.
    """

    pure = {
        _galois_closure(tensor, [(p, q)])
        for p in tensor.left.join_irreducibles
        for q in tensor.right.join_irreducibles
    }
    bottom = _galois_closure(tensor, [])
    seen = {bottom}
    queue = deque([bottom])
    while queue:
        current = queue.popleft()
        for generator in pure:
            candidate = _galois_closure(tensor, current | generator)
            if candidate not in seen:
                seen.add(candidate)
                queue.append(candidate)
                if len(seen) > IDEAL_LIMIT:
                    raise CapExceededError(f"more than {IDEAL_LIMIT} elements of {tensor.label}")
    return tuple(seen)


@dataclass(frozen=True)
class QuotientComparison:
    """Summary: Outcome of comparing bi-ideals with the quotient of the sup-lattice tensor."""

    verdict: Verdict
    ideal_count: int
    tensor_count: int
    quotient_count: int


def quotient_oracle(tensor: TensorLattice, cap: int) -> QuotientComparison:
    """Summary: Quotient left⊗right by (a·z)⊗b = a⊗(z·b) and compare with the bi-ideals.

    Importance: The quotient is read off as the elements t with u ≤ t ⇔ v ≤ t for every
    relation u = v, which is the frame pushout over the scalars built without the closure rules.
    Alternatives: Compare against the point pullback, which only agrees on spatial instances.
    """

    ideals = tensor.enumerate_ideals(cap)
    elements = sup_tensor_elements(tensor)
    relations = {
        (
            _galois_closure(tensor, [(act_left[a], b)]),
            _galois_closure(tensor, [(a, act_right[b])]),
        )
        for act_left, act_right in zip(tensor.left_action, tensor.right_action)
        for a in range(tensor.left.n)
        for b in range(tensor.right.n)
    }
    relations = {(u, v) for u, v in relations if u != v}
    width = tensor.right.n
    quotient = {
        sum(1 << (x * width + y) for x, y in element)
        for element in elements
        if all((u <= element) == (v <= element) for u, v in relations)
    }
    logger.info(
        "Quotient of %s: %d of %d elements, %d relations",
        tensor.label,
        len(quotient),
        len(elements),
        len(relations),
    )
    extents = [ideal.pairs for ideal in ideals]
    counts = (len(ideals), len(elements), len(quotient))
    stray = next((ideal for ideal in ideals if ideal.pairs not in quotient), None)
    if stray is not None:
        return QuotientComparison(
            Verdict.fail(_generator_label(tensor, stray), detail="bi-ideal outside the quotient"),
            *counts,
        )
    if len(set(extents)) != len(quotient):
        return QuotientComparison(
            Verdict.fail(detail=f"{len(ideals)} bi-ideals vs {len(quotient)} quotient elements"),
            *counts,
        )
    for first, second in itertools.product(range(len(ideals)), repeat=2):
        included = extents[first] & ~extents[second] == 0
        if (ideals[first] <= ideals[second]) != included:
            return QuotientComparison(Verdict.fail(detail="order mismatch"), *counts)
    return QuotientComparison(Verdict.ok(), *counts)


def tensor_image(
    ideal: BiIdeal,
    target: TensorLattice,
    left_map: LatticeMap,
    right_map: LatticeMap | None = None,
) -> BiIdeal:
    """Summary: Image of a bi-ideal under f⊗g, the closure of {(f(x), g(y))}.

    Importance: Evaluates j⊗id and j⊗j without enumerating either tensor.
    Alternatives: Map every explicit pair and close the result.
    """

    cols = [target.left.bot] * target.right.n
    join = target.left.join_rows
    for y, bound in enumerate(ideal.cols):
        image_y = right_map(y) if right_map is not None else y
        value = left_map(bound)
        for below in target.right.down(image_y):
            cols[below] = join[cols[below]][value]
    return BiIdeal(target, target.close(cols))


def _generator_label(tensor: TensorLattice, ideal: BiIdeal) -> str:
    pieces = [
        f"{tensor.left.names[bound]}⊗{tensor.right.names[y]}"
        for y, bound in enumerate(ideal.cols)
        if y in tensor.right.join_irreducibles and bound != tensor.left.bot
    ]
    return " ∨ ".join(pieces) or "0"


def injectivity(
    source: TensorLattice,
    target: TensorLattice,
    left_map: LatticeMap,
    right_map: LatticeMap | None = None,
) -> Verdict:
    """Summary: Exact injectivity of a tensor map via join-prime generators.

    Importance: F is injective iff F(g) ≰ F(κ(g)) for each join-irreducible g, where κ(g) is
    the join of all generators not above g; no enumeration of the tensor is needed.
    Alternatives: Enumerate all bi-ideals and compare images pairwise.
    """

    generators = source.generators
    for g in source.irreducible_generators:
        rest = source.join(*(h for h in generators if not g <= h))
        image_g = tensor_image(g, target, left_map, right_map)
        image_rest = tensor_image(rest, target, left_map, right_map)
        if image_g <= image_rest:
            return Verdict.fail(
                _generator_label(source, g),
                _generator_label(source, rest),
                detail="image of generator lies below image of its complement",
            )
    return Verdict.ok(detail=f"{len(source.irreducible_generators)} join-irreducible generators")


def sampled_injectivity(
    source: TensorLattice,
    target: TensorLattice,
    left_map: LatticeMap,
    samples: Sequence[BiIdeal],
) -> Verdict:
    """Summary: Check F_*∘F = id on the given sample bi-ideals.

    Importance: F_*(K) is the join of generators mapping below K, so each sample is exact.
    Alternatives: Compare images of random pairs for equality.
    """

    images = {g: tensor_image(g, target, left_map) for g in source.generators}
    for ideal in samples:
        image = tensor_image(ideal, target, left_map)
        recovered = source.join(*(g for g, value in images.items() if value <= image))
        if recovered != ideal:
            return Verdict.fail(_generator_label(source, ideal), detail="F_*F(I) ≠ I")
    return Verdict.ok(detail=f"{len(samples)} samples")


def random_samples(tensor: TensorLattice, count: int, seed: int) -> list[BiIdeal]:
    """Pure generators, μ₀* images when defined, and seeded random joins of generators."""

    rng = np.random.default_rng(seed)
    samples = list(tensor.generators)
    if tensor.quantale is not None:
        try:
            samples.extend(_mu0_star_table(tensor))
        except PreconditionError:
            logger.debug("μ₀* unavailable for sampling on %s", tensor.label)
    generators = tensor.generators
    for _ in range(count):
        if not generators:
            break
        size = int(rng.integers(1, min(4, len(generators)) + 1))
        picks = rng.choice(len(generators), size=size, replace=False)
        samples.append(tensor.join(*(generators[int(k)] for k in picks)))
    return samples
