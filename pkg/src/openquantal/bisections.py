"""Summary: Local bisections of open quantal frames, their calculus, and the semigroup ℬ(Q).

Importance: Bisections are the bridge from open quantal frames to inverse semigroups,
and every cover check starts from them.
Alternatives: Work only with partial units, which exist only for inverse quantal frames.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from openquantal.errors import InconsistencyError, PreconditionError, SemigroupError
from openquantal.groupoid import TopGroupoid, quantale_of
from openquantal.lattice import LatticeMap, preserves_joins
from openquantal.models import Finding, Verdict
from openquantal.quantale import Quantale, partial_units, support_check
from openquantal.semigroup import (
    ACPWitness,
    InverseSemigroup,
    acp_check,
    validate_inverse_semigroup,
)
from openquantal.tensor import TensorLattice, is_multiplicative

logger = logging.getLogger(__name__)

SECTION = "bisections"


def _bits(mask: int) -> list[int]:
    return [position for position in range(mask.bit_length()) if mask >> position & 1]


@dataclass(frozen=True)
class Bisection:
    """Summary: A local bisection (U, s*) with derived codomain V, t*, and α*.

    Importance: Identity is (U, s*); the derived data is cached for products and actions.
    Alternatives: Recompute V and t* on every use.
    """

    base: Quantale = field(compare=False, repr=False)
    domain: int
    sstar: tuple[int, ...]
    codomain: int = field(compare=False)
    tstar: tuple[int, ...] = field(compare=False, repr=False)
    alpha: tuple[tuple[int, int], ...] = field(compare=False, repr=False)

    def label(self) -> str:
        names = self.base.names
        return f"({names[self.domain]}→{names[self.codomain]})"

    def describe(self) -> dict[str, object]:
        names = self.base.names
        return {
            "U": names[self.domain],
            "V": names[self.codomain],
            "s*": {names[a]: names[value] for a, value in enumerate(self.sstar)},
        }


def _bisection_failure(quantale: Quantale, table: Sequence[int]) -> Verdict | None:
    frame = quantale.frame
    names = frame.names
    domain = table[quantale.top]
    if domain not in quantale.rs_set:
        return Verdict.fail(names[domain], detail="s*(1) not right-sided")
    for a, value in enumerate(table):
        if value not in quantale.rs_set or not frame.le(value, domain):
            return Verdict.fail(names[a], detail="s*(a) outside ↓U ∩ R(Q)")
    joins = preserves_joins(LatticeMap(frame, frame, tuple(table), "s*"))
    if not joins:
        return joins
    for a, b in itertools.combinations(range(quantale.n), 2):
        if table[frame.meet_rows[a][b]] != frame.meet_rows[table[a]][table[b]]:
            return Verdict.fail(names[a], names[b], detail="s* does not preserve meets")
    for z in quantale.rs:
        if table[z] != frame.meet_rows[z][domain]:
            return Verdict.fail(names[z], detail="section law s*(z) = z ∧ U fails")
    return None


def _realize(quantale: Quantale, table: Sequence[int]) -> Bisection | None:
    """Summary: Build a bisection from s* if both laws hold, else None.

    Importance: V is the least right-sided z with s*(z*) = U, and z ↦ s*(z*) must be an
    order isomorphism from ↓V onto ↓U inside R(Q).
    Alternatives: Accept any frame map satisfying the section law.
    """

    if _bisection_failure(quantale, table) is not None:
        return None
    frame = quantale.frame
    domain = table[quantale.top]
    range_map = {z: table[quantale.star(z)] for z in quantale.rs}
    codomain = frame.meet_all(z for z, value in range_map.items() if value == domain)
    below_v = [z for z in quantale.rs if frame.le(z, codomain)]
    below_u = {z for z in quantale.rs if frame.le(z, domain)}
    alpha = {z: range_map[z] for z in below_v}
    if set(alpha.values()) != below_u or len(below_v) != len(below_u):
        return None
    for z, w in itertools.product(below_v, repeat=2):
        if frame.le(z, w) != frame.le(alpha[z], alpha[w]):
            return None
    inverse_alpha = {value: z for z, value in alpha.items()}
    tstar = tuple(inverse_alpha[value] for value in table)
    return Bisection(
        base=quantale,
        domain=domain,
        sstar=tuple(table),
        codomain=codomain,
        tstar=tstar,
        alpha=tuple(sorted(alpha.items())),
    )


def _require_open(quantale: Quantale) -> None:
    if not quantale.classification.is_open:
        raise PreconditionError("bisections require an open quantal frame")


def _candidate_tables(quantale: Quantale, domain: int) -> Iterator[tuple[int, ...]]:
    frame = quantale.frame
    generators = frame.join_irreducibles
    options: list[list[int]] = []
    for p in generators:
        if p in quantale.rs_set:
            options.append([frame.meet_rows[p][domain]])
            continue
        bound = frame.meet_rows[quantale.times_top(p)][domain]
        options.append([w for w in quantale.rs if frame.le(w, bound)])

    chosen: list[int] = []

    def walk(position: int) -> Iterator[tuple[int, ...]]:
        if position == len(generators):
            yield tuple(
                frame.join_all(
                    chosen[offset] for offset, p in enumerate(generators) if frame.le(p, a)
                )
                for a in range(quantale.n)
            )
            return
        p = generators[position]
        for value in options[position]:
            consistent = all(
                frame.le(chosen[offset], value)
                for offset in range(position)
                if frame.le(generators[offset], p)
            )
            if consistent:
                chosen.append(value)
                yield from walk(position + 1)
                chosen.pop()

    yield from walk(0)


def enumerate_bisections(quantale: Quantale) -> tuple[Bisection, ...]:
    """Summary: All local bisections, by choosing s* on join-irreducibles per domain U.

    Importance: On right-sided generators the value is forced to p ∧ U; elsewhere it ranges
    over right-sided elements below p·1 ∧ U, since p ≤ p·1 in a semiopen quantal frame.
    Alternatives: Enumerate all frame maps Q → ↓U and filter by the section law.
    """

    _require_open(quantale)
    found: list[Bisection] = []
    seen: set[tuple[int, tuple[int, ...]]] = set()
    for domain in quantale.rs:
        for table in _candidate_tables(quantale, domain):
            if table[quantale.top] != domain or (domain, table) in seen:
                continue
            bisection = _realize(quantale, table)
            if bisection is not None:
                seen.add((domain, table))
                found.append(bisection)
    logger.info("Found %d bisections of %s", len(found), quantale.title or "Q")
    return tuple(found)


def bisection_inverse(sigma: Bisection) -> Bisection:
    """σ⁻¹ with s*(a) = t*_σ(a*)."""

    quantale = sigma.base
    table = tuple(sigma.tstar[quantale.star(a)] for a in range(quantale.n))
    inverse = _realize(quantale, table)
    if inverse is None:
        raise InconsistencyError(f"inverse of {sigma.label()} is not a bisection")
    return inverse


@dataclass(frozen=True)
class ProductOutcome:
    """Summary: The product στ when its formula preserves joins, else the failure."""

    product: Bisection | None
    verdict: Verdict


def bisection_product(sigma: Bisection, tau: Bisection) -> ProductOutcome:
    """Summary: στ with s*(a) = ⋁_x s*_σ(x ∧ s*_τ(x\\a)*).

    Importance: For fixed x the largest y with xy ≤ a is the residual x\\a, so the join over
    pairs with xy ≤ a collapses to one term per x.
    Alternatives: Join over all pairs (x, y) with xy ≤ a.
    """

    quantale = sigma.base
    if tau.base is not quantale:
        raise PreconditionError("bisections over different quantales")
    frame = quantale.frame
    residual = quantale.residual_right
    table = tuple(
        frame.join_all(
            sigma.sstar[frame.meet_rows[x][quantale.star(tau.sstar[residual[x][a]])]]
            for x in range(quantale.n)
        )
        for a in range(quantale.n)
    )
    verdict = preserves_joins(LatticeMap(frame, frame, table, "f"))
    if not verdict:
        return ProductOutcome(None, verdict)
    product = _realize(quantale, table)
    if product is None:
        raise InconsistencyError(
            f"product {sigma.label()}{tau.label()} preserves joins but is not a bisection"
        )
    expected = sigma.sstar[quantale.star(tau.domain)]
    if product.domain != expected:
        raise InconsistencyError("domain of στ differs from s*_σ(U_τ*)")
    return ProductOutcome(product, Verdict.ok())


def action(sigma: Bisection, element: int) -> int:
    """σ·a = ⋁_x s*(x) ∧ (x*\\a)."""

    quantale = sigma.base
    frame = quantale.frame
    residual = quantale.residual_right
    return frame.join_all(
        frame.meet_rows[sigma.sstar[x]][residual[quantale.star(x)][element]]
        for x in range(quantale.n)
    )


def right_action(sigma: Bisection, element: int) -> int:
    """a·σ⁻¹ = ⋁_x x ∧ s*(x\\a)*."""

    quantale = sigma.base
    frame = quantale.frame
    residual = quantale.residual_right
    return frame.join_all(
        frame.meet_rows[x][quantale.star(sigma.sstar[residual[x][element]])]
        for x in range(quantale.n)
    )


def act_right(sigma: Bisection, element: int) -> int:
    """a·σ = (σ⁻¹·a*)*."""

    quantale = sigma.base
    return quantale.star(action(bisection_inverse(sigma), quantale.star(element)))


def unit_bisection(quantale: Quantale) -> Bisection | None:
    """ε = (1, υ), present when υ is a bisection."""

    return _realize(quantale, quantale.upsilon_table)


def formula_pack(sigma: Bisection) -> Verdict:
    """Summary: Check the identities every bisection satisfies.

    Importance: U = s*(1), V = t*(1), α*(a) = s*(a*) on ↓V, s*(x) = s*(x ∧ V*), and
    t*(x) = t*(x ∧ U); a failure means the enumeration is wrong.
    Alternatives: Trust the construction.
    """

    quantale = sigma.base
    frame = quantale.frame
    names = quantale.names
    if sigma.sstar[quantale.top] != sigma.domain:
        return Verdict.fail(sigma.label(), detail="U ≠ s*(1)")
    if sigma.tstar[quantale.top] != sigma.codomain:
        return Verdict.fail(sigma.label(), detail="V ≠ t*(1)")
    for z, value in sigma.alpha:
        if value != sigma.sstar[quantale.star(z)]:
            return Verdict.fail(sigma.label(), names[z], detail="α*(a) ≠ s*(a*)")
    v_star = quantale.star(sigma.codomain)
    for x in range(quantale.n):
        if sigma.sstar[x] != sigma.sstar[frame.meet_rows[x][v_star]]:
            return Verdict.fail(sigma.label(), names[x], detail="s*(x) ≠ s*(x ∧ V*)")
        if sigma.tstar[x] != sigma.tstar[frame.meet_rows[x][sigma.domain]]:
            return Verdict.fail(sigma.label(), names[x], detail="t*(x) ≠ t*(x ∧ U)")
    return Verdict.ok()


@dataclass(frozen=True)
class BisectionSemigroup:
    """Summary: ℬ(Q) with its partial product table and, when total, the inverse semigroup.

    Importance: Product failures are data, so the table records None for undefined pairs.
    Alternatives: Raise on the first undefined product.
    """

    quantale: Quantale
    elements: tuple[Bisection, ...]
    table: tuple[tuple[int | None, ...], ...]
    inverse: tuple[int, ...]
    unit: int | None
    semigroup: InverseSemigroup | None = None
    acp: ACPWitness | None = None

    def index(self, sigma: Bisection) -> int:
        return self.elements.index(sigma)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(f"σ{offset}" for offset in range(len(self.elements)))

    @property
    def total(self) -> bool:
        return all(value is not None for row in self.table for value in row)


def bisection_table(
    quantale: Quantale, bisections: Sequence[Bisection] | None = None
) -> BisectionSemigroup:
    """Summary: Multiply every pair of bisections and invert each one.

    Importance: Feeds the inverse semigroup validation and every law check.
    Alternatives: Multiply on demand and cache nothing.
    """

    elements = tuple(bisections if bisections is not None else enumerate_bisections(quantale))
    position = {sigma: offset for offset, sigma in enumerate(elements)}
    rows = []
    for sigma in elements:
        row: list[int | None] = []
        for tau in elements:
            outcome = bisection_product(sigma, tau)
            if outcome.product is None:
                row.append(None)
            elif outcome.product not in position:
                raise InconsistencyError("product of bisections missing from the enumeration")
            else:
                row.append(position[outcome.product])
        rows.append(tuple(row))
    inverse = tuple(position[bisection_inverse(sigma)] for sigma in elements)
    unit = unit_bisection(quantale)
    return BisectionSemigroup(
        quantale,
        elements,
        tuple(rows),
        inverse,
        position.get(unit) if unit is not None else None,
    )


@dataclass(frozen=True)
class WeakMultiplicativity:
    """Summary: Verdict of the weak multiplicativity conditions and the assembled ℬ(Q)."""

    verdict: Verdict
    semigroup: BisectionSemigroup
    findings: list[Finding]

    @property
    def holds(self) -> bool:
        return self.verdict.holds


def weak_multiplicativity_check(
    quantale: Quantale,
    bisections: Sequence[Bisection] | None = None,
    subset_cap: int = 4,
) -> WeakMultiplicativity:
    """Summary: υ and every σ·(−) preserve joins and the bisection product is associative.

    Importance: On success ℬ(Q) is validated as an ACP whose natural order is restriction,
    whose idempotents match R(Q), and whose action is monotone.
    Alternatives: Check only the three defining conditions.
    """

    _require_open(quantale)
    table = bisection_table(quantale, bisections)
    names = table.names
    findings: list[Finding] = []
    upsilon = preserves_joins(quantale.upsilon_map)
    findings.append(Finding.from_verdict(SECTION, "υ preserves joins", upsilon))
    actions = _actions_preserve_joins(table.elements)
    findings.append(Finding.from_verdict(SECTION, "σ·(−) preserves joins", actions))
    products = _associativity(table)
    findings.append(Finding.from_verdict(SECTION, "bisection product associative", products))
    verdict = Verdict.ok()
    for candidate in (upsilon, actions, products):
        if not candidate:
            verdict = candidate
            break
    if not verdict:
        return WeakMultiplicativity(verdict, table, findings)

    try:
        semigroup = validate_inverse_semigroup(
            names,
            [list(row) for row in table.table],
            table.inverse,
            f"ℬ({quantale.title or 'Q'})",
        )
    except SemigroupError as exc:
        failure = Verdict.fail(*exc.witness, detail=str(exc))
        findings.append(
            Finding.from_verdict(SECTION, "ℬ(Q) inverse semigroup", failure, theorem=True)
        )
        return WeakMultiplicativity(failure, table, findings)
    acp = acp_check(semigroup, subset_cap)
    table = BisectionSemigroup(
        quantale, table.elements, table.table, table.inverse, table.unit, semigroup, acp
    )
    acp_verdict = (
        Verdict.ok()
        if acp.holds
        else Verdict.fail(*acp.complete.witness, *acp.distributive.witness)
    )
    for name, verdict in (
        ("ℬ(Q) is an ACP", acp_verdict),
        ("natural order = restriction", _restriction_order(table, semigroup)),
        ("E(ℬ(Q)) ≅ R(Q)", _idempotents_match(table, semigroup)),
        ("action monotone", _action_monotone(table, semigroup)),
    ):
        findings.append(Finding.from_verdict(SECTION, name, verdict, theorem=True))
    return WeakMultiplicativity(Verdict.ok(), table, findings)


def _actions_preserve_joins(elements: Sequence[Bisection]) -> Verdict:
    for offset, sigma in enumerate(elements):
        quantale = sigma.base
        frame = quantale.frame
        mapping = LatticeMap(frame, frame, tuple(action(sigma, a) for a in range(quantale.n)))
        verdict = preserves_joins(mapping)
        if not verdict:
            return Verdict.fail(
                f"σ{offset}", *verdict.witness, detail="σ·(−) not join-preserving"
            )
    return Verdict.ok()


def _associativity(table: BisectionSemigroup) -> Verdict:
    names = table.names
    rows = table.table
    for first, second in itertools.product(range(len(rows)), repeat=2):
        if rows[first][second] is None:
            return Verdict.fail(names[first], names[second], detail="product undefined")
    for first, second, third in itertools.product(range(len(rows)), repeat=3):
        left = rows[rows[first][second]][third]
        right = rows[first][rows[second][third]]
        if left != right:
            return Verdict.fail(names[first], names[second], names[third])
    return Verdict.ok()


def _restricts(quantale: Quantale, sigma: Bisection, tau: Bisection) -> bool:
    frame = quantale.frame
    if not frame.le(sigma.domain, tau.domain):
        return False
    return all(
        sigma.sstar[a] == frame.meet_rows[tau.sstar[a]][sigma.domain] for a in range(quantale.n)
    )


def _restriction_order(table: BisectionSemigroup, semigroup: InverseSemigroup) -> Verdict:
    for first, second in itertools.product(range(len(table.elements)), repeat=2):
        restricted = _restricts(table.quantale, table.elements[first], table.elements[second])
        if semigroup.le(first, second) != restricted:
            return Verdict.fail(table.names[first], table.names[second])
    return Verdict.ok()


def _idempotents_match(table: BisectionSemigroup, semigroup: InverseSemigroup) -> Verdict:
    quantale = table.quantale
    domains = {e: table.elements[e].domain for e in semigroup.idempotents}
    if sorted(domains.values()) != sorted(quantale.rs):
        return Verdict.fail(detail="idempotent domains differ from R(Q)")
    for e, f in itertools.product(domains, repeat=2):
        if semigroup.le(e, f) != quantale.frame.le(domains[e], domains[f]):
            return Verdict.fail(table.names[e], table.names[f], detail="order mismatch")
    return Verdict.ok()


def _action_monotone(table: BisectionSemigroup, semigroup: InverseSemigroup) -> Verdict:
    quantale = table.quantale
    frame = quantale.frame
    values = [[action(sigma, a) for a in range(quantale.n)] for sigma in table.elements]
    for offset, row in enumerate(values):
        for a, b in itertools.product(range(quantale.n), repeat=2):
            if frame.le(a, b) and not frame.le(row[a], row[b]):
                return Verdict.fail(table.names[offset], quantale.names[a], quantale.names[b])
    for first, second in itertools.product(range(len(values)), repeat=2):
        if not semigroup.le(first, second):
            continue
        for a in range(quantale.n):
            if not frame.le(values[first][a], values[second][a]):
                return Verdict.fail(table.names[first], table.names[second], quantale.names[a])
    return Verdict.ok()


def bisection_laws(table: BisectionSemigroup, weakly_multiplicative: bool) -> list[Finding]:
    """Summary: Per-instance checks of the bisection identities.

    Importance: Formula packs, (στ)⁻¹ = τ⁻¹σ⁻¹, and (σ·a)* = a*·σ⁻¹ always apply; the
    unit and restriction laws are gated on weak multiplicativity.
    Alternatives: Check only the laws used downstream.
    """

    quantale = table.quantale
    names = table.names
    rows = table.table
    elements = table.elements
    findings = []

    verdict = Verdict.ok()
    for offset, sigma in enumerate(elements):
        pack = formula_pack(sigma)
        if not pack:
            verdict = Verdict.fail(names[offset], *pack.witness[1:], detail=pack.detail)
            break
    findings.append(Finding.from_verdict(SECTION, "formula pack", verdict, theorem=True))

    verdict = Verdict.ok()
    for first, second in itertools.product(range(len(elements)), repeat=2):
        product = rows[first][second]
        if product is None:
            continue
        reversed_product = rows[table.inverse[second]][table.inverse[first]]
        if reversed_product != table.inverse[product]:
            verdict = Verdict.fail(names[first], names[second])
            break
    findings.append(Finding.from_verdict(SECTION, "(στ)⁻¹ = τ⁻¹σ⁻¹", verdict, theorem=True))

    verdict = Verdict.ok()
    for offset, sigma in enumerate(elements):
        for a in range(quantale.n):
            if quantale.star(action(sigma, a)) != right_action(sigma, quantale.star(a)):
                verdict = Verdict.fail(names[offset], quantale.names[a])
                break
        if not verdict:
            break
    findings.append(Finding.from_verdict(SECTION, "(σ·a)* = a*·σ⁻¹", verdict, theorem=True))

    gated = [
        "σσ⁻¹ = (U, υ ∧ U)",
        "σ(σ⁻¹σ) = σ",
        "σε = σ",
        "ε⁻¹ = ε",
        "ε·a = a",
    ]
    if not weakly_multiplicative:
        reason = "not weakly multiplicative"
        findings.extend(Finding.skipped(SECTION, name, reason) for name in gated)
        return findings

    frame = quantale.frame
    verdict = Verdict.ok()
    for offset, sigma in enumerate(elements):
        idempotent = elements[rows[offset][table.inverse[offset]]]
        expected = tuple(
            frame.meet_rows[quantale.upsilon_table[a]][sigma.domain] for a in range(quantale.n)
        )
        if idempotent.domain != sigma.domain or idempotent.sstar != expected:
            verdict = Verdict.fail(names[offset])
            break
    findings.append(Finding.from_verdict(SECTION, gated[0], verdict, theorem=True))

    verdict = Verdict.ok()
    for offset in range(len(elements)):
        restricted = rows[offset][rows[table.inverse[offset]][offset]]
        if restricted != offset:
            verdict = Verdict.fail(names[offset])
            break
    findings.append(Finding.from_verdict(SECTION, gated[1], verdict, theorem=True))

    unit = table.unit
    if unit is None:
        findings.extend(
            Finding.from_verdict(
                SECTION, name, Verdict.fail(detail="no unit bisection"), theorem=True
            )
            for name in gated[2:]
        )
        return findings
    verdict = Verdict.ok()
    for offset in range(len(elements)):
        if rows[offset][unit] != offset or rows[unit][offset] != offset:
            verdict = Verdict.fail(names[offset])
            break
    findings.append(Finding.from_verdict(SECTION, gated[2], verdict, theorem=True))
    verdict = Verdict.ok() if table.inverse[unit] == unit else Verdict.fail(names[unit])
    findings.append(Finding.from_verdict(SECTION, gated[3], verdict, theorem=True))
    epsilon = elements[unit]
    verdict = Verdict.ok()
    for a in range(quantale.n):
        if action(epsilon, a) != a or act_right(epsilon, a) != a:
            verdict = Verdict.fail(quantale.names[a])
            break
    findings.append(Finding.from_verdict(SECTION, gated[4], verdict, theorem=True))
    return findings


SUFFICIENT_CONDITION = "s*_σ(a*·τ⁻¹) ≤ s*_σ(s*_τ(a*)*)"


def sufficient_condition_check(
    quantale: Quantale, bisections: Sequence[Bisection] | None = None
) -> list[Finding]:
    """Summary: Test s*_σ(a*·τ⁻¹) ≤ s*_σ(s*_τ(a*)*) on right-sided a, and discreteness of R(Q).

    Importance: The inequality gives an associative bisection product; a finite T1 locale is
    read as a discrete R(Q), which makes the condition automatic.
    Alternatives: Skip straight to the associativity check.
    """

    _require_open(quantale)
    elements = tuple(bisections if bisections is not None else enumerate_bisections(quantale))
    frame = quantale.frame
    names = quantale.names
    hypothesis = Verdict.ok()
    reverse = Verdict.ok()
    for (first, sigma), (second, tau) in itertools.product(enumerate(elements), repeat=2):
        for a in quantale.rs:
            a_star = quantale.star(a)
            moved = sigma.sstar[right_action(tau, a_star)]
            bound = sigma.sstar[quantale.star(tau.sstar[a_star])]
            if hypothesis and not frame.le(moved, bound):
                hypothesis = Verdict.fail(f"σ{first}", f"σ{second}", names[a])
            if reverse and not frame.le(bound, moved):
                reverse = Verdict.fail(f"σ{first}", f"σ{second}", names[a])
    discrete = quantale.rs_lattice.is_boolean
    actions = _actions_preserve_joins(elements)
    findings = [
        Finding.from_verdict(SECTION, SUFFICIENT_CONDITION, hypothesis),
        Finding.from_verdict(SECTION, "s*_σ(a*·τ⁻¹) ≥ s*_σ(s*_τ(a*)*)", reverse, theorem=True),
        Finding.from_verdict(
            SECTION,
            "R(Q) discrete (T1 reading)",
            Verdict.ok() if discrete else Verdict.fail(detail="R(Q) is not Boolean"),
        ),
    ]
    name = "condition ∧ σ·(−) joins ⇒ ℬ(Q) associative"
    if hypothesis and actions:
        products = _associativity(bisection_table(quantale, elements))
        findings.append(Finding.from_verdict(SECTION, name, products, theorem=True))
    else:
        reason = "σ·(−) does not preserve joins" if hypothesis else "condition fails"
        findings.append(Finding.skipped(SECTION, name, reason))
    name = "discrete R(Q) ∧ σ·(−) joins ⇒ condition"
    if discrete and actions:
        findings.append(Finding.from_verdict(SECTION, name, hypothesis, theorem=True))
    else:
        reason = "R(Q) is not Boolean" if actions else "σ·(−) does not preserve joins"
        findings.append(Finding.skipped(SECTION, name, reason))
    return findings


@dataclass(frozen=True)
class XiIsomorphism:
    """Summary: ξ: ℬ(Q) → I(Q) and its inverse ζ for an inverse quantal frame."""

    xi: tuple[int, ...]
    zeta: dict[int, int]
    findings: list[Finding]


def xi_isomorphism(quantale: Quantale, table: BisectionSemigroup | None = None) -> XiIsomorphism:
    """Summary: ξ(σ) = s_!(U) and ζ(a) = (ς(a)1, x ↦ ς(x ∧ a)1), checked both ways.

    Importance: Certifies ℬ(Q) ≅ I(Q) as involutive monoids on each inverse quantal frame.
    Alternatives: Compare cardinalities of ℬ(Q) and I(Q).
    """

    if not quantale.classification.inverse:
        raise PreconditionError("ξ requires an inverse quantal frame")
    table = table or bisection_table(quantale)
    frame = quantale.frame
    names = table.names
    section = "xi"
    xi = tuple(
        frame.meet_all(a for a in range(quantale.n) if frame.le(sigma.domain, sigma.sstar[a]))
        for sigma in table.elements
    )
    units = partial_units(quantale).elements
    findings = [
        Finding.from_verdict(
            section,
            "ξ bijective onto I(Q)",
            Verdict.ok()
            if sorted(xi) == sorted(units) and len(set(xi)) == len(xi)
            else Verdict.fail(detail=f"{len(set(xi))} images vs {len(units)} partial units"),
            theorem=True,
        )
    ]
    verdict = Verdict.ok()
    for first, second in itertools.product(range(len(xi)), repeat=2):
        product = table.table[first][second]
        if product is None or xi[product] != quantale.product(xi[first], xi[second]):
            verdict = Verdict.fail(names[first], names[second])
            break
    findings.append(Finding.from_verdict(section, "ξ(στ) = ξ(σ)ξ(τ)", verdict, theorem=True))
    verdict = Verdict.ok()
    for offset in range(len(xi)):
        if xi[table.inverse[offset]] != quantale.star(xi[offset]):
            verdict = Verdict.fail(names[offset])
            break
    findings.append(Finding.from_verdict(section, "ξ(σ⁻¹) = ξ(σ)*", verdict, theorem=True))

    support = support_check(quantale).table
    if support is None:
        raise InconsistencyError("inverse quantal frame without a support")
    position = {sigma: offset for offset, sigma in enumerate(table.elements)}
    zeta: dict[int, int] = {}
    verdict = Verdict.ok()
    for a in units:
        sstar = tuple(
            quantale.times_top(support[frame.meet_rows[x][a]]) for x in range(quantale.n)
        )
        bisection = _realize(quantale, sstar)
        if bisection is None or bisection not in position:
            verdict = Verdict.fail(quantale.names[a], detail="ζ(a) is not a bisection")
            break
        zeta[a] = position[bisection]
        if xi[zeta[a]] != a:
            verdict = Verdict.fail(quantale.names[a], detail="ξ(ζ(a)) ≠ a")
            break
    if verdict:
        for offset, value in enumerate(xi):
            if zeta.get(value) != offset:
                verdict = Verdict.fail(names[offset], detail="ζ(ξ(σ)) ≠ σ")
                break
    findings.append(Finding.from_verdict(section, "ζ inverse to ξ", verdict, theorem=True))
    return XiIsomorphism(xi, zeta, findings)


def spatial_section(groupoid: TopGroupoid, sigma: Bisection) -> dict[int, int]:
    """Summary: The point section s: U → G1 of a bisection of O(G).

    Importance: s(p) is the unique arrow x with x ∈ a ⇔ u(p) ∈ s*(a) for every open a.
    Alternatives: Read s off minimal neighbourhoods only.
    """

    arrows = groupoid.arrows
    opens = arrows.opens
    result = {}
    objects = {groupoid.dom[x] for x in _bits(opens[sigma.domain])}
    for p in sorted(objects):
        unit = groupoid.unit[p]
        matches = [
            x
            for x in range(arrows.n)
            if groupoid.dom[x] == p
            and all(
                bool(opens[a] >> x & 1) == bool(opens[value] >> unit & 1)
                for a, value in enumerate(sigma.sstar)
            )
        ]
        if len(matches) != 1:
            raise InconsistencyError(f"bisection {sigma.label()} has no point section at {p}")
        result[p] = matches[0]
    return result


def lambda_map(groupoid: TopGroupoid, section: dict[int, int]) -> dict[int, int]:
    """z ↦ s(d(z))⁻¹·z on arrows whose domain lies in U."""

    return {
        z: groupoid.compose[(groupoid.inverse[section[groupoid.dom[z]]], z)]
        for z in range(groupoid.arrows.n)
        if groupoid.dom[z] in section
    }


def rho_map(groupoid: TopGroupoid, inverse_section: dict[int, int]) -> dict[int, int]:
    """z ↦ z·s⁻(r(z)) on arrows whose range lies in V, for the section s⁻ of σ⁻¹."""

    return {
        z: groupoid.compose[(z, inverse_section[groupoid.cod[z]])]
        for z in range(groupoid.arrows.n)
        if groupoid.cod[z] in inverse_section
    }


def spatial_action(groupoid: TopGroupoid, section: dict[int, int], mask: int) -> int:
    """Pointwise σ·a: arrows z with s(d(z))⁻¹·z ∈ a."""

    mapping = lambda_map(groupoid, section)
    result = 0
    for z, moved in mapping.items():
        if mask >> moved & 1:
            result |= 1 << z
    return result


def spatial_local_bisections(groupoid: TopGroupoid) -> list[tuple[int, tuple[int, ...]]]:
    """Summary: Continuous sections of d over opens whose range composite is an open embedding.

    Importance: Independent enumeration of local bisections on the point side.
    Alternatives: Derive them from the quantale side only.
    """

    objects = groupoid.objects
    fibres = {
        p: [x for x in range(groupoid.arrows.n) if groupoid.dom[x] == p] for p in range(objects.n)
    }
    found = []
    for domain in objects.opens:
        members = _bits(domain)
        for choice in itertools.product(*(fibres[p] for p in members)):
            section = dict(zip(members, choice))
            if _is_local_bisection(groupoid, domain, section):
                found.append((domain, tuple(section[p] for p in members)))
    return found


def _is_local_bisection(groupoid: TopGroupoid, domain: int, section: dict[int, int]) -> bool:
    objects, arrows = groupoid.objects, groupoid.arrows
    for p, x in section.items():
        for q in _bits(objects.neighbourhoods[p]):
            if not arrows.neighbourhoods[x] >> section[q] & 1:
                return False
    ranges = [groupoid.cod[x] for x in section.values()]
    if len(set(ranges)) != len(ranges):
        return False
    for member in objects.opens:
        if member & ~domain:
            continue
        image = 0
        for p in _bits(member):
            image |= 1 << groupoid.cod[section[p]]
        if not objects.is_open(image):
            return False
    return True


def spatial_oracle_check(groupoid: TopGroupoid, bisections: Sequence[Bisection]) -> list[Finding]:
    """Summary: Compare bisections and actions of O(G) with their pointwise counterparts.

    Importance: The localic formulas must agree with sections and pointwise products.
    Alternatives: Trust the residual-based formulas.
    """

    section = "spatial"
    quantale = bisections[0].base if bisections else quantale_of(groupoid)
    opens = groupoid.arrows.opens
    spatial = spatial_local_bisections(groupoid)
    sections = [spatial_section(groupoid, sigma) for sigma in bisections]
    as_points = sorted(
        (groupoid.objects.open_index[_mask_of(section_map)], tuple(section_map.values()))
        for section_map in sections
    )
    expected = sorted((groupoid.objects.open_index[domain], image) for domain, image in spatial)
    findings = [
        Finding.from_verdict(
            section,
            "ℬ(O(G)) ↔ local bisections of G",
            Verdict.ok()
            if as_points == expected
            else Verdict.fail(detail=f"{len(as_points)} vs {len(expected)} sections"),
            theorem=True,
        )
    ]
    verdict = Verdict.ok()
    for offset, sigma in enumerate(bisections):
        inverse_section = spatial_section(groupoid, bisection_inverse(sigma))
        for a in range(quantale.n):
            moved = spatial_action(groupoid, sections[offset], opens[a])
            if opens[action(sigma, a)] != moved:
                verdict = Verdict.fail(sigma.label(), quantale.names[a], detail="σ·a")
                break
            right = 0
            for z, image in rho_map(groupoid, inverse_section).items():
                if opens[a] >> image & 1:
                    right |= 1 << z
            if opens[act_right(sigma, a)] != right:
                verdict = Verdict.fail(sigma.label(), quantale.names[a], detail="a·σ")
                break
        if not verdict:
            break
    findings.append(
        Finding.from_verdict(section, "action = pointwise action", verdict, theorem=True)
    )
    return findings


def _mask_of(section_map: dict[int, int]) -> int:
    result = 0
    for p in section_map:
        result |= 1 << p
    return result


@dataclass(frozen=True)
class MultiplicativityProfile:
    """Summary: Multiplicativity and weak multiplicativity of one quantale, with findings.

    Importance: Either flag is None when its hypotheses fail, so patterns and expected flags
    never read a verdict that was not computed.
    Alternatives: Report False for flags whose hypotheses fail.
    """

    multiplicative: Verdict | None
    weak: WeakMultiplicativity | None
    findings: list[Finding]

    def flags(self) -> dict[str, bool | None]:
        return {
            "multiplicative": None if self.multiplicative is None else self.multiplicative.holds,
            "weakly_multiplicative": None if self.weak is None else self.weak.holds,
        }


def multiplicativity_profile(
    quantale: Quantale,
    bisections: Sequence[Bisection] | None = None,
    subset_cap: int = 4,
) -> MultiplicativityProfile:
    """Summary: Decide both multiplicativity notions and check that the first implies the second.

    Importance: A multiplicative open quantal frame that is not weakly multiplicative is a
    red flag.
    Alternatives: Run the two checks independently in every caller.
    """

    section = "multiplicativity"
    findings: list[Finding] = []
    multiplicative: Verdict | None
    try:
        multiplicative = is_multiplicative(TensorLattice.over(quantale))
        findings.append(Finding.from_verdict(section, "multiplicative", multiplicative))
    except PreconditionError as exc:
        multiplicative = None
        findings.append(Finding.skipped(section, "multiplicative", str(exc)))
    if not quantale.classification.is_open:
        findings.append(Finding.skipped(section, "weakly multiplicative", "not open"))
        return MultiplicativityProfile(multiplicative, None, findings)
    weak = weak_multiplicativity_check(quantale, bisections, subset_cap)
    findings.extend(weak.findings)
    findings.append(Finding.from_verdict(section, "weakly multiplicative", weak.verdict))
    if multiplicative:
        findings.append(
            Finding.from_verdict(
                section, "multiplicative ⇒ weakly multiplicative", weak.verdict, theorem=True
            )
        )
    return MultiplicativityProfile(multiplicative, weak, findings)
