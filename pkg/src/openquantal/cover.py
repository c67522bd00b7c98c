"""Summary: The embedding j: Q → L∨(ℬ(Q)), embeddability, involutive ideals, and the cover J.

Importance: These checks decide whether bisections alone explain the multiplication of Q,
which is the sufficient condition for multiplicativity.
Alternatives: Compare O(G) with O(Ĝ) through point sets only.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from openquantal.bisections import (
    Bisection,
    BisectionSemigroup,
    action,
    act_right,
    spatial_section,
    weak_multiplicativity_check,
)
from openquantal.errors import (
    ActionError,
    CapExceededError,
    InconsistencyError,
    LatticeError,
    PreconditionError,
)
from openquantal.groupoid import (
    GermComparison,
    TopGroupoid,
    germ_groupoid,
    groupoid_of,
    points,
    quantale_of,
    validate_action,
)
from openquantal.iso import is_groupoid_isomorphism
from openquantal.lattice import (
    FiniteLattice,
    LatticeMap,
    compose,
    identity_map,
    is_frame_hom,
    right_adjoint,
)
from openquantal.models import Finding, Verdict
from openquantal.quantale import Quantale
from openquantal.semigroup import Completion, lcc_completion
from openquantal.tensor import (
    TensorLattice,
    injectivity,
    is_multiplicative,
    mu0_star,
    random_samples,
    sampled_injectivity,
    tensor_image,
)

logger = logging.getLogger(__name__)

SECTION = "cover"


@dataclass(frozen=True, eq=False)
class CoverData:
    """Summary: Q, ℬ(Q), Q̂ = L∨(ℬ(Q)), the frame map j, and η: R(Q) → R(Q̂).

    Importance: Every embeddability and cover check reads these tables.
    Alternatives: Rebuild the completion inside each checker.
    """

    quantale: Quantale
    bisections: BisectionSemigroup
    completion: Completion
    j: LatticeMap
    eta: dict[int, int]
    findings: list[Finding] = field(default_factory=list)

    @property
    def qhat(self) -> Quantale:
        return self.completion.quantale

    @property
    def hat(self) -> tuple[int, ...]:
        return self.completion.hat

    @property
    def elements(self) -> tuple[Bisection, ...]:
        return self.bisections.elements

    @cached_property
    def j_star(self) -> LatticeMap:
        return right_adjoint(self.j)

    def contains(self, a: int, offset: int) -> bool:
        """True when the bisection at `offset` lies in j(a)."""

        return self.qhat.frame.le(self.hat[offset], self.j(a))


def _j_mask(elements: Sequence[Bisection], a: int) -> int:
    mask = 0
    for offset, sigma in enumerate(elements):
        if sigma.sstar[a] == sigma.domain:
            mask |= 1 << offset
    return mask


def build_cover(
    quantale: Quantale,
    bisections: Sequence[Bisection] | None = None,
    subset_cap: int = 4,
) -> CoverData:
    """Summary: Complete ℬ(Q) into Q̂ and build j(a) = {σ : s*_σ(a) = U_σ}.

    Importance: Validates that each j(a) is closed in the completion, that j is a frame map,
    that σ ↦ σ̂ is multiplicative, and that η(z) = σσ⁻¹·1 is independent of σ.
    Alternatives: Define j on join-irreducibles and extend by joins.
    """

    weak = weak_multiplicativity_check(quantale, bisections, subset_cap)
    if not weak.holds:
        raise PreconditionError(
            f"cover requires a weakly multiplicative open quantal frame ({weak.verdict.detail})"
        )
    table = weak.semigroup
    semigroup, acp = table.semigroup, table.acp
    if semigroup is None or acp is None or not acp.holds:
        raise PreconditionError("cover requires ℬ(Q) to be an abstract complete pseudogroup")
    completion = lcc_completion(semigroup, acp)
    qhat = completion.quantale
    names = quantale.names

    values = []
    for a in range(quantale.n):
        mask = _j_mask(table.elements, a)
        if completion.closure(mask) != mask:
            raise InconsistencyError(f"j({names[a]}) is not closed in L∨(ℬ(Q))")
        values.append(completion.index_of(mask))
    j = LatticeMap(quantale.frame, qhat.frame, tuple(values), "j")

    findings = list(weak.findings)
    for name, verdict in (
        ("j frame homomorphism", is_frame_hom(j)),
        ("(στ)^ = σ̂τ̂", _hat_multiplicative(table, completion)),
    ):
        findings.append(Finding.from_verdict(SECTION, name, verdict, theorem=True))

    eta: dict[int, int] = {}
    independent = Verdict.ok()
    for offset, sigma in enumerate(table.elements):
        hat = completion.hat[offset]
        value = qhat.times_top(qhat.product(hat, qhat.star(hat)))
        previous = eta.setdefault(sigma.domain, value)
        if previous != value:
            independent = Verdict.fail(names[sigma.domain], table.names[offset])
    missing = [z for z in quantale.rs if z not in eta]
    if missing:
        raise InconsistencyError(f"no bisection with domain {names[missing[0]]}")
    findings.append(
        Finding.from_verdict(SECTION, "η(z) independent of σ", independent, theorem=True)
    )
    logger.info(
        "Built cover of %s: %d bisections, |Q̂| = %d",
        quantale.title or "Q",
        len(table.elements),
        qhat.n,
    )
    return CoverData(quantale, table, completion, j, eta, findings)


def _hat_multiplicative(table: BisectionSemigroup, completion: Completion) -> Verdict:
    qhat = completion.quantale
    hat = completion.hat
    for first, second in itertools.product(range(len(table.elements)), repeat=2):
        product = table.table[first][second]
        if product is None or hat[product] != qhat.product(hat[first], hat[second]):
            return Verdict.fail(table.names[first], table.names[second])
    return Verdict.ok()


def eta_checks(cover: CoverData) -> list[Finding]:
    """Summary: η is an order isomorphism onto R(Q̂), agrees with j on R(Q), and j is a module map.

    Importance: Q̂ becomes an R(Q)-module through η, which the tensor Q̂⊗_{R(Q)}Q needs.
    Alternatives: Transport the module structure along j without checking it.
    """

    quantale, qhat, j, eta = cover.quantale, cover.qhat, cover.j, cover.eta
    frame, names = quantale.frame, quantale.names
    findings = []
    image = [eta[z] for z in quantale.rs]
    verdict = Verdict.ok()
    if sorted(image) != sorted(qhat.rs) or len(set(image)) != len(image):
        verdict = Verdict.fail(detail=f"{len(set(image))} images vs |R(Q̂)| = {len(qhat.rs)}")
    else:
        for z, w in itertools.product(quantale.rs, repeat=2):
            if frame.le(z, w) != qhat.frame.le(eta[z], eta[w]):
                verdict = Verdict.fail(names[z], names[w], detail="order not reflected")
                break
    findings.append(Finding.from_verdict(SECTION, "η: R(Q) ≅ R(Q̂)", verdict, theorem=True))
    bad = [z for z in quantale.rs if j(z) != eta[z]]
    findings.append(
        Finding.from_verdict(
            SECTION,
            "j(z) = η(z) on R(Q)",
            Verdict.ok() if not bad else Verdict.fail(names[bad[0]]),
            theorem=True,
        )
    )
    meet = qhat.frame.meet_rows
    verdict = Verdict.ok()
    for z, a in itertools.product(quantale.rs, range(quantale.n)):
        if j(frame.meet_rows[z][a]) != meet[eta[z]][j(a)]:
            verdict = Verdict.fail(names[z], names[a], detail="j(z ∧ a) ≠ η(z) ∧ j(a)")
            break
        if j(frame.meet_rows[quantale.star(z)][a]) != meet[qhat.star(eta[z])][j(a)]:
            verdict = Verdict.fail(names[z], names[a], detail="j(a ∧ z*) ≠ j(a) ∧ η(z)*")
            break
    findings.append(Finding.from_verdict(SECTION, "j is an R(Q)-module map", verdict, theorem=True))
    return findings


@dataclass(frozen=True)
class WeakEmbeddability:
    """Summary: σ̂ j(a) = j(σ·a) over the whole grid, with its consequences."""

    verdict: Verdict
    lemma_route: bool
    findings: list[Finding]

    @property
    def holds(self) -> bool:
        return self.verdict.holds


def weak_embeddability_check(cover: CoverData) -> WeakEmbeddability:
    """Summary: Decide σ̂ j(a) = j(σ·a) for every bisection σ and every a.

    Importance: On success the derived properties of j are checked too, and the sufficient
    route through ordered products and action associativity is evaluated independently.
    Alternatives: Only evaluate the sufficient route.
    """

    quantale, qhat, j, hat = cover.quantale, cover.qhat, cover.j, cover.hat
    table = cover.bisections
    names, labels = quantale.names, table.names
    verdict = Verdict.ok()
    for (offset, sigma), a in itertools.product(enumerate(cover.elements), range(quantale.n)):
        if qhat.product(hat[offset], j(a)) != j(action(sigma, a)):
            verdict = Verdict.fail(labels[offset], names[a], detail="σ̂ j(a) ≠ j(σ·a)")
            break
    findings = [Finding.from_verdict(SECTION, "weakly embeddable", verdict)]

    route = _lemma_route(cover)
    findings.append(Finding.from_verdict(SECTION, "ordered products and associative action", route))
    findings.append(
        Finding.from_verdict(
            SECTION,
            "sufficient route ⇒ weakly embeddable",
            Verdict.ok() if not route or verdict else Verdict.fail(*verdict.witness),
            theorem=True,
        )
    )
    if verdict:
        findings.extend(_consequences(cover, enough_bisections_check(cover).holds))
    else:
        findings.append(Finding.skipped(SECTION, "properties of j", "not weakly embeddable"))
    logger.info("Weak embeddability of %s: %s", quantale.title or "Q", verdict.holds)
    return WeakEmbeddability(verdict, route.holds, findings)


def _lemma_route(cover: CoverData) -> Verdict:
    """σ ∈ j(a) ⇒ τσ ∈ j(τ·a), and σ·(τ·a) = (στ)·a, for all σ, τ, a."""

    quantale, table = cover.quantale, cover.bisections
    labels, names = table.names, quantale.names
    count = len(cover.elements)
    for a in range(quantale.n):
        for sigma, tau in itertools.product(range(count), repeat=2):
            product = table.table[tau][sigma]
            if product is None:
                return Verdict.fail(labels[tau], labels[sigma], detail="product undefined")
            moved = action(cover.elements[tau], a)
            if cover.contains(a, sigma) and not cover.contains(moved, product):
                return Verdict.fail(labels[sigma], labels[tau], names[a], detail="τσ ∉ j(τ·a)")
            composite = table.table[sigma][tau]
            nested = action(cover.elements[sigma], action(cover.elements[tau], a))
            if composite is None or nested != action(cover.elements[composite], a):
                return Verdict.fail(labels[sigma], labels[tau], names[a], detail="σ·(τ·a) ≠ (στ)·a")
    return Verdict.ok()


def _consequences(cover: CoverData, mono: bool) -> list[Finding]:
    quantale, qhat, j, hat = cover.quantale, cover.qhat, cover.j, cover.hat
    table = cover.bisections
    frame, names, labels = quantale.frame, quantale.names, table.names
    elements = cover.elements
    count = len(elements)
    findings: list[Finding] = []

    def theorem(name: str, verdict: Verdict) -> None:
        findings.append(Finding.from_verdict(SECTION, name, verdict, theorem=True))

    verdict = Verdict.ok()
    for a, b in itertools.product(range(quantale.n), repeat=2):
        if not qhat.frame.le(qhat.product(j(a), j(b)), j(quantale.product(a, b))):
            verdict = Verdict.fail(names[a], names[b])
            break
    theorem("j(a)j(b) ≤ j(ab)", verdict)

    bad = [a for a in range(quantale.n) if j(quantale.star(a)) != qhat.star(j(a))]
    theorem("j(a*) = j(a)*", Verdict.ok() if not bad else Verdict.fail(names[bad[0]]))

    verdict = Verdict.ok()
    for offset, a in itertools.product(range(count), range(quantale.n)):
        if j(act_right(elements[offset], a)) != qhat.product(j(a), hat[offset]):
            verdict = Verdict.fail(names[a], labels[offset])
            break
    theorem("j(a·τ) = j(a)τ̂", verdict)

    verdict = Verdict.ok()
    for sigma, tau, a in itertools.product(range(count), range(count), range(quantale.n)):
        if not cover.contains(a, sigma):
            continue
        right = table.table[sigma][tau]
        left = table.table[tau][sigma]
        if right is None or not cover.contains(act_right(elements[tau], a), right):
            verdict = Verdict.fail(labels[sigma], labels[tau], names[a], detail="στ ∉ j(a·τ)")
            break
        if left is None or not cover.contains(action(elements[tau], a), left):
            verdict = Verdict.fail(labels[sigma], labels[tau], names[a], detail="τσ ∉ j(τ·a)")
            break
    theorem("σ̂ ≤ j(a) ⇒ (στ)^ ≤ j(a·τ) and (τσ)^ ≤ j(τ·a)", verdict)

    theorem("j(Q) involutive ideal of Q̂", _ideal_verdict(qhat, sorted(set(j.table))))

    image = {j(z) for z in quantale.rs}
    idempotent_image = {
        j(action(elements[e], quantale.top)) for e in range(count) if table.table[e][e] == e
    }
    verdict = Verdict.ok()
    if image != set(qhat.rs):
        verdict = Verdict.fail(detail="j(R(Q)) ≠ R(Q̂)")
    elif idempotent_image != image:
        verdict = Verdict.fail(detail="j(E(ℬ(Q))·1) ≠ j(R(Q))")
    theorem("j(R(Q)) = R(Q̂) = j(E(ℬ(Q))·1)", verdict)

    gated = ("σ̂ ≤ j(a) ⇒ σ·b ≤ ab", "σ·(τ·a) = (στ)·a", "σ·(a·τ) = (σ·a)·τ")
    if not mono:
        findings.extend(Finding.skipped(SECTION, name, "j not mono") for name in gated)
        return findings
    verdict = Verdict.ok()
    for sigma, a, b in itertools.product(range(count), range(quantale.n), range(quantale.n)):
        if cover.contains(a, sigma) and not frame.le(
            action(elements[sigma], b), quantale.product(a, b)
        ):
            verdict = Verdict.fail(labels[sigma], names[a], names[b])
            break
    theorem(gated[0], verdict)
    nested = Verdict.ok()
    mixed = Verdict.ok()
    for sigma, tau, a in itertools.product(range(count), range(count), range(quantale.n)):
        composite = table.table[sigma][tau]
        first, second = elements[sigma], elements[tau]
        if nested and (
            composite is None
            or action(first, action(second, a)) != action(elements[composite], a)
        ):
            nested = Verdict.fail(labels[sigma], labels[tau], names[a])
        if mixed and action(first, act_right(second, a)) != act_right(second, action(first, a)):
            mixed = Verdict.fail(labels[sigma], labels[tau], names[a])
    theorem(gated[1], nested)
    theorem(gated[2], mixed)
    return findings


def enough_bisections_check(cover: CoverData) -> Verdict:
    """Summary: j is mono, decided as j_* ∘ j = id.

    Importance: Failure means two distinct elements contain exactly the same bisections.
    Alternatives: Compare j(a) and j(b) for every pair.
    """

    quantale = cover.quantale
    round_trip = compose(cover.j_star, cover.j)
    if round_trip.table == identity_map(quantale.frame).table:
        return Verdict.ok()
    a = next(a for a in range(quantale.n) if round_trip(a) != a)
    twin = next(b for b in range(quantale.n) if b != a and cover.j(b) == cover.j(a))
    return Verdict.fail(quantale.names[a], quantale.names[twin], detail="j(a) = j(b)")


def enough_bisections_findings(cover: CoverData) -> list[Finding]:
    """Enough bisections plus the two-point R(Q) reading as spatiality of Q."""

    verdict = enough_bisections_check(cover)
    findings = [Finding.from_verdict(SECTION, "enough bisections", verdict)]
    quantale = cover.quantale
    if len(quantale.rs) == 2:
        spatial = points(quantale.frame).spatial
        findings.append(
            Finding.from_verdict(
                SECTION,
                "R(Q) = {0,1} ⇒ (enough bisections ⇔ spatial)",
                Verdict.ok() if bool(spatial) == bool(verdict) else Verdict.fail(*verdict.witness),
                theorem=True,
            )
        )
    return findings


@dataclass(frozen=True)
class Embeddability:
    """Summary: Verdict on j⊗id being mono, with the mode that produced it."""

    verdict: Verdict
    mode: str
    findings: list[Finding]

    @property
    def holds(self) -> bool:
        return self.verdict.holds


def module_tensor(cover: CoverData) -> TensorLattice:
    """Q̂⊗_{R(Q)}Q with Q̂ acted on through η."""

    quantale, qhat = cover.quantale, cover.qhat
    left_action = [
        [qhat.frame.meet_rows[x][qhat.star(cover.eta[z])] for x in range(qhat.n)]
        for z in quantale.rs
    ]
    right_action = [
        [quantale.frame.meet_rows[y][z] for y in range(quantale.n)] for z in quantale.rs
    ]
    title = quantale.title or "Q"
    return TensorLattice.of_modules(
        qhat.frame, quantale.frame, left_action, right_action, f"L∨(ℬ({title}))⊗{title}"
    )


def embeddability_check(
    cover: CoverData,
    weak: WeakEmbeddability,
    *,
    mode: str = "auto",
    tensor_cap: int = 8,
    embed_cap: int = 32,
    sample_count: int = 64,
    seed: int = 0,
    spatial_groupoid: bool = False,
) -> Embeddability:
    """Summary: Decide whether j⊗id: Q⊗_{R(Q)}Q → Q̂⊗_{R(Q)}Q is mono.

    Importance: "exhaustive" compares images of all enumerated bi-ideals, "exact" tests
    join-irreducible generators, and "sampled" checks (j⊗id)_*∘(j⊗id) = id on samples and
    is reported as lower confidence; exact verdicts assert that Q is multiplicative and has
    enough bisections.
    Alternatives: Always enumerate the source tensor.
    """

    quantale = cover.quantale
    n = quantale.n
    if mode == "auto":
        mode = "exhaustive" if n <= tensor_cap else "exact" if n <= embed_cap else "sampled"
    if mode not in {"exhaustive", "exact", "sampled"}:
        raise ValueError(f"unknown embeddability mode {mode!r}")
    if mode == "exhaustive" and n > tensor_cap:
        raise CapExceededError(f"exhaustive embeddability limited to |Q| <= {tensor_cap}, got {n}")
    enough = enough_bisections_check(cover)
    coverable = "finite groupoid with enough bisections ⇒ coverable"
    if not weak.holds:
        verdict = Verdict.fail(*weak.verdict.witness, detail="not weakly embeddable")
        findings = [Finding.from_verdict(SECTION, "embeddable", verdict)]
        if spatial_groupoid and enough:
            findings.append(Finding.from_verdict(SECTION, coverable, verdict, theorem=True))
        return Embeddability(verdict, "n/a", findings)

    source = TensorLattice.over(quantale)
    target = module_tensor(cover)
    findings = []
    if mode == "sampled":
        samples = random_samples(source, sample_count, seed)
        verdict = sampled_injectivity(source, target, cover.j, samples)
        findings.append(Finding.from_verdict(SECTION, "embeddable (sampled)", verdict))
        return Embeddability(verdict, mode, findings)

    verdict = injectivity(source, target, cover.j)
    if mode == "exhaustive":
        ideals = source.enumerate_ideals(tensor_cap)
        images = {tensor_image(ideal, target, cover.j) for ideal in ideals}
        exhaustive = Verdict.ok(detail=f"{len(ideals)} bi-ideals")
        if len(images) != len(ideals):
            exhaustive = Verdict.fail(detail=f"{len(ideals)} bi-ideals, {len(images)} images")
        findings.append(
            Finding.from_verdict(
                SECTION,
                "generator test agrees with enumeration",
                Verdict.ok() if bool(exhaustive) == bool(verdict) else Verdict.fail(),
                theorem=True,
            )
        )
        verdict = exhaustive
    findings.append(Finding.from_verdict(SECTION, f"embeddable ({mode})", verdict))

    theorems: list[tuple[str, Verdict]] = []
    if len(set(cover.j.table)) == cover.qhat.n and bool(enough):
        theorems.append(("j iso ⇒ j⊗id mono", verdict))
    if verdict:
        try:
            multiplicative = is_multiplicative(source)
        except PreconditionError as exc:
            multiplicative = Verdict.fail(detail=str(exc))
        theorems.append(("embeddable ⇒ multiplicative", multiplicative))
        theorems.append(("embeddable ⇒ enough bisections", enough))
    if spatial_groupoid and enough:
        theorems.append((coverable, verdict))
    for name, outcome in theorems:
        findings.append(Finding.from_verdict(SECTION, name, outcome, theorem=True))
    logger.info("Embeddability of %s (%s): %s", quantale.title or "Q", mode, verdict.holds)
    return Embeddability(verdict, mode, findings)


@dataclass(frozen=True)
class CoverFunctor:
    """Summary: Ĝ, the point maps of J: Ĝ → G, and the functor verdicts."""

    applicable: bool
    findings: list[Finding]
    cover_groupoid: TopGroupoid | None = None
    objects: tuple[int, ...] = ()
    arrows: tuple[int, ...] = ()
    iso: bool = False
    germs: GermComparison | None = None


def cover_functor(
    groupoid: TopGroupoid,
    *,
    tensor_cap: int | None = None,
    subset_cap: int = 4,
    cover: CoverData | None = None,
) -> CoverFunctor:
    """Summary: Build Ĝ = G(Q̂) and the functor J dual to j, then check epi and iso ⇔ étale.

    Importance: J₁ sends the point ↑p of Q̂ to the arrow whose open neighbourhoods are
    {a : p ≤ j(a)}; functoriality is checked both on points and as m̂*∘j = (j⊗j)∘m*.
    Alternatives: Build Ĝ as the germ groupoid only.
    """

    name = "J: Ĝ → G"
    quantale = quantale_of(groupoid)
    try:
        cover = cover or build_cover(quantale, subset_cap=subset_cap)
    except PreconditionError as exc:
        return CoverFunctor(False, [Finding.skipped(SECTION, name, str(exc))])
    weak = weak_embeddability_check(cover)
    enough = enough_bisections_check(cover)
    if not weak.holds or not enough:
        reason = "not weakly embeddable" if not weak.holds else "not enough bisections"
        return CoverFunctor(False, [Finding.skipped(SECTION, name, reason)])

    qhat, j = cover.qhat, cover.j
    cover_groupoid = groupoid_of(qhat, tensor_cap)
    generators = qhat.frame.join_irreducibles
    opens = groupoid.arrows.opens
    neighbourhoods = {
        frozenset(a for a in range(quantale.n) if opens[a] >> x & 1): x
        for x in range(groupoid.arrows.n)
    }
    arrows = []
    for p in generators:
        filter_members = frozenset(
            a for a in range(quantale.n) if qhat.frame.le(p, j(a))
        )
        if filter_members not in neighbourhoods:
            raise InconsistencyError(f"j⁻¹(↑{qhat.names[p]}) is not the filter of an arrow")
        arrows.append(neighbourhoods[filter_members])
    objects = [groupoid.dom[arrows[unit]] for unit in cover_groupoid.unit]
    surjective = set(arrows) == set(range(groupoid.arrows.n))
    iso = (
        len(set(arrows)) == len(arrows) == groupoid.arrows.n
        and len(set(objects)) == len(objects) == groupoid.objects.n
        and is_groupoid_isomorphism(cover_groupoid, groupoid, objects, arrows)
    )
    etale = bool(groupoid.classification.etale)
    functor = _functor_verdict(cover_groupoid, groupoid, objects, arrows)
    findings = [
        Finding.from_verdict(SECTION, name, verdict, theorem=True)
        for name, verdict in (
            ("J is a continuous functor", functor),
            ("m̂*∘j = (j⊗j)∘m*", _tensor_functoriality(cover)),
            (
                "J epimorphism",
                Verdict.ok() if surjective else Verdict.fail(detail="J₁ not surjective"),
            ),
            (
                "J iso ⇔ G étale",
                Verdict.ok() if iso == etale else Verdict.fail(detail=f"iso={iso} étale={etale}"),
            ),
        )
    ]
    germs = _germ_oracle(groupoid, cover, subset_cap)
    if isinstance(germs, GermComparison):
        findings.extend(germs.findings())
    else:
        findings.append(germs)
    logger.info("Cover functor of %s: iso=%s", groupoid.title or "G", iso)
    return CoverFunctor(
        True,
        findings,
        cover_groupoid,
        tuple(objects),
        tuple(arrows),
        iso,
        germs if isinstance(germs, GermComparison) else None,
    )


def _functor_verdict(
    source: TopGroupoid, target: TopGroupoid, objects: Sequence[int], arrows: Sequence[int]
) -> Verdict:
    for x in range(source.arrows.n):
        image = arrows[x]
        if target.dom[image] != objects[source.dom[x]]:
            return Verdict.fail(source.arrow_name(x), detail="d not preserved")
        if target.cod[image] != objects[source.cod[x]]:
            return Verdict.fail(source.arrow_name(x), detail="r not preserved")
        if target.inverse[image] != arrows[source.inverse[x]]:
            return Verdict.fail(source.arrow_name(x), detail="inverse not preserved")
    for p in range(source.objects.n):
        if arrows[source.unit[p]] != target.unit[objects[p]]:
            return Verdict.fail(source.object_name(p), detail="unit not preserved")
    for (x, y), z in source.compose.items():
        if target.compose.get((arrows[x], arrows[y])) != arrows[z]:
            return Verdict.fail(
                source.arrow_name(x), source.arrow_name(y), detail="m not preserved"
            )
    for mask in target.arrows.opens:
        if not source.arrows.is_open(source.arrows.preimage(mask, arrows)):
            return Verdict.fail(target.arrows.name_of(mask), detail="J₁ not continuous")
    for mask in target.objects.opens:
        if not source.objects.is_open(source.objects.preimage(mask, objects)):
            return Verdict.fail(target.objects.name_of(mask), detail="J₀ not continuous")
    return Verdict.ok()


def _tensor_functoriality(cover: CoverData) -> Verdict:
    quantale, qhat, j = cover.quantale, cover.qhat, cover.j
    source = TensorLattice.over(quantale)
    target = TensorLattice.over(qhat)
    for a in range(quantale.n):
        if mu0_star(target, j(a)) != tensor_image(mu0_star(source, a), target, j, j):
            return Verdict.fail(quantale.names[a])
    return Verdict.ok()


def _germ_oracle(
    groupoid: TopGroupoid, cover: CoverData, subset_cap: int
) -> GermComparison | Finding:
    """Germs of ℬ(G) acting on G0 by x ↦ r(s(x)), compared with G(Q̂)."""

    semigroup = cover.bisections.semigroup
    if semigroup is None:
        return Finding.skipped("germs", "germs(ℬ(G)) ≅ Ĝ", "ℬ(Q) not assembled")
    images = []
    for sigma in cover.elements:
        section = spatial_section(groupoid, sigma)
        images.append(
            [groupoid.cod[section[p]] if p in section else None for p in range(groupoid.objects.n)]
        )
    try:
        title = f"ℬ({groupoid.title or 'G'})"
        natural = validate_action(semigroup, groupoid.objects, images, title)
    except ActionError as exc:
        return Finding.from_verdict(
            "germs",
            "ℬ(G) acts by partial homeomorphisms",
            Verdict.fail(*exc.witness, detail=str(exc)),
            theorem=True,
        )
    return germ_groupoid(natural, subset_cap)


@dataclass(frozen=True)
class IdealWitness:
    """Summary: Involutive-ideal flags, both theorem conditions, and the standalone verdict."""

    quantale: Quantale
    elements: tuple[int, ...]
    involutive_ideal: Verdict
    mono: Verdict | None
    u_condition: Verdict
    standalone: Quantale | None
    multiplicative_open: Verdict | None
    findings: list[Finding]


def _ideal_verdict(quantale: Quantale, elements: Sequence[int]) -> Verdict:
    """Q·I ⊆ I and I* ⊆ I for a subset I."""

    members = set(elements)
    names = quantale.names
    for q, x in itertools.product(range(quantale.n), elements):
        if quantale.product(q, x) not in members:
            return Verdict.fail(names[q], names[x], detail="QI ⊄ I")
    for x in elements:
        if quantale.star(x) not in members:
            return Verdict.fail(names[x], detail="I* ⊄ I")
    return Verdict.ok()


def ideal_subframe(quantale: Quantale, elements: Sequence[int]) -> FiniteLattice:
    """Summary: I as a frame: closed under binary joins, binary meets, and containing 0.

    Importance: Raises LatticeError otherwise, so later checks may treat I as a lattice.
    Alternatives: Accept any subset and close it.
    """

    chosen = sorted(set(elements))
    if quantale.bot not in chosen:
        raise LatticeError("ideal is not a subframe: bottom missing")
    return quantale.frame.sublattice(chosen)


def ideal_check(
    quantale: Quantale,
    elements: Sequence[int],
    *,
    embed_cap: int = 32,
    title: str = "I",
) -> IdealWitness:
    """Summary: Check an involutive ideal and the conditions for it to be open and multiplicative.

    Importance: When the ideal conditions hold, I is rebuilt as a quantale of its own and
    the biconditional between the two conditions and multiplicative openness is asserted.
    Alternatives: Only check the ideal conditions.
    """

    if not quantale.classification.inverse:
        raise PreconditionError("ideal check requires an inverse quantal frame")
    sub = ideal_subframe(quantale, elements)
    chosen = tuple(sorted(set(elements)))
    names = quantale.names
    section = "ideal"
    ideal = _ideal_verdict(quantale, chosen)
    findings = [Finding.from_verdict(section, "involutive ideal", ideal)]
    if not ideal:
        return IdealWitness(quantale, chosen, ideal, None, Verdict.fail(), None, None, findings)

    position = {x: offset for offset, x in enumerate(chosen)}
    u_condition = Verdict.ok()
    for x in chosen:
        covered = quantale.frame.join_all(
            y
            for y in chosen
            if quantale.frame.le(quantale.product(quantale.product(y, quantale.star(y)), y), x)
        )
        if not quantale.frame.le(x, covered):
            u_condition = Verdict.fail(names[x], detail="⋁{y ∈ I : yy*y ≤ x} ≱ x")
            break
    findings.append(Finding.from_verdict(section, "⋁_{yy*y≤x} y ≥ x", u_condition))

    mono: Verdict | None = None
    if quantale.n <= embed_cap:
        left_action = [
            [position[quantale.frame.meet_rows[x][quantale.star(z)]] for x in chosen]
            for z in quantale.rs
        ]
        right_action = [
            [quantale.frame.meet_rows[y][z] for y in range(quantale.n)] for z in quantale.rs
        ]
        source = TensorLattice.of_modules(
            sub, quantale.frame, left_action, right_action, f"{title}⊗Q"
        )
        inclusion = LatticeMap(sub, quantale.frame, chosen, "ι")
        mono = injectivity(source, TensorLattice.over(quantale), inclusion)
        findings.append(Finding.from_verdict(section, "ι⊗id mono", mono))
    else:
        findings.append(Finding.skipped(section, "ι⊗id mono", f"|Q| > {embed_cap}"))

    table = [[position[quantale.product(x, y)] for y in chosen] for x in chosen]
    inverse = [position[quantale.star(x)] for x in chosen]
    standalone = Quantale.build(sub, table, inverse, title)
    flags = standalone.classification
    try:
        multiplicative = is_multiplicative(TensorLattice.over(standalone))
    except PreconditionError as exc:
        multiplicative = Verdict.fail(detail=str(exc))
    outcome = Verdict.ok()
    if not flags.is_open:
        outcome = Verdict.fail(detail="not open")
    elif not multiplicative:
        outcome = multiplicative
    findings.append(Finding.from_verdict(section, "I multiplicative open", outcome))
    if mono is not None:
        conditions = bool(mono) and bool(u_condition)
        agreement = Verdict.ok()
        if conditions != bool(outcome):
            agreement = Verdict.fail(detail=f"conditions={conditions}")
        findings.append(
            Finding.from_verdict(
                section,
                "(ι⊗id mono ∧ ⋁_{yy*y≤x} y ≥ x) ⇔ I multiplicative open",
                agreement,
                theorem=True,
            )
        )
        if quantale.rs_lattice.is_boolean and mono:
            name = "discrete R(Q) ∧ ι⊗id mono ⇒ I open multiplicative"
            findings.append(Finding.from_verdict(section, name, outcome, theorem=True))
    return IdealWitness(quantale, chosen, ideal, mono, u_condition, standalone, outcome, findings)
