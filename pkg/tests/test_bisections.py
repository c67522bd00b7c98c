"""Summary: Tests for local bisections, their products, and weak multiplicativity.

Importance: ℬ(Q) is the inverse semigroup behind the étale cover, so its table must be exact.
Alternatives: Test bisections only through the cover command.
"""

from __future__ import annotations

import pytest

from openquantal.bisections import (
    SUFFICIENT_CONDITION,
    action,
    bisection_inverse,
    bisection_laws,
    bisection_product,
    enumerate_bisections,
    formula_pack,
    multiplicativity_profile,
    spatial_oracle_check,
    sufficient_condition_check,
    unit_bisection,
    weak_multiplicativity_check,
    xi_isomorphism,
)
from openquantal.catalog import cyclic_table, group_quantale, two_point_quantale
from openquantal.errors import PreconditionError
from openquantal.groupoid import discrete_space, pair_groupoid, quantale_of, sierpinski_space
from openquantal.models import Status


def _z2():
    return group_quantale(("e", "g"), cyclic_table(2), "P(Z/2)")


def _passed(findings) -> bool:
    return all(finding.status != Status.FAIL for finding in findings)


def test_group_quantale_bisections_match_partial_units() -> None:
    """Summary: Verify P(Z/2) has three bisections and ξ maps them onto I(Q).

    Importance: On inverse quantal frames ℬ(Q) ≅ I(Q).
    Alternatives: Compare only cardinalities.
    """

    quantale = _z2()
    bisections = enumerate_bisections(quantale)
    assert len(bisections) == 3
    assert all(formula_pack(sigma) for sigma in bisections)
    result = xi_isomorphism(quantale)
    assert sorted(result.xi) == sorted(
        quantale.frame.index(name) for name in ("∅", "{e}", "{g}")
    )
    assert _passed(result.findings)


def test_inverse_is_an_involution() -> None:
    """Summary: Verify (σ⁻¹)⁻¹ = σ and σσ⁻¹σ = σ.

    Importance: ℬ(Q) must be an inverse semigroup.
    Alternatives: Check only the inverse of the unit bisection.
    """

    for sigma in enumerate_bisections(_z2()):
        inverse = bisection_inverse(sigma)
        assert bisection_inverse(inverse) == sigma
        first = bisection_product(sigma, inverse).product
        assert first is not None
        assert bisection_product(first, sigma).product == sigma


def test_unit_bisection_acts_trivially() -> None:
    """Summary: Verify ε = (1, υ) exists on P(Z/2) and fixes every element.

    Importance: The unit of ℬ(Q) comes from υ.
    Alternatives: Locate the unit by scanning the product table.
    """

    quantale = _z2()
    epsilon = unit_bisection(quantale)
    assert epsilon is not None
    assert epsilon.domain == quantale.top
    assert all(action(epsilon, a) == a for a in range(quantale.n))


def test_discrete_pair_groupoid_bisections() -> None:
    """Summary: Verify O(pair) is weakly multiplicative with seven bisections forming an ACP.

    Importance: ℬ(O(G)) of the discrete pair groupoid is I₂.
    Alternatives: Only count the bisections.
    """

    groupoid = pair_groupoid(discrete_space(("1", "2")), "pair")
    quantale = quantale_of(groupoid)
    bisections = enumerate_bisections(quantale)
    assert len(bisections) == 7
    weak = weak_multiplicativity_check(quantale, bisections)
    assert weak.holds
    assert weak.semigroup.semigroup is not None
    assert weak.semigroup.acp is not None and weak.semigroup.acp.holds
    assert _passed(weak.findings)
    assert _passed(bisection_laws(weak.semigroup, True))
    assert _passed(spatial_oracle_check(groupoid, bisections))


def test_sierpinski_pair_profile() -> None:
    """Summary: Verify O(pair(S)) is multiplicative and weakly multiplicative.

    Importance: The implication multiplicative ⇒ weakly multiplicative is checked per instance.
    Alternatives: Check only étale groupoids.
    """

    quantale = quantale_of(pair_groupoid(sierpinski_space(), "pair(S)"))
    profile = multiplicativity_profile(quantale)
    assert profile.flags() == {"multiplicative": True, "weakly_multiplicative": True}
    assert not [finding for finding in profile.findings if finding.red_flag]


def test_bisections_require_open_quantale() -> None:
    """Summary: Verify bisections are refused on Q_A, which fails (R).

    Importance: Bisections are defined on open quantal frames only.
    Alternatives: Return no bisections.
    """

    quantale = two_point_quantale(swap=False)
    with pytest.raises(PreconditionError):
        enumerate_bisections(quantale)
    profile = multiplicativity_profile(quantale)
    assert profile.weak is None
    assert profile.flags()["weakly_multiplicative"] is None


@pytest.mark.parametrize(
    "space, corollary",
    [
        (discrete_space(("1", "2")), Status.PASS),
        (sierpinski_space(), Status.NOT_APPLICABLE),
    ],
)
def test_sufficient_condition_yields_associative_product(space, corollary: Status) -> None:
    """Summary: Verify the condition with join-preserving σ·(−) gives an associative ℬ(Q).

    Importance: The conclusion is checked as a theorem, so a failure is a red flag.
    Alternatives: Report only whether the condition holds.
    """

    quantale = quantale_of(pair_groupoid(space, "pair"))
    findings = sufficient_condition_check(quantale)
    by_name = {finding.name: finding for finding in findings}
    assert by_name[SUFFICIENT_CONDITION].status == Status.PASS
    associative = by_name["condition ∧ σ·(−) joins ⇒ ℬ(Q) associative"]
    assert associative.status == Status.PASS
    assert by_name["discrete R(Q) ∧ σ·(−) joins ⇒ condition"].status == corollary
    assert not [finding for finding in findings if finding.red_flag]
