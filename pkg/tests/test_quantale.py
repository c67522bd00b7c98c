"""Summary: Tests for quantale validation, axiom classification, and derived lemmas.

Importance: Classification gates every construction, so its verdicts must be exact.
Alternatives: Compare only against catalog expectations through the CLI.
"""

from __future__ import annotations

import pytest

from openquantal.catalog import cyclic_table, group_quantale, two_chain, two_point_quantale
from openquantal.errors import CapExceededError, PreconditionError, StructureError
from openquantal.lattice import FiniteLattice
from openquantal.models import Status
from openquantal.quantale import (
    INVERSE_LEMMAS,
    OPEN_LEMMAS,
    SEMIOPEN_LEMMAS,
    U_LEMMAS,
    Quantale,
    derived_lemma_suite,
    find_supports,
    partial_units,
    support_check,
    upsilon,
    upsilon_pair_form,
)


def test_two_chain_is_inverse() -> None:
    """Summary: Verify the 2-chain with meet is an inverse quantal frame.

    Importance: The smallest inverse quantal frame anchors the classification.
    Alternatives: Test only larger group quantales.
    """

    quantale = two_chain()
    flags = quantale.classification.flags()
    assert flags["B"] and flags["O"] and flags["R"] and flags["U"]
    assert flags["unital"]
    assert flags["inverse"]
    assert quantale.unit == quantale.top
    assert quantale.rs == (0, 1)


def test_q_a_fails_only_right_sided_law() -> None:
    """Summary: Verify P({a,b}) with trivial involution satisfies (B), (O), (U) but not (R).

    Importance: Shows (R) is independent of the other axioms.
    Alternatives: Trust the catalog description.
    """

    flags = two_point_quantale(swap=False).classification
    assert flags.balanced and flags.open_law and flags.u_law
    assert not flags.rs_law
    assert flags.rs_law.witness
    assert not flags.semiopen


def test_q_b_fails_only_u_law() -> None:
    """Summary: Verify the swap involution gives (B), (O), (R) without (U).

    Importance: Shows (U) is independent of the other axioms.
    Alternatives: Check (U) with a hand-written instance only.
    """

    flags = two_point_quantale(swap=True).classification
    assert flags.balanced and flags.open_law and flags.rs_law
    assert not flags.u_law
    assert "xx*x" in flags.u_law.detail


def test_group_quantale_support_and_partial_units() -> None:
    """Summary: Verify P(Z/3) has a unique stable support and I(Q) covers the top.

    Importance: Group quantales are the textbook inverse quantal frames.
    Alternatives: Only check the inverse flag.
    """

    quantale = group_quantale(("0", "1", "2"), cyclic_table(3), "P(Z/3)")
    assert quantale.classification.inverse
    support = support_check(quantale)
    assert support.holds
    assert support.stable
    assert support.rs_iso
    assert find_supports(quantale, cap=16) == [support.table]
    units = partial_units(quantale)
    assert units.cover
    singletons = {quantale.frame.index(name) for name in ("{0}", "{1}", "{2}")}
    assert singletons <= set(units.elements)


def test_upsilon_forms_agree() -> None:
    """Summary: Verify the two formulas for υ give the same table.

    Importance: Both forms are used by different checkers.
    Alternatives: Use only one form everywhere.
    """

    for quantale in (two_chain(), two_point_quantale(False), two_point_quantale(True)):
        for a in range(quantale.n):
            assert upsilon(quantale, a) == upsilon_pair_form(quantale, a)


def test_residuals_are_adjoint_to_multiplication() -> None:
    """Summary: Verify x·y ≤ a exactly when y ≤ x\\a and x ≤ a/y.

    Importance: Residuals are computed from generators and must cover all elements.
    Alternatives: Compare to brute-force residuals on one element.
    """

    quantale = two_point_quantale(swap=True)
    frame = quantale.frame
    for x in range(quantale.n):
        for y in range(quantale.n):
            for a in range(quantale.n):
                fits = frame.le(quantale.product(x, y), a)
                assert fits == frame.le(y, quantale.residual_right[x][a])
                assert fits == frame.le(x, quantale.residual_left[y][a])


def test_unital_quantale_with_nilpotent_atom_has_no_support() -> None:
    """Summary: Verify ς(a) = a1 ∧ e is rejected when a ≰ ς(a)a.

    Importance: A failing candidate must never count as a support, or unital
    quantales get classified as inverse.
    Alternatives: Compare only the classification flags.
    """

    frame = FiniteLattice.powerset(("a", "b"))
    a, b = frame.index("{a}"), frame.index("{b}")
    # {b} is the unit and {a}·{a} = ∅
    quantale = Quantale.from_generators(
        frame, {(a, a): 0, (a, b): a, (b, a): a, (b, b): b}, {a: a, b: b}, "nilpotent"
    )
    assert quantale.unit == b
    report = support_check(quantale)
    assert not report.holds
    assert report.verdict.witness == ("{a}",)
    assert "ς(a)a" in report.verdict.detail
    assert report.table is None
    assert find_supports(quantale, 16) == []
    flags = quantale.classification.flags()
    assert flags["unital"]
    assert not flags["support"]
    assert not flags["inverse"]
    assert not [finding for finding in derived_lemma_suite(quantale) if finding.red_flag]


def test_build_rejects_non_distributive_table() -> None:
    """Summary: Verify a multiplication that does not distribute over joins is rejected.

    Importance: Every structure reaching the checkers must satisfy the quantale laws.
    Alternatives: Validate lazily.
    """

    frame = FiniteLattice.chain(3)
    # 1·(1 ∨ 2) = 1 but 1·1 ∨ 1·2 = 2
    table = [[0, 0, 0], [0, 2, 1], [0, 1, 2]]
    with pytest.raises(StructureError, match="distribute") as info:
        Quantale.build(frame, table, [0, 1, 2])
    assert info.value.witness


def test_build_rejects_non_frame() -> None:
    """Summary: Verify quantales over M3 are rejected.

    Importance: Quantal frames require a distributive base lattice.
    Alternatives: Accept any complete lattice.
    """

    frame = FiniteLattice.from_pairs(
        ["0", "x", "y", "z", "1"],
        [("0", "x"), ("0", "y"), ("0", "z"), ("x", "1"), ("y", "1"), ("z", "1")],
    )
    table = [[frame.meet_rows[a][b] for b in range(5)] for a in range(5)]
    with pytest.raises(StructureError):
        Quantale.build(frame, table, list(range(5)))


def test_from_generators_requires_all_generator_products() -> None:
    """Summary: Verify a missing generator product names the offending pair.

    Importance: Structure files written by hand often omit a product.
    Alternatives: Default missing products to bottom.
    """

    frame = FiniteLattice.powerset(("a", "b"))
    a, b = frame.index("{a}"), frame.index("{b}")
    with pytest.raises(StructureError, match="missing product"):
        Quantale.from_generators(frame, {(a, a): a, (b, b): b, (a, b): 0}, {a: a, b: b})


def test_partial_units_need_a_unit() -> None:
    """Summary: Verify non-unital quantales refuse partial-unit and support constructions.

    Importance: These are gated constructions, reported as not applicable.
    Alternatives: Return empty results.
    """

    frame = FiniteLattice.chain(2)
    zero = Quantale.build(frame, [[0, 0], [0, 0]], [0, 1], "zero")
    assert zero.unit is None
    with pytest.raises(PreconditionError):
        partial_units(zero)
    with pytest.raises(PreconditionError):
        support_check(zero)


def test_support_search_respects_cap() -> None:
    """Summary: Verify the exhaustive support search refuses instances above its cap.

    Importance: Caps keep exhaustive checks bounded.
    Alternatives: Let the search run unbounded.
    """

    with pytest.raises(CapExceededError):
        find_supports(group_quantale(("0", "1", "2"), cyclic_table(3), "P(Z/3)"), cap=4)


def test_derived_lemmas_raise_no_red_flags_on_catalog_quantales() -> None:
    """Summary: Verify the lemma suite passes on every catalog quantale.

    Importance: A red flag here signals an engine bug.
    Alternatives: Check lemmas only on inverse quantal frames.
    """

    for quantale in (
        two_chain(),
        two_point_quantale(False),
        two_point_quantale(True),
        group_quantale(("e", "g"), cyclic_table(2), "P(Z/2)"),
    ):
        findings = derived_lemma_suite(quantale)
        assert findings
        assert not [finding for finding in findings if finding.red_flag]
        assert all(finding.status != Status.FAIL for finding in findings)


@pytest.mark.parametrize("swap, applicable", [(True, False), (None, True)])
def test_lemma_suite_reports_every_guarded_lemma(swap: bool | None, applicable: bool) -> None:
    """Summary: Verify each guarded lemma appears once, checked or marked not applicable.

    Importance: Lemmas whose hypotheses fail must stay visible in the report.
    Alternatives: Omit unmet lemmas from the report.
    """

    quantale = two_chain() if swap is None else two_point_quantale(swap)
    findings = derived_lemma_suite(quantale)
    by_name = {finding.name: finding for finding in findings}
    guarded = U_LEMMAS + SEMIOPEN_LEMMAS + OPEN_LEMMAS + INVERSE_LEMMAS
    assert len(findings) == len(by_name)
    for name in guarded:
        status = by_name[name].status
        if applicable:
            assert status == Status.PASS
        else:
            assert status == Status.NOT_APPLICABLE
