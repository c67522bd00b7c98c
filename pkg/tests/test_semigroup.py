"""Summary: Tests for inverse semigroups, the ACP check, and the L∨ completion.

Importance: The completion is one leg of the round trip between ACPs and inverse quantal frames.
Alternatives: Test the completion only through the roundtrip command.
"""

from __future__ import annotations

import pytest

from openquantal.catalog import (
    cyclic_table,
    group_quantale,
    load_entry,
    partial_injections,
    symmetric_inverse_document,
    two_point_quantale,
)
from openquantal.errors import PreconditionError, SemigroupError
from openquantal.groupoid import discrete_space, pair_groupoid, quantale_of
from openquantal.iso import quantale_isomorphism, semigroup_isomorphism
from openquantal.models import Status
from openquantal.semigroup import (
    acp_check,
    compatible_cliques,
    completion_checks,
    lcc_completion,
    partial_units_semigroup,
    validate_inverse_semigroup,
)
from openquantal.services import semigroup_roundtrip
from openquantal.structure_file import parse_document


def _i2():
    return load_entry("i2").subject


def test_partial_injections_of_two_points() -> None:
    """Summary: Verify I₂ has seven partial injections, smallest domains first.

    Importance: The catalog builds I₂ and its action from this list.
    Alternatives: Hard-code the seven maps.
    """

    maps = partial_injections(("1", "2"))
    assert len(maps) == 7
    assert maps[0] == {}
    assert sum(1 for partial in maps if len(partial) == 2) == 2


def test_i2_order_and_idempotents() -> None:
    """Summary: Verify the idempotents and zero of I₂ and the natural order on them.

    Importance: Compatibility and joins are derived from these matrices.
    Alternatives: Compare against a different presentation of I₂.
    """

    semigroup = _i2()
    assert semigroup.n == 7
    assert len(semigroup.idempotents) == 4
    assert semigroup.zero == semigroup.index["0"]
    e1, e2 = semigroup.index["[11]"], semigroup.index["[22]"]
    one = semigroup.index["[11,22]"]
    assert semigroup.le(e1, one)
    assert not semigroup.le(one, e1)
    assert semigroup.compatible[e1, e2]
    assert semigroup.natural_join((e1, e2)) == one


def test_i2_is_acp_and_completes_to_sixteen_elements() -> None:
    """Summary: Verify I₂ is an ACP whose completion is the powerset of four arrows and O(pair).

    Importance: L∨(I₂) is the quantale of the discrete pair groupoid.
    Alternatives: Only check the ACP flag.
    """

    semigroup = _i2()
    witness = acp_check(semigroup)
    assert witness.holds
    completion = lcc_completion(semigroup, witness)
    assert completion.quantale.n == 16
    assert completion.quantale.classification.inverse
    findings = completion_checks(completion)
    assert all(finding.status == Status.PASS for finding in findings)
    pair = quantale_of(pair_groupoid(discrete_space(("1", "2")), "pair"))
    assert quantale_isomorphism(completion.quantale, pair) is not None
    units = partial_units_semigroup(completion.quantale)
    assert semigroup_isomorphism(units.semigroup, semigroup) is not None
    assert semigroup_roundtrip(semigroup, completion.quantale, 4).status == Status.PASS


def test_compatible_cliques_respect_size() -> None:
    """Summary: Verify clique enumeration stops at the requested size.

    Importance: The ACP check is bounded by this cap.
    Alternatives: Enumerate every subset and filter.
    """

    semigroup = _i2()
    singles = compatible_cliques(semigroup, 1)
    assert len(singles) == semigroup.n
    assert all(len(clique) <= 2 for clique in compatible_cliques(semigroup, 2))


def test_z2_completion_is_its_powerset() -> None:
    """Summary: Verify Z/2 completes to P(Z/2) with a new empty bottom.

    Importance: Semigroups without zero gain ∅ as the bottom of L∨(S).
    Alternatives: Require a zero in every input semigroup.
    """

    semigroup = load_entry("z2-semigroup").subject
    completion = lcc_completion(semigroup)
    assert completion.quantale.n == 4
    assert completion.quantale.names[0] == "⟨⟩"
    assert all(finding.status == Status.PASS for finding in completion_checks(completion))


def test_left_zero_semigroup_is_rejected() -> None:
    """Summary: Verify a semigroup with non-unique inverses fails validation.

    Importance: Only inverse semigroups may enter the ACP pipeline.
    Alternatives: Accept regular semigroups.
    """

    with pytest.raises(SemigroupError, match="not unique"):
        load_entry("left-zero")


def test_validate_rejects_bad_inverse_map() -> None:
    """Summary: Verify a wrong inverse for a group element is rejected.

    Importance: Inverse maps in files are declared, not computed.
    Alternatives: Compute inverses and ignore the declared map.
    """

    with pytest.raises(SemigroupError):
        validate_inverse_semigroup(["e", "g"], [[0, 1], [1, 0]], [0, 0])


def test_i2_document_round_trips_through_loader() -> None:
    """Summary: Verify the generated I₂ document loads as an inverse semigroup.

    Importance: Catalog documents and fixture files share the loader.
    Alternatives: Build the semigroup object directly.
    """

    structure = parse_document(symmetric_inverse_document(("1", "2")), "i2")
    assert structure.kind == "inverse_semigroup"
    assert structure.subject.n == 7


def test_partial_units_semigroup_of_group_quantale() -> None:
    """Summary: Verify I(P(Z/2)) is an ACP and its completion is isomorphic to P(Z/2).

    Importance: Closes the round trip from inverse quantal frames back to ACPs.
    Alternatives: Only compare element counts.
    """

    quantale = group_quantale(("e", "g"), cyclic_table(2), "P(Z/2)")
    result = partial_units_semigroup(quantale)
    assert result.acp.holds
    assert result.iso is not None
    assert result.completion.quantale.n == quantale.n


def test_partial_units_semigroup_requires_inverse_quantale() -> None:
    """Summary: Verify non-inverse quantales are refused.

    Importance: I(Q) is only an ACP for inverse quantal frames.
    Alternatives: Build I(Q) and let validation fail.
    """

    with pytest.raises(PreconditionError):
        partial_units_semigroup(two_point_quantale(swap=False))


def test_with_zero_adjoins_an_absorbing_element() -> None:
    """Summary: Verify S⁰ gains one absorbing element and keeps an existing zero.

    Importance: I(L∨(S)) is compared with S⁰ when S has no zero.
    Alternatives: Strip the bottom from the partial units instead.
    """

    semigroup = load_entry("z2-semigroup").subject
    assert semigroup.zero is None
    pointed = semigroup.with_zero()
    assert pointed.n == 3
    assert pointed.zero == 2
    assert pointed.names[2] == "0"
    assert pointed.inv[2] == 2
    assert all(pointed.product(s, t) == semigroup.product(s, t) for s in (0, 1) for t in (0, 1))
    i2 = _i2()
    assert i2.zero is not None
    assert i2.with_zero() is i2


@pytest.mark.parametrize("name", ["z2-semigroup", "i2"])
def test_semigroup_roundtrip_holds_with_or_without_zero(name: str) -> None:
    """Summary: Verify I(L∨(S)) ≅ S for I₂ and I(L∨(Z/2)) ≅ (Z/2)⁰.

    Importance: A semigroup without zero gains the empty down-set as bottom.
    Alternatives: Exclude semigroups without zero from the round trip.
    """

    semigroup = load_entry(name).subject
    completion = lcc_completion(semigroup)
    finding = semigroup_roundtrip(semigroup, completion.quantale, 4)
    assert finding.status == Status.PASS
    assert not finding.red_flag
