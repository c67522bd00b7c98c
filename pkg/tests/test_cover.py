"""Summary: Tests for the cover L∨(ℬ(Q)), embeddability, involutive ideals, and the functor J.

Importance: The cover is where bisections are compared against the whole quantale, so both an
étale case and a non-étale case are pinned down.
Alternatives: Test the cover only through the cover command.
"""

from __future__ import annotations

import pytest

from openquantal.catalog import cyclic_table, group_quantale, load_entry, two_point_quantale
from openquantal.cover import (
    build_cover,
    cover_functor,
    embeddability_check,
    enough_bisections_check,
    eta_checks,
    ideal_check,
    ideal_subframe,
    weak_embeddability_check,
)
from openquantal.errors import CapExceededError, LatticeError, PreconditionError
from openquantal.groupoid import discrete_space, pair_groupoid, quantale_of, sierpinski_space
from openquantal.models import Status


def _z2():
    return group_quantale(("e", "g"), cyclic_table(2), "P(Z/2)")


def _passed(findings) -> bool:
    return all(finding.status != Status.FAIL for finding in findings)


def test_group_quantale_cover_is_isomorphic() -> None:
    """Summary: Verify L∨(ℬ(P(Z/2))) has four elements and j is injective.

    Importance: Inverse quantal frames have enough bisections.
    Alternatives: Compare only |Q̂| with |Q|.
    """

    quantale = _z2()
    cover = build_cover(quantale)
    assert cover.qhat.n == 4
    assert len(cover.elements) == 3
    assert len(set(cover.j.table)) == quantale.n
    assert enough_bisections_check(cover)
    assert _passed(cover.findings)
    assert _passed(eta_checks(cover))


def test_group_quantale_is_embeddable() -> None:
    """Summary: Verify weak embeddability and both exact embeddability modes on P(Z/2).

    Importance: Embeddable quantales are multiplicative with enough bisections.
    Alternatives: Only run the auto mode.
    """

    cover = build_cover(_z2())
    weak = weak_embeddability_check(cover)
    assert weak.holds
    assert _passed(weak.findings)
    exhaustive = embeddability_check(cover, weak)
    assert exhaustive.mode == "exhaustive"
    assert exhaustive.holds
    assert _passed(exhaustive.findings)
    exact = embeddability_check(cover, weak, mode="exact")
    assert exact.holds


def test_embeddability_modes_are_validated() -> None:
    """Summary: Verify unknown modes and over-cap exhaustive requests are refused.

    Importance: The exhaustive mode enumerates bi-ideals and must stay bounded.
    Alternatives: Fall back to the exact mode silently.
    """

    cover = build_cover(_z2())
    weak = weak_embeddability_check(cover)
    with pytest.raises(ValueError):
        embeddability_check(cover, weak, mode="fast")
    with pytest.raises(CapExceededError):
        embeddability_check(cover, weak, mode="exhaustive", tensor_cap=2)


def test_sierpinski_pair_lacks_enough_bisections() -> None:
    """Summary: Verify the Sierpiński pair groupoid has three bisections and j is not mono.

    Importance: Open groupoids that are not étale need not be determined by their bisections.
    Alternatives: Only check the étale flag.
    """

    groupoid = pair_groupoid(sierpinski_space(), "pair(S)")
    cover = build_cover(quantale_of(groupoid))
    assert len(cover.elements) == 3
    assert cover.qhat.n == 3
    verdict = enough_bisections_check(cover)
    assert not verdict
    assert len(verdict.witness) == 2
    functor = cover_functor(groupoid, cover=cover)
    assert not functor.applicable
    assert functor.findings[0].status == Status.NOT_APPLICABLE


def test_cover_functor_of_etale_groupoid_is_iso() -> None:
    """Summary: Verify J: Ĝ → G is an isomorphism for the discrete pair groupoid.

    Importance: The cover of an étale groupoid is the groupoid itself.
    Alternatives: Compare arrow counts only.
    """

    groupoid = pair_groupoid(discrete_space(("1", "2")), "pair")
    functor = cover_functor(groupoid)
    assert functor.applicable
    assert functor.iso
    assert sorted(functor.arrows) == list(range(groupoid.arrows.n))
    assert not [finding for finding in functor.findings if finding.red_flag]


def test_cover_requires_open_quantale() -> None:
    """Summary: Verify the cover is refused on Q_A.

    Importance: Bisections only exist on open quantal frames.
    Alternatives: Build an empty cover.
    """

    with pytest.raises(PreconditionError):
        build_cover(two_point_quantale(swap=False))


def test_invariant_open_gives_multiplicative_ideal() -> None:
    """Summary: Verify the ideal of the invariant open {1, 2} is open and multiplicative.

    Importance: The ideal is O of the restricted groupoid, which is étale.
    Alternatives: Check only the ideal conditions.
    """

    structure = load_entry("equivalence-3-ideal")
    witness = ideal_check(structure.subject, structure.ideal)
    assert witness.involutive_ideal
    assert witness.u_condition
    assert witness.standalone is not None
    assert witness.standalone.n == 16
    assert witness.multiplicative_open
    assert not [finding for finding in witness.findings if finding.red_flag]


def test_ideal_check_rejects_non_ideal() -> None:
    """Summary: Verify {∅, {g}} is not an ideal of P(Z/2).

    Importance: Q·I ⊆ I fails since g·g = e.
    Alternatives: Close the subset into an ideal.
    """

    quantale = _z2()
    chosen = [quantale.frame.index("∅"), quantale.frame.index("{g}")]
    witness = ideal_check(quantale, chosen)
    assert not witness.involutive_ideal
    assert witness.standalone is None


def test_ideal_subframe_needs_bottom() -> None:
    """Summary: Verify subsets without the bottom element are not subframes.

    Importance: Later checks treat I as a lattice.
    Alternatives: Add the bottom implicitly.
    """

    quantale = _z2()
    with pytest.raises(LatticeError, match="bottom"):
        ideal_subframe(quantale, [quantale.top])
    with pytest.raises(PreconditionError):
        ideal_check(two_point_quantale(swap=False), [0])
