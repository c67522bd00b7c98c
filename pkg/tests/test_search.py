"""Summary: Tests for axiom patterns, frame specs, and the exhaustive structure search.

Importance: The search reproduces the independence examples, so it must find Q_A and Q_B.
Alternatives: Keep Q_A and Q_B only as fixtures.
"""

from __future__ import annotations

import pytest

from openquantal.catalog import two_point_quantale
from openquantal.errors import CapExceededError, InputError
from openquantal.iso import quantale_isomorphism
from openquantal.lattice import FiniteLattice
from openquantal.search import enumerate_structures, frame_from_family, parse_pattern, search


def test_parse_pattern_accepts_both_notations() -> None:
    """Summary: Verify symbolic and ASCII patterns parse to the same literals.

    Importance: Patterns are typed on the command line.
    Alternatives: Accept only the symbolic form.
    """

    symbolic = parse_pattern("B∧O∧U∧¬R")
    ascii_form = parse_pattern("B & O & U & !R")
    assert symbolic.literals == ascii_form.literals
    assert str(symbolic) == "B∧O∧U∧¬R"
    assert parse_pattern("¬¬M").literals[0].positive
    assert parse_pattern("M").literals[0].flag == "multiplicative"


def test_parse_pattern_rejects_unknown_flags() -> None:
    """Summary: Verify unknown flags and empty literals are input errors.

    Importance: A typo must not turn into an empty result.
    Alternatives: Ignore unknown literals.
    """

    with pytest.raises(InputError, match="unknown flag"):
        parse_pattern("B∧X")
    with pytest.raises(InputError, match="empty literal"):
        parse_pattern("B∧∧O")


def test_undefined_flags_match_neither_polarity() -> None:
    """Summary: Verify a literal on an undefined flag fails both ways.

    Importance: Flags whose hypotheses are unmet are not false.
    Alternatives: Treat undefined as false.
    """

    flags = {"B": True, "weakly_multiplicative": None}
    assert parse_pattern("B").matches(flags)
    assert not parse_pattern("W").matches(flags)
    assert not parse_pattern("¬W").matches(flags)


def test_frame_from_family() -> None:
    """Summary: Verify powerset and chain specs and their errors.

    Importance: Search targets are named on the command line.
    Alternatives: Require a frame file.
    """

    assert frame_from_family("powerset:2").n == 4
    assert frame_from_family("chain:3").n == 3
    for bad in ("powerset:0", "chain:x", "cube:2"):
        with pytest.raises(InputError):
            frame_from_family(bad)


def test_enumerate_structures_on_two_chain() -> None:
    """Summary: Verify the 2-chain carries exactly two quantale structures.

    Importance: 1·1 is either 0 or 1 and both are associative.
    Alternatives: Only check non-emptiness.
    """

    structures = enumerate_structures(FiniteLattice.chain(2), cap=8)
    assert len(structures) == 2
    assert {quantale.product(1, 1) for quantale in structures} == {0, 1}


def test_enumerate_structures_respects_cap() -> None:
    """Summary: Verify frames above the cap are refused.

    Importance: Search cost grows quickly with the frame.
    Alternatives: Warn and continue.
    """

    with pytest.raises(CapExceededError):
        enumerate_structures(frame_from_family("powerset:3"), cap=5)


@pytest.mark.parametrize(
    ("pattern", "swap"), [("B∧O∧U∧¬R", False), ("B∧O∧R∧¬U", True)]
)
def test_search_finds_independence_examples(pattern: str, swap: bool) -> None:
    """Summary: Verify the search on P({a,b}) finds Q_A and Q_B as witnesses.

    Importance: These two structures separate (R) from (U).
    Alternatives: Compare against the catalog without searching.
    """

    result = search(frame_from_family("powerset:2"), parse_pattern(pattern), cap=8)
    target = two_point_quantale(swap=swap)
    assert result.witnesses
    assert any(quantale_isomorphism(found, target) for found, _ in result.witnesses)
    assert result.findings == []


def test_search_finds_no_unital_open_quantale_that_is_not_inverse() -> None:
    """Summary: Verify unital∧open∧¬inverse has no witness on P({a,b}) while unital∧open does.

    Importance: A pattern contradicting a proved implication must come back empty.
    Alternatives: Trust the lemma suite on catalog instances only.
    """

    frame = frame_from_family("powerset:2")
    empty = search(frame, parse_pattern("unital∧open∧¬inverse"), cap=8)
    assert empty.structures
    assert empty.witnesses == []
    assert empty.findings == []
    positive = search(frame, parse_pattern("unital∧open"), cap=8)
    assert positive.witnesses
    assert all(flags["inverse"] for _, flags in positive.witnesses)
