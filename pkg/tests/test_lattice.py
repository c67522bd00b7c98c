"""Summary: Tests for finite lattices, frames, and adjoints.

Importance: Every other checker reduces to these tables, so their bounds must be right.
Alternatives: Trust the lattice tables and test only the quantale layer.
"""

from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from openquantal.errors import AdjointError, LatticeError
from openquantal.lattice import (
    FiniteLattice,
    LatticeMap,
    check_adjunction,
    compose,
    constant_map,
    identity_map,
    is_closure_operator,
    is_frame_hom,
    is_injective,
    is_monotone,
    left_adjoint,
    preserves_joins,
    right_adjoint,
    validate_frame,
)


def _m3() -> FiniteLattice:
    return FiniteLattice.from_pairs(
        ["0", "x", "y", "z", "1"],
        [("0", "x"), ("0", "y"), ("0", "z"), ("x", "1"), ("y", "1"), ("z", "1")],
    )


def test_powerset_names_and_bounds() -> None:
    """Summary: Verify powerset elements are named by their members and ordered by size.

    Importance: Structure files and reports refer to these names.
    Alternatives: Compare only element counts.
    """

    lattice = FiniteLattice.powerset(["a", "b"])
    assert lattice.names == ("∅", "{a}", "{b}", "{a,b}")
    assert lattice.bot == 0
    assert lattice.top == 3
    a, b = lattice.index("{a}"), lattice.index("{b}")
    assert lattice.join_rows[a][b] == lattice.top
    assert lattice.meet_rows[a][b] == lattice.bot
    assert lattice.join_irreducibles == (a, b)
    assert lattice.is_boolean


def test_chain_is_distributive_but_not_boolean() -> None:
    """Summary: Verify a three-element chain is a frame without complements.

    Importance: Chains are the simplest non-Boolean frames in the catalog.
    Alternatives: Check only two-element chains.
    """

    chain = FiniteLattice.chain(3)
    assert validate_frame(chain).distributive
    assert not chain.is_boolean
    assert chain.join_irreducibles == (1, 2)
    assert chain.complement(1) is None


def test_m3_is_not_a_frame() -> None:
    """Summary: Verify M3 fails distributivity with a named triple.

    Importance: Frame-only constructions must reject non-distributive lattices.
    Alternatives: Test only the boolean outcome.
    """

    witness = validate_frame(_m3())
    assert not witness.distributive
    assert len(witness.witness) == 3
    with pytest.raises(LatticeError):
        witness.require()


def test_from_pairs_rejects_non_lattice() -> None:
    """Summary: Verify two incomparable maxima are rejected.

    Importance: Structure files with missing bounds should fail with a witness.
    Alternatives: Accept posets and fail later.
    """

    with pytest.raises(LatticeError):
        FiniteLattice.from_pairs(["0", "x", "y"], [("0", "x"), ("0", "y")])


def test_from_leq_rejects_cycles() -> None:
    """Summary: Verify antisymmetry violations are reported.

    Importance: Orders entered by hand often contain accidental cycles.
    Alternatives: Silently identify the cycle.
    """

    with pytest.raises(LatticeError, match="antisymmetric"):
        FiniteLattice.from_leq(["a", "b"], np.ones((2, 2), dtype=bool))


def test_unknown_element_name() -> None:
    """Summary: Verify lookups of undeclared names raise LatticeError.

    Importance: Keeps typos in structure files from mapping to element 0.
    Alternatives: Return None for unknown names.
    """

    with pytest.raises(LatticeError):
        FiniteLattice.chain(2).index("7")


def test_right_adjoint_of_join_preserving_map() -> None:
    """Summary: Verify the right adjoint of a join-preserving map satisfies the adjunction.

    Importance: Residuals and μ₀* are computed this way.
    Alternatives: Compare against a hand-written table only.
    """

    lattice = FiniteLattice.powerset(["a", "b"])
    a = lattice.index("{a}")
    # x ↦ x ∧ {a}
    mapping = LatticeMap(lattice, lattice, tuple(lattice.meet_rows[a][x] for x in range(4)), "m")
    assert preserves_joins(mapping)
    # the top goes to {a}
    verdict = is_frame_hom(mapping)
    assert not verdict
    assert verdict.witness == ("{a,b}",)
    upper = right_adjoint(mapping)
    assert check_adjunction(mapping, upper)
    assert upper(lattice.bot) == lattice.index("{b}")
    assert is_closure_operator(compose(upper, mapping))


def test_adjoints_need_preservation() -> None:
    """Summary: Verify adjoints of non-preserving maps raise AdjointError.

    Importance: Adjunction formulas silently give wrong tables otherwise.
    Alternatives: Return None for undefined adjoints.
    """

    lattice = FiniteLattice.chain(3)
    top = constant_map(lattice, lattice, lattice.top, "c")
    assert is_monotone(top)
    assert not preserves_joins(top)
    with pytest.raises(AdjointError):
        right_adjoint(top)
    bottom = constant_map(lattice, lattice, lattice.bot, "z")
    with pytest.raises(AdjointError):
        left_adjoint(bottom)


def test_identity_is_injective_constant_is_not() -> None:
    """Summary: Verify injectivity witnesses name both colliding elements.

    Importance: Injectivity of the unit map is a reported embeddability condition.
    Alternatives: Compare image sizes.
    """

    lattice = FiniteLattice.chain(3)
    assert is_injective(identity_map(lattice))
    verdict = is_injective(constant_map(lattice, lattice, 0))
    assert not verdict
    assert verdict.witness == ("0", "1")


@given(st.integers(min_value=1, max_value=4))
def test_powerset_is_boolean_frame(size: int) -> None:
    """Summary: Property check that every small powerset is a Boolean frame.

    Importance: Boolean frames anchor the B axiom in searches.
    Alternatives: Check a fixed list of sizes.
    """

    lattice = FiniteLattice.powerset([f"p{i}" for i in range(size)])
    assert lattice.n == 2**size
    assert validate_frame(lattice).distributive
    assert lattice.is_boolean
    assert len(lattice.join_irreducibles) == size


@given(st.integers(min_value=1, max_value=6))
def test_chain_joins_are_maxima(length: int) -> None:
    """Summary: Property check that joins and meets in a chain are max and min.

    Importance: Guards the vectorized bound search in from_leq.
    Alternatives: Spot-check one chain.
    """

    chain = FiniteLattice.chain(length)
    for a in range(length):
        for b in range(length):
            assert chain.join_rows[a][b] == max(a, b)
            assert chain.meet_rows[a][b] == min(a, b)
