"""Summary: Tests for bi-ideal closure, the reduced multiplication, and its adjoint.

Importance: Multiplicativity and the groupoid composition are read off μ₀*, so the closure
engine must agree with brute force.
Alternatives: Test μ₀* only through groupoid_of.
"""

from __future__ import annotations

import pytest

from openquantal.catalog import cyclic_table, group_quantale, two_chain, two_point_quantale
from openquantal.errors import CapExceededError
from openquantal.groupoid import pair_groupoid, quantale_of, sierpinski_space
from openquantal.lattice import identity_map
from openquantal.models import Status
from openquantal.tensor import (
    TensorLattice,
    brute_force_adjoint,
    injectivity,
    is_multiplicative,
    mu0,
    mu0_star,
    pushout_oracle,
    quotient_oracle,
    random_samples,
    sampled_injectivity,
    semicategory_check,
)


def _z2():
    return group_quantale(("e", "g"), cyclic_table(2), "P(Z/2)")


def _sierpinski_pair():
    return quantale_of(pair_groupoid(sierpinski_space(), "pair(S)"))


class _NoExchange(TensorLattice):
    def _apply_exchange(self, cols: list[int]) -> bool:
        return False


def test_two_chain_tensor_matches_pushout() -> None:
    """Summary: Verify 2⊗₂2 has two bi-ideals matching the pullback of points.

    Importance: The frame pushout of a frame with itself over itself is the frame.
    Alternatives: Check the ideal count only.
    """

    tensor = TensorLattice.over(two_chain())
    comparison = pushout_oracle(tensor, cap=8)
    assert comparison.verdict
    assert comparison.ideal_count == 2
    assert comparison.point_count == 1


def test_closure_is_independent_of_rule_order() -> None:
    """Summary: Verify each rule order reaches the same fixpoint on every pure tensor.

    Importance: The closure is a least fixpoint, so the order of rules cannot matter.
    Alternatives: Trust the default rule order.
    """

    tensor = TensorLattice.over(two_point_quantale(swap=False))
    reordered = tensor.with_rule_order(("exchange", "join", "down"))
    for a in range(tensor.left.n):
        for b in range(tensor.right.n):
            assert tensor.pure(a, b).cols == reordered.pure(a, b).cols


def test_rule_order_must_be_a_permutation() -> None:
    """Summary: Verify unknown or missing rule names are rejected.

    Importance: A missing rule would leave closures incomplete.
    Alternatives: Ignore unknown names.
    """

    tensor = TensorLattice.over(two_chain())
    with pytest.raises(ValueError):
        tensor.with_rule_order(("down", "join"))


def test_mu0_recovers_products_on_pure_tensors() -> None:
    """Summary: Verify μ₀(a⊗b) = a·b.

    Importance: μ₀ is the factorization of the multiplication through the tensor.
    Alternatives: Check only generators.
    """

    quantale = _z2()
    tensor = TensorLattice.over(quantale)
    for a in range(quantale.n):
        for b in range(quantale.n):
            assert mu0(tensor, tensor.pure(a, b)) == quantale.product(a, b)


def test_mu0_star_is_right_adjoint_to_mu0() -> None:
    """Summary: Verify μ₀(I) ≤ a iff I ≤ μ₀*(a) over all enumerated bi-ideals.

    Importance: Checks the closed-form adjoint against the enumeration oracle.
    Alternatives: Check only μ₀*(top).
    """

    quantale = _z2()
    tensor = TensorLattice.over(quantale)
    ideals = tensor.enumerate_ideals(cap=8)
    for a in range(quantale.n):
        upper = mu0_star(tensor, a)
        assert brute_force_adjoint(tensor, a, ideals) == upper
        for ideal in ideals:
            assert quantale.frame.le(mu0(tensor, ideal), a) == (ideal <= upper)


def test_group_quantale_is_multiplicative() -> None:
    """Summary: Verify P(Z/2) is multiplicative and its semicategory checks pass.

    Importance: Quantales of groupoids are multiplicative.
    Alternatives: Check multiplicativity only on groupoid quantales.
    """

    tensor = TensorLattice.over(_z2())
    assert is_multiplicative(tensor)
    findings = semicategory_check(tensor)
    assert findings
    assert all(finding.status == Status.PASS for finding in findings)


def test_enumeration_respects_cap() -> None:
    """Summary: Verify bi-ideal enumeration refuses quantales above the cap.

    Importance: Oracles are exhaustive and must stay bounded.
    Alternatives: Let the enumeration run unbounded.
    """

    tensor = TensorLattice.over(group_quantale(("0", "1", "2"), cyclic_table(3), "P(Z/3)"))
    with pytest.raises(CapExceededError):
        tensor.enumerate_ideals(cap=4)


def test_identity_tensor_map_is_injective() -> None:
    """Summary: Verify id⊗id is injective exactly and on seeded samples.

    Importance: The embeddability checks use both injectivity modes.
    Alternatives: Only use the exact mode.
    """

    quantale = _z2()
    tensor = TensorLattice.over(quantale)
    identity = identity_map(quantale.frame)
    assert injectivity(tensor, tensor, identity, identity)
    samples = random_samples(tensor, count=5, seed=3)
    assert len(samples) >= len(tensor.generators)
    assert sampled_injectivity(tensor, tensor, identity, samples)


@pytest.mark.parametrize(
    "build", [two_chain, lambda: two_point_quantale(False), _z2, _sierpinski_pair]
)
def test_quotient_of_sup_tensor_matches_bi_ideals(build) -> None:
    """Summary: Verify Q⊗Q modulo (a·z)⊗b = a⊗(z·b) is the bi-ideal lattice, order included.

    Importance: The quotient is computed from explicit pair sets without the closure rules.
    Alternatives: Compare only against the point pullback.
    """

    comparison = quotient_oracle(TensorLattice.over(build()), cap=8)
    assert comparison.verdict
    assert comparison.quotient_count == comparison.ideal_count
    assert comparison.tensor_count >= comparison.quotient_count


def test_quotient_counts_on_group_quantale_and_sierpinski_pair() -> None:
    """Summary: Verify trivial scalars leave P(Z/2)⊗P(Z/2) whole and the Sierpiński pair shrinks.

    Importance: R(Q) = {0, 1} imposes no relation, a three-element R(Q) does.
    Alternatives: Check the verdicts only.
    """

    group = quotient_oracle(TensorLattice.over(_z2()), cap=8)
    assert group.tensor_count == group.quotient_count == 16
    pair = quotient_oracle(TensorLattice.over(_sierpinski_pair()), cap=8)
    assert pair.quotient_count < pair.tensor_count


def test_quotient_oracle_detects_missing_exchange_rule() -> None:
    """Summary: Verify closing without the exchange rule yields bi-ideals outside the quotient.

    Importance: The oracle must catch an engine that forgets the scalar relations.
    Alternatives: Trust the closure rules.
    """

    base = TensorLattice.over(_sierpinski_pair())
    broken = _NoExchange(base.left, base.right, base.left_action, base.right_action, base.quantale)
    comparison = quotient_oracle(broken, cap=8)
    assert not comparison.verdict
    assert comparison.verdict.detail == "bi-ideal outside the quotient"
    assert comparison.ideal_count == comparison.tensor_count
    with pytest.raises(CapExceededError):
        quotient_oracle(base, cap=4)
