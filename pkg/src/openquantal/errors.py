"""Summary: Exception hierarchy for OpenQuantal.

Importance: Lets the CLI and API map failures to exit codes and HTTP statuses by class.
Alternatives: Raise builtin exceptions and inspect messages at the surfaces.
"""

from __future__ import annotations


class OpenQuantalError(Exception):
    """Summary: Base class for all OpenQuantal failures.

    Importance: Gives entrypoints a single type to catch for expected errors.
    Alternatives: Catch broad Exception at every surface.
    """


class StructureError(OpenQuantalError, ValueError):
    """Summary: Raised when supplied data violates the laws of its declared kind.

    Importance: Carries the offending location and witness names for precise diagnostics.
    Alternatives: Return validation results instead of raising.
    """

    def __init__(
        self,
        message: str,
        *,
        location: str | None = None,
        witness: tuple[str, ...] = (),
    ) -> None:
        self.location = location
        self.witness = tuple(witness)
        detail = message
        if location:
            detail = f"{location}: {detail}"
        if self.witness:
            detail = f"{detail} (witness: {', '.join(self.witness)})"
        super().__init__(detail)


class LatticeError(StructureError):
    """Summary: Raised when an order is not a lattice or a map breaks the lattice structure.

    Importance: Names the offending pair so fixtures can be repaired quickly.
    Alternatives: Use a plain StructureError.
    """


class SemigroupError(StructureError):
    """Summary: Raised when tables fail the inverse semigroup axioms.

    Importance: Distinguishes semigroup failures from lattice failures in reports.
    Alternatives: Use a plain StructureError.
    """


class GroupoidError(StructureError):
    """Summary: Raised when groupoid data breaks a category or groupoid law."""


class TopologyError(StructureError):
    """Summary: Raised when an open-set family is not a T0 topology or a map is discontinuous."""


class ActionError(StructureError):
    """Summary: Raised when an action is not by partial homeomorphisms between opens."""


class InputError(OpenQuantalError, ValueError):
    """Summary: Raised when a structure file cannot be parsed or names are undeclared.

    Importance: Maps to the input-error exit code of the CLI.
    Alternatives: Let json.JSONDecodeError propagate unchanged.
    """

    def __init__(self, message: str, *, location: str | None = None) -> None:
        self.location = location
        super().__init__(f"{location}: {message}" if location else message)


class AdjointError(OpenQuantalError, ValueError):
    """Summary: Raised when an adjoint is requested for a map that does not preserve joins or meets.

    Importance: Keeps adjunction formulas from silently producing non-adjoint tables.
    Alternatives: Return None for undefined adjoints.
    """

    def __init__(self, message: str, *, witness: tuple[str, ...] = ()) -> None:
        self.witness = tuple(witness)
        suffix = f" (witness: {', '.join(self.witness)})" if self.witness else ""
        super().__init__(f"{message}{suffix}")


class PreconditionError(OpenQuantalError, ValueError):
    """Summary: Raised when a construction is requested outside its hypotheses.

    Importance: Lets reports mark a check not-applicable instead of failed.
    Alternatives: Return sentinel values from constructions.
    """


class InconsistencyError(OpenQuantalError, RuntimeError):
    """Summary: Raised when a proved property fails on an instance meeting its hypotheses.

    Importance: Signals an engine bug; surfaces it as a red flag.
    Alternatives: Log a warning and continue.
    """


class CapExceededError(OpenQuantalError, RuntimeError):
    """Summary: Raised when an exhaustive enumeration would exceed its configured cap."""
