"""Summary: Tests for the built-in catalog of named structures.

Importance: Catalog entries are the regression suite, so each must load with the kind it declares.
Alternatives: Keep every instance as a fixture file.
"""

from __future__ import annotations

import pytest

from openquantal.catalog import CATALOG, catalog_names, get_entry, load_entry
from openquantal.errors import InputError, LatticeError, SemigroupError

REJECTED = {"meet-semilattice", "left-zero"}


@pytest.mark.parametrize("name", sorted(set(CATALOG) - REJECTED))
def test_catalog_entry_loads(name: str) -> None:
    """Summary: Verify each catalog entry loads with its declared kind and title.

    Importance: A broken builder would otherwise surface only in the CLI.
    Alternatives: Load a sample of entries.
    """

    entry = get_entry(name)
    structure = load_entry(name)
    assert structure.kind == entry.kind
    assert structure.title == name
    assert dict(structure.expected) == dict(entry.expected)


def test_rejected_entries_raise() -> None:
    """Summary: Verify the two negative entries are refused by the loader.

    Importance: The catalog documents what the loader rejects.
    Alternatives: Leave negative examples out of the catalog.
    """

    with pytest.raises(LatticeError):
        load_entry("meet-semilattice")
    with pytest.raises(SemigroupError):
        load_entry("left-zero")


def test_catalog_names_are_sorted() -> None:
    """Summary: Verify names are listed in order and unknown names are input errors.

    Importance: The catalog command prints this list.
    Alternatives: Print entries in definition order.
    """

    names = catalog_names()
    assert names == sorted(names)
    assert "z2-quantale" in names
    with pytest.raises(InputError, match="unknown catalog instance"):
        get_entry("nope")
