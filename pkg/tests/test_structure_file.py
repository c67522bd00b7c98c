"""Summary: Tests for loading, validating, and emitting structure files.

Importance: Every command starts from a structure file, so diagnostics must point at the field.
Alternatives: Test the loader only through the CLI.
"""

from __future__ import annotations

import json
from pathlib import Path

import pytest

from openquantal.catalog import load_entry
from openquantal.errors import InputError
from openquantal.iso import quantale_isomorphism
from openquantal.lattice import FiniteLattice, validate_frame
from openquantal.quantale import Quantale
from openquantal.structure_file import dumps, load, loads, parse_document, save, to_document

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def test_load_generator_fixture() -> None:
    """Summary: Verify Q_A loads from its generator table with expected flags.

    Importance: Generator tables are extended by joins before validation.
    Alternatives: Require the full multiplication table in every file.
    """

    structure = load(FIXTURES / "qA.json")
    assert structure.kind == "quantale"
    assert structure.title == "Q_A"
    assert isinstance(structure.subject, Quantale)
    assert structure.subject.n == 4
    assert structure.expected["R"] is False


def test_load_frame_fixture() -> None:
    """Summary: Verify M3 loads as a lattice even though it is not distributive.

    Importance: Frame files are checked by the frame command, not rejected by the loader.
    Alternatives: Reject non-distributive lattices on load.
    """

    structure = load(FIXTURES / "m3.json")
    assert isinstance(structure.subject, FiniteLattice)
    assert not validate_frame(structure.subject).distributive


def test_empty_file_reports_position() -> None:
    """Summary: Verify an empty document is an input error at line 1, column 1.

    Importance: Empty files are a common mistake in scripted runs.
    Alternatives: Treat empty files as an empty object.
    """

    with pytest.raises(InputError) as info:
        loads("  \n", "empty.json")
    assert info.value.location == "empty.json:1:1"


def test_malformed_json_reports_line_and_column() -> None:
    """Summary: Verify JSON syntax errors carry the decoder position.

    Importance: Hand-written files need exact positions.
    Alternatives: Report the decoder message without a position.
    """

    with pytest.raises(InputError) as info:
        loads('{\n  "kind": \n', "broken.json")
    assert info.value.location.startswith("broken.json:")


def test_unknown_kind_is_rejected() -> None:
    """Summary: Verify the kind field is validated first.

    Importance: Every other field depends on the kind.
    Alternatives: Guess the kind from the fields present.
    """

    with pytest.raises(InputError) as info:
        parse_document({"kind": "ring"})
    assert info.value.location == "kind"
    with pytest.raises(InputError):
        parse_document(["not", "an", "object"])


def test_undeclared_name_points_at_entry() -> None:
    """Summary: Verify an undeclared element in the product list names the offending entry.

    Importance: Diagnostics name the JSON path of the field.
    Alternatives: Report only the undeclared name.
    """

    document = json.loads((FIXTURES / "two_chain_q.json").read_text(encoding="utf-8"))
    document["mult"][2] = ["1", "0", "2"]
    with pytest.raises(InputError, match="undeclared") as info:
        parse_document(document)
    assert info.value.location == "mult[2]"


def test_conflicting_and_missing_products() -> None:
    """Summary: Verify duplicate products must agree and full tables must be total.

    Importance: Products are read as a function on pairs.
    Alternatives: Keep the last product listed.
    """

    document = json.loads((FIXTURES / "two_chain_q.json").read_text(encoding="utf-8"))
    conflicting = dict(document, mult=document["mult"] + [["1", "1", "0"]])
    with pytest.raises(InputError, match="conflicting"):
        parse_document(conflicting)
    missing = dict(document, mult=document["mult"][:3])
    with pytest.raises(InputError, match="missing product"):
        parse_document(missing)


def test_expected_flags_must_be_booleans() -> None:
    """Summary: Verify non-boolean expectations are rejected with their key.

    Importance: Expected flags drive the red-flag exit code.
    Alternatives: Coerce strings like "true".
    """

    document = {"kind": "frame", "powerset": ["a"], "expected": {"boolean": "yes"}}
    with pytest.raises(InputError) as info:
        parse_document(document)
    assert info.value.location == "expected.boolean"


def test_title_defaults_to_source_stem() -> None:
    """Summary: Verify untitled documents are named after their file.

    Importance: Reports and archives are keyed by title.
    Alternatives: Leave the title empty.
    """

    structure = parse_document({"kind": "frame", "powerset": ["a"]}, "fixtures/single.json")
    assert structure.title == "single"


def test_save_and_load_preserve_quantale(tmp_path: Path) -> None:
    """Summary: Verify an emitted quantale file loads back to an isomorphic quantale.

    Importance: Converted structures are written in the loader's own format.
    Alternatives: Compare the emitted JSON text.
    """

    quantale = load_entry("q-b").subject
    path = save(quantale, tmp_path / "out" / "qb.json")
    loaded = load(path)
    assert loaded.title == quantale.title
    assert quantale_isomorphism(quantale, loaded.subject) is not None


def test_to_document_keeps_expected_and_ideal_fields() -> None:
    """Summary: Verify emitted documents carry expected flags and stay valid JSON.

    Importance: Catalog documents pass through the same emitter.
    Alternatives: Add expectations after emission.
    """

    structure = load_entry("equivalence-3-ideal")
    assert structure.ideal is not None
    document = to_document(structure.subject, "copy", {"inverse": True})
    assert document["expected"] == {"inverse": True}
    assert json.loads(dumps(document))["title"] == "copy"
    with pytest.raises(TypeError):
        to_document(object())  # type: ignore[arg-type]
