"""Each invalid fixture must fail with its designated diagnostic code."""

from __future__ import annotations

import pytest

from hmreq import diagnostics as diag
from hmreq.cli import main
from tests.conftest import INVALID_DIR, parse_file

EXPECTED_CODES = {
    "undeclared_actor.hmreq": diag.E_UNDECLARED_ACTOR,
    "undeclared_stakeholder.hmreq": diag.E_UNDECLARED_STAKEHOLDER,
    "missing_stakeholders.hmreq": diag.E_MISSING_STAKEHOLDERS,
    "unknown_verb.hmreq": diag.E_UNKNOWN_VERB,
    "frame_mismatch.hmreq": diag.E_FRAME_MISMATCH,
    "duplicate_requirement_id.hmreq": diag.E_DUPLICATE_REQUIREMENT_ID,
    "duplicate_declaration.hmreq": diag.E_DUPLICATE_DECLARATION,
    "unterminated_string.hmreq": diag.E_UNTERMINATED_STRING,
    "missing_period.hmreq": diag.E_SYNTAX,
    "conjunction_condition.hmreq": diag.E_UNSUPPORTED_CONJUNCTION,
    "bad_modal.hmreq": diag.E_SYNTAX,
    "missing_condition.hmreq": diag.E_SYNTAX,
}


def test_fixture_directory_is_fully_covered():
    found = sorted(p.name for p in INVALID_DIR.glob("*.hmreq"))
    assert found == sorted(EXPECTED_CODES)
    assert len(found) >= 10


def test_every_error_code_is_exercised():
    assert set(EXPECTED_CODES.values()) == set(diag.ALL_ERROR_CODES)


@pytest.mark.parametrize("name", sorted(EXPECTED_CODES))
def test_fixture_fails_with_designated_code(name, lexicon):
    doc, diags = parse_file(INVALID_DIR / name, lexicon)
    assert doc is None
    codes = [d.code for d in diags if d.is_error]
    assert EXPECTED_CODES[name] in codes, codes


@pytest.mark.parametrize("name", sorted(EXPECTED_CODES))
def test_fixture_exits_one_via_cli(name, capsys):
    code = main(["check", str(INVALID_DIR / name), "--format", "machine"])
    captured = capsys.readouterr()
    assert code == 1
    assert EXPECTED_CODES[name] in captured.out
