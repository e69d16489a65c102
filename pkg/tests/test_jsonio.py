from __future__ import annotations

import json

import pytest

from hmreq import diagnostics as diag
from hmreq.jsonio import (
    ExportBlocked,
    SchemaError,
    from_json,
    structurally_equal,
    to_json,
)
from hmreq.source import Span
from tests.conftest import CORPUS_FILES, parse_file, parse_ok

HEADER = "stakeholder Worker\nstakeholder Boss\nactor System\n"

REQ = (
    'req R1: While a Worker "is on shift", the System shall track '
    '"the location" of the Worker by means of "a GPS sensor" '
    'every "single" day. Relevant-Stakeholders: Worker, Boss.\n'
)

# Expected export payload, written out by hand from the schema.
GOLDEN = {
    "schemaVersion": "1",
    "declarations": [
        {"kind": "stakeholder", "name": "Worker"},
        {"kind": "stakeholder", "name": "Boss"},
        {"kind": "actor", "name": "System"},
    ],
    "requirements": [
        {
            "id": "R1",
            "pre": {
                "variant": "while",
                "subject": {"actor": "Worker", "article": "a"},
                "condition": "is on shift",
            },
            "actor": "System",
            "modal": "shall",
            "negated": False,
            "block": {
                "rule": "assessment-34.1",
                "verb": "track",
                "args": [
                    {"kind": "text", "value": "the location"},
                    {"kind": "keyword", "value": "of"},
                    {"kind": "actor", "value": "Worker", "article": "the"},
                ],
                "adjuncts": {
                    "means": "a GPS sensor",
                    "frequency": {"value": "single", "unit": "day"},
                },
            },
            "stakeholders": ["Worker", "Boss"],
        }
    ],
}


def test_export_matches_golden_payload(lexicon):
    doc = parse_ok(HEADER + REQ, lexicon)
    assert json.loads(to_json(doc)) == GOLDEN


def test_export_is_byte_stable(lexicon):
    doc = parse_ok(HEADER + REQ, lexicon)
    assert to_json(doc) == to_json(doc)
    doc2 = parse_ok(HEADER + REQ, lexicon)
    assert to_json(doc) == to_json(doc2)


def test_import_inverts_export_up_to_spans(lexicon):
    doc = parse_ok(HEADER + REQ, lexicon)
    imported = from_json(to_json(doc), lexicon)
    assert structurally_equal(doc, imported)
    # Spans differ, so plain equality would not hold; structural
    # equality is defined over the canonical export.
    assert imported.requirements[0].span == Span(0, 0)


def test_round_trip_over_corpus(lexicon):
    for path in CORPUS_FILES:
        doc, _ = parse_file(path, lexicon)
        assert doc is not None
        assert structurally_equal(doc, from_json(to_json(doc), lexicon))


def test_empty_document_export(lexicon):
    doc = parse_ok("", lexicon)
    assert json.loads(to_json(doc)) == {
        "schemaVersion": "1",
        "declarations": [],
        "requirements": [],
    }


def test_missing_schema_version_read_as_version_1(lexicon):
    payload = dict(GOLDEN)
    del payload["schemaVersion"]
    doc = from_json(json.dumps(payload), lexicon)
    assert doc.requirements[0].id == "R1"


def test_unsupported_schema_version_rejected(lexicon):
    payload = dict(GOLDEN)
    payload["schemaVersion"] = "2"
    with pytest.raises(SchemaError) as exc:
        from_json(json.dumps(payload), lexicon)
    assert exc.value.path == "schemaVersion"


def test_export_dedupes_stakeholders(lexicon):
    text = HEADER + (
        'req R1: The System shall detect "smoke". '
        "Relevant-Stakeholders: Worker, Worker, Boss.\n"
    )
    doc = parse_ok(text, lexicon)
    payload = json.loads(to_json(doc))
    assert payload["requirements"][0]["stakeholders"] == ["Worker", "Boss"]


def test_export_blocked_with_error_diagnostics(lexicon):
    doc = parse_ok(HEADER + REQ, lexicon)
    bad = [diag.error(diag.E_SYNTAX, "boom", Span(0, 1))]
    with pytest.raises(ExportBlocked):
        to_json(doc, bad)
    # Warnings do not block.
    warn = [diag.warning(diag.W_UNUSED_STAKEHOLDER, "meh", Span(0, 1))]
    assert json.loads(to_json(doc, warn)) == GOLDEN


def _mutated(**changes):
    payload = json.loads(json.dumps(GOLDEN))
    for path, value in changes.items():
        target = payload
        parts = path.split(".")
        for part in parts[:-1]:
            target = target[int(part)] if part.isdigit() else target[part]
        last = parts[-1]
        key = int(last) if last.isdigit() else last
        if value is ...:
            del target[key]
        else:
            target[key] = value
    return json.dumps(payload)


def test_unknown_rule_names_the_rule(lexicon):
    with pytest.raises(SchemaError) as exc:
        from_json(
            _mutated(**{"requirements.0.block.rule": "made-up-99"}), lexicon
        )
    assert "made-up-99" in str(exc.value)
    assert exc.value.path == "requirements[0].block.rule"


def test_verb_must_belong_to_rule(lexicon):
    with pytest.raises(SchemaError) as exc:
        from_json(
            _mutated(**{"requirements.0.block.verb": "notify"}), lexicon
        )
    assert exc.value.path == "requirements[0].block.verb"


def test_undeclared_actor_rejected(lexicon):
    with pytest.raises(SchemaError) as exc:
        from_json(_mutated(**{"requirements.0.actor": "Ghost"}), lexicon)
    assert exc.value.path == "requirements[0].actor"


def test_stakeholder_must_be_declared_stakeholder(lexicon):
    with pytest.raises(SchemaError) as exc:
        from_json(
            _mutated(**{"requirements.0.stakeholders": ["System"]}),
            lexicon,
        )
    assert exc.value.path == "requirements[0].stakeholders[0]"


def test_empty_stakeholders_rejected(lexicon):
    with pytest.raises(SchemaError) as exc:
        from_json(
            _mutated(**{"requirements.0.stakeholders": []}), lexicon
        )
    assert exc.value.path == "requirements[0].stakeholders"


def test_duplicate_requirement_ids_rejected(lexicon):
    payload = json.loads(json.dumps(GOLDEN))
    payload["requirements"].append(payload["requirements"][0])
    with pytest.raises(SchemaError) as exc:
        from_json(json.dumps(payload), lexicon)
    assert exc.value.path == "requirements[1].id"


def test_duplicate_declarations_rejected(lexicon):
    payload = json.loads(json.dumps(GOLDEN))
    payload["declarations"].append(
        {"kind": "actor", "name": "Worker"}
    )
    with pytest.raises(SchemaError):
        from_json(json.dumps(payload), lexicon)


def test_args_must_fit_the_rule_frame(lexicon):
    with pytest.raises(SchemaError) as exc:
        from_json(
            _mutated(
                **{
                    "requirements.0.block.args": [
                        {"kind": "keyword", "value": "of"}
                    ]
                }
            ),
            lexicon,
        )
    assert "assessment-34.1" in str(exc.value)


def test_ubiquitous_pre_must_not_carry_condition(lexicon):
    with pytest.raises(SchemaError):
        from_json(
            _mutated(
                **{
                    "requirements.0.pre": {
                        "variant": "ubiquitous",
                        "condition": "x",
                    }
                }
            ),
            lexicon,
        )


def test_where_pre_must_not_carry_subject(lexicon):
    with pytest.raises(SchemaError):
        from_json(
            _mutated(
                **{
                    "requirements.0.pre": {
                        "variant": "where",
                        "condition": "x",
                        "subject": {"actor": "Worker"},
                    }
                }
            ),
            lexicon,
        )


def test_quoted_text_cannot_contain_double_quote(lexicon):
    with pytest.raises(SchemaError):
        from_json(
            _mutated(
                **{"requirements.0.block.args.0.value": 'say "hi"'}
            ),
            lexicon,
        )


def test_not_json_reports_schema_error(lexicon):
    with pytest.raises(SchemaError, match="JSON"):
        from_json("{oops", lexicon)


def test_unknown_top_level_key_rejected(lexicon):
    payload = json.loads(json.dumps(GOLDEN))
    payload["extras"] = 1
    with pytest.raises(SchemaError, match="extras"):
        from_json(json.dumps(payload), lexicon)


def test_structural_equality_ignores_spans(lexicon):
    a = parse_ok(HEADER + REQ, lexicon)
    b = parse_ok("  \n" + HEADER + REQ, lexicon)  # shifted spans
    assert structurally_equal(a, b)
