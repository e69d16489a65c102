from __future__ import annotations

import json

import pytest

from hmreq.lexicon import (
    ElementKind,
    LexiconError,
    load_lexicon,
    load_seed_lexicon,
)


def make(rules):
    return json.dumps({"version": "1", "rules": rules})


MINIMAL_RULE = {
    "class": "see-30.1",
    "verbs": ["detect"],
    "frame": [{"kind": "verb"}, {"kind": "text", "optional": True}],
}


def test_seed_lexicon_loads():
    lex = load_seed_lexicon()
    assert lex.version == "1"
    assert len(lex.rules) == 15
    assert lex.verb_count == 67


def test_verb_count_equals_sum_over_rules():
    lex = load_seed_lexicon()
    assert lex.verb_count == sum(len(r.verbs) for r in lex.rules)


def test_verbs_are_disjoint_across_rules():
    lex = load_seed_lexicon()
    seen = set()
    for rule in lex.rules:
        for verb in rule.verbs:
            assert verb not in seen
            seen.add(verb)


def test_lookup_is_case_insensitive():
    lex = load_seed_lexicon()
    assert lex.lookup("Track") is lex.lookup("track")
    assert lex.lookup("TRACK").rule_id == "assessment-34.1"
    assert lex.lookup("unknownverb") is None


def test_every_frame_starts_with_a_verb():
    lex = load_seed_lexicon()
    for rule in lex.rules:
        assert rule.frame[0].kind is ElementKind.VERB
        assert not rule.frame[0].optional


def test_worked_example_rules_are_present():
    lex = load_seed_lexicon()
    assert lex.lookup("track").rule_id == "assessment-34.1"
    assert lex.lookup("notify").rule_id == "advise-37.9"
    assert lex.lookup("monitor").rule_id == "investigate-35.4"
    assert lex.lookup("enable").rule_id == "custom-enable"
    assert lex.lookup("ensure").rule_id == "custom-ensure"


def test_duplicate_verb_across_rules_rejected():
    rules = [
        MINIMAL_RULE,
        {
            "class": "other-1",
            "verbs": ["detect"],
            "frame": [{"kind": "verb"}],
        },
    ]
    with pytest.raises(LexiconError, match="detect"):
        load_lexicon(make(rules))


def test_duplicate_rule_id_rejected():
    rules = [MINIMAL_RULE, MINIMAL_RULE]
    with pytest.raises(LexiconError, match="see-30.1"):
        load_lexicon(make(rules))


def test_unknown_element_kind_names_rule_and_position():
    rules = [
        {
            "class": "bad-1",
            "verbs": ["zap"],
            "frame": [{"kind": "verb"}, {"kind": "widget"}],
        }
    ]
    with pytest.raises(LexiconError) as exc:
        load_lexicon(make(rules))
    assert "bad-1" in str(exc.value)
    assert "element 1" in str(exc.value)


def test_keyword_element_requires_lowercase_literals():
    rules = [
        {
            "class": "bad-2",
            "verbs": ["zap"],
            "frame": [
                {"kind": "verb"},
                {"kind": "keyword", "keywords": ["About"]},
            ],
        }
    ]
    with pytest.raises(LexiconError, match="lowercase"):
        load_lexicon(make(rules))


def test_keyword_element_requires_literals():
    rules = [
        {
            "class": "bad-3",
            "verbs": ["zap"],
            "frame": [{"kind": "verb"}, {"kind": "keyword"}],
        }
    ]
    with pytest.raises(LexiconError, match="literals"):
        load_lexicon(make(rules))


def test_frame_must_start_with_verb():
    rules = [
        {
            "class": "bad-4",
            "verbs": ["zap"],
            "frame": [{"kind": "text"}],
        }
    ]
    with pytest.raises(LexiconError, match="verb"):
        load_lexicon(make(rules))


def test_adjunct_elements_must_be_optional():
    rules = [
        {
            "class": "bad-5",
            "verbs": ["zap"],
            "frame": [{"kind": "verb"}, {"kind": "means"}],
        }
    ]
    with pytest.raises(LexiconError, match="optional"):
        load_lexicon(make(rules))


def test_unsupported_version_rejected():
    with pytest.raises(LexiconError, match="version"):
        load_lexicon(json.dumps({"version": "2", "rules": [MINIMAL_RULE]}))


def test_invalid_json_rejected():
    with pytest.raises(LexiconError, match="JSON"):
        load_lexicon("{not json")


def test_uppercase_verb_rejected():
    rules = [
        {
            "class": "bad-6",
            "verbs": ["Detect"],
            "frame": [{"kind": "verb"}],
        }
    ]
    with pytest.raises(LexiconError, match="lowercase"):
        load_lexicon(make(rules))


def test_custom_lexicon_drives_the_parser(tmp_path):
    from hmreq.source import SourceDocument
    from hmreq.parser import parse_document

    rules = [
        {
            "class": "zap-1",
            "verbs": ["zap"],
            "frame": [{"kind": "verb"}, {"kind": "text"}],
        }
    ]
    lex = load_lexicon(make(rules))
    text = (
        "stakeholder Resident\nactor System\n"
        'req Z1: The System shall zap "bugs". '
        "Relevant-Stakeholders: Resident.\n"
    )
    doc, diags = parse_document(SourceDocument(text), lex)
    assert doc is not None
    assert doc.requirements[0].block.rule_id == "zap-1"
    # The seed verbs are gone under the custom lexicon.
    text2 = text.replace("zap", "detect")
    doc2, diags2 = parse_document(SourceDocument(text2), lex)
    assert doc2 is None
