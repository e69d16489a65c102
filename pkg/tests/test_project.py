from __future__ import annotations

import json
import os
from datetime import datetime, timezone

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hmreq.project import (
    NotRelevantError,
    ProjectFileError,
    StaleRevisionError,
    UnknownRequirementError,
    VersionError,
    load_project,
    new_project,
    save_project,
    upsert_assignment,
)
from hmreq.values import UnknownValueError
from tests.conftest import parse_ok

DOC_TEXT = (
    "stakeholder Worker\nstakeholder Boss\nstakeholder Owner\n"
    "actor System\n"
    'req R1: The System shall track "the location" of the Worker. '
    "Relevant-Stakeholders: Worker, Boss, Owner.\n"
    'req R2: The System shall notify the Worker about "alerts". '
    "Relevant-Stakeholders: Worker, Boss.\n"
)

FIXED_TIME = datetime(2026, 8, 24, 12, 0, 0, tzinfo=timezone.utc)


def fixed_clock() -> datetime:
    return FIXED_TIME


@pytest.fixture
def project(lexicon):
    return new_project(parse_ok(DOC_TEXT, lexicon))


def upsert(project, space, req="R1", who="Worker", value="freedom",
           statement="because", revision=1):
    return upsert_assignment(
        project,
        space,
        requirement_id=req,
        stakeholder_id=who,
        value_id=value,
        statement=statement,
        revision=revision,
        clock=fixed_clock,
    )


def test_insert_new_assignment(project, space):
    updated, stored = upsert(project, space)
    assert stored.revision == 1
    assert stored.updated_at == "2026-08-24T12:00:00Z"
    assert updated.find_assignment("R1", "Worker") == stored
    # The original project is untouched.
    assert project.assignments == ()


def test_update_requires_next_revision(project, space):
    p1, _ = upsert(project, space)
    p2, stored = upsert(p1, space, value="creativity", revision=2)
    assert stored.revision == 2
    assert stored.value_id == "creativity"
    assert len(p2.assignments) == 1


def test_stale_revision_rejected_without_side_effects(project, space):
    p1, _ = upsert(project, space)
    for bad in (1, 3, 0):
        with pytest.raises(StaleRevisionError) as exc:
            upsert(p1, space, value="creativity", revision=bad)
        assert exc.value.expected == 2
        assert exc.value.got == bad
    assert p1.find_assignment("R1", "Worker").value_id == "freedom"


def test_new_assignment_must_start_at_revision_one(project, space):
    with pytest.raises(StaleRevisionError) as exc:
        upsert(project, space, revision=2)
    assert exc.value.expected == 1


def test_unknown_requirement_rejected(project, space):
    with pytest.raises(UnknownRequirementError):
        upsert(project, space, req="R99")


def test_not_relevant_stakeholder_rejected(project, space):
    # Owner is relevant to R1 but not R2.
    with pytest.raises(NotRelevantError):
        upsert(project, space, req="R2", who="Owner")
    # And unknown names are rejected the same way.
    with pytest.raises(NotRelevantError):
        upsert(project, space, who="Stranger")


def test_unknown_value_rejected(project, space):
    with pytest.raises(UnknownValueError):
        upsert(project, space, value="nonsense")


def test_assignments_for_preserves_insertion_order(project, space):
    p, _ = upsert(project, space, who="Owner")
    p, _ = upsert(p, space, who="Worker")
    p, _ = upsert(p, space, req="R2", who="Worker")
    p, _ = upsert(p, space, who="Boss")
    assert [a.stakeholder_id for a in p.assignments_for("R1")] == [
        "Owner",
        "Worker",
        "Boss",
    ]


def test_save_load_round_trip(project, space, lexicon, tmp_path):
    p, _ = upsert(project, space)
    p, _ = upsert(p, space, who="Boss", value="authority")
    path = tmp_path / "demo.hmreq-project"
    save_project(p, str(path))
    loaded = load_project(str(path), lexicon, space)
    assert loaded.to_dict() == p.to_dict()


def test_save_is_canonical_and_atomic(project, space, tmp_path):
    p, _ = upsert(project, space)
    path = tmp_path / "demo.hmreq-project"
    save_project(p, str(path))
    first = path.read_bytes()
    save_project(p, str(path))
    assert path.read_bytes() == first
    # No temp files left behind.
    assert os.listdir(tmp_path) == ["demo.hmreq-project"]


def test_corrupt_json_reports_byte_offset(lexicon, space, tmp_path):
    path = tmp_path / "broken.hmreq-project"
    path.write_text('{"schemaVersion": "1", !!')
    with pytest.raises(ProjectFileError, match=r"byte 23"):
        load_project(str(path), lexicon, space)


def test_missing_file_is_a_project_file_error(lexicon, space, tmp_path):
    with pytest.raises(ProjectFileError):
        load_project(str(tmp_path / "absent"), lexicon, space)


def test_unsupported_version_rejected(project, space, lexicon, tmp_path):
    path = tmp_path / "future.hmreq-project"
    payload = project.to_dict()
    payload["schemaVersion"] = "2"
    path.write_text(json.dumps(payload))
    with pytest.raises(VersionError):
        load_project(str(path), lexicon, space)


def test_assignment_referencing_missing_requirement_rejected(
    project, space, lexicon, tmp_path
):
    p, _ = upsert(project, space)
    payload = p.to_dict()
    payload["assignments"][0]["requirementId"] = "R99"
    path = tmp_path / "dangling.hmreq-project"
    path.write_text(json.dumps(payload))
    with pytest.raises(ProjectFileError, match="R99"):
        load_project(str(path), lexicon, space)


def test_assignment_with_irrelevant_stakeholder_rejected(
    project, space, lexicon, tmp_path
):
    p, _ = upsert(project, space)
    payload = p.to_dict()
    payload["assignments"][0]["stakeholderId"] = "Stranger"
    path = tmp_path / "irrelevant.hmreq-project"
    path.write_text(json.dumps(payload))
    with pytest.raises(ProjectFileError, match="Stranger"):
        load_project(str(path), lexicon, space)


def test_duplicate_assignment_rejected_on_load(
    project, space, lexicon, tmp_path
):
    p, _ = upsert(project, space)
    payload = p.to_dict()
    payload["assignments"].append(dict(payload["assignments"][0]))
    path = tmp_path / "dup.hmreq-project"
    path.write_text(json.dumps(payload))
    with pytest.raises(ProjectFileError, match="duplicate"):
        load_project(str(path), lexicon, space)


# randomized round trips -----------------------------------------------------

_REQ_STAKEHOLDERS = {
    "R1": ("Worker", "Boss", "Owner"),
    "R2": ("Worker", "Boss"),
}

_VALUE_IDS = (
    "freedom",
    "creativity",
    "authority",
    "wealth",
    "healthy",
    "equality",
    "honest",
    "pleasure",
)

_ops = st.lists(
    st.tuples(
        st.sampled_from(sorted(_REQ_STAKEHOLDERS)),
        st.sampled_from(("Worker", "Boss", "Owner")),
        st.sampled_from(_VALUE_IDS),
        st.text(
            alphabet=st.characters(
                blacklist_categories=("Cs",), blacklist_characters="\x00"
            ),
            max_size=40,
        ),
    ),
    max_size=12,
)


@settings(max_examples=100, deadline=None)
@given(ops=_ops)
def test_randomized_edits_survive_save_load(ops, tmp_path_factory):
    from hmreq.lexicon import load_seed_lexicon
    from hmreq.values import load_value_space

    lexicon = load_seed_lexicon()
    space = load_value_space()
    project = new_project(parse_ok(DOC_TEXT, lexicon))
    for req, who, value, statement in ops:
        if who not in _REQ_STAKEHOLDERS[req]:
            continue
        existing = project.find_assignment(req, who)
        revision = existing.revision + 1 if existing else 1
        project, _ = upsert_assignment(
            project,
            space,
            requirement_id=req,
            stakeholder_id=who,
            value_id=value,
            statement=statement,
            revision=revision,
            clock=fixed_clock,
        )
    path = tmp_path_factory.mktemp("proj") / "rand.hmreq-project"
    save_project(project, str(path))
    loaded = load_project(str(path), lexicon, space)
    assert loaded.to_dict() == project.to_dict()
    # Saving the loaded project reproduces the same bytes.
    path2 = path.with_suffix(".resaved")
    save_project(loaded, str(path2))
    assert path.read_bytes() == path2.read_bytes()
