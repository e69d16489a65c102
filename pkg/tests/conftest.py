from __future__ import annotations

import pathlib

import pytest

from hmreq.lexicon import Lexicon, load_seed_lexicon
from hmreq.nodes import RequirementDocument
from hmreq.parser import parse_document
from hmreq.source import SourceDocument
from hmreq.values import ValueSpace, load_value_space

REPO_ROOT = pathlib.Path(__file__).resolve().parent.parent
CORPUS_DIR = REPO_ROOT / "corpus"
INVALID_DIR = pathlib.Path(__file__).resolve().parent / "fixtures" / "invalid"

CORPUS_FILES = (
    CORPUS_DIR / "motivating_example.hmreq",
    CORPUS_DIR / "paper_rewrites.hmreq",
    CORPUS_DIR / "dronology.hmreq",
)

MOTIVATING_PROJECT = CORPUS_DIR / "motivating_example.hmreq-project"


@pytest.fixture(scope="session")
def lexicon() -> Lexicon:
    return load_seed_lexicon()


@pytest.fixture(scope="session")
def space() -> ValueSpace:
    return load_value_space()


def parse_text(text: str, lexicon: Lexicon, origin: str = "<test>"):
    return parse_document(SourceDocument(text, origin), lexicon)


def parse_ok(
    text: str, lexicon: Lexicon, origin: str = "<test>"
) -> RequirementDocument:
    doc, diags = parse_text(text, lexicon, origin)
    assert doc is not None, [
        (d.code, d.message) for d in diags if d.is_error
    ]
    return doc


def parse_file(path: pathlib.Path, lexicon: Lexicon):
    src = SourceDocument(path.read_text(encoding="utf-8"), str(path))
    return parse_document(src, lexicon)
