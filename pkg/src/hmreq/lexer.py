"""Tokenizer for the requirements CNL.

Produces a flat token stream. Lexical problems (unterminated strings,
characters outside the language) become Error diagnostics; the lexer
recovers and keeps scanning so the parser can report more than one issue.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass

from hmreq import diagnostics as diag
from hmreq.diagnostics import Diagnostic
from hmreq.source import SourceDocument, Span

_WORD_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*")


class TokenKind(enum.Enum):
    WORD = "word"
    STRING = "string"
    COLON = "colon"
    COMMA = "comma"
    PERIOD = "period"
    RELSTAKE = "relevant-stakeholders"
    EOF = "eof"


@dataclass(frozen=True)
class Token:
    kind: TokenKind
    value: str
    span: Span

    def __repr__(self) -> str:  # compact, for parser debugging
        return f"Token({self.kind.value}, {self.value!r})"


_PUNCT = {
    ":": TokenKind.COLON,
    ",": TokenKind.COMMA,
    ".": TokenKind.PERIOD,
}

_RELSTAKE = "Relevant-Stakeholders"


def tokenize(src: SourceDocument) -> tuple[list[Token], list[Diagnostic]]:
    text = src.text
    n = len(text)
    pos = 0
    tokens: list[Token] = []
    problems: list[Diagnostic] = []

    while pos < n:
        ch = text[pos]
        if ch in " \t\r\n":
            pos += 1
            continue
        if ch == "/" and text.startswith("//", pos):
            end = text.find("\n", pos)
            pos = n if end == -1 else end + 1
            continue
        if ch in _PUNCT:
            tokens.append(Token(_PUNCT[ch], ch, Span(pos, pos + 1)))
            pos += 1
            continue
        if ch == '"':
            end = pos + 1
            while end < n and text[end] not in '"\n':
                end += 1
            if end >= n or text[end] != '"':
                problems.append(
                    diag.error(
                        diag.E_UNTERMINATED_STRING,
                        "unterminated quoted string",
                        Span(pos, end),
                    )
                )
                pos = end  # resume at the newline or end of input
                continue
            tokens.append(
                Token(TokenKind.STRING, text[pos + 1 : end], Span(pos, end + 1))
            )
            pos = end + 1
            continue
        m = _WORD_RE.match(text, pos)
        if m:
            word = m.group()
            end = m.end()
            # "Relevant-Stakeholders" is the one hyphenated keyword; merge
            # it into a single token so identifiers stay hyphen-free.
            if (
                word == "Relevant"
                and text.startswith("-Stakeholders", end)
            ):
                end += len("-Stakeholders")
                tokens.append(
                    Token(TokenKind.RELSTAKE, _RELSTAKE, Span(pos, end))
                )
            else:
                tokens.append(Token(TokenKind.WORD, word, Span(pos, end)))
            pos = end
            continue
        problems.append(
            diag.error(
                diag.E_SYNTAX,
                f"character {ch!r} is not part of the language",
                Span(pos, pos + 1),
            )
        )
        pos += 1

    tokens.append(Token(TokenKind.EOF, "", Span(n, n)))
    return tokens, problems
