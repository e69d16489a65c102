"""Recursive-descent parser for the requirements CNL.

Grammar outline::

    document     := (declaration | requirement)*
    declaration  := ("stakeholder" | "actor") NAME
    requirement  := "req" ID ":" pre? sentence "." "Relevant-Stakeholders"
                    ":" NAME ("," NAME)* "."
    pre          := ("While" | "When") subject? STRING ","
                  | "If" subject? STRING "," "then"
                  | "Where" STRING ","
    subject      := article? NAME
    sentence     := article? NAME MODAL "not"? block
    block        := VERB frame-elements adjunct*
    adjunct      := "by" "means" "of" STRING | "every" STRING UNIT

The block's frame elements come from the lexicon rule selected by the
verb and are bound positionally; optional elements are skipped when the
upcoming tokens cannot fill them.

Error handling: structural errors abandon the current requirement and
resynchronize at the next ``req`` keyword, so one bad requirement cannot
hide problems in the ones after it. Name-resolution errors are recorded
and parsing continues. ``parse_document`` returns an AST only when no
Error-severity diagnostics were produced.
"""

from __future__ import annotations

from hmreq import diagnostics as diag
from hmreq.diagnostics import Diagnostic
from hmreq.lexer import Token, TokenKind, tokenize
from hmreq.lexicon import ElementKind, FrameElement, Lexicon, RuleFrame
from hmreq.nodes import (
    ARTICLES,
    CAPITAL_ARTICLES,
    MODALS,
    PRE_KEYWORD_MAP,
    RESERVED_NAMES,
    ActorArg,
    ActorRef,
    BlockArg,
    DeclKind,
    Declaration,
    Frequency,
    KeywordArg,
    PreStatement,
    PreKind,
    Requirement,
    RequirementBlock,
    RequirementDocument,
    TextArg,
)
from hmreq.source import SourceDocument, Span


class _Abort(Exception):
    """Abandon the current statement after an unrecoverable error."""


def _describe(tok: Token) -> str:
    if tok.kind is TokenKind.EOF:
        return "end of input"
    if tok.kind is TokenKind.STRING:
        return f'quoted string "{tok.value}"'
    return f"'{tok.value}'"


class _Parser:
    def __init__(self, tokens: list[Token], lexicon: Lexicon) -> None:
        self.tokens = tokens
        self.lexicon = lexicon
        self.pos = 0
        self.diags: list[Diagnostic] = []
        self.declarations: list[Declaration] = []
        self.decl_by_name: dict[str, Declaration] = {}
        self.requirements: list[Requirement] = []
        self.req_ids: set[str] = set()
        self.saw_requirement = False

    # token helpers -----------------------------------------------------

    def cur(self) -> Token:
        return self.tokens[self.pos]

    def peek(self, offset: int) -> Token:
        i = min(self.pos + offset, len(self.tokens) - 1)
        return self.tokens[i]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.kind is not TokenKind.EOF:
            self.pos += 1
        return tok

    def at_word(self, *values: str) -> bool:
        tok = self.cur()
        return tok.kind is TokenKind.WORD and tok.value in values

    def error(self, code: str, message: str, span: Span) -> None:
        self.diags.append(diag.error(code, message, span))

    def fail(self, code: str, message: str, span: Span) -> None:
        self.error(code, message, span)
        raise _Abort

    def expect(self, kind: TokenKind, what: str) -> Token:
        tok = self.cur()
        if tok.kind is kind:
            return self.advance()
        self.fail(
            diag.E_SYNTAX,
            f"expected {what}, got {_describe(tok)}",
            tok.span,
        )
        raise AssertionError  # unreachable

    def expect_word(self, value: str, what: str) -> Token:
        tok = self.cur()
        if tok.kind is TokenKind.WORD and tok.value == value:
            return self.advance()
        self.fail(
            diag.E_SYNTAX,
            f"expected {what}, got {_describe(tok)}",
            tok.span,
        )
        raise AssertionError  # unreachable

    def sync(self) -> None:
        """Skip ahead to the next statement keyword."""
        while True:
            tok = self.cur()
            if tok.kind is TokenKind.EOF:
                return
            if tok.kind is TokenKind.WORD and tok.value in (
                "req",
                "stakeholder",
                "actor",
            ):
                return
            self.advance()

    # name resolution ---------------------------------------------------

    def resolve_actor(self, name: str, span: Span) -> None:
        if name not in self.decl_by_name:
            self.error(
                diag.E_UNDECLARED_ACTOR,
                f"actor '{name}' is not declared",
                span,
            )

    def resolve_stakeholder(self, name: str, span: Span) -> None:
        decl = self.decl_by_name.get(name)
        if decl is None:
            self.error(
                diag.E_UNDECLARED_STAKEHOLDER,
                f"'{name}' is not a declared stakeholder",
                span,
            )
        elif decl.kind is not DeclKind.STAKEHOLDER:
            self.error(
                diag.E_UNDECLARED_STAKEHOLDER,
                f"'{name}' is declared as an actor, not a stakeholder",
                span,
            )

    # grammar ------------------------------------------------------------

    def parse(self) -> RequirementDocument:
        while self.cur().kind is not TokenKind.EOF:
            try:
                if self.at_word("stakeholder", "actor"):
                    self.parse_declaration()
                elif self.at_word("req"):
                    self.parse_requirement()
                else:
                    tok = self.cur()
                    self.error(
                        diag.E_SYNTAX,
                        "expected 'stakeholder', 'actor', or 'req', got "
                        f"{_describe(tok)}",
                        tok.span,
                    )
                    self.advance()
                    self.sync()
            except _Abort:
                self.sync()
        return RequirementDocument(
            declarations=self.declarations,
            requirements=self.requirements,
        )

    def parse_declaration(self) -> None:
        kw = self.advance()
        if self.saw_requirement:
            self.error(
                diag.E_SYNTAX,
                "declarations must appear before the first requirement",
                kw.span,
            )
        name_tok = self.expect(
            TokenKind.WORD, f"a name after '{kw.value}'"
        )
        name = name_tok.value
        if name in RESERVED_NAMES:
            self.fail(
                diag.E_SYNTAX,
                f"'{name}' is a reserved word and cannot be used as a name",
                name_tok.span,
            )
        kind = (
            DeclKind.STAKEHOLDER
            if kw.value == "stakeholder"
            else DeclKind.ACTOR
        )
        existing = self.decl_by_name.get(name)
        if existing is not None:
            self.error(
                diag.E_DUPLICATE_DECLARATION,
                f"'{name}' is already declared as "
                f"{existing.kind.value} (names share one namespace because "
                "every stakeholder is also an actor)",
                name_tok.span,
            )
            return
        decl = Declaration(
            kind=kind, name=name, span=kw.span.extend(name_tok.span)
        )
        self.decl_by_name[name] = decl
        self.declarations.append(decl)

    def parse_requirement(self) -> None:
        req_kw = self.advance()
        self.saw_requirement = True
        id_tok = self.expect(TokenKind.WORD, "a requirement id after 'req'")
        req_id = id_tok.value
        if req_id in self.req_ids:
            self.error(
                diag.E_DUPLICATE_REQUIREMENT_ID,
                f"duplicate requirement id '{req_id}'",
                id_tok.span,
            )
        else:
            self.req_ids.add(req_id)
        self.expect(TokenKind.COLON, "':' after the requirement id")
        pre = self.parse_pre()
        actor, modal, negated = self.parse_subject_and_modal(pre.kind)
        block = self.parse_block()
        end_tok = self.expect(
            TokenKind.PERIOD, "'.' at the end of the requirement sentence"
        )
        stakeholders, end_span = self.parse_stakeholders(
            req_id, end_tok.span
        )
        self.requirements.append(
            Requirement(
                id=req_id,
                pre=pre,
                actor=actor,
                modal=modal,
                negated=negated,
                block=block,
                stakeholders=stakeholders,
                span=req_kw.span.extend(end_span),
            )
        )

    def parse_pre(self) -> PreStatement:
        tok = self.cur()
        if not (
            tok.kind is TokenKind.WORD and tok.value in PRE_KEYWORD_MAP
        ):
            return PreStatement(kind=PreKind.UBIQUITOUS, span=tok.span)
        kw = self.advance()
        kind = PRE_KEYWORD_MAP[kw.value]
        subject: ActorRef | None = None
        if kind is not PreKind.WHERE and self.cur().kind is TokenKind.WORD:
            subject = self.parse_subject_ref()
        cond_tok = self.expect(
            TokenKind.STRING, f"a quoted condition after '{kw.value}'"
        )
        if self.at_word("and", "or"):
            self.fail(
                diag.E_UNSUPPORTED_CONJUNCTION,
                f"conditions cannot be combined with '{self.cur().value}'; "
                "split into separate requirements or rephrase within one "
                "quoted condition",
                self.cur().span,
            )
        self.expect(TokenKind.COMMA, "',' after the condition")
        if kind is PreKind.IF_THEN:
            self.expect_word("then", "'then' after the if-condition")
        return PreStatement(
            kind=kind,
            subject=subject,
            condition=cond_tok.value,
            span=kw.span.extend(cond_tok.span),
        )

    def parse_subject_ref(self) -> ActorRef:
        article = None
        start = self.cur().span
        if self.at_word(*ARTICLES):
            article = self.advance().value
        elif self.at_word(*CAPITAL_ARTICLES):
            tok = self.advance()
            self.error(
                diag.E_SYNTAX,
                f"article '{tok.value}' must be lowercase inside a "
                "pre-statement",
                tok.span,
            )
            article = CAPITAL_ARTICLES[tok.value]
        name_tok = self.expect(TokenKind.WORD, "an actor name")
        self.resolve_actor(name_tok.value, name_tok.span)
        return ActorRef(
            name=name_tok.value,
            article=article,
            span=start.extend(name_tok.span),
        )

    def parse_subject_and_modal(
        self, pre_kind: PreKind
    ) -> tuple[ActorRef, str, bool]:
        tok = self.expect(TokenKind.WORD, "the requirement sentence")
        article = None
        start = tok.span
        if tok.value in ARTICLES:
            article = tok.value
            name_tok = self.expect(TokenKind.WORD, "an actor name")
        elif tok.value in CAPITAL_ARTICLES:
            if pre_kind is not PreKind.UBIQUITOUS:
                self.error(
                    diag.E_SYNTAX,
                    f"article '{tok.value}' must be lowercase after a "
                    "pre-statement",
                    tok.span,
                )
            article = CAPITAL_ARTICLES[tok.value]
            name_tok = self.expect(TokenKind.WORD, "an actor name")
        else:
            name_tok = tok
        self.resolve_actor(name_tok.value, name_tok.span)
        actor = ActorRef(
            name=name_tok.value,
            article=article,
            span=start.extend(name_tok.span),
        )
        modal_tok = self.expect(
            TokenKind.WORD, "a modal verb (shall/should/must/will/may)"
        )
        if modal_tok.value not in MODALS:
            self.fail(
                diag.E_SYNTAX,
                "expected a modal verb (shall/should/must/will/may), got "
                f"{_describe(modal_tok)}",
                modal_tok.span,
            )
        negated = False
        if self.at_word("not"):
            self.advance()
            negated = True
        return actor, modal_tok.value, negated

    # block / frame binding ----------------------------------------------

    def parse_block(self) -> RequirementBlock:
        verb_tok = self.expect(TokenKind.WORD, "a verb")
        rule = self.lexicon.lookup(verb_tok.value)
        if rule is None:
            self.fail(
                diag.E_UNKNOWN_VERB,
                f"verb '{verb_tok.value}' is not in the lexicon",
                verb_tok.span,
            )
            raise AssertionError  # unreachable
        args: list[BlockArg] = []
        core = rule.core_elements
        for index, elem in enumerate(core):
            remaining = core[index + 1 :]
            bound = self.try_bind(elem, remaining)
            if bound is not None:
                args.append(bound)
                continue
            if not elem.optional:
                self.fail(
                    diag.E_FRAME_MISMATCH,
                    f"rule {rule.rule_id} expects "
                    f"{_element_name(elem)} here, got "
                    f"{_describe(self.cur())}",
                    self.cur().span,
                )
        means, frequency = self.parse_adjuncts(rule)
        tok = self.cur()
        # A RELSTAKE token here means the sentence period is missing;
        # leave it for the caller so the diagnostic talks about the '.'.
        if tok.kind not in (
            TokenKind.PERIOD,
            TokenKind.EOF,
            TokenKind.RELSTAKE,
        ):
            extra = _describe(tok)
            hint = ""
            if tok.kind is TokenKind.WORD:
                hint = "; if it names an actor, declare it and check the rule frame"
            self.fail(
                diag.E_FRAME_MISMATCH,
                f"unexpected {extra} after a complete "
                f"{rule.rule_id} block{hint}",
                tok.span,
            )
        span = verb_tok.span
        if args:
            span = span.extend(args[-1].span)
        return RequirementBlock(
            rule_id=rule.rule_id,
            verb=verb_tok.value.lower(),
            args=args,
            means=means,
            frequency=frequency,
            span=span,
        )

    def try_bind(
        self, elem: FrameElement, remaining: tuple[FrameElement, ...]
    ) -> BlockArg | None:
        if elem.kind is ElementKind.TEXT:
            if self.cur().kind is TokenKind.STRING:
                tok = self.advance()
                return TextArg(value=tok.value, span=tok.span)
            return None
        if elem.kind is ElementKind.KEYWORD:
            return self.try_bind_keyword(elem)
        if elem.kind is ElementKind.ACTOR:
            return self.try_bind_actor(elem, remaining)
        raise AssertionError(f"unexpected frame element {elem.kind}")

    def try_bind_keyword(self, elem: FrameElement) -> KeywordArg | None:
        for literal in elem.keywords:
            words = literal.split()
            if all(
                self.peek(i).kind is TokenKind.WORD
                and self.peek(i).value == words[i]
                for i in range(len(words))
            ):
                start = self.cur().span
                end = start
                for _ in words:
                    end = self.advance().span
                return KeywordArg(value=literal, span=start.extend(end))
        return None

    def try_bind_actor(
        self, elem: FrameElement, remaining: tuple[FrameElement, ...]
    ) -> ActorArg | None:
        tok = self.cur()
        if tok.kind is not TokenKind.WORD:
            return None
        article = None
        start = tok.span
        if tok.value in ARTICLES or tok.value in CAPITAL_ARTICLES:
            if tok.value in CAPITAL_ARTICLES:
                self.error(
                    diag.E_SYNTAX,
                    f"article '{tok.value}' must be lowercase inside the "
                    "requirement block",
                    tok.span,
                )
                article = CAPITAL_ARTICLES[tok.value]
            else:
                article = tok.value
            self.advance()
            name_tok = self.expect(TokenKind.WORD, "an actor name")
            self.resolve_actor(name_tok.value, name_tok.span)
            return ActorArg(
                ref=ActorRef(
                    name=name_tok.value,
                    article=article,
                    span=start.extend(name_tok.span),
                ),
                span=start.extend(name_tok.span),
            )
        if tok.value in self.decl_by_name:
            self.advance()
            return ActorArg(
                ref=ActorRef(name=tok.value, article=None, span=tok.span),
                span=tok.span,
            )
        if elem.optional:
            return None
        # A required actor slot binds any word that cannot belong to a
        # later frame element, so a typo reports E001 instead of E005.
        if tok.value in ("by", "every") or _starts_upcoming_keyword(
            tok.value, remaining
        ):
            return None
        self.advance()
        self.resolve_actor(tok.value, tok.span)
        return ActorArg(
            ref=ActorRef(name=tok.value, article=None, span=tok.span),
            span=tok.span,
        )

    def parse_adjuncts(
        self, rule: RuleFrame
    ) -> tuple[str | None, Frequency | None]:
        means: str | None = None
        frequency: Frequency | None = None
        while self.at_word("by", "every"):
            tok = self.advance()
            if tok.value == "by":
                self.expect_word("means", "'means' after 'by'")
                self.expect_word("of", "'of' after 'by means'")
                value = self.expect(
                    TokenKind.STRING, "a quoted phrase after 'by means of'"
                )
                if not rule.allows_means:
                    self.fail(
                        diag.E_FRAME_MISMATCH,
                        f"rule {rule.rule_id} does not take a "
                        "by-means-of adjunct",
                        tok.span,
                    )
                if means is not None:
                    self.fail(
                        diag.E_FRAME_MISMATCH,
                        "duplicate by-means-of adjunct",
                        tok.span,
                    )
                means = value.value
            else:
                value = self.expect(
                    TokenKind.STRING, "a quoted value after 'every'"
                )
                unit = self.expect(
                    TokenKind.WORD, "a unit word after the frequency value"
                )
                if not rule.allows_frequency:
                    self.fail(
                        diag.E_FRAME_MISMATCH,
                        f"rule {rule.rule_id} does not take a frequency "
                        "adjunct",
                        tok.span,
                    )
                if frequency is not None:
                    self.fail(
                        diag.E_FRAME_MISMATCH,
                        "duplicate frequency adjunct",
                        tok.span,
                    )
                frequency = Frequency(
                    value=value.value,
                    unit=unit.value,
                    span=tok.span.extend(unit.span),
                )
        return means, frequency

    def parse_stakeholders(
        self, req_id: str, sentence_end: Span
    ) -> tuple[list[str], Span]:
        if self.cur().kind is not TokenKind.RELSTAKE:
            self.error(
                diag.E_MISSING_STAKEHOLDERS,
                f"requirement '{req_id}' is missing a "
                "Relevant-Stakeholders clause",
                sentence_end,
            )
            return [], sentence_end
        self.advance()
        self.expect(TokenKind.COLON, "':' after 'Relevant-Stakeholders'")
        if self.cur().kind is TokenKind.PERIOD:
            tok = self.advance()
            self.error(
                diag.E_MISSING_STAKEHOLDERS,
                f"requirement '{req_id}' has an empty "
                "Relevant-Stakeholders list",
                tok.span,
            )
            return [], tok.span
        names: list[str] = []
        while True:
            name_tok = self.expect(TokenKind.WORD, "a stakeholder name")
            self.resolve_stakeholder(name_tok.value, name_tok.span)
            names.append(name_tok.value)
            if self.cur().kind is TokenKind.COMMA:
                self.advance()
                continue
            break
        end_tok = self.expect(
            TokenKind.PERIOD, "'.' after the stakeholder list"
        )
        return names, end_tok.span


def _element_name(elem: FrameElement) -> str:
    if elem.kind is ElementKind.ACTOR:
        return "an actor reference"
    if elem.kind is ElementKind.TEXT:
        return "a quoted phrase"
    if elem.kind is ElementKind.KEYWORD:
        return "one of " + "/".join(repr(k) for k in elem.keywords)
    return elem.kind.value


def _starts_upcoming_keyword(
    word: str, remaining: tuple[FrameElement, ...]
) -> bool:
    for elem in remaining:
        if elem.kind is ElementKind.KEYWORD:
            for literal in elem.keywords:
                if literal.split()[0] == word:
                    return True
    return False


def parse_document(
    src: SourceDocument, lexicon: Lexicon
) -> tuple[RequirementDocument | None, list[Diagnostic]]:
    """Parse CNL source into an AST.

    Returns ``(document, diagnostics)``. The document is None exactly
    when the diagnostics contain at least one Error.
    """
    tokens, lex_diags = tokenize(src)
    parser = _Parser(tokens, lexicon)
    doc = parser.parse()
    all_diags = sorted(
        lex_diags + parser.diags, key=lambda d: d.span.start
    )
    if diag.has_errors(all_diags):
        return None, all_diags
    return doc, all_diags
