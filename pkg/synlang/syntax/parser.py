"""
Recursive descent parser for SynLang blocks and documents.

Strict mode follows the grammar of protocol v1.2.0 to the letter. Lenient
mode additionally accepts what hand-wrapped real-world blocks do: wrapped
text lines, CTX items without a confidence clause, meta and control lines in
any order after the factors, empty TRACE/TRACE_FE sections and unknown
response formats (left for the validator to report).
"""

import logging
import math

from ..constants import ControlKind, DiagnosticCode, ParseMode, ResponseFormat, Severity
from ..exceptions import BlockSyntaxError, EmptyDocumentError
from ..utils import strip_quotes, ugettext as _
from .blocks import Block, ControlDirective, Coordination, Diagnostic, Factor, ParseResult, Span, TraceItem
from .lexer import GRAMMAR_FLOAT_RE, TokenKind, tokenize

log = logging.getLogger(__name__)

PHASE_FACTORS, PHASE_META, PHASE_CONTROL, PHASE_COORDINATION = range(4)

CONTROL_KINDS = {
    TokenKind.MOD_KEYWORD: ControlKind.MOD,
    TokenKind.ONLY_KEYWORD: ControlKind.ONLY,
    TokenKind.PREFER_KEYWORD: ControlKind.PREFER,
    TokenKind.SOFT_EXCLUDE: ControlKind.SOFT_EXCLUDE,
    TokenKind.HARD_EXCLUDE: ControlKind.HARD_EXCLUDE,
    TokenKind.COMMENT_MARKER: ControlKind.COMMENT,
}

CONTINUATION_KINDS = frozenset([TokenKind.TEXT, TokenKind.LPAREN])

CLAUSE_KINDS = (
    TokenKind.LPAREN, TokenKind.CONFIDENCE_KEYWORD, TokenKind.EQUALS, TokenKind.FLOAT, TokenKind.RPAREN,
)

HEADER = (
    (TokenKind.TASK_MARKER, DiagnosticCode.TASK_LINE, _('expected task line `#IDENTIFIER`')),
    (TokenKind.AGENT_MARKER, DiagnosticCode.AGENT_LINE, _('expected agent line `@IDENTIFIER`')),
    (TokenKind.CONTEXT_DELIMITER, DiagnosticCode.CONTEXT_LINE, _('expected context line `=== context ===`')),
    (TokenKind.QUERY_MARKER, DiagnosticCode.QUERY_LINE, _('expected query line `> question`')),
)


class Line(object):
    """
    One physical source line, newline excluded.
    """

    def __init__(self, number, tokens):
        """
        Keep the line's tokens and its significant (non-trivia) ones.
        """
        self.number = number
        self.tokens = tokens
        self.significant = [token for token in tokens if not token.is_trivia]

    @property
    def kind(self):
        """
        Kind of the first significant token, None for a blank line.
        """
        return self.significant[0].kind if self.significant else None

    @property
    def blank(self):
        """
        Return True when the line holds whitespace only.
        """
        return not self.significant

    @property
    def content(self):
        """
        Line text without surrounding whitespace.
        """
        return ''.join(token.lexeme for token in self.tokens).strip()

    @property
    def span(self):
        """
        Span from the first to the last significant token.
        """
        if not self.significant:
            return Span(self.number, 1, self.number, 1)
        first, last = self.significant[0], self.significant[-1]
        return Span(self.number, first.column, self.number, last.end_column)

    def kinds(self):
        """
        Tuple of significant token kinds.
        """
        return tuple(token.kind for token in self.significant)

    def first(self, kind):
        """
        First significant token of the given kind, or None.
        """
        for token in self.significant:
            if token.kind is kind:
                return token
        return None


def split_lines(tokens):
    """
    Group tokens into physical lines.
    """
    lines, current = [], []
    number = 1
    for token in tokens:
        if token.kind is TokenKind.NEWLINE:
            lines.append(Line(number, current))
            current, number = [], number + 1
        else:
            current.append(token)
    if current:
        lines.append(Line(number, current))
    return lines


class _PendingText(object):
    """
    Text of a logical line that continuation lines may still extend.
    """

    def __init__(self, text, span):
        """
        Start from the text on the opening line.
        """
        self.parts = [text] if text else []
        self.span = span

    def extend(self, line):
        """
        Join a continuation line.
        """
        self.parts.append(line.content)
        self.span = self.span.cover(line.span)

    @property
    def value(self):
        """
        Joined text.
        """
        return ' '.join(self.parts)


class _PendingItem(_PendingText):
    """
    TRACE_FE or CTX item that continuation lines may still extend.
    """

    def __init__(self, label, section, line):
        """
        Read label, text and optional confidence clause off the item line.
        """
        text = line.first(TokenKind.TEXT)
        super(_PendingItem, self).__init__(text.lexeme if text else '', line.span)
        self.label = label
        self.section = section
        self.number = None
        self.misplaced_clause = False
        self._read_clause(line)

    def _read_clause(self, line):
        """
        Pick up a confidence clause closing this physical line.
        """
        number = line.first(TokenKind.FLOAT)
        if self.number is not None:
            # A clause seen earlier was not at the end of the item.
            self.misplaced_clause = True
        if number is not None:
            self.number = number

    def extend(self, line):
        """
        Join the text of a continuation line and take over its confidence clause.
        """
        text = line.first(TokenKind.TEXT)
        if text is not None:
            self.parts.append(text.lexeme)
        self.span = self.span.cover(line.span)
        self._read_clause(line)


class BlockParser(object):
    """
    Parses the lines of one block into a Block and diagnostics.
    """

    def __init__(self, lines, mode=ParseMode.strict):
        """
        Prepare an empty block under construction.
        """
        self.lines = lines
        self.mode = ParseMode(mode)
        self.diagnostics = []
        self.header = {}
        self.query = None
        self.factors = []
        self.feel = None
        self.trace = []
        self.items = []
        self.trace_fe_sections = []
        self.response = None
        self.controls = []
        self.cot = None
        self.ctx = None
        self.phase = PHASE_FACTORS
        self.open_text = None
        self.section = None
        self.ctx_open = False
        self.expect_ctx = False
        self.seen_factor = False

    @property
    def strict(self):
        """
        Return True in strict mode.
        """
        return self.mode is ParseMode.strict

    def error(self, code, message, span):
        """
        Record an error diagnostic.
        """
        self.diagnostics.append(Diagnostic(Severity.error, code, message, span))

    def parse(self):
        """
        Parse the lines; return a ParseResult.
        """
        content = [line for line in self.lines if not line.blank]
        end_span = self.lines[-1].span if self.lines else Span(1, 1, 1, 1)
        if self._parse_header(content, end_span):
            body_start = self.lines.index(content[len(HEADER) - 1]) + 1
            for line in self.lines[body_start:]:
                if line.blank:
                    self.open_text = None
                else:
                    self._parse_body_line(line)
            self._finish(content[-1].span)
        self.diagnostics.sort(key=Diagnostic.sort_key)
        span = content[0].span.cover(content[-1].span) if content else end_span
        block = None
        if not any(diagnostic.is_error for diagnostic in self.diagnostics):
            block = self._build(span)
        return ParseResult(block, tuple(self.diagnostics), span)

    # Header

    def _parse_header(self, content, end_span):
        """
        Check the mandatory task, agent, context and query lines.

        Returns False when one is missing, which stops parsing.
        """
        for index, (kind, code, message) in enumerate(HEADER):
            if index >= len(content):
                self.error(code, message, end_span)
                return False
            line = content[index]
            if line.kind is not kind:
                self.error(code, _('{}, found {!r}').format(message, line.content), line.span)
                return False
            getattr(self, '_header_' + kind.name.lower())(line)
        return True

    def _header_task_marker(self, line):
        """
        `#IDENTIFIER`.
        """
        if line.kinds() != (TokenKind.TASK_MARKER, TokenKind.IDENTIFIER):
            self.error(DiagnosticCode.MALFORMED_LINE, _('task must be an identifier'), line.span)
            return
        self.header['task'] = line.significant[1].value

    def _header_agent_marker(self, line):
        """
        `@IDENTIFIER`.
        """
        if line.kinds() != (TokenKind.AGENT_MARKER, TokenKind.IDENTIFIER):
            self.error(DiagnosticCode.MALFORMED_LINE, _('agent must be an identifier'), line.span)
            return
        self.header['agent'] = line.significant[1].value

    def _header_context_delimiter(self, line):
        """
        `=== text ===` or `=== "text" ===`.
        """
        kinds = line.kinds()
        if len(kinds) < 2 or kinds[-1] is not TokenKind.CONTEXT_DELIMITER:
            self.error(DiagnosticCode.CONTEXT_LINE, _('context line must be closed with `===`'), line.span)
            return
        text = line.first(TokenKind.TEXT)
        self.header['context'] = strip_quotes(text.lexeme) if text else ''

    def _header_query_marker(self, line):
        """
        `> text`.
        """
        text = line.first(TokenKind.TEXT)
        self.query = self.open_text = _PendingText(text.lexeme if text else '', line.span)

    # Body

    def _parse_body_line(self, line):
        """
        Dispatch one non-blank body line.
        """
        kind = line.kind
        if kind in CONTINUATION_KINDS:
            self._continuation(line)
            return
        if self.ctx_open and kind not in (TokenKind.ITEM_MARKER, TokenKind.RBRACE):
            self.error(DiagnosticCode.MALFORMED_COORDINATION, _('CTX block is not closed with `}`'), line.span)
            self.ctx_open = False
            self.section = None
        if self.expect_ctx and kind is not TokenKind.CTX_KEYWORD:
            self.error(DiagnosticCode.MALFORMED_COORDINATION, _('COT line must be followed by its CTX line'),
                       line.span)
            self.expect_ctx = False
        if kind is TokenKind.ITEM_MARKER:
            self._item(line)
            return
        self.open_text = None
        if kind is not TokenKind.RBRACE:
            self.section = None
        handler = getattr(self, '_body_' + kind.name.lower(), None)
        if handler is None:
            self.error(DiagnosticCode.UNEXPECTED_LINE, _('unexpected {!r} line in block body').format(
                kind.value), line.span)
            return
        handler(line)

    def _advance(self, phase, line):
        """
        Enforce line order: factors, then meta lines, then controls, then coordination.
        """
        if phase < self.phase and (self.strict or phase == PHASE_FACTORS):
            self.error(DiagnosticCode.LINE_ORDER, _('{!r} line is out of order').format(
                line.significant[0].lexeme), line.span)
            return
        self.phase = max(self.phase, phase)

    def _continuation(self, line):
        """
        Join a wrapped line onto the open logical line (lenient mode only).
        """
        if self.strict or self.open_text is None:
            hint = _(' (wrapped lines need lenient mode)') if self.open_text is not None else ''
            self.error(DiagnosticCode.UNEXPECTED_LINE, _('unexpected text{}').format(hint), line.span)
            return
        log.debug("Joining continuation line %d: %r", line.number, line.content)
        self.open_text.extend(line)

    def _body_factor_marker(self, line, depth=2):
        """
        `>> text`.
        """
        self._advance(PHASE_FACTORS, line)
        if depth == 3 and not self.seen_factor:
            self.error(DiagnosticCode.ORPHAN_SUBFACTOR, _('sub-factor `>>>` before any factor `>>`'), line.span)
        self.seen_factor = True
        text = line.first(TokenKind.TEXT)
        if text is None:
            self.error(DiagnosticCode.EMPTY_FACTOR, _('factor text is empty'), line.span)
            return
        pending = _PendingText(text.lexeme, line.span)
        self.factors.append((depth, pending))
        self.open_text = pending

    def _body_subfactor_marker(self, line):
        """
        `>>> text`.
        """
        self._body_factor_marker(line, depth=3)

    def _body_trace_keyword(self, line):
        """
        `TRACE: id, id`.
        """
        self._advance(PHASE_META, line)
        if line.first(TokenKind.TEXT) is not None:
            self.error(DiagnosticCode.MALFORMED_LINE, _('TRACE expects a comma-separated identifier list'),
                       line.span)
            return
        identifiers = [token.value for token in line.significant if token.kind is TokenKind.IDENTIFIER]
        if not identifiers and self.strict:
            self.error(DiagnosticCode.MALFORMED_LINE, _('TRACE lists no identifiers'), line.span)
        self.trace.extend(identifiers)

    def _body_trace_fe_keyword(self, line):
        """
        `TRACE_FE:` opening an item section.
        """
        self._advance(PHASE_META, line)
        if len(line.significant) > 1:
            self.error(DiagnosticCode.MALFORMED_LINE, _('TRACE_FE items start on the next line'), line.span)
        self.section = 'trace_fe'
        self.trace_fe_sections.append([line, 0])

    def _body_feel_keyword(self, line):
        """
        `FEEL: identifier`.
        """
        self._advance(PHASE_META, line)
        if line.kinds() != (TokenKind.FEEL_KEYWORD, TokenKind.IDENTIFIER):
            self.error(DiagnosticCode.MALFORMED_LINE, _('FEEL expects one identifier'), line.span)
        elif self.feel is not None:
            self.error(DiagnosticCode.DUPLICATE_LINE, _('duplicate FEEL line'), line.span)
        else:
            self.feel = line.significant[1].value

    def _body_response_keyword(self, line):
        """
        `R: response_type`.
        """
        self._advance(PHASE_META, line)
        if line.kinds() != (TokenKind.RESPONSE_KEYWORD, TokenKind.IDENTIFIER):
            self.error(DiagnosticCode.MALFORMED_LINE, _('R expects one response type'), line.span)
            return
        value = line.significant[1].value
        if self.response is not None:
            self.error(DiagnosticCode.DUPLICATE_LINE, _('duplicate R line'), line.span)
        elif self.strict and not ResponseFormat.is_known(value):
            self.error(DiagnosticCode.MALFORMED_LINE, _('unknown response type {!r}, expected one of {}').format(
                value, ', '.join(ResponseFormat.ALL)), line.span)
        else:
            self.response = (value, line.span)

    def _control(self, line):
        """
        MOD, ONLY, PREFER, exclusion and comment lines.
        """
        self._advance(PHASE_CONTROL, line)
        text = line.first(TokenKind.TEXT)
        pending = _PendingText(text.lexeme if text else '', line.span)
        self.controls.append((CONTROL_KINDS[line.kind], pending))
        self.open_text = pending

    _body_mod_keyword = _body_only_keyword = _body_prefer_keyword = _control
    _body_soft_exclude = _body_hard_exclude = _body_comment_marker = _control

    def _body_cot_keyword(self, line):
        """
        `COT: id -> @agent: "task description"`.
        """
        self._advance(PHASE_COORDINATION, line)
        expected = (
            TokenKind.COT_KEYWORD, TokenKind.IDENTIFIER, TokenKind.ARROW,
            TokenKind.AGENT_MARKER, TokenKind.IDENTIFIER, TokenKind.COLON,
        )
        kinds = line.kinds()
        if kinds[:6] != expected or kinds[6:] not in ((), (TokenKind.TEXT,)):
            self.error(DiagnosticCode.MALFORMED_COORDINATION,
                       _('COT line must read `COT: <id> -> @<agent>: "task"`'), line.span)
            self.expect_ctx = True
            return
        if self.cot is not None:
            self.error(DiagnosticCode.MALFORMED_COORDINATION,
                       _('a block holds one COT instruction; fan-out is not supported'), line.span)
            self.expect_ctx = True
            return
        text = line.first(TokenKind.TEXT)
        self.cot = {
            'cot_id': line.significant[1].value,
            'target_agent': line.significant[4].value,
            'task_description': strip_quotes(text.lexeme) if text else '',
            'span': line.span,
        }
        self.expect_ctx = True

    def _body_ctx_keyword(self, line):
        """
        `CTX: id {` opening the item section (or `CTX: id {}` when empty).
        """
        self._advance(PHASE_COORDINATION, line)
        if not self.expect_ctx:
            self.error(DiagnosticCode.MALFORMED_COORDINATION, _('CTX line without a preceding COT line'),
                       line.span)
            return
        self.expect_ctx = False
        kinds = line.kinds()
        if kinds[:3] != (TokenKind.CTX_KEYWORD, TokenKind.IDENTIFIER, TokenKind.LBRACE) or \
                kinds[3:] not in ((), (TokenKind.RBRACE,)):
            self.error(DiagnosticCode.MALFORMED_COORDINATION, _('CTX line must read `CTX: <id> {`'), line.span)
            return
        self.ctx = {'ctx_id': line.significant[1].value, 'span': line.span}
        self.ctx_open = kinds[-1] is not TokenKind.RBRACE
        self.section = 'ctx' if self.ctx_open else None

    def _body_rbrace(self, line):
        """
        `}` closing a CTX block.
        """
        if not self.ctx_open:
            self.error(DiagnosticCode.UNEXPECTED_LINE, _('`}` without an open CTX block'), line.span)
            return
        if len(line.significant) > 1:
            self.error(DiagnosticCode.MALFORMED_COORDINATION, _('unexpected text after `}`'), line.span)
        self.ctx['span'] = self.ctx['span'].cover(line.span)
        self.ctx_open = False
        self.section = None

    def _body_task_marker(self, line):
        """
        A second task line.
        """
        self.error(DiagnosticCode.UNEXPECTED_LINE,
                   _('a block holds one task line; parse several blocks as a document'), line.span)

    def _item(self, line):
        """
        `- label: text (confidence=0.9)` inside TRACE_FE or CTX.
        """
        self.open_text = None
        if self.section is None:
            self.error(DiagnosticCode.UNEXPECTED_LINE, _('trace item outside a TRACE_FE or CTX section'),
                       line.span)
            return
        kinds = line.kinds()
        clause = kinds[-5:] == CLAUSE_KINDS
        middle = kinds[3:-5] if clause else kinds[3:]
        if kinds[:3] != (TokenKind.ITEM_MARKER, TokenKind.IDENTIFIER, TokenKind.COLON) or \
                middle not in ((), (TokenKind.TEXT,)):
            self.error(DiagnosticCode.MALFORMED_LINE, _('trace item must read `- <label>: <text>`'), line.span)
            return
        item = _PendingItem(line.significant[1].value, self.section, line)
        self.items.append(item)
        if self.section == 'trace_fe':
            self.trace_fe_sections[-1][1] += 1
        self.open_text = item

    # Wrap-up

    def _finish(self, last_span):
        """
        Report unterminated constructs and check every item's confidence clause.
        """
        if self.ctx_open:
            self.error(DiagnosticCode.MALFORMED_COORDINATION, _('CTX block is not closed with `}`'), last_span)
        if self.expect_ctx:
            self.error(DiagnosticCode.MALFORMED_COORDINATION, _('COT line must be followed by its CTX line'),
                       last_span)
        if self.strict:
            for header, count in self.trace_fe_sections:
                if not count:
                    self.error(DiagnosticCode.EMPTY_TRACE_FE, _('TRACE_FE section has no items'), header.span)
        for item in self.items:
            self._check_clause(item)

    def _check_clause(self, item):
        """
        Confidence clauses: mandatory except on lenient CTX items; grammar floats in strict mode.
        """
        if item.misplaced_clause:
            self.error(DiagnosticCode.MALFORMED_CONFIDENCE, _('confidence clause must end the item'), item.span)
        if item.number is None:
            if '(confidence=' in item.value:
                self.error(DiagnosticCode.MALFORMED_CONFIDENCE, _('malformed confidence clause in {!r}').format(
                    item.label), item.span)
            elif item.section == 'trace_fe' or self.strict:
                self.error(DiagnosticCode.MISSING_CONFIDENCE, _('item {!r} has no `(confidence=...)` clause').format(
                    item.label), item.span)
            else:
                log.debug("Accepting CTX item %r without confidence", item.label)
        elif not math.isfinite(item.number.value):
            self.error(DiagnosticCode.MALFORMED_CONFIDENCE, _('confidence {!r} is not a finite number').format(
                item.number.lexeme), item.span)
        elif self.strict and not GRAMMAR_FLOAT_RE.fullmatch(item.number.lexeme):
            self.error(DiagnosticCode.MALFORMED_CONFIDENCE, _('confidence {!r} is not a grammar float').format(
                item.number.lexeme), item.span)

    def _build(self, span):
        """
        Freeze the collected parts into a Block.
        """
        def trace_item(item):
            confidence = item.number.value if item.number is not None else None
            return TraceItem(item.label, item.value, confidence, span=item.span)

        coordination = None
        if self.cot is not None and self.ctx is not None:
            coordination = Coordination(
                cot_id=self.cot['cot_id'],
                target_agent=self.cot['target_agent'],
                task_description=self.cot['task_description'],
                ctx_id=self.ctx['ctx_id'],
                ctx_items=tuple(trace_item(item) for item in self.items if item.section == 'ctx'),
                span=self.cot['span'],
                ctx_span=self.ctx['span'],
            )
        response, response_span = self.response if self.response else (None, None)
        return Block(
            task=self.header['task'],
            agent=self.header['agent'],
            context=self.header['context'],
            query=self.query.value,
            factors=tuple(Factor(depth, pending.value, span=pending.span) for depth, pending in self.factors),
            feel=self.feel,
            trace=tuple(self.trace),
            trace_fe=tuple(trace_item(item) for item in self.items if item.section == 'trace_fe'),
            response_format=response,
            controls=tuple(ControlDirective(kind, pending.value, span=pending.span)
                           for kind, pending in self.controls),
            coordination=coordination,
            source_span=span,
            response_span=response_span,
        )


def parse(source, mode=ParseMode.strict):
    """
    Parse the whole source as one block.

    Returns:
        ParseResult: the Block (None on errors) and its diagnostics.
    """
    return BlockParser(split_lines(tokenize(source)), mode).parse()


def parse_block(source, mode=ParseMode.strict):
    """
    Parse one SynLang block.

    Arguments:
        source (str or bytes): Block text.
        mode (ParseMode or str): `strict` (grammar only) or `lenient`.
    Returns:
        Block
    Raises:
        BlockSyntaxError: carrying the error diagnostics.
    """
    result = parse(source, mode)
    if not result.ok:
        raise BlockSyntaxError(result.diagnostics)
    return result.block


def split_blocks(lines):
    """
    Split document lines at every task line; column 0 `#` only.

    Non-blank text before the first task line becomes a chunk of its own.
    """
    chunks, current = [], []
    for line in lines:
        if line.kind is TokenKind.TASK_MARKER and current:
            chunks.append(current)
            current = []
        current.append(line)
    if current:
        chunks.append(current)
    return [chunk for chunk in chunks if any(not line.blank for line in chunk)]


def parse_document(source, mode=ParseMode.strict):
    """
    Parse a document of concatenated blocks.

    Errors of one block never stop the others from parsing.

    Returns:
        list of ParseResult, in source order.
    Raises:
        EmptyDocumentError: when the document holds no block at all.
    """
    chunks = split_blocks(split_lines(tokenize(source)))
    if not chunks:
        raise EmptyDocumentError()
    results = [BlockParser(chunk, mode).parse() for chunk in chunks]
    log.debug("Parsed %d blocks (%d with errors)", len(results), sum(1 for result in results if not result.ok))
    return results
