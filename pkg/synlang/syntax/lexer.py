"""
SynLang lexer.

Lexing is line oriented: the first token of a physical line decides how the
rest of it is read, since `<text>` runs greedily to the end of the line.
Every character of the input lands in exactly one token, so joining token
lexemes gives back the source.
"""

import logging
import re
from dataclasses import dataclass
from enum import Enum
from typing import Optional

from ..exceptions import EncodingError
from ..utils import ugettext as _

log = logging.getLogger(__name__)

_ID = r'[a-zA-Z_][a-zA-Z0-9_]*'
_NUMBER = r'[+-]?(?:[0-9]+\.?[0-9]*|\.[0-9]+)(?:[eE][+-]?[0-9]+)?'

IDENTIFIER_LIST_RE = re.compile(r'\s*{id}(?:\s*,\s*{id})*\s*'.format(id=_ID))
IDENTIFIER_LIST_PART_RE = re.compile(r'(\s+)|({id})|(,)'.format(id=_ID))
ITEM_RE = re.compile(r'(-)(\s*)({id})(\s*)(:)(.*)'.format(id=_ID), re.S)
COT_RE = re.compile(r'(\s*)({id})(\s*)(->)(\s*)(@)({id})(\s*)(:)(.*)'.format(id=_ID), re.S)
CTX_RE = re.compile(r'(\s*)({id})(\s*)(\{{)(\s*)(\}})?(\s*)'.format(id=_ID), re.S)
CLAUSE_RE = re.compile(r'(\()(confidence)(=)({num})(\))(\s*)$'.format(num=_NUMBER))
GRAMMAR_FLOAT_RE = re.compile(r'[0-9]*\.[0-9]+')
BOM = '\ufeff'


class TokenKind(Enum):
    """
    SynLang token kinds, one per grammar terminal plus whitespace trivia.
    """

    TASK_MARKER = '#'
    AGENT_MARKER = '@'
    CONTEXT_DELIMITER = '==='
    QUERY_MARKER = '>'
    FACTOR_MARKER = '>>'
    SUBFACTOR_MARKER = '>>>'
    TRACE_KEYWORD = 'TRACE:'
    TRACE_FE_KEYWORD = 'TRACE_FE:'
    FEEL_KEYWORD = 'FEEL:'
    RESPONSE_KEYWORD = 'R:'
    MOD_KEYWORD = 'MOD:'
    ONLY_KEYWORD = 'ONLY:'
    PREFER_KEYWORD = 'PREFER:'
    SOFT_EXCLUDE = '-!'
    HARD_EXCLUDE = '-!!'
    COMMENT_MARKER = '//'
    COT_KEYWORD = 'COT:'
    CTX_KEYWORD = 'CTX:'
    ITEM_MARKER = '-'
    ARROW = '->'
    COLON = ':'
    COMMA = ','
    LBRACE = '{'
    RBRACE = '}'
    LPAREN = '('
    RPAREN = ')'
    CONFIDENCE_KEYWORD = 'confidence'
    EQUALS = '='
    FLOAT = 'float'
    IDENTIFIER = 'identifier'
    TEXT = 'text'
    NEWLINE = 'newline'
    WHITESPACE = 'whitespace'


# Longest prefixes first: `>>>` before `>>`, `TRACE_FE:` before `TRACE:`.
LINE_PREFIXES = (
    ('TRACE_FE:', TokenKind.TRACE_FE_KEYWORD),
    ('TRACE:', TokenKind.TRACE_KEYWORD),
    ('FEEL:', TokenKind.FEEL_KEYWORD),
    ('R:', TokenKind.RESPONSE_KEYWORD),
    ('MOD:', TokenKind.MOD_KEYWORD),
    ('ONLY:', TokenKind.ONLY_KEYWORD),
    ('PREFER:', TokenKind.PREFER_KEYWORD),
    ('COT:', TokenKind.COT_KEYWORD),
    ('CTX:', TokenKind.CTX_KEYWORD),
    ('>>>', TokenKind.SUBFACTOR_MARKER),
    ('>>', TokenKind.FACTOR_MARKER),
    ('>', TokenKind.QUERY_MARKER),
    ('-!!', TokenKind.HARD_EXCLUDE),
    ('-!', TokenKind.SOFT_EXCLUDE),
    ('//', TokenKind.COMMENT_MARKER),
    ('===', TokenKind.CONTEXT_DELIMITER),
    ('@', TokenKind.AGENT_MARKER),
)

TEXT_LINE_KINDS = frozenset([
    TokenKind.QUERY_MARKER, TokenKind.FACTOR_MARKER, TokenKind.SUBFACTOR_MARKER,
    TokenKind.MOD_KEYWORD, TokenKind.ONLY_KEYWORD, TokenKind.PREFER_KEYWORD,
    TokenKind.SOFT_EXCLUDE, TokenKind.HARD_EXCLUDE, TokenKind.COMMENT_MARKER,
])

IDENTIFIER_LINE_KINDS = frozenset([
    TokenKind.FEEL_KEYWORD, TokenKind.RESPONSE_KEYWORD,
])


@dataclass(frozen=True)
class Token:
    """
    SynLang token with its position in the source.
    """

    kind: TokenKind
    lexeme: str
    line: int
    column: int
    offset: int
    value: Optional[object] = None

    @property
    def is_trivia(self):
        """
        Return True for whitespace, which carries no grammar meaning.
        """
        return self.kind is TokenKind.WHITESPACE

    @property
    def end_column(self):
        """
        Column right after the token (exclusive).
        """
        return self.column + len(self.lexeme)


def decode_source(source):
    """
    Return source as text, decoding bytes as strict UTF-8.
    """
    if isinstance(source, str):
        return source
    try:
        return bytes(source).decode('utf-8')
    except UnicodeDecodeError as error:
        raise EncodingError(
            _('Invalid UTF-8 at byte offset {}').format(error.start), offset=error.start
        )


class _LineLexer(object):
    """
    Emits the tokens of one physical line.
    """

    def __init__(self, tokens, line, offset):
        """
        Start at column 1 of the given line.
        """
        self.tokens = tokens
        self.line = line
        self.column = 1
        self.offset = offset

    def emit(self, kind, lexeme, value=None):
        """
        Append a token and advance; empty lexemes are skipped.
        """
        if not lexeme:
            return
        self.tokens.append(Token(kind, lexeme, self.line, self.column, self.offset, value))
        self.column += len(lexeme)
        self.offset += len(lexeme)

    def whitespace(self, lexeme):
        """
        Emit trivia.
        """
        self.emit(TokenKind.WHITESPACE, lexeme)

    def text(self, rest):
        """
        Emit free text with its surrounding whitespace split off as trivia.
        """
        stripped = rest.strip()
        if not stripped:
            self.whitespace(rest)
            return
        lead = rest[:len(rest) - len(rest.lstrip())]
        trail = rest[len(rest.rstrip()):]
        self.whitespace(lead)
        self.emit(TokenKind.TEXT, stripped)
        self.whitespace(trail)

    def identifier(self, rest):
        """
        Emit one identifier, or free text when the rest is not a single identifier.
        """
        stripped = rest.strip()
        if not re.fullmatch(_ID, stripped):
            self.text(rest)
            return
        lead = rest[:len(rest) - len(rest.lstrip())]
        self.whitespace(lead)
        self.emit(TokenKind.IDENTIFIER, stripped, stripped)
        self.whitespace(rest[len(lead) + len(stripped):])

    def identifier_list(self, rest):
        """
        Emit `identifier (, identifier)*`, or free text when malformed.
        """
        if not rest.strip():
            self.whitespace(rest)
            return
        if not IDENTIFIER_LIST_RE.fullmatch(rest):
            self.text(rest)
            return
        for match in IDENTIFIER_LIST_PART_RE.finditer(rest):
            space, ident, comma = match.groups()
            if space:
                self.whitespace(space)
            elif ident:
                self.emit(TokenKind.IDENTIFIER, ident, ident)
            else:
                self.emit(TokenKind.COMMA, comma)

    def explained_text(self, rest):
        """
        Emit free text followed by an optional `(confidence=<number>)` clause.
        """
        clause = CLAUSE_RE.search(rest)
        if clause is None:
            self.text(rest)
            return
        self.text(rest[:clause.start()])
        lparen, keyword, equals, number, rparen, trail = clause.groups()
        self.emit(TokenKind.LPAREN, lparen)
        self.emit(TokenKind.CONFIDENCE_KEYWORD, keyword)
        self.emit(TokenKind.EQUALS, equals)
        # Adding 0.0 turns -0.0 into 0.0.
        self.emit(TokenKind.FLOAT, number, float(number) + 0.0)
        self.emit(TokenKind.RPAREN, rparen)
        self.whitespace(trail)

    def context(self, rest):
        """
        Emit the text and closing delimiter of a `=== text ===` line.
        """
        body = rest.rstrip()
        if body.endswith('==='):
            self.text(body[:-3])
            self.emit(TokenKind.CONTEXT_DELIMITER, '===')
            self.whitespace(rest[len(body):])
        else:
            self.text(rest)

    def cot(self, rest):
        """
        Emit `<id> -> @<id>: <text>` of a COT line.
        """
        match = COT_RE.fullmatch(rest)
        if match is None:
            self.text(rest)
            return
        (lead, cot_id, space1, arrow, space2, at, target, space3, colon, description) = match.groups()
        self.whitespace(lead)
        self.emit(TokenKind.IDENTIFIER, cot_id, cot_id)
        self.whitespace(space1)
        self.emit(TokenKind.ARROW, arrow)
        self.whitespace(space2)
        self.emit(TokenKind.AGENT_MARKER, at)
        self.emit(TokenKind.IDENTIFIER, target, target)
        self.whitespace(space3)
        self.emit(TokenKind.COLON, colon)
        self.text(description)

    def ctx(self, rest):
        """
        Emit `<id> {` (optionally closed on the same line) of a CTX line.
        """
        match = CTX_RE.fullmatch(rest)
        if match is None:
            self.text(rest)
            return
        lead, ctx_id, space1, lbrace, space2, rbrace, trail = match.groups()
        self.whitespace(lead)
        self.emit(TokenKind.IDENTIFIER, ctx_id, ctx_id)
        self.whitespace(space1)
        self.emit(TokenKind.LBRACE, lbrace)
        self.whitespace(space2)
        if rbrace:
            self.emit(TokenKind.RBRACE, rbrace)
        self.whitespace(trail)

    def item(self, match):
        """
        Emit `- <id>: <text> (confidence=<float>)`.
        """
        dash, space1, label, space2, colon, rest = match.groups()
        self.emit(TokenKind.ITEM_MARKER, dash)
        self.whitespace(space1)
        self.emit(TokenKind.IDENTIFIER, label, label)
        self.whitespace(space2)
        self.emit(TokenKind.COLON, colon)
        self.explained_text(rest)

    def lex(self, content):
        """
        Classify the line by its first token and lex the rest accordingly.
        """
        stripped = content.lstrip(' \t')
        indent = content[:len(content) - len(stripped)]
        if not stripped:
            self.whitespace(content)
            return
        if not indent and stripped.startswith('#'):
            self.emit(TokenKind.TASK_MARKER, '#')
            self.identifier(stripped[1:])
            return
        self.whitespace(indent)
        for prefix, kind in LINE_PREFIXES:
            if stripped.startswith(prefix):
                self.emit(kind, prefix)
                self._lex_after_prefix(kind, stripped[len(prefix):])
                return
        item = ITEM_RE.fullmatch(stripped)
        if item is not None:
            self.item(item)
        elif stripped.startswith('}'):
            self.emit(TokenKind.RBRACE, '}')
            self.text(stripped[1:])
        else:
            # Continuation line: free text, possibly closing an explanation.
            self.explained_text(stripped)

    def _lex_after_prefix(self, kind, rest):
        """
        Dispatch the rest of a line once its leading keyword is known.
        """
        if kind in TEXT_LINE_KINDS:
            self.text(rest)
        elif kind in IDENTIFIER_LINE_KINDS:
            self.identifier(rest)
        elif kind is TokenKind.TRACE_KEYWORD:
            self.identifier_list(rest)
        elif kind is TokenKind.AGENT_MARKER:
            self.identifier(rest)
        elif kind is TokenKind.CONTEXT_DELIMITER:
            self.context(rest)
        elif kind is TokenKind.COT_KEYWORD:
            self.cot(rest)
        elif kind is TokenKind.CTX_KEYWORD:
            self.ctx(rest)
        else:
            # TRACE_FE: takes nothing after the keyword.
            self.text(rest)


def tokenize(source):
    """
    Split SynLang source into tokens, whitespace trivia included.

    Arguments:
        source (str or bytes): Block or document text; bytes must be UTF-8.
    Returns:
        list of Token, covering the source exactly.
    """
    text = decode_source(source)
    tokens = []
    position, line = 0, 1
    while position < len(text):
        newline_at = text.find('\n', position)
        if newline_at == -1:
            content, newline = text[position:], ''
        elif newline_at > position and text[newline_at - 1] == '\r':
            content, newline = text[position:newline_at - 1], '\r\n'
        else:
            content, newline = text[position:newline_at], '\n'
        lexer = _LineLexer(tokens, line, position)
        if line == 1 and content.startswith(BOM):
            lexer.whitespace(BOM)
            content = content[len(BOM):]
            position += len(BOM)
        lexer.lex(content)
        lexer.emit(TokenKind.NEWLINE, newline)
        position += len(content) + len(newline)
        line += 1
    log.debug("Tokenized %d lines into %d tokens", line - 1, len(tokens))
    return tokens
