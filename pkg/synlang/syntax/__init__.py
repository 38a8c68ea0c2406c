"""
SynLang syntax: lexing, parsing, canonical formatting and JSON export.
"""

from .blocks import Block, ControlDirective, Coordination, Diagnostic, Factor, ParseResult, Span, TraceItem
from .export import export_document_json, export_json, import_json
from .formatter import format_canonical, format_document
from .lexer import Token, TokenKind, tokenize
from .parser import parse, parse_block, parse_document
