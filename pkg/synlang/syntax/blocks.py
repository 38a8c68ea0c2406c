"""
Parsed SynLang values.

Everything here is immutable. Source spans never take part in equality, so a
block reparsed from its canonical text compares equal to the original.
"""

from dataclasses import dataclass, field
from typing import Optional, Tuple

from ..constants import ControlKind, Severity


@dataclass(frozen=True, order=True)
class Span:
    """
    1-based line/column range inside a source text. End column is exclusive.
    """

    start_line: int
    start_column: int
    end_line: int
    end_column: int

    def cover(self, other):
        """
        Return the smallest span containing both spans.
        """
        if other is None:
            return self
        start = min((self.start_line, self.start_column), (other.start_line, other.start_column))
        end = max((self.end_line, self.end_column), (other.end_line, other.end_column))
        return Span(start[0], start[1], end[0], end[1])

    def __str__(self):
        """
        Render as `line:column`.
        """
        return '{}:{}'.format(self.start_line, self.start_column)


@dataclass(frozen=True)
class Factor:
    """
    Supporting factor (`>>`, depth 2) or sub-factor (`>>>`, depth 3).
    """

    depth: int
    text: str
    span: Optional[Span] = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class TraceItem:
    """
    One labeled explanation, optionally quantified with a confidence.
    """

    label: str
    explanation: str
    confidence: Optional[float] = None
    span: Optional[Span] = field(default=None, compare=False, repr=False)

    @property
    def quantified(self):
        """
        Return True when the item carries a confidence clause.
        """
        return self.confidence is not None


@dataclass(frozen=True)
class ControlDirective:
    """
    MOD, ONLY, PREFER, exclusion or comment line.
    """

    kind: ControlKind
    text: str
    span: Optional[Span] = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Coordination:
    """
    A COT instruction together with its CTX transfer.
    """

    cot_id: str
    target_agent: str
    task_description: str
    ctx_id: str
    ctx_items: Tuple[TraceItem, ...] = ()
    span: Optional[Span] = field(default=None, compare=False, repr=False)
    ctx_span: Optional[Span] = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Block:
    """
    One SynLang communication block.

    Holds the utterance tuple: content (task, query, factors), context
    (agent, semantic frame), pragmatics (tone, trace confidences, controls)
    and the optional coordination.
    """

    task: str
    agent: str
    context: str
    query: str
    factors: Tuple[Factor, ...] = ()
    feel: Optional[str] = None
    trace: Tuple[str, ...] = ()
    trace_fe: Tuple[TraceItem, ...] = ()
    response_format: Optional[str] = None
    controls: Tuple[ControlDirective, ...] = ()
    coordination: Optional[Coordination] = None
    source_span: Optional[Span] = field(default=None, compare=False, repr=False)
    response_span: Optional[Span] = field(default=None, compare=False, repr=False)

    def items(self):
        """
        Iterate over every TraceItem of the block: TRACE_FE first, then CTX.
        """
        for item in self.trace_fe:
            yield item
        if self.coordination is not None:
            for item in self.coordination.ctx_items:
                yield item


@dataclass(frozen=True)
class Diagnostic:
    """
    Parser or rule finding attached to a source span.
    """

    severity: Severity
    code: str
    message: str
    span: Span

    @property
    def is_error(self):
        """
        Return True for error severity.
        """
        return self.severity is Severity.error

    def sort_key(self):
        """
        Order diagnostics by span, then code.
        """
        return (self.span, self.code, self.message)

    def render(self, filename='<stdin>'):
        """
        Render as `file:line:col: severity[code]: message`.
        """
        return '{}:{}:{}: {}[{}]: {}'.format(
            filename, self.span.start_line, self.span.start_column,
            self.severity.value, self.code, self.message,
        )


@dataclass(frozen=True)
class ParseResult:
    """
    Outcome of parsing one block chunk: a Block when there are no errors.
    """

    block: Optional[Block]
    diagnostics: Tuple[Diagnostic, ...] = ()
    span: Optional[Span] = field(default=None, compare=False, repr=False)

    @property
    def ok(self):
        """
        Return True when a block was produced.
        """
        return self.block is not None
