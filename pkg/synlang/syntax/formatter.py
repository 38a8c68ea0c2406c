"""
Canonical SynLang text.

The canonical layout is the strict line order with one logical line per
physical line, two-space item indentation and confidences printed with the
shortest decimal that reads back to the same value.
"""

from ..utils import format_decimal

ITEM_INDENT = '  '


def _format_item(item):
    """
    `  - label: explanation (confidence=X)`.
    """
    parts = ['{}- {}:'.format(ITEM_INDENT, item.label)]
    if item.explanation:
        parts.append(item.explanation)
    if item.confidence is not None:
        parts.append('(confidence={})'.format(format_decimal(item.confidence)))
    return ' '.join(parts)


def _format_context(context):
    """
    Quote the context only when it would not read back otherwise.
    """
    if '===' in context or (context.startswith('"') and context.endswith('"')):
        return '"{}"'.format(context)
    return context


def _with_text(prefix, text):
    """
    Prefix and text separated by one space; the prefix alone for empty text.
    """
    return '{} {}'.format(prefix, text) if text else prefix


def canonical_lines(block):
    """
    Yield the canonical lines of a block.
    """
    yield '#{}'.format(block.task)
    yield '@{}'.format(block.agent)
    yield '=== {} ==='.format(_format_context(block.context))
    yield _with_text('>', block.query)
    for factor in block.factors:
        yield _with_text('>' * factor.depth, factor.text)
    if block.feel is not None:
        yield 'FEEL: {}'.format(block.feel)
    if block.trace:
        yield 'TRACE: {}'.format(', '.join(block.trace))
    if block.trace_fe:
        yield 'TRACE_FE:'
        for item in block.trace_fe:
            yield _format_item(item)
    if block.response_format is not None:
        yield 'R: {}'.format(block.response_format)
    for directive in block.controls:
        yield _with_text(directive.kind.value, directive.text)
    coordination = block.coordination
    if coordination is not None:
        yield 'COT: {} -> @{}: "{}"'.format(
            coordination.cot_id, coordination.target_agent, coordination.task_description,
        )
        yield 'CTX: {} {{'.format(coordination.ctx_id)
        for item in coordination.ctx_items:
            yield _format_item(item)
        yield '}'


def format_canonical(block):
    """
    Render a block as canonical SynLang text.

    Reparsing the output in the mode the block was parsed in gives back an
    equal block.

    Returns:
        str: newline-terminated text.
    """
    return '\n'.join(canonical_lines(block)) + '\n'


def format_document(blocks):
    """
    Render blocks as one document, separated by a blank line.
    """
    return '\n'.join(format_canonical(block) for block in blocks)
