"""
JSON export and import of parsed blocks.
"""

import json
import logging
from collections import OrderedDict

from ..constants import ControlKind
from ..exceptions import BlockImportError
from ..settings import SYNLANG_VERSION
from ..utils import dump_json, is_identifier, ugettext as _
from .blocks import Block, ControlDirective, Coordination, Factor, TraceItem

log = logging.getLogger(__name__)


def item_to_dict(item):
    """
    Serialize a TraceItem.
    """
    return OrderedDict([
        ('label', item.label),
        ('explanation', item.explanation),
        ('confidence', item.confidence),
    ])


def block_to_dict(block):
    """
    Serialize a Block into an ordered, JSON-ready mapping.

    Keys follow the block's line order; collections keep source order.
    """
    coordination = None
    if block.coordination is not None:
        coordination = OrderedDict([
            ('cot_id', block.coordination.cot_id),
            ('target_agent', block.coordination.target_agent),
            ('task_description', block.coordination.task_description),
            ('ctx_id', block.coordination.ctx_id),
            ('ctx_items', [item_to_dict(item) for item in block.coordination.ctx_items]),
        ])
    return OrderedDict([
        ('task', block.task),
        ('agent', block.agent),
        ('context', block.context),
        ('query', block.query),
        ('factors', [OrderedDict([('depth', factor.depth), ('text', factor.text)]) for factor in block.factors]),
        ('feel', block.feel),
        ('trace', list(block.trace)),
        ('trace_fe', [item_to_dict(item) for item in block.trace_fe]),
        ('response_format', block.response_format),
        ('controls', [
            OrderedDict([('kind', directive.kind.name), ('text', directive.text)]) for directive in block.controls
        ]),
        ('coordination', coordination),
    ])


def export_json(block):
    """
    Export one block as JSON text.
    """
    return dump_json(block_to_dict(block))


def export_document_json(blocks):
    """
    Export several blocks as one JSON document tagged with the protocol version.
    """
    return dump_json(OrderedDict([
        ('synlang', SYNLANG_VERSION),
        ('blocks', [block_to_dict(block) for block in blocks]),
    ]))


class _Reader(object):
    """
    Typed access to one JSON object, reporting the path of bad fields.
    """

    def __init__(self, data, path):
        """
        Wrap `data`, which must be an object.
        """
        if not isinstance(data, dict):
            raise BlockImportError(_('{}: expected an object').format(path))
        self.data = data
        self.path = path

    def fail(self, key, expected):
        """
        Raise for a missing or mistyped field.
        """
        raise BlockImportError(_('{}.{}: expected {}').format(self.path, key, expected))

    def string(self, key, optional=False, identifier=False):
        """
        String field; None allowed when optional.
        """
        value = self.data.get(key)
        if value is None and optional:
            return None
        if not isinstance(value, str):
            self.fail(key, _('a string'))
        if identifier and not is_identifier(value):
            self.fail(key, _('an identifier'))
        return value

    def array(self, key):
        """
        List field, defaulting to empty.
        """
        value = self.data.get(key, [])
        if not isinstance(value, list):
            self.fail(key, _('an array'))
        return value

    def number(self, key):
        """
        Optional finite number field.
        """
        value = self.data.get(key)
        if value is None:
            return None
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            self.fail(key, _('a number or null'))
        return float(value)


def item_from_dict(data, path):
    """
    Deserialize a TraceItem.
    """
    reader = _Reader(data, path)
    return TraceItem(
        label=reader.string('label', identifier=True),
        explanation=reader.string('explanation'),
        confidence=reader.number('confidence'),
    )


def _factor_from_dict(data, path):
    """
    Deserialize a Factor.
    """
    reader = _Reader(data, path)
    depth = data.get('depth')
    if depth not in (2, 3) or isinstance(depth, bool):
        reader.fail('depth', _('2 or 3'))
    return Factor(depth, reader.string('text'))


def _control_from_dict(data, path):
    """
    Deserialize a ControlDirective; `kind` is the ControlKind name.
    """
    reader = _Reader(data, path)
    kind = reader.string('kind')
    if kind not in ControlKind.__members__:
        reader.fail('kind', _('one of {}').format(', '.join(ControlKind.__members__)))
    return ControlDirective(ControlKind[kind], reader.string('text'))


def block_from_dict(data, path='block'):
    """
    Deserialize a Block from the mapping `block_to_dict` produces.

    Raises:
        BlockImportError: naming the offending field.
    """
    reader = _Reader(data, path)
    coordination = None
    if data.get('coordination') is not None:
        cot = _Reader(data['coordination'], path + '.coordination')
        coordination = Coordination(
            cot_id=cot.string('cot_id', identifier=True),
            target_agent=cot.string('target_agent', identifier=True),
            task_description=cot.string('task_description'),
            ctx_id=cot.string('ctx_id', identifier=True),
            ctx_items=tuple(
                item_from_dict(item, '{}.ctx_items[{}]'.format(cot.path, index))
                for index, item in enumerate(cot.array('ctx_items'))
            ),
        )
    trace = reader.array('trace')
    if not all(isinstance(label, str) and is_identifier(label) for label in trace):
        reader.fail('trace', _('an array of identifiers'))
    return Block(
        task=reader.string('task', identifier=True),
        agent=reader.string('agent', identifier=True),
        context=reader.string('context'),
        query=reader.string('query'),
        factors=tuple(
            _factor_from_dict(factor, '{}.factors[{}]'.format(path, index))
            for index, factor in enumerate(reader.array('factors'))
        ),
        feel=reader.string('feel', optional=True, identifier=True),
        trace=tuple(trace),
        trace_fe=tuple(
            item_from_dict(item, '{}.trace_fe[{}]'.format(path, index))
            for index, item in enumerate(reader.array('trace_fe'))
        ),
        response_format=reader.string('response_format', optional=True),
        controls=tuple(
            _control_from_dict(control, '{}.controls[{}]'.format(path, index))
            for index, control in enumerate(reader.array('controls'))
        ),
        coordination=coordination,
    )


def import_json(text):
    """
    Rebuild a Block from `export_json` output.

    Raises:
        BlockImportError: on invalid JSON or a tree that is not a block.
    """
    try:
        data = json.loads(text)
    except ValueError as error:
        raise BlockImportError(_('Invalid JSON: {}').format(error))
    block = block_from_dict(data)
    log.debug("Imported block %s from JSON", block.task)
    return block
