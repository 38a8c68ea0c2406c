"""
TRACE / TRACE_FE consistency rule.
"""

from ..constants import DiagnosticCode
from ..utils import ugettext as _
from .base import BaseRule


class TraceLabelRule(BaseRule):
    """
    Every TRACE_FE label should name a reasoning pattern listed on the TRACE line.
    """

    code = DiagnosticCode.TRACE_LABEL
    description = _('TRACE_FE label missing from TRACE')

    def check(self, block):
        listed = set(block.trace)
        for item in block.trace_fe:
            if item.label not in listed:
                yield _('TRACE_FE label {!r} is not listed on the TRACE line').format(item.label), \
                    self.span_of(item, block)
