"""
Context preservation rule.
"""

from ..constants import DiagnosticCode, Severity
from ..utils import ugettext as _
from .base import BaseRule


class CtxIdRule(BaseRule):
    """
    CTX must carry the identifier of the COT instruction it belongs to.
    """

    code = DiagnosticCode.CTX_ID_MISMATCH
    default_severity = Severity.error
    description = _('CTX id differs from COT id')

    def check(self, block):
        coordination = block.coordination
        if coordination is not None and coordination.ctx_id != coordination.cot_id:
            span = coordination.ctx_span or self.span_of(coordination, block)
            yield _('CTX {} does not carry the COT identifier {}').format(
                coordination.ctx_id, coordination.cot_id), span
