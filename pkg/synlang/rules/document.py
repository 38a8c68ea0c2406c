"""
Cross-block rules.
"""

from ..constants import DiagnosticCode, Severity
from ..utils import ugettext as _
from .base import BaseDocumentRule


class DanglingCtxRule(BaseDocumentRule):
    """
    A CTX may only reference a COT introduced in the same block or an earlier one.
    """

    code = DiagnosticCode.DANGLING_CTX
    default_severity = Severity.error
    description = _('CTX references an unknown COT')

    def check_document(self, blocks):
        introduced = set()
        for index, block in enumerate(blocks):
            coordination = block.coordination
            if coordination is None:
                continue
            introduced.add(coordination.cot_id)
            if coordination.ctx_id not in introduced:
                span = coordination.ctx_span or self.span_of(coordination, block)
                yield index, _('CTX {} references no earlier COT').format(coordination.ctx_id), span
