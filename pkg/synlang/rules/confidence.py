"""
Confidence clause rules.
"""

from ..constants import DiagnosticCode, Severity
from ..utils import format_decimal, ugettext as _
from .base import BaseRule


class ConfidenceRangeRule(BaseRule):
    """
    Confidences measure probabilities and must lie in [0, 1].
    """

    code = DiagnosticCode.CONFIDENCE_RANGE
    default_severity = Severity.error
    description = _('confidence outside [0, 1]')

    def check(self, block):
        for item in block.items():
            if item.confidence is not None and not 0.0 <= item.confidence <= 1.0:
                yield (
                    _('confidence {} of {!r} is outside [0, 1]').format(format_decimal(item.confidence), item.label),
                    self.span_of(item, block),
                )


class CtxConfidenceRule(BaseRule):
    """
    CTX items transferred without a confidence cannot be degraded on handoff.
    """

    code = DiagnosticCode.CTX_MISSING_CONFIDENCE
    description = _('CTX item without confidence')

    def check(self, block):
        if block.coordination is None:
            return
        for item in block.coordination.ctx_items:
            if item.confidence is None:
                yield _('CTX item {!r} has no confidence').format(item.label), self.span_of(item, block)
