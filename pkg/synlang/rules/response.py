"""
Response format rule.
"""

from ..constants import DiagnosticCode, ResponseFormat, Severity
from ..utils import ugettext as _
from .base import BaseRule


class ResponseFormatRule(BaseRule):
    """
    `R:` names one of the six response types.
    """

    code = DiagnosticCode.UNKNOWN_RESPONSE
    default_severity = Severity.error
    description = _('unknown response format')

    def check(self, block):
        value = block.response_format
        if value is not None and not ResponseFormat.is_known(value):
            yield (
                _('unknown response format {!r}, expected one of {}').format(value, ', '.join(ResponseFormat.ALL)),
                block.response_span or self.span_of(None, block),
            )
