"""
Custom, SynLang specific Exceptions.
"""

from .utils import ugettext as _


class SynLangException(Exception):
    """
    Base class for SynLang exceptions. Subclasses should provide `.default_msg` property.
    """

    default_msg = _('An exception occurred.')

    def __init__(self, detail=None):
        """
        Initialization of exceptions base class object.
        """
        self.detail = detail if detail is not None else self.default_msg
        super(SynLangException, self).__init__(self.detail)

    def __str__(self):
        """
        Override string representation of exceptions base class object.
        """
        return self.detail


class EncodingError(SynLangException):
    """
    Source bytes are not valid UTF-8.
    """

    default_msg = _('Source is not valid UTF-8.')

    def __init__(self, detail=None, offset=None):
        """
        Keep the byte offset of the first undecodable byte.
        """
        self.offset = offset
        super(EncodingError, self).__init__(detail)


class BlockSyntaxError(SynLangException):
    """
    A block could not be parsed; `diagnostics` explains why.
    """

    default_msg = _('Block does not follow the SynLang grammar.')

    def __init__(self, diagnostics, detail=None):
        """
        Keep the error diagnostics, defaulting the message to the first of them.
        """
        self.diagnostics = tuple(diagnostics)
        if detail is None and self.diagnostics:
            detail = self.diagnostics[0].message
        super(BlockSyntaxError, self).__init__(detail)


class EmptyDocumentError(SynLangException):
    """
    A document holds no blocks at all.
    """

    default_msg = _('Document contains no SynLang blocks.')


class BlockImportError(SynLangException):
    """
    JSON does not describe a SynLang block.
    """

    default_msg = _('JSON is not an exported SynLang block.')


class ConfigError(SynLangException):
    """
    Configuration file or value is malformed.
    """

    default_msg = _('Invalid configuration.')


class FactorRangeError(SynLangException, ValueError):
    """
    A calculus value was constructed outside its allowed range.
    """

    default_msg = _('Value is outside its allowed range.')


class UsageError(SynLangException):
    """
    The API or the command line was called the wrong way.
    """

    default_msg = _('Invalid usage.')


class RegistrationError(SynLangException):
    """
    Agent registry rejected a profile.
    """

    default_msg = _('Agent is already registered.')


class RoutingError(SynLangException):
    """
    A handoff could not be routed. `code` is an `E-ROUTE-*` code.
    """

    default_msg = _('Handoff could not be routed.')

    def __init__(self, code, detail=None):
        """
        Keep the routing diagnostic code.
        """
        self.code = code
        super(RoutingError, self).__init__(detail)

    def __str__(self):
        """
        Prefix the message with the routing code.
        """
        return '{}: {}'.format(self.code, self.detail)


class HandoffRefused(SynLangException):
    """
    A coordination block failed validation and was not handed off.
    """

    default_msg = _('Handoff refused: block has validation errors.')

    def __init__(self, diagnostics, detail=None):
        """
        Keep the error diagnostics that caused the refusal.
        """
        self.diagnostics = tuple(diagnostics)
        if detail is None:
            detail = '{} ({})'.format(
                self.default_msg, ', '.join(diag.code for diag in self.diagnostics)
            )
        super(HandoffRefused, self).__init__(detail)


class SimulationAborted(SynLangException):
    """
    A simulation stopped at its first failing event.
    """

    default_msg = _('Simulation aborted.')

    def __init__(self, audit_log, cause, detail=None):
        """
        Keep the partial audit log and the failure that stopped the run.
        """
        self.audit_log = audit_log
        self.cause = cause
        super(SimulationAborted, self).__init__(detail or str(cause))
