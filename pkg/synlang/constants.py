"""
Lists of constants that can be used across the SynLang toolkit.
"""
from enum import Enum


class Severity(Enum):
    """
    Diagnostic severity flags enumeration.

    `off` is only meaningful as a rule setting; diagnostics never carry it.
    """

    error = 'error'
    warning = 'warning'
    off = 'off'


class ParseMode(Enum):
    """
    Parser modes.
    """

    strict = 'strict'
    lenient = 'lenient'


class HumilityStatus(Enum):
    """
    Outcome of an epistemic humility check.
    """

    holds = 'holds'
    violated = 'violated'


class PropagationMode(Enum):
    """
    How confidence degrades when it crosses agents.
    """

    multiplicative = 'multiplicative'
    fixed_decrement = 'fixed_decrement'


class ControlKind(Enum):
    """
    Control directive kinds, valued by their line prefix.
    """

    MOD = 'MOD:'
    ONLY = 'ONLY:'
    PREFER = 'PREFER:'
    SOFT_EXCLUDE = '-!'
    HARD_EXCLUDE = '-!!'
    COMMENT = '//'

    @property
    def is_exclusion(self):
        """
        Return True for `-!` and `-!!` directives.
        """
        return self in (ControlKind.SOFT_EXCLUDE, ControlKind.HARD_EXCLUDE)


class ResponseFormat(object):
    """
    Contains the response format names a block may request with `R:`.
    """

    STRUCTURED = 'Structured'
    BULLETPOINT = 'Bulletpoint'
    TABLE = 'Table'
    PLAIN = 'Plain'
    JSON = 'JSON'
    CODE = 'Code'

    ALL = (STRUCTURED, BULLETPOINT, TABLE, PLAIN, JSON, CODE)

    @classmethod
    def is_known(cls, value):
        """
        Check the value is one of the six protocol response formats.
        """
        return value in cls.ALL


class DiagnosticCode(object):
    """
    Codes of every diagnostic the parser, the rule engine and the router emit.
    """

    # Parser
    TASK_LINE = 'E-SYN-001'
    AGENT_LINE = 'E-SYN-002'
    CONTEXT_LINE = 'E-SYN-003'
    QUERY_LINE = 'E-SYN-004'
    ORPHAN_SUBFACTOR = 'E-SYN-005'
    MALFORMED_CONFIDENCE = 'E-SYN-006'
    MISSING_CONFIDENCE = 'E-SYN-007'
    LINE_ORDER = 'E-SYN-008'
    UNEXPECTED_LINE = 'E-SYN-009'
    MALFORMED_LINE = 'E-SYN-010'
    DUPLICATE_LINE = 'E-SYN-011'
    MALFORMED_COORDINATION = 'E-SYN-012'
    EMPTY_FACTOR = 'E-SYN-013'
    EMPTY_TRACE_FE = 'E-SYN-014'

    # Rules
    CONFIDENCE_RANGE = 'E-CONF-001'
    CTX_ID_MISMATCH = 'E-CTX-001'
    UNKNOWN_RESPONSE = 'E-RESP-001'
    DANGLING_CTX = 'E-COT-001'
    TRACE_LABEL = 'W-TRACE-001'
    ONLY_EXCLUSION_CONFLICT = 'W-CTRL-001'
    DUPLICATE_DIRECTIVE = 'W-CTRL-002'
    CTX_MISSING_CONFIDENCE = 'W-CTX-001'

    # Router
    UNKNOWN_RECEIVER = 'E-ROUTE-001'
    UNKNOWN_SENDER = 'E-ROUTE-002'


class ExitStatus(object):
    """
    Command line exit codes.
    """

    OK = 0
    DIAGNOSTICS = 1
    USAGE = 2
