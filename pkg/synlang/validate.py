"""
Semantic validation of parsed SynLang blocks.
"""

import logging

from .config import read_key_value_file
from .constants import Severity
from .exceptions import ConfigError
from .rules import BaseDocumentRule, load_rules
from .syntax.blocks import Diagnostic
from .utils import ugettext as _

log = logging.getLogger(__name__)


class RuleSet(object):
    """
    Enabled lint rules and their severities.
    """

    def __init__(self, enabled=None, overrides=None, catalog=None):
        """
        Build a rule set.

        Arguments:
            enabled (iterable of str): Rule codes to run; every known rule when None.
            overrides (dict): Rule code -> Severity (or its name); `off` disables the rule.
            catalog (dict): Rule code -> rule class; installed rules when None.
        Raises:
            ConfigError: for unknown rule codes or severities.
        """
        self.catalog = dict(catalog if catalog is not None else load_rules())
        self.enabled = frozenset(self.catalog if enabled is None else enabled)
        self.overrides = {}
        for code, severity in (overrides or {}).items():
            try:
                self.overrides[code] = Severity(severity)
            except ValueError:
                raise ConfigError(_('{}: unknown severity {!r}, expected error, warning or off').format(
                    code, severity))
        unknown = (self.enabled | set(self.overrides)) - set(self.catalog)
        if unknown:
            raise ConfigError(_('Unknown rule code(s): {}').format(', '.join(sorted(unknown))))
        self._rules = [self.catalog[code]() for code in sorted(self.catalog)]

    @classmethod
    def default(cls):
        """
        Every known rule at its default severity.
        """
        return cls()

    @classmethod
    def from_file(cls, path):
        """
        Apply a `CODE = error|warning|off` rule file to the defaults.
        """
        return cls(overrides=read_key_value_file(path))

    def severity(self, code):
        """
        Effective severity of a rule; `Severity.off` when it does not run.
        """
        if code not in self.enabled:
            return Severity.off
        return self.overrides.get(code, self.catalog[code].default_severity)

    def active(self, document=False):
        """
        Yield `(rule, severity)` for running block rules (or document rules).
        """
        for rule in self._rules:
            if isinstance(rule, BaseDocumentRule) != document:
                continue
            severity = self.severity(rule.code)
            if severity is not Severity.off:
                yield rule, severity


def _sorted(diagnostics):
    """
    Deterministic order: by span, then code, then message.
    """
    return sorted(diagnostics, key=Diagnostic.sort_key)


def validate_block(block, rules=None):
    """
    Run the block rules over one block.

    Returns:
        list of Diagnostic ordered by source span.
    """
    rules = rules if rules is not None else RuleSet.default()
    diagnostics = []
    for rule, severity in rules.active():
        diagnostics.extend(rule.diagnose(block, severity))
    log.debug("Block %s: %d diagnostics", block.task, len(diagnostics))
    return _sorted(diagnostics)


def validate_document(blocks, rules=None):
    """
    Run the block rules over every block plus the cross-block rules.

    Returns:
        list of Diagnostic ordered by source span.
    """
    rules = rules if rules is not None else RuleSet.default()
    blocks = list(blocks)
    diagnostics = []
    for block in blocks:
        diagnostics.extend(validate_block(block, rules))
    for rule, severity in rules.active(document=True):
        diagnostics.extend(diagnostic for _index, diagnostic in rule.diagnose_document(blocks, severity))
    return _sorted(diagnostics)


def document_diagnostics(results, rules=None):
    """
    Parser diagnostics of every chunk plus validation of the chunks that parsed.

    Arguments:
        results (list of ParseResult): `parse_document` output.
    Returns:
        list of Diagnostic ordered by source span.
    """
    diagnostics = [diagnostic for result in results for diagnostic in result.diagnostics]
    diagnostics.extend(validate_document([result.block for result in results if result.ok], rules))
    return _sorted(diagnostics)
