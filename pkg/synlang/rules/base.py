"""
Lint rule classes are responsible for one semantic check each.

Base lint rule plugin.
"""

import abc
import logging
from importlib import metadata

from ..constants import Severity
from ..syntax.blocks import Diagnostic, Span

log = logging.getLogger(__name__)

FALLBACK_SPAN = Span(1, 1, 1, 1)


class BaseRule(abc.ABC):
    """
    Inherit your block rule class from this class.

    Third-party rules register under the `synlang.rules.v1` entry point group.
    """

    entry_point = 'synlang.rules.v1'

    code = None
    default_severity = Severity.warning
    description = ''

    @abc.abstractmethod
    def check(self, block):
        """
        Yield `(message, span)` findings for one block.

        Arguments:
            block (Block): Parsed block, possibly from lenient mode.
        """

    @staticmethod
    def span_of(node, block):
        """
        Best span for a finding: the node's own, else the block's.

        Blocks built in code or imported from JSON carry no spans.
        """
        return getattr(node, 'span', None) or block.source_span or FALLBACK_SPAN

    def diagnose(self, block, severity):
        """
        Run the check and wrap its findings into diagnostics.
        """
        return [
            Diagnostic(severity, self.code, message, span)
            for message, span in self.check(block)
        ]


class BaseDocumentRule(BaseRule):
    """
    Inherit your cross-block rule class from this class.
    """

    def check(self, block):
        """
        Document rules have nothing to say about a lone block.
        """
        return iter(())

    @abc.abstractmethod
    def check_document(self, blocks):
        """
        Yield `(block_index, message, span)` findings for a document.
        """

    def diagnose_document(self, blocks, severity):
        """
        Run the cross-block check and wrap its findings into indexed diagnostics.
        """
        return [
            (index, Diagnostic(severity, self.code, message, span))
            for index, message, span in self.check_document(blocks)
        ]


def builtin_rules():
    """
    Rule classes shipped with the package, in catalog order.
    """
    from .confidence import ConfidenceRangeRule, CtxConfidenceRule
    from .context import CtxIdRule
    from .controls import DuplicateDirectiveRule, OnlyExclusionRule
    from .document import DanglingCtxRule
    from .response import ResponseFormatRule
    from .trace import TraceLabelRule
    return (
        ConfidenceRangeRule, CtxIdRule, ResponseFormatRule, TraceLabelRule,
        OnlyExclusionRule, DuplicateDirectiveRule, CtxConfidenceRule, DanglingCtxRule,
    )


def _entry_points(group):
    """
    Installed entry points of a group.
    """
    entry_points = metadata.entry_points()
    if hasattr(entry_points, 'select'):
        return entry_points.select(group=group)
    return entry_points.get(group, ())


def load_rules():
    """
    Return `{code: rule class}` for built-in and installed third-party rules.

    Built-in codes cannot be overridden by plugins.
    """
    rules = {rule.code: rule for rule in builtin_rules()}
    for entry_point in _entry_points(BaseRule.entry_point):
        try:
            rule_class = entry_point.load()
        except Exception:  # pylint: disable=broad-except
            log.warning("Can't load SynLang rule plugin %s", entry_point.name, exc_info=True)
            continue
        if not (isinstance(rule_class, type) and issubclass(rule_class, BaseRule)) or not rule_class.code:
            log.warning("Entry point %s is not a SynLang rule", entry_point.name)
            continue
        if rule_class.code in rules:
            if rules[rule_class.code] is not rule_class:
                log.warning("Ignoring rule plugin %s: code %s is taken", entry_point.name, rule_class.code)
            continue
        log.debug("Loaded rule plugin %s (%s)", entry_point.name, rule_class.code)
        rules[rule_class.code] = rule_class
    return rules
