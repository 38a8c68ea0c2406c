"""
Control directive rules.
"""

from ..constants import ControlKind, DiagnosticCode
from ..utils import ugettext as _
from .base import BaseRule


def split_terms(text):
    """
    Comma-separated directive terms, trimmed and case-folded.
    """
    return [term.strip().casefold() for term in text.split(',') if term.strip()]


class OnlyExclusionRule(BaseRule):
    """
    A term cannot be both required by ONLY and excluded by `-!` / `-!!`.
    """

    code = DiagnosticCode.ONLY_EXCLUSION_CONFLICT
    description = _('term both in ONLY and an exclusion')

    def check(self, block):
        only = set()
        for directive in block.controls:
            if directive.kind is ControlKind.ONLY:
                only.update(split_terms(directive.text))
        for directive in block.controls:
            if not directive.kind.is_exclusion:
                continue
            conflicts = sorted(set(split_terms(directive.text)) & only)
            if conflicts:
                yield _('{} excludes {} required by ONLY').format(
                    directive.kind.value, ', '.join(repr(term) for term in conflicts)), \
                    self.span_of(directive, block)


class DuplicateDirectiveRule(BaseRule):
    """
    The same directive repeated verbatim adds nothing.
    """

    code = DiagnosticCode.DUPLICATE_DIRECTIVE
    description = _('duplicate control directive')

    def check(self, block):
        seen = set()
        for directive in block.controls:
            key = (directive.kind, directive.text)
            if key in seen:
                yield _('duplicate {} directive {!r}').format(directive.kind.value, directive.text), \
                    self.span_of(directive, block)
            seen.add(key)
