"""
SynLang lint rules.
"""

from .base import BaseDocumentRule, BaseRule, builtin_rules, load_rules
