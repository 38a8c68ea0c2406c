"""
SynLang helpers.
"""

import json
import re
from decimal import Decimal
from importlib import resources

IDENTIFIER_RE = re.compile(r'[a-zA-Z_][a-zA-Z0-9_]*')


def ugettext(text):
    """
    Dummy ugettext method that doesn't do anything.
    """
    return text


def resource_string(path):
    """
    Handy helper for getting resources from our kit.
    """
    resource = resources.files('synlang')
    for part in path.split('/'):
        resource = resource.joinpath(part)
    return resource.read_text(encoding='utf-8')


def is_identifier(value):
    """
    Check value matches `[a-zA-Z_][a-zA-Z0-9_]*` as a whole.
    """
    return bool(value) and IDENTIFIER_RE.fullmatch(value) is not None


def strip_quotes(text):
    """
    Remove one pair of enclosing double quotes, if present.
    """
    if len(text) >= 2 and text.startswith('"') and text.endswith('"'):
        return text[1:-1]
    return text


def format_decimal(value):
    """
    Print a float positionally with the fewest digits that read back to the same float.

    E.g. 0.94 -> '0.94', 1 -> '1.0', 1e-05 -> '0.00001'.
    """
    text = format(Decimal(repr(float(value) + 0.0)), 'f')
    if '.' not in text:
        text += '.0'
    return text


def dump_json(data):
    """
    Serialize data the way every SynLang export does: two-space indent, UTF-8 text, trailing newline.
    """
    return json.dumps(data, indent=2, ensure_ascii=False) + '\n'
