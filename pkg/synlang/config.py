"""
Flat key-value configuration files.

Rule files, authority weights and profiles, and scenario manifests all share
one format::

    # comment
    key = value
"""

import logging
import math
from collections import OrderedDict

from .exceptions import ConfigError
from .utils import ugettext as _

log = logging.getLogger(__name__)


def parse_key_value(text, source='<config>'):
    """
    Parse flat `key = value` text into an ordered mapping.

    Arguments:
        text (str): Configuration text.
        source (str): Name used in error messages, usually the file path.
    Returns:
        OrderedDict: keys in file order.
    """
    values = OrderedDict()
    for number, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.strip()
        if not line or line.startswith('#'):
            continue
        key, sep, value = line.partition('=')
        key, value = key.strip(), value.strip()
        if not sep or not key:
            raise ConfigError(_('{}:{}: expected `key = value`, got {!r}').format(source, number, raw_line))
        if key in values:
            raise ConfigError(_('{}:{}: duplicate key {!r}').format(source, number, key))
        values[key] = value
    log.debug("Read %d settings from %s", len(values), source)
    return values


def read_key_value_file(path):
    """
    Read and parse a flat key-value file.
    """
    try:
        with open(path, encoding='utf-8') as config_file:
            text = config_file.read()
    except OSError as error:
        raise ConfigError(_("Can't read configuration file {}: {}").format(path, error.strerror))
    return parse_key_value(text, source=str(path))


def as_float(values, key, source='<config>'):
    """
    Fetch a finite float setting.
    """
    raw = values[key]
    try:
        number = float(raw)
    except ValueError:
        raise ConfigError(_('{}: {} must be a number, got {!r}').format(source, key, raw))
    if not math.isfinite(number):
        raise ConfigError(_('{}: {} must be finite, got {!r}').format(source, key, raw))
    return number
