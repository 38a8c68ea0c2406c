"""
Bundled protocol fixtures.

Blocks taken verbatim from the protocol description, with bare TRACE
snippets wrapped in a minimal task/agent/context/query header. They are
hand-wrapped, so they parse in lenient mode only.
"""

from importlib import resources

from .utils import resource_string

CORPUS_DIR = 'corpus'

# Blocks of the philosophy dialogue, in dialogue order.
DIALOGUE = ('philosophy_analysis', 'modify_reasoning', 'response')


def fixture_names():
    """
    Names of the bundled `.syn` fixtures, sorted.
    """
    directory = resources.files('synlang').joinpath(CORPUS_DIR)
    return sorted(entry.name[:-len('.syn')] for entry in directory.iterdir() if entry.name.endswith('.syn'))


def load_fixture(name):
    """
    Text of one fixture.
    """
    return resource_string('{}/{}.syn'.format(CORPUS_DIR, name))


def load_corpus():
    """
    Every fixture as a `{name: text}` dict in name order.
    """
    return {name: load_fixture(name) for name in fixture_names()}


def dialogue():
    """
    The philosophy dialogue as one document.
    """
    return '\n'.join(load_fixture(name) for name in DIALOGUE)


def manifest_path(name):
    """
    Filesystem path of a bundled scenario manifest.
    """
    return str(resources.files('synlang').joinpath(CORPUS_DIR).joinpath('{}.manifest'.format(name)))
