"""Setup for SynLang toolkit."""

import os
import re
from setuptools import setup


def get_version(*file_paths):
    """
    Extract the version string from the file at the given relative path fragments.
    """
    filename = os.path.join(os.path.dirname(__file__), *file_paths)
    with open(filename, encoding='utf-8') as version_file:
        version_match = re.search(r"^__version__ = ['\"]([^'\"]*)['\"]",
                                  version_file.read(), re.M)

    if version_match:
        return version_match.group(1)
    raise RuntimeError('Unable to find version string.')


def package_data(pkg, roots):
    """
    Generic function to find package_data.

    All of the files under each of the `roots` will be declared as package
    data for package `pkg`.
    """
    data = []
    for root in roots:
        for dirname, _, files in os.walk(os.path.join(pkg, root)):
            for fname in files:
                data.append(os.path.relpath(os.path.join(dirname, fname), pkg))

    return {pkg: data}


VERSION = get_version('synlang', '__init__.py')
DESCRIPTION = 'Parser, linter, formatter and coordination simulator for SynLang v1.2.0 reasoning blocks'


setup(
    name='synlang',
    version=VERSION,
    description=DESCRIPTION,
    license='GPL v3',
    python_requires='>=3.9',
    packages=[
        'synlang',
        'synlang.rules',
        'synlang.syntax',
        'synlang.tests',
        'synlang.tests.unit',
    ],
    install_requires=[],
    entry_points={
        'console_scripts': [
            'synlang = synlang.cli:main',
        ],
        'synlang.rules.v1': [
            'confidence-range = synlang.rules.confidence:ConfidenceRangeRule',
            'ctx-id = synlang.rules.context:CtxIdRule',
            'response-format = synlang.rules.response:ResponseFormatRule',
            'trace-label = synlang.rules.trace:TraceLabelRule',
            'only-exclusion = synlang.rules.controls:OnlyExclusionRule',
            'duplicate-directive = synlang.rules.controls:DuplicateDirectiveRule',
            'ctx-confidence = synlang.rules.confidence:CtxConfidenceRule',
            'dangling-ctx = synlang.rules.document:DanglingCtxRule',
        ]
    },
    package_data=package_data("synlang", ["corpus", ]),
)
