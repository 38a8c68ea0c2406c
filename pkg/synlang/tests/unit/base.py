"""
SynLang test base classes and utilities.
"""
import unittest

from synlang.constants import ParseMode
from synlang.corpus import load_fixture
from synlang.syntax.parser import parse, parse_block

MINIMAL_BLOCK = '#T\n@A\n=== c ===\n> q\n'

FULL_BLOCK = '''#EVALUATE
@AI_ANALYST
=== Equipment failure review ===
> What is the main cause of failure?
>> Temperature spike above 90deg
>>> Occurred 3 times in 24h
FEEL: investigative
TRACE: thermal_anomaly, known_failure_mode
TRACE_FE:
  - thermal_anomaly: temperature exceeded safe thresholds repeatedly (confidence=0.91)
  - known_failure_mode: matches historic overheating incidents (confidence=0.89)
R: Structured
ONLY: sensor logs, maintenance records
PREFER: external validation
MOD: Emphasize long-term trends
-! marketing data
-!! anecdotal reports
// reviewed by the night shift
COT: COT_1234 -> @AI_FORENSICS: "Inspect the thermal logs"
CTX: COT_1234 {
  - explanation_1: sensor readings corroborate (confidence=0.93)
  - explanation_2: maintenance gap found (confidence=0.9)
}
'''

# Fixture name -> warning codes the default rules report on it.
FIXTURE_WARNINGS = {
    'disinfo_analysis': ['W-CTX-001'],
    'line_types': [],
    'medical_diagnosis': ['W-TRACE-001'],
    'modify_reasoning': [],
    'philosophy_analysis': [],
    'research_directives': [],
    'research_findings': ['W-TRACE-001', 'W-TRACE-001'],
    'response': [],
    'risk_assessment': ['W-TRACE-001'],
}


def fixture_block(name):
    """
    Parse a bundled fixture in lenient mode.
    """
    return parse_block(load_fixture(name), ParseMode.lenient)


class SynLangTestBase(unittest.TestCase):
    """
    Base synlang test class.
    """

    def assertParses(self, source, mode=ParseMode.strict):  # pylint: disable=invalid-name
        """
        Parse source, failing the test with the diagnostics when it does not parse.
        """
        result = parse(source, mode)
        self.assertTrue(result.ok, [diagnostic.render() for diagnostic in result.diagnostics])
        return result.block

    def assertCodes(self, diagnostics, codes):  # pylint: disable=invalid-name
        """
        Diagnostics carry exactly the given codes, in order.
        """
        self.assertEqual([diagnostic.code for diagnostic in diagnostics], list(codes))

    def parse_errors(self, source, mode=ParseMode.strict):
        """
        Codes of the parser diagnostics of source.
        """
        return [diagnostic.code for diagnostic in parse(source, mode).diagnostics]
