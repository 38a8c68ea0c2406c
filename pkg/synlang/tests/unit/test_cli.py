"""
Test the `synlang` command line.
"""

import io
import json
import os
import shutil
import tempfile
import unittest

import mock
from ddt import data, ddt, unpack

from synlang.cli import main, run, use_color
from synlang.constants import ExitStatus
from synlang.corpus import load_fixture, manifest_path
from synlang.tests.unit.base import FULL_BLOCK, MINIMAL_BLOCK
from synlang.tests.unit.samples import sample_block


class CliTestBase(unittest.TestCase):
    """
    Scratch directory for files the commands read and write.
    """

    def setUp(self):
        super(CliTestBase, self).setUp()
        self.directory = tempfile.mkdtemp()
        self.addCleanup(shutil.rmtree, self.directory)

    def write(self, name, content):
        """
        Create a scratch file; bytes are written as is.
        """
        path = os.path.join(self.directory, name)
        mode = 'wb' if isinstance(content, bytes) else 'w'
        with open(path, mode) as scratch:
            scratch.write(content)
        return path

    def read(self, path):
        """
        Text of a scratch file.
        """
        with open(path, encoding='utf-8') as scratch:
            return scratch.read()


class ParseCommandTest(CliTestBase):
    """
    Test `synlang parse`.
    """

    def test_summary(self):
        """
        Test one summary line per block.
        """
        result = run(['parse', '-'], stdin=MINIMAL_BLOCK)

        self.assertEqual(result.status, ExitStatus.OK)
        self.assertEqual(result.stdout,
                         'block 1: #T @A factors=0 trace=0 trace_fe=0 controls=0 coordination=- stance=-\n')
        self.assertEqual(result.stderr, '')

    def test_lenient_flag(self):
        """
        Test the complete example needs `--lenient`.
        """
        path = self.write('disinfo.syn', load_fixture('disinfo_analysis'))

        strict = run(['parse', path])
        lenient = run(['parse', path, '--lenient'])

        self.assertEqual(strict.status, ExitStatus.DIAGNOSTICS)
        self.assertIn('block 1: line 1: 2 error(s)', strict.stdout)
        self.assertIn('error[E-SYN-007]', strict.stderr)
        self.assertEqual(lenient.status, ExitStatus.OK)
        self.assertIn('coordination=@AI_FORENSICS stance=0.905', lenient.stdout)


class LintCommandTest(CliTestBase):
    """
    Test `synlang lint`.
    """

    def test_range_violation(self):
        """
        Test a confidence of 1.2 fails the lint with E-CONF-001 on stderr.
        """
        path = self.write('range.syn', sample_block(confidences=('1.2', '0.8')))

        result = run(['lint', path])

        self.assertEqual(result.status, ExitStatus.DIAGNOSTICS)
        self.assertIn('{}:8:3: error[E-CONF-001]'.format(path), result.stderr)
        self.assertEqual(result.stdout, '')

    def test_clean(self):
        """
        Test a clean document passes silently.
        """
        result = run(['lint', '-'], stdin=sample_block())

        self.assertEqual((result.status, result.stdout, result.stderr), (ExitStatus.OK, '', ''))

    def test_warnings_do_not_fail(self):
        """
        Test warnings are reported with exit status 0.
        """
        result = run(['lint', '-', '--lenient'], stdin=load_fixture('disinfo_analysis'))

        self.assertEqual(result.status, ExitStatus.OK)
        self.assertIn('<stdin>:16:3: warning[W-CTX-001]', result.stderr)

    def test_rule_file(self):
        """
        Test `--rules` can promote a warning to an error.
        """
        rules = self.write('rules.cfg', 'W-CTX-001 = error\n')

        result = run(['lint', '-', '--lenient', '--rules', rules], stdin=load_fixture('disinfo_analysis'))

        self.assertEqual(result.status, ExitStatus.DIAGNOSTICS)
        self.assertIn('error[W-CTX-001]', result.stderr)

    def test_bad_rule_file(self):
        """
        Test an unknown rule code is a usage error.
        """
        rules = self.write('rules.cfg', 'E-NOPE-001 = error\n')

        result = run(['lint', '-', '--rules', rules], stdin=MINIMAL_BLOCK)

        self.assertEqual(result.status, ExitStatus.USAGE)
        self.assertIn('E-NOPE-001', result.stderr)

    def test_color(self):
        """
        Test diagnostics are styled when color is on.
        """
        result = run(['lint', '-'], stdin=sample_block(confidences=('1.2', '0.8')), color=True)

        self.assertTrue(result.stderr.startswith('\033[31m'))


class FmtCommandTest(CliTestBase):
    """
    Test `synlang fmt`.
    """

    def test_check_canonical(self):
        """
        Test `--check` on canonical text succeeds without output.
        """
        result = run(['fmt', '--check', '-'], stdin=FULL_BLOCK)

        self.assertEqual((result.status, result.stdout, result.stderr), (ExitStatus.OK, '', ''))

    def test_check_not_canonical(self):
        """
        Test `--check` fails on non-canonical text and writes nothing.
        """
        source = '\n\n' + MINIMAL_BLOCK
        path = self.write('loose.syn', source)

        result = run(['fmt', '--check', path])

        self.assertEqual(result.status, ExitStatus.DIAGNOSTICS)
        self.assertIn('not canonically formatted', result.stderr)
        self.assertEqual(self.read(path), source)

    def test_rewrite_is_idempotent(self):
        """
        Test fmt rewrites the file once and then leaves it alone.
        """
        path = self.write('disinfo.syn', load_fixture('disinfo_analysis'))

        first = run(['fmt', '--lenient', path])
        formatted = self.read(path)
        second = run(['fmt', '--lenient', path])

        self.assertEqual((first.status, second.status), (ExitStatus.OK, ExitStatus.OK))
        self.assertNotEqual(formatted, load_fixture('disinfo_analysis'))
        self.assertEqual(self.read(path), formatted)
        self.assertEqual(run(['fmt', '--lenient', '--check', path]).status, ExitStatus.OK)

    def test_stdin_goes_to_stdout(self):
        """
        Test formatting stdin prints the result.
        """
        result = run(['fmt', '-'], stdin='\n\n' + MINIMAL_BLOCK)

        self.assertEqual(result.stdout, MINIMAL_BLOCK)

    def test_parse_errors_block_formatting(self):
        """
        Test nothing is written when the document does not parse.
        """
        path = self.write('broken.syn', '#T\n@A\n> q\n')

        result = run(['fmt', path])

        self.assertEqual(result.status, ExitStatus.DIAGNOSTICS)
        self.assertEqual(self.read(path), '#T\n@A\n> q\n')


class ExportCommandTest(CliTestBase):
    """
    Test `synlang export`.
    """

    def test_json(self):
        """
        Test the JSON document on stdout.
        """
        result = run(['export', '-', '--format', 'json'], stdin=MINIMAL_BLOCK + '\n' + FULL_BLOCK)

        exported = json.loads(result.stdout)
        self.assertEqual(result.status, ExitStatus.OK)
        self.assertEqual(exported['synlang'], '1.2.0')
        self.assertEqual(len(exported['blocks']), 2)

    def test_format_is_required(self):
        """
        Test `--format` must be given.
        """
        self.assertEqual(run(['export', '-'], stdin=MINIMAL_BLOCK).status, ExitStatus.USAGE)


class SimulateCommandTest(CliTestBase):
    """
    Test `synlang simulate`.
    """

    def test_complete_example(self):
        """
        Test the complete example scenario prints one handoff record.
        """
        path = self.write('disinfo.syn', load_fixture('disinfo_analysis'))

        result = run(['simulate', path, manifest_path('disinfo_analysis')])

        self.assertEqual(result.status, ExitStatus.OK, result.stderr)
        log = json.loads(result.stdout)
        self.assertEqual(len(log['records']), 1)
        self.assertEqual(log['records'][0]['cot_id'], 'COT_a1b2c')

    def test_aborted(self):
        """
        Test an unroutable handoff prints the partial log and exits 1.
        """
        manifest = self.write('scenario.manifest', 'agents = AI_DETECTOR\n')

        result = run(['simulate', '-', manifest], stdin=load_fixture('disinfo_analysis'))

        self.assertEqual(result.status, ExitStatus.DIAGNOSTICS)
        self.assertEqual(json.loads(result.stdout)['records'], [])
        self.assertIn('E-ROUTE-001', result.stderr)

    def test_missing_manifest(self):
        """
        Test an unreadable manifest is a usage error.
        """
        result = run(['simulate', '-', os.path.join(self.directory, 'missing.manifest')],
                     stdin=load_fixture('disinfo_analysis'))

        self.assertEqual(result.status, ExitStatus.USAGE)


@ddt
class AuthorityCommandTest(CliTestBase):
    """
    Test `synlang authority`.
    """

    @data(('ethical', '0.925\n'), ('medical', '0.600\n'), ('data_processing', '0.085\n'))
    @unpack
    def test_anchor(self, name, expected):
        """
        Test α of the built-in anchors to three decimals.
        """
        result = run(['authority', '--anchor', name])

        self.assertEqual((result.status, result.stdout), (ExitStatus.OK, expected))

    def test_profile_and_weights(self):
        """
        Test a profile file with custom weights.
        """
        profile = self.write('profile.cfg', 'expertise_match = 0.5\nconsequence_severity = 0.5\n'
                                            'value_alignment = 0.5\ntime_constraints = 0.5\n')
        weights = self.write('weights.cfg', 'bias = 0.25\n')

        self.assertEqual(run(['authority', '--profile', profile]).stdout, '0.500\n')
        self.assertEqual(run(['authority', '--profile', profile, '--weights', weights]).stdout, '0.250\n')

    @data(
        ['authority'],
        ['authority', '--anchor', 'ethical', '--profile', 'x.cfg'],
        ['authority', '--anchor', 'military'],
    )
    def test_usage(self, argv):
        """
        Test missing or conflicting profile sources.
        """
        self.assertEqual(run(argv).status, ExitStatus.USAGE)


@ddt
class UsageTest(CliTestBase):
    """
    Test usage errors and process-level behaviour.
    """

    @data([], ['frobnicate'], ['lint'], ['lint', '/nonexistent/file.syn'])
    def test_usage_errors(self, argv):
        """
        Test usage and I/O errors exit 2 with a message on stderr.
        """
        result = run(argv)

        self.assertEqual(result.status, ExitStatus.USAGE)
        self.assertTrue(result.stderr)

    def test_empty_document(self):
        """
        Test a document without blocks is a usage error.
        """
        self.assertEqual(run(['lint', '-'], stdin='\n').status, ExitStatus.USAGE)

    def test_invalid_utf8(self):
        """
        Test undecodable input reports its byte offset.
        """
        path = self.write('bad.syn', b'#TASK\n\xff')

        result = run(['parse', path])

        self.assertEqual(result.status, ExitStatus.USAGE)
        self.assertIn('offset 6', result.stderr)

    def test_version(self):
        """
        Test `--version`.
        """
        result = run(['--version'])

        self.assertEqual((result.status, result.stdout), (0, 'synlang 1.2.0\n'))

    @mock.patch('sys.stderr', new_callable=io.StringIO)
    @mock.patch('sys.stdout', new_callable=io.StringIO)
    def test_main(self, stdout, stderr):
        """
        Test the console entry point prints the command output and returns its status.
        """
        status = main(['authority', '--anchor', 'medical'])

        self.assertEqual(status, ExitStatus.OK)
        self.assertEqual(stdout.getvalue(), '0.600\n')
        self.assertEqual(stderr.getvalue(), '')

    def test_use_color(self):
        """
        Test color needs a terminal and no `NO_COLOR`.
        """
        terminal = mock.Mock()
        terminal.isatty.return_value = True

        self.assertTrue(use_color(terminal, {}))
        self.assertFalse(use_color(terminal, {'NO_COLOR': ''}))
        self.assertFalse(use_color(io.StringIO(), {}))
