"""
`synlang` command line: parse, lint, fmt, export, simulate and authority.

Results go to stdout, diagnostics and logs to stderr.
"""

import argparse
import contextlib
import io
import logging
import os
import sys
from dataclasses import dataclass

from . import __version__
from .calculus import AuthorityContext, AuthorityWeights, authority, confidence_stance
from .constants import ExitStatus, ParseMode, Severity
from .coordination import load_scenario, simulate
from .exceptions import (
    BlockSyntaxError, ConfigError, EmptyDocumentError, EncodingError, SimulationAborted, UsageError,
)
from .settings import AUTHORITY_ANCHORS
from .syntax.export import export_document_json
from .syntax.formatter import format_document
from .syntax.lexer import decode_source
from .syntax.parser import parse_document
from .utils import ugettext as _
from .validate import RuleSet, document_diagnostics

log = logging.getLogger(__name__)

STDIN = '-'

COLORS = {
    Severity.error: '\033[31m',
    Severity.warning: '\033[33m',
}
RESET = '\033[0m'


@dataclass(frozen=True)
class CommandResult:
    """
    Exit status and captured output of one command.
    """

    status: int
    stdout: str = ''
    stderr: str = ''


class ArgumentParser(argparse.ArgumentParser):
    """
    Argument parser that raises instead of exiting.
    """

    def error(self, message):
        raise UsageError('{}: {}'.format(self.prog, message))

    def exit(self, status=0, message=None):
        if message:
            self._print_message(message, sys.stderr)
        raise _ParserExit(status)


class _ParserExit(Exception):
    """
    `--help` or `--version` finished.
    """

    def __init__(self, status):
        super(_ParserExit, self).__init__(status)
        self.status = status


class Command(object):
    """
    Shared state of one command invocation.
    """

    def __init__(self, args, stdin, stdout, stderr, color):
        """
        Bind parsed arguments and output streams.
        """
        self.args = args
        self.stdin = stdin
        self.stdout = stdout
        self.stderr = stderr
        self.color = color

    @property
    def mode(self):
        """
        Parse mode selected with `--lenient`.
        """
        return ParseMode.lenient if getattr(self.args, 'lenient', False) else ParseMode.strict

    def read(self, path):
        """
        Source text of FILE, `-` meaning stdin.
        """
        if path == STDIN:
            return self.stdin if self.stdin is not None else sys.stdin.read()
        try:
            with open(path, 'rb') as source_file:
                return decode_source(source_file.read())
        except OSError as error:
            raise UsageError(_("Can't read {}: {}").format(path, error.strerror))

    def report(self, diagnostics):
        """
        Write diagnostics to stderr; return True when any is an error.
        """
        name = '<stdin>' if self.args.file == STDIN else self.args.file
        for diagnostic in diagnostics:
            line = diagnostic.render(name)
            if self.color:
                line = '{}{}{}'.format(COLORS[diagnostic.severity], line, RESET)
            self.stderr.write(line + '\n')
        return any(diagnostic.is_error for diagnostic in diagnostics)

    def parse(self):
        """
        Parse FILE as a document; returns (source, results).
        """
        source = self.read(self.args.file)
        return source, parse_document(source, self.mode)

    def blocks(self):
        """
        Parsed blocks of FILE, or None after reporting parse errors.
        """
        source, results = self.parse()
        diagnostics = [diagnostic for result in results for diagnostic in result.diagnostics]
        if self.report(diagnostics):
            return source, None
        return source, [result.block for result in results]


def _summary(index, result):
    """
    One summary line per parsed block.
    """
    if not result.ok:
        errors = sum(1 for diagnostic in result.diagnostics if diagnostic.is_error)
        return _('block {}: line {}: {} error(s)').format(index, result.span.start_line, errors)
    block = result.block
    stance = confidence_stance(block)
    target = '@{}'.format(block.coordination.target_agent) if block.coordination else '-'
    return _('block {}: #{} @{} factors={} trace={} trace_fe={} controls={} coordination={} stance={}').format(
        index, block.task, block.agent, len(block.factors), len(block.trace), len(block.trace_fe),
        len(block.controls), target, '-' if stance is None else '{:.3f}'.format(stance),
    )


def cmd_parse(command):
    """
    Print a structural summary of every block.
    """
    _source, results = command.parse()
    for index, result in enumerate(results, start=1):
        command.stdout.write(_summary(index, result) + '\n')
    failed = command.report([diagnostic for result in results for diagnostic in result.diagnostics])
    return ExitStatus.DIAGNOSTICS if failed else ExitStatus.OK


def cmd_lint(command):
    """
    Report parser and rule diagnostics; status 1 when any is an error.
    """
    rules = RuleSet.from_file(command.args.rules) if command.args.rules else RuleSet.default()
    _source, results = command.parse()
    failed = command.report(document_diagnostics(results, rules))
    return ExitStatus.DIAGNOSTICS if failed else ExitStatus.OK


def cmd_fmt(command):
    """
    Rewrite FILE canonically, or check that it already is.
    """
    source, blocks = command.blocks()
    if blocks is None:
        return ExitStatus.DIAGNOSTICS
    formatted = format_document(blocks)
    if command.args.check:
        if formatted != source:
            command.stderr.write(_('{} is not canonically formatted\n').format(command.args.file))
            return ExitStatus.DIAGNOSTICS
        return ExitStatus.OK
    if command.args.file == STDIN:
        command.stdout.write(formatted)
    elif formatted != source:
        with open(command.args.file, 'w', encoding='utf-8', newline='\n') as target:
            target.write(formatted)
        log.debug("Reformatted %s", command.args.file)
    return ExitStatus.OK


def cmd_export(command):
    """
    Emit the JSON tree of every block.
    """
    _source, blocks = command.blocks()
    if blocks is None:
        return ExitStatus.DIAGNOSTICS
    command.stdout.write(export_document_json(blocks))
    return ExitStatus.OK


def cmd_simulate(command):
    """
    Run a scenario; emit its audit log (partial when aborted).
    """
    source = command.read(command.args.file)
    try:
        scenario = load_scenario(source, command.args.manifest)
    except BlockSyntaxError as error:
        command.report(error.diagnostics)
        return ExitStatus.DIAGNOSTICS
    try:
        audit_log = simulate(scenario)
    except SimulationAborted as error:
        command.stdout.write(error.audit_log.to_json())
        command.stderr.write(_('simulation aborted: {}\n').format(error))
        return ExitStatus.DIAGNOSTICS
    command.stdout.write(audit_log.to_json())
    return ExitStatus.OK


def cmd_authority(command):
    """
    Print the human authority share α to three decimals.
    """
    if command.args.profile:
        context = AuthorityContext.from_file(command.args.profile)
    else:
        context = AuthorityContext.anchor(command.args.anchor)
    weights = AuthorityWeights.from_file(command.args.weights) if command.args.weights else AuthorityWeights()
    command.stdout.write('{:.3f}\n'.format(authority(context, weights)))
    return ExitStatus.OK


def build_parser():
    """
    Argument parser of the `synlang` command.
    """
    parser = ArgumentParser(prog='synlang', description=_('SynLang v1.2.0 protocol toolkit.'))
    parser.add_argument('--version', action='version', version='%(prog)s {}'.format(__version__))
    parser.add_argument('-v', '--verbose', action='store_true', help=_('log debug messages to stderr'))
    subparsers = parser.add_subparsers(dest='command', metavar='COMMAND', parser_class=ArgumentParser)
    subparsers.required = True

    def add(name, handler, help_text, file_help=_('SynLang document, `-` for stdin'), lenient=True):
        subparser = subparsers.add_parser(name, help=help_text, description=help_text)
        subparser.set_defaults(handler=handler)
        subparser.add_argument('file', metavar='FILE', help=file_help)
        if lenient:
            subparser.add_argument('--lenient', action='store_true', help=_('accept hand-wrapped blocks'))
        return subparser

    add('parse', cmd_parse, _('print a structural summary of each block'))
    lint = add('lint', cmd_lint, _('report diagnostics; exit 1 on any error'))
    lint.add_argument('--rules', metavar='CFG', help=_('rule file: `CODE = error|warning|off` lines'))
    fmt = add('fmt', cmd_fmt, _('rewrite in canonical form'))
    fmt.add_argument('--check', action='store_true', help=_('exit 1 when not canonical, write nothing'))
    export = add('export', cmd_export, _('export blocks as JSON'))
    export.add_argument('--format', choices=['json'], required=True, help=_('output format'))
    simulate_parser = add('simulate', cmd_simulate, _('run a coordination scenario, print its audit log'),
                          file_help=_('scenario document, `-` for stdin'), lenient=False)
    simulate_parser.add_argument('manifest', metavar='MANIFEST', help=_('scenario manifest file'))

    authority_parser = subparsers.add_parser(
        'authority', help=_('print the human authority share'), description=_('print the human authority share'))
    authority_parser.set_defaults(handler=cmd_authority, file=None)
    source = authority_parser.add_mutually_exclusive_group(required=True)
    source.add_argument('--profile', metavar='FILE', help=_('authority context file'))
    source.add_argument('--anchor', choices=sorted(AUTHORITY_ANCHORS), help=_('built-in representative profile'))
    authority_parser.add_argument('--weights', metavar='FILE', help=_('authority weights file'))
    return parser


@contextlib.contextmanager
def _logging(stream, verbose):
    """
    Route log records to the command's stderr for the duration of a command.
    """
    root = logging.getLogger()
    handler = logging.StreamHandler(stream)
    handler.setFormatter(logging.Formatter('%(levelname)s:%(name)s:%(message)s'))
    previous = root.level
    root.addHandler(handler)
    root.setLevel(logging.DEBUG if verbose else logging.WARNING)
    try:
        yield
    finally:
        root.removeHandler(handler)
        root.setLevel(previous)


def use_color(stream, environ=None):
    """
    ANSI styling only on a terminal and only without `NO_COLOR`.
    """
    environ = os.environ if environ is None else environ
    return 'NO_COLOR' not in environ and hasattr(stream, 'isatty') and stream.isatty()


def run(argv, stdin=None, color=False):
    """
    Run one `synlang` command.

    Arguments:
        argv (list of str): Arguments without the program name.
        stdin (str): Text served for the `-` FILE; the process stdin when None.
        color (bool): Style diagnostics with ANSI colors.
    Returns:
        CommandResult
    """
    stdout, stderr = io.StringIO(), io.StringIO()
    try:
        with contextlib.redirect_stdout(stdout), contextlib.redirect_stderr(stderr):
            args = build_parser().parse_args(argv)
    except _ParserExit as done:
        return CommandResult(done.status, stdout.getvalue(), stderr.getvalue())
    except UsageError as error:
        stderr.write('{}\n'.format(error))
        return CommandResult(ExitStatus.USAGE, stdout.getvalue(), stderr.getvalue())

    command = Command(args, stdin, stdout, stderr, color)
    with _logging(stderr, args.verbose):
        try:
            status = args.handler(command)
        except (UsageError, ConfigError, EncodingError, EmptyDocumentError) as error:
            log.debug("Command %s failed", args.command, exc_info=True)
            stderr.write('synlang {}: {}\n'.format(args.command, error))
            status = ExitStatus.USAGE
    return CommandResult(status, stdout.getvalue(), stderr.getvalue())


def main(argv=None):
    """
    Console script entry point.
    """
    result = run(sys.argv[1:] if argv is None else argv, color=use_color(sys.stderr))
    sys.stdout.write(result.stdout)
    sys.stderr.write(result.stderr)
    return result.status


if __name__ == '__main__':
    sys.exit(main())
