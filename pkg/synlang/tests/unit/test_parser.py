"""
Test the SynLang parser.
"""

from ddt import data, ddt, unpack

from synlang.constants import ControlKind, DiagnosticCode as Code, ParseMode
from synlang.corpus import dialogue, fixture_names, load_fixture
from synlang.exceptions import BlockSyntaxError, EmptyDocumentError
from synlang.syntax.blocks import Factor, Span
from synlang.syntax.formatter import format_canonical
from synlang.syntax.parser import parse, parse_block, parse_document
from synlang.tests.unit.base import FULL_BLOCK, MINIMAL_BLOCK, SynLangTestBase, fixture_block


@ddt
class ParseBlockTest(SynLangTestBase):
    """
    Test parse_block in strict mode.
    """

    def test_minimal_block(self):
        """
        Test the four mandatory lines make a block with empty collections.
        """
        block = parse_block(MINIMAL_BLOCK)

        self.assertEqual((block.task, block.agent, block.context, block.query), ('T', 'A', 'c', 'q'))
        self.assertEqual(block.factors, ())
        self.assertEqual(block.trace, ())
        self.assertEqual(block.controls, ())
        self.assertIsNone(block.coordination)
        self.assertIsNone(block.feel)
        self.assertIsNone(block.response_format)

    def test_full_block(self):
        """
        Test every line type of a strict block.
        """
        block = parse_block(FULL_BLOCK)

        self.assertEqual(block.factors, (
            Factor(2, 'Temperature spike above 90deg'), Factor(3, 'Occurred 3 times in 24h'),
        ))
        self.assertEqual(block.feel, 'investigative')
        self.assertEqual(block.trace, ('thermal_anomaly', 'known_failure_mode'))
        self.assertEqual([(item.label, item.confidence) for item in block.trace_fe],
                         [('thermal_anomaly', 0.91), ('known_failure_mode', 0.89)])
        self.assertEqual(block.response_format, 'Structured')
        self.assertEqual([directive.kind for directive in block.controls], [
            ControlKind.ONLY, ControlKind.PREFER, ControlKind.MOD,
            ControlKind.SOFT_EXCLUDE, ControlKind.HARD_EXCLUDE, ControlKind.COMMENT,
        ])
        self.assertEqual(block.controls[3].text, 'marketing data')
        self.assertEqual(block.coordination.cot_id, 'COT_1234')
        self.assertEqual(block.coordination.target_agent, 'AI_FORENSICS')
        self.assertEqual(block.coordination.task_description, 'Inspect the thermal logs')
        self.assertEqual(len(block.coordination.ctx_items), 2)

    def test_spans(self):
        """
        Test spans point at the source lines.
        """
        block = parse_block(FULL_BLOCK)

        self.assertEqual(block.trace_fe[0].span, Span(10, 3, 10, 87))
        self.assertEqual(block.response_span.start_line, 12)
        self.assertEqual(block.coordination.ctx_span, Span(20, 1, 23, 2))
        self.assertEqual(block.source_span.start_line, 1)
        self.assertEqual(block.source_span.end_line, 23)

    def test_context_quotes_are_stripped(self):
        """
        Test quoted and bare context lines compare equal.
        """
        quoted = parse_block('#T\n@A\n=== "Political speech" ===\n> q\n')
        bare = parse_block('#T\n@A\n=== Political speech ===\n> q\n')

        self.assertEqual(quoted, bare)

    def test_blank_lines_are_ignored(self):
        """
        Test blank lines between lines change nothing.
        """
        self.assertEqual(parse_block('\n#T\n\n@A\n=== c ===\n\n> q\n\n>> f\n\n'), parse_block('#T\n@A\n=== c ===\n> q\n>> f\n'))

    def test_byte_order_mark(self):
        """
        Test a file saved with a UTF-8 byte-order mark parses like one without.
        """
        self.assertEqual(parse_block('\ufeff' + MINIMAL_BLOCK), parse_block(MINIMAL_BLOCK))
        self.assertEqual(len(parse_document(b'\xef\xbb\xbf' + MINIMAL_BLOCK.encode('utf-8'))), 1)

    def test_grammar_float_without_leading_digit(self):
        """
        Test `.5` is a grammar float.
        """
        block = parse_block(MINIMAL_BLOCK + 'TRACE: a\nTRACE_FE:\n  - a: half (confidence=.5)\n')

        self.assertEqual(block.trace_fe[0].confidence, 0.5)

    def test_out_of_range_confidence_parses(self):
        """
        Test range checking is left to validation.
        """
        block = parse_block(MINIMAL_BLOCK + 'TRACE: a\nTRACE_FE:\n  - a: too sure (confidence=1.2)\n')

        self.assertEqual(block.trace_fe[0].confidence, 1.2)

    @data(
        ('', Code.TASK_LINE),
        ('@A\n=== c ===\n> q\n', Code.TASK_LINE),
        ('#T\n=== c ===\n> q\n', Code.AGENT_LINE),
        ('#T\n@A\n> q\n', Code.CONTEXT_LINE),
        ('#T\n@A\n=== c ===\n', Code.QUERY_LINE),
        ('#T\n@A\n=== c\n> q\n', Code.CONTEXT_LINE),
    )
    @unpack
    def test_missing_mandatory_line(self, source, code):
        """
        Test a missing or broken mandatory line names the expected line type.
        """
        with self.assertRaises(BlockSyntaxError) as raised:
            parse_block(source)

        self.assertEqual([diagnostic.code for diagnostic in raised.exception.diagnostics], [code])

    def test_missing_line_message_names_line_type(self):
        """
        Test the diagnostic message says which line was expected.
        """
        result = parse('#T\n@A\n=== c ===\n')

        self.assertIn('query line', result.diagnostics[0].message)

    @data(
        (MINIMAL_BLOCK + '>>> orphan\n', [Code.ORPHAN_SUBFACTOR]),
        (MINIMAL_BLOCK + '>>\n', [Code.EMPTY_FACTOR]),
        (MINIMAL_BLOCK + 'TRACE_FE:\n  - a: no clause\n', [Code.MISSING_CONFIDENCE]),
        (MINIMAL_BLOCK + 'TRACE_FE:\n  - a: bad (confidence=1)\n', [Code.MALFORMED_CONFIDENCE]),
        (MINIMAL_BLOCK + 'TRACE_FE:\n  - a: bad (confidence=high)\n', [Code.MALFORMED_CONFIDENCE]),
        (MINIMAL_BLOCK + 'TRACE_FE:\n', [Code.EMPTY_TRACE_FE]),
        (MINIMAL_BLOCK + 'FEEL: calm\n>> late factor\n', [Code.LINE_ORDER]),
        (MINIMAL_BLOCK + 'MOD: m\nFEEL: calm\n', [Code.LINE_ORDER]),
        (MINIMAL_BLOCK + 'FEEL: calm\nFEEL: calm\n', [Code.DUPLICATE_LINE]),
        (MINIMAL_BLOCK + 'R: Plain\nR: Code\n', [Code.DUPLICATE_LINE]),
        (MINIMAL_BLOCK + 'R: Essay\n', [Code.MALFORMED_LINE]),
        (MINIMAL_BLOCK + 'FEEL: very calm\n', [Code.MALFORMED_LINE]),
        (MINIMAL_BLOCK + 'TRACE: a b\n', [Code.MALFORMED_LINE]),
        (MINIMAL_BLOCK + 'wrapped text\n', [Code.UNEXPECTED_LINE]),
        (MINIMAL_BLOCK + '  - a: stray item (confidence=0.5)\n', [Code.UNEXPECTED_LINE]),
        (MINIMAL_BLOCK + '#SECOND\n', [Code.UNEXPECTED_LINE]),
        (MINIMAL_BLOCK + 'CTX: C1 {}\n', [Code.MALFORMED_COORDINATION]),
        (MINIMAL_BLOCK + 'COT: C1 -> @B: "x"\n', [Code.MALFORMED_COORDINATION]),
        (MINIMAL_BLOCK + 'COT: C1 -> @B: "x"\nCTX: C1 {\n', [Code.MALFORMED_COORDINATION]),
        (MINIMAL_BLOCK + 'COT: C1 @B "x"\nCTX: C1 {}\n', [Code.MALFORMED_COORDINATION]),
    )
    @unpack
    def test_strict_errors(self, source, codes):
        """
        Test strict mode rejects grammar deviations with one diagnostic each.
        """
        self.assertEqual(self.parse_errors(source), codes)

    def test_fan_out_is_rejected(self):
        """
        Test a second COT instruction is an error in both modes.
        """
        source = MINIMAL_BLOCK + 'COT: C1 -> @B: "x"\nCTX: C1 {}\nCOT: C2 -> @C: "y"\nCTX: C2 {}\n'

        for mode in ParseMode:
            self.assertEqual(self.parse_errors(source, mode), [Code.MALFORMED_COORDINATION])

    def test_wrapped_lines_need_lenient_mode(self):
        """
        Test strict mode hints at lenient mode for wrapped lines.
        """
        result = parse(MINIMAL_BLOCK + '>> wrapped\nfactor text\n')

        self.assertIn('lenient', result.diagnostics[0].message)

    def test_errors_do_not_stop_parsing(self):
        """
        Test independent errors are all reported, in source order.
        """
        codes = self.parse_errors(MINIMAL_BLOCK + '>>> orphan\n>>\nR: Essay\n')

        self.assertEqual(codes, [Code.ORPHAN_SUBFACTOR, Code.EMPTY_FACTOR, Code.MALFORMED_LINE])


@ddt
class LenientParseTest(SynLangTestBase):
    """
    Test lenient mode on the bundled fixtures and hand-wrapped input.
    """

    @data(*fixture_names())
    def test_fixture_parses(self, name):
        """
        Test every bundled fixture parses leniently without diagnostics.
        """
        result = parse(load_fixture(name), ParseMode.lenient)

        self.assertEqual(result.diagnostics, ())

    def test_complete_example(self):
        """
        Test the complete protocol example field by field.
        """
        block = fixture_block('disinfo_analysis')

        self.assertEqual(block.task, 'DISINFO_ANALYSIS')
        self.assertEqual(block.agent, 'AI_DETECTOR')
        self.assertEqual(block.context, 'Political speech deepfake')
        self.assertEqual(len(block.factors), 2)
        self.assertEqual(block.feel, 'urgent')
        self.assertEqual(block.trace, ('lip_sync', 'background_artifacts'))
        self.assertEqual([(item.label, item.confidence) for item in block.trace_fe],
                         [('lip_sync', 0.94), ('background_artifacts', 0.87)])
        self.assertEqual(block.coordination.cot_id, 'COT_a1b2c')
        self.assertEqual(block.coordination.target_agent, 'AI_FORENSICS')
        self.assertEqual([(item.label, item.confidence) for item in block.coordination.ctx_items],
                         [('decision', 0.91), ('context', None)])
        self.assertEqual(block.response_format, 'Structured')

    def test_complete_example_is_not_strict(self):
        """
        Test strict mode rejects the complete example's confidence-less CTX item and late R line.
        """
        codes = self.parse_errors(load_fixture('disinfo_analysis'))

        self.assertEqual(sorted(codes), [Code.MISSING_CONFIDENCE, Code.LINE_ORDER])

    def test_modify_reasoning(self):
        """
        Test the metacognitive intervention block.
        """
        block = fixture_block('modify_reasoning')

        self.assertEqual(len(block.controls), 1)
        self.assertEqual(block.controls[0].kind, ControlKind.MOD)
        self.assertTrue(block.controls[0].text.startswith('Expand philosophical parallels'))
        self.assertEqual(block.trace, ('user_guidance', 'semantic_alignment'))
        self.assertEqual([item.confidence for item in block.trace_fe], [1.0, 0.95])
        self.assertEqual(block.query, 'Refine the AI response to include structured conceptual mappings '
                                      'between classical philosophers and AI concepts.')

    def test_wrapped_item_is_joined(self):
        """
        Test a wrapped TRACE_FE item becomes one logical item.
        """
        block = fixture_block('philosophy_analysis')

        self.assertEqual(block.trace_fe[0].explanation, 'Identified parallels between classical and AI concepts')
        self.assertEqual(block.trace_fe[0].confidence, 0.94)
        self.assertEqual(block.trace_fe[1].explanation,
                         'Established connections between classical thought and modern AI debates')
        self.assertEqual(block.trace_fe[1].span.start_line, 13)
        self.assertEqual(block.trace_fe[1].span.end_line, 15)

    def test_wrapped_subfactors(self):
        """
        Test wrapped sub-factors across blank-line separated groups.
        """
        block = fixture_block('response')

        self.assertEqual([factor.depth for factor in block.factors], [2, 3, 3] * 3)
        self.assertEqual(block.factors[1].text, 'Classical: Debates on dualism (Descartes) and materialism relate to '
                                                "AI's potential for consciousness.")
        self.assertEqual(block.response_format, 'Bulletpoint')

    def test_clause_on_continuation_line(self):
        """
        Test a confidence clause alone on a continuation line.
        """
        block = fixture_block('research_findings')

        self.assertEqual(block.trace_fe[1].explanation, 'p-value < 0.001 across three independent datasets')
        self.assertEqual(block.trace_fe[1].confidence, 0.96)

    def test_blank_line_closes_logical_line(self):
        """
        Test text after a blank line does not continue the previous line.
        """
        self.assertEqual(self.parse_errors(MINIMAL_BLOCK + '>> factor\n\nstray\n', ParseMode.lenient),
                         [Code.UNEXPECTED_LINE])

    def test_clause_must_end_the_item(self):
        """
        Test a clause followed by more wrapped text is malformed.
        """
        source = MINIMAL_BLOCK + 'TRACE_FE:\n  - a: text (confidence=0.5)\n  more text\n'

        self.assertEqual(self.parse_errors(source, ParseMode.lenient), [Code.MALFORMED_CONFIDENCE])

    def test_trace_fe_items_still_need_confidence(self):
        """
        Test only CTX items may drop the clause in lenient mode.
        """
        self.assertEqual(self.parse_errors(MINIMAL_BLOCK + 'TRACE_FE:\n  - a: unsure\n', ParseMode.lenient),
                         [Code.MISSING_CONFIDENCE])

    def test_lenient_relaxations(self):
        """
        Test the lenient acceptances strict mode rejects.
        """
        source = MINIMAL_BLOCK + 'MOD: m\nTRACE:\nTRACE_FE:\nR: Essay\nCOT: C1 -> @B: "x"\nCTX: C1 {\n  - a: x\n}\nFEEL: calm\n'

        block = self.assertParses(source, ParseMode.lenient)

        self.assertEqual(block.response_format, 'Essay')
        self.assertEqual(block.feel, 'calm')
        self.assertIsNone(block.coordination.ctx_items[0].confidence)

    def test_lenient_numerals(self):
        """
        Test lenient mode accepts integer and exponent confidences.
        """
        block = self.assertParses(MINIMAL_BLOCK + 'TRACE_FE:\n  - a: x (confidence=1)\n  - b: y (confidence=5e-1)\n',
                                  ParseMode.lenient)

        self.assertEqual([item.confidence for item in block.trace_fe], [1.0, 0.5])

    @data(('1e400', ParseMode.lenient), ('-1e400', ParseMode.lenient), ('9' * 400 + '.0', ParseMode.strict))
    @unpack
    def test_non_finite_confidence(self, numeral, mode):
        """
        Test numerals overflowing to infinity are malformed confidences in either mode.
        """
        source = MINIMAL_BLOCK + 'TRACE_FE:\n  - a: x (confidence={})\n'.format(numeral)

        self.assertEqual(self.parse_errors(source, mode), [Code.MALFORMED_CONFIDENCE])

    def test_negative_zero_formats_strict(self):
        """
        Test a lenient `-0.0` confidence becomes a canonical `0.0` that parses strictly.
        """
        block = self.assertParses(MINIMAL_BLOCK + 'TRACE_FE:\n  - a: x (confidence=-0.0)\n', ParseMode.lenient)

        formatted = format_canonical(block)

        self.assertIn('(confidence=0.0)', formatted)
        self.assertEqual(self.assertParses(formatted), block)

    def test_factor_after_meta_is_always_out_of_order(self):
        """
        Test factors must precede every other body line even in lenient mode.
        """
        self.assertEqual(self.parse_errors(MINIMAL_BLOCK + 'FEEL: calm\n>> late\n', ParseMode.lenient),
                         [Code.LINE_ORDER])


class ParseDocumentTest(SynLangTestBase):
    """
    Test parse_document.
    """

    def test_dialogue(self):
        """
        Test the philosophy dialogue splits into its blocks in order.
        """
        results = parse_document(dialogue() + '\n' + load_fixture('disinfo_analysis'), ParseMode.lenient)

        self.assertEqual([result.block.task for result in results],
                         ['PHILOSOPHY_ANALYSIS', 'MODIFY_REASONING', 'RESPONSE', 'DISINFO_ANALYSIS'])

    def test_single_block(self):
        """
        Test a one-block document matches parse_block.
        """
        results = parse_document(MINIMAL_BLOCK)

        self.assertEqual(len(results), 1)
        self.assertEqual(results[0].block, parse_block(MINIMAL_BLOCK))

    def test_errors_stay_with_their_block(self):
        """
        Test a broken second block does not affect the first.
        """
        results = parse_document(MINIMAL_BLOCK + '\n#BROKEN\n@A\n> q\n')

        self.assertTrue(results[0].ok)
        self.assertFalse(results[1].ok)
        self.assertCodes(results[1].diagnostics, [Code.CONTEXT_LINE])
        self.assertEqual(results[1].diagnostics[0].span.start_line, 8)

    def test_preamble_is_its_own_chunk(self):
        """
        Test text before the first task line fails on its own.
        """
        results = parse_document('stray preamble\n' + MINIMAL_BLOCK)

        self.assertCodes(results[0].diagnostics, [Code.TASK_LINE])
        self.assertTrue(results[1].ok)

    def test_indented_hash_does_not_split(self):
        """
        Test only a column-one `#` starts a block.
        """
        results = parse_document(MINIMAL_BLOCK + '>> see\n  #tag inside\n', ParseMode.lenient)

        self.assertEqual(len(results), 1)
        self.assertEqual(results[0].block.factors[0].text, 'see #tag inside')

    def test_empty_document(self):
        """
        Test a document without blocks is an error.
        """
        for source in ('', '\n\n  \n'):
            with self.assertRaises(EmptyDocumentError):
                parse_document(source)
