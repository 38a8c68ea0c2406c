"""
SynLang protocol toolkit.
"""

__version__ = '1.2.0'

from .settings import SYNLANG_VERSION  # nopep8
from .syntax import (  # nopep8
    Block, ControlDirective, Coordination, Diagnostic, Factor, ParseResult, Span, TraceItem,
    export_document_json, export_json, format_canonical, format_document, import_json,
    parse_block, parse_document, tokenize,
)
from .validate import RuleSet, validate_block, validate_document  # nopep8
from .calculus import (  # nopep8
    AuthorityContext, AuthorityWeights, CoherenceFactor, Confidence, PropagationPolicy, TrustFactor,
    authority, check_humility, compose_chain, confidence_stance, propagate,
)
from .coordination import (  # nopep8
    AgentProfile, AgentRegistry, AuditLog, Coordinator, HandoffRecord, ReasoningTrace, Scenario, TraceStep,
    compose_traces, handoff, load_scenario, register_agent, simulate,
)
