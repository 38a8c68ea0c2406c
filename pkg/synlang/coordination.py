"""
Multi-agent coordination: reasoning traces, the agent registry and a
deterministic in-process simulator for COT/CTX handoffs.

One logical timeline: events are processed strictly in order and stamped
with a logical clock, so equal scenarios give byte-identical audit logs.
"""

import logging
from collections import OrderedDict
from dataclasses import dataclass
from typing import Optional, Tuple

from . import settings
from .calculus import DEFAULT_POLICY, Confidence, PropagationPolicy, TrustFactor, propagate
from .config import as_float, read_key_value_file
from .constants import DiagnosticCode, ParseMode, PropagationMode
from .exceptions import (
    BlockSyntaxError, ConfigError, FactorRangeError, HandoffRefused, RegistrationError, RoutingError,
    SimulationAborted, SynLangException, UsageError,
)
from .syntax.blocks import TraceItem
from .syntax.export import item_to_dict
from .syntax.parser import parse_document
from .utils import dump_json, is_identifier, ugettext as _
from .validate import RuleSet, validate_block

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class TraceStep:
    """
    One reasoning step of an agent's trace.

    `confidence` is None for unquantified steps, which are never degraded
    and take no part in humility checks.
    """

    step: str
    evidence: str
    confidence: Optional[Confidence]
    origin_agent: str
    hop_index: int = 0

    @property
    def quantified(self):
        """
        Return True when the step carries a confidence.
        """
        return self.confidence is not None

    def to_dict(self):
        """
        JSON-ready mapping.
        """
        return OrderedDict([
            ('step', self.step),
            ('evidence', self.evidence),
            ('confidence', self.confidence.value if self.confidence is not None else None),
            ('origin_agent', self.origin_agent),
            ('hop_index', self.hop_index),
        ])


@dataclass(frozen=True)
class ReasoningTrace:
    """
    Ordered reasoning steps; composition concatenates.
    """

    steps: Tuple[TraceStep, ...] = ()

    def __len__(self):
        return len(self.steps)

    def __iter__(self):
        return iter(self.steps)

    def __add__(self, other):
        return compose_traces(self, other)

    def inherited(self, label, agent):
        """
        Latest step named `label` that `agent` received from another agent, or None.
        """
        for step in reversed(self.steps):
            if step.step == label and step.hop_index > 0 and step.origin_agent != agent:
                return step
        return None


def compose_traces(first, second):
    """
    Append the steps of `second` to `first`.

    Steps keep their origin agent and confidence; the result has
    len(first) + len(second) steps.
    """
    return ReasoningTrace(tuple(first.steps) + tuple(second.steps))


@dataclass(frozen=True)
class AgentProfile:
    """
    Registered agent with its receiving-side trust and degradation policy.
    """

    name: str
    trust: TrustFactor = TrustFactor()
    policy: PropagationPolicy = DEFAULT_POLICY

    def __post_init__(self):
        if not is_identifier(self.name):
            raise RegistrationError(_('Agent name {!r} is not an identifier').format(self.name))
        object.__setattr__(self, 'trust', TrustFactor.of(self.trust))


class AgentRegistry(object):
    """
    Agents addressable by name; names are unique.
    """

    def __init__(self, profiles=()):
        """
        Register the given profiles in order.
        """
        self._profiles = OrderedDict()
        for profile in profiles:
            self.register(profile)

    def register(self, profile):
        """
        Add an agent.

        Raises:
            RegistrationError: when the name is taken.
        """
        if profile.name in self._profiles:
            raise RegistrationError(_('Agent {} is already registered').format(profile.name))
        self._profiles[profile.name] = profile
        log.debug("Registered agent %s (trust=%s, policy=%s)", profile.name, profile.trust.value,
                  profile.policy.mode.value)
        return profile

    def get(self, name):
        """
        Profile of a registered agent, or None.
        """
        return self._profiles.get(name)

    def names(self):
        """
        Registered names in registration order.
        """
        return list(self._profiles)

    def __contains__(self, name):
        return name in self._profiles

    def __len__(self):
        return len(self._profiles)

    def __iter__(self):
        return iter(self._profiles.values())


def register_agent(registry, profile):
    """
    Register a profile; returns the updated registry.
    """
    registry.register(profile)
    return registry


@dataclass(frozen=True)
class HandoffRecord:
    """
    One routed COT/CTX transfer; items carry post-degradation confidences.
    """

    cot_id: str
    sender: str
    receiver: str
    task_description: str
    transferred_items: Tuple[TraceItem, ...]
    timestamp: int

    def to_dict(self):
        """
        JSON-ready mapping.
        """
        return OrderedDict([
            ('timestamp', self.timestamp),
            ('cot_id', self.cot_id),
            ('sender', self.sender),
            ('receiver', self.receiver),
            ('task_description', self.task_description),
            ('transferred_items', [item_to_dict(item) for item in self.transferred_items]),
        ])


@dataclass(frozen=True)
class AuditLog:
    """
    Handoff records in timestamp order plus each agent's final trace.
    """

    records: Tuple[HandoffRecord, ...] = ()
    traces: Tuple[Tuple[str, ReasoningTrace], ...] = ()

    def trace(self, agent):
        """
        Final trace of an agent; empty when it never reasoned.
        """
        return dict(self.traces).get(agent, ReasoningTrace())

    def to_dict(self):
        """
        JSON-ready mapping; traces keyed by agent name in sorted order.
        """
        return OrderedDict([
            ('synlang', settings.SYNLANG_VERSION),
            ('records', [record.to_dict() for record in self.records]),
            ('traces', OrderedDict(
                (agent, [step.to_dict() for step in trace]) for agent, trace in sorted(self.traces)
            )),
        ])

    def to_json(self):
        """
        Export the log as JSON text.
        """
        return dump_json(self.to_dict())


class Coordinator(object):
    """
    Owns the state of one simulation run: registry, traces, records and clock.

    Not safe for concurrent use.
    """

    def __init__(self, registry, rules=None):
        """
        Start an empty timeline over a registry.
        """
        self.registry = registry
        self.rules = rules if rules is not None else RuleSet.default()
        self.traces = {}
        self.records = []
        self.clock = 0

    def trace(self, agent):
        """
        Current trace of an agent.
        """
        return self.traces.get(agent, ReasoningTrace())

    def _append(self, agent, steps):
        """
        Compose new steps onto an agent's trace.
        """
        if steps:
            self.traces[agent] = compose_traces(self.trace(agent), ReasoningTrace(tuple(steps)))

    def _own_steps(self, block, sender):
        """
        Steps the sender reasoned itself: its TRACE_FE items and the CTX items it originates.
        """
        steps = [self._step(item, sender, 0) for item in block.trace_fe]
        labels = set(item.label for item in block.trace_fe)
        if block.coordination is not None:
            sender_trace = self.trace(sender)
            for item in block.coordination.ctx_items:
                if item.label not in labels and sender_trace.inherited(item.label, sender) is None:
                    steps.append(self._step(item, sender, 0))
        return steps

    @staticmethod
    def _step(item, origin, hop_index, confidence=None):
        """
        TraceStep from a TraceItem.
        """
        value = confidence if confidence is not None else item.confidence
        return TraceStep(
            step=item.label,
            evidence=item.explanation,
            confidence=Confidence.of(value) if value is not None else None,
            origin_agent=origin,
            hop_index=hop_index,
        )

    def _check_route(self, block, sender):
        """
        Routing and validation checks; nothing is recorded when they fail.
        """
        coordination = block.coordination
        if coordination is None:
            raise UsageError(_('Block {} carries no COT/CTX coordination').format(block.task))
        receiver = self.registry.get(coordination.target_agent)
        if receiver is None:
            raise RoutingError(DiagnosticCode.UNKNOWN_RECEIVER, _('receiver @{} is not registered').format(
                coordination.target_agent))
        if sender not in self.registry:
            raise RoutingError(DiagnosticCode.UNKNOWN_SENDER, _('sender @{} is not registered').format(sender))
        errors = [diagnostic for diagnostic in validate_block(block, self.rules) if diagnostic.is_error]
        if errors:
            raise HandoffRefused(errors)
        return receiver

    def _transfer(self, item, sender, receiver):
        """
        Degrade one CTX item for the receiver.

        Returns:
            (TraceItem, TraceStep): the transferred item and the receiver's new step.
        """
        origin, hop_index, base = sender, 1, item.confidence
        inherited = self.trace(sender).inherited(item.label, sender)
        if inherited is not None:
            # Relay: the step keeps its origin and cannot regain confidence lost on earlier hops.
            origin, hop_index = inherited.origin_agent, inherited.hop_index + 1
            if inherited.quantified:
                if base is not None and base > inherited.confidence.value + settings.HUMILITY_EPSILON:
                    log.warning(
                        "%s restates %r at %s above its inherited %s; capping",
                        sender, item.label, base, inherited.confidence.value,
                    )
                base = inherited.confidence.value if base is None else min(base, inherited.confidence.value)
        degraded = None
        if base is not None:
            degraded = propagate(base, receiver.policy, receiver.trust).value
        log.debug("Transfer %s %s -> %s: %r -> %r (hop %d, origin %s)",
                  item.label, sender, receiver.name, item.confidence, degraded, hop_index, origin)
        transferred = TraceItem(item.label, item.explanation, degraded)
        return transferred, self._step(transferred, origin, hop_index)

    def handoff(self, block, sender=None):
        """
        Route a block's COT/CTX to its target agent.

        Arguments:
            block (Block): Block with coordination.
            sender (str): Sending agent; the block's `@AGENT` when None.
        Returns:
            HandoffRecord
        Raises:
            UsageError: the block has no coordination.
            RoutingError: E-ROUTE-001 unknown receiver (checked first), E-ROUTE-002 unknown sender.
            HandoffRefused: the block has validation errors.
        """
        sender = sender or block.agent
        receiver = self._check_route(block, sender)
        self._append(sender, self._own_steps(block, sender))
        coordination = block.coordination
        transferred, steps = [], []
        for item in coordination.ctx_items:
            new_item, step = self._transfer(item, sender, receiver)
            transferred.append(new_item)
            steps.append(step)
        self._append(receiver.name, steps)
        self.clock += 1
        record = HandoffRecord(
            cot_id=coordination.cot_id,
            sender=sender,
            receiver=receiver.name,
            task_description=coordination.task_description,
            transferred_items=tuple(transferred),
            timestamp=self.clock,
        )
        self.records.append(record)
        log.debug("Handoff %s at t=%d: %s -> %s, %d items", record.cot_id, record.timestamp, sender,
                  receiver.name, len(transferred))
        return record

    def process(self, block, sender=None):
        """
        Process one scenario event.

        Blocks without coordination only extend the sender's trace.

        Returns:
            HandoffRecord or None.
        """
        sender = sender or block.agent
        if block.coordination is not None:
            return self.handoff(block, sender)
        if sender not in self.registry:
            raise RoutingError(DiagnosticCode.UNKNOWN_SENDER, _('sender @{} is not registered').format(sender))
        self._append(sender, self._own_steps(block, sender))
        log.debug("Recorded block %s for %s", block.task, sender)
        return None

    def audit_log(self):
        """
        Snapshot of the run so far; every registered agent appears in the traces.
        """
        agents = set(self.registry.names()) | set(self.traces)
        return AuditLog(
            records=tuple(self.records),
            traces=tuple((agent, self.trace(agent)) for agent in sorted(agents)),
        )


def handoff(registry, block, sender=None, rules=None):
    """
    Route a single block on a fresh timeline.

    See `Coordinator.handoff`.
    """
    return Coordinator(registry, rules).handoff(block, sender)


@dataclass(frozen=True)
class Scenario:
    """
    Registered agents plus ordered `(sender, block)` events.
    """

    registry: AgentRegistry
    events: Tuple[Tuple[str, object], ...] = ()


def simulate(scenario, rules=None):
    """
    Run every event of a scenario in order.

    Returns:
        AuditLog
    Raises:
        SimulationAborted: at the first failing event, carrying the partial log.
    """
    coordinator = Coordinator(scenario.registry, rules)
    for index, (sender, block) in enumerate(scenario.events, start=1):
        log.debug("Event %d: block %s from %s", index, block.task, sender)
        try:
            coordinator.process(block, sender)
        except SynLangException as error:
            log.warning("Simulation aborted at event %d (%s): %s", index, block.task, error)
            raise SimulationAborted(
                coordinator.audit_log(), error,
                detail=_('event {} (block {}): {}').format(index, block.task, error),
            )
    return coordinator.audit_log()


AGENT_KEYS = ('trust', 'policy', 'transmission_factor', 'decrement')


def _agent_profile(name, values, source):
    """
    Build a profile from the `agent.NAME.*` manifest keys.
    """
    try:
        mode = PropagationMode(values.get('policy', PropagationMode.multiplicative.value))
    except ValueError:
        raise ConfigError(_('{}: agent.{}.policy must be multiplicative or fixed_decrement').format(source, name))
    numbers = {key: as_float(values, key, source) for key in ('trust', 'transmission_factor', 'decrement')
               if key in values}
    try:
        policy = PropagationPolicy(
            mode,
            transmission_factor=numbers.get('transmission_factor', settings.DEFAULT_TRANSMISSION_FACTOR),
            decrement=numbers.get('decrement', 0.0),
        )
        return AgentProfile(name, TrustFactor(numbers.get('trust', settings.DEFAULT_TRUST_FACTOR)), policy)
    except (FactorRangeError, RegistrationError) as error:
        raise ConfigError('{}: agent {}: {}'.format(source, name, error))


def parse_manifest(values, block_count, source='<manifest>'):
    """
    Interpret the key-value mapping of a scenario manifest.

    Keys: `agents = A, B` (default profiles), `agent.NAME.trust`,
    `agent.NAME.policy`, `agent.NAME.transmission_factor`,
    `agent.NAME.decrement` and `block.N = SENDER` (1-based).

    Returns:
        (AgentRegistry, {block index: sender})
    """
    agents, senders = OrderedDict(), {}
    for key, value in values.items():
        parts = key.split('.')
        if key == 'agents':
            for name in (part.strip() for part in value.split(',')):
                if name:
                    agents.setdefault(name, {})
        elif len(parts) == 3 and parts[0] == 'agent' and parts[2] in AGENT_KEYS:
            agents.setdefault(parts[1], {})[parts[2]] = value
        elif len(parts) == 2 and parts[0] == 'block' and parts[1].isdigit():
            index = int(parts[1])
            if not 1 <= index <= block_count:
                raise ConfigError(_('{}: {} is out of range, the scenario has {} blocks').format(
                    source, key, block_count))
            if not is_identifier(value):
                raise ConfigError(_('{}: {} must name an agent').format(source, key))
            senders[index - 1] = value
        else:
            raise ConfigError(_('{}: unknown manifest key {!r}').format(source, key))
    registry = AgentRegistry(_agent_profile(name, agents[name], source) for name in sorted(agents))
    return registry, senders


def load_scenario(syn_text, manifest_path, mode=ParseMode.lenient):
    """
    Build a Scenario from a `.syn` document and a manifest file.

    Unmapped blocks are sent by their own `@AGENT`.

    Raises:
        BlockSyntaxError: when a block does not parse.
        ConfigError: for a malformed manifest.
    """
    results = parse_document(syn_text, mode)
    failed = [diagnostic for result in results for diagnostic in result.diagnostics if diagnostic.is_error]
    if failed:
        raise BlockSyntaxError(failed)
    registry, senders = parse_manifest(read_key_value_file(manifest_path), len(results), source=str(manifest_path))
    events = tuple((senders.get(index, result.block.agent), result.block) for index, result in enumerate(results))
    return Scenario(registry, events)
