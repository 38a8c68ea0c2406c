"""
Confidence calculus: propagation across agents, chain composition, epistemic
humility and the cognitive authority distribution.

Value types validate their range on construction and raise
`FactorRangeError`; the functions below are total on valid values.
"""

import logging
import math
from dataclasses import dataclass
from functools import reduce
from operator import mul

from . import settings
from .config import as_float, read_key_value_file
from .constants import HumilityStatus, PropagationMode
from .exceptions import ConfigError, FactorRangeError, UsageError
from .utils import ugettext as _

log = logging.getLogger(__name__)


def _check_range(name, value, low, high, low_open=False):
    """
    Return value as a finite float inside [low, high] (or (low, high]).
    """
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise FactorRangeError(_('{} must be a number, got {!r}').format(name, value))
    value = float(value)
    too_low = value <= low if low_open else value < low
    if not math.isfinite(value) or too_low or value > high:
        interval = '({}, {}]' if low_open else '[{}, {}]'
        raise FactorRangeError(_('{} must lie in {}, got {!r}').format(
            name, interval.format(low, high), value))
    return value


@dataclass(frozen=True, order=True)
class Confidence:
    """
    Assessed probability that a reasoning step is correct.
    """

    value: float

    def __post_init__(self):
        object.__setattr__(self, 'value', _check_range('confidence', self.value, 0.0, 1.0))

    def __float__(self):
        return self.value

    @classmethod
    def of(cls, value):
        """
        Coerce a float or Confidence.
        """
        return value if isinstance(value, cls) else cls(value)


@dataclass(frozen=True)
class TrustFactor:
    """
    Reliability of the receiving agent, in [0.5, 1].
    """

    value: float = settings.DEFAULT_TRUST_FACTOR

    def __post_init__(self):
        object.__setattr__(self, 'value', _check_range('trust factor', self.value, *settings.TRUST_FACTOR_RANGE))

    def __float__(self):
        return self.value

    @classmethod
    def of(cls, value):
        """
        Coerce a float or TrustFactor.
        """
        return value if isinstance(value, cls) else cls(value)


@dataclass(frozen=True)
class CoherenceFactor:
    """
    Opaque multiplier on a composed chain, in (0, 1].

    Values above 1 would let composition manufacture confidence.
    """

    value: float = settings.DEFAULT_COHERENCE_FACTOR

    def __post_init__(self):
        object.__setattr__(self, 'value', _check_range('coherence factor', self.value, 0.0, 1.0, low_open=True))

    def __float__(self):
        return self.value

    @classmethod
    def of(cls, value):
        """
        Coerce a float or CoherenceFactor.
        """
        return value if isinstance(value, cls) else cls(value)


@dataclass(frozen=True)
class PropagationPolicy:
    """
    How a receiving agent degrades inherited confidence.

    `multiplicative`: c * transmission_factor * trust.
    `fixed_decrement`: max(0, c - decrement), trust ignored.
    """

    mode: PropagationMode = PropagationMode.multiplicative
    transmission_factor: float = settings.DEFAULT_TRANSMISSION_FACTOR
    decrement: float = 0.0

    def __post_init__(self):
        try:
            object.__setattr__(self, 'mode', PropagationMode(self.mode))
        except ValueError:
            raise FactorRangeError(_('unknown propagation mode {!r}').format(self.mode))
        object.__setattr__(self, 'transmission_factor', _check_range(
            'transmission factor', self.transmission_factor, *settings.TRANSMISSION_FACTOR_RANGE))
        object.__setattr__(self, 'decrement', _check_range('decrement', self.decrement, *settings.DECREMENT_RANGE))

    @classmethod
    def multiplicative(cls, transmission_factor=settings.DEFAULT_TRANSMISSION_FACTOR):
        """
        Product policy.
        """
        return cls(PropagationMode.multiplicative, transmission_factor=transmission_factor)

    @classmethod
    def fixed_decrement(cls, decrement):
        """
        Subtraction policy.
        """
        return cls(PropagationMode.fixed_decrement, decrement=decrement)


DEFAULT_POLICY = PropagationPolicy()


def propagate(confidence, policy=DEFAULT_POLICY, trust=None):
    """
    Degrade a confidence as it crosses from one agent to another.

    Arguments:
        confidence (Confidence or float): Sender's confidence.
        policy (PropagationPolicy): Receiver's degradation policy.
        trust (TrustFactor or float): Receiver's trust factor; ignored by `fixed_decrement`.
    Returns:
        Confidence: never above the input.
    """
    value = Confidence.of(confidence).value
    trust = TrustFactor.of(trust if trust is not None else settings.DEFAULT_TRUST_FACTOR)
    if policy.mode is PropagationMode.fixed_decrement:
        result = max(0.0, value - policy.decrement)
    else:
        result = value * policy.transmission_factor * trust.value
    log.debug("propagate %r via %s -> %r", value, policy.mode.value, result)
    return Confidence(result)


def compose_chain(steps, coherence=None):
    """
    Confidence of a chain of reasoning steps: the product of the steps times coherence.

    Raises:
        UsageError: for an empty chain.
    """
    values = [Confidence.of(step).value for step in steps]
    if not values:
        raise UsageError(_('compose_chain needs at least one step'))
    coherence = CoherenceFactor.of(coherence if coherence is not None else settings.DEFAULT_COHERENCE_FACTOR)
    return Confidence(reduce(mul, values, 1.0) * coherence.value)


def check_humility(original, derived):
    """
    Derived confidence may never exceed the confidence it was derived from.
    """
    if Confidence.of(derived).value <= Confidence.of(original).value + settings.HUMILITY_EPSILON:
        return HumilityStatus.holds
    return HumilityStatus.violated


def confidence_stance(block):
    """
    Overall confidence stance of a block: the mean of its quantified TRACE_FE confidences.

    Returns None when no TRACE_FE item is quantified.
    """
    values = [item.confidence for item in block.trace_fe if item.confidence is not None]
    if not values:
        return None
    return math.fsum(values) / len(values)


@dataclass(frozen=True)
class AuthorityContext:
    """
    Inputs of the cognitive authority distribution, each in [0, 1].

    High expertise_match means the AI is strong in the domain; high
    time_constraints means extreme time pressure.
    """

    expertise_match: float
    consequence_severity: float
    value_alignment: float
    time_constraints: float

    def __post_init__(self):
        for name in settings.AUTHORITY_COMPONENTS:
            object.__setattr__(self, name, _check_range(name.replace('_', ' '), getattr(self, name), 0.0, 1.0))

    @classmethod
    def from_mapping(cls, values, source='<profile>'):
        """
        Build from a key-value mapping holding all four components.
        """
        missing = [name for name in settings.AUTHORITY_COMPONENTS if name not in values]
        unknown = sorted(set(values) - set(settings.AUTHORITY_COMPONENTS))
        if missing or unknown:
            raise ConfigError(_('{}: authority profile needs exactly {} (missing: {}; unknown: {})').format(
                source, ', '.join(settings.AUTHORITY_COMPONENTS), ', '.join(missing) or '-', ', '.join(unknown) or '-'))
        try:
            return cls(**{name: as_float(values, name, source) for name in settings.AUTHORITY_COMPONENTS})
        except FactorRangeError as error:
            raise ConfigError('{}: {}'.format(source, error))

    @classmethod
    def from_file(cls, path):
        """
        Load a profile from a key-value file.
        """
        return cls.from_mapping(read_key_value_file(path), source=str(path))

    @classmethod
    def anchor(cls, name):
        """
        One of the representative anchor profiles: ethical, medical, financial, data_processing.
        """
        try:
            return cls(**settings.AUTHORITY_ANCHORS[name]['context'])
        except KeyError:
            raise ConfigError(_('Unknown authority anchor {!r}, expected one of {}').format(
                name, ', '.join(sorted(settings.AUTHORITY_ANCHORS))))


@dataclass(frozen=True)
class AuthorityWeights:
    """
    Affine weights of the authority function; any finite values.
    """

    expertise_match: float = settings.DEFAULT_AUTHORITY_WEIGHTS['expertise_match']
    consequence_severity: float = settings.DEFAULT_AUTHORITY_WEIGHTS['consequence_severity']
    value_alignment: float = settings.DEFAULT_AUTHORITY_WEIGHTS['value_alignment']
    time_constraints: float = settings.DEFAULT_AUTHORITY_WEIGHTS['time_constraints']
    bias: float = settings.DEFAULT_AUTHORITY_WEIGHTS['bias']

    def __post_init__(self):
        for name in settings.AUTHORITY_COMPONENTS + ('bias',):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value):
                raise FactorRangeError(_('authority weight {} must be finite, got {!r}').format(name, value))
            object.__setattr__(self, name, float(value))

    @classmethod
    def from_file(cls, path):
        """
        Load weights from a key-value file; missing keys keep their defaults.
        """
        values = read_key_value_file(path)
        known = settings.AUTHORITY_COMPONENTS + ('bias',)
        unknown = sorted(set(values) - set(known))
        if unknown:
            raise ConfigError(_('{}: unknown authority weight(s): {}').format(path, ', '.join(unknown)))
        return cls(**{name: as_float(values, name, str(path)) for name in values})


def authority(context, weights=None):
    """
    Share of cognitive authority held by the human: 1 is full human authority, 0 full AI authority.

    α = clamp(bias + Σ weight_i * component_i, 0, 1).
    """
    weights = weights if weights is not None else AuthorityWeights()
    total = weights.bias + math.fsum(
        getattr(weights, name) * getattr(context, name) for name in settings.AUTHORITY_COMPONENTS
    )
    return min(1.0, max(0.0, total))
