"""
Common settings file, intended to set defaults.

Ranges come from the protocol's confidence calculus; authority weights are
calibrated against the cognitive authority anchors (ethical 0.9, medical 0.6,
financial 0.3, data processing 0.1).
"""

SYNLANG_VERSION = '1.2.0'

TRANSMISSION_FACTOR_RANGE = (0.9, 1.0)
TRUST_FACTOR_RANGE = (0.5, 1.0)
DECREMENT_RANGE = (0.0, 0.1)

DEFAULT_TRANSMISSION_FACTOR = 0.98
DEFAULT_TRUST_FACTOR = 1.0
DEFAULT_COHERENCE_FACTOR = 1.0

# Slack for decimal noise in humility checks.
HUMILITY_EPSILON = 1e-12
# Equality tolerance for confidence arithmetic.
FLOAT_TOLERANCE = 1e-9

AUTHORITY_COMPONENTS = (
    'expertise_match', 'consequence_severity', 'value_alignment', 'time_constraints',
)

# Antisymmetric pairs sum to zero, so a context of all 0.5 maps to the bias.
DEFAULT_AUTHORITY_WEIGHTS = {
    'expertise_match': -0.35,
    'consequence_severity': 0.25,
    'value_alignment': 0.35,
    'time_constraints': -0.25,
    'bias': 0.5,
}

AUTHORITY_ANCHOR_TOLERANCE = 0.1

AUTHORITY_ANCHORS = {
    'ethical': {
        'alpha': 0.9,
        'context': {
            'expertise_match': 0.2,
            'consequence_severity': 0.95,
            'value_alignment': 0.95,
            'time_constraints': 0.3,
        },
    },
    'medical': {
        'alpha': 0.6,
        'context': {
            'expertise_match': 0.5,
            'consequence_severity': 0.9,
            'value_alignment': 0.5,
            'time_constraints': 0.5,
        },
    },
    'financial': {
        'alpha': 0.3,
        'context': {
            'expertise_match': 0.8,
            'consequence_severity': 0.5,
            'value_alignment': 0.2,
            'time_constraints': 0.6,
        },
    },
    'data_processing': {
        'alpha': 0.1,
        'context': {
            'expertise_match': 0.95,
            'consequence_severity': 0.1,
            'value_alignment': 0.05,
            'time_constraints': 0.5,
        },
    },
}
