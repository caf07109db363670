"""Elementary cellular automata, Turing machines and work-counting measurements."""

from .eca import Configuration, EvolutionTrace, Rule, all_rules, applications_to_reach, diff_count, evolve, step
from .errors import (BackgroundUnstable, CirlabError, InvalidSpec, MalformedTape, OverflowPolicyError,
                     SnapshotsMissing, Unsupported, UnsupportedRule)
from .predictors import predict, predict_rule90, predict_rule158

__version__ = "0.1.0"
