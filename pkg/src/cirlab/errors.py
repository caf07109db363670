"""Exception types shared across cirlab."""


class CirlabError(Exception):
    """Base class for all library errors."""


class BackgroundUnstable(CirlabError):
    """Rule maps the all-zero neighborhood to 1, so the zero background flips every step."""

    def __init__(self, rule_index):
        super().__init__(f"rule {rule_index} maps (0,0,0) -> 1; infinite background is not representable")
        self.rule_index = rule_index


class UnsupportedRule(CirlabError):
    """No direct predictor is registered for this rule."""


class MalformedTape(CirlabError):
    """Tape string violates the doubled-symbol / separator grammar."""


class InvalidSpec(CirlabError):
    """Turing machine description is inconsistent."""


class SnapshotsMissing(CirlabError):
    """A witness check needs tape snapshots that were not recorded."""


class Unsupported(CirlabError):
    """Requested mode (e.g. a direct shortcut) does not exist for this function."""


class OverflowPolicyError(CirlabError):
    """A value exceeded the configured digit bound."""
