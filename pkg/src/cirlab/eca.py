"""Elementary cellular automata on a quiescent zero background.

Rows are stored trimmed: ``cells`` holds the span from the leftmost to the
rightmost black cell and ``anchor`` is the absolute position of ``cells[0]``.
Every produced row is computed over the window ``[anchor - 1, anchor + width]``
and each cell of that window counts as one rule application.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np

from .errors import BackgroundUnstable

__all__ = [
    "Rule",
    "Configuration",
    "EvolutionTrace",
    "apply_window",
    "step",
    "evolve",
    "iterate",
    "diff_count",
    "applications_to_reach",
    "all_rules",
]


@dataclass(frozen=True)
class Rule:
    """ECA rule. ``table[4*l + 2*c + r]`` is the new value of the center cell."""

    index: int
    table: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not isinstance(self.index, (int, np.integer)) or not 0 <= self.index <= 255:
            raise ValueError(f"rule index must be an integer in [0, 255], got {self.index!r}")
        object.__setattr__(self, "index", int(self.index))
        object.__setattr__(self, "table", tuple((self.index >> k) & 1 for k in range(8)))

    @classmethod
    def from_table(cls, table: Sequence[int]) -> "Rule":
        if len(table) != 8:
            raise ValueError("truth table needs 8 entries")
        return cls(sum((int(b) & 1) << k for k, b in enumerate(table)))

    def __call__(self, l: int, c: int, r: int) -> int:
        return self.table[4 * l + 2 * c + r]

    @property
    def stable_background(self) -> bool:
        return self.table[0] == 0

    @property
    def mirrored(self) -> "Rule":
        """Left/right reflection of the rule."""
        return Rule.from_table([self.table[4 * r + 2 * c + l] for l in (0, 1) for c in (0, 1) for r in (0, 1)])

    def lookup(self) -> np.ndarray:
        return np.array(self.table, dtype=np.uint8)


def all_rules() -> list[Rule]:
    return [Rule(i) for i in range(256)]


def _as_rule(rule) -> Rule:
    return rule if isinstance(rule, Rule) else Rule(rule)


@dataclass(frozen=True)
class Configuration:
    """A finite row of black cells on an infinite white line (canonical, trimmed)."""

    cells: bytes = b""
    anchor: int = 0

    def __post_init__(self):
        cells = bytes(self.cells)
        if cells and max(cells) > 1:
            raise ValueError("cells must be 0/1")
        body = cells.lstrip(b"\x00")
        lead = len(cells) - len(body)
        body = body.rstrip(b"\x00")
        if not body:
            object.__setattr__(self, "cells", b"")
            object.__setattr__(self, "anchor", 0)
        else:
            object.__setattr__(self, "cells", body)
            object.__setattr__(self, "anchor", int(self.anchor) + lead)

    @classmethod
    def from_bits(cls, bits, anchor: int = 0) -> "Configuration":
        """Build from a ``"0101"`` string, a sequence of ints or a numpy array."""
        if isinstance(bits, str):
            if set(bits) - {"0", "1"}:
                raise ValueError(f"not a bit string: {bits!r}")
            return cls(bytes(ord(ch) - 48 for ch in bits), anchor)
        return cls(bytes(np.asarray(bits, dtype=np.uint8).tolist()), anchor)

    @classmethod
    def single(cls) -> "Configuration":
        return cls(b"\x01", 0)

    @classmethod
    def parse(cls, text: str) -> "Configuration":
        """Inverse of :meth:`to_text` (``"-2:10001"``)."""
        anchor, sep, bits = text.strip().partition(":")
        if not sep:
            raise ValueError(f"expected 'anchor:bits', got {text!r}")
        return cls.from_bits(bits, int(anchor))

    @property
    def width(self) -> int:
        return len(self.cells)

    @property
    def empty(self) -> bool:
        return not self.cells

    @property
    def right(self) -> int:
        """Position one past the rightmost stored cell."""
        return self.anchor + len(self.cells)

    @property
    def bits(self) -> str:
        return "".join("1" if b else "0" for b in self.cells)

    def array(self) -> np.ndarray:
        return np.frombuffer(self.cells, dtype=np.uint8)

    def ones(self) -> int:
        return sum(self.cells)

    def __getitem__(self, pos: int) -> int:
        k = pos - self.anchor
        if 0 <= k < len(self.cells):
            return self.cells[k]
        return 0

    def window(self, lo: int, hi: int) -> np.ndarray:
        """Cells at absolute positions ``lo..hi-1`` as a uint8 array."""
        out = np.zeros(max(hi - lo, 0), dtype=np.uint8)
        a, b = max(lo, self.anchor), min(hi, self.right)
        if a < b:
            out[a - lo:b - lo] = self.array()[a - self.anchor:b - self.anchor]
        return out

    def shifted(self, offset: int) -> "Configuration":
        return Configuration(self.cells, self.anchor + offset) if self.cells else self

    def to_text(self) -> str:
        return f"{self.anchor}:{self.bits}"

    def __str__(self):
        return self.to_text()


def apply_window(rule, l: int, c: int, r: int) -> int:
    return _as_rule(rule)(l, c, r)


def _step(lookup: np.ndarray, config: Configuration) -> tuple[Configuration, int]:
    if config.empty:
        return config, 0
    padded = np.zeros(config.width + 4, dtype=np.uint8)
    padded[2:-2] = config.array()
    idx = (padded[:-2] << 2) | (padded[1:-1] << 1) | padded[2:]
    out = lookup[idx]
    return Configuration(out.tobytes(), config.anchor - 1), len(out)


def step(rule, config: Configuration) -> Configuration:
    rule = _as_rule(rule)
    if not rule.stable_background:
        raise BackgroundUnstable(rule.index)
    return _step(rule.lookup(), config)[0]


def iterate(rule, init: Configuration) -> Iterator[tuple[Configuration, int]]:
    """Yield ``(E_t, writes)`` forever; ``writes`` is the work spent producing E_t (0 for E_0)."""
    rule = _as_rule(rule)
    if not rule.stable_background:
        raise BackgroundUnstable(rule.index)
    lookup = rule.lookup()
    row, writes = init, 0
    while True:
        yield row, writes
        row, writes = _step(lookup, row)


@dataclass(frozen=True)
class EvolutionTrace:
    """Rows ``E_0..E_n`` of an evolution with exact work accounting.

    ``writes[t]`` is the number of cells written to produce ``E_{t+1}``.
    When built with ``keep_rows=False`` only ``E_n`` is retained in ``rows``.
    """

    rule: Rule
    rows: tuple
    writes: tuple
    n: int
    l: int

    @property
    def applications(self) -> int:
        return sum(self.writes)

    @property
    def applications_before_last(self) -> int:
        """Work for ``E_1..E_{n-1}``: the convention behind the ``n**2 - 1`` count."""
        return sum(self.writes[:-1])

    @property
    def final(self) -> Configuration:
        return self.rows[-1]

    @property
    def complete(self) -> bool:
        return len(self.rows) == self.n + 1

    def cumulative_work(self) -> np.ndarray:
        """``cumulative_work()[t]`` = applications needed to reach ``E_t``."""
        return np.concatenate(([0], np.cumsum(self.writes, dtype=np.int64)))


def evolve(rule, init: Configuration | str | None = None, n: int = 0, keep_rows: bool = True) -> EvolutionTrace:
    """Run ``n`` steps from ``init`` (default: a single black cell at 0)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    rule = _as_rule(rule)
    if init is None:
        init = Configuration.single()
    elif isinstance(init, str):
        init = Configuration.parse(init) if ":" in init else Configuration.from_bits(init)
    rows = [init]
    writes = []
    gen = iterate(rule, init)
    next(gen)
    for _ in range(n):
        row, w = next(gen)
        writes.append(w)
        if keep_rows:
            rows.append(row)
        else:
            rows[0] = row
    return EvolutionTrace(rule, tuple(rows), tuple(writes), n, init.width)


def diff_count(a: Configuration, b: Configuration) -> int:
    """Number of absolute positions where the two rows disagree."""
    if a.empty and b.empty:
        return 0
    lo = min(c.anchor for c in (a, b) if not c.empty)
    hi = max(c.right for c in (a, b) if not c.empty)
    return int(np.count_nonzero(a.window(lo, hi) != b.window(lo, hi)))


def applications_to_reach(n: int, l: int = 1) -> int:
    """Analytic count of rule applications to reach ``E_n`` from a width-``l`` row.

    ``n**2 - 1`` for ``l == 1``; ``n**2 + n*(l - 1) - 1`` otherwise, which is an
    upper bound rather than a term-by-term sum.
    """
    if n < 1 or l < 1:
        raise ValueError("need n >= 1 and l >= 1")
    if l == 1:
        return n * n - 1
    return n * n + n * (l - 1) - 1
