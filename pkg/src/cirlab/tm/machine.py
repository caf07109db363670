"""Deterministic k-tape Turing machines with an exact step counter."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Sequence

from ..errors import InvalidSpec

__all__ = ["TMSpec", "MachineRun", "run", "load_spec", "save_spec", "spec_to_json", "spec_from_json", "BLANK"]

BLANK = "_"
MOVES = {"L": -1, "R": 1, "S": 0}


@dataclass(frozen=True, eq=False)
class TMSpec:
    """Machine description.

    ``transitions`` maps ``(state, reads)`` to ``(new_state, writes, moves)``
    where ``reads``/``writes``/``moves`` are k-tuples. A transition into
    ``halt`` still performs its writes and moves, then the machine stops.
    """

    tapes: int
    alphabet: tuple
    states: tuple
    start: str
    halt: str
    transitions: Mapping
    blank: str = BLANK

    @classmethod
    def build(cls, tapes: int, start: str, halt: str, transitions: Mapping, alphabet: Iterable[str] = ("0", "1", BLANK),
              blank: str = BLANK, fill: bool = True) -> "TMSpec":
        """Assemble a spec, collecting states from the transition table.

        With ``fill`` every undefined ``(state, reads)`` pair on a non-halt
        state becomes a transition to ``halt`` that changes nothing.
        """
        alphabet = tuple(dict.fromkeys([*alphabet, blank]))
        table = dict(transitions)
        states = dict.fromkeys([start])
        for (q, _), (q2, _, _) in table.items():
            states[q] = None
            states[q2] = None
        states[halt] = None
        if fill:
            for q in states:
                if q == halt:
                    continue
                for reads in itertools.product(alphabet, repeat=tapes):
                    table.setdefault((q, reads), (halt, reads, ("S",) * tapes))
        spec = cls(tapes, alphabet, tuple(states), start, halt, table, blank)
        spec.validate(require_total=fill)
        return spec

    def validate(self, require_total: bool = True, allow_stay: bool = True) -> None:
        k = self.tapes
        if k < 1:
            raise InvalidSpec("need at least one tape")
        alpha = set(self.alphabet)
        if self.blank not in alpha:
            raise InvalidSpec("alphabet must contain the blank symbol")
        states = set(self.states)
        if self.start not in states or self.halt not in states:
            raise InvalidSpec("start and halt must be states")
        moves = {"L", "R", "S"} if allow_stay else {"L", "R"}
        for (q, reads), (q2, writes, mv) in self.transitions.items():
            if q == self.halt:
                raise InvalidSpec("halt state has outgoing transitions")
            if q not in states or q2 not in states:
                raise InvalidSpec(f"unknown state in transition {q!r} -> {q2!r}")
            if not (len(reads) == len(writes) == len(mv) == k):
                raise InvalidSpec(f"transition arity mismatch at {q!r}, {reads!r}")
            if not (set(reads) <= alpha and set(writes) <= alpha):
                raise InvalidSpec(f"symbol outside alphabet at {q!r}, {reads!r}")
            if not set(mv) <= moves:
                raise InvalidSpec(f"bad head move {mv!r}")
        if require_total:
            for q in self.states:
                if q == self.halt:
                    continue
                for reads in itertools.product(self.alphabet, repeat=k):
                    if (q, reads) not in self.transitions:
                        raise InvalidSpec(f"transition table not total: missing {q!r}, {reads!r}")

    def __eq__(self, other):
        if not isinstance(other, TMSpec):
            return NotImplemented
        return spec_to_json(self) == spec_to_json(other)

    __hash__ = None


class _Tape:
    __slots__ = ("cells", "origin", "blank")

    def __init__(self, content: Sequence[str], blank: str):
        self.blank = blank
        self.cells = list(content) or [blank]
        self.origin = 0

    def grow(self, pos):
        i = pos + self.origin
        if i < 0:
            extra = max(-i, len(self.cells))
            self.cells[:0] = [self.blank] * extra
            self.origin += extra
        elif i >= len(self.cells):
            self.cells.extend([self.blank] * max(i - len(self.cells) + 1, len(self.cells)))

    def span(self) -> tuple[int, list]:
        """(first position, symbols) of the non-blank region; (0, []) if all blank."""
        idx = [i for i, s in enumerate(self.cells) if s != self.blank]
        if not idx:
            return 0, []
        return idx[0] - self.origin, self.cells[idx[0]:idx[-1] + 1]


def _render(symbols: Sequence[str]) -> str:
    if all(len(s) == 1 for s in symbols):
        return "".join(symbols)
    return " ".join(symbols)


@dataclass
class MachineRun:
    spec: TMSpec
    tapes: list
    heads: list
    state: str
    steps: int = 0
    halted: bool = False
    budget_exceeded: bool = False
    snapshots: list | None = None

    def contents(self, i: int = 0) -> str:
        """Non-blank span of tape ``i`` (inner blanks kept)."""
        return _render(self.tapes[i].span()[1])

    def tape_strings(self) -> tuple:
        return tuple(self.contents(i) for i in range(self.spec.tapes))

    def symbols(self, i: int = 0) -> list:
        return list(self.tapes[i].span()[1])

    @property
    def output(self) -> str:
        """Tape 0 with surrounding blanks stripped."""
        return self.contents(0)

    def dump(self) -> str:
        """One ``tape[i] head=<pos>: <symbols>`` line per tape.

        Symbols start at absolute position ``min(0, leftmost non-blank, head)``.
        """
        lines = []
        for i, (tape, head) in enumerate(zip(self.tapes, self.heads)):
            first, syms = tape.span()
            lo = min(0, head, first if syms else 0)
            hi = max(head + 1, first + len(syms))
            tape.grow(lo)
            tape.grow(hi - 1)
            body = tape.cells[lo + tape.origin:hi + tape.origin]
            lines.append(f"tape[{i}] head={head}: {_render(body)}")
        return "\n".join(lines)


def _compile_table(spec: TMSpec):
    return {key: (q2, w, tuple(MOVES[m] for m in mv)) for key, (q2, w, mv) in spec.transitions.items()}


def run(spec: TMSpec, inputs=(), budget: int | None = None, snapshot_every: int | None = None,
        observer: Callable[[int, MachineRun], None] | None = None) -> MachineRun:
    """Run ``spec`` from its start state with ``inputs`` on the tapes (heads at 0).

    Stops on halt or after ``budget`` steps (``budget_exceeded`` is then set,
    the run is returned rather than raised). Snapshots ``(step, tape strings)``
    are taken at step 0, every ``snapshot_every`` steps, and at the end.
    """
    if budget is not None and budget < 0:
        raise ValueError("budget must be >= 0")
    if isinstance(inputs, str):
        inputs = [inputs]
    inputs = list(inputs) + [""] * (spec.tapes - len(inputs))
    if len(inputs) != spec.tapes:
        raise InvalidSpec(f"{len(inputs)} inputs for a {spec.tapes}-tape machine")
    alpha = set(spec.alphabet)
    for content in inputs:
        if not set(content) <= alpha:
            raise InvalidSpec(f"input symbols outside alphabet: {sorted(set(content) - alpha)}")
    tapes = [_Tape(list(c), spec.blank) for c in inputs]
    mr = MachineRun(spec, tapes, [0] * spec.tapes, spec.start, snapshots=[] if snapshot_every else None)
    table = _compile_table(spec)
    halt = spec.halt
    k = spec.tapes

    def snap():
        mr.snapshots.append((mr.steps, mr.tape_strings()))

    if snapshot_every:
        snap()
    state = spec.start
    steps = 0
    heads = mr.heads
    if k == 1:
        tape = tapes[0]
        cells, origin = tape.cells, tape.origin
        pos = 0
        while state != halt:
            if budget is not None and steps >= budget:
                mr.budget_exceeded = True
                break
            i = pos + origin
            state, (w,), (d,) = table[(state, (cells[i],))]
            cells[i] = w
            pos += d
            steps += 1
            i = pos + origin
            if i < 0 or i >= len(cells):
                tape.grow(pos)
                cells, origin = tape.cells, tape.origin
            if snapshot_every and steps % snapshot_every == 0:
                mr.steps = steps
                heads[0] = pos
                snap()
            if observer is not None:
                mr.steps, mr.state, heads[0] = steps, state, pos
                observer(steps, mr)
        heads[0] = pos
    else:
        while state != halt:
            if budget is not None and steps >= budget:
                mr.budget_exceeded = True
                break
            reads = tuple(t.cells[h + t.origin] for t, h in zip(tapes, heads))
            state, writes, moves = table[(state, reads)]
            for j in range(k):
                t = tapes[j]
                t.cells[heads[j] + t.origin] = writes[j]
                heads[j] += moves[j]
                t.grow(heads[j])
            steps += 1
            if snapshot_every and steps % snapshot_every == 0:
                mr.steps = steps
                snap()
            if observer is not None:
                mr.steps, mr.state = steps, state
                observer(steps, mr)
    mr.steps = steps
    mr.state = state
    mr.halted = state == halt
    if snapshot_every and mr.snapshots[-1][0] != steps:
        snap()
    return mr


def spec_to_json(spec: TMSpec) -> str:
    rows = sorted([q, list(r), q2, list(w), list(m)] for (q, r), (q2, w, m) in spec.transitions.items())
    doc = {
        "tapes": spec.tapes,
        "alphabet": list(spec.alphabet),
        "blank": spec.blank,
        "states": list(spec.states),
        "start": spec.start,
        "halt": spec.halt,
        "transitions": rows,
    }
    return json.dumps(doc, indent=1, sort_keys=True) + "\n"


def spec_from_json(text: str) -> TMSpec:
    try:
        doc = json.loads(text)
        transitions = {
            (q, tuple(r)): (q2, tuple(w), tuple(m)) for q, r, q2, w, m in doc["transitions"]
        }
        spec = TMSpec(int(doc["tapes"]), tuple(doc["alphabet"]), tuple(doc["states"]), doc["start"], doc["halt"],
                      transitions, doc.get("blank", BLANK))
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidSpec(f"malformed machine file: {exc}") from exc
    spec.validate(require_total=False)
    return spec


def save_spec(spec: TMSpec, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(spec_to_json(spec))


def load_spec(path) -> TMSpec:
    with open(path, encoding="utf-8") as fh:
        return spec_from_json(fh.read())
