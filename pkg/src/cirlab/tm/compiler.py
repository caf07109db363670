"""k-tape to 1-tape compilation by track merging.

Each cell of the single tape holds one composite symbol: for every track the
original symbol followed by ``^`` (a head sits here) or ``.``. One simulated
step is two sweeps over the used region:

* left to right, collecting the k symbols under the head markers;
* right to left, applying the writes and moving the markers. A marker moving
  left is carried to the next cell; a marker moving right takes a one-cell
  excursion back to the right, then the sweep resumes.

Each sweep costs O(region) and the region grows by at most one cell per
simulated step, so ``t`` source steps cost O((t + |x|)**2).
"""

from __future__ import annotations

import itertools
from collections import deque

from ..errors import InvalidSpec
from .machine import MachineRun, TMSpec

__all__ = ["compile_to_single_tape", "composite", "split_composite", "compiled_output", "compiled_tracks"]

HEAD, NOHEAD = "^", "."


def composite(symbols, marks) -> str:
    return "".join(s + (HEAD if m else NOHEAD) for s, m in zip(symbols, marks))


def split_composite(sym: str, k: int):
    """``(symbols, marks)`` for a composite; ``None`` for a raw symbol."""
    if len(sym) != 2 * k or sym[1::2].strip(HEAD + NOHEAD):
        return None
    return tuple(sym[0::2]), tuple(c == HEAD for c in sym[1::2])


def compile_to_single_tape(spec: TMSpec) -> TMSpec:
    """1-tape machine with the same input/output behaviour as ``spec``.

    The compiled machine reads the source's tape-0 input in raw symbols
    (other source tapes start blank) and leaves the source's tape 0 on track
    0 of its composites; see :func:`compiled_output`.
    """
    k = spec.tapes
    if k < 2:
        raise InvalidSpec("compilation needs a machine with at least two tapes")
    spec.validate(require_total=False)
    if any(len(s) != 1 or s in (HEAD, NOHEAD) for s in spec.alphabet):
        raise InvalidSpec("source alphabet must consist of single characters other than '^' and '.'")
    blank = spec.blank
    raw = [s for s in spec.alphabet if s != blank]
    composites = [composite(syms, marks)
                  for syms in itertools.product(spec.alphabet, repeat=k)
                  for marks in itertools.product((False, True), repeat=k)]
    alphabet = (blank, *raw, *composites)
    parsed = {c: split_composite(c, k) for c in composites}

    src = spec.transitions
    halt = "halt"

    def name(st):
        return "|".join(map(str, st))

    def with_marks(syms, marks, add=0):
        return composite(syms, [m or bool((add >> j) & 1) for j, m in enumerate(marks)])

    def after_sweep(q2):
        # head on the leftmost region cell; either halt or start the next scan
        if q2 == spec.halt:
            return halt
        return ("scan", q2) + (None,) * k

    def delta(st, sym):
        """Transition of the compiled machine: (new_state_tuple | 'halt', write, move)."""
        kind = st[0]
        if kind == "init":
            if sym != blank and sym not in raw:
                return None
            syms = (sym,) + (blank,) * (k - 1)
            return ("initr",), composite(syms, (True,) * k), "R"
        if kind == "initr":
            if sym == blank:
                return ("initb",), sym, "L"
            if sym in raw:
                return ("initr",), composite((sym,) + (blank,) * (k - 1), (False,) * k), "R"
            return None
        if kind == "initb":
            if sym == blank:
                return after_sweep(spec.start), sym, "R"
            return ("initb",), sym, "L"
        if kind == "scan":
            q, reads = st[1], st[2:]
            if sym == blank:
                if None in reads:
                    return None
                q2, writes, moves = src[(q, tuple(reads))]
                return ("upd", q2, "".join(writes), "".join(moves), 0, 0), sym, "L"
            p = parsed.get(sym)
            if p is None:
                return None
            syms, marks = p
            reads = tuple(syms[j] if marks[j] else reads[j] for j in range(k))
            return ("scan", q) + reads, sym, "R"
        if kind == "upd":
            _, q2, writes, moves, done, pend = st
            if sym == blank:
                if pend:
                    out = composite((blank,) * k, [bool((pend >> j) & 1) for j in range(k)])
                    return after_sweep(q2), out, "S"
                return after_sweep(q2), sym, "R"
            p = parsed.get(sym)
            if p is None:
                return None
            syms, marks = list(p[0]), list(p[1])
            for j in range(k):
                if (pend >> j) & 1:
                    marks[j] = True
            done |= pend
            new_pend, rset = 0, 0
            for j in range(k):
                if marks[j] and not (done >> j) & 1:
                    syms[j] = writes[j]
                    done |= 1 << j
                    if moves[j] == "L":
                        marks[j] = False
                        new_pend |= 1 << j
                    elif moves[j] == "R":
                        marks[j] = False
                        rset |= 1 << j
            out = composite(syms, marks)
            if rset:
                return ("rput", q2, writes, moves, done, new_pend, rset), out, "R"
            return ("upd", q2, writes, moves, done, new_pend), out, "L"
        if kind == "rput":
            _, q2, writes, moves, done, pend, rset = st
            if sym == blank:
                out = composite((blank,) * k, [bool((rset >> j) & 1) for j in range(k)])
            else:
                p = parsed.get(sym)
                if p is None:
                    return None
                out = with_marks(p[0], p[1], add=rset)
            return ("back", q2, writes, moves, done, pend), out, "L"
        if kind == "back":
            # back on the cell that sent markers right; left-moving markers go one further
            if sym == blank or parsed.get(sym) is None:
                return None
            return ("upd",) + st[1:], sym, "L"
        raise AssertionError(kind)

    table = {}
    start = ("init",)
    seen = {start}
    queue = deque([start])
    while queue:
        st = queue.popleft()
        for sym in alphabet:
            res = delta(st, sym)
            if res is None:
                continue
            nst, write, move = res
            target = halt if nst == halt else name(nst)
            table[(name(st), (sym,))] = (target, (write,), (move,))
            if nst != halt and nst not in seen:
                seen.add(nst)
                queue.append(nst)
    return TMSpec.build(1, name(start), halt, table, alphabet=alphabet, blank=blank)


def compiled_tracks(mr: MachineRun, k: int) -> list[str]:
    """Contents of each track of a compiled run, blanks stripped."""
    syms = mr.symbols(0)
    blank = mr.spec.blank
    tracks = [[] for _ in range(k)]
    for s in syms:
        p = split_composite(s, k)
        for j in range(k):
            if p is None:
                tracks[j].append(s if j == 0 else blank)
            else:
                tracks[j].append(p[0][j])
    return ["".join(t).strip(blank) for t in tracks]


def compiled_output(mr: MachineRun, k: int) -> str:
    """Track 0 of a compiled run: comparable with ``MachineRun.output`` of the source."""
    return compiled_tracks(mr, k)[0]
