"""Two-tape machines that simulate an ECA on the doubled-symbol encoding.

Layout. Tape 0 starts with ``encode_input(n, E_0)``. Rows are produced in
ping-pong fashion: the tape holding ``E_{i-1}`` is read while ``E_i`` is
appended to the other one. Every row travels with a copy of the remaining
row counter, so after the run::

    tape 0:  01 C_0 01 E_0 01 C_2 01 E_2 01 ...
    tape 1:  01 C_1 01 E_1 01 C_3 01 E_3 01 ...

with ``C_i = n - i`` written in binary, most significant bit first. Rows are
untrimmed light-cone windows: ``E_i`` has ``l + 2i`` cells starting at
``anchor(E_0) - i``.

One phase (producing ``E_i``) copies the counter, streams the row through a
two-cell window held in the finite control, then rewinds the destination head
to the start of its counter, decrementing it on the way. A zero counter halts.
"""

from __future__ import annotations

from ..eca import Configuration, Rule, _as_rule
from ..errors import BackgroundUnstable, MalformedTape
from .encoding import decode_payloads
from .machine import BLANK, MachineRun, TMSpec

__all__ = ["build_eca_machine_2tape", "decode_machine_output", "build_rule158_direct_machine"]

_B = BLANK


class _TwoTape:
    """Helper that writes transitions in (source, destination) terms."""

    def __init__(self):
        self.table = {}

    def add(self, role, state, s_read, d_read, new_role, new_state, s_write=None, d_write=None, s_move="S", d_move="S"):
        s_write = s_read if s_write is None else s_write
        d_write = d_read if d_write is None else d_write
        key_state = f"{role}.{state}"
        target = new_state if new_role is None else f"{new_role}.{new_state}"
        if role == "A":  # source = tape 0, destination = tape 1
            reads, writes, moves = (s_read, d_read), (s_write, d_write), (s_move, d_move)
        else:
            reads, writes, moves = (d_read, s_read), (d_write, s_write), (d_move, s_move)
        self.table[(key_state, reads)] = (target, writes, moves)


def build_eca_machine_2tape(rule) -> TMSpec:
    """2-tape machine over ``{0, 1, _}`` computing ``E_1..E_n`` on input ``encode_input(n, E_0)``."""
    rule = _as_rule(rule)
    if not rule.stable_background:
        raise BackgroundUnstable(rule.index)
    f = lambda l, c, r: str(rule(l, c, r))
    m = _TwoTape()
    halt = "halt"

    # leading separator of tape 1, copied from tape 0
    m.add("A", "init0", "0", _B, "A", "init1", d_write="0", s_move="R", d_move="R")
    m.add("A", "init1", "1", _B, "A", "c0", d_write="1", s_move="R", d_move="R")

    for role, other in (("A", "B"), ("B", "A")):
        add = lambda *a, **kw: m.add(role, *a, **kw)
        # counter copy; the separator after it is copied too
        add("c0", "0", _B, role, "c0z", d_write="0", s_move="R", d_move="R")
        add("c0", "1", _B, role, "c1", d_write="1", s_move="R", d_move="R")
        add("c1", "1", _B, role, "c0", d_write="1", s_move="R", d_move="R")
        add("c0z", "0", _B, role, "c0", d_write="0", s_move="R", d_move="R")
        add("c0z", "1", _B, role, "row.0.0", d_write="1", s_move="R", d_move="R")
        # row streaming with window (p, c); a separator reads as r = 0
        for p in (0, 1):
            for c in (0, 1):
                o1, o0 = f(p, c, 1), f(p, c, 0)
                add(f"row.{p}.{c}", "1", _B, role, f"row1.{p}.{c}", d_write=o1, s_move="R", d_move="R")
                add(f"row.{p}.{c}", "0", _B, role, f"row0.{p}.{c}", d_write=o0, s_move="R", d_move="R")
                add(f"row1.{p}.{c}", "1", _B, role, f"row.{c}.1", d_write=o1, s_move="R", d_move="R")
                add(f"row0.{p}.{c}", "0", _B, role, f"row.{c}.0", d_write=o0, s_move="R", d_move="R")
                add(f"row0.{p}.{c}", "1", _B, role, f"end.{c}", d_write=o0, s_move="R", d_move="R")
        for c in (0, 1):
            o = f(c, 0, 0)
            add(f"end.{c}", _B, _B, role, f"end2.{o}", d_write=o, d_move="R")
        for o in "01":
            add(f"end2.{o}", _B, _B, role, "sep0", d_write=o, d_move="R")
        add("sep0", _B, _B, role, "sep1", d_write="0", d_move="R")
        add("sep1", _B, _B, role, "rw", d_write="1", d_move="L")
        add("rw", _B, "0", role, "re.r", d_move="L")
        # rewind over the new row, pair by pair from the right
        add("re.r", _B, "0", role, "re.skip", d_move="L")
        add("re.r", _B, "1", role, "re.l1", d_move="L")
        add("re.skip", _B, "0", role, "re.r", d_move="L")
        add("re.l1", _B, "1", role, "re.r", d_move="L")
        add("re.l1", _B, "0", role, "dec.r.1.0", d_move="L")
        # rewind over the counter, decrementing (borrow b, nonzero-seen z)
        for b in (0, 1):
            for z in (0, 1):
                if b:
                    add(f"dec.r.{b}.{z}", _B, "0", role, f"dec.l.1.1.1", d_write="1", d_move="L")
                    add(f"dec.r.{b}.{z}", _B, "1", role, f"dec.l1.1.{z}", d_write="0", d_move="L")
                else:
                    add(f"dec.r.{b}.{z}", _B, "0", role, f"dec.l.0.0.{z}", d_write="0", d_move="L")
                    add(f"dec.r.{b}.{z}", _B, "1", role, f"dec.l1.0.{z}", d_write="1", d_move="L")
                for bit in "01":
                    add(f"dec.l.{bit}.{b}.{z}", _B, bit, role, f"dec.r.{b}.{z}", d_write=bit, d_move="L")
                    # the left cell read here always equals the pair's original value
                    other_bit = "1" if bit == "0" else "0"
                    add(f"dec.l.{bit}.{b}.{z}", _B, other_bit, role, f"dec.r.{b}.{z}", d_write=bit, d_move="L")
                new = "0" if b else "1"
                add(f"dec.l1.{b}.{z}", _B, "1", role, f"dec.r.0.{int(z or new == '1')}", d_write=new, d_move="L")
                if b:
                    # borrow ran into the separator: counter was already zero
                    add(f"dec.l1.{b}.{z}", _B, "0", None, halt)
                elif z:
                    add(f"dec.l1.{b}.{z}", _B, "0", role, "go", d_move="R")
                else:
                    add(f"dec.l1.{b}.{z}", _B, "0", None, halt)
        add("go", _B, "1", other, "c0", d_move="R")

    return TMSpec.build(2, "A.init0", halt, m.table)


def decode_machine_output(mr: MachineRun, init_anchor: int = 0, trimmed: bool = True) -> list[Configuration]:
    """Rows ``E_0..E_n`` recovered from the two tapes of a halted ECA-machine run."""
    if mr.spec.tapes != 2:
        raise MalformedTape("expected a 2-tape run")
    a = decode_payloads(mr.contents(0))
    b = decode_payloads(mr.contents(1))
    if len(a) % 2 or len(b) % 2:
        raise MalformedTape("payloads must come in (counter, row) pairs")
    rows_a, rows_b = a[1::2], b[1::2]
    rows = []
    for i in range(len(rows_a) + len(rows_b)):
        src = rows_a if i % 2 == 0 else rows_b
        bits = src[i // 2]
        rows.append(Configuration.from_bits(bits, init_anchor - i))
    return rows


def build_rule158_direct_machine() -> TMSpec:
    """2-tape machine writing ``01 <E_n doubled> 01`` for rule 158 without any intermediate row.

    Input is ``encode_input(n, "1")`` on tape 0. The binary counter is
    decremented in place (amortised O(1) per decrement) and each successful
    decrement appends two cells of the closed-form pattern to tape 1, so the
    run takes O(n + log n) steps.
    """
    t = {}
    halt = "halt"

    def add(state, r0, r1, new, w0=None, w1=None, m0="S", m1="S"):
        t[(state, (r0, r1))] = (new, (r0 if w0 is None else w0, r1 if w1 is None else w1), (m0, m1))

    # leading separator on tape 1 while skipping the one on tape 0
    add("start", "0", _B, "start1", w1="0", m0="R", m1="R")
    add("start1", "1", _B, "scan", w1="1", m0="R", m1="R")
    # pairwise scan to the separator after the counter
    add("scan", "1", _B, "scan.1", m0="R")
    add("scan", "0", _B, "scan.0", m0="R")
    add("scan.1", "1", _B, "scan", m0="R")
    add("scan.0", "0", _B, "scan", m0="R")
    add("scan.0", "1", _B, "back", m0="L")
    add("back", "0", _B, "parity", m0="L")
    # head on the right cell of the least significant pair
    for bit in "01":
        add("parity", bit, _B, f"emit0.{bit}")
    # first cell of E_n is 1
    for par in "01":
        add(f"emit0.{par}", "0", _B, f"emit0b.{par}", w1="1", m1="R")
        add(f"emit0.{par}", "1", _B, f"emit0b.{par}", w1="1", m1="R")
        for bit in "01":
            add(f"emit0b.{par}", bit, _B, f"dec.{par}.1.1", w1="1", m1="R")

    def cell(par, k, first):
        if par == "0":
            return "1110"[k % 4]
        if first:
            return "1"
        return "0011"[(k - 3) % 4]

    # k = index mod 4 of the next cell to emit; first marks cells 1 and 2 of an odd row
    for par in "01":
        for k in range(4):
            for first in (0, 1):
                tag = f"{par}.{k}.{first}"
                # borrow from the least significant pair
                add(f"dec.{tag}", "0", _B, f"decl0.{tag}", w0="1", m0="L")
                add(f"dec.{tag}", "1", _B, f"decl1.{tag}", w0="0", m0="L")
                add(f"decl0.{tag}", "0", _B, f"dec.{tag}", w0="1", m0="L")
                add(f"decl1.{tag}", "1", _B, f"ok.{tag}", w0="0", m0="R")
                # separator reached while borrowing: all n decrements done
                add(f"decl1.{tag}", "0", _B, f"fin.{tag}", m0="R")
                # emit two cells (four symbols), tape 0 idle on the resolved pair
                a = cell(par, k, first)
                b = cell(par, k + 1, first)
                nk = (k + 2) % 4
                nxt = f"{par}.{nk}.0"
                add(f"ok.{tag}", "0", _B, f"ok1.{tag}", w1=a, m1="R")
                add(f"ok1.{tag}", "0", _B, f"ok2.{tag}", w1=a, m1="R")
                add(f"ok2.{tag}", "0", _B, f"ok3.{tag}", w1=b, m1="R")
                add(f"ok3.{tag}", "0", _B, f"ret.{nxt}", w1=b, m1="R")
                add(f"fin.{tag}", "0", _B, f"fin1", w0="1")
        for k in range(4):
            tag = f"{par}.{k}.0"
            add(f"ret.{tag}", "0", _B, f"ret1.{tag}", m0="R")
            add(f"ret1.{tag}", "1", _B, f"ret1.{tag}", m0="R")
            add(f"ret1.{tag}", "0", _B, f"dec.{tag}", m0="L")
    add("fin1", "1", _B, "fin2", w1="0", m1="R")
    add("fin2", "1", _B, halt, w1="1", m1="R")
    return TMSpec.build(2, "start", halt, t)
