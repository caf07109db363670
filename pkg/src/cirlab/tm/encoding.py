"""Doubled-symbol tape strings.

Every payload bit is written twice, so the pair ``01`` can only occur as a
separator when read at an even offset::

    01 <row 0 doubled> 01 <row 1 doubled> 01 ... 01
"""

from __future__ import annotations

from typing import Iterable, Sequence

from ..eca import Configuration
from ..errors import MalformedTape

__all__ = [
    "SEP",
    "double",
    "encode_rows",
    "encode_evolution",
    "decode_tape",
    "decode_payloads",
    "encode_input",
    "decode_input",
    "row_needle",
]

SEP = "01"


def _bits(row) -> str:
    if isinstance(row, Configuration):
        return row.bits
    if isinstance(row, str):
        bits = row
    else:
        bits = "".join(str(int(b)) for b in row)
    if set(bits) - {"0", "1"}:
        raise ValueError(f"not a bit row: {row!r}")
    return bits


def double(bits: str) -> str:
    return "".join(ch + ch for ch in bits)


def encode_rows(payloads: Iterable[str]) -> str:
    out = [SEP]
    for bits in payloads:
        if not bits:
            raise ValueError("empty payloads are not encodable")
        out.append(double(bits))
        out.append(SEP)
    return "".join(out)


def encode_evolution(rows: Sequence) -> str:
    """Encode rows (``Configuration``, bit strings or bit lists) left to right.

    A ``Configuration`` contributes its trimmed cells; pass explicit bit lists
    to encode untrimmed windows.
    """
    if not rows:
        raise ValueError("need at least one row")
    return encode_rows(_bits(r) for r in rows)


def decode_payloads(tape: str) -> list[str]:
    """Split a tape string into its (undoubled) payloads."""
    if not tape.startswith(SEP):
        raise MalformedTape("tape must start with the 01 separator")
    payloads = []
    cur = []
    i = 2
    n = len(tape)
    while i < n:
        pair = tape[i:i + 2]
        if len(pair) < 2:
            raise MalformedTape("odd-length tape (truncated pair)")
        if pair == SEP:
            if not cur:
                raise MalformedTape(f"empty payload at offset {i}")
            payloads.append("".join(cur))
            cur = []
        elif pair in ("00", "11"):
            cur.append(pair[0])
        else:
            raise MalformedTape(f"bad pair {pair!r} at offset {i}")
        i += 2
    if cur:
        raise MalformedTape("missing trailing separator")
    if not payloads:
        raise MalformedTape("no payloads")
    return payloads


def decode_tape(tape: str, anchors: Sequence[int] | None = None) -> list[Configuration]:
    """Inverse of :func:`encode_evolution`; rows are placed at ``anchors`` (default 0)."""
    payloads = decode_payloads(tape)
    if anchors is None:
        anchors = [0] * len(payloads)
    return [Configuration.from_bits(p, a) for p, a in zip(payloads, anchors)]


def encode_input(n: int, init) -> str:
    """``01`` + doubled binary ``n`` (most significant bit first) + ``01`` + doubled ``init`` + ``01``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return encode_rows([format(n, "b"), _bits(init)])


def decode_input(tape: str) -> tuple[int, str]:
    payloads = decode_payloads(tape)
    if len(payloads) != 2:
        raise MalformedTape(f"input tape needs exactly 2 payloads, found {len(payloads)}")
    return int(payloads[0], 2), payloads[1]


def row_needle(bits: str) -> str:
    """The separator-delimited encoding of one row, used for substring search."""
    return SEP + double(bits) + SEP
