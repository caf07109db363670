"""Compression-based upper-bound surrogates for K(s) and logical depth.

Nothing here computes Kolmogorov complexity or logical depth; both are
uncomputable. ``k_estimate`` is the size of one particular self-delimiting
encoding (an upper bound up to the decoder's constant) and ``depth_proxy`` is
the deterministic work spent decoding it.

Code layout of the default LZ77 compressor::

    delta(len(s) + 1)  mode-bit  body

``mode = 0`` stores ``s`` verbatim; ``mode = 1`` is a token stream where
``0 b`` is a literal bit and ``1 gamma(offset) gamma(length - MIN_MATCH + 1)``
copies (possibly overlapping) from ``offset`` bits back. The cheaper of the
two modes is kept, so ``k(s) <= len(s) + header``.
"""

from __future__ import annotations

import csv
import io
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .eca import Configuration, EvolutionTrace

__all__ = [
    "Compressor",
    "LZ77Compressor",
    "LZ78Compressor",
    "KEstimate",
    "DepthProxy",
    "Def1Report",
    "Def23Report",
    "k_estimate",
    "depth_proxy",
    "k_of_int",
    "def1_indicator",
    "def2_def3_profile",
    "header_bits",
    "elias_gamma",
    "elias_delta",
    "DEFAULT_COMPRESSOR",
]


# -- self-delimiting integer codes -------------------------------------------

def elias_gamma(x: int) -> str:
    if x < 1:
        raise ValueError("gamma code needs x >= 1")
    b = format(x, "b")
    return "0" * (len(b) - 1) + b


def elias_delta(x: int) -> str:
    if x < 1:
        raise ValueError("delta code needs x >= 1")
    b = format(x, "b")
    return elias_gamma(len(b)) + b[1:]


class _Reader:
    __slots__ = ("bits", "pos")

    def __init__(self, bits: str):
        self.bits = bits
        self.pos = 0

    def bit(self) -> str:
        if self.pos >= len(self.bits):
            raise ValueError("truncated code")
        b = self.bits[self.pos]
        self.pos += 1
        return b

    def take(self, k: int) -> str:
        if self.pos + k > len(self.bits):
            raise ValueError("truncated code")
        out = self.bits[self.pos:self.pos + k]
        self.pos += k
        return out

    def gamma(self) -> int:
        zeros = 0
        while self.bit() == "0":
            zeros += 1
        return int("1" + self.take(zeros), 2)

    def delta(self) -> int:
        k = self.gamma()
        return int("1" + self.take(k - 1), 2)


def header_bits(length: int) -> int:
    """Bits spent on the length header and mode flag for a subject of ``length`` bits."""
    return len(elias_delta(length + 1)) + 1


def _check_bits(s: str) -> str:
    if set(s) - {"0", "1"}:
        raise ValueError("subject must be a 0/1 string")
    return s


# -- compressors ---------------------------------------------------------------

class Compressor:
    """Lossless bit-string codec with a deterministic decode work count."""

    id = "abstract"

    def compress(self, s: str) -> str:
        raise NotImplementedError

    def decompress(self, code: str) -> tuple[str, int]:
        """``(subject, work)``; work counts token reconstructions plus symbols written."""
        raise NotImplementedError


class LZ77Compressor(Compressor):
    """Greedy sliding-match coder with a stored-mode fallback.

    Match candidates come from a table of recent positions per ``MIN_MATCH``-gram
    (at most ``candidates`` per gram), so compression is roughly linear.
    """

    id = "lz77-elias"
    MIN_MATCH = 12

    def __init__(self, candidates: int = 8):
        self.candidates = candidates

    def _tokens(self, s: str) -> list:
        m = self.MIN_MATCH
        n = len(s)
        table: dict[str, deque] = {}
        tokens = []
        inserted = 0

        def insert_upto(i):
            nonlocal inserted
            while inserted < i and inserted + m <= n:
                key = s[inserted:inserted + m]
                q = table.get(key)
                if q is None:
                    q = table[key] = deque(maxlen=self.candidates)
                q.append(inserted)
                inserted += 1
            inserted = max(inserted, i)

        i = 0
        while i < n:
            insert_upto(i)
            best_len, best_off = 0, 0
            if i + m <= n:
                for j in reversed(table.get(s[i:i + m], ())):
                    length = _common_prefix(s, j, i)
                    if length > best_len:
                        best_len, best_off = length, i - j
            if best_len >= m:
                cost = 1 + len(elias_gamma(best_off)) + len(elias_gamma(best_len - m + 1))
                if cost < 2 * best_len:
                    tokens.append((best_off, best_len))
                    i += best_len
                    continue
            tokens.append(s[i])
            i += 1
        return tokens

    def compress(self, s: str) -> str:
        s = _check_bits(s)
        head = elias_delta(len(s) + 1)
        parts = []
        for t in self._tokens(s):
            if isinstance(t, str):
                parts.append("0" + t)
            else:
                off, length = t
                parts.append("1" + elias_gamma(off) + elias_gamma(length - self.MIN_MATCH + 1))
        body = "".join(parts)
        if len(body) < len(s):
            return head + "1" + body
        return head + "0" + s

    def decompress(self, code: str) -> tuple[str, int]:
        r = _Reader(code)
        n = r.delta() - 1
        if r.bit() == "0":
            return r.take(n), n
        out: list[str] = []
        work = 0
        while len(out) < n:
            if r.bit() == "0":
                out.append(r.bit())
                work += 1
            else:
                off = r.gamma()
                length = r.gamma() + self.MIN_MATCH - 1
                if off > len(out):
                    raise ValueError("copy reaches before the start")
                start = len(out) - off
                for t in range(length):
                    out.append(out[start + t])
                work += 1 + length
        if len(out) != n:
            raise ValueError("decoded length mismatch")
        return "".join(out), work


def _common_prefix(s: str, j: int, i: int) -> int:
    """Length of the common prefix of ``s[j:]`` and ``s[i:]`` (``j < i``)."""
    n = len(s)
    length = 0
    step = 64
    while i + length < n:
        k = min(step, n - i - length)
        if s[j + length:j + length + k] == s[i + length:i + length + k]:
            length += k
            step *= 2
        elif k == 1:
            break
        else:
            step = max(1, k // 2)
    return length


class LZ78Compressor(Compressor):
    """Textbook LZ78 phrase coder; each token is (prefix index, next bit)."""

    id = "lz78"

    def compress(self, s: str) -> str:
        s = _check_bits(s)
        parts = [elias_delta(len(s) + 1)]
        phrases = {"": 0}
        cur = ""
        for ch in s:
            if cur + ch in phrases:
                cur += ch
                continue
            parts.append(_fixed(phrases[cur], len(phrases)) + ch)
            phrases[cur + ch] = len(phrases)
            cur = ""
        if cur:
            # dangling phrase already in the dictionary: emit its index alone
            parts.append(_fixed(phrases[cur], len(phrases)))
        return "".join(parts)

    def decompress(self, code: str) -> tuple[str, int]:
        r = _Reader(code)
        n = r.delta() - 1
        phrases = [""]
        out: list[str] = []
        size = 0
        work = 0
        while size < n:
            width = max(1, (len(phrases) - 1).bit_length())
            idx = int(r.take(width), 2)
            if idx >= len(phrases):
                raise ValueError("phrase index out of range")
            phrase = phrases[idx]
            if size + len(phrase) >= n:
                out.append(phrase)
                size += len(phrase)
                work += 1 + len(phrase)
                break
            phrase = phrase + r.bit()
            phrases.append(phrase)
            out.append(phrase)
            size += len(phrase)
            work += 1 + len(phrase)
        text = "".join(out)
        if len(text) != n:
            raise ValueError("decoded length mismatch")
        return text, work


def _fixed(value: int, count: int) -> str:
    width = max(1, (count - 1).bit_length())
    return format(value, f"0{width}b")


DEFAULT_COMPRESSOR: Compressor = LZ77Compressor()


# -- estimates -----------------------------------------------------------------

@dataclass(frozen=True)
class KEstimate:
    """Upper-bound surrogate for K(subject): bits of one self-delimiting encoding."""

    subject: str
    compressed_bits: int
    compressor_id: str


@dataclass(frozen=True)
class DepthProxy:
    """Decode work for the encoding behind :class:`KEstimate`; a depth surrogate, not depth."""

    subject: str
    regen_work: int


def _as_bits(s) -> str:
    if isinstance(s, Configuration):
        return s.bits
    return _check_bits(str(s))


def k_estimate(s, compressor: Compressor | None = None) -> KEstimate:
    comp = compressor or DEFAULT_COMPRESSOR
    s = _as_bits(s)
    return KEstimate(s, len(comp.compress(s)), comp.id)


def depth_proxy(s, compressor: Compressor | None = None) -> DepthProxy:
    comp = compressor or DEFAULT_COMPRESSOR
    s = _as_bits(s)
    out, work = comp.decompress(comp.compress(s))
    if out != s:
        raise AssertionError(f"{comp.id} is not lossless on this input")
    return DepthProxy(s, work)


def k_of_int(n: int, compressor: Compressor | None = None) -> KEstimate:
    """Surrogate for K(n): the estimate of the binary numeral of ``n``."""
    return k_estimate(format(n, "b"), compressor)


# -- indicator reports ---------------------------------------------------------

def _rows_of(subject) -> list[str]:
    rows = subject.rows if isinstance(subject, EvolutionTrace) else subject
    return [_as_bits(r) for r in rows]


def _loglog_exponent(xs, ys) -> float:
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    keep = (xs > 0) & (ys > 0)
    if keep.sum() < 2:
        return 0.0
    return float(np.polyfit(np.log(xs[keep]), np.log(ys[keep]), 1)[0])


@dataclass
class Def1Report:
    """Margins ``k(E_n) - k(n)`` per row; every value is an upper-bound surrogate."""

    compressor_id: str
    rows: list = field(default_factory=list)  # (n, k_row, k_n, margin, depth_proxy)

    @property
    def margins(self) -> list[int]:
        return [r[3] for r in self.rows]

    @property
    def min_margin(self) -> int:
        return min(self.margins)

    @property
    def max_margin(self) -> int:
        return max(self.margins)

    @property
    def margin_slope(self) -> float:
        """Least-squares slope of margin against n over the second half of the horizon."""
        tail = self.rows[len(self.rows) // 2:]
        if len(tail) < 2:
            return 0.0
        ns = [r[0] for r in tail]
        return float(np.polyfit(ns, [r[3] for r in tail], 1)[0])

    @property
    def positive_on_horizon(self) -> bool:
        """Margins stay above zero for every checked n (finite-horizon reading only)."""
        return self.min_margin > 0

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "k_row", "k_n", "margin", "depth_proxy"])
        w.writerows(self.rows)
        return buf.getvalue()


def def1_indicator(trace, compressor: Compressor | None = None) -> Def1Report:
    """Margins for rows ``n >= 1`` of ``trace`` (an :class:`EvolutionTrace` or list of rows)."""
    comp = compressor or DEFAULT_COMPRESSOR
    rows = _rows_of(trace)
    if len(rows) < 16:
        raise ValueError("need at least 16 rows")
    rep = Def1Report(comp.id)
    for n, bits in enumerate(rows):
        if n == 0:
            continue
        code = comp.compress(bits)
        _, work = comp.decompress(code)
        k_row = len(code)
        k_n = len(comp.compress(format(n, "b")))
        rep.rows.append((n, k_row, k_n, k_row - k_n, work))
    return rep


@dataclass
class Def23Report:
    """Depth-proxy profile of a row sequence."""

    compressor_id: str
    depths: list
    violations: int  # n with depth(E_{n+1}) <= depth(E_n)
    exponent: float  # log-log slope of depth against n
    excess_exponent: float  # same for depth minus row length (work beyond write-out)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "depth_proxy"])
        w.writerows(enumerate(self.depths))
        return buf.getvalue()


def def2_def3_profile(trace, compressor: Compressor | None = None) -> Def23Report:
    comp = compressor or DEFAULT_COMPRESSOR
    rows = _rows_of(trace)
    if len(rows) < 2:
        raise ValueError("need at least two rows")
    depths = [depth_proxy(r, comp).regen_work for r in rows]
    violations = sum(1 for a, b in zip(depths, depths[1:]) if b <= a)
    ns = list(range(1, len(rows)))
    exponent = _loglog_exponent(ns, depths[1:])
    excess = [d - len(r) for d, r in zip(depths[1:], rows[1:])]
    return Def23Report(comp.id, depths, violations, exponent, _loglog_exponent(ns, excess))
