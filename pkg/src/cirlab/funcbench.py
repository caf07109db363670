"""Enumerate-then-read versus direct computation for candidate functions.

Work units are deterministic counts, never wall time:

* big integers: limb operations under schoolbook arithmetic, limbs in base 10**9
  (adding or scaling an m-limb number by a small factor costs m, multiplying
  an a-limb by a b-limb number costs a*b);
* primes: trial divisions (enumeration) or sieve marks (direct);
* cellular automata: rule applications;
* the logistic map: digit-limb operations of the exact fixed-point product.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import Callable, Iterator

from .eca import evolve
from .errors import OverflowPolicyError, Unsupported

__all__ = [
    "CandidateFunction",
    "WorkReport",
    "Limbs",
    "enumerate_f",
    "iter_values",
    "direct",
    "logistic_step",
    "speedup_report",
    "report_csv",
    "POW2",
    "FACTORIAL",
    "NTH_PRIME",
    "RULE30",
    "RULE110",
    "logistic",
    "by_name",
    "has_direct",
]

BASE = 10**9
BASE_DIGITS = 9


# -- schoolbook limb arithmetic -------------------------------------------------

class Limbs:
    """Little-endian base-10**9 limbs with a shared work counter."""

    def __init__(self):
        self.work = 0

    @staticmethod
    def from_int(x: int) -> list[int]:
        if x == 0:
            return [0]
        out = []
        while x:
            x, r = divmod(x, BASE)
            out.append(r)
        return out

    @staticmethod
    def to_decimal(a: list[int]) -> str:
        head = str(a[-1])
        return head + "".join(f"{d:09d}" for d in reversed(a[:-1]))

    def mul_small(self, a: list[int], k: int) -> list[int]:
        self.work += len(a)
        out = []
        carry = 0
        for d in a:
            carry, r = divmod(d * k + carry, BASE)
            out.append(r)
        while carry:
            carry, r = divmod(carry, BASE)
            out.append(r)
        return out

    def mul(self, a: list[int], b: list[int]) -> list[int]:
        self.work += len(a) * len(b)
        acc = [0] * (len(a) + len(b))
        for i, x in enumerate(a):
            if x == 0:
                continue
            carry = 0
            for j, y in enumerate(b):
                carry, acc[i + j] = divmod(acc[i + j] + x * y + carry, BASE)
            k = i + len(b)
            while carry:
                carry, acc[k] = divmod(acc[k] + carry, BASE)
                k += 1
        while len(acc) > 1 and acc[-1] == 0:
            acc.pop()
        return acc


# -- candidate functions ---------------------------------------------------------

@dataclass(frozen=True)
class CandidateFunction:
    id: str
    digits: int = 0  # LogisticFixedPoint precision
    x0: str = ""  # LogisticFixedPoint start value, decimal text

    @property
    def label(self) -> str:
        if self.id == "LogisticFixedPoint":
            return f"LogisticFixedPoint(d={self.digits},x0={self.x0})"
        return self.id


POW2 = CandidateFunction("Pow2Decimal")
FACTORIAL = CandidateFunction("Factorial")
NTH_PRIME = CandidateFunction("NthPrime")
RULE30 = CandidateFunction("Rule30Row")
RULE110 = CandidateFunction("Rule110Row")


def logistic(digits: int, x0: str = "0.3") -> CandidateFunction:
    _parse_fixed(x0, digits)
    return CandidateFunction("LogisticFixedPoint", digits, x0)


def by_name(name: str, digits: int = 16, x0: str = "0.3") -> CandidateFunction:
    table = {f.id: f for f in (POW2, FACTORIAL, NTH_PRIME, RULE30, RULE110)}
    if name == "LogisticFixedPoint":
        return logistic(digits, x0)
    try:
        return table[name]
    except KeyError:
        raise ValueError(f"unknown function {name!r}") from None


@dataclass(frozen=True)
class WorkReport:
    f: str
    n: int
    enum_work: int | None = None
    direct_work: int | None = None

    @property
    def speedup(self) -> float | None:
        if self.enum_work is None or self.direct_work is None or self.direct_work == 0:
            return None
        return self.enum_work / self.direct_work


# -- logistic map in fixed point -------------------------------------------------

def _parse_fixed(x, d: int) -> int:
    """Integer numerator of ``x`` over ``10**d``; ``x`` is decimal text or such an integer."""
    if not 1 <= d <= 64:
        raise ValueError("d must be in 1..64")
    if isinstance(x, int):
        num = x
    else:
        text = str(x).strip()
        whole, _, frac = text.partition(".")
        if (whole and not whole.isdigit()) or (frac and not frac.isdigit()) or not (whole or frac):
            raise ValueError(f"not a decimal in [0, 1]: {x!r}")
        if len(frac.rstrip("0")) > d:
            raise ValueError(f"{x!r} has more than {d} fractional digits")
        num = int(whole or "0") * 10**d + int((frac + "0" * d)[:d] or "0")
    if not 0 <= num <= 10**d:
        raise ValueError(f"{x!r} is outside [0, 1]")
    return num


def _format_fixed(num: int, d: int) -> str:
    whole, frac = divmod(num, 10**d)
    return f"{whole}.{frac:0{d}d}"


def logistic_step(x, d: int) -> str:
    """``4 x (1 - x)`` computed exactly, then truncated toward zero to ``d`` digits."""
    num = _parse_fixed(x, d)
    scale = 10**d
    return _format_fixed((4 * num * (scale - num)) // scale, d)


def _logistic_num(num: int, d: int) -> int:
    scale = 10**d
    return (4 * num * (scale - num)) // scale


# -- enumeration -----------------------------------------------------------------

def iter_values(f: CandidateFunction, n: int, max_digits: int | None = None) -> Iterator[tuple[int, object, int]]:
    """Yield ``(i, f(i), cumulative work)`` for ``i = 1..n`` in order."""
    if n < 1:
        raise ValueError("n must be >= 1")

    def guard(text):
        if max_digits is not None and len(text) > max_digits:
            raise OverflowPolicyError(f"{f.label} value exceeds {max_digits} digits")
        return text

    if f.id == "Pow2Decimal":
        ops = Limbs()
        a = [1]
        for i in range(1, n + 1):
            a = ops.mul_small(a, 2)
            yield i, guard(Limbs.to_decimal(a)), ops.work
    elif f.id == "Factorial":
        ops = Limbs()
        a = [1]
        for i in range(1, n + 1):
            a = ops.mul_small(a, i)
            yield i, int(guard(Limbs.to_decimal(a))), ops.work
    elif f.id == "NthPrime":
        primes: list[int] = []
        work = 0
        cand = 1
        for i in range(1, n + 1):
            while True:
                cand += 1
                ok = True
                for p in primes:
                    if p * p > cand:
                        break
                    work += 1
                    if cand % p == 0:
                        ok = False
                        break
                if ok:
                    primes.append(cand)
                    break
            yield i, cand, work
    elif f.id == "LogisticFixedPoint":
        d = f.digits
        num = _parse_fixed(f.x0, d)
        limbs = math.ceil(d / BASE_DIGITS)
        work = 0
        for i in range(1, n + 1):
            num = _logistic_num(num, d)
            work += limbs * limbs + 2 * limbs  # one product, one subtraction, one scaling
            yield i, _format_fixed(num, d), work
    elif f.id in ("Rule30Row", "Rule110Row"):
        rule = 30 if f.id == "Rule30Row" else 110
        trace = evolve(rule, None, n)
        work = trace.cumulative_work()
        for i in range(1, n + 1):
            yield i, trace.rows[i].to_text(), int(work[i])
    else:
        raise ValueError(f"unknown function {f.id!r}")


def enumerate_f(f: CandidateFunction, n: int, max_digits: int | None = None,
                hook: Callable[[int, object], None] | None = None) -> tuple[object, WorkReport]:
    """``f(n)`` by producing ``f(1), ..., f(n)`` in order; ``hook(i, value)`` sees each one."""
    value, work = None, 0
    for i, value, work in iter_values(f, n, max_digits):
        if hook is not None:
            hook(i, value)
    return value, WorkReport(f.label, n, enum_work=work)


# -- direct modes ----------------------------------------------------------------

def _pow2_direct(n: int) -> tuple[str, int]:
    ops = Limbs()
    result = [1]
    base = [2]
    k = n
    while True:
        if k & 1:
            result = ops.mul(result, base) if result != [1] else base
        k >>= 1
        if not k:
            break
        base = ops.mul(base, base)
    return Limbs.to_decimal(result), ops.work


def _sieve_bound(n: int) -> int:
    if n < 6:
        return 13
    return int(n * (math.log(n) + math.log(math.log(n)))) + 1


def _nth_prime_direct(n: int) -> tuple[int, int]:
    bound = _sieve_bound(n)
    work = 0
    while True:
        sieve = bytearray([1]) * (bound + 1)
        sieve[0:2] = b"\x00\x00"
        for p in range(2, math.isqrt(bound) + 1):
            if sieve[p]:
                marks = len(range(p * p, bound + 1, p))
                sieve[p * p::p] = bytes(marks)
                work += marks
        count = 0
        for x in range(bound + 1):
            if sieve[x]:
                count += 1
                if count == n:
                    return x, work + bound + 1
        work += bound + 1
        bound *= 2


def direct(f: CandidateFunction, n: int, max_digits: int | None = None) -> tuple[object, WorkReport]:
    """``f(n)`` through a registered shortcut; raises :class:`Unsupported` if none exists."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if f.id == "Pow2Decimal":
        value, work = _pow2_direct(n)
        if max_digits is not None and len(value) > max_digits:
            raise OverflowPolicyError(f"{f.label} value exceeds {max_digits} digits")
    elif f.id == "NthPrime":
        value, work = _nth_prime_direct(n)
    else:
        raise Unsupported(f"no direct mode registered for {f.label}")
    return value, WorkReport(f.label, n, direct_work=work)


def has_direct(f: CandidateFunction) -> bool:
    return f.id in ("Pow2Decimal", "NthPrime")


# -- reports ---------------------------------------------------------------------

def speedup_report(f: CandidateFunction, ns) -> dict:
    """Per-n work rows and, when a direct mode exists, the fitted growth gap.

    ``gap_exponent`` is the log-log slope of ``enum_work / direct_work``.
    """
    ns = [int(n) for n in ns]
    if ns != sorted(ns) or not ns:
        raise ValueError("ns must be a non-empty ascending list")
    rows = []
    for n in ns:
        value, rep = enumerate_f(f, n)
        dwork = None
        if has_direct(f):
            dvalue, drep = direct(f, n)
            if dvalue != value:
                raise AssertionError(f"{f.label}: direct and enumerated values differ at n={n}")
            dwork = drep.direct_work
        rows.append(WorkReport(f.label, n, rep.enum_work, dwork))
    gap = None
    if has_direct(f) and len(rows) >= 2:
        import numpy as np

        ratio = [r.enum_work / r.direct_work for r in rows]
        gap = float(np.polyfit(np.log(ns), np.log(ratio), 1)[0])
    return {"f": f.label, "rows": rows, "gap_exponent": gap}


REPORT_COLUMNS = ["f", "n", "enum_work", "direct_work", "speedup"]


def report_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(REPORT_COLUMNS)
    for r in rows:
        sp = r.speedup
        w.writerow([r.f, r.n, "" if r.enum_work is None else r.enum_work,
                    "" if r.direct_work is None else r.direct_work, "" if sp is None else f"{sp:.6f}"])
    return buf.getvalue()
