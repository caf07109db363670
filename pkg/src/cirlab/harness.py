"""Empirical reducibility classes and finite-horizon approximation checks.

Everything here is a measurement at a stated horizon. A label or verdict says
what was observed up to ``n``; it never decides irreducibility.
"""

from __future__ import annotations

import csv
import io
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from . import predictors
from .eca import Configuration, _as_rule, diff_count, evolve
from .errors import SnapshotsMissing, UnsupportedRule
from .tm.encoding import decode_payloads, encode_input, row_needle
from .tm.machine import TMSpec, run

__all__ = [
    "CLASS1",
    "CLASS2",
    "CLASS3",
    "CLASS4",
    "UNSUPPORTED",
    "Evidence",
    "classify",
    "sweep",
    "sweep_csv",
    "ApproximationWitness",
    "Verdict",
    "verify_witness",
    "identity_extractor",
    "daughter_cost",
    "efficiency_compare",
    "growth_exponent",
]

CLASS1 = "Class1"
CLASS2 = "Class2"
CLASS3 = "Class3"
CLASS4 = "Class4Candidate"
UNSUPPORTED = "Unsupported"

# log-log exponent bands for cumulative simulation work
LINEAR_BELOW = 1.3
QUADRATIC_ABOVE = 1.7


def growth_exponent(ns, values) -> float:
    """Least-squares slope of ``log(values)`` against ``log(ns)``."""
    ns = np.asarray(ns, dtype=float)
    values = np.asarray(values, dtype=float)
    if np.any(values <= 0):
        return 0.0
    return float(np.polyfit(np.log(ns), np.log(values), 1)[0])


@dataclass(frozen=True)
class Evidence:
    horizon: int
    sim_work_fit: float | None = None
    diff_bound: float | None = None  # math.inf when consecutive diffs keep growing
    predictor_found: str | None = None
    collapse_step: int | None = None
    note: str = ""


def classify(rule, horizon: int = 512, linear_below: float = LINEAR_BELOW,
             quadratic_above: float = QUADRATIC_ABOVE) -> tuple[str, Evidence]:
    """Label the single-cell evolution of ``rule`` up to ``horizon`` steps.

    Class1: rows stop changing. Class2: consecutive rows differ in a bounded
    number of cells. Otherwise cumulative simulation work is fitted against
    n; quadratic growth gives Class3 when a registered predictor matches the
    whole trace and Class4Candidate when none is registered.
    """
    rule = _as_rule(rule)
    if horizon < 64:
        raise ValueError("horizon must be >= 64")
    if not rule.stable_background:
        return UNSUPPORTED, Evidence(horizon, note="background unstable")
    trace = evolve(rule, None, horizon)
    rows = trace.rows
    diffs = [diff_count(a, b) for a, b in zip(rows, rows[1:])]
    work = trace.cumulative_work()
    probes = [horizon // 8, horizon // 4, horizon // 2, horizon]
    fit = growth_exponent(probes, [work[p] for p in probes])

    # Class1: a row that repeats exactly and is never left again
    last_change = max((t for t, d in enumerate(diffs) if d), default=-1)
    if last_change < horizon // 2:
        return CLASS1, Evidence(horizon, fit, 0, collapse_step=last_change + 1)

    early = diffs[: horizon // 4]
    late = diffs[horizon // 4:]
    if max(late) <= max(early):
        return CLASS2, Evidence(horizon, fit, max(diffs))

    if fit > quadratic_above:
        try:
            pred = predictors.validate(rule, horizon, rows=rows)
        except UnsupportedRule:
            return CLASS4, Evidence(horizon, fit, math.inf)
        except AssertionError as exc:
            return CLASS4, Evidence(horizon, fit, math.inf, note=f"registered predictor rejected: {exc}")
        return CLASS3, Evidence(horizon, fit, math.inf, predictor_found=pred.kind)
    band = "linear" if fit < linear_below else "intermediate"
    return UNSUPPORTED, Evidence(horizon, fit, math.inf, note=f"unbounded diffs with {band} work growth")


def _classify_pair(args):
    index, horizon, check = args
    label, ev = classify(index, horizon)
    if check:
        half, _ = classify(index, horizon // 2)
        if half != label:
            return index, UNSUPPORTED, Evidence(ev.horizon, ev.sim_work_fit, ev.diff_bound, ev.predictor_found,
                                                ev.collapse_step, note=f"label flips: {half} at {horizon // 2}, {label} at {horizon}")
    return index, label, ev


def _workers() -> int:
    try:
        return max(1, int(os.environ.get("CIRLAB_THREADS", "1")))
    except ValueError:
        return 1


def sweep(rules: Sequence[int] = range(256), horizon: int = 512, check_stability: bool = True,
          workers: int | None = None) -> list[tuple[int, str, Evidence]]:
    """Classify ``rules``; results come back ordered by rule index whatever the worker count.

    With ``check_stability`` every rule is also classified at ``horizon // 2``
    and disagreeing labels are reported as Unsupported with a note.
    """
    jobs = [(int(r), horizon, check_stability and horizon // 2 >= 64) for r in sorted(set(rules))]
    workers = _workers() if workers is None else workers
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            out = list(pool.map(_classify_pair, jobs))
    else:
        out = [_classify_pair(j) for j in jobs]
    return sorted(out, key=lambda t: t[0])


SWEEP_COLUMNS = ["rule", "class", "horizon", "work_exponent", "diff_bound", "predictor", "collapse_step"]


def sweep_csv(results) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(SWEEP_COLUMNS)
    for index, label, ev in results:
        w.writerow([
            index,
            label,
            ev.horizon,
            "" if ev.sim_work_fit is None else f"{ev.sim_work_fit:.4f}",
            "" if ev.diff_bound is None else ("inf" if ev.diff_bound == math.inf else int(ev.diff_bound)),
            ev.predictor_found or "",
            "" if ev.collapse_step is None else ev.collapse_step,
        ])
    return buf.getvalue()


# -- approximation witnesses ---------------------------------------------------

def identity_extractor() -> TMSpec:
    """Extractor that leaves its input in place and halts at once (zero steps)."""
    return TMSpec.build(1, "halt", "halt", {}, fill=False)


@dataclass
class ApproximationWitness:
    """Candidate machine ``machine``, extractor ``extractor`` and step bound ``bound(i)``.

    ``checkpoints`` is filled by :func:`verify_witness` with ``(i, r_i, step)``.
    """

    machine: TMSpec
    extractor: TMSpec
    bound: Callable[[int], int]
    snapshot_every: int | None = 1
    checkpoints: list = field(default_factory=list)


@dataclass
class Verdict:
    """Outcome at horizon ``n``; ``failed_condition`` is ``"i"``, ``"ii"`` or ``"extract"``."""

    n: int
    holds: bool
    failed_condition: str | None = None
    failed_index: int | None = None
    reason: str = ""
    checkpoints: list = field(default_factory=list)
    machine_steps: int = 0

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "holds": self.holds,
            "failed_condition": self.failed_condition,
            "failed_index": self.failed_index,
            "reason": self.reason,
            "checkpoints": [[i, step] for i, _, step in self.checkpoints],
            "machine_steps": self.machine_steps,
        }


def _window(row: Configuration, lo: int, width: int) -> str:
    return "".join(map(str, row.window(lo, lo + width)))


def verify_witness(w: ApproximationWitness, rule, n: int, init="1", init_anchor: int = 0,
                   budget: int | None = 10**8) -> Verdict:
    """Check the approximation conditions for ``w`` at horizon ``n``.

    (i) the machine halts on ``encode_input(n, init)`` with the encoding of
    ``E_n`` on one of its tapes; (ii) for ``i = 1..n-1`` the encoding of
    ``E_i`` shows up in the snapshot stream, each after the previous one; and
    the extractor, run on each such ``r_i`` within ``bound(i)`` steps, outputs
    ``E_i``. Rows are compared as light-cone windows (``l + 2i`` cells starting
    at ``init_anchor - i``).
    """
    if not w.snapshot_every:
        raise SnapshotsMissing("verify_witness needs snapshots; set snapshot_every")
    if n < 1:
        raise ValueError("n must be >= 1")
    rule = _as_rule(rule)
    init_cfg = init if isinstance(init, Configuration) else Configuration.from_bits(init, init_anchor)
    l = len(init) if isinstance(init, str) else init_cfg.width
    trace = evolve(rule, init_cfg, n)
    windows = [_window(trace.rows[i], init_anchor - i, l + 2 * i) for i in range(n + 1)]
    w.checkpoints = []

    mr = run(w.machine, [encode_input(n, init_cfg.bits if not isinstance(init, str) else init)], budget=budget,
             snapshot_every=w.snapshot_every)
    verdict = Verdict(n, False, machine_steps=mr.steps)
    if not mr.halted:
        verdict.failed_condition, verdict.reason = "i", "machine did not halt within budget"
        return verdict
    final = row_needle(windows[n])
    if not any(final in t for t in mr.tape_strings()):
        verdict.failed_condition, verdict.failed_index = "i", n
        verdict.reason = "final tapes do not contain the encoding of E_n"
        return verdict

    snaps = mr.snapshots
    p = 0
    for i in range(1, n):
        needle = row_needle(windows[i])
        while p < len(snaps) and not any(needle in t for t in snaps[p][1]):
            p += 1
        if p == len(snaps):
            verdict.failed_condition, verdict.failed_index = "ii", i
            verdict.reason = f"no snapshot at or after the previous checkpoint contains the encoding of E_{i}"
            verdict.checkpoints = w.checkpoints
            return verdict
        w.checkpoints.append((i, needle, snaps[p][0]))

    for i, r_i, _ in w.checkpoints:
        limit = w.bound(i)
        out = run(w.extractor, [r_i], budget=limit)
        if not out.halted:
            verdict.failed_condition, verdict.failed_index = "extract", i
            verdict.reason = f"extractor exceeded bound {limit} on r_{i}"
            verdict.checkpoints = w.checkpoints
            return verdict
        try:
            payloads = decode_payloads(out.output)
        except Exception as exc:  # malformed extractor output counts as a wrong answer
            payloads = [repr(exc)]
        got = Configuration.from_bits(payloads[0], init_anchor - i) if len(payloads) == 1 and set(payloads[0]) <= {"0", "1"} else None
        if got != trace.rows[i]:
            verdict.failed_condition, verdict.failed_index = "extract", i
            verdict.reason = f"extractor output on r_{i} is not E_{i}"
            verdict.checkpoints = w.checkpoints
            return verdict
    verdict.holds = True
    verdict.checkpoints = w.checkpoints
    return verdict


# -- cost arithmetic -----------------------------------------------------------

def daughter_cost(t_m: Sequence[int], f: Sequence[int]) -> list[int]:
    """``T'(n) = T(n) + sum(F(i) for i < n)`` for 1-indexed sequences ``T(1..N)``, ``F(1..N)``."""
    if len(t_m) != len(f):
        raise ValueError("cost sequences must have the same length")
    out = []
    acc = 0
    for t, fi in zip(t_m, f):
        out.append(int(t) + acc)
        acc += int(fi)
    return out


@dataclass(frozen=True)
class Domination:
    """``a(n) <= c * b(n)`` for every ``n0 <= n <= N`` observed, with the ratio not growing."""

    a: str
    b: str
    holds: bool
    c: int | None
    n0: int | None
    ratio_exponent: float


def efficiency_compare(runs, tol: float = 0.1) -> dict:
    """Pairwise big-O checks over cost sequences indexed ``n = 1..N``.

    ``a = O(b)`` is accepted when the log-log slope of ``a/b`` over the second
    half of the horizon is at most ``tol``; ``c`` is then the ceiling of the
    largest ratio there and ``n0 = N // 2``. Machines dominated by every other
    one are reported as efficient.
    """
    runs = [(str(name), [int(x) for x in seq]) for name, seq in runs]
    if len(runs) < 2:
        raise ValueError("need at least two cost sequences")
    size = len(runs[0][1])
    if any(len(seq) != size for _, seq in runs) or size < 4:
        raise ValueError("cost sequences must share a length >= 4")
    n0 = size // 2
    ns = np.arange(n0, size + 1)
    pairs = []
    for a, sa in runs:
        for b, sb in runs:
            if a == b:
                continue
            ratio = np.array([sa[k - 1] / sb[k - 1] for k in ns])
            slope = growth_exponent(ns, ratio)
            holds = slope <= tol
            c = math.ceil(ratio.max() - 1e-12) if holds else None
            pairs.append(Domination(a, b, holds, c, n0 if holds else None, slope))
    names = [name for name, _ in runs]
    efficient = [a for a in names if all(p.holds for p in pairs if p.a == a)]
    ties = sorted({tuple(sorted((p.a, p.b))) for p in pairs if p.holds and
                   any(q.holds and q.a == p.b and q.b == p.a for q in pairs)})
    return {"pairs": pairs, "efficient": efficient, "ties": ties}
