"""Independent oracles shared by the test modules.

These are deliberately naive re-implementations (sets of black positions,
dict-based tapes) so the library is never checked against itself.
"""

import math

import pytest


def ref_rule_bit(index, l, c, r):
    return (index >> (4 * l + 2 * c + r)) & 1


def ref_step(index, black):
    """One step on a set of black positions over a zero background."""
    if not black:
        return set()
    lo, hi = min(black) - 1, max(black) + 1
    return {x for x in range(lo, hi + 1)
            if ref_rule_bit(index, x - 1 in black, x in black, x + 1 in black)}


def ref_rows(index, n, black=frozenset({0})):
    rows = [set(black)]
    for _ in range(n):
        rows.append(ref_step(index, rows[-1]))
    return rows


def as_black(config):
    """Set of black positions of a library Configuration."""
    return {config.anchor + i for i, b in enumerate(config.cells) if b}


def binomial_row(n):
    """Black positions of the XOR rule from one cell: odd binomial coefficients."""
    return {2 * k - n for k in range(n + 1) if math.comb(n, k) % 2}


def ref_run(spec, inputs, budget):
    """Dict-tape interpreter: returns (steps, halted, {tape: {pos: sym}}, heads)."""
    k = spec.tapes
    tapes = [{i: s for i, s in enumerate(x)} for x in inputs] + [{} for _ in range(k - len(inputs))]
    heads = [0] * k
    state = spec.start
    steps = 0
    while state != spec.halt and steps < budget:
        reads = tuple(tapes[j].get(heads[j], spec.blank) for j in range(k))
        state, writes, moves = spec.transitions[(state, reads)]
        for j in range(k):
            tapes[j][heads[j]] = writes[j]
            heads[j] += {"L": -1, "R": 1, "S": 0}[moves[j]]
        steps += 1
    return steps, state == spec.halt, tapes, heads


def trimmed(tape, blank="_"):
    keys = [p for p, s in tape.items() if s != blank]
    if not keys:
        return ""
    return "".join(tape.get(p, blank) for p in range(min(keys), max(keys) + 1))


def simple_primes(count):
    out = []
    x = 1
    while len(out) < count:
        x += 1
        if all(x % p for p in range(2, math.isqrt(x) + 1)):
            out.append(x)
    return out


@pytest.fixture(scope="session")
def palindrome_machines():
    from cirlab.tm import compile_to_single_tape, palindrome_1tape, palindrome_2tape

    two = palindrome_2tape()
    return {"2tape": two, "1tape": palindrome_1tape(), "compiled": compile_to_single_tape(two)}


# -- acceptance criterion reporting ------------------------------------------------

_CRITERIA = {}


@pytest.fixture
def criterion(request):
    """Recorder for one acceptance criterion; the number comes from the test name.

    A test that raises before recording is reported as FAIL.
    """
    num = int(request.node.name.split("_")[2])

    def record(text, ok):
        line = f"{'PASS' if ok else 'FAIL'} criterion {num}: {text}"
        _CRITERIA[num] = line
        print(line)
        assert ok, line

    yield record
    if num not in _CRITERIA:
        _CRITERIA[num] = f"FAIL criterion {num}: raised before completing"


def pytest_terminal_summary(terminalreporter):
    if _CRITERIA:
        terminalreporter.section("acceptance criteria")
        for num in sorted(_CRITERIA):
            terminalreporter.write_line(_CRITERIA[num])
