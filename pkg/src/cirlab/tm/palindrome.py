"""Palindrome recognizers over ``{0, 1}``: the textbook 1-tape vs 2-tape gap.

Both machines erase their input and leave ``1`` (palindrome) or ``0`` on tape 0.
"""

from __future__ import annotations

from .machine import BLANK as _B, TMSpec

__all__ = ["palindrome_1tape", "palindrome_2tape", "is_palindrome_output"]


def palindrome_2tape() -> TMSpec:
    """Copy, rewind, compare against the copy read backwards: about ``3l`` steps."""
    t = {}
    for x in "01":
        t[("copy", (x, _B))] = ("copy", (x, x), ("R", "R"))
        for y in "01":
            t[("back", (x, y))] = ("back", (x, y), ("L", "S"))
            t[("cmp", (x, y))] = ("cmp" if x == y else "reject", (_B, y), ("R", "L"))
            t[("reject", (x, y))] = ("reject", (_B, y), ("R", "S"))
        t[("reject", (x, _B))] = ("reject", (_B, _B), ("R", "S"))
    t[("copy", (_B, _B))] = ("back", (_B, _B), ("L", "L"))
    for y in ("0", "1", _B):
        t[("back", (_B, y))] = ("cmp", (_B, y), ("R", "S"))
        t[("cmp", (_B, y))] = ("halt", ("1", y), ("S", "S"))
        t[("reject", (_B, y))] = ("halt", ("0", y), ("S", "S"))
    return TMSpec.build(2, "copy", "halt", t)


def palindrome_1tape() -> TMSpec:
    """Strip matching end symbols one pair at a time: about ``l**2 / 2`` steps."""
    t = {("start", (_B,)): ("halt", ("1",), ("S",))}
    for a in "01":
        t[("start", (a,))] = (f"seek{a}", (_B,), ("R",))
        t[(f"check{a}", (_B,))] = ("halt", ("1",), ("S",))
        t[(f"seek{a}", (_B,))] = (f"check{a}", (_B,), ("L",))
        for x in "01":
            t[(f"seek{a}", (x,))] = (f"seek{a}", (x,), ("R",))
            t[(f"check{a}", (x,))] = ("return" if x == a else "erase", (_B,), ("L",))
        t[("return", (a,))] = ("return", (a,), ("L",))
        t[("erase", (a,))] = ("erase", (_B,), ("L",))
    t[("return", (_B,))] = ("start", (_B,), ("R",))
    t[("erase", (_B,))] = ("halt", ("0",), ("S",))
    return TMSpec.build(1, "start", "halt", t)


def is_palindrome_output(output: str) -> bool:
    if output not in ("0", "1"):
        raise ValueError(f"unexpected recognizer output {output!r}")
    return output == "1"
