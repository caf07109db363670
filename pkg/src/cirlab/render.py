"""ASCII and PBM (P1) renders of an evolution over its light-cone window."""

from __future__ import annotations

import numpy as np

from .eca import EvolutionTrace

__all__ = ["grid", "to_ascii", "to_pbm", "parse_pbm"]

BLOCK = "█"


def grid(trace: EvolutionTrace, lo: int | None = None, hi: int | None = None) -> np.ndarray:
    """``(n + 1, width)`` array of cells over columns ``lo..hi - 1``.

    The default window is the light cone of ``E_0``: ``n`` extra cells on each side.
    """
    first = trace.rows[0]
    if lo is None:
        lo = first.anchor - trace.n
    if hi is None:
        hi = first.anchor + max(first.width, 1) + trace.n
    return np.stack([row.window(lo, hi) for row in trace.rows]).astype(np.uint8)


def to_ascii(cells: np.ndarray) -> str:
    return "".join("".join(BLOCK if c else " " for c in row) + "\n" for row in cells)


def to_pbm(cells: np.ndarray, line_width: int = 70) -> str:
    """Plain PBM; raster lines are wrapped at ``line_width`` characters."""
    h, w = cells.shape
    out = [f"P1\n{w} {h}\n"]
    for row in cells:
        text = "".join("1" if c else "0" for c in row)
        for i in range(0, len(text), line_width):
            out.append(text[i:i + line_width] + "\n")
    return "".join(out)


def parse_pbm(text: str) -> np.ndarray:
    lines = [ln.split("#", 1)[0] for ln in text.splitlines()]
    tokens = " ".join(lines).split()
    if not tokens or tokens[0] != "P1":
        raise ValueError("not a plain PBM file")
    w, h = int(tokens[1]), int(tokens[2])
    bits = "".join(tokens[3:])
    if len(bits) != w * h or set(bits) - {"0", "1"}:
        raise ValueError("raster does not match the declared size")
    return np.frombuffer(bits.encode(), dtype=np.uint8).reshape(h, w) - ord("0")
