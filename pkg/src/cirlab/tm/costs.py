"""Analytic step counts for the ECA-simulating machines."""

from __future__ import annotations

__all__ = ["cost_model_2tape", "cost_model_1tape", "measured_2tape_constant"]

# measured steps / (n**2 + 2n) of build_eca_machine_2tape tends to this value
# (4 steps per row cell: stream + rewind); see tests/test_tm.py
TWO_TAPE_BOOKKEEPING = 4


def cost_model_2tape(n: int, l: int = 1) -> int:
    """Sum of ``2i + 1`` for ``i = 1..n``, i.e. ``n**2 + 2n``, for a one-cell start.

    For ``l > 1`` each row is ``l - 1`` cells wider, giving ``n**2 + (l + 1) n``.
    """
    if n < 1 or l < 1:
        raise ValueError("need n >= 1 and l >= 1")
    return n * n + (l + 1) * n


def cost_model_1tape(n: int) -> int:
    """Sum of ``(2i + 1) * (4(2i - 1) + 4)`` for ``i = 1..n``: one round trip per written cell."""
    if n < 1:
        raise ValueError("n must be >= 1")
    # (8/3) n (n+1) (2n+1) + 4 n (n+1), kept in integers
    return (8 * n * (n + 1) * (2 * n + 1)) // 3 + 4 * n * (n + 1)


def measured_2tape_constant(steps: int, n: int, l: int = 1) -> float:
    return steps / cost_model_2tape(n, l)
