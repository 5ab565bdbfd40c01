"""Dense tableau simplex over exact rationals.

Solves ``max c.y  s.t.  A y <= b, y >= 0`` with ``b >= 0``, so the origin is
a feasible starting vertex and no phase one is needed.  Bland's rule keeps
the method finite on degenerate problems.  Instances in this package have a
handful of rows and columns, so the dense layout is the simplest choice.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


class UnboundedLP(ArithmeticError):
    pass


def maximize(
    c: Sequence[Fraction | int],
    A: Sequence[Sequence[Fraction | int]],
    b: Sequence[Fraction | int],
) -> tuple[Fraction, list[Fraction]]:
    """Return ``(optimum, y)`` for the LP above."""
    m, n = len(A), len(c)
    if any(len(row) != n for row in A) or len(b) != m:
        raise ValueError("inconsistent LP dimensions")
    if any(v < 0 for v in b):
        raise ValueError("right-hand side must be nonnegative")

    # Rows hold [A | I | b]; the objective row holds reduced costs.
    width = n + m
    rows = [
        [Fraction(x) for x in A[i]] + [Fraction(int(i == k)) for k in range(m)] + [Fraction(b[i])]
        for i in range(m)
    ]
    cost = [Fraction(x) for x in c] + [Fraction(0)] * m + [Fraction(0)]
    basis = list(range(n, n + m))

    while True:
        entering = next((j for j in range(width) if cost[j] > 0), None)
        if entering is None:
            break
        leaving, best = None, None
        for i in range(m):
            coef = rows[i][entering]
            if coef > 0:
                ratio = rows[i][-1] / coef
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leaving]):
                    leaving, best = i, ratio
        if leaving is None:
            raise UnboundedLP(f"objective unbounded along column {entering}")

        pivot_row = rows[leaving]
        p = pivot_row[entering]
        rows[leaving] = pivot_row = [x / p for x in pivot_row]
        for i in range(m):
            if i != leaving and rows[i][entering]:
                f = rows[i][entering]
                rows[i] = [x - f * y for x, y in zip(rows[i], pivot_row)]
        f = cost[entering]
        cost = [x - f * y for x, y in zip(cost, pivot_row)]
        basis[leaving] = entering

    y = [Fraction(0)] * n
    for i, var in enumerate(basis):
        if var < n:
            y[var] = rows[i][-1]
    return -cost[-1], y
