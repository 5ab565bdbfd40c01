"""Minimal log discrepancies of toric quotient singularities.

Two engines share one enumeration kernel:

* cyclic quotients ``1/r(b_1, ..., b_s)``: the minimum of the coordinate sum
  over the fractional points ``({j b_1 / r}, ..., {j b_s / r})``, capped at 1;
* quotients of a hypersurface ``{f = 0}`` by ``mu_r``: the minimum of
  ``beta(x_0 ... x_n) - beta(f)`` over the basis vectors and the fractional
  points ``beta_j``.

All values of the form ``(j a_i mod r) / r`` share the denominator ``r``, so
the kernel works with integer numerators only.  When every intermediate
product fits in a signed 64-bit word the scan is vectorized with numpy;
otherwise it falls back to Python integers.  The j-range is split into
contiguous blocks whose local minima are reduced lexicographically on
``(value, j)``, so the answer never depends on the worker count.
"""

from __future__ import annotations

import enum
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

import numpy as np

from mldlab.exact import WORD_MAX, gcd_all
from mldlab.wps import WeightedPolynomial, variables_dividing_all

ProgressFn = Callable[[int, int], None]

# Candidates handled per numpy pass; bounds peak memory at ~100 MB.
_CHUNK = 1 << 20
# Candidates per task handed to a worker.
_TASK = 1 << 23


class IllFormedQuotient(ValueError):
    pass


class ToricDivisorError(ValueError):
    """The chart has a variable dividing every monomial."""

    def __init__(self, variable: int):
        super().__init__(f"x{variable} divides every monomial of the chart")
        self.variable = variable


class Classification(enum.Enum):
    KLT = "klt"
    LC_NOT_KLT = "lc_not_klt"
    NOT_LC = "not_lc"


@dataclass(frozen=True)
class QuotientSingularity:
    r: int
    weights: tuple[int, ...]

    def __post_init__(self):
        if self.r < 1:
            raise ValueError(f"group order must be positive, got {self.r}")
        object.__setattr__(self, "weights", tuple(int(b) for b in self.weights))

    def well_formedness_violation(self) -> Optional[int]:
        """Index i with gcd(r, b_1, ..., b_i omitted, ..., b_s) != 1, if any."""
        b = self.weights
        for i in range(len(b)):
            if gcd_all((self.r,) + b[:i] + b[i + 1:]) != 1:
                return i
        return None

    def is_well_formed(self) -> bool:
        return self.well_formedness_violation() is None

    def __str__(self):
        return f"1/{self.r}({', '.join(map(str, self.weights))})"


@dataclass(frozen=True)
class LatticePoint:
    """A point of N in the unit cube, tagged with where it came from."""

    coordinates: tuple[Fraction, ...]
    group_index: Optional[int] = None
    basis_index: Optional[int] = None

    @classmethod
    def fractional(cls, j: int, weights: Sequence[int], r: int) -> "LatticePoint":
        return cls(tuple(Fraction(j * a % r, r) for a in weights), group_index=j)

    @classmethod
    def basis(cls, i: int, dim: int) -> "LatticePoint":
        return cls(tuple(Fraction(int(k == i)) for k in range(dim)), basis_index=i)


@dataclass(frozen=True)
class MldResult:
    """``value`` is None for minus infinity (not log canonical)."""

    value: Optional[Fraction]
    classification: Classification
    witness: Optional[LatticePoint] = None
    exhaustive: bool = True

    @classmethod
    def from_value(cls, value: Optional[Fraction], witness=None, exhaustive=True) -> "MldResult":
        if value is None or value < 0:
            return cls(None, Classification.NOT_LC, witness, exhaustive)
        kind = Classification.KLT if value > 0 else Classification.LC_NOT_KLT
        return cls(Fraction(value), kind, witness, exhaustive)

    @property
    def witness_index(self) -> Optional[int]:
        return None if self.witness is None else self.witness.group_index


def lattice_value(beta: LatticePoint, chart: WeightedPolynomial) -> Fraction:
    """``beta(x_0 ... x_n) - beta(f)``."""
    coords = beta.coordinates
    if len(coords) != chart.nvars:
        raise ValueError(f"point has {len(coords)} coordinates, chart has {chart.nvars} variables")
    lowest = min(sum((c * e for c, e in zip(coords, m)), Fraction(0)) for m in chart.monomials)
    return sum(coords, Fraction(0)) - lowest


# -- enumeration kernel -----------------------------------------------------


@dataclass(frozen=True)
class ScanOutcome:
    """Minimum numerator over the scanned j (value = numerator / r)."""

    numerator: int
    j: int
    first_negative: Optional[int]

    def merge(self, other: "ScanOutcome") -> "ScanOutcome":
        best = min((self.numerator, self.j), (other.numerator, other.j))
        negs = [x for x in (self.first_negative, other.first_negative) if x is not None]
        return ScanOutcome(best[0], best[1], min(negs) if negs else None)


def _sparse(monomials) -> tuple[tuple[tuple[int, int], ...], ...]:
    return tuple(tuple((i, e) for i, e in enumerate(m) if e) for m in monomials)


@dataclass(frozen=True)
class ScanEngine:
    """Enumerates ``sum_i b_i - min_m sum_i m_i b_i`` with ``b_i = j a_i mod r``
    for ``1 <= j < r``.  An empty monomial list means ``beta(f) = 0``."""

    r: int
    weights: tuple[int, ...]
    monomials: tuple[tuple[int, ...], ...] = ()

    @property
    def residues(self) -> tuple[int, ...]:
        return tuple(a % self.r for a in self.weights)

    @property
    def fast(self) -> bool:
        top = self.r - 1
        bounds = [top * top, len(self.weights) * top]
        bounds += [sum(m) * top for m in self.monomials]
        return max(bounds, default=0) <= WORD_MAX

    def numerator(self, j: int) -> int:
        b = [j * a % self.r for a in self.weights]
        lowest = min((sum(e * x for e, x in zip(m, b)) for m in self.monomials), default=0)
        return sum(b) - lowest

    def value(self, j: int) -> Fraction:
        return Fraction(self.numerator(j), self.r)

    def scan(
        self,
        lo: int = 1,
        hi: Optional[int] = None,
        workers: int = 1,
        progress: Optional[ProgressFn] = None,
    ) -> Optional[ScanOutcome]:
        """Scan ``lo <= j < hi`` (default: the whole group).  None if empty."""
        hi = self.r if hi is None else hi
        if hi <= lo:
            return None
        args = (self.r, self.residues, _sparse(self.monomials), self.fast)
        tasks = [(t, min(t + _TASK, hi)) for t in range(lo, hi, _TASK)]
        total, done, outcome = hi - lo, 0, None

        def consume(results):
            nonlocal done, outcome
            for (a, b), res in zip(tasks, results):
                outcome = res if outcome is None else outcome.merge(res)
                done += b - a
                if progress is not None:
                    progress(done, total)

        if workers <= 1 or len(tasks) == 1:
            consume(_scan_block(*args, a, b) for a, b in tasks)
        else:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                consume(pool.map(_scan_block, *zip(*[args + t for t in tasks])))
        return outcome


def _scan_block(r, residues, monomials, fast, lo, hi) -> ScanOutcome:
    if fast:
        return _scan_block_numpy(r, residues, monomials, lo, hi)
    return _scan_block_python(r, residues, monomials, lo, hi)


def _scan_block_python(r, residues, monomials, lo, hi) -> ScanOutcome:
    best, best_j, neg = None, lo, None
    for j in range(lo, hi):
        b = [j * a % r for a in residues]
        lowest = min((sum(e * b[i] for i, e in m) for m in monomials), default=0)
        v = sum(b) - lowest
        if best is None or v < best:
            best, best_j = v, j
        if v < 0 and neg is None:
            neg = j
    return ScanOutcome(best, best_j, neg)


def _scan_block_numpy(r, residues, monomials, lo, hi) -> ScanOutcome:
    outcome = None
    for start in range(lo, hi, _CHUNK):
        j = np.arange(start, min(start + _CHUNK, hi), dtype=np.int64)
        b = [j * a % r for a in residues]
        vals = b[0].copy() if b else np.zeros_like(j)
        for col in b[1:]:
            vals += col
        lowest = None
        for m in monomials:
            mv = np.zeros_like(j)
            for i, e in m:
                mv += b[i] if e == 1 else e * b[i]
            lowest = mv if lowest is None else np.minimum(lowest, mv, out=lowest)
        if lowest is not None:
            vals -= lowest
        k = int(np.argmin(vals))
        negative = np.flatnonzero(vals < 0)
        local = ScanOutcome(
            int(vals[k]), start + k, start + int(negative[0]) if negative.size else None
        )
        outcome = local if outcome is None else outcome.merge(local)
    return outcome


def default_workers() -> int:
    env = os.environ.get("MLDLAB_WORKERS")
    return int(env) if env else 1


# -- engines -------------------------------------------------------------------


def cyclic_quotient_mld(
    q: QuotientSingularity, workers: int = 1, progress: Optional[ProgressFn] = None
) -> MldResult:
    """``min(1, min_{1<=j<r} sum_i {j b_i / r})`` with the smallest minimizing j."""
    bad = q.well_formedness_violation()
    if bad is not None:
        rest = (q.r,) + q.weights[:bad] + q.weights[bad + 1:]
        raise IllFormedQuotient(
            f"{q} is not well-formed: gcd{rest} = {gcd_all(rest)} with b_{bad + 1} omitted"
        )
    outcome = ScanEngine(q.r, q.weights).scan(workers=workers, progress=progress)
    if outcome is None or outcome.numerator >= q.r:
        return MldResult.from_value(Fraction(1))
    return MldResult.from_value(
        Fraction(outcome.numerator, q.r), LatticePoint.fractional(outcome.j, q.weights, q.r)
    )


def hypersurface_quotient_mld(
    chart: WeightedPolynomial,
    r: int,
    a: Sequence[int],
    workers: int = 1,
    progress: Optional[ProgressFn] = None,
) -> MldResult:
    """mld of ``{f = 0} / mu_r`` with ``mu_r`` acting by weights ``a``.

    ``f`` is assumed Newton non-degenerate.  Candidates are the basis vectors
    and the points ``beta_j``; integral points beyond these never lower the
    minimum for an lc input.  A negative candidate means not lc.
    """
    a = tuple(int(x) for x in a)
    if len(a) != chart.nvars:
        raise ValueError(f"{len(a)} group weights for a chart in {chart.nvars} variables")
    if r < 1:
        raise ValueError(f"group order must be positive, got {r}")
    dividing = variables_dividing_all(chart)
    if dividing:
        raise ToricDivisorError(dividing[0])

    dim = chart.nvars
    basis = [(lattice_value(LatticePoint.basis(i, dim), chart), i) for i in range(dim)]
    basis_best, basis_i = min(basis)
    outcome = ScanEngine(r, a, chart.monomials).scan(workers=workers, progress=progress)

    if outcome is not None and outcome.first_negative is not None:
        return MldResult.from_value(None, LatticePoint.fractional(outcome.first_negative, a, r))
    if basis_best < 0:
        return MldResult.from_value(None, LatticePoint.basis(basis_i, dim))
    if outcome is None or basis_best < Fraction(outcome.numerator, r):
        return MldResult.from_value(basis_best, LatticePoint.basis(basis_i, dim))
    return MldResult.from_value(
        Fraction(outcome.numerator, r), LatticePoint.fractional(outcome.j, a, r)
    )


def fractional_point_value(chart: WeightedPolynomial, r: int, a: Sequence[int], j: int) -> Fraction:
    """``lattice_value(beta_j, chart)`` without building the whole engine."""
    return lattice_value(LatticePoint.fractional(j, a, r), chart)


def coprime_lower_bound(q: QuotientSingularity) -> Optional[Fraction]:
    """``s / r`` when every weight is coprime to ``r``, else None.

    Each nonzero fractional coordinate is at least ``1/r``, and coprimality
    makes all ``s`` of them nonzero for every ``1 <= j < r``.
    """
    if q.r > 1 and all(math.gcd(b, q.r) == 1 for b in q.weights):
        return min(Fraction(1), Fraction(len(q.weights), q.r))
    return None
