"""Weighted projective spaces and weighted-homogeneous polynomials.

Polynomials are stored combinatorially: a tuple of exponent vectors plus the
weight vector of the ambient space.  Coefficients are carried along for
bookkeeping but no operation here ever reads them; every check assumes the
coefficients are general.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from mldlab.exact import gcd_all
from mldlab.simplex import maximize

Monomial = tuple[int, ...]
WeightVector = tuple[int, ...]


def _weights(w: Iterable[int]) -> WeightVector:
    w = tuple(int(x) for x in w)
    if any(x < 1 for x in w):
        raise ValueError(f"weights must be positive integers, got {w}")
    return w


@dataclass(frozen=True)
class WeightedPolynomial:
    monomials: tuple[Monomial, ...]
    weights: WeightVector
    coefficients: Optional[tuple[Fraction, ...]] = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "weights", _weights(self.weights))
        monos = tuple(tuple(int(e) for e in m) for m in self.monomials)
        object.__setattr__(self, "monomials", monos)
        if not monos:
            raise ValueError("a polynomial needs at least one monomial")
        nvars = len(self.weights)
        for m in monos:
            if len(m) != nvars:
                raise ValueError(f"monomial {m} has {len(m)} exponents, expected {nvars}")
            if any(e < 0 for e in m):
                raise ValueError(f"negative exponent in {m}")
        if len(set(monos)) != len(monos):
            raise ValueError("duplicate exponent vectors")
        if self.coefficients is not None:
            coeffs = tuple(Fraction(c) for c in self.coefficients)
            if len(coeffs) != len(monos):
                raise ValueError("one coefficient per monomial required")
            if any(c == 0 for c in coeffs):
                raise ValueError("coefficients must be nonzero")
            object.__setattr__(self, "coefficients", coeffs)

    @property
    def nvars(self) -> int:
        return len(self.weights)

    def permuted(self, perm: Sequence[int]) -> "WeightedPolynomial":
        """Variable ``k`` of the result is variable ``perm[k]`` of ``self``."""
        return WeightedPolynomial(
            tuple(tuple(m[p] for p in perm) for m in self.monomials),
            tuple(self.weights[p] for p in perm),
            self.coefficients,
        )


def is_well_formed(w: Sequence[int]) -> bool:
    """Every leave-one-out gcd of the weights equals 1."""
    w = _weights(w)
    return all(gcd_all(w[:j] + w[j + 1:]) == 1 for j in range(len(w)))


def weighted_degree(m: Sequence[int], w: Sequence[int]) -> int:
    if len(m) != len(w):
        raise ValueError(f"length mismatch: {len(m)} exponents, {len(w)} weights")
    return sum(e * x for e, x in zip(m, w))


def homogeneous_degree(p: WeightedPolynomial) -> Optional[int]:
    """The common weighted degree of all monomials, or None if they differ."""
    degrees = {weighted_degree(m, p.weights) for m in p.monomials}
    return degrees.pop() if len(degrees) == 1 else None


def affine_chart(p: WeightedPolynomial, i: int) -> WeightedPolynomial:
    """Dehomogenize at ``x_i = 1``.

    Coordinate ``i`` is dropped from every exponent vector and from the
    weights; monomials that collide keep their first occurrence.
    """
    if not 0 <= i < p.nvars:
        raise IndexError(f"variable index {i} out of range for {p.nvars} variables")
    seen: dict[Monomial, int] = {}
    for k, m in enumerate(p.monomials):
        seen.setdefault(m[:i] + m[i + 1:], k)
    coeffs = None if p.coefficients is None else tuple(p.coefficients[k] for k in seen.values())
    return WeightedPolynomial(tuple(seen), p.weights[:i] + p.weights[i + 1:], coeffs)


@dataclass(frozen=True)
class NewtonSlackCertificate:
    """Convex combination of exponent vectors bounded by ``1 - slack`` in
    every coordinate.  ``combination`` lists (monomial index, weight)."""

    slack: Fraction
    combination: tuple[tuple[int, Fraction], ...]

    @property
    def interior(self) -> bool:
        return self.slack > 0


def combination_point(p: WeightedPolynomial, combination) -> tuple[Fraction, ...]:
    """Evaluate ``sum_k lambda_k * m_k`` for (index, lambda) pairs."""
    point = [Fraction(0)] * p.nvars
    for k, lam in combination:
        for i, e in enumerate(p.monomials[k]):
            point[i] += lam * e
    return tuple(point)


def newton_interior_slack(p: WeightedPolynomial) -> NewtonSlackCertificate:
    """Largest ``delta`` such that a convex combination of the exponent
    vectors has all coordinates ``<= 1 - delta``.

    ``(1, ..., 1)`` lies in the interior of the Newton polyhedron exactly when
    the returned slack is positive.  With ``t = 1 - delta`` and
    ``y = lambda / t`` the problem becomes ``max sum(y)`` subject to
    ``M y <= 1, y >= 0``, whose optimum is ``1 / t``.
    """
    for k, m in enumerate(p.monomials):
        if not any(m):
            # A constant term puts the origin itself in the polyhedron.
            return NewtonSlackCertificate(Fraction(1), ((k, Fraction(1)),))
    K = len(p.monomials)
    A = [[p.monomials[k][i] for k in range(K)] for i in range(p.nvars)]
    best, y = maximize([1] * K, A, [1] * p.nvars)
    t = 1 / best
    combination = tuple((k, y[k] * t) for k in range(K) if y[k])
    return NewtonSlackCertificate(1 - t, combination)


class CoordinateStatus(enum.Enum):
    NOT_ON_X = "not_on_x"
    QUASISMOOTH = "quasismooth"
    SUSPECT = "suspect"


def quasismooth_coordinate_report(p: WeightedPolynomial) -> list[CoordinateStatus]:
    """Classify each coordinate point P_i for a general member of the
    linear system spanned by the monomials of ``p``.

    A pure power ``x_i^k`` keeps P_i off the hypersurface; a monomial
    ``x_i^k x_j`` gives a nonvanishing partial derivative at P_i.  Anything
    else is reported as SUSPECT.
    """
    report = []
    for i in range(p.nvars):
        status = CoordinateStatus.SUSPECT
        for m in p.monomials:
            others = [e for j, e in enumerate(m) if j != i and e]
            if not others and m[i] > 0:
                status = CoordinateStatus.NOT_ON_X
                break
            if others == [1]:
                status = CoordinateStatus.QUASISMOOTH
        report.append(status)
    return report


def variables_dividing_all(p: WeightedPolynomial) -> list[int]:
    """Indices of variables that appear in every monomial."""
    return [i for i in range(p.nvars) if all(m[i] > 0 for m in p.monomials)]


# -- text format -----------------------------------------------------------
#
#   # comment
#   141 94 13 35          <- weight vector
#   2 0 0 0               <- one exponent vector per line
#   0 1 1 5  3/2          <- optional trailing coefficient
#
# Tokens may be separated by whitespace or commas.


def parse_polynomial(text: str) -> WeightedPolynomial:
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].replace(",", " ").strip()
        if line:
            rows.append((lineno, line.split()))
    if not rows:
        raise ValueError("empty polynomial document")
    _, head = rows[0]
    try:
        weights = tuple(int(t) for t in head)
    except ValueError:
        raise ValueError(f"line {rows[0][0]}: weight line must hold integers") from None
    nvars = len(weights)
    monomials, coeffs = [], []
    for lineno, toks in rows[1:]:
        if len(toks) not in (nvars, nvars + 1):
            raise ValueError(f"line {lineno}: expected {nvars} exponents (+ optional coefficient)")
        try:
            monomials.append(tuple(int(t) for t in toks[:nvars]))
            coeffs.append(Fraction(toks[nvars]) if len(toks) > nvars else None)
        except ValueError:
            raise ValueError(f"line {lineno}: cannot parse {' '.join(toks)!r}") from None
    if all(c is None for c in coeffs):
        coefficients = None
    else:
        coefficients = tuple(Fraction(1) if c is None else c for c in coeffs)
    return WeightedPolynomial(tuple(monomials), weights, coefficients)


def format_polynomial(p: WeightedPolynomial) -> str:
    lines = [" ".join(map(str, p.weights))]
    for k, m in enumerate(p.monomials):
        row = " ".join(map(str, m))
        if p.coefficients is not None:
            row += f" {p.coefficients[k]}"
        lines.append(row)
    return "\n".join(lines) + "\n"


def monomial_string(m: Sequence[int]) -> str:
    """Human-readable form such as ``x1*x2*x3^5``."""
    parts = [f"x{i}" if e == 1 else f"x{i}^{e}" for i, e in enumerate(m) if e]
    return "*".join(parts) or "1"


