"""Bounds on the alpha-invariant of the family members.

The lower bound is the minimum of four thresholds nu: below each of them a
pair (X, nu D) with D ~ -K_X is lc on some part of X.  The thresholds are
evaluated here as exact rationals; the divisors they quantify over are never
materialized.  The upper bound comes from the log canonical threshold of a
Fermat-type hyperplane section.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from mldlab.exact import sylvester, sylvester_prefix_sum
from mldlab.family import CheckResult, FamilyMember
from mldlab.wps import (
    NewtonSlackCertificate,
    WeightedPolynomial,
    newton_interior_slack,
    weighted_degree,
)


@dataclass(frozen=True)
class TangentConeData:
    b_weights: tuple[Fraction, ...]
    cone_equation: WeightedPolynomial
    cone_degree: int


def tangent_cone(F: FamilyMember) -> TangentConeData:
    """Weighted tangent cone at the non-quasismooth point.

    Weights are b_i = (s_n - 1)/s_i for i < n and b_n = (s_n + 1)/2 (even n)
    or (s_n + 1)/4 (odd n).  Every chart monomial except x_n^b has b-degree
    exactly s_n - 1; x_n^b has larger degree and drops out.
    """
    s, n = F.s_n, F.n
    b = [Fraction(s - 1, sylvester(i)) for i in range(n)]
    b.append(Fraction(s + 1, 2 if F.parity == "even" else 4))
    if any(x.denominator != 1 for x in b):
        raise ArithmeticError(f"tangent cone weights {b} are not integral")
    weights = tuple(int(x) for x in b)

    x_n_power = tuple(F.b if i == n else 0 for i in range(n + 1))
    kept = []
    for m in F.chart.monomials:
        deg = weighted_degree(m, weights)
        if m == x_n_power:
            if deg <= s - 1:
                raise ArithmeticError(f"x_n^{F.b} has b-degree {deg} <= {s - 1}")
        elif deg != s - 1:
            raise ArithmeticError(f"chart monomial {m} has b-degree {deg} != {s - 1}")
        else:
            kept.append(m)
    return TangentConeData(tuple(b), WeightedPolynomial(tuple(kept), weights), s - 1)


def tangent_cone_certificate(F: FamilyMember) -> NewtonSlackCertificate:
    return newton_interior_slack(tangent_cone(F).cone_equation)


def tangent_cone_klt(F: FamilyMember) -> bool:
    """(1, ..., 1) is interior to the Newton polyhedron of the cone."""
    return tangent_cone_certificate(F).slack > 0


@dataclass(frozen=True)
class AlphaBounds:
    nu_smooth: Fraction
    nu_l: Fraction
    nu_mult: Fraction
    nu_point: Fraction
    lower: Fraction
    upper: Fraction


def nu_bounds(F: FamilyMember) -> AlphaBounds:
    n, s, a_n, a_last = F.n, F.s_n, F.a_n, F.a_last
    s1 = sylvester(n - 1)
    cone = tangent_cone(F)
    b = cone.b_weights

    # multiplicity of nu D is at most 1 at smooth points of the stack
    nu_smooth = Fraction(a_n * a_last, F.d)
    if F.parity == "even":
        nu_l = Fraction((s - 1) * a_n, s + 1)
        nu_mult = b[n - 2] * b[n - 1] * a_n / (b[n] * (s - 1))
        if n == 2:
            nu_point = Fraction(2 * a_n, s + 1)
        else:
            nu_point = (
                4 * a_n * Fraction(s - 1) ** (n - 2)
                / (Fraction(s1) ** (n - 2) * (s1 + 1) ** 2 * Fraction(s1 - 1) ** (n - 4) * (s + 1))
            )
    else:
        nu_l = Fraction((s - 3) * a_n, s + 1)
        if n == 3:
            nu_mult = b[n - 1] * a_n / (s - 1)
        else:
            nu_mult = b[n - 2] * b[n - 1] * a_n / (b[n] * (s - 1))
        nu_point = (
            8 * a_n * Fraction(s - 1) ** (n - 2)
            / (Fraction(s1) ** (n - 2) * (s1 + 1) ** 2 * Fraction(s1 - 1) ** (n - 4) * (s + 1))
        )
    lower = min(nu_smooth, nu_l, nu_mult, nu_point)
    upper = Fraction((s - 2) * a_last, s - 1)
    return AlphaBounds(nu_smooth, nu_l, nu_mult, nu_point, lower, upper)


def verify_exceptional(F: FamilyMember) -> CheckResult:
    bounds = nu_bounds(F)
    return CheckResult.collect({
        "lower bound is nu_smooth": bounds.lower == bounds.nu_smooth,
        "lower bound > 1": bounds.lower > 1,
        "lower <= upper": bounds.lower <= bounds.upper,
        "tangent cone klt": tangent_cone_klt(F),
    })


def fermat_lct(F: FamilyMember) -> Fraction:
    """lct of x_0^2 + ... + x_{n-1}^{s_{n-1}}, i.e. min(1/s_0 + ... + 1/s_{n-1}, 1)."""
    value = min(sylvester_prefix_sum(F.n - 1), Fraction(1))
    expected = Fraction(F.s_n - 2, F.s_n - 1)
    if value != expected:
        raise ArithmeticError(f"Fermat lct {value} != (s_n - 2)/(s_n - 1) = {expected}")
    return value
