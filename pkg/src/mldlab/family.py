"""The exceptional Fano hypersurfaces X_n built from the Sylvester sequence.

For n >= 2 the member X_n is a degree-d hypersurface in
P(a_0, ..., a_{n+1}) with a single non-quasismooth point, the coordinate
point of x_{n+1}.  This module builds the data and checks every arithmetic
claim made about it: degree identities, the gcd conditions, the
quasismoothness pattern, the closed-form mld, and the lower bound on the
mld away from the non-quasismooth point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from mldlab.exact import WORD_MAX, sylvester
from mldlab.mld import (
    LatticePoint,
    MldResult,
    ProgressFn,
    QuotientSingularity,
    coprime_lower_bound,
    cyclic_quotient_mld,
    hypersurface_quotient_mld,
    lattice_value,
)
from mldlab.wps import (
    CoordinateStatus,
    WeightedPolynomial,
    affine_chart,
    homogeneous_degree,
    is_well_formed,
    quasismooth_coordinate_report,
)

# Largest j-range enumerated directly by verify_other_points.
ENUMERATION_LIMIT = 10**7


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class CheckResult:
    """Outcome of a verification; falsy when any check failed."""

    ok: bool
    failures: tuple[str, ...] = ()

    def __bool__(self):
        return self.ok

    @classmethod
    def collect(cls, checks: dict[str, bool]) -> "CheckResult":
        failed = tuple(name for name, passed in checks.items() if not passed)
        return cls(not failed, failed)


def _exact_div(num: int, den: int, what: str) -> int:
    q, rem = divmod(num, den)
    if rem:
        raise ArithmeticError(f"{what}: {num} is not divisible by {den}")
    return q


@dataclass(frozen=True)
class FamilyMember:
    n: int
    parity: str
    s_n: int
    a: tuple[int, ...]
    d: int
    b: int
    c: int
    r: int
    equation: WeightedPolynomial = field(repr=False)

    @property
    def a_n(self) -> int:
        return self.a[self.n]

    @property
    def a_last(self) -> int:
        return self.a[self.n + 1]

    @property
    def j0(self) -> int:
        """Index of the fractional point realizing the mld."""
        if self.parity == "even":
            return (self.s_n - 1) // 2
        return (self.s_n - 3) // 4

    @property
    def chart(self) -> WeightedPolynomial:
        """The equation on the chart x_{n+1} = 1."""
        return affine_chart(self.equation, self.n + 1)


def build_family(n: int) -> FamilyMember:
    if n < 2:
        raise ValueError(f"the family starts at n = 2, got {n}")
    s = sylvester(n)
    if n % 2 == 0:
        parity = "even"
        a_n = _exact_div(s * s + s - 4, 4, "a_n")
        a_last = _exact_div((s - 1) * a_n - s - 1, 2, "a_{n+1}")
        b = _exact_div(s * s - s - 4, 2, "b")
        c = _exact_div(s + 3, 2, "c")
        x_n_power = 1
    else:
        parity = "odd"
        a_n = _exact_div(s * s + 3 * s - 6, 4, "a_n")
        a_last = _exact_div((s - 3) * a_n - s - 1, 4, "a_{n+1}")
        b = _exact_div(s * s - s - 2, 4, "b")
        c = _exact_div(s + 5, 2, "c")
        x_n_power = 2
    r = -1 + a_n + a_last
    d = r * (s - 1)
    a = tuple(_exact_div(d, sylvester(i), f"a_{i}") for i in range(n)) + (a_n, a_last)

    nvars = n + 2
    monomials = []
    for i in range(n):
        m = [0] * nvars
        m[i] = sylvester(i)
        monomials.append(tuple(m))
    m = [0] * nvars
    m[n], m[n + 1] = b, 1
    monomials.append(tuple(m))
    m = [0] + [1] * (n - 1) + [x_n_power, c]
    monomials.append(tuple(m))
    equation = WeightedPolynomial(tuple(monomials), a)
    return FamilyMember(n, parity, s, a, d, b, c, r, equation)


# -- identities ----------------------------------------------------------------


def verify_degree_identities(F: FamilyMember) -> CheckResult:
    n, a, d = F.n, F.a, F.d
    if F.parity == "even":
        last = d - sum(a[1:n + 1])
    else:
        last = d - sum(a[1:n]) - 2 * F.a_n
    return CheckResult.collect({
        "sum of weights = d + 1": sum(a) == d + 1,
        "equation homogeneous of degree d": homogeneous_degree(F.equation) == d,
        "d - a_{n+1} = b a_n": d - F.a_last == F.b * F.a_n,
        "last monomial: remaining degree = c a_{n+1}": last == F.c * F.a_last,
        "d = r (s_n - 1)": d == F.r * (F.s_n - 1),
        "a_i s_i = d for i < n": all(a[i] * sylvester(i) == d for i in range(n)),
    })


def verify_gcd_lemma(F: FamilyMember) -> CheckResult:
    n, a = F.n, F.a
    return CheckResult.collect({
        "gcd(a_i, a_{n+1}) = 1 for i <= n": all(math.gcd(a[i], F.a_last) == 1 for i in range(n + 1)),
        "gcd(a_i, a_n) = 1 for i < n": all(math.gcd(a[i], F.a_n) == 1 for i in range(n)),
        "weights well-formed": is_well_formed(a),
        "a_n odd": F.a_n % 2 == 1,
        "a_{n+1} odd": F.a_last % 2 == 1,
    })


def verify_quasismooth_pattern(F: FamilyMember) -> CheckResult:
    expected = [CoordinateStatus.NOT_ON_X] * F.n + [CoordinateStatus.QUASISMOOTH, CoordinateStatus.SUSPECT]
    report = quasismooth_coordinate_report(F.equation)
    return CheckResult.collect({
        f"P_{i}: {want.value}": got == want for i, (got, want) in enumerate(zip(report, expected))
    })


def closed_form_mld(F: FamilyMember) -> Fraction:
    if F.parity == "even":
        return Fraction(F.s_n - 1, 2 * F.a_last)
    return Fraction(F.s_n - 3, 4 * F.a_last)


def sylvester_form_mld(F: FamilyMember) -> Fraction:
    """The mld written in terms of s_n alone."""
    s = F.s_n
    if F.parity == "even":
        return Fraction(4 * (s - 1), s**3 - 9 * s)
    return Fraction(4 * (s - 3), s**3 - 19 * s + 14)


def verify_mld_identity(F: FamilyMember) -> bool:
    return closed_form_mld(F) == sylvester_form_mld(F)


def verify_asymptotics(F: FamilyMember) -> bool:
    """``|mld * s_n^2 / 4 - 1| <= 3 / s_n``, exactly."""
    s = F.s_n
    return abs(closed_form_mld(F) * s * s / 4 - 1) <= Fraction(3, s)


# -- mld at the non-quasismooth point -----------------------------------------


def witness_point(F: FamilyMember, j: Optional[int] = None) -> LatticePoint:
    j = F.j0 if j is None else j
    return LatticePoint.fractional(j, F.a[:F.n + 1], F.a_last)


def mld_nonquasismooth(
    F: FamilyMember,
    brute_force_budget: Optional[int] = None,
    workers: int = 1,
    progress: Optional[ProgressFn] = None,
) -> MldResult:
    """mld at the coordinate point of x_{n+1}.

    Without a budget only the witness ``beta_{j0}`` is evaluated and the
    result is marked non-exhaustive.  With a budget the whole group of order
    a_{n+1} is scanned, provided it fits in the budget.
    """
    chart = F.chart
    if brute_force_budget is None:
        beta = witness_point(F)
        return MldResult.from_value(lattice_value(beta, chart), beta, exhaustive=False)
    if F.a_last > brute_force_budget:
        raise BudgetExceeded(f"a_{F.n + 1} = {F.a_last} exceeds the budget {brute_force_budget}")
    return hypersurface_quotient_mld(chart, F.a_last, F.a[:F.n + 1], workers=workers, progress=progress)


def verify_witness(F: FamilyMember) -> bool:
    return mld_nonquasismooth(F).value == closed_form_mld(F)


# -- away from the non-quasismooth point --------------------------------------


@dataclass(frozen=True)
class StratumDatum:
    """A 1-dimensional stratum {x_{i1}, x_{i2} != 0} with g = gcd(a_i1, a_i2)."""

    i1: int
    i2: int
    g: int
    m: Optional[int]


def strata(F: FamilyMember) -> list[StratumDatum]:
    out = []
    for i1 in range(F.n):
        for i2 in range(i1 + 1, F.n):
            g = math.gcd(F.a[i1], F.a[i2])
            if g > 1:
                out.append(StratumDatum(i1, i2, g, g // F.r if g % F.r == 0 else None))
    return out


def stratum_j_bound(g: int, a_n: int) -> int:
    """Exclusive upper end ceil(2g / a_n) of the j-range checked on a stratum."""
    return -(-2 * g // a_n)


def stratum_failures_enumerated(g: int, a_n: int) -> int:
    """Count j in [1, ceil(2g/a_n)) with (j a_n mod g) <= j, by enumeration."""
    hi = stratum_j_bound(g, a_n)
    step = a_n % g
    if hi * step <= WORD_MAX:
        j = np.arange(1, hi, dtype=np.int64)
        return int(np.count_nonzero(j * step % g <= j))
    return sum(1 for j in range(1, hi) if j * a_n % g <= j)


def stratum_failures_interval(g: int, a_n: int) -> int:
    """Same count as :func:`stratum_failures_enumerated`, in closed form.

    For j < 2g/a_n the quotient floor(j a_n / g) is 0 or 1.  When it is 0 the
    residue j a_n exceeds j automatically; when it is 1 the residue is
    j a_n - g, which exceeds j iff j (a_n - 1) > g.  Failures are therefore
    exactly the integers in [g/a_n, g/(a_n - 1)] below the bound.
    """
    if a_n < 2:
        return stratum_j_bound(g, a_n) - 1
    lo = max(1, -(-g // a_n))
    hi = min(g // (a_n - 1), stratum_j_bound(g, a_n) - 1)
    return max(0, hi - lo + 1)


@dataclass(frozen=True)
class StratumCheck:
    stratum: StratumDatum
    j_bound: int
    method: str
    failures: int
    m_divides: bool
    m_small: bool

    @property
    def ok(self) -> bool:
        return self.stratum.m is not None and self.m_divides and self.m_small and self.failures == 0


@dataclass(frozen=True)
class OtherPointsReport:
    coordinate_point: QuotientSingularity
    coordinate_point_bound: Fraction
    coordinate_point_method: str
    strata: tuple[StratumCheck, ...]
    away_bound: Fraction
    closed_form: Fraction

    @property
    def coordinate_point_ok(self) -> bool:
        return self.coordinate_point_bound >= Fraction(len(self.coordinate_point.weights), self.coordinate_point.r)

    @property
    def comparison_ok(self) -> bool:
        return self.away_bound > self.closed_form

    @property
    def ok(self) -> bool:
        return self.coordinate_point_ok and self.comparison_ok and all(s.ok for s in self.strata)

    def __bool__(self):
        return self.ok


def verify_other_points(F: FamilyMember, enumeration_limit: int = ENUMERATION_LIMIT, workers: int = 1) -> OtherPointsReport:
    """Check that quotient singularities off the non-quasismooth point have
    mld at least 2/a_n, and that 2/a_n beats the closed-form mld.

    Ranges up to ``enumeration_limit`` are enumerated; larger ones use the
    coprimality bound (coordinate point) or the closed-form interval count
    (strata), which compute the same answers.
    """
    a_n = F.a_n
    q = QuotientSingularity(a_n, F.a[:F.n])
    if a_n - 1 <= enumeration_limit:
        bound, method = cyclic_quotient_mld(q, workers=workers).value, "enumeration"
    else:
        bound, method = coprime_lower_bound(q) or Fraction(0), "coprime weights"

    checks = []
    for st in strata(F):
        hi = stratum_j_bound(st.g, a_n)
        if hi - 1 <= enumeration_limit:
            fails, how = stratum_failures_enumerated(st.g, a_n), "enumeration"
        else:
            fails, how = stratum_failures_interval(st.g, a_n), "interval"
        m = st.m or 0
        checks.append(StratumCheck(
            st, hi, how, fails,
            m_divides=m > 0 and (F.s_n - 1) % m == 0,
            m_small=6 * m <= F.s_n - 1,
        ))
    return OtherPointsReport(q, bound, method, tuple(checks), Fraction(2, a_n), closed_form_mld(F))


# -- aggregated certificate ---------------------------------------------------


@dataclass(frozen=True)
class FamilyCertificate:
    member: FamilyMember
    degree: CheckResult
    gcd: CheckResult
    quasismooth_pattern: CheckResult
    closed_form_mld: Fraction
    sylvester_form_mld: Fraction
    mld_identity_ok: bool
    asymptotics_ok: bool
    witness: MldResult
    brute_force_mld: Optional[MldResult]
    other_points: OtherPointsReport
    tangent_cone_klt_ok: bool
    alpha: "AlphaBounds"  # noqa: F821
    exceptional: CheckResult
    notes: tuple[str, ...] = ()

    @property
    def witness_ok(self) -> bool:
        return self.witness.value == self.closed_form_mld

    @property
    def brute_force_ok(self) -> bool:
        bf = self.brute_force_mld
        return bf is None or (bf.value == self.closed_form_mld and bf.witness_index == self.member.j0)

    def checks(self) -> dict[str, bool]:
        return {
            "degree_identities": bool(self.degree),
            "gcd_lemma": bool(self.gcd),
            "quasismooth_pattern": bool(self.quasismooth_pattern),
            "mld_identity": self.mld_identity_ok,
            "asymptotics": self.asymptotics_ok,
            "witness_j0": self.witness_ok,
            "brute_force_mld": self.brute_force_ok,
            "other_points": bool(self.other_points),
            "tangent_cone_klt": self.tangent_cone_klt_ok,
            "exceptional": bool(self.exceptional),
        }

    @property
    def ok(self) -> bool:
        return all(self.checks().values())


def certify(
    n: int,
    brute_force: bool = False,
    budget: Optional[int] = None,
    workers: int = 1,
    progress: Optional[ProgressFn] = None,
    enumeration_limit: int = ENUMERATION_LIMIT,
) -> FamilyCertificate:
    """Run every verification for X_n.

    The full scan runs only when ``brute_force`` is set and a_{n+1} fits in
    ``budget`` (no budget means no limit); otherwise only the witness check
    at j0 is recorded.
    """
    from mldlab.alpha import nu_bounds, tangent_cone_klt, verify_exceptional

    F = build_family(n)
    notes = []
    brute = None
    if brute_force:
        if budget is None or F.a_last <= budget:
            brute = mld_nonquasismooth(F, brute_force_budget=F.a_last, workers=workers, progress=progress)
        else:
            notes.append(f"brute force skipped: a_{n + 1} = {F.a_last} exceeds budget {budget}")
    if n == 2:
        notes.append("alpha upper bound is the generic one; a sharper value 39/4 is known for n = 2")
    return FamilyCertificate(
        member=F,
        degree=verify_degree_identities(F),
        gcd=verify_gcd_lemma(F),
        quasismooth_pattern=verify_quasismooth_pattern(F),
        closed_form_mld=closed_form_mld(F),
        sylvester_form_mld=sylvester_form_mld(F),
        mld_identity_ok=verify_mld_identity(F),
        asymptotics_ok=verify_asymptotics(F),
        witness=mld_nonquasismooth(F),
        brute_force_mld=brute,
        other_points=verify_other_points(F, enumeration_limit, workers=workers),
        tangent_cone_klt_ok=tangent_cone_klt(F),
        alpha=nu_bounds(F),
        exceptional=verify_exceptional(F),
        notes=tuple(notes),
    )
