"""Independent reference implementations used only by the tests.

They share no code with the package: plain loops over Fractions, no
numerator tricks, no numpy, no candidate-set reduction.
"""

from fractions import Fraction
from itertools import combinations, product
from math import gcd


def cyclic_mld_oracle(r, weights):
    """Generate the subgroup of (R/Z)^s spanned by (b_1/r, ..., b_s/r) by
    repeated addition mod 1, then minimize the coordinate sum over the
    nonzero elements.  Capped at 1."""
    gen = tuple(Fraction(b % r, r) for b in weights)
    zero = tuple(Fraction(0) for _ in weights)
    seen, point = set(), gen
    while point != zero and point not in seen:
        seen.add(point)
        point = tuple((x + y) % 1 for x, y in zip(point, gen))
    return min([Fraction(1)] + [sum(p) for p in seen])


def sylvester_oracle(k):
    """s_k as (product of all earlier terms) + 1."""
    terms = [2]
    while len(terms) <= k:
        prod = 1
        for t in terms:
            prod *= t
        terms.append(prod + 1)
    return terms[k]


def box_lattice_mld(monomials, r, a, box=2):
    """Minimum of beta(x_0...x_n) - beta(f) over every lattice point
    beta_j + z with z integral, 0 <= z_i <= box, beta != 0.

    A direct search over a window of N intersected with the positive orthant.
    """
    dim = len(a)
    best = None
    for j in range(r):
        base = [Fraction(j * ai % r, r) for ai in a]
        for z in product(range(box + 1), repeat=dim):
            beta = [b + zi for b, zi in zip(base, z)]
            if not any(beta):
                continue
            low = min(sum(c * e for c, e in zip(beta, m)) for m in monomials)
            v = sum(beta) - low
            if best is None or v < best:
                best = v
    return best


def lp_vertex_oracle(c, A, b):
    """max c.y s.t. A y <= b, y >= 0 by enumerating all basic solutions.

    Each vertex is the solution of n active constraints chosen among the
    m rows and the n bounds y_i >= 0; solved with Fraction Gaussian
    elimination.  Returns None if there is no feasible vertex.
    """
    m, n = len(A), len(c)
    rows = [list(map(Fraction, A[i])) + [Fraction(b[i])] for i in range(m)]
    rows += [[Fraction(int(k == i)) for k in range(n)] + [Fraction(0)] for i in range(n)]
    best = None
    for active in combinations(range(m + n), n):
        y = _solve([rows[i][:] for i in active], n)
        if y is None:
            continue
        if any(v < 0 for v in y):
            continue
        if any(sum(Fraction(A[i][k]) * y[k] for k in range(n)) > b[i] for i in range(m)):
            continue
        val = sum(Fraction(ci) * yi for ci, yi in zip(c, y))
        if best is None or val > best:
            best = val
    return best


def _solve(M, n):
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col] != 0), None)
        if piv is None:
            return None
        M[col], M[piv] = M[piv], M[col]
        for r in range(n):
            if r != col and M[r][col] != 0:
                f = M[r][col] / M[col][col]
                M[r] = [x - f * y for x, y in zip(M[r], M[col])]
    return [M[i][n] / M[i][i] for i in range(n)]


def well_formed(r, weights):
    for i in range(len(weights)):
        g = r
        for k, b in enumerate(weights):
            if k != i:
                g = gcd(g, b)
        if g != 1:
            return False
    return True
