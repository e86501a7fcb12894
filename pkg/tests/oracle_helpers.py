"""Independent oracles shared by the module tests and the acceptance suite.

Everything here is written from first principles on integer tuples and
deliberately avoids the library's own group machinery.
"""

import itertools
import math


def mat_mul(x, y, n):
    return (
        (x[0] * y[0] + x[1] * y[2]) % n,
        (x[0] * y[1] + x[1] * y[3]) % n,
        (x[2] * y[0] + x[3] * y[2]) % n,
        (x[2] * y[1] + x[3] * y[3]) % n,
    )


def sl2_elements(n):
    if n == 1:
        return [(0, 0, 0, 0)]
    return [t for t in itertools.product(range(n), repeat=4)
            if (t[0] * t[3] - t[1] * t[2]) % n == 1]


def bfs_closure(gens, n):
    ident = (1 % n, 0, 0, 1 % n)
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = mat_mul(x, g, n)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def coset_permutations(h_elems, n):
    """Permutations of the right cosets of H in SL2(Z/n) under right
    multiplication by S, T and ST.  H gets -I adjoined first."""
    minus_i = ((-1) % n, 0, 0, (-1) % n)
    h = bfs_closure(set(h_elems) | {minus_i}, n)
    ambient = sl2_elements(n)
    coset_of = {}
    reps = []
    for g in sorted(ambient):
        if g in coset_of:
            continue
        idx = len(reps)
        reps.append(g)
        for x in h:
            coset_of[mat_mul(x, g, n)] = idx
    S = (0, (-1) % n, 1 % n, 0)
    T = (1 % n, 1 % n, 0, 1 % n)
    perm_s = [coset_of[mat_mul(r, S, n)] for r in reps]
    perm_t = [coset_of[mat_mul(r, T, n)] for r in reps]
    perm_st = [perm_t[perm_s[i]] for i in range(len(reps))]
    return perm_s, perm_t, perm_st


def cycle_count(perm):
    seen = [False] * len(perm)
    count = 0
    for i in range(len(perm)):
        if seen[i]:
            continue
        count += 1
        j = i
        while not seen[j]:
            seen[j] = True
            j = perm[j]
    return count


def riemann_hurwitz_genus(h_elems, n):
    """Genus of the modular curve of H by Riemann-Hurwitz over the j-line:
    2g - 2 = -2d + sum over the three branch monodromies of (d - #cycles).
    """
    perm_s, perm_t, perm_st = coset_permutations(h_elems, n)
    d = len(perm_s)
    ram = sum(d - cycle_count(p) for p in (perm_s, perm_st, perm_t))
    two_g_minus_2 = -2 * d + ram
    assert two_g_minus_2 % 2 == 0
    return (two_g_minus_2 + 2) // 2


def squarefree_kernel(n):
    """Squarefree part of a nonzero integer by trial division."""
    sign = -1 if n < 0 else 1
    n = abs(n)
    out = 1
    d = 2
    while d * d <= n:
        e = 0
        while n % d == 0:
            n //= d
            e += 1
        if e % 2:
            out *= d
        d += 1
    return sign * out * n


def quad_disc(d):
    """Discriminant of Q(sqrt(d)) for squarefree d != 0, 1."""
    return d if d % 4 == 1 else 4 * d


def quad_in_cyclotomic(d, n):
    """Q(sqrt(d)) lies in Q(zeta_n) iff |disc(Q(sqrt(d)))| divides n
    (conductor-discriminant; the Gauss sum realizes sqrt(disc) in
    Q(zeta_|disc|))."""
    return n % abs(quad_disc(d)) == 0


def biquadratic_factor_degrees(p, q):
    """Degrees of the irreducible factors of x^4 + p x^2 + q over Q, for
    integers p, q, by the elementary case analysis for x^4 + a x^3 + ...:
    any factorization over Q is (x^2+ax+b)(x^2-ax+c) with rational a,b,c
    or has a rational (hence paired +-) root."""
    from fractions import Fraction

    def is_sq(r):
        if r < 0:
            return False
        num, den = r.numerator, r.denominator
        sn, sd = math.isqrt(num), math.isqrt(den)
        return sn * sn == num and sd * sd == den

    p = Fraction(p)
    q = Fraction(q)
    disc = p * p - 4 * q
    # a = 0 split: resolvent quadratic in x^2 factors
    if is_sq(disc):
        r1 = (-p + _fr_sqrt(disc)) / 2
        r2 = (-p - _fr_sqrt(disc)) / 2
        d1 = [1, 1] if is_sq(r1) else [2]
        d2 = [1, 1] if is_sq(r2) else [2]
        return sorted(d1 + d2)
    # b = c split: q must be a square, a^2 = 2b - p for b = +-sqrt(q)
    if is_sq(q):
        s = _fr_sqrt(q)
        for b in (s, -s):
            if is_sq(2 * b - p):
                return [2, 2]
    return [4]


def _fr_sqrt(r):
    from fractions import Fraction
    return Fraction(math.isqrt(r.numerator), math.isqrt(r.denominator))
