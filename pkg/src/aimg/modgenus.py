"""Genus of the modular curve attached to an open subgroup of GL2(Zhat).

The curve is a quotient of the upper half plane by the SL2(Z)-preimage of
the SL2-part of ±G, so everything reduces to the permutation action of
S = [[0,-1],[1,0]] and T = [[1,1],[0,1]] on right cosets mod the level.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NonIntegralGenus
from .matgroup import FiniteMatrixGroup
from .modmatrix import tmul
from .opengroup import OpenSubgroup, full_sl2, intersect_sl2

__all__ = ["CosetAction", "GenusData", "coset_action", "genus"]


@dataclass(frozen=True)
class CosetAction:
    """Right-coset action of SL2(Z/N) restricted to S, T and ST.

    ``perm_s[i]`` is the index of coset_i * S; composition convention is
    left-to-right, so ``perm_st[i] == perm_t[perm_s[i]]``.
    """

    modulus: int
    degree: int
    perm_s: tuple
    perm_t: tuple
    perm_st: tuple


def _fixed_points(perm) -> int:
    return sum(1 for i, j in enumerate(perm) if i == j)


def _cycle_count(perm) -> int:
    seen = [False] * len(perm)
    cycles = 0
    for i in range(len(perm)):
        if seen[i]:
            continue
        cycles += 1
        j = i
        while not seen[j]:
            seen[j] = True
            j = perm[j]
    return cycles


def coset_action(G: OpenSubgroup) -> CosetAction:
    """The action of S and T on right cosets of the SL2-part of ±G."""
    Gpm = G.with_minus_i()
    n = Gpm.level
    if n == 1:
        return CosetAction(1, 1, (0,), (0,), (0,))
    H = intersect_sl2(Gpm)
    hset = H.element_set
    sl = full_sl2(n)

    coset_of = {}
    reps = []
    for x in sorted(sl.elements):
        if x in coset_of:
            continue
        idx = len(reps)
        reps.append(x)
        for h in hset:
            coset_of[tmul(h, x, n)] = idx
    d = len(reps)

    S = (0, -1 % n, 1, 0)
    T = (1, 1, 0, 1)
    perm_s = tuple(coset_of[tmul(r, S, n)] for r in reps)
    perm_t = tuple(coset_of[tmul(r, T, n)] for r in reps)
    perm_st = tuple(perm_t[perm_s[i]] for i in range(d))
    return CosetAction(n, d, perm_s, perm_t, perm_st)


@dataclass(frozen=True)
class GenusData:
    genus: int
    degree: int
    e2: int
    e3: int
    e_inf: int


def genus(G: OpenSubgroup) -> GenusData:
    """Genus of the curve, with the (d, e2, e3, eInf) breakdown.

    g = 1 + d/12 - e2/4 - e3/3 - eInf/2 where e2, e3 count fixed points of
    the S and ST permutations and eInf counts T-cycles (cusps).
    """
    act = coset_action(G)
    d = act.degree
    e2 = _fixed_points(act.perm_s)
    e3 = _fixed_points(act.perm_st)
    e_inf = _cycle_count(act.perm_t)
    num = 12 + d - 3 * e2 - 4 * e3 - 6 * e_inf
    if num % 12 != 0 or num < 0:
        raise NonIntegralGenus(
            f"d={d}, e2={e2}, e3={e3}, eInf={e_inf} gives 12g = {num}")
    return GenusData(num // 12, d, e2, e3, e_inf)
