"""Modular-curve genus against a Riemann-Hurwitz oracle."""

from aimg.matgroup import FiniteMatrixGroup, all_subgroups_up_to_conjugacy
from aimg.modgenus import coset_action, genus
from aimg.modmatrix import ResidueMatrix
from aimg.opengroup import OpenSubgroup, full_sl2

from oracle_helpers import riemann_hurwitz_genus


def open_subgroup_of(elems, n):
    g = FiniteMatrixGroup.from_elements(sorted(elems), n)
    return OpenSubgroup.from_group(g)


def test_full_level_one():
    gd = genus(OpenSubgroup.full())
    assert (gd.genus, gd.degree) == (0, 1)


def test_genus_sweep_small_levels():
    # N = 7, 8 are covered by the acceptance suite's full sweep
    for N in (2, 3, 4, 5, 6):
        for sub in all_subgroups_up_to_conjugacy(full_sl2(N)):
            gd = genus(open_subgroup_of(sub, N))
            assert gd.genus == riemann_hurwitz_genus(sub, N), (N, sorted(sub))


def test_plus_minus_gamma_5_and_7():
    for N, expected in ((5, 0), (7, 3)):
        G = OpenSubgroup(
            N, (ResidueMatrix.from_tuple((N - 1, 0, 0, N - 1), N),))
        gd = genus(G)
        assert gd.genus == expected
        assert gd.degree == full_sl2(N).order // 2


def test_coset_action_shape():
    G = OpenSubgroup(2, (ResidueMatrix.from_tuple((0, 1, 1, 1), 2),))
    act = coset_action(G)
    assert act.degree == len(act.perm_s) == len(act.perm_t)
    # perms are bijections
    assert sorted(act.perm_s) == list(range(act.degree))
    assert sorted(act.perm_t) == list(range(act.degree))
    # (st)^3 fixes every coset in PSL2
    p = act.perm_st
    triple = [p[p[p[i]]] for i in range(act.degree)]
    assert triple == list(range(act.degree))


def test_genus_formula_consistency():
    # e2, e3, e_inf reported by genus() must satisfy the closed formula
    for N in (3, 4, 5):
        for sub in all_subgroups_up_to_conjugacy(full_sl2(N)):
            gd = genus(open_subgroup_of(sub, N))
            num = 12 + gd.degree - 3 * gd.e2 - 4 * gd.e3 - 6 * gd.e_inf
            assert num == 12 * gd.genus
