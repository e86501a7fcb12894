"""Open subgroups of GL2(Zhat): finite images, levels, commutators."""

import math
import random

import pytest

from aimg.errors import SchemaError
from aimg.matgroup import FiniteMatrixGroup, closure
from aimg.modmatrix import ResidueMatrix
from aimg.opengroup import (
    OpenSubgroup,
    commutator_index_class,
    commutator_open,
    det_image,
    full_gl2,
    gl2_order,
    intersect_sl2,
    minimal_level,
    sl2_order,
    transpose_group,
)


def RM(t, n):
    return ResidueMatrix.from_tuple(t, n)


A3_PREIMAGE = OpenSubgroup(2, (RM((0, 1, 1, 1), 2),))


def test_full_group_images():
    G = OpenSubgroup.full()
    for L in (1, 2, 3, 4, 5, 6, 8):
        assert G.finite_image(L).order == gl2_order(L)
    assert G.index_in_gl2() == 1
    assert G.contains_minus_i()


def test_finite_image_is_full_preimage():
    # image mod 4 of a level-2 group must be the full preimage of the
    # mod-2 image: index preserved
    img4 = A3_PREIMAGE.finite_image(4)
    assert img4.order == gl2_order(4) // 2
    reduced = {tuple(v % 2 for v in t) for t in img4.elements}
    assert len(reduced) == 3  # A3 inside GL2(F2)
    # new prime: mod 6 image picks up the full GL2(Z/3) factor
    img6 = A3_PREIMAGE.finite_image(6)
    assert img6.order == 3 * gl2_order(3)


def test_minimal_level():
    # full group presented redundantly at level 6
    G6 = OpenSubgroup.from_group(full_gl2(6))
    assert minimal_level(G6).level == 1
    # level-2 group presented at level 4
    lifted = OpenSubgroup.from_group(A3_PREIMAGE.finite_image(4))
    m = minimal_level(lifted)
    assert m.level == 2
    assert m.mod_level_group().order == 3


def test_det_image_and_sl2_part():
    assert det_image(OpenSubgroup.full()).full
    assert det_image(A3_PREIMAGE).full  # (Z/2)^x is trivial
    sl = intersect_sl2(A3_PREIMAGE)
    assert sl.order * 2 == sl2_order(2)  # A3 = index 2 in SL2(Z/2)=S3


def test_transpose_group_involution():
    G = OpenSubgroup(4, (RM((1, 2, 3, 1), 4), RM((0, 1, 3, 0), 4)))
    T = transpose_group(G)
    assert transpose_group(T).mod_level_group().element_set == \
        G.mod_level_group().element_set
    expect = {tuple((t[0], t[2], t[1], t[3])) for t in
              G.mod_level_group().elements}
    assert T.mod_level_group().element_set == expect


def test_json_roundtrip_and_schema_errors():
    d = A3_PREIMAGE.to_json_dict()
    assert d == {"level": 2, "gens": [[0, 1, 1, 1]]}
    assert OpenSubgroup.from_json_dict(d).mod_level_group().element_set == \
        A3_PREIMAGE.mod_level_group().element_set
    for bad in ({}, {"level": 0, "gens": []}, {"level": 2, "gens": [[1, 2]]},
                {"level": 2, "gens": [[2, 0, 0, 2]]}, {"level": "x", "gens": []}):
        with pytest.raises(SchemaError):
            OpenSubgroup.from_json_dict(bad)


def commutator_contains_all_commutators(res, G, L):
    """Independent spot check: [G, G] mod L contains every commutator of
    the finite image mod L."""
    img = G.finite_image(L)
    comm_img = res.commutator.finite_image(L).element_set
    rng = random.Random(5)
    elems = img.elements
    n = L
    for _ in range(200):
        a = rng.choice(elems)
        b = rng.choice(elems)
        am = RM(a, n)
        bm = RM(b, n)
        c = (am * bm * am.inv() * bm.inv()).entries
        assert c in comm_img


def test_commutator_full_group():
    res = commutator_open(OpenSubgroup.full())
    assert res.index_in_sl == 2
    assert res.det_full
    # the commutator reduces mod 2 onto A3
    assert res.commutator.finite_image(2).order == 3
    commutator_contains_all_commutators(res, OpenSubgroup.full(), 24)
    # index oracle at a deep level: |SL2 mod L| over the det-1 part of the
    # commutator's image (the commutator denotes an SL2-preimage)
    det1 = sum(1 for t in res.commutator.finite_image(24).elements
               if (t[0] * t[3] - t[1] * t[2]) % 24 == 1)
    assert sl2_order(24) // det1 == 2


def test_commutator_of_sl2_preimage_mod3():
    # G = preimage of SL2(Z/3): SL2-part is everything, abelianization of
    # SL2(Zhat) gives the index
    G = OpenSubgroup(3, (RM((1, 1, 0, 1), 3), RM((0, 2, 1, 0), 3)))
    res = commutator_open(G)
    img = G.finite_image(res.saturation_level)
    # independent: brute-force commutator closure at the saturation level
    n = res.saturation_level
    gens = []
    elems = img.elements
    rng = random.Random(7)
    for _ in range(300):
        a, b = rng.choice(elems), rng.choice(elems)
        am, bm = RM(a, n), RM(b, n)
        gens.append(am * bm * am.inv() * bm.inv())
    brute = closure(gens)
    assert brute.order == res.commutator.finite_image(n).order
    sl_count = sum(1 for e in elems
                   if (e[0] * e[3] - e[1] * e[2]) % n == 1)
    assert sl_count // brute.order == res.index_in_sl


def test_commutator_index_class_kinds():
    assert commutator_index_class(OpenSubgroup.full()).kind == "index_two"
    full_sl_pre = OpenSubgroup(2, tuple(
        RM(t, 2) for t in ((1, 1, 0, 1), (0, 1, 1, 0))))
    # preimage of full GL2(Z/2) is the full group again
    assert commutator_index_class(full_sl_pre).kind == "index_two"


def test_cap_order_env(monkeypatch):
    from aimg.errors import ResourceExceeded
    monkeypatch.setenv("AIMG_CAP_ORDER", "100")
    with pytest.raises(ResourceExceeded):
        A3_PREIMAGE.finite_image(8).elements
