"""Commutator subgroups of open subgroups of GL2(Zhat).

The headline fact: the closure of the commutator subgroup of the full
group GL2(Zhat) has index exactly 2 inside SL2(Zhat), so an elliptic
curve over Q can never have adelic image all of GL2(Zhat).  This script
computes that index, shows where the defect lives (level 2), and then
runs the same computation on a couple of smaller groups.

Run:  python3 demos/commutator_walkthrough.py
"""

from aimg import (
    OpenSubgroup,
    ResidueMatrix,
    commutator_open,
    sl2_order,
)


def show(name, G):
    res = commutator_open(G)
    print(f"{name}:")
    print(f"  index of [G, G] in G's SL2-part : {res.index_in_sl}")
    print(f"  saturation level                : {res.saturation_level}")
    print(f"  commutator level                : {res.commutator.level}")
    print(f"  det(G) = Zhat^x                 : {res.det_full}")
    return res


def main():
    res = show("GL2(Zhat)", OpenSubgroup.full())

    # the defect is visible already mod 2: SL2(Z/2) = S3 has abelianization
    # C2, and the commutator's mod-2 image is the 3-element rotation group
    img = res.commutator.finite_image(2)
    sl_part = [e for e in img.elements
               if (e[0] * e[3] - e[1] * e[2]) % 2 == 1]
    print(f"  mod-2 SL2-part of [G, G]        : {len(sl_part)} of "
          f"{sl2_order(2)} elements\n")

    # the SL2(Z/3)-preimage: index 2 in GL2(Zhat) by the determinant mod 3
    H3 = OpenSubgroup(3, (ResidueMatrix.from_tuple((1, 1, 0, 1), 3),
                          ResidueMatrix.from_tuple((0, 2, 1, 0), 3)))
    show("SL2(Z/3)-preimage", H3)
    print()

    # a Borel preimage mod 3: small SL2-part, bigger commutator defect
    B3 = OpenSubgroup(3, (ResidueMatrix.from_tuple((1, 1, 0, 1), 3),
                          ResidueMatrix.from_tuple((2, 0, 0, 1), 3),
                          ResidueMatrix.from_tuple((1, 0, 0, 2), 3)))
    show("Borel-mod-3 preimage", B3)


if __name__ == "__main__":
    main()
