"""Residue matrices against a brute-force 2x2 modular arithmetic oracle."""

import random

import pytest

from aimg.errors import IncompatibleResidues, NotInvertible
from aimg.modmatrix import ResidueMatrix, crt_combine, parse_matrix


def mat_mul_oracle(a, b, n):
    return (
        (a[0] * b[0] + a[1] * b[2]) % n,
        (a[0] * b[1] + a[1] * b[3]) % n,
        (a[2] * b[0] + a[3] * b[2]) % n,
        (a[2] * b[1] + a[3] * b[3]) % n,
    )


def test_mul_matches_oracle():
    rng = random.Random(1)
    for _ in range(300):
        n = rng.randrange(2, 30)
        a = tuple(rng.randrange(n) for _ in range(4))
        b = tuple(rng.randrange(n) for _ in range(4))
        got = (ResidueMatrix.from_tuple(a, n)
               * ResidueMatrix.from_tuple(b, n)).entries
        assert got == mat_mul_oracle(a, b, n)


def test_det_and_inverse():
    rng = random.Random(2)
    checked = 0
    for _ in range(500):
        n = rng.randrange(2, 25)
        a = tuple(rng.randrange(n) for _ in range(4))
        m = ResidueMatrix.from_tuple(a, n)
        assert m.det() == (a[0] * a[3] - a[1] * a[2]) % n
        if m.is_invertible():
            prod = (m * m.inv()).entries
            assert prod == (1 % n, 0, 0, 1 % n)
            checked += 1
        else:
            with pytest.raises(NotInvertible):
                m.inv()
    assert checked > 50


def test_transpose_and_reduce():
    m = ResidueMatrix.from_tuple((1, 2, 3, 4), 10)
    assert m.transpose().entries == (1, 3, 2, 4)
    assert m.reduce_mod(5).entries == (1, 2, 3, 4)
    assert m.reduce_mod(2).entries == (1, 0, 1, 0)


def test_crt_combine_recovers_both_parts():
    rng = random.Random(3)
    for _ in range(100):
        a = tuple(rng.randrange(4) for _ in range(4))
        b = tuple(rng.randrange(5) for _ in range(4))
        c = crt_combine(ResidueMatrix.from_tuple(a, 4),
                        ResidueMatrix.from_tuple(b, 5))
        assert c.modulus == 20
        assert c.reduce_mod(4).entries == a
        assert c.reduce_mod(5).entries == b


def test_crt_combine_non_coprime():
    # compatible residues at the shared factor combine to the lcm
    c = crt_combine(ResidueMatrix.identity(4), ResidueMatrix.identity(6))
    assert c.modulus == 12 and c.entries == (1, 0, 0, 1)
    with pytest.raises(IncompatibleResidues):
        crt_combine(ResidueMatrix.from_tuple((1, 0, 0, 1), 4),
                    ResidueMatrix.from_tuple((0, 0, 0, 1), 6))


def test_parse_matrix_roundtrip_and_errors():
    m = parse_matrix("[[1,2],[3,4]] mod 7")
    assert m.entries == (1, 2, 3, 4) and m.modulus == 7
    for bad in ("", "[[1,2],[3]] mod 7", "[[1,2],[3,4]] mod 0", "nonsense"):
        with pytest.raises(ValueError):
            parse_matrix(bad)
