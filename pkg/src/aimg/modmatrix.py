"""Exact arithmetic for 2x2 matrices over Z/NZ.

Matrices are immutable values with structural equality; all arithmetic is
exact integer arithmetic.  The canonical form is the fully reduced entry
tuple, which makes matrices hashable and usable as dictionary keys in the
closure algorithms.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

from .errors import IncompatibleResidues, ModulusMismatch, NotADivisor, NotInvertible

__all__ = [
    "ResidueMatrix",
    "crt_combine",
    "parse_matrix",
]


# Raw tuple helpers.  The hot loops (closure, derived subgroups) work on
# plain (a, b, c, d) tuples to avoid object overhead; ResidueMatrix is the
# public value type wrapping them.

def tmul(x, y, n):
    a, b, c, d = x
    e, f, g, h = y
    return ((a * e + b * g) % n, (a * f + b * h) % n,
            (c * e + d * g) % n, (c * f + d * h) % n)


def tdet(x, n):
    a, b, c, d = x
    return (a * d - b * c) % n


def tinv(x, n):
    a, b, c, d = x
    det = (a * d - b * c) % n
    g = math.gcd(det, n)
    if g != 1:
        raise NotInvertible(f"det {det} shares factor {g} with modulus {n}")
    di = pow(det, -1, n)
    return ((d * di) % n, (-b * di) % n, (-c * di) % n, (a * di) % n)


def ttranspose(x):
    a, b, c, d = x
    return (a, c, b, d)


TID = (1, 0, 0, 1)


@dataclass(frozen=True, order=True)
class ResidueMatrix:
    """A 2x2 matrix [[a, b], [c, d]] over Z/NZ."""

    modulus: int
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError("modulus must be a positive integer")
        n = self.modulus
        object.__setattr__(self, "a", self.a % n)
        object.__setattr__(self, "b", self.b % n)
        object.__setattr__(self, "c", self.c % n)
        object.__setattr__(self, "d", self.d % n)

    @classmethod
    def identity(cls, modulus: int) -> "ResidueMatrix":
        return cls(modulus, 1, 0, 0, 1)

    @classmethod
    def from_tuple(cls, t, modulus: int) -> "ResidueMatrix":
        return cls(modulus, t[0], t[1], t[2], t[3])

    @property
    def entries(self):
        return (self.a, self.b, self.c, self.d)

    def _check_same_modulus(self, other: "ResidueMatrix"):
        if self.modulus != other.modulus:
            raise ModulusMismatch(
                f"moduli differ: {self.modulus} vs {other.modulus}")

    def __mul__(self, other: "ResidueMatrix") -> "ResidueMatrix":
        self._check_same_modulus(other)
        return ResidueMatrix.from_tuple(
            tmul(self.entries, other.entries, self.modulus), self.modulus)

    def det(self) -> int:
        return tdet(self.entries, self.modulus)

    def is_invertible(self) -> bool:
        return math.gcd(self.det(), self.modulus) == 1

    def inv(self) -> "ResidueMatrix":
        return ResidueMatrix.from_tuple(
            tinv(self.entries, self.modulus), self.modulus)

    def transpose(self) -> "ResidueMatrix":
        return ResidueMatrix(self.modulus, self.a, self.c, self.b, self.d)

    def reduce_mod(self, m: int) -> "ResidueMatrix":
        if m < 1 or self.modulus % m != 0:
            raise NotADivisor(f"{m} does not divide modulus {self.modulus}")
        return ResidueMatrix(m, self.a, self.b, self.c, self.d)

    def __repr__(self):
        return f"[[{self.a},{self.b}],[{self.c},{self.d}]] mod {self.modulus}"


def crt_combine(x: ResidueMatrix, y: ResidueMatrix) -> ResidueMatrix:
    """Entrywise CRT lift of x mod m1 and y mod m2 to lcm(m1, m2).

    The inputs must agree after reduction mod gcd(m1, m2).
    """
    m1, m2 = x.modulus, y.modulus
    g = math.gcd(m1, m2)
    lcm = m1 // g * m2
    entries = []
    for e1, e2 in zip(x.entries, y.entries):
        if (e1 - e2) % g != 0:
            raise IncompatibleResidues(
                f"residues {e1} mod {m1} and {e2} mod {m2} conflict mod {g}")
        # e = e1 + m1 * t with e ≡ e2 mod m2
        t = ((e2 - e1) // g * pow(m1 // g, -1, m2 // g)) % (m2 // g)
        entries.append((e1 + m1 * t) % lcm)
    return ResidueMatrix(lcm, *entries)


_MATRIX_RE = re.compile(
    r"^\s*\[\s*\[\s*(-?\d+)\s*,\s*(-?\d+)\s*\]\s*,"
    r"\s*\[\s*(-?\d+)\s*,\s*(-?\d+)\s*\]\s*\]\s*mod\s+(\d+)\s*$")


def parse_matrix(text: str) -> ResidueMatrix:
    """Parse the literal format ``[[a,b],[c,d]] mod N``."""
    m = _MATRIX_RE.match(text)
    if m is None:
        raise ValueError(f"not a matrix literal: {text!r}")
    a, b, c, d, n = (int(m.group(i)) for i in range(1, 6))
    return ResidueMatrix(n, a, b, c, d)
