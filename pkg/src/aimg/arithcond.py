"""Arithmetic conditions on the rational parameter v.

Covers the table-side predicates: squarefree tests, rational squares,
whether Q(sqrt(d)) meets a cyclotomic field K_M or tower K_{M^infinity}
beyond Q, the quartic x^4 + p x^2 + q degree/intersection classifier, the
two shipped nested-radical minimal polynomials, and a small condition
expression language with a JSON schema and a traced evaluator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import sympy

from .errors import (
    DegenerateQuartic,
    DegenerateRadicand,
    SchemaError,
    UnsupportedShape,
    ZeroInput,
)
from .ratfunc import INFINITY, RationalMap, evaluate

__all__ = [
    "squarefree_part",
    "is_rational_square",
    "quad_cyc_trivial",
    "quartic_condition",
    "nested_radical_min_poly",
    "VCondition",
    "parse_vcondition",
    "eval_condition",
    "ConditionResult",
    "NOT_DEGREE4",
    "DEGREE4_TRIVIAL",
    "DEGREE4_NONTRIVIAL",
]


def _factor(n: int):
    return dict(sympy.factorint(n))


def squarefree_part(q) -> int:
    """The unique squarefree integer d (same sign as q) with q/d a
    rational square."""
    q = Fraction(q)
    if q == 0:
        raise ZeroInput("0 has no squarefree part")
    n = q.numerator * q.denominator  # q = n / denominator^2
    d = 1
    for p, e in _factor(abs(n)).items():
        if e % 2:
            d *= p
    return d if n > 0 else -d


def is_rational_square(q) -> bool:
    q = Fraction(q)
    if q < 0:
        return False
    if q == 0:
        return True
    a, b = q.numerator, q.denominator
    return math.isqrt(a) ** 2 == a and math.isqrt(b) ** 2 == b


def _field_disc(d0: int) -> int:
    """Discriminant of Q(sqrt(d0)) for squarefree d0 != 1."""
    return d0 if d0 % 4 == 1 else 4 * d0


def quad_cyc_trivial(d, M: int, mode: str = "tower") -> bool:
    """Whether Q(sqrt(d)) ∩ K = Q for K = K_{M^inf} (tower) or K_M
    (fixed).

    Q(sqrt(d)) lies in Q(zeta_m) exactly when the field discriminant
    divides m; in the tower this becomes a support condition on the
    primes of M.  Squares give Q(sqrt(d)) = Q, trivially true.
    """
    if mode not in ("tower", "fixed"):
        raise ValueError(f"mode must be 'tower' or 'fixed', got {mode!r}")
    if M < 1:
        raise ValueError("M must be positive")
    d0 = squarefree_part(d)
    if d0 == 1:
        return True
    disc = _field_disc(d0)
    if mode == "fixed":
        return M % abs(disc) != 0
    m_primes = set(_factor(M)) if M > 1 else set()
    return not set(_factor(abs(disc))) <= m_primes


NOT_DEGREE4 = "NotDegree4"
DEGREE4_TRIVIAL = "Degree4TrivialIntersection"
DEGREE4_NONTRIVIAL = "Degree4NontrivialIntersection"


def _biquadratic_reducible(p: Fraction, q: Fraction) -> bool:
    """Reducibility of x^4 + p x^2 + q over Q."""
    if is_rational_square(p * p - 4 * q):
        return True
    if is_rational_square(q):
        r = Fraction(math.isqrt(q.numerator), math.isqrt(q.denominator))
        return is_rational_square(2 * r - p) or \
            is_rational_square(-2 * r - p)
    return False


def quartic_condition(p, q, M: int = 2) -> str:
    """Degree and K_{M^inf}-intersection classification of the field
    generated by a root of x^4 + p x^2 + q.

    NotDegree4 when reducible.  Otherwise the Galois type decides which
    quadratic subfields exist: V4 (q a square) has three, C4 and D4 have
    the single subfield Q(sqrt(p^2-4q)); the intersection with the tower
    is trivial exactly when no quadratic subfield lies in it.
    """
    p, q = Fraction(p), Fraction(q)
    if q == 0 or p * p == 4 * q:
        raise DegenerateQuartic(
            "x^4 + p x^2 + q has zero discriminant")
    if _biquadratic_reducible(p, q):
        return NOT_DEGREE4
    res = p * p - 4 * q
    if is_rational_square(q):
        # V4: subfields Q(sqrt(-p+2s)), Q(sqrt(-p-2s)), Q(sqrt(p^2-4q))
        r = Fraction(math.isqrt(q.numerator), math.isqrt(q.denominator))
        radicands = (-p + 2 * r, -p - 2 * r, res)
    else:
        # C4 or D4: the unique quadratic subfield is Q(sqrt(p^2-4q)), and
        # the full field contains it, so the intersection is trivial iff
        # that subfield avoids the tower
        radicands = (res,)
    if all(quad_cyc_trivial(d, M, "tower") for d in radicands if d != 0):
        return DEGREE4_TRIVIAL
    return DEGREE4_NONTRIVIAL


NESTED_RADICAL_SHAPES = ("pi4", "pi6")


def nested_radical_min_poly(shape: str, v) -> tuple:
    """Degree-4 integer minimal polynomial (ascending coefficients, unit
    content) of the displayed nested radical.

    Shapes: "pi4" is -sqrt(v^2+16)/4 + (1/2) sqrt(v^2/2
    - (v^3+16v)/(2 sqrt(v^2+16)) + 8); "pi6" is the same with v^2-16,
    v^3-16v and no +8 term.
    """
    if shape not in NESTED_RADICAL_SHAPES:
        raise UnsupportedShape(f"unknown nested-radical shape {shape!r}")
    v = Fraction(v)
    vs = sympy.Rational(v.numerator, v.denominator)
    if shape == "pi4":
        inner = vs ** 2 + 16
        second = vs ** 2 / 2 - (vs ** 3 + 16 * vs) / (2 * sympy.sqrt(inner)) + 8
    else:
        inner = vs ** 2 - 16
        second = vs ** 2 / 2 - (vs ** 3 - 16 * vs) / (2 * sympy.sqrt(inner))
    if inner == 0:
        raise DegenerateRadicand(f"inner radicand vanishes at v = {v}")
    if second == 0:
        raise DegenerateRadicand(f"outer radicand vanishes at v = {v}")
    expr = -sympy.sqrt(inner) / 4 + sympy.sqrt(second) / 2
    x = sympy.Symbol("x")
    poly = sympy.minimal_polynomial(expr, x, polys=True)
    coeffs = [int(c) for c in reversed(poly.all_coeffs())]
    if len(coeffs) != 5:
        raise DegenerateRadicand(
            f"radical generates a degree-{len(coeffs) - 1} extension "
            f"at v = {v}")
    g = math.gcd(*(abs(c) for c in coeffs))
    coeffs = [c // g for c in coeffs]
    if coeffs[-1] < 0:
        coeffs = [-c for c in coeffs]
    # numeric validation only; all decisions above are exact
    theta = complex(sympy.N(expr, 30))
    val = sum(c * theta ** k for k, c in enumerate(coeffs))
    scale = max(abs(c) * max(1.0, abs(theta)) ** k
                for k, c in enumerate(coeffs))
    assert abs(val) <= 1e-9 * scale, (coeffs, theta, val)
    return tuple(coeffs)


# --- condition expression language ---


def _peval_int(poly, v: Fraction) -> Fraction:
    out = Fraction(0)
    for c in reversed(poly):
        out = out * v + c
    return out


@dataclass(frozen=True)
class Leaf:
    kind: str
    params: dict = field(default_factory=dict)

    def describe(self) -> str:
        if not self.params:
            return self.kind
        inner = ", ".join(f"{k}={v}" for k, v in sorted(self.params.items()))
        return f"{self.kind}({inner})"


@dataclass(frozen=True)
class VCondition:
    """Conjunction of leaf predicates on the parameter v."""

    leaves: tuple

    def to_json_dict(self) -> dict:
        def plain(x):
            if isinstance(x, tuple):
                return [plain(y) for y in x]
            if isinstance(x, Fraction):
                return int(x) if x.denominator == 1 else str(x)
            return x

        out = []
        for leaf in self.leaves:
            d = {"kind": leaf.kind}
            d.update({k: plain(v) for k, v in leaf.params.items()})
            out.append(d)
        return {"all": out}


_LEAF_KINDS = {
    "squarefree_not_pm1": (),
    "not_square": ("poly",),
    "quad_cyc_trivial": ("poly", "M", "mode"),
    "quartic_degree4": ("p_poly", "q_poly"),
    "quartic_cyc_trivial": ("p_poly", "q_poly", "M"),
    "specific_set": ("values",),
    "cubic_irreducible_proxy": ("coeff_polys",),
}


def _check_poly(x, where):
    if not (isinstance(x, list) and x
            and all(isinstance(c, int) and not isinstance(c, bool)
                    for c in x)):
        raise SchemaError(f"{where}: expected a nonempty integer "
                          f"coefficient list, got {x!r}")
    return [int(c) for c in x]


def _parse_rational(x, where):
    if isinstance(x, int) and not isinstance(x, bool):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x)
        except ValueError:
            pass
    raise SchemaError(f"{where}: expected an integer or 'num/den' string, "
                      f"got {x!r}")


def parse_vcondition(data) -> VCondition:
    """Parse the `{"all": [{"kind": ...}, ...]}` schema."""
    if not isinstance(data, dict) or "all" not in data \
            or not isinstance(data["all"], list):
        raise SchemaError("condition JSON must be {'all': [...]}")
    leaves = []
    for i, item in enumerate(data["all"]):
        where = f"condition leaf {i}"
        if not isinstance(item, dict) or "kind" not in item:
            raise SchemaError(f"{where}: missing 'kind'")
        kind = item["kind"]
        if kind not in _LEAF_KINDS:
            raise SchemaError(f"{where}: unknown kind {kind!r}")
        params = {}
        for key in _LEAF_KINDS[kind]:
            if key == "mode":
                params["mode"] = item.get("mode", "tower")
                if params["mode"] not in ("tower", "fixed"):
                    raise SchemaError(f"{where}: bad mode")
                continue
            if key not in item:
                raise SchemaError(f"{where}: missing {key!r}")
            val = item[key]
            if key in ("poly", "p_poly", "q_poly"):
                params[key] = tuple(_check_poly(val, where))
            elif key == "M":
                if not isinstance(val, int) or val < 1:
                    raise SchemaError(f"{where}: bad modulus {val!r}")
                params[key] = val
            elif key == "values":
                if not isinstance(val, list):
                    raise SchemaError(f"{where}: values must be a list")
                params[key] = tuple(_parse_rational(x, where) for x in val)
            elif key == "coeff_polys":
                if not (isinstance(val, list) and len(val) == 4):
                    raise SchemaError(
                        f"{where}: coeff_polys must list 4 polynomials "
                        f"(x^3 down to constant)")
                params[key] = tuple(
                    tuple(_check_poly(p, where)) for p in val)
        leaves.append(Leaf(kind, params))
    return VCondition(tuple(leaves))


@dataclass
class ConditionResult:
    ok: bool
    trace: list  # (leaf description, verdict, reason)


def _cubic_irreducible(coeffs) -> bool:
    """Irreducibility over Q of a cubic given by ascending Fraction
    coefficients; for degree 3 this is the absence of a rational root."""
    den = math.lcm(*(c.denominator for c in coeffs))
    ints = [int(c * den) for c in coeffs]
    while ints and ints[-1] == 0:
        ints.pop()
    if len(ints) != 4:
        return False
    if ints[0] == 0:
        return False
    a0, a3 = abs(ints[0]), abs(ints[-1])
    for num in sympy.divisors(a0):
        for d in sympy.divisors(a3):
            for cand in (Fraction(num, d), Fraction(-num, d)):
                if _peval_int([Fraction(c) for c in ints], cand) == 0:
                    return False
    return True


def _eval_leaf(leaf: Leaf, v: Fraction):
    p = leaf.params
    if leaf.kind == "squarefree_not_pm1":
        if v.denominator != 1:
            return False, f"v = {v} is not an integer"
        if v == 0:
            return False, "v = 0 is not squarefree"
        if squarefree_part(v) != v:
            return False, f"{v} is not squarefree"
        if v in (1, -1):
            return False, "v = ±1 excluded"
        return True, f"{v} is a squarefree integer, not ±1"
    if leaf.kind == "not_square":
        val = _peval_int(p["poly"], v)
        if val == 0:
            return False, f"polynomial vanishes at v = {v}"
        ok = not is_rational_square(val)
        return ok, f"value {val} {'is not' if ok else 'is'} a square"
    if leaf.kind == "quad_cyc_trivial":
        val = _peval_int(p["poly"], v)
        if val == 0:
            return False, f"radicand vanishes at v = {v}"
        ok = quad_cyc_trivial(val, p["M"], p["mode"])
        return ok, (f"Q(sqrt({val})) ∩ K_{{{p['M']}"
                    f"{'^inf' if p['mode'] == 'tower' else ''}}} "
                    f"{'=' if ok else '≠'} Q")
    if leaf.kind in ("quartic_degree4", "quartic_cyc_trivial"):
        pp = _peval_int(p["p_poly"], v)
        qq = _peval_int(p["q_poly"], v)
        try:
            verdict = quartic_condition(pp, qq, p.get("M", 2))
        except DegenerateQuartic as e:
            return False, f"degenerate quartic: {e}"
        if leaf.kind == "quartic_degree4":
            ok = verdict != NOT_DEGREE4
            return ok, f"quartic x^4+({pp})x^2+({qq}): {verdict}"
        ok = verdict == DEGREE4_TRIVIAL
        return ok, f"quartic x^4+({pp})x^2+({qq}): {verdict}"
    if leaf.kind == "specific_set":
        ok = v in p["values"]
        return ok, (f"v = {v} {'∈' if ok else '∉'} "
                    f"{{{', '.join(str(x) for x in p['values'])}}}")
    if leaf.kind == "cubic_irreducible_proxy":
        coeffs3 = [_peval_int(cp, v) for cp in p["coeff_polys"]]
        # coeff_polys are listed x^3 down to constant
        asc = list(reversed(coeffs3))
        ok = _cubic_irreducible(asc)
        return ok, (f"[experimental] cubic with coefficients {coeffs3} "
                    f"{'is' if ok else 'is not'} irreducible")
    raise SchemaError(f"unknown leaf kind {leaf.kind!r}")


def eval_condition(cond: VCondition, v, J: RationalMap = None
                   ) -> ConditionResult:
    """Evaluate all leaves at v, with a clause-by-clause trace.

    When J is supplied, the J(v) ∉ {0, 1728, ∞} guard is evaluated as an
    implicit extra leaf.
    """
    v = Fraction(v)
    trace = []
    ok = True
    if J is not None:
        jv = evaluate(J, v)
        bad = jv is INFINITY or jv in (0, 1728)
        trace.append((f"avoid_j_values(J(v) ∉ {{0, 1728, ∞}})", not bad,
                      f"J({v}) = {jv}"))
        ok = ok and not bad
    for leaf in cond.leaves:
        try:
            verdict, reason = _eval_leaf(leaf, v)
        except Exception as e:  # leaf errors surface as failures
            verdict, reason = False, f"{type(e).__name__}: {e}"
        trace.append((leaf.describe(), verdict, reason))
        ok = ok and verdict
    return ConditionResult(ok, trace)
