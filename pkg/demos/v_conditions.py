"""The arithmetic side: conditions on the twist parameter v.

Membership of a twisted curve in the nice buckets usually comes with
number-theoretic side conditions on v: squarefreeness, a quadratic field
staying out of a cyclotomic tower, or a biquadratic polynomial staying
irreducible with cyclotomically trivial subfields.  This script shows
the building blocks and then evaluates a full condition expression over
a range of v.

Run:  python3 demos/v_conditions.py
"""

from aimg import (
    DEGREE4_NONTRIVIAL,
    DEGREE4_TRIVIAL,
    eval_condition,
    parse_vcondition,
    quad_cyc_trivial,
    quartic_condition,
    squarefree_part,
)


def main():
    print("== squarefree parts ==")
    for n in (12, -18, 49, 10):
        print(f"  squarefree_part({n}) = {squarefree_part(n)}")
    print()

    print("== Q(sqrt d) inside the 2-power cyclotomic tower? ==")
    print("  (quad_cyc_trivial is True when the field stays OUT)")
    for d in (-2, -1, 2, 3, 5, -6):
        print(f"  d = {d:3d}: {quad_cyc_trivial(d, 2)}")
    print("  the only squarefree failures for M = 2 are d in {-1, 2, -2}\n")

    print("== x^4 + p x^2 + q: degree and quadratic subfields ==")
    for p, q in ((-3, 1), (0, 2), (1, 3), (-4, 2)):
        verdict = quartic_condition(p, q, 2)
        tag = {DEGREE4_TRIVIAL: "degree 4, cyclotomically trivial",
               DEGREE4_NONTRIVIAL: "degree 4, meets the 2-tower"}.get(
                   verdict, "not degree 4")
        print(f"  (p, q) = ({p:3d},{q:2d}): {tag}")
    print()

    print("== a full condition expression ==")
    cond = parse_vcondition({"all": [
        {"kind": "squarefree_not_pm1"},
        {"kind": "quad_cyc_trivial", "poly": [-2, 0, 1], "M": 2,
         "mode": "tower"},
    ]})
    print("  v squarefree, v != +-1, and Q(sqrt(v^2 - 2)) outside the "
          "2-tower:")
    for v in range(-3, 8):
        res = eval_condition(cond, v)
        mark = "ok " if res.ok else "no "
        reasons = "; ".join(why for _, ok, why in res.trace if not ok)
        print(f"  v = {v:2d}: {mark}{reasons}")


if __name__ == "__main__":
    main()
