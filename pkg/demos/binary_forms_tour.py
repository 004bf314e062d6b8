"""Tour of the binary decision rule.

For a*x^n + b*y^n the engine gives a complete Dense/NotDense answer.  This
script walks through one instance of each outcome and shows the proof
trace and certificate the engine emits.
"""

from qdense import DiagonalForm, decide_binary, verdict_to_dict

EXAMPLES = [
    # (n, (a, b), p, what to look at)
    (3, (1, 1), 7, "-1 is a cube mod 7, so x^3+y^3 is dense in Q_7"),
    (3, (1, 2), 7, "-2 = 5 is not a cube mod 7: no cancellation, quotient "
                   "valuations stuck in 3Z -> valuation gap {1, 2}"),
    (3, (7, 1), 7, "coefficient valuations differ by 1: every valuation is "
                   "reachable, but valuation-0 quotients stay inside the "
                   "cubes mod 7 -> residue gap at m = 2"),
    (4, (1, 1), 2, "-1 = 15 is not a 4th power mod 16; cancellation depth 1 "
                   "leaves quotient valuations in {0,1,3} mod 4 -> gap {2}"),
    (3, (5, 1), 5, "every 5-adic unit is a cube, so the valuation offset "
                   "does not matter: dense (r = 2 > 3/2 with distinct "
                   "classes)"),
    (3, (1, -4), 3, "4 is not a cube in Z_3, yet F(-192,-88)/F(-200,-120) "
                    "equals 4 exactly: depth-1 cancellation saturates the "
                    "unit classes -> dense"),
]


def main():
    for n, coeffs, p, note in EXAMPLES:
        form = DiagonalForm(n, coeffs)
        verdict = decide_binary(form, p)
        print("=" * 72)
        print(f"F = {form},  p = {p}")
        print(f"  {note}")
        print(f"  verdict: {verdict.status}")
        for entry in verdict.trace:
            print(f"  [{entry.rule}] {entry.statement[:68]}...")
        cert = verdict_to_dict(verdict)["certificate"]
        if cert:
            print(f"  certificate: {cert}")
    print("=" * 72)
    # the exact-ratio witness for the last example, checkable by hand
    f = DiagonalForm(3, (1, -4))
    num, den = f.evaluate((-192, -88)), f.evaluate((-200, -120))
    print(f"exact witness: F(-192,-88) = {num}, F(-200,-120) = {den}, "
          f"ratio = {num // den}")


if __name__ == "__main__":
    main()
