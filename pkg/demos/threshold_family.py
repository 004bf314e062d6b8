"""The variable-count threshold for dense quotient sets.

When gcd(n, p(p-1)) = 1, floor(n/2) + 1 variables always force density,
and the staircase form x1^n + p x2^n + ... + p^(t-1) xt^n on t = floor(n/2)
variables shows the bound is sharp: its value valuations mod n live in
{0, .., t-1}, so quotient valuations miss t itself.
"""

from qdense import DiagonalForm, decide, quotient_coverage, verdict_to_dict


def main():
    for n in (5, 7, 9, 11):
        p = 2  # least prime with gcd(n, p(p-1)) = 1 for these n
        t = n // 2
        staircase = DiagonalForm(n, tuple(p**i for i in range(t)))
        verdict = decide(staircase, p)
        cert = verdict_to_dict(verdict)["certificate"]
        print(f"n = {n:2d}: {staircase}")
        print(f"  on t = {t} variables: {verdict.status}, "
              f"forbidden valuation classes {cert['forbidden']}")
        grown = DiagonalForm(n, tuple(p**i for i in range(t + 1)))
        print(f"  adding one variable: {decide(grown, p).status}")
        print()

    # The oracle sees the same gap: for n = 6 over Q_5 the staircase on
    # three variables never produces a quotient valuation = 3 mod 6.
    form = DiagonalForm(6, (1, 5, 25))
    report = quotient_coverage(form, 5, B=8, K=1, V=6)
    print(f"oracle on {form} over Q_5 (box 8):")
    print(f"  observed quotient valuation residues mod 6: "
          f"{sorted(report.quotient_valuation_residues)}")


if __name__ == "__main__":
    main()
