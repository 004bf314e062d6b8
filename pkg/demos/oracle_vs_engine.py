"""Engine verdicts cross-examined by brute force.

Dense verdicts are corroborated by unit-class coverage climbing to 1 as
the enumeration box grows; NotDense certificates are checked exactly
against every observed quotient class.  A deliberately fabricated
certificate shows what a refutation looks like.
"""

from qdense import (
    DiagonalForm,
    ValuationGap,
    check_certificate,
    coverage_trend,
    decide,
    quotient_coverage,
)


def trend_line(form, p, boxes):
    trend = coverage_trend(form, p, K=1, V=form.n, boxes=boxes)
    return [round(r.overall_coverage(), 3) for r in trend]


def main():
    boxes = [5, 10, 20, 40, 80]

    dense = DiagonalForm(3, (1, 1))
    print(f"{dense} over Q_7 (engine: {decide(dense, 7).status})")
    print(f"  coverage over boxes {boxes}: {trend_line(dense, 7, boxes)}")
    print()

    gapped = DiagonalForm(3, (1, 2))
    verdict = decide(gapped, 7)
    print(f"{gapped} over Q_7 (engine: {verdict.status})")
    print(f"  coverage over boxes {boxes}: {trend_line(gapped, 7, boxes)}")
    report = quotient_coverage(gapped, 7, B=40, K=2, V=3)
    result = check_certificate(verdict.certificate, report)
    print(f"  certificate check: consistent = {result.consistent} "
          f"({result.detail})")
    print()

    # A fabricated claim is refuted with a concrete witness pair.
    fake = ValuationGap(p=7, n=3, forbidden=frozenset({0}))
    report = quotient_coverage(dense, 7, B=5, K=1, V=3)
    result = check_certificate(fake, report)
    print("fabricated claim 'no quotient valuation is 0 mod 3' on x^3+y^3:")
    print(f"  consistent = {result.consistent}, witness pair = {result.witness}")
    num, den = result.witness
    print(f"  F{num} / F{den} = {dense.evaluate(num)} / {dense.evaluate(den)}")


if __name__ == "__main__":
    main()
