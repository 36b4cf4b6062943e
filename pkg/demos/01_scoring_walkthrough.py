"""Walk through a complete evaluation of a small organization.

Three controls protect four assets. We rate each control's contribution to
confidentiality, integrity and availability (0..5, proactive and reactive),
value the assets (1..100), map controls onto assets (0..5), and read off
protection scores, final scores and value-weighted coverage.

Run: python demos/01_scoring_walkthrough.py
"""

from mlrisk import (
    Assessment,
    BaseWeightMatrix,
    COMPONENT_ORDER,
    EvaluationFactor,
    FactorCategory,
    MappingMatrix,
    ProtectionTarget,
    TargetThreshold,
    SecurityAttribute,
    EvalDomain,
    evaluate,
    normalize_targets,
    validate_assessment,
)


def build_assessment() -> Assessment:
    # Step 1: base weights per control. EF1 is an availability play (think
    # load balancing), EF2 a do-everything storage hardening, EF3 robust
    # model training (confidentiality + integrity, mostly proactive).
    factors = [
        EvaluationFactor(
            "EF1", "Load balancing", FactorCategory.SECURITY_CONTROLS,
            BaseWeightMatrix.of(proactive=(0, 0, 4), reactive=(0, 0, 2)),
            max_cost=15000, implementation_score=1.0,
        ),
        EvaluationFactor(
            "EF2", "Hardened data storage", FactorCategory.DATA,
            BaseWeightMatrix.of(proactive=(2, 3, 1), reactive=(4, 3, 0)),
            max_cost=30000, implementation_score=1.0,
        ),
        EvaluationFactor(
            "EF3", "Robust model training", FactorCategory.MODEL,
            BaseWeightMatrix.of(proactive=(4, 4, 0), reactive=(2, 2, 0)),
            max_cost=12000, implementation_score=1.0,
        ),
    ]

    # Step 2: assets and their importance to the organization.
    targets = [
        ProtectionTarget("A1", "Customer database", raw_value=45),
        ProtectionTarget("A2", "Internal wiki", raw_value=10),
        ProtectionTarget("A3", "Scoring pipeline", raw_value=35),
        ProtectionTarget("A4", "Fraud detection model", raw_value=75),
    ]

    # Step 3: how strongly each control influences each asset.
    mapping = MappingMatrix.from_factor_rows({
        "EF1": {"A1": 1, "A3": 2, "A4": 4},
        "EF2": {"A1": 2, "A2": 2, "A3": 1, "A4": 1},
        "EF3": {"A1": 5, "A3": 1},
    })

    # Optionally require a floor somewhere; this one will fail on purpose.
    thresholds = [
        TargetThreshold("A2", SecurityAttribute.AVAILABILITY, EvalDomain.REACTIVE, 0.1),
    ]
    return Assessment("Demo organization", factors, targets, mapping, thresholds=thresholds)


def main() -> None:
    a = build_assessment()
    issues = validate_assessment(a)
    print(f"validation issues: {issues or 'none'}")

    print("\nnormalized asset importance:")
    for t in normalize_targets(a.targets):
        print(f"  {t.id} {t.name:<24} {t.raw_value:>3} -> {t.normalized_value:.4f}")

    report = evaluate(a)

    print("\nrelative weights (who carries each component, per asset):")
    for t in a.targets:
        cells = ", ".join(
            f"{f.id}:{report.relative_weights.weight(t.id, f.id, *c):.2f}"
            for f in a.factors
            for c in [COMPONENT_ORDER[0]]
        )
        print(f"  {t.id} proactive-C  {cells}")

    print("\nfinal scores (mean protection across assets):")
    for component in COMPONENT_ORDER:
        attribute, domain = component
        print(f"  {attribute.value}/{domain.value:<9} {report.final_scores[component]:.4f}")

    print("\ntotal coverage (value-weighted, in [0, 1]):")
    for component in COMPONENT_ORDER:
        attribute, domain = component
        print(f"  {attribute.value}/{domain.value:<9} {report.total_coverage[component]:.4f}")

    print("\nthreshold verdicts:")
    for verdict in report.threshold_verdicts:
        status = "pass" if verdict.passed else "FAIL"
        print(f"  {status}  observed {verdict.observed:.3f}  ({verdict.threshold})")

    # The reactive-availability verdict fails: A2 is touched only by EF2,
    # whose reactive availability weight is 0, so nothing protects it there.
    # That is the kind of gap this scoring surfaces.


if __name__ == "__main__":
    main()
