from pathlib import Path

import pytest

from mlrisk import (
    Assessment,
    BaseWeightMatrix,
    EvaluationFactor,
    FactorCategory,
    MappingMatrix,
    ProtectionTarget,
)

FIXTURES = Path(__file__).parent / "fixtures"


def build_worked_example(scores=(1.0, 1.0, 1.0)) -> Assessment:
    """Three controls, four assets: the fixture every golden test leans on."""
    s1, s2, s3 = scores
    factors = [
        EvaluationFactor(
            "EF1", "Load balancing", FactorCategory.SECURITY_CONTROLS,
            BaseWeightMatrix.of(proactive=(0, 0, 4), reactive=(0, 0, 2)),
            max_cost=15000.0, implementation_score=s1,
        ),
        EvaluationFactor(
            "EF2", "Hardened data storage", FactorCategory.DATA,
            BaseWeightMatrix.of(proactive=(2, 3, 1), reactive=(4, 3, 0)),
            max_cost=30000.0, implementation_score=s2,
        ),
        EvaluationFactor(
            "EF3", "Robust model training", FactorCategory.MODEL,
            BaseWeightMatrix.of(proactive=(4, 4, 0), reactive=(2, 2, 0)),
            max_cost=12000.0, implementation_score=s3,
        ),
    ]
    targets = [
        ProtectionTarget("A1", "Customer database", raw_value=45),
        ProtectionTarget("A2", "Internal wiki", raw_value=10),
        ProtectionTarget("A3", "Scoring pipeline", raw_value=35),
        ProtectionTarget("A4", "Fraud detection model", raw_value=75),
    ]
    mapping = MappingMatrix.from_factor_rows({
        "EF1": {"A1": 1, "A2": 0, "A3": 2, "A4": 4},
        "EF2": {"A1": 2, "A2": 2, "A3": 1, "A4": 1},
        "EF3": {"A1": 5, "A2": 0, "A3": 1, "A4": 0},
    })
    return Assessment("Worked example", factors, targets, mapping)


@pytest.fixture
def worked_example() -> Assessment:
    return build_worked_example()


@pytest.fixture
def worked_example_at_optimum() -> Assessment:
    return build_worked_example(scores=(0.8, 0.7, 0.7))
