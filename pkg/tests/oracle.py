"""Naive direct-summation oracle for the scoring and cost equations.

Deliberately independent of the library: plain dicts, plain loops, no numpy,
no shared helpers. Tests compare mlrisk's vectorized engine against this
module; keep it dumb and readable.

Inputs are primitive structures:
    base_weights  {ef_id: {(attr, dom): int}}        attr in "CIA", dom in "PR"
    mapping       {(target_id, ef_id): int}
    values        {target_id: int}                   raw 1..100
    scores        {ef_id: float}
    max_costs     {ef_id: float}
"""

import itertools
import math

ATTRS = ("C", "I", "A")
DOMS = ("P", "R")
COMPONENTS = tuple((a, d) for a in ATTRS for d in DOMS)


def normalized_values(values):
    total = sum(values.values())
    return {tid: raw / total for tid, raw in values.items()}


def relative_weight(base_weights, mapping, target_id, ef_id, attr, dom):
    den = 0.0
    for other in base_weights:
        den += base_weights[other][(attr, dom)] * mapping.get((target_id, other), 0)
    if den == 0:
        return 0.0
    num = base_weights[ef_id][(attr, dom)] * mapping.get((target_id, ef_id), 0)
    return num / den


def protection_score(base_weights, mapping, scores, target_id, attr, dom):
    total = 0.0
    for ef_id in base_weights:
        w = relative_weight(base_weights, mapping, target_id, ef_id, attr, dom)
        total += w * scores[ef_id]
    return total


def final_score(base_weights, mapping, scores, values, attr, dom):
    acc = 0.0
    for tid in values:
        acc += protection_score(base_weights, mapping, scores, tid, attr, dom)
    return acc / len(values)


def coverage(base_weights, mapping, scores, values, target_id, attr, dom):
    norm = normalized_values(values)
    p = protection_score(base_weights, mapping, scores, target_id, attr, dom)
    return p * norm[target_id]


def total_coverage(base_weights, mapping, scores, values, attr, dom):
    acc = 0.0
    for tid in values:
        acc += coverage(base_weights, mapping, scores, values, tid, attr, dom)
    return acc


def cost(score, max_cost):
    return ((2.0 * score - 1.0) ** 3 + 1.0) * max_cost / 2.0


def efficiency_ratio(base_weights, mapping, scores, values, max_costs, components=COMPONENTS):
    total_cost = 0.0
    for ef_id, s in scores.items():
        total_cost += cost(s, max_costs[ef_id])
    tc_sel = 0.0
    for attr, dom in components:
        tc_sel += total_coverage(base_weights, mapping, scores, values, attr, dom)
    if tc_sel == 0.0:
        return math.inf
    return total_cost / tc_sel


def tc_selected(base_weights, mapping, scores, values, components=COMPONENTS):
    acc = 0.0
    for attr, dom in components:
        acc += total_coverage(base_weights, mapping, scores, values, attr, dom)
    return acc


def brute_force_optimum(base_weights, mapping, values, max_costs,
                        min_score=0.1, step=0.1, components=COMPONENTS):
    """Enumerate the full grid; ties: min ratio, then max coverage, then lex."""
    ef_ids = sorted(base_weights)
    points = []
    k = 0
    while True:
        s = round(min_score + k * step, 10)
        if s > 1.0 + 1e-12:
            break
        points.append(min(s, 1.0))
        k += 1
    best = None
    n_evals = 0
    for combo in itertools.product(points, repeat=len(ef_ids)):
        scores = dict(zip(ef_ids, combo))
        ratio = efficiency_ratio(base_weights, mapping, scores, values, max_costs, components)
        tc = tc_selected(base_weights, mapping, scores, values, components)
        n_evals += 1
        if best is None:
            best = (ratio, -tc, combo)
        else:
            cand = (ratio, -tc, combo)
            if cand < best:
                best = cand
    ratio, neg_tc, combo = best
    return combo, ratio, n_evals


def worked_example_inputs():
    """The three-control, four-asset example used as the main fixture."""
    base_weights = {
        "EF1": {("C", "P"): 0, ("I", "P"): 0, ("A", "P"): 4,
                ("C", "R"): 0, ("I", "R"): 0, ("A", "R"): 2},
        "EF2": {("C", "P"): 2, ("I", "P"): 3, ("A", "P"): 1,
                ("C", "R"): 4, ("I", "R"): 3, ("A", "R"): 0},
        "EF3": {("C", "P"): 4, ("I", "P"): 4, ("A", "P"): 0,
                ("C", "R"): 2, ("I", "R"): 2, ("A", "R"): 0},
    }
    values = {"A1": 45, "A2": 10, "A3": 35, "A4": 75}
    mapping = {
        ("A1", "EF1"): 1, ("A2", "EF1"): 0, ("A3", "EF1"): 2, ("A4", "EF1"): 4,
        ("A1", "EF2"): 2, ("A2", "EF2"): 2, ("A3", "EF2"): 1, ("A4", "EF2"): 1,
        ("A1", "EF3"): 5, ("A2", "EF3"): 0, ("A3", "EF3"): 1, ("A4", "EF3"): 0,
    }
    max_costs = {"EF1": 15000.0, "EF2": 30000.0, "EF3": 12000.0}
    return base_weights, mapping, values, max_costs
