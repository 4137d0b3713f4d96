"""Accuracy reports, exact McNemar tests, operator comparison, sweeps.

Error counts are directional by severity: a false positive is a
prediction strictly more severe than the expert label
(over-classification), a false negative strictly less severe. Since the
four categories have distinct severities, every wrong prediction is one
or the other, and ``accuracy = 1 - (fp + fn) / n`` holds exactly.

McNemar's exact binomial test works on the discordant counts b (first
classifier correct, second wrong) and c (the reverse), where "correct"
means exact category match. Under the null both directions are equally
likely, so the one-sided tail is sum(C(b+c, k), k <= min(b, c)) / 2^(b+c)
and the two-sided value doubles it, capped at 1. With no discordant
pairs both p-values are 1 by convention. Both sidedness variants are
always reported because published comparisons quote either.

Per-case classification is independent; aggregation is a sequential
deterministic reduction, so reports are reproducible.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Sequence

from riskrules.benchmark import CaseType, Dataset
from riskrules.engine import classify_mixed, predicted_category, rule_chain_scores
from riskrules.rules import CATEGORY_ORDER, RiskCategory, RuleSet
from riskrules.tnorms import TNormKind


@dataclass(frozen=True)
class EvalReport:
    n: int
    accuracy_overall: float
    accuracy_by_type: dict  # CaseType -> proportion, or None where absent
    fp_count: int
    fn_count: int
    fp_rate: float
    fn_rate: float
    confusion: tuple  # rows expert, cols predicted, both in CATEGORY_ORDER


@dataclass(frozen=True)
class McNemarResult:
    b: int
    c: int
    n_discordant: int
    p_one_sided: float
    p_two_sided: float


@dataclass(frozen=True)
class SweepPoint:
    theta: float
    reports: dict  # TNormKind -> EvalReport


def build_report(expert: Sequence[RiskCategory], predicted: Sequence[RiskCategory],
                 case_types: Sequence[CaseType]) -> EvalReport:
    """Aggregate aligned expert/predicted labels into an EvalReport."""
    n = len(expert)
    if n == 0:
        raise ValueError("empty dataset")
    if not (len(predicted) == len(case_types) == n):
        raise ValueError("expert, predicted and case_types must be aligned")
    fp = fn = correct = 0
    by_type_total: dict[CaseType, int] = {t: 0 for t in CaseType}
    by_type_correct: dict[CaseType, int] = {t: 0 for t in CaseType}
    index = {cat: i for i, cat in enumerate(CATEGORY_ORDER)}
    confusion = [[0] * 4 for _ in range(4)]
    for exp, pred, ctype in zip(expert, predicted, case_types):
        confusion[index[exp]][index[pred]] += 1
        by_type_total[ctype] += 1
        if pred is exp:
            correct += 1
            by_type_correct[ctype] += 1
        elif pred.severity > exp.severity:
            fp += 1
        else:
            fn += 1
    accuracy_by_type = {
        t: (by_type_correct[t] / by_type_total[t] if by_type_total[t] else None)
        for t in CaseType
    }
    return EvalReport(
        n=n,
        accuracy_overall=correct / n,
        accuracy_by_type=accuracy_by_type,
        fp_count=fp,
        fn_count=fn,
        fp_rate=fp / n,
        fn_rate=fn / n,
        confusion=tuple(tuple(row) for row in confusion),
    )


def _predictions(dataset: Dataset, ruleset: RuleSet, kind: TNormKind,
                 theta_override: float | None) -> list[RiskCategory]:
    return [
        predicted_category(ruleset, rule_chain_scores(c.scores, ruleset, kind), theta_override)
        for c in dataset.cases
    ]


def evaluate(dataset: Dataset, ruleset: RuleSet, kind: TNormKind,
             theta_override: float | None = None) -> EvalReport:
    """Classify every case with one operator and report accuracy and errors."""
    if not dataset.cases:
        raise ValueError("empty dataset")
    predicted = _predictions(dataset, ruleset, kind, theta_override)
    return build_report([c.expert_label for c in dataset.cases], predicted,
                        [c.case_type for c in dataset.cases])


def evaluate_mixed(dataset: Dataset, ruleset: RuleSet,
                   theta_override: float | None = None) -> EvalReport:
    """Like :func:`evaluate` but with per-rule operators (mixed mode)."""
    if not dataset.cases:
        raise ValueError("empty dataset")
    predicted = [
        classify_mixed(c.scores, ruleset, theta_override, case_id=c.case_id).predicted
        for c in dataset.cases
    ]
    return build_report([c.expert_label for c in dataset.cases], predicted,
                        [c.case_type for c in dataset.cases])


def mcnemar_exact(pred_a: Sequence[RiskCategory], pred_b: Sequence[RiskCategory],
                  expert: Sequence[RiskCategory]) -> McNemarResult:
    """Exact binomial McNemar test on paired predictions."""
    if not (len(pred_a) == len(pred_b) == len(expert)):
        raise ValueError("prediction and label sequences must have equal length")
    if not expert:
        raise ValueError("empty predictions")
    b = c = 0
    for pa, pb, exp in zip(pred_a, pred_b, expert):
        a_ok = pa is exp
        b_ok = pb is exp
        if a_ok and not b_ok:
            b += 1
        elif b_ok and not a_ok:
            c += 1
    n = b + c
    # Exact integer tail sum, then one correctly-rounded float division.
    tail = sum(math.comb(n, k) for k in range(min(b, c) + 1))
    p_one = tail / 2 ** n
    return McNemarResult(b, c, n, p_one, min(1.0, 2.0 * p_one))


def compare_operators(dataset: Dataset, ruleset: RuleSet,
                      kinds: Sequence[TNormKind],
                      theta_override: float | None = None):
    """Run one classification per operator and all pairwise McNemar tests.

    Returns ``(reports, pairs)``: per-operator EvalReports keyed by kind,
    and a list of ``(kind_a, kind_b, McNemarResult)`` for every unordered
    pair, in the order given.
    """
    kinds = list(kinds)
    if len(kinds) < 2:
        raise ValueError("need at least 2 operators to compare")
    if len(set(kinds)) != len(kinds):
        raise ValueError("duplicate operator in comparison")
    if not dataset.cases:
        raise ValueError("empty dataset")
    expert = [c.expert_label for c in dataset.cases]
    case_types = [c.case_type for c in dataset.cases]
    predictions = {k: _predictions(dataset, ruleset, k, theta_override) for k in kinds}
    reports = {k: build_report(expert, predictions[k], case_types) for k in kinds}
    pairs = [
        (a, b, mcnemar_exact(predictions[a], predictions[b], expert))
        for i, a in enumerate(kinds)
        for b in kinds[i + 1:]
    ]
    return reports, pairs


def threshold_sweep(dataset: Dataset, ruleset: RuleSet,
                    kinds: TNormKind | Sequence[TNormKind],
                    theta_min: float, theta_max: float, step: float) -> list[SweepPoint]:
    """Evaluate over an inclusive arithmetic progression of thresholds.

    Chain scores do not depend on theta, so they are computed once per
    operator and re-thresholded at every point. The progression is
    ``theta_min + i * step`` with a half-step guard so the endpoint is
    not lost to floating-point drift.
    """
    if isinstance(kinds, TNormKind):
        kinds = (kinds,)
    kinds = tuple(kinds)
    if not kinds:
        raise ValueError("need at least one operator")
    if not (0.0 < theta_min <= theta_max < 1.0):
        raise ValueError(f"invalid theta range [{theta_min}, {theta_max}]; "
                         "need 0 < theta_min <= theta_max < 1")
    if step <= 0.0:
        raise ValueError(f"invalid step {step}; must be positive")
    if not dataset.cases:
        raise ValueError("empty dataset")

    expert = [c.expert_label for c in dataset.cases]
    case_types = [c.case_type for c in dataset.cases]
    scores_by_kind = {
        k: [rule_chain_scores(c.scores, ruleset, k) for c in dataset.cases]
        for k in kinds
    }
    points = []
    i = 0
    while True:
        theta = theta_min + i * step
        if theta > theta_max + step * 0.5:
            break
        reports = {}
        for k in kinds:
            predicted = [predicted_category(ruleset, cs, theta) for cs in scores_by_kind[k]]
            reports[k] = build_report(expert, predicted, case_types)
        points.append(SweepPoint(theta, reports))
        i += 1
    return points


# ---------------------------------------------------------------------------
# Exports.

def _r6(x: float) -> float:
    return round(x, 6)


def report_to_obj(report: EvalReport) -> dict:
    return {
        "n": report.n,
        "accuracy_overall": _r6(report.accuracy_overall),
        "accuracy_by_type": {
            t.value: (None if report.accuracy_by_type[t] is None
                      else _r6(report.accuracy_by_type[t]))
            for t in CaseType
        },
        "fp_count": report.fp_count,
        "fn_count": report.fn_count,
        "fp_rate": _r6(report.fp_rate),
        "fn_rate": _r6(report.fn_rate),
        "categories": [c.value for c in CATEGORY_ORDER],
        "confusion": [list(row) for row in report.confusion],
    }


def report_to_json(report: EvalReport) -> str:
    return json.dumps(report_to_obj(report), indent=2) + "\n"


def comparison_to_json(reports: dict, pairs: list) -> str:
    doc = {
        "reports": {k.value: report_to_obj(r) for k, r in reports.items()},
        "pairs": [
            {
                "a": a.value,
                "b_kind": b.value,
                "b": res.b,
                "c": res.c,
                "p_one_sided": res.p_one_sided,
                "p_two_sided": res.p_two_sided,
            }
            for a, b, res in pairs
        ],
    }
    return json.dumps(doc, indent=2) + "\n"


def sweep_to_csv(points: list[SweepPoint]) -> str:
    lines = ["theta,kind,accuracy,fp_rate,fn_rate"]
    for pt in points:
        for kind, report in pt.reports.items():
            lines.append(f"{round(pt.theta, 6):g},{kind.value},"
                         f"{report.accuracy_overall:.6f},"
                         f"{report.fp_rate:.6f},{report.fn_rate:.6f}")
    return "\n".join(lines) + "\n"
