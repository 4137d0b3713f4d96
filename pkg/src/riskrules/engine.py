"""Rule scoring, priority classification, and proof-trail construction.

Every classification scores every rule (no short-circuiting), so the
proof trail also documents why non-winning rules did not fire; that is
the transparency record an auditor reads. Conditions absent from a case
are scored 0.0 and flagged in the trail rather than raised as errors:
absence of evidence conservatively blocks conjunctive firing.

A rule fires only when its chain score strictly exceeds theta; a score
exactly equal to theta does not fire. The predicted category is the
highest-severity category among fired rules, defaulting to minimal risk.
Rules that target the minimal-risk category are scored and trailed like
any other but never "win": the floor category needs no trigger, which
keeps "no winning rule" and "predicted minimal risk" synonymous.

All functions are pure; cases may be classified concurrently.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Mapping

from riskrules.rules import RiskCategory, Rule, RuleSet, ConjunctionStandard
from riskrules.tnorms import TNormKind, apply, fold_chain

#: Operator used for a rule's conjunction standard in mixed mode.
STANDARD_OPERATORS = {
    ConjunctionStandard.STRONG: TNormKind.LUKASIEWICZ,
    ConjunctionStandard.BOTTLENECK: TNormKind.GOEDEL,
}


@dataclass(frozen=True)
class ProofStep:
    """One condition evaluation inside a rule's conjunction chain."""

    step_index: int
    rule_id: str
    condition_id: str
    condition_score: float
    operator: TNormKind
    accumulated: float
    missing_condition: bool


@dataclass(frozen=True)
class RuleScore:
    rule_id: str
    category: RiskCategory
    score: float
    fired: bool
    steps: tuple[ProofStep, ...]


@dataclass(frozen=True)
class ClassificationOutcome:
    case_id: str
    predicted: RiskCategory
    tnorm: str  # operator name, or "mixed"
    theta_used: float | None
    rule_scores: tuple[RuleScore, ...]
    winning_rule: str | None


def score_rule(rule: Rule, case_scores: Mapping[str, float], kind: TNormKind,
               theta_override: float | None = None) -> RuleScore:
    """Fold the rule's condition chain in declared order, recording each step."""
    theta = rule.theta if theta_override is None else theta_override
    steps = []
    acc = 0.0
    for i, cond in enumerate(rule.conditions):
        raw = case_scores.get(cond)
        missing = raw is None
        s = 0.0 if missing else raw
        acc = s if i == 0 else apply(kind, acc, s)
        steps.append(ProofStep(i, rule.rule_id, cond, s, kind, acc, missing))
    return RuleScore(rule.rule_id, rule.category, acc, acc > theta, tuple(steps))


def _finish(case_id, rule_scores, tnorm_name, theta_override, ruleset):
    fired_above_floor = [
        rs for rs in rule_scores
        if rs.fired and rs.category.severity > RiskCategory.MINIMAL_RISK.severity
    ]
    if fired_above_floor:
        top = max(rs.category.severity for rs in fired_above_floor)
        contenders = [rs for rs in fired_above_floor if rs.category.severity == top]
        # Highest score wins; exact ties break to the lexicographically
        # smallest rule_id so outcomes are reproducible.
        winner = sorted(contenders, key=lambda rs: (-rs.score, rs.rule_id))[0]
        predicted = winner.category
        winning_rule = winner.rule_id
    else:
        predicted = RiskCategory.MINIMAL_RISK
        winning_rule = None
    if theta_override is not None:
        theta_used = theta_override
    else:
        thetas = {r.theta for r in ruleset.rules}
        theta_used = thetas.pop() if len(thetas) == 1 else None
    return ClassificationOutcome(case_id, predicted, tnorm_name, theta_used,
                                 tuple(rule_scores), winning_rule)


def classify(case_scores: Mapping[str, float], ruleset: RuleSet, kind: TNormKind,
             theta_override: float | None = None, case_id: str = "case") -> ClassificationOutcome:
    """Score every rule with one operator and pick the final category."""
    rule_scores = [score_rule(r, case_scores, kind, theta_override) for r in ruleset.rules]
    return _finish(case_id, rule_scores, kind.value, theta_override, ruleset)


def classify_mixed(case_scores: Mapping[str, float], ruleset: RuleSet,
                   theta_override: float | None = None, case_id: str = "case") -> ClassificationOutcome:
    """Classify with per-rule operators chosen by each rule's conjunction standard.

    Every rule must carry an explicit standard annotation; the mapping is
    strong -> lukasiewicz, bottleneck -> goedel. Annotations are never
    inferred.
    """
    for rule in ruleset.rules:
        if rule.standard is None:
            raise ValueError(f"mixed mode requires a conjunction standard on every rule; "
                             f"rule {rule.rule_id!r} has none")
    rule_scores = [
        score_rule(r, case_scores, STANDARD_OPERATORS[r.standard], theta_override)
        for r in ruleset.rules
    ]
    return _finish(case_id, rule_scores, "mixed", theta_override, ruleset)


# ---------------------------------------------------------------------------
# Lean scoring path for benchmark evaluation and threshold sweeps: chain
# scores are theta-independent, so sweeps reuse them across thresholds.
# Tests pin these to classify()'s results bit-for-bit.

def rule_chain_scores(case_scores: Mapping[str, float], ruleset: RuleSet,
                      kind: TNormKind) -> list[float]:
    """Chain score per rule, aligned with ``ruleset.rules`` order."""
    return [
        fold_chain(kind, [case_scores.get(c, 0.0) for c in r.conditions])
        for r in ruleset.rules
    ]


def predicted_category(ruleset: RuleSet, chain_scores: list[float],
                       theta_override: float | None = None) -> RiskCategory:
    """Final category implied by per-rule chain scores at the given threshold."""
    best = RiskCategory.MINIMAL_RISK
    for rule, score in zip(ruleset.rules, chain_scores):
        theta = rule.theta if theta_override is None else theta_override
        if score > theta and rule.category.severity > best.severity:
            best = rule.category
    return best


# ---------------------------------------------------------------------------
# Proof-trail export.

def _r6(x: float) -> float:
    return round(x, 6)


def outcome_to_obj(outcome: ClassificationOutcome) -> dict:
    return {
        "case_id": outcome.case_id,
        "tnorm": outcome.tnorm,
        "theta": None if outcome.theta_used is None else _r6(outcome.theta_used),
        "predicted": outcome.predicted.value,
        "winning_rule": outcome.winning_rule,
        "rules": [
            {
                "rule_id": rs.rule_id,
                "category": rs.category.value,
                "score": _r6(rs.score),
                "fired": rs.fired,
                "steps": [
                    {
                        "step_index": st.step_index,
                        "rule_id": st.rule_id,
                        "condition_id": st.condition_id,
                        "condition_score": _r6(st.condition_score),
                        "operator": st.operator.value,
                        "accumulated": _r6(st.accumulated),
                        "missing_condition": st.missing_condition,
                    }
                    for st in rs.steps
                ],
            }
            for rs in outcome.rule_scores
        ],
    }


def outcome_to_json(outcome: ClassificationOutcome) -> str:
    """Proof-trail JSON; scores carry six decimal digits."""
    return json.dumps(outcome_to_obj(outcome), indent=2) + "\n"
