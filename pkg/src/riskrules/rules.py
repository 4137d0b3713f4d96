"""Condition vocabulary, risk categories, conjunctive rules, rule files.

A rule is a conjunctive tuple: a risk category, an ordered list of
condition identifiers, and a firing threshold theta. The built-in rule
set formalises EU AI Act provisions; rule files use a small JSON format
(see :func:`load_ruleset`). Rule sets are immutable after construction
and safe to share across evaluation workers.
"""

from __future__ import annotations

import enum
import functools
import json
import re
from dataclasses import dataclass, field
from pathlib import Path


class RuleValidationError(ValueError):
    """A rule or rule file failed validation; the message names the culprit."""


@functools.total_ordering
class RiskCategory(enum.Enum):
    """Risk categories, totally ordered by severity (prohibited highest)."""

    PROHIBITED = "prohibited"
    HIGH_RISK = "high_risk"
    LIMITED_RISK = "limited_risk"
    MINIMAL_RISK = "minimal_risk"

    @property
    def severity(self) -> int:
        return _SEVERITY[self]

    def __lt__(self, other: object):
        if not isinstance(other, RiskCategory):
            return NotImplemented
        return self.severity < other.severity


_SEVERITY = {
    RiskCategory.MINIMAL_RISK: 0,
    RiskCategory.LIMITED_RISK: 1,
    RiskCategory.HIGH_RISK: 2,
    RiskCategory.PROHIBITED: 3,
}

#: Categories in descending severity; the fixed ordering used by reports.
CATEGORY_ORDER = (
    RiskCategory.PROHIBITED,
    RiskCategory.HIGH_RISK,
    RiskCategory.LIMITED_RISK,
    RiskCategory.MINIMAL_RISK,
)


def compare_severity(a: RiskCategory, b: RiskCategory) -> int:
    """Three-way severity comparison: -1 (less), 0 (equal), +1 (greater)."""
    return (a.severity > b.severity) - (a.severity < b.severity)


class ConjunctionStandard(enum.Enum):
    """Which conjunction reading a rule takes in mixed-operator mode.

    ``STRONG`` rules demand joint confirmation of all conditions and map
    to the Lukasiewicz operator; ``BOTTLENECK`` rules only need every
    condition to clear the threshold individually and map to the Goedel
    operator.
    """

    STRONG = "strong"
    BOTTLENECK = "bottleneck"


_IDENT_RE = re.compile(r"^[a-z][a-z_]*$")


@dataclass(frozen=True)
class Rule:
    """Conjunctive rule: fires when the t-norm chain over its conditions
    strictly exceeds ``theta``."""

    rule_id: str
    category: RiskCategory
    conditions: tuple[str, ...]
    theta: float = 0.5
    article: str = ""
    standard: ConjunctionStandard | None = None
    synthetic: bool = False

    def __post_init__(self):
        if not self.rule_id:
            raise RuleValidationError("rule with empty rule_id")
        if not self.conditions:
            raise RuleValidationError(f"rule {self.rule_id!r}: empty condition list")
        if len(set(self.conditions)) != len(self.conditions):
            raise RuleValidationError(f"rule {self.rule_id!r}: duplicate condition")
        if not isinstance(self.conditions, tuple):
            object.__setattr__(self, "conditions", tuple(self.conditions))
        if not 0.0 < self.theta < 1.0:
            raise RuleValidationError(f"rule {self.rule_id!r}: theta out of range (0, 1): {self.theta}")


@dataclass(frozen=True)
class RuleSet:
    """A closed vocabulary plus the rules defined over it."""

    vocabulary: frozenset[str]
    rules: tuple[Rule, ...]
    _by_id: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "vocabulary", frozenset(self.vocabulary))
        object.__setattr__(self, "rules", tuple(self.rules))
        for name in sorted(self.vocabulary):
            if not _IDENT_RE.match(name):
                raise RuleValidationError(
                    f"vocabulary term {name!r} is not a lowercase_underscore identifier")
        by_id: dict[str, Rule] = {}
        for rule in self.rules:
            if rule.rule_id in by_id:
                raise RuleValidationError(f"duplicate rule_id {rule.rule_id!r}")
            for cond in rule.conditions:
                if cond not in self.vocabulary:
                    raise RuleValidationError(
                        f"rule {rule.rule_id!r}: unknown condition {cond!r}")
            by_id[rule.rule_id] = rule
        object.__setattr__(self, "_by_id", by_id)

    def rule(self, rule_id: str) -> Rule:
        try:
            return self._by_id[rule_id]
        except KeyError:
            raise KeyError(f"no rule {rule_id!r}") from None

    def rules_for(self, category: RiskCategory) -> tuple[Rule, ...]:
        return tuple(r for r in self.rules if r.category is category)


# The condition vocabulary has 22 terms. The final term,
# subliminal_technique, is reconstructed rather than taken from a
# published rule; see the synthetic-rule note below.
CONDITION_VOCABULARY: tuple[str, ...] = (
    "real_time_processing",
    "public_space",
    "biometric_identification",
    "public_authority",
    "evaluates_social_behavior",
    "detrimental_treatment",
    "employment_context",
    "recruitment_or_promotion",
    "automated_decision",
    "essential_service",
    "creditworthiness_or_insurance",
    "individual_assessment",
    "interacts_with_humans",
    "ai_generated_output",
    "not_clearly_disclosed",
    "critical_infrastructure",
    "safety_component",
    "autonomous_decision",
    "education_context",
    "determines_access",
    "affects_life_path",
    "subliminal_technique",
)


def default_ruleset() -> RuleSet:
    """The built-in 14-rule formalisation of selected EU AI Act provisions.

    Seven rules carry exact article citations; the seven marked
    ``synthetic`` follow the same three-condition ALL-conjunction pattern
    to cover the remaining category mass and are labelled as
    reconstructions, not as authoritative readings of the Act. Every rule
    uses theta = 0.5.
    """
    c = RiskCategory
    rules = (
        Rule("prohibited_rt_biometric", c.PROHIBITED,
             ("real_time_processing", "public_space", "biometric_identification"),
             article="Art. 5(1)(h)"),
        Rule("prohibited_social_scoring", c.PROHIBITED,
             ("public_authority", "evaluates_social_behavior", "detrimental_treatment"),
             article="Art. 5(1)(c)"),
        Rule("prohibited_subliminal_manipulation", c.PROHIBITED,
             ("subliminal_technique", "detrimental_treatment", "interacts_with_humans"),
             article="Art. 5(1)(a)", synthetic=True),
        Rule("high_risk_employment", c.HIGH_RISK,
             ("employment_context", "recruitment_or_promotion", "automated_decision"),
             article="Annex III 4"),
        Rule("high_risk_credit", c.HIGH_RISK,
             ("essential_service", "creditworthiness_or_insurance", "individual_assessment"),
             article="Annex III 5"),
        Rule("high_risk_critical_infrastructure", c.HIGH_RISK,
             ("critical_infrastructure", "safety_component", "autonomous_decision"),
             article="Annex III 2"),
        Rule("high_risk_education", c.HIGH_RISK,
             ("education_context", "determines_access", "affects_life_path"),
             article="Annex III 3"),
        Rule("high_risk_biometric_categorisation", c.HIGH_RISK,
             ("biometric_identification", "individual_assessment", "automated_decision"),
             article="Annex III 1", synthetic=True),
        Rule("high_risk_essential_access", c.HIGH_RISK,
             ("essential_service", "determines_access", "automated_decision"),
             article="Annex III 5", synthetic=True),
        Rule("high_risk_worker_monitoring", c.HIGH_RISK,
             ("employment_context", "evaluates_social_behavior", "automated_decision"),
             article="Annex III 4", synthetic=True),
        Rule("limited_chatbot", c.LIMITED_RISK,
             ("interacts_with_humans", "ai_generated_output", "not_clearly_disclosed"),
             article="Art. 50(1)"),
        Rule("limited_deepfake_content", c.LIMITED_RISK,
             ("ai_generated_output", "public_space", "not_clearly_disclosed"),
             article="Art. 50(4)", synthetic=True),
        Rule("limited_biometric_notice", c.LIMITED_RISK,
             ("biometric_identification", "interacts_with_humans", "not_clearly_disclosed"),
             article="Art. 50(3)", synthetic=True),
        Rule("limited_profiling_notice", c.LIMITED_RISK,
             ("individual_assessment", "evaluates_social_behavior", "not_clearly_disclosed"),
             article="Art. 50", synthetic=True),
    )
    return RuleSet(frozenset(CONDITION_VOCABULARY), rules)


# ---------------------------------------------------------------------------
# Rule file format: a JSON object with keys "vocabulary" and "rules".

_RULE_KEYS = {"rule_id", "category", "conditions", "theta", "article", "standard", "synthetic"}


def ruleset_to_json(ruleset: RuleSet) -> str:
    """Serialize deterministically: sorted vocabulary, rules in stored order."""
    doc = {
        "vocabulary": sorted(ruleset.vocabulary),
        "rules": [_rule_to_obj(r) for r in ruleset.rules],
    }
    return json.dumps(doc, indent=2) + "\n"


def _rule_to_obj(rule: Rule) -> dict:
    obj = {
        "rule_id": rule.rule_id,
        "category": rule.category.value,
        "conditions": list(rule.conditions),
        "theta": rule.theta,
        "article": rule.article,
    }
    if rule.standard is not None:
        obj["standard"] = rule.standard.value
    if rule.synthetic:
        obj["synthetic"] = True
    return obj


def parse_ruleset(text: str, where: str = "<ruleset>") -> RuleSet:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise RuleValidationError(f"{where}: not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise RuleValidationError(f"{where}: expected a JSON object")
    for key in ("vocabulary", "rules"):
        if key not in doc:
            raise RuleValidationError(f"{where}: missing top-level key {key!r}")
    vocab = doc["vocabulary"]
    if not isinstance(vocab, list) or not all(isinstance(v, str) for v in vocab):
        raise RuleValidationError(f"{where}: vocabulary must be an array of strings")
    rules = [_rule_from_obj(obj, where) for obj in doc["rules"]]
    return RuleSet(frozenset(vocab), tuple(rules))


def _rule_from_obj(obj: dict, where: str) -> Rule:
    if not isinstance(obj, dict):
        raise RuleValidationError(f"{where}: rule entries must be JSON objects")
    rule_id = obj.get("rule_id")
    if not isinstance(rule_id, str) or not rule_id:
        raise RuleValidationError(f"{where}: rule with missing or empty rule_id")
    unknown = set(obj) - _RULE_KEYS
    if unknown:
        raise RuleValidationError(
            f"rule {rule_id!r}: unknown field {sorted(unknown)[0]!r}")
    for key in ("category", "conditions", "theta"):
        if key not in obj:
            raise RuleValidationError(f"rule {rule_id!r}: missing field {key!r}")
    try:
        category = RiskCategory(obj["category"])
    except ValueError:
        raise RuleValidationError(
            f"rule {rule_id!r}: unknown category {obj['category']!r}") from None
    conditions = obj["conditions"]
    if not isinstance(conditions, list) or not all(isinstance(x, str) for x in conditions):
        raise RuleValidationError(f"rule {rule_id!r}: conditions must be an array of strings")
    theta = obj["theta"]
    if not isinstance(theta, (int, float)) or isinstance(theta, bool):
        raise RuleValidationError(f"rule {rule_id!r}: theta must be a number")
    standard = None
    if "standard" in obj:
        try:
            standard = ConjunctionStandard(obj["standard"])
        except ValueError:
            raise RuleValidationError(
                f"rule {rule_id!r}: unknown standard {obj['standard']!r}") from None
    synthetic = obj.get("synthetic", False)
    if not isinstance(synthetic, bool):
        raise RuleValidationError(f"rule {rule_id!r}: synthetic must be a boolean")
    article = obj.get("article", "")
    if not isinstance(article, str):
        raise RuleValidationError(f"rule {rule_id!r}: article must be a string")
    return Rule(rule_id, category, tuple(conditions), float(theta), article,
                standard, synthetic)


def load_ruleset(path) -> RuleSet:
    """Load and validate a rule file; errors name the offending rule and field."""
    p = Path(path)
    return parse_ruleset(p.read_text(encoding="utf-8"), where=str(p))


def save_ruleset(ruleset: RuleSet, path) -> None:
    Path(path).write_text(ruleset_to_json(ruleset), encoding="utf-8")
