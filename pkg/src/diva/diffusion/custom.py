"""Declarative transition-rule models.

A rule set is a JSON document:

    {"states": [0, 1, 2],
     "rules": [{"from": 0, "to": 1, "trigger": 1, "p": 0.05},
               {"from": 1, "to": 2, "p": 0.1},
               {"from": 0, "to": -1, "trigger": 1, "threshold": 0.5}]}

Three rule shapes: spontaneous (from, to, p), per-contact neighbor-driven
(from, to, trigger, p; fires with 1-(1-p)^k for k trigger-state neighbors)
and threshold neighbor-driven (from, to, trigger, threshold; fires when the
trigger-state neighbor fraction reaches the threshold).  Rules apply in
listed order within an iteration; a node transitions at most once per
iteration (first matching rule wins).  Spontaneous exits from state 1 honor
the engine-wide infectious holding period, which makes the built-in
compartmental models exactly expressible as rule sets.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from ..errors import RuleError

SPONTANEOUS = "spontaneous"
CONTACT = "contact"
THRESHOLD = "threshold"


@dataclass(frozen=True)
class Rule:
    from_code: int
    to_code: int
    kind: str
    trigger: int | None = None
    p: float | None = None
    threshold: float | None = None

    def to_dict(self) -> dict:
        doc = {"from": self.from_code, "to": self.to_code}
        if self.trigger is not None:
            doc["trigger"] = self.trigger
        if self.p is not None:
            doc["p"] = self.p
        if self.threshold is not None:
            doc["threshold"] = self.threshold
        return doc


@dataclass(frozen=True)
class RuleSet:
    states: tuple[int, ...]
    rules: tuple[Rule, ...]

    def to_dict(self) -> dict:
        return {
            "states": list(self.states),
            "rules": [r.to_dict() for r in self.rules],
        }


def _as_code(value, what: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise RuleError(f"{what} must be an integer state code", field=what)
    return value


def _as_prob(value, what: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise RuleError(f"{what} must be a number", field=what)
    value = float(value)
    if not (0.0 <= value <= 1.0):
        raise RuleError(f"{what} must lie in [0, 1]", field=what, value=value)
    return value


def parse_rules(doc: Mapping) -> RuleSet:
    """Validate a rule-set document; RuleError on any inconsistency."""
    if not isinstance(doc, Mapping):
        raise RuleError("rule set must be an object with 'states' and 'rules'")
    extra = set(doc) - {"states", "rules"}
    if extra:
        raise RuleError(f"rule set has unknown fields {sorted(extra)}")
    states_raw = doc.get("states")
    if not isinstance(states_raw, (list, tuple)) or not states_raw:
        raise RuleError("'states' must be a non-empty list of integer codes")
    states = tuple(_as_code(s, "state") for s in states_raw)
    if len(set(states)) != len(states):
        raise RuleError("'states' contains duplicates")
    state_set = set(states)
    if 0 not in state_set or 1 not in state_set:
        raise RuleError("'states' must include codes 0 and 1")

    rules_raw = doc.get("rules")
    if not isinstance(rules_raw, (list, tuple)):
        raise RuleError("'rules' must be a list")
    rules: list[Rule] = []
    seen: set[tuple] = set()
    for pos, raw in enumerate(rules_raw):
        if not isinstance(raw, Mapping):
            raise RuleError("rule must be an object", rule=pos)
        extra = set(raw) - {"from", "to", "trigger", "p", "threshold"}
        if extra:
            raise RuleError(f"rule has unknown fields {sorted(extra)}", rule=pos)
        if "from" not in raw or "to" not in raw:
            raise RuleError("rule requires 'from' and 'to'", rule=pos)
        from_code = _as_code(raw["from"], "from")
        to_code = _as_code(raw["to"], "to")
        for code, what in ((from_code, "from"), (to_code, "to")):
            if code not in state_set:
                raise RuleError(
                    f"rule references unknown state {code}", rule=pos, field=what
                )
        if from_code == to_code:
            raise RuleError("rule must change the state", rule=pos)
        trigger = raw.get("trigger")
        has_p = "p" in raw
        has_threshold = "threshold" in raw
        if has_p == has_threshold:
            raise RuleError(
                "rule requires exactly one of 'p' or 'threshold'", rule=pos
            )
        if trigger is None:
            if has_threshold:
                raise RuleError(
                    "threshold rules require a 'trigger' state", rule=pos
                )
            rule = Rule(from_code, to_code, SPONTANEOUS, p=_as_prob(raw["p"], "p"))
        else:
            trigger = _as_code(trigger, "trigger")
            if trigger not in state_set:
                raise RuleError(
                    f"rule references unknown trigger state {trigger}", rule=pos
                )
            if has_p:
                rule = Rule(
                    from_code, to_code, CONTACT, trigger=trigger,
                    p=_as_prob(raw["p"], "p"),
                )
            else:
                rule = Rule(
                    from_code, to_code, THRESHOLD, trigger=trigger,
                    threshold=_as_prob(raw["threshold"], "threshold"),
                )
        key = (rule.from_code, rule.to_code, rule.kind, rule.trigger)
        if key in seen:
            raise RuleError(
                "duplicate rule makes the process nondeterministic", rule=pos
            )
        seen.add(key)
        rules.append(rule)
    return RuleSet(states=states, rules=tuple(rules))
