"""Run configuration: aggregates, tie policy, rank classes and significance levels."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .percentiles import DEFAULT_ADJUSTMENT, NSF_SIX_CLASSES, RankClassScheme, TiePolicy

EU27 = (
    "Austria", "Belgium", "Bulgaria", "Croatia", "Cyprus", "Czech Republic", "Denmark",
    "Estonia", "Finland", "France", "Germany", "Greece", "Hungary", "Ireland", "Italy",
    "Latvia", "Lithuania", "Luxembourg", "Malta", "Netherlands", "Poland", "Portugal",
    "Romania", "Slovakia", "Slovenia", "Spain", "Sweden",
)
UK = ("England", "Scotland", "Wales", "North Ireland")

_KEYS = {"aggregates", "tie_policy", "adjustment", "scheme", "alpha_levels", "min_share_percent", "dedupe_countries"}


class ConfigError(ValueError):
    pass


def _exact(value, name: str) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (int, float, str)):
        raise ConfigError(f"{name}: expected a number")
    try:
        # go through str so 0.9 becomes 9/10, not the binary float
        return Fraction(str(value))
    except ValueError:
        raise ConfigError(f"{name}: expected a number, got {value!r}") from None


@dataclass(frozen=True)
class GroupingConfig:
    aggregates: Mapping[str, tuple[str, ...]] = field(default_factory=dict)
    tie_policy: TiePolicy = TiePolicy.HIGHEST
    adjustment: Fraction = DEFAULT_ADJUSTMENT
    scheme: RankClassScheme = NSF_SIX_CLASSES
    alpha_levels: tuple[float, float] = (0.05, 0.01)
    min_share_percent: Fraction = Fraction(1)
    dedupe_countries: bool = False

    def __post_init__(self):
        object.__setattr__(self, "tie_policy", TiePolicy(self.tie_policy))
        object.__setattr__(self, "adjustment", Fraction(self.adjustment))
        object.__setattr__(self, "min_share_percent", Fraction(self.min_share_percent))
        object.__setattr__(self, "aggregates", {k: tuple(v) for k, v in self.aggregates.items()})
        if not 0 <= self.adjustment < 1:
            raise ConfigError("adjustment must lie in [0, 1)")
        for name, members in self.aggregates.items():
            if not members:
                raise ConfigError(f"aggregate {name!r} has no members")
        loose, strict = self.alpha_levels
        if not (0 < strict < loose < 1):
            raise ConfigError("alpha_levels must be (loose, strict) with 0 < strict < loose < 1")
        if self.min_share_percent < 0:
            raise ConfigError("min_share_percent must be non-negative")

    @classmethod
    def eu_uk_preset(cls, **kwargs) -> GroupingConfig:
        """Config with the EU-27 and UK aggregates over WoS-style country tokens."""
        return cls(aggregates={"EU-27": EU27, "UK": UK}, **kwargs)

    @classmethod
    def from_dict(cls, doc: Mapping) -> GroupingConfig:
        if not isinstance(doc, Mapping):
            raise ConfigError("config must be a JSON object")
        unknown = sorted(set(doc) - _KEYS)
        if unknown:
            raise ConfigError(f"unknown config key {unknown[0]!r}")
        kwargs: dict = {}
        if "aggregates" in doc:
            aggs = doc["aggregates"]
            if not isinstance(aggs, Mapping) or not all(
                isinstance(v, list) and all(isinstance(m, str) for m in v) for v in aggs.values()
            ):
                raise ConfigError("aggregates: expected an object of string lists")
            kwargs["aggregates"] = aggs
        if "tie_policy" in doc:
            try:
                kwargs["tie_policy"] = TiePolicy(doc["tie_policy"])
            except ValueError:
                raise ConfigError(f"tie_policy: unknown value {doc['tie_policy']!r}") from None
        if "adjustment" in doc:
            kwargs["adjustment"] = _exact(doc["adjustment"], "adjustment")
        if "scheme" in doc:
            kwargs["scheme"] = _scheme_from_dict(doc["scheme"])
        if "alpha_levels" in doc:
            alphas = doc["alpha_levels"]
            if not isinstance(alphas, list) or len(alphas) != 2:
                raise ConfigError("alpha_levels: expected [loose, strict]")
            kwargs["alpha_levels"] = tuple(float(_exact(a, "alpha_levels")) for a in alphas)
        if "min_share_percent" in doc:
            kwargs["min_share_percent"] = _exact(doc["min_share_percent"], "min_share_percent")
        if "dedupe_countries" in doc:
            if not isinstance(doc["dedupe_countries"], bool):
                raise ConfigError("dedupe_countries: expected true or false")
            kwargs["dedupe_countries"] = doc["dedupe_countries"]
        try:
            return cls(**kwargs)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None

    @classmethod
    def from_json(cls, data: bytes | str) -> GroupingConfig:
        try:
            doc = json.loads(data)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"invalid JSON: {exc.msg}") from None
        return cls.from_dict(doc)

    def to_dict(self) -> dict:
        return {
            "aggregates": {k: list(v) for k, v in self.aggregates.items()},
            "tie_policy": self.tie_policy.value,
            "adjustment": str(self.adjustment),
            "scheme": {
                "classes": [[str(t), w] for t, w in self.scheme.classes],
                "catch_all": self.scheme.catch_all,
            },
            "alpha_levels": list(self.alpha_levels),
            "min_share_percent": str(self.min_share_percent),
            "dedupe_countries": self.dedupe_countries,
        }

    def digest(self) -> str:
        canon = json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canon.encode()).hexdigest()


def _scheme_from_dict(doc) -> RankClassScheme:
    if not isinstance(doc, Mapping) or set(doc) - {"classes", "catch_all"} or "classes" not in doc:
        raise ConfigError("scheme: expected {\"classes\": [[threshold, weight], ...], \"catch_all\": w}")
    try:
        classes = tuple((_exact(t, "scheme threshold"), int(w)) for t, w in doc["classes"])
        return RankClassScheme(classes, int(doc.get("catch_all", 1)))
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"scheme: {exc}") from None
