"""JSON scheme configuration with field-level validation."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .distributions import IntegerDistribution
from .urn import UrnScheme

_TOP_KEYS = ("A", "B", "a", "b", "alpha0", "beta0")
_LAW_KEYS = ("values", "weights")


class ConfigError(ValueError):
    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"{field}: {message}" if field else message)


@dataclass(frozen=True)
class SchemeConfig:
    """Scheme parameters exactly as the user wrote them (no colour swap)."""

    A: int
    B: int
    a: IntegerDistribution
    b: IntegerDistribution
    alpha0: int
    beta0: int

    def to_scheme(self) -> UrnScheme:
        return UrnScheme(self.A, self.B, self.a, self.b, self.alpha0, self.beta0)

    def to_json(self) -> dict:
        return {
            "A": self.A,
            "B": self.B,
            "a": self.a.to_json(),
            "b": self.b.to_json(),
            "alpha0": self.alpha0,
            "beta0": self.beta0,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2) + "\n"


def _is_int(v) -> bool:
    return isinstance(v, int) and not isinstance(v, bool)


def _check_keys(obj, allowed, prefix):
    if not isinstance(obj, dict):
        raise ConfigError(prefix, "expected a JSON object")
    for key in obj:
        if key not in allowed:
            raise ConfigError(f"{prefix}.{key}" if prefix else key, "unknown key")
    for key in allowed:
        if key not in obj:
            raise ConfigError(f"{prefix}.{key}" if prefix else key, "missing field")


def _parse_weight(w, field):
    if _is_int(w):
        fw = Fraction(w)
    elif isinstance(w, float):
        fw = Fraction(repr(w))
    elif isinstance(w, str):
        try:
            fw = Fraction(w)
        except (ValueError, ZeroDivisionError):
            raise ConfigError(field, f"not a number: {w!r}") from None
    else:
        raise ConfigError(field, f"weight must be a number, got {w!r}")
    if fw <= 0:
        raise ConfigError(field, f"weight must be strictly positive, got {w!r}")
    return fw


def _parse_law(obj, name) -> IntegerDistribution:
    _check_keys(obj, _LAW_KEYS, name)
    values, weights = obj["values"], obj["weights"]
    if not isinstance(values, list) or not values:
        raise ConfigError(f"{name}.values", "expected a nonempty list of integers")
    if not isinstance(weights, list):
        raise ConfigError(f"{name}.weights", "expected a list")
    if len(weights) != len(values):
        raise ConfigError(
            f"{name}.weights", f"has {len(weights)} entries but values has {len(values)}"
        )
    seen = set()
    for i, v in enumerate(values):
        if not _is_int(v):
            raise ConfigError(f"{name}.values[{i}]", f"expected an integer, got {v!r}")
        if v in seen:
            raise ConfigError(f"{name}.values[{i}]", f"duplicate value {v}")
        seen.add(v)
    fweights = [_parse_weight(w, f"{name}.weights[{i}]") for i, w in enumerate(weights)]
    return IntegerDistribution(values, fweights)


def config_from_dict(obj) -> SchemeConfig:
    _check_keys(obj, _TOP_KEYS, "")
    for key in ("A", "B", "alpha0", "beta0"):
        if not _is_int(obj[key]):
            raise ConfigError(key, f"expected an integer, got {obj[key]!r}")
    for key in ("A", "B"):
        if obj[key] <= 0:
            raise ConfigError(key, f"must be positive, got {obj[key]}")
    for key in ("alpha0", "beta0"):
        if obj[key] < 0:
            raise ConfigError(key, f"must be nonnegative, got {obj[key]}")
    if obj["alpha0"] + obj["beta0"] < 1:
        raise ConfigError("alpha0", "alpha0 + beta0 must be at least 1")
    cfg = SchemeConfig(
        A=obj["A"],
        B=obj["B"],
        a=_parse_law(obj["a"], "a"),
        b=_parse_law(obj["b"], "b"),
        alpha0=obj["alpha0"],
        beta0=obj["beta0"],
    )
    return cfg


def parse_config(text: str) -> SchemeConfig:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError("", f"malformed JSON: {exc}") from None
    return config_from_dict(obj)


def load_config(path) -> SchemeConfig:
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read())
