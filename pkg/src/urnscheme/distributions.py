"""Finite-support integer laws used for the random replacement counts."""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Sequence

import numpy as np


def _as_fraction(w) -> Fraction:
    if isinstance(w, bool):
        raise TypeError("weight must be a number, not bool")
    if isinstance(w, (int, Rational)):
        return Fraction(w)
    if isinstance(w, float):
        # decimal literal semantics, so 0.1 means 1/10
        return Fraction(repr(w))
    if isinstance(w, str):
        return Fraction(w)
    raise TypeError(f"unsupported weight type {type(w).__name__}")


@dataclass(frozen=True)
class IntegerDistribution:
    """A law on finitely many integers with weights taken proportionally.

    ``IntegerDistribution([-5, -2, 4, 7], [1, 2, 2, 1])`` puts mass 1/6, 1/3,
    1/3, 1/6 on the four values.  Weights may be ints, Fractions, strings
    such as ``"1/3"`` or floats (read as their decimal literal).
    """

    values: tuple[int, ...]
    weights: tuple[Fraction, ...]
    probabilities: tuple[Fraction, ...] = field(init=False, repr=False, compare=False)
    _cumulative: tuple[float, ...] = field(init=False, repr=False, compare=False)

    def __init__(self, values: Sequence[int], weights: Sequence = None):
        values = tuple(values)
        if weights is None:
            weights = [1] * len(values)
        weights = tuple(weights)
        if len(values) == 0:
            raise ValueError("distribution needs at least one value")
        if len(values) != len(weights):
            raise ValueError(
                f"values and weights differ in length ({len(values)} != {len(weights)})"
            )
        for i, v in enumerate(values):
            if isinstance(v, bool) or not isinstance(v, (int, np.integer)):
                raise ValueError(f"values[{i}] must be an integer, got {v!r}")
        values = tuple(int(v) for v in values)
        if len(set(values)) != len(values):
            seen = set()
            for i, v in enumerate(values):
                if v in seen:
                    raise ValueError(f"values[{i}] duplicates value {v}")
                seen.add(v)
        fweights = []
        for i, w in enumerate(weights):
            try:
                fw = _as_fraction(w)
            except (TypeError, ValueError, ZeroDivisionError) as exc:
                raise ValueError(f"weights[{i}] is not a number: {w!r}") from exc
            if fw <= 0:
                raise ValueError(f"weights[{i}] must be strictly positive, got {w!r}")
            fweights.append(fw)
        total = sum(fweights)
        probs = tuple(w / total for w in fweights)
        acc = Fraction(0)
        cum = []
        for pr in probs[:-1]:
            acc += pr
            cum.append(float(acc))
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "weights", tuple(fweights))
        object.__setattr__(self, "probabilities", probs)
        object.__setattr__(self, "_cumulative", tuple(cum))

    @classmethod
    def degenerate(cls, value: int) -> "IntegerDistribution":
        return cls([value], [1])

    def mean(self) -> Fraction:
        """Exact mean as a Fraction."""
        return sum((v * p for v, p in zip(self.values, self.probabilities)), Fraction(0))

    @property
    def support(self) -> frozenset[int]:
        return frozenset(self.values)

    @property
    def min(self) -> int:
        return min(self.values)

    @property
    def max(self) -> int:
        return max(self.values)

    def from_uniform(self, u: float) -> int:
        """Inverse CDF: the value whose cumulative bracket contains ``u``.

        The chosen index is the largest ``i`` with ``u >= cdf[i-1]``.
        """
        return self.values[bisect_right(self._cumulative, u)]

    def from_uniforms(self, u: np.ndarray) -> np.ndarray:
        """Vectorised :meth:`from_uniform`."""
        idx = np.searchsorted(np.asarray(self._cumulative), u, side="right")
        return np.asarray(self.values, dtype=np.int64)[idx]

    def sample(self, rng) -> int:
        """Draw one value; ``rng`` needs a ``random()`` method returning [0, 1)."""
        return self.from_uniform(rng.random())

    def items(self):
        """Pairs of (value, exact probability)."""
        return zip(self.values, self.probabilities)

    def to_json(self) -> dict:
        def enc(w: Fraction):
            return w.numerator if w.denominator == 1 else str(w)

        return {"values": list(self.values), "weights": [enc(w) for w in self.weights]}

    @classmethod
    def from_json(cls, obj: dict) -> "IntegerDistribution":
        return cls(obj["values"], obj["weights"])

    def scaled(self, factor) -> "IntegerDistribution":
        """Same law with every weight multiplied by ``factor``."""
        factor = _as_fraction(factor)
        return IntegerDistribution(self.values, [w * factor for w in self.weights])
