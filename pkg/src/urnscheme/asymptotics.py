"""Limit behaviour of the amber proportion.

Any almost-sure limit of ``p_n`` on ``{tau = inf}`` is a root in ``[0, 1]`` of

    omega(x) = delta*x**2 - (delta - a_mean - b_mean)*x - b_mean

and the expected one-step change of ``p_n`` has the sign of the parabola
``drift(p, t)``.  :func:`classify` combines the two into one of the regimes
below.  Sign decisions are made on exact Fractions; only root values are
floats.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .urn import UrnScheme


class NegativeDiscriminant(ValueError):
    pass


class ZeroDelta(ValueError):
    pass


class Regime(enum.Enum):
    SUBMARTINGALE_ABSORB = "SubmartingaleAbsorb"
    SUBMARTINGALE_TO_ONE = "SubmartingaleToOne"
    CONVERGE_UPPER = "ConvergeUpper"
    CONVERGE_LOWER = "ConvergeLower"
    SUPERMARTINGALE_ABSORB = "SupermartingaleAbsorb"
    SUPERMARTINGALE_TO_ZERO = "SupermartingaleToZero"
    BISTABLE = "Bistable"
    BALANCED_DETERMINISTIC = "BalancedDeterministic"
    BALANCED_POLYA_EGGENBERGER = "BalancedPolyaEggenberger"


def omega(x: float, delta, a_mean, b_mean) -> float:
    return delta * x * x - (delta - a_mean - b_mean) * x - b_mean


def discriminant(delta, a_mean, b_mean):
    """``(delta - a - b)**2 + 4*delta*b``; exact when the inputs are."""
    m = delta - a_mean - b_mean
    return m * m + 4 * delta * b_mean


def _roots(delta, a_mean, b_mean) -> tuple[float, float]:
    if delta == 0:
        raise ZeroDelta("omega is linear when delta == 0; the limit is b/(a+b)")
    disc = discriminant(delta, a_mean, b_mean)
    if disc < 0:
        raise NegativeDiscriminant(f"discriminant {float(disc)} < 0, omega has no real roots")
    m = float(delta - a_mean - b_mean)
    sq = math.sqrt(float(disc))
    d = float(delta)
    c = -float(b_mean)
    # larger-magnitude root first, the other from the product c/d
    if m >= 0:
        big = (m + sq) / (2 * d)
        if big == 0.0:
            return 0.0, 0.0
        return c / (d * big), big
    small = (m - sq) / (2 * d)
    return small, c / (d * small)


def upper_root(delta, a_mean, b_mean) -> float:
    """The root with the ``+`` sign; the stable limit point."""
    return _roots(delta, a_mean, b_mean)[1]


def lower_root(delta, a_mean, b_mean) -> float:
    """The root with the ``-`` sign; the unstable limit point."""
    return _roots(delta, a_mean, b_mean)[0]


def drift(p, t, A, B, a_mean, b_mean):
    """The parabola ``h(p, t)``.

    ``E[p_{n+1} | F_n] - p_n = h(p_n, t_n) / ((1 + A/t)(1 + B/t))``.
    Works with floats or, for exact evaluation, Fractions.
    """
    delta = A - B
    ca = 1 + B / t
    cb = 1 + A / t
    return (-p * p * delta + p * (delta - a_mean * ca - b_mean * cb) + b_mean * cb) / t


def expected_increment(p, t, A, B, a_mean, b_mean):
    """``E[p_{n+1} | F_n] - p_n`` from the drift formula."""
    return drift(p, t, A, B, a_mean, b_mean) / ((1 + A / t) * (1 + B / t))


def drift_roots(t: float, A, B, a_mean, b_mean) -> list[float]:
    """Real roots of ``p -> h(p, t)`` lying in ``[0, 1]``, ascending."""
    delta = A - B
    ca = 1 + B / t
    cb = 1 + A / t
    lin = float(delta - a_mean * ca - b_mean * cb)
    const = float(b_mean * cb)
    if delta == 0:
        if lin == 0:
            return []
        r = -const / lin
        return [r] if 0.0 <= r <= 1.0 else []
    # -delta p^2 + lin p + const = 0  <=>  delta p^2 - lin p - const = 0
    disc = lin * lin + 4 * delta * const
    if disc < 0:
        return []
    sq = math.sqrt(disc)
    if lin >= 0:
        big = (lin + sq) / (2 * delta)
        pair = [-const / (delta * big) if big != 0 else 0.0, big]
    else:
        small = (lin - sq) / (2 * delta)
        pair = [small, -const / (delta * small)]
    return sorted(r for r in pair if 0.0 <= r <= 1.0)


def vertex(t, A, B, a_mean, b_mean):
    """Location of the maximum of ``p -> h(p, t)`` (requires ``A > B``).

    For ``b_mean < 0 < a_mean`` the parabola is negative at both ends of
    [0, 1], so whether it ever becomes positive is decided at this point.
    """
    delta = A - B
    return Fraction(1, 2) - (a_mean * (1 + B / t) + b_mean * (1 + A / t)) / (2 * delta)


@dataclass(frozen=True)
class RegimeReport:
    delta: int
    a_mean: Fraction
    b_mean: Fraction
    regime: Regime
    limit_points: tuple[float, ...]
    discriminant: float
    random_limit: bool = False
    colors_swapped: bool = False
    notes: tuple[str, ...] = field(default=())

    def to_json(self) -> dict:
        def frac(x: Fraction) -> str:
            return f"{x.numerator}/{x.denominator}"

        out = {
            "delta": self.delta,
            "aMean": frac(self.a_mean),
            "bMean": frac(self.b_mean),
            "regime": self.regime.value,
            "limitPoints": list(self.limit_points),
            "discriminant": self.discriminant,
        }
        if self.random_limit:
            out["randomLimit"] = True
        if self.colors_swapped:
            out["colorsSwapped"] = True
            # proportions of the colour the user called amber
            out["limitPointsOriginalLabels"] = sorted(1.0 - x for x in self.limit_points)
        if self.notes:
            out["notes"] = list(self.notes)
        return out


def classify(scheme: UrnScheme) -> RegimeReport:
    delta = scheme.delta
    a = scheme.a_mean
    b = scheme.b_mean
    disc = discriminant(delta, a, b)
    notes = []
    if scheme.swapped:
        notes.append("A < B was given; colours were interchanged so that A >= B")

    def report(regime, points=(), random_limit=False):
        return RegimeReport(
            delta=delta,
            a_mean=a,
            b_mean=b,
            regime=regime,
            limit_points=tuple(sorted(points)),
            discriminant=float(disc),
            random_limit=random_limit,
            colors_swapped=scheme.swapped,
            notes=tuple(notes),
        )

    if delta == 0:
        if a == 0 and b == 0:
            notes.append("limit proportion is random (Beta distributed)")
            return report(Regime.BALANCED_POLYA_EGGENBERGER, random_limit=True)
        if a + b == 0:
            return report(Regime.BALANCED_DETERMINISTIC)
        lim = b / (a + b)
        points = (float(lim),) if 0 <= lim <= 1 else ()
        return report(Regime.BALANCED_DETERMINISTIC, points)

    if a <= 0 <= b:
        if a < 0:
            return report(Regime.SUBMARTINGALE_ABSORB)
        return report(Regime.SUBMARTINGALE_TO_ONE, (1.0,))
    if a > 0 and b > 0:
        return report(Regime.CONVERGE_UPPER, (upper_root(delta, a, b),))
    if a < 0 and b < 0:
        return report(Regime.CONVERGE_LOWER, (lower_root(delta, a, b),))

    # remaining case: b <= 0 <= a
    if abs(a + b) > delta or disc < 0:
        if b < 0:
            return report(Regime.SUPERMARTINGALE_ABSORB)
        return report(Regime.SUPERMARTINGALE_TO_ZERO, (0.0,))
    lo, hi = _roots(delta, a, b)
    if b == 0:
        lo = 0.0
    if a == 0:
        hi = 1.0
    points = (lo,) if disc == 0 else (lo, hi)
    return report(Regime.BISTABLE, points)
