"""Urn dynamics: single extractions, exhaustion time and seeded trajectories.

At every extraction a ball is drawn; an amber draw adds ``A - a_k`` amber and
``a_k`` blue balls, a blue draw adds ``b_k`` amber and ``B - b_k`` blue balls.
Negative additions remove balls, so one colour can run out.  The first step
at which the amber count leaves ``[0, t_n]`` is the exhaustion time ``tau``.

Random numbers come from numpy's ``PCG64`` bit generator
(``np.random.default_rng(seed)``), whose ``random()`` stream is fixed across
platforms.  Trajectory ``i`` of a batch seeded with ``s`` uses seed ``s ^ i``.
Each extraction consumes exactly two uniforms: the first picks the colour,
the second samples the replacement law of that colour only.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from .distributions import IntegerDistribution


class Color(enum.IntEnum):
    BLUE = 0
    AMBER = 1


class TauKind(enum.Enum):
    AMBER_EXHAUSTED = "AmberExhausted"
    BLUE_EXHAUSTED = "BlueExhausted"

    def swapped(self) -> "TauKind":
        if self is TauKind.AMBER_EXHAUSTED:
            return TauKind.BLUE_EXHAUSTED
        return TauKind.AMBER_EXHAUSTED


@dataclass(frozen=True)
class UrnScheme:
    """Parameters of the scheme ``[A - a_k, a_k ; b_k, B - b_k]``.

    If ``A < B`` the colours are interchanged on construction so that
    ``delta = A - B >= 0`` always holds internally; ``swapped`` records this
    and every quantity on the object (laws, initial counts, proportions) then
    refers to the relabelled colours.  Use :meth:`to_external_alpha` and
    :meth:`to_internal_alpha` to translate amber counts.
    """

    A: int
    B: int
    a_law: IntegerDistribution
    b_law: IntegerDistribution
    alpha0: int
    beta0: int
    swapped: bool = False

    def __post_init__(self):
        for name in ("A", "B", "alpha0", "beta0"):
            v = getattr(self, name)
            if isinstance(v, bool) or not isinstance(v, (int, np.integer)):
                raise ValueError(f"{name} must be an integer, got {v!r}")
        if self.A < 1:
            raise ValueError(f"A must be positive, got {self.A}")
        if self.B < 1:
            raise ValueError(f"B must be positive, got {self.B}")
        if self.alpha0 < 0:
            raise ValueError(f"alpha0 must be nonnegative, got {self.alpha0}")
        if self.beta0 < 0:
            raise ValueError(f"beta0 must be nonnegative, got {self.beta0}")
        if self.alpha0 + self.beta0 < 1:
            raise ValueError("the urn needs at least one ball (alpha0 + beta0 >= 1)")
        if self.A < self.B:
            A, B = self.A, self.B
            a_law, b_law = self.a_law, self.b_law
            alpha0, beta0 = self.alpha0, self.beta0
            object.__setattr__(self, "A", B)
            object.__setattr__(self, "B", A)
            object.__setattr__(self, "a_law", b_law)
            object.__setattr__(self, "b_law", a_law)
            object.__setattr__(self, "alpha0", beta0)
            object.__setattr__(self, "beta0", alpha0)
            object.__setattr__(self, "swapped", not self.swapped)

    @property
    def delta(self) -> int:
        return self.A - self.B

    @property
    def t0(self) -> int:
        return self.alpha0 + self.beta0

    @property
    def a_mean(self) -> Fraction:
        return self.a_law.mean()

    @property
    def b_mean(self) -> Fraction:
        return self.b_law.mean()

    def is_safe(self) -> bool:
        """True when no replacement can remove balls, so tau is infinite."""
        return (
            0 <= self.a_law.min
            and self.a_law.max <= self.A
            and 0 <= self.b_law.min
            and self.b_law.max <= self.B
        )

    def with_initial(self, alpha0: int, beta0: int) -> "UrnScheme":
        """Copy with a new initial composition, given in internal labels."""
        return UrnScheme(self.A, self.B, self.a_law, self.b_law, alpha0, beta0, self.swapped)

    def to_internal_alpha(self, t: int, alpha: int) -> int:
        return t - alpha if self.swapped else alpha

    to_external_alpha = to_internal_alpha

    def initial_state(self) -> "UrnState":
        return UrnState(n=0, t=self.t0, alpha=self.alpha0, x=0)


@dataclass(frozen=True)
class UrnState:
    n: int
    t: int
    alpha: int
    x: int = 0

    @property
    def beta(self) -> int:
        return self.t - self.alpha

    @property
    def p(self) -> float:
        return self.alpha / self.t


@dataclass(frozen=True)
class Absorbed:
    """Result of a step that exhausted one colour; ``n`` is the step index."""

    kind: TauKind
    n: int
    t: int
    alpha: int


def step(scheme: UrnScheme, state: UrnState, color: Color, draw: int) -> UrnState | Absorbed:
    """Apply one extraction of ``color`` with replacement count ``draw``.

    ``draw`` is the ``a_k`` value for an amber draw and the ``b_k`` value for a
    blue one.
    """
    if color == Color.AMBER:
        if draw not in scheme.a_law.support:
            raise ValueError(f"a draw {draw} is not in the support of a_law")
        t = state.t + scheme.A
        alpha = state.alpha + scheme.A - draw
        x = state.x + 1
    else:
        if draw not in scheme.b_law.support:
            raise ValueError(f"b draw {draw} is not in the support of b_law")
        t = state.t + scheme.B
        alpha = state.alpha + draw
        x = state.x
    n = state.n + 1
    assert t == scheme.t0 + n * scheme.B + scheme.delta * x
    if alpha < 0:
        return Absorbed(TauKind.AMBER_EXHAUSTED, n, t, alpha)
    if alpha > t:
        return Absorbed(TauKind.BLUE_EXHAUSTED, n, t, alpha)
    return UrnState(n=n, t=t, alpha=alpha, x=x)


def draw_color(state: UrnState, rng) -> Color:
    """Amber with probability ``alpha / t`` (amber iff ``u < p``)."""
    return Color.AMBER if rng.random() < state.alpha / state.t else Color.BLUE


@dataclass
class Trajectory:
    """A simulated path.

    ``p`` holds ``p_0 .. p_last``; when ``tau`` is set the last entry is the
    out-of-range proportion at step ``tau``.  ``colors[k-1]`` is ``Y_k``.
    """

    scheme: UrnScheme
    seed: int
    p: np.ndarray
    colors: np.ndarray
    final_t: int
    final_alpha: int
    tau: Optional[int] = None
    tau_kind: Optional[TauKind] = None
    max_steps: int = field(default=0)

    @property
    def survived(self) -> bool:
        return self.tau is None

    @property
    def steps(self) -> int:
        return len(self.colors)

    def valid_p(self) -> np.ndarray:
        """Proportions while the process was alive (drops the value at tau)."""
        return self.p if self.tau is None else self.p[:-1]

    def amber_fraction(self) -> np.ndarray:
        """``X_n / n`` for ``n = 1 .. steps``."""
        n = np.arange(1, self.steps + 1)
        return np.cumsum(self.colors) / n

    def relabeled(self) -> "Trajectory":
        """The same path expressed in the user's original colour labels."""
        if not self.scheme.swapped:
            return self
        return Trajectory(
            scheme=self.scheme,
            seed=self.seed,
            p=1.0 - self.p,
            colors=1 - self.colors,
            final_t=self.final_t,
            final_alpha=self.final_t - self.final_alpha,
            tau=self.tau,
            tau_kind=None if self.tau_kind is None else self.tau_kind.swapped(),
            max_steps=self.max_steps,
        )

    def to_csv(self) -> str:
        """``n,p,color`` rows plus a trailing ``# tau=.. kind=..`` comment."""
        lines = ["n,p,color"]
        p = self.p.tolist()
        colors = self.colors.tolist()
        lines.append(f"0,{p[0]!r},")
        for n in range(1, len(p)):
            lines.append(f"{n},{p[n]!r},{colors[n - 1]}")
        tau = "none" if self.tau is None else str(self.tau)
        kind = "none" if self.tau_kind is None else self.tau_kind.value
        lines.append(f"# tau={tau} kind={kind}")
        return "\n".join(lines) + "\n"


def simulate_trajectory(scheme: UrnScheme, max_steps: int, seed: int) -> Trajectory:
    """Run up to ``max_steps`` extractions, stopping at exhaustion."""
    if max_steps < 1:
        raise ValueError("max_steps must be at least 1")
    rng = np.random.default_rng(seed)
    u = rng.random(2 * max_steps)
    u_color = u[0::2].tolist()
    u_law = u[1::2]
    # A - a_k and b_k for every step, from the same uniform; only one is used
    amber_inc = (scheme.A - scheme.a_law.from_uniforms(u_law)).tolist()
    blue_inc = scheme.b_law.from_uniforms(u_law).tolist()

    A, B = scheme.A, scheme.B
    t, alpha = scheme.t0, scheme.alpha0
    p_seq = [alpha / t]
    colors = []
    tau = None
    kind = None
    for k in range(max_steps):
        if u_color[k] < alpha / t:
            colors.append(1)
            t += A
            alpha += amber_inc[k]
        else:
            colors.append(0)
            t += B
            alpha += blue_inc[k]
        p_seq.append(alpha / t)
        if alpha < 0:
            tau, kind = k + 1, TauKind.AMBER_EXHAUSTED
            break
        if alpha > t:
            tau, kind = k + 1, TauKind.BLUE_EXHAUSTED
            break
    colors_arr = np.asarray(colors, dtype=np.int8)
    assert t == scheme.t0 + len(colors) * B + scheme.delta * int(colors_arr.sum())
    return Trajectory(
        scheme=scheme,
        seed=seed,
        p=np.asarray(p_seq),
        colors=colors_arr,
        final_t=t,
        final_alpha=alpha,
        tau=tau,
        tau_kind=kind,
        max_steps=max_steps,
    )
