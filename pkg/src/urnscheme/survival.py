"""Exact probability of surviving ``M`` extractions, by backward induction.

With ``q_n(t, alpha) = P{tau > M | t_n = t, alpha_n = alpha}`` and
``q_M = 1`` on ``0 <= alpha <= t``::

    q_n(t, alpha) = alpha/t     * sum_a r(a) q_{n+1}(t + A, alpha + A - a)
                  + (1-alpha/t) * sum_b s(b) q_{n+1}(t + B, alpha + b)

where a child with amber count outside ``[0, t']`` contributes 0.

Layer ``n`` covers ``t`` in ``[t1 + n*B, t2 + n*A]`` and is stored densely as
rows of ``t`` and columns of ``alpha``, padded on both sides with cells that
count as exhausted, so each term of the sum is one shifted slice of the
previous layer.  Only two layers are alive at a time.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .urn import UrnScheme

log = logging.getLogger(__name__)

DEFAULT_MAX_LAYER_CELLS = 50_000_000


class MemoryBudgetExceeded(MemoryError):
    pass


@dataclass
class SurvivalGrid:
    """``q_0(t, alpha)`` for ``t1 <= t <= t2`` and ``0 <= alpha <= t``.

    ``alpha`` is in the scheme's internal labels; ``values[t - t1, alpha]``
    is zero for ``alpha > t``.
    """

    scheme: UrnScheme
    horizon: int
    t_range: tuple[int, int]
    values: np.ndarray

    def value(self, t: int, alpha: int) -> float:
        t1, t2 = self.t_range
        if not t1 <= t <= t2:
            raise KeyError(f"t={t} outside the solved range [{t1}, {t2}]")
        if alpha < 0 or alpha > t:
            return 0.0
        return float(self.values[t - t1, alpha])

    __getitem__ = lambda self, key: self.value(*key)  # noqa: E731

    def items(self) -> Iterable[tuple[int, int, float]]:
        t1, t2 = self.t_range
        for t in range(t1, t2 + 1):
            row = self.values[t - t1]
            for alpha in range(t + 1):
                yield t, alpha, float(row[alpha])


def _layer_bounds(t1: int, t2: int, n: int, A: int, B: int) -> tuple[int, int]:
    return t1 + n * B, t2 + n * A


def solve(
    scheme: UrnScheme,
    M: int,
    t_range: tuple[int, int],
    max_layer_cells: int = DEFAULT_MAX_LAYER_CELLS,
) -> SurvivalGrid:
    """Compute ``q_0`` for every initial composition with ``t`` in ``t_range``.

    ``scheme``'s own initial composition is ignored.  Raises
    :class:`MemoryBudgetExceeded` if the widest layer would exceed
    ``max_layer_cells`` cells.
    """
    t1, t2 = t_range
    if M < 0:
        raise ValueError("horizon M must be nonnegative")
    if not 1 <= t1 <= t2:
        raise ValueError(f"need 1 <= t1 <= t2, got {t_range}")
    A, B = scheme.A, scheme.B
    delta = A - B

    amber_shift = [(A - a, float(p)) for a, p in scheme.a_law.items()]
    blue_shift = [(b, float(p)) for b, p in scheme.b_law.items()]
    all_shifts = [s for s, _ in amber_shift] + [s for s, _ in blue_shift]
    pad_l = max(0, -min(all_shifts))
    # reads reach alpha + shift <= hi_n + max_shift; the child layer is A wider
    pad_r = max(0, max(all_shifts) - A)

    lo, hi = _layer_bounds(t1, t2, M, A, B)
    cells = (hi - lo + 1) * (pad_l + hi + 1 + pad_r)
    if cells > max_layer_cells:
        raise MemoryBudgetExceeded(
            f"final layer needs {cells} cells (budget {max_layer_cells}); "
            "reduce M or the t range"
        )

    def fresh_layer(lo: int, hi: int) -> np.ndarray:
        return np.ones((hi - lo + 1, pad_l + hi + 1 + pad_r))

    def fill_above_diagonal(core: np.ndarray, lo: int) -> None:
        for i in range(core.shape[0]):
            core[i, lo + i + 1 :] = 1.0

    # The recursion runs on the absorption probability d = 1 - q, so that
    # out-of-range children contribute exactly 1 and a scheme that can never
    # exhaust a colour gives exactly q = 1.
    prev = fresh_layer(lo, hi)
    core = prev[:, pad_l : pad_l + hi + 1]
    core[...] = 0.0
    fill_above_diagonal(core, lo)

    for n in range(M - 1, -1, -1):
        lo, hi = _layer_bounds(t1, t2, n, A, B)
        rows = hi - lo + 1
        width = hi + 1
        acc_a = np.zeros((rows, width))
        acc_b = np.zeros((rows, width))
        tmp = np.empty((rows, width))
        # amber children sit delta rows further down the previous layer
        for shift, prob in amber_shift:
            c = pad_l + shift
            np.multiply(prev[delta : delta + rows, c : c + width], prob, out=tmp)
            acc_a += tmp
        for shift, prob in blue_shift:
            c = pad_l + shift
            np.multiply(prev[0:rows, c : c + width], prob, out=tmp)
            acc_b += tmp
        del tmp
        # d = blue + (alpha / t) * (amber - blue)
        acc_a -= acc_b
        acc_a *= np.arange(width, dtype=float)[None, :]
        acc_a /= np.arange(lo, hi + 1, dtype=float)[:, None]
        acc_a += acc_b
        del acc_b
        np.clip(acc_a, 0.0, 1.0, out=acc_a)
        prev = fresh_layer(lo, hi)
        core = prev[:, pad_l : pad_l + width]
        core[...] = acc_a
        del acc_a
        fill_above_diagonal(core, lo)
        if n % 100 == 0:
            log.debug("survival layer n=%d done (t in [%d, %d])", n, lo, hi)

    values = 1.0 - prev[:, pad_l : pad_l + t2 + 1]
    for i in range(values.shape[0]):
        values[i, t1 + i + 1 :] = 0.0
    return SurvivalGrid(scheme=scheme, horizon=M, t_range=(t1, t2), values=values)


def parse_fraction(s) -> Fraction:
    if isinstance(s, Fraction):
        return s
    if isinstance(s, float):
        raise TypeError("give p0 as an exact fraction such as '1/3', not a float")
    return Fraction(s)


@dataclass
class SurvivalTable:
    """Rows are initial totals ``t0``, columns initial amber proportions ``p0``."""

    horizon: int
    t0s: tuple[int, ...]
    p0s: tuple[Fraction, ...]
    values: np.ndarray

    def alpha0(self, t0: int, p0: Fraction) -> int:
        return int(p0 * t0)

    def rows(self) -> Iterable[tuple[int, int, Fraction, float]]:
        for i, t0 in enumerate(self.t0s):
            for j, p0 in enumerate(self.p0s):
                yield t0, self.alpha0(t0, p0), p0, float(self.values[i, j])

    def to_csv(self) -> str:
        lines = ["t0,alpha0,p0,q0"]
        for t0, alpha0, p0, q in self.rows():
            lines.append(f"{t0},{alpha0},{p0.numerator}/{p0.denominator},{q!r}")
        return "\n".join(lines) + "\n"

    def format(self) -> str:
        head = "t0".rjust(6) + " |" + "".join(f"p0={p}".rjust(10) for p in self.p0s)
        lines = [head, "-" * len(head)]
        for i, t0 in enumerate(self.t0s):
            cells = "".join(f"{self.values[i, j]:10.4f}" for j in range(len(self.p0s)))
            lines.append(f"{t0:6d} |{cells}")
        return "\n".join(lines)


def _check_grid_points(t0s, p0s) -> None:
    if not t0s or not p0s:
        raise ValueError("need at least one t0 and one p0")
    for t0 in t0s:
        for p0 in p0s:
            a0 = p0 * t0
            if a0.denominator != 1:
                raise ValueError(f"p0={p0} times t0={t0} is not an integer ball count")
            if not 0 <= a0 <= t0:
                raise ValueError(f"p0={p0} is outside [0, 1]")


def table_from_grid(grid: SurvivalGrid, t0s: Sequence[int], p0s: Sequence) -> SurvivalTable:
    """Read a table out of an already solved grid."""
    t0s = tuple(int(t) for t in t0s)
    p0s = tuple(parse_fraction(p) for p in p0s)
    _check_grid_points(t0s, p0s)
    values = np.empty((len(t0s), len(p0s)))
    for i, t0 in enumerate(t0s):
        for j, p0 in enumerate(p0s):
            alpha = grid.scheme.to_internal_alpha(t0, int(p0 * t0))
            values[i, j] = grid.value(t0, alpha)
    return SurvivalTable(horizon=grid.horizon, t0s=t0s, p0s=p0s, values=values)


def survival_table(
    scheme: UrnScheme,
    M: int,
    t0s: Sequence[int],
    p0s: Sequence,
    max_layer_cells: int = DEFAULT_MAX_LAYER_CELLS,
) -> SurvivalTable:
    """``q_0(t0, p0*t0)`` for every pair; ``p0`` refers to the user's amber colour."""
    t0s = tuple(int(t) for t in t0s)
    p0s = tuple(parse_fraction(p) for p in p0s)
    _check_grid_points(t0s, p0s)
    grid = solve(scheme, M, (min(t0s), max(t0s)), max_layer_cells=max_layer_cells)
    return table_from_grid(grid, t0s, p0s)
