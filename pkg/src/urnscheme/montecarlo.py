"""Batches of seeded trajectories and their summary statistics."""

from __future__ import annotations

from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .asymptotics import classify
from .urn import TauKind, Trajectory, UrnScheme, simulate_trajectory


class TrajectoryTooShort(ValueError):
    pass


def lemma1_check(trajectory: Trajectory, tail: int) -> float:
    """Largest ``|X_n/n - p_n|`` over the last ``tail`` live steps.

    On surviving paths ``X_n/n`` and ``p_n`` share the same limit, so the gap
    should shrink as the path gets longer.
    """
    if tail < 1:
        raise ValueError("tail must be at least 1")
    live = trajectory.steps if trajectory.survived else trajectory.tau - 1
    if live < tail:
        raise TrajectoryTooShort(
            f"trajectory has {live} live steps, fewer than tail={tail}"
            + ("" if trajectory.survived else f" (absorbed at tau={trajectory.tau})")
        )
    xbar = trajectory.amber_fraction()[live - tail : live]
    p = trajectory.p[live - tail + 1 : live + 1]
    return float(np.max(np.abs(xbar - p)))


@dataclass
class BatchStats:
    n_trajectories: int
    max_steps: int
    seed: int
    limit_points: tuple[float, ...]
    survived_count: int = 0
    tau_histogram: dict[TauKind, Counter] = field(
        default_factory=lambda: {k: Counter() for k in TauKind}
    )
    final_p: list[float] = field(default_factory=list)
    # (nearest limit point, distance) per survivor; empty when no limits exist
    limit_assignment: list[tuple[float, float]] = field(default_factory=list)
    lemma1_gap: list[float] = field(default_factory=list)

    @property
    def absorbed_count(self) -> int:
        return sum(sum(c.values()) for c in self.tau_histogram.values())

    @property
    def survival_fraction(self) -> float:
        return self.survived_count / self.n_trajectories

    @property
    def fraction_to_each_limit(self) -> dict[float, float]:
        if not self.limit_points:
            return {}
        counts = Counter(pt for pt, _ in self.limit_assignment)
        denom = max(self.survived_count, 1)
        return {pt: counts.get(pt, 0) / denom for pt in self.limit_points}

    def add(self, traj: Trajectory) -> None:
        if traj.survived:
            self.survived_count += 1
            p_final = float(traj.p[-1])
            self.final_p.append(p_final)
            if self.limit_points:
                pts = np.asarray(self.limit_points)
                i = int(np.argmin(np.abs(pts - p_final)))
                self.limit_assignment.append(
                    (self.limit_points[i], abs(self.limit_points[i] - p_final))
                )
            xbar = traj.amber_fraction()[-1]
            self.lemma1_gap.append(abs(float(xbar) - p_final))
        else:
            self.tau_histogram[traj.tau_kind][traj.tau] += 1

    def merge(self, other: "BatchStats") -> "BatchStats":
        """Combine with a batch over disjoint trajectory indices that follow this one."""
        out = BatchStats(
            n_trajectories=self.n_trajectories + other.n_trajectories,
            max_steps=self.max_steps,
            seed=self.seed,
            limit_points=self.limit_points,
            survived_count=self.survived_count + other.survived_count,
            tau_histogram={k: self.tau_histogram[k] + other.tau_histogram[k] for k in TauKind},
            final_p=self.final_p + other.final_p,
            limit_assignment=self.limit_assignment + other.limit_assignment,
            lemma1_gap=self.lemma1_gap + other.lemma1_gap,
        )
        return out

    def tau_tabulation(self) -> list[dict]:
        """Value / count / percent rows; tau 0 stands for "survived"."""
        counts = Counter({0: self.survived_count})
        for c in self.tau_histogram.values():
            counts.update(c)
        rows = []
        for tau in sorted(counts):
            if counts[tau] == 0:
                continue
            rows.append(
                {
                    "tau": tau,
                    "count": counts[tau],
                    "percent": 100.0 * counts[tau] / self.n_trajectories,
                }
            )
        return rows

    def to_json(self) -> dict:
        return {
            "nTrajectories": self.n_trajectories,
            "maxSteps": self.max_steps,
            "seed": self.seed,
            "survivedCount": self.survived_count,
            "survivalFraction": self.survival_fraction,
            "limitPoints": list(self.limit_points),
            "fractionToEachLimit": {repr(k): v for k, v in self.fraction_to_each_limit.items()},
            "tauHistogram": {
                kind.value: {str(t): c for t, c in sorted(self.tau_histogram[kind].items())}
                for kind in TauKind
            },
            "finalP": self.final_p,
            "limitAssignment": [
                {"limit": pt, "distance": d} for pt, d in self.limit_assignment
            ],
            "lemma1Gap": self.lemma1_gap,
            "tauTabulation": self.tau_tabulation(),
        }


def _run_chunk(scheme: UrnScheme, start: int, stop: int, max_steps: int, seed: int,
               limit_points: tuple[float, ...]) -> BatchStats:
    stats = BatchStats(stop - start, max_steps, seed, limit_points)
    for i in range(start, stop):
        stats.add(simulate_trajectory(scheme, max_steps, seed ^ i))
    return stats


def run_batch(scheme: UrnScheme, n_trajectories: int, max_steps: int, seed: int,
              workers: int = 1) -> BatchStats:
    """Simulate ``n_trajectories`` paths; path ``i`` uses seed ``seed ^ i``.

    Results do not depend on ``workers``.
    """
    if n_trajectories < 1:
        raise ValueError("n_trajectories must be at least 1")
    if max_steps < 1:
        raise ValueError("max_steps must be at least 1")
    limit_points = classify(scheme).limit_points
    if workers <= 1 or n_trajectories < 2 * workers:
        return _run_chunk(scheme, 0, n_trajectories, max_steps, seed, limit_points)
    bounds = np.linspace(0, n_trajectories, workers + 1).astype(int)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [
            pool.submit(_run_chunk, scheme, int(a), int(b), max_steps, seed, limit_points)
            for a, b in zip(bounds[:-1], bounds[1:])
        ]
        parts = [f.result() for f in futures]
    total = parts[0]
    for part in parts[1:]:
        total = total.merge(part)
    total.seed = seed
    return total
