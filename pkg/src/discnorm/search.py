"""Derivative-free infimum search over the parametric weight family.

Candidates are weight exponent triples (u, v, s), each normalized so its
constraint equals 1; the objective is the normalized dual value.  A
budgeted coordinate descent starts from the theorem's explicit test
weight (from (0, 1, 0) for S1, which has none), sweeps the softening
values, and restarts from seeded jitter once a local step floor is hit.
Every candidate evaluation draws from one shared budget, so runs are
deterministic given (seed, budget).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dual import (
    DualEvaluation,
    DualParams,
    WeightExponents,
    WeightSpec,
    evaluate_weight_batch,
    normalized_evaluation,
    test_weight,
)
from .errors import ConfigError
from .quadrature import EvalGrids
from .taylor import TaylorFunction

__all__ = ["SearchConfig", "SearchResult", "infimum_search"]

# Exponent box keeping candidate integrands representable in float range.
BOX = ((-0.5, 6.0), (-2.0, 8.0), (-2.0, 4.0))
STEP_START = 0.5
STEP_FLOOR = 1e-3
JITTER = 0.75


@dataclass(frozen=True)
class SearchConfig:
    # "default" starts from the built-in test-weight exponents for the theorem
    start: str | WeightExponents = "default"
    epsilons: tuple[float, ...] = (0.0, 1e-6, 1e-3)
    budget: int = 200
    seed: int = 0

    @staticmethod
    def from_json(obj: dict) -> "SearchConfig":
        start = obj.get("start", "default")
        if isinstance(start, dict):
            start = WeightExponents(
                u=float(start["u"]), v=float(start["v"]), s=float(start["s"])
            )
        elif start in ("default", "paper"):
            start = "default"
        else:
            raise ConfigError(f"search start must be 'default' or an exponent map, got {start!r}")
        return SearchConfig(
            start=start,
            epsilons=tuple(float(e) for e in obj.get("epsilons", (0.0, 1e-6, 1e-3))),
            budget=int(obj.get("budget", 200)),
            seed=int(obj.get("seed", 0)),
        )


@dataclass(frozen=True, eq=False)
class SearchResult:
    """Best feasible evaluation found, or a failure note; never an exception."""

    best: DualEvaluation | None
    evaluations: int
    improved: bool
    failure: str | None


def _start_exponents(
    F: TaylorFunction, params: DualParams, config: SearchConfig
) -> WeightExponents:
    if isinstance(config.start, WeightExponents):
        return config.start
    om = test_weight(F, params)
    if om is None:
        return WeightExponents(u=0.0, v=1.0, s=0.0)
    return om.exponents


def _clip(x: tuple[float, float, float]) -> tuple[float, float, float]:
    return tuple(min(max(v, lo), hi) for v, (lo, hi) in zip(x, BOX))


def infimum_search(
    F: TaylorFunction,
    params: DualParams,
    config: SearchConfig,
    grids: EvalGrids,
) -> SearchResult:
    """Minimize the normalized dual over exponent triples within a budget.

    Budget counts candidate evaluations (constraint + dual pairs); with
    budget = 1 the result is exactly the normalized start weight.
    """
    if config.budget < 1:
        raise ConfigError(f"search budget must be >= 1, got {config.budget}")
    arity = "one_point" if params.theorem in ("S1_hardy", "S2_bergman") else "two_point"
    start = _start_exponents(F, params, config)
    start_x = (start.u, start.v, start.s)
    eps_list = (0.0,) + tuple(e for e in config.epsilons if e != 0.0)
    rng = np.random.default_rng(config.seed)

    cache: dict[tuple[float, float, float, float], DualEvaluation | None] = {}
    used = 0
    best: DualEvaluation | None = None
    best_val = np.inf
    start_eval: DualEvaluation | None = None

    def evaluate_fresh(batch: list[tuple[tuple[float, float, float], float]]) -> None:
        nonlocal used
        omegas = [
            WeightSpec(arity, WeightExponents(*x), softening=eps) for x, eps in batch
        ]
        values = evaluate_weight_batch(F, omegas, params, grids, strict=False)
        for (x, eps), om, (con, dua) in zip(batch, omegas, values):
            used += 1
            key = (*x, eps)
            if not (np.isfinite(con) and con > 0 and np.isfinite(dua)):
                cache[key] = None
                continue
            cache[key] = normalized_evaluation(om, params, con, dua, grids.provenance)

    def objective(key: tuple[float, float, float, float]) -> float:
        ev = cache.get(key)
        if ev is None or not ev.feasible:
            return np.inf
        return ev.dual_value

    for idx, eps in enumerate(eps_list):
        if used >= config.budget:
            break
        quota = used + max(1, (config.budget - used) // (len(eps_list) - idx))
        x = start_x
        if (*x, eps) not in cache:
            evaluate_fresh([(x, eps)])
        if eps == 0.0:
            start_eval = cache[(*x, eps)]
        fx = objective((*x, eps))
        step = STEP_START
        while used < min(quota, config.budget):
            fresh = []
            moves = []
            for k in range(3):
                for sign in (1.0, -1.0):
                    y = list(x)
                    y[k] += sign * step
                    y = _clip(tuple(y))
                    if y == x:
                        continue
                    moves.append(y)
                    if (*y, eps) not in cache and len(fresh) < min(quota, config.budget) - used:
                        fresh.append((y, eps))
            if fresh:
                evaluate_fresh(fresh)
            candidate = None
            candidate_val = fx
            for y in moves:
                if (*y, eps) not in cache:
                    continue
                fy = objective((*y, eps))
                if fy < candidate_val * (1.0 - 1e-12):
                    candidate, candidate_val = y, fy
            if candidate is not None:
                x, fx = candidate, candidate_val
                continue
            step *= 0.5
            if step < STEP_FLOOR:
                jitter = rng.uniform(-JITTER, JITTER, size=3)
                x = _clip(tuple(s + j for s, j in zip(start_x, jitter)))
                if (*x, eps) not in cache and used < min(quota, config.budget):
                    evaluate_fresh([(x, eps)])
                fx = objective((*x, eps))
                step = STEP_START

    for key, ev in cache.items():
        if ev is not None and ev.feasible and ev.dual_value < best_val:
            best, best_val = ev, ev.dual_value

    if best is None:
        return SearchResult(
            best=None,
            evaluations=used,
            improved=False,
            failure="no feasible candidate within budget",
        )
    improved = start_eval is None or (
        start_eval.feasible and best_val < start_eval.dual_value * (1.0 - 1e-12)
    )
    return SearchResult(best=best, evaluations=used, improved=improved, failure=None)
