"""Derivative-free maximization of the growth factor over [-1, 1] entries.

Coordinate pattern search on the n(n+1)/2 free entries of a symmetric
matrix: probe +/- step along every coordinate, accept the best improving
probe, halve the step when none improves.  Restarts are independent, so the
outcome is the argmax over restarts with ties going to the lowest restart
index; identical configurations always reproduce the same outcome.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Tuple

import numpy as np

from .aasen import TieRule, factorize
from .growth import growth_factor
from .matcore import SymmetricMatrix, max_abs


@dataclass(frozen=True)
class SearchConfig:
    n: int
    restarts: int = 64
    max_iters: int = 2000
    initial_step: float = 0.25
    shrink: float = 0.5
    min_step: float = 1e-6
    seed: int = 0
    warm_starts: Tuple[SymmetricMatrix, ...] = ()

    def __post_init__(self):
        if self.restarts < 1:
            raise ValueError("restarts must be >= 1")
        if not (0.0 < self.min_step < self.initial_step):
            raise ValueError("need 0 < min_step < initial_step")
        if not (0.0 < self.shrink < 1.0):
            raise ValueError("shrink must lie in (0, 1)")
        object.__setattr__(self, "warm_starts", tuple(self.warm_starts))
        for w in self.warm_starts:
            if w.n != self.n:
                raise ValueError(f"warm start has dimension {w.n}, expected {self.n}")
            if max_abs(w) > 1.0:
                raise ValueError("warm start entries must lie in [-1, 1]")


@dataclass(frozen=True)
class SearchOutcome:
    best_matrix: SymmetricMatrix
    best_growth: float
    evaluations: int
    per_restart_best: List[float] = field(default_factory=list)


def evaluate_candidate(m: SymmetricMatrix) -> float:
    """Growth factor of the candidate; the zero matrix scores 0 (worst)."""
    if max_abs(m) == 0.0:
        return 0.0
    return growth_factor(m, factorize(m, TieRule.FIRST))


def _sym_from_vec(v: np.ndarray, n: int, iu) -> SymmetricMatrix:
    m = np.zeros((n, n))
    m[iu] = v
    m[iu[1], iu[0]] = v
    return SymmetricMatrix(m)


def _pattern_search(x0: np.ndarray, cfg: SearchConfig, iu) -> Tuple[np.ndarray, float, int]:
    """One restart; returns (best vector, best value, evaluations used)."""
    n, d = cfg.n, x0.shape[0]
    x = x0.copy()
    best = evaluate_candidate(_sym_from_vec(x, n, iu))
    evals = 1
    step = cfg.initial_step

    for _ in range(cfg.max_iters):
        if step < cfg.min_step:
            break
        probe_best = best
        probe_at = -1
        probe_val = 0.0
        for k in range(d):
            for sgn in (1.0, -1.0):
                cand = min(1.0, max(-1.0, x[k] + sgn * step))
                if cand == x[k]:
                    continue
                old = x[k]
                x[k] = cand
                val = evaluate_candidate(_sym_from_vec(x, n, iu))
                x[k] = old
                evals += 1
                if val > probe_best:
                    probe_best = val
                    probe_at = k
                    probe_val = cand
        if probe_at >= 0:
            x[probe_at] = probe_val
            best = probe_best
        else:
            step *= cfg.shrink
    return x, best, evals


def maximize_growth(config: SearchConfig) -> SearchOutcome:
    """Run all restarts: warm starts first, then seeded random matrices.

    Random starts fill up to config.restarts total; every warm start always
    runs even when there are more warm starts than restarts.
    """
    if config.n < 3:
        raise ValueError("search requires n >= 3")
    n = config.n
    iu = np.triu_indices(n)
    num_starts = max(config.restarts, len(config.warm_starts))

    best_vec = None
    best_val = -np.inf
    evaluations = 0
    per_restart: List[float] = []

    for k in range(num_starts):
        if k < len(config.warm_starts):
            x0 = config.warm_starts[k].entries[iu]
        else:
            rng = np.random.default_rng([config.seed, k])
            x0 = rng.uniform(-1.0, 1.0, iu[0].shape[0])
        x, val, evals = _pattern_search(x0, config, iu)
        evaluations += evals
        per_restart.append(val)
        if val > best_val:
            best_val = val
            best_vec = x

    return SearchOutcome(
        best_matrix=_sym_from_vec(best_vec, n, iu),
        best_growth=float(best_val),
        evaluations=evaluations,
        per_restart_best=per_restart,
    )
