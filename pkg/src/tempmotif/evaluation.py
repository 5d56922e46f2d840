"""Accuracy of repeated estimates against exact counts."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .motifs import MotifEncoding


@dataclass
class MotifError:
    mape: float
    min_rel_err: float
    max_rel_err: float


@dataclass
class EvalReport:
    errors: dict[MotifEncoding, MotifError]
    missing_exact: list[MotifEncoding] = field(default_factory=list)
    run_times: list[float] = field(default_factory=list)

    @property
    def mean_runtime(self) -> float:
        return float(np.mean(self.run_times)) if self.run_times else 0.0

    @property
    def max_mape(self) -> float:
        return max((e.mape for e in self.errors.values()), default=0.0)


def relative_errors(runs: Sequence[Mapping[MotifEncoding, float]], exact: float, enc) -> np.ndarray:
    return np.array([abs(r.get(enc, 0.0) - exact) / exact for r in runs])


def evaluate(
    runs: Sequence[Mapping[MotifEncoding, float]],
    exact: Mapping[MotifEncoding, int],
    run_times: Sequence[float] = (),
) -> EvalReport:
    """MAPE (in percent), min and max relative error per motif with a positive
    exact count. Motifs estimated but absent from ``exact`` are reported in
    ``missing_exact``; a motif never estimated counts as an estimate of 0."""
    errors = {}
    for enc, c in exact.items():
        if c <= 0:
            continue
        rel = relative_errors(runs, c, enc)
        errors[enc] = MotifError(100.0 * float(rel.mean()), float(rel.min()), float(rel.max()))
    seen = set().union(*runs) if runs else set()
    missing = sorted(k for k in seen if k not in exact)
    return EvalReport(errors, missing, list(run_times))
