"""Hamming-distance revision of model sets."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Assignment, ModelSet
from .errors import RevisionError, ScopeError
from .logic import Formula, formula_models

# cap on cells of the broadcast comparison tensor per numpy pass
_CELLS = 1 << 24


def hamming_distance(sigma: Assignment, tau: Assignment) -> int:
    if sigma.space != tau.space or sigma.scope != tau.scope:
        raise ScopeError(f"assignments over different scopes: {sigma.scope} vs {tau.scope}")
    return sum(a != b for a, b in zip(sigma.codes, tau.codes))


@dataclass(frozen=True)
class RevisionOutcome:
    revised: ModelSet
    distance: int
    per_model_distance: dict[Assignment, int]


def _distances_to_set(candidates: np.ndarray, prior: np.ndarray) -> np.ndarray:
    """For each candidate row, the least number of differing coordinates to any prior row."""
    best = np.empty(len(candidates), dtype=np.int64)
    step = max(1, _CELLS // max(1, prior.size))
    for start in range(0, len(candidates), step):
        block = candidates[start : start + step]
        diff = (block[:, None, :] != prior[None, :, :]).sum(axis=2)
        best[start : start + step] = diff.min(axis=1)
    return best


def revise(models: ModelSet, by: Formula | ModelSet) -> RevisionOutcome:
    """Keep the models of ``by`` that lie closest, in Hamming distance, to ``models``.

    ``by`` is either a formula, whose models are taken over the scope of
    ``models``, or a model set on that same scope.
    """
    if isinstance(by, ModelSet):
        target = by
        if target.space != models.space or target.scope != models.scope:
            raise ScopeError("revision input must share the scope of the revised set")
    else:
        target = formula_models(by, models.space, models.scope)
    if not models:
        raise RevisionError("cannot revise an empty model set")
    if not target:
        raise RevisionError("the revision input has no models")
    width = len(models.scope)
    cand = np.array(target.rows, dtype=np.int64).reshape(len(target), width)
    prior = np.array(models.rows, dtype=np.int64).reshape(len(models), width)
    dist = _distances_to_set(cand, prior)
    best = int(dist.min())
    keep = [target.rows[i] for i in np.flatnonzero(dist == best)]
    revised = ModelSet(models.space, models.scope, keep)
    return RevisionOutcome(revised, best, {a: best for a in revised})
