"""Two-sample comparison of discrete observables."""

from __future__ import annotations

from collections import Counter
from collections.abc import Hashable, Iterable, Mapping
from dataclasses import dataclass

import numpy as np
from scipy import stats


@dataclass(frozen=True)
class DistributionSample:
    observable: Hashable
    weight: int

    def __post_init__(self):
        if self.weight <= 0:
            raise ValueError("sample weights must be positive")


@dataclass(frozen=True)
class Comparison:
    consistent: bool
    statistic: float
    p_value: float
    dof: int
    support_equal: bool
    n_a: int
    n_b: int

    def as_dict(self) -> dict:
        return {
            "consistent": self.consistent,
            "statistic": self.statistic,
            "p_value": self.p_value,
            "dof": self.dof,
            "support_equal": self.support_equal,
            "n_a": self.n_a,
            "n_b": self.n_b,
        }


def _counts(samples) -> Counter:
    if isinstance(samples, Counter):
        return samples
    if isinstance(samples, Mapping):
        return Counter(dict(samples))
    out: Counter = Counter()
    for s in samples:
        if isinstance(s, DistributionSample):
            out[s.observable] += s.weight
        else:
            out[s] += 1
    return out


def compare_distributions(samples_a: Iterable, samples_b: Iterable,
                          significance: float = 0.001) -> Comparison:
    """Chi-square homogeneity test on a 2 x K contingency table.

    Samples are raw observables, :class:`DistributionSample` records, or a
    mapping observable -> count.
    """
    ca, cb = _counts(samples_a), _counts(samples_b)
    na, nb = sum(ca.values()), sum(cb.values())
    support_equal = set(ca) == set(cb)
    keys = sorted(set(ca) | set(cb), key=repr)
    if na == 0 or nb == 0 or len(keys) < 2:
        return Comparison(True, 0.0, 1.0, 0, support_equal, na, nb)
    table = np.array([[ca.get(k, 0) for k in keys], [cb.get(k, 0) for k in keys]], dtype=float)
    chi2, p, dof, _ = stats.chi2_contingency(table, correction=False)
    return Comparison(bool(p >= significance), float(chi2), float(p), int(dof), support_equal, na, nb)
