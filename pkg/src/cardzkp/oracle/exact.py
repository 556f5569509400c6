"""Exact reveal distributions by enumerating every shuffle outcome."""

from __future__ import annotations

import itertools
import math
from collections import Counter
from fractions import Fraction

from ..deck import Table, encode
from ..rng import ScriptedPermutations
from ..table import build_matrix, double_scramble, rearrange, reveal_column_others, reveal_row1


def _all_perms(n: int):
    return list(itertools.permutations(range(n)))


def exact_reveal_distribution(values: list[int], b: int) -> dict[tuple, Fraction]:
    """P[(j, heart rows)] over all (a-1)! * b! double-scramble outcomes.

    ``values[0]`` is Row 1; every outcome is replayed on real cards.
    """
    a = len(values)
    counts: Counter = Counter()
    outcomes = 0
    for p in _all_perms(a - 1):
        for q in _all_perms(b):
            table = Table()
            rows = [encode(x, b, table) for x in values]
            m = build_matrix(rows[0], rows[1:], b)
            double_scramble(m, ScriptedPermutations([p, q]))
            j = reveal_row1(m)
            _, hearts = reveal_column_others(m, j)
            counts[(j, frozenset(hearts))] += 1
            outcomes += 1
    return {key: Fraction(c, outcomes) for key, c in counts.items()}


def uniform_reveal_distribution(a: int, b: int, c: int) -> dict[tuple, Fraction]:
    """Uniform column times uniform ``c``-subset of rows 2..a."""
    subsets = list(itertools.combinations(range(2, a + 1), c))
    weight = Fraction(1, b * len(subsets))
    return {(j, frozenset(s)): weight for j in range(1, b + 1) for s in subsets}


def exact_rearrange_distribution(values: list[int], b: int,
                                 hidden: tuple[tuple[int, ...], tuple[int, ...]] | None = None
                                 ) -> dict[tuple, Fraction]:
    """P[(revealed p, revealed q)] of a rearrangement after a fixed verification shuffle.

    Enumerates all (a-1)! * b! rearrangement shuffles.
    """
    a = len(values)
    counts: Counter = Counter()
    total = 0
    for p in _all_perms(a - 1):
        for q in _all_perms(b):
            table = Table()
            rows = [encode(x, b, table) for x in values]
            m = build_matrix(rows[0], rows[1:], b)
            if hidden is not None:
                double_scramble(m, ScriptedPermutations(list(hidden)))
            rr = rearrange(m, ScriptedPermutations([p, q]))
            counts[(rr.revealed_p, rr.revealed_q)] += 1
            total += 1
    return {key: Fraction(c, total) for key, c in counts.items()}


def uniform_permutation_pairs(a: int, b: int) -> dict[tuple, Fraction]:
    weight = Fraction(1, math.factorial(a - 1) * math.factorial(b))
    return {
        (tuple(t + 2 for t in p), tuple(t + 1 for t in q)): weight
        for p in _all_perms(a - 1)
        for q in _all_perms(b)
    }
