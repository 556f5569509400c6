"""Injected sources of uniform permutations.

Every shuffle in the package draws from one of these objects. A permutation
of ``n`` items is returned as a list ``perm`` of 0-based images: item ``i``
moves to position ``perm[i]``.
"""

from __future__ import annotations

import random
from collections import deque
from collections.abc import Iterable, Sequence


class PermutationSource:
    """Seeded uniform permutations built by Fisher-Yates over ``randbelow``."""

    def __init__(self, seed: int | str | None = None):
        self.seed = seed
        self._rng = random.Random(seed)

    def randbelow(self, n: int) -> int:
        """Uniform integer in ``[0, n)``."""
        return self._rng.randrange(n)

    def permutation(self, n: int) -> list[int]:
        perm = list(range(n))
        for i in range(n - 1, 0, -1):
            j = self.randbelow(i + 1)
            perm[i], perm[j] = perm[j], perm[i]
        return perm

    def sample(self, population: Sequence, k: int) -> list:
        """Uniform ``k``-subset of ``population`` in a uniformly random order."""
        perm = self.permutation(len(population))
        picked = [None] * len(population)
        for i, target in enumerate(perm):
            picked[target] = population[i]
        return picked[:k]

    def spawn(self, index: int) -> "PermutationSource":
        """Independent child source, deterministic in (seed, index)."""
        return PermutationSource(f"{self.seed}/{index}")


class ScriptedPermutations(PermutationSource):
    """Replays a fixed list of permutations; used for exhaustive enumeration."""

    def __init__(self, perms: Iterable[Sequence[int]]):
        super().__init__(0)
        self._queue = deque(list(p) for p in perms)

    def permutation(self, n: int) -> list[int]:
        if not self._queue:
            raise RuntimeError("scripted permutation source exhausted")
        perm = self._queue.popleft()
        if sorted(perm) != list(range(n)):
            raise ValueError(f"scripted permutation {perm} is not a permutation of {n} items")
        return perm


class BiasedPermutations(PermutationSource):
    """Returns the identity with probability ``bias``; a planted defect for tests."""

    def __init__(self, seed: int | None, bias: float):
        super().__init__(seed)
        self.bias = bias

    def permutation(self, n: int) -> list[int]:
        if self._rng.random() < self.bias:
            return list(range(n))
        return super().permutation(n)
