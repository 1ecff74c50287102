"""Pinned deterministic randomness for instance generation.

The generator is SplitMix64 with the standard constants, so the exact same
instance stream can be reproduced from a seed in any language.  Output bit 0
decides each arc direction; entries are drawn row-major.
"""

from __future__ import annotations

from .digraph import BipartiteTournament

_MASK = (1 << 64) - 1


class SplitMix64:
    """Standard SplitMix64: additive state walk plus a two-stage finalizer."""

    __slots__ = ("state",)

    def __init__(self, seed: int) -> None:
        self.state = seed & _MASK

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return (z ^ (z >> 31)) & _MASK

    def next_below(self, n: int) -> int:
        """Uniform-enough draw in [0, n) for shuffles; deterministic."""
        if n <= 0:
            raise ValueError("n must be positive")
        return self.next_u64() % n

    def shuffled(self, items) -> list:
        out = list(items)
        for i in range(len(out) - 1, 0, -1):  # Fisher-Yates, fixed order
            j = self.next_below(i + 1)
            out[i], out[j] = out[j], out[i]
        return out


def random_tournament(n: int, m: int, seed: int) -> BipartiteTournament:
    """Seeded bipartite tournament: bit 0 set means u_i -> v_j, else v_j -> u_i.

    Entries are drawn row-major (i outer, j inner), one generator output per
    pair, so the orientation matrix is a pure function of (n, m, seed).
    """
    gen = SplitMix64(seed)
    orient = tuple(
        tuple(1 if gen.next_u64() & 1 else -1 for _ in range(m)) for _ in range(n)
    )
    return BipartiteTournament(n, m, orient)
