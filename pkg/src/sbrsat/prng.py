"""MiniSAT 2.2's floating-point Park-Miller style generator.

The recurrence is reproduced bit for bit so that randomized strategies give
the same activity streams as the C++ solver for the same seed::

    seed <- seed * 1389796
    q    <- trunc(seed / 2147483647)      # toward zero
    seed <- seed - q * 2147483647
    return seed / 2147483647

Every intermediate value stays below 2**53, so IEEE doubles are exact here.
"""

from __future__ import annotations

MODULUS = 2147483647.0
MULTIPLIER = 1389796.0
DEFAULT_SEED = 91648253


class Rng:
    __slots__ = ("seed",)

    def __init__(self, seed: float = DEFAULT_SEED):
        seed = float(seed)
        if seed <= 0 or seed % MODULUS == 0:
            raise ValueError(f"seed must be positive and not a multiple of {int(MODULUS)}")
        self.seed = seed

    def drand(self) -> float:
        """Next value in [0, 1)."""
        seed = self.seed * MULTIPLIER
        q = int(seed / MODULUS)
        seed -= q * MODULUS
        self.seed = seed
        return seed / MODULUS

    def irand(self, size: int) -> int:
        """Next integer in [0, size); consumes one ``drand`` step."""
        if size < 1:
            raise ValueError("irand size must be >= 1")
        return int(self.drand() * size)

    def clone(self) -> "Rng":
        other = Rng.__new__(Rng)
        other.seed = self.seed
        return other

    def __repr__(self) -> str:
        return f"Rng(seed={self.seed!r})"


def drand(state: Rng) -> float:
    return state.drand()


def irand(state: Rng, size: int) -> int:
    return state.irand(size)
