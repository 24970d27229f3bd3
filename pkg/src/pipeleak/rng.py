"""SplitMix64 random stream with Box-Muller normals.

The simulator's noise must be reproducible from other languages, so the
generator is spelled out here instead of relying on numpy's bit generators
and normal sampler.  Constants are those of Steele, Lea and Flood's
SplitMix64 (also used to seed xoshiro generators).

Uniforms take the top 53 bits: ``(z >> 11) * 2**-53``.  Normals come in
pairs from consecutive uniforms ``u1, u2`` as
``sqrt(-2 ln(1 - u1)) * (cos, sin)(2 pi u2)``.
"""

import numpy as np

GOLDEN_GAMMA = np.uint64(0x9E3779B97F4A7C15)
MIX_1 = np.uint64(0xBF58476D1CE4E5B9)
MIX_2 = np.uint64(0x94D049BB133111EB)
_MASK = (1 << 64) - 1


def _mix(z: np.ndarray) -> np.ndarray:
    z = (z ^ (z >> np.uint64(30))) * MIX_1
    z = (z ^ (z >> np.uint64(27))) * MIX_2
    return z ^ (z >> np.uint64(31))


class SplitMix64:
    """Counter-based SplitMix64; ``state`` advances by the golden gamma per draw."""

    def __init__(self, seed: int):
        self.state = int(seed) & _MASK

    def next_u64(self, n: int) -> np.ndarray:
        steps = np.arange(1, n + 1, dtype=np.uint64)
        with np.errstate(over="ignore"):
            z = np.uint64(self.state) + steps * GOLDEN_GAMMA
            out = _mix(z)
        self.state = (self.state + n * int(GOLDEN_GAMMA)) & _MASK
        return out

    def uniform(self, n: int) -> np.ndarray:
        """``n`` doubles in [0, 1)."""
        return (self.next_u64(n) >> np.uint64(11)).astype(np.float64) * 2.0 ** -53

    def normal(self, n: int) -> np.ndarray:
        pairs = (n + 1) // 2
        u = self.uniform(2 * pairs)
        radius = np.sqrt(-2.0 * np.log1p(-u[0::2]))
        angle = 2.0 * np.pi * u[1::2]
        out = np.empty(2 * pairs)
        out[0::2] = radius * np.cos(angle)
        out[1::2] = radius * np.sin(angle)
        return out[:n]

    def spawn(self, key: int) -> "SplitMix64":
        """Independent child stream; the parent is left untouched."""
        with np.errstate(over="ignore"):
            child = _mix(np.array([self.state ^ (int(key) * 0xD1B54A32D192ED03 & _MASK)],
                                  dtype=np.uint64))[0]
        return SplitMix64(int(child))
