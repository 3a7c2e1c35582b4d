"""Counter-based deterministic sampling.

Each draw hashes (seed, counter) with the splitmix64 finalizer, so a trial can
be replayed from its index alone and the stream is identical on every
platform. ``random.Random`` was not used because its state cannot be jumped
to an arbitrary counter cheaply.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from ..errors import SamplerExhausted

_MASK = (1 << 64) - 1


def _mix64(z: int) -> int:
    z = (z + 0x9E3779B97F4A7C15) & _MASK
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return z ^ (z >> 31)


@dataclass
class SeededSampler:
    seed: int
    counter: int = 0
    height: int = 12

    def next_u64(self) -> int:
        out = _mix64((self.seed & _MASK) ^ _mix64(self.counter & _MASK))
        self.counter = (self.counter + 1) & _MASK
        return out

    def randint(self, lo: int, hi: int) -> int:
        span = hi - lo + 1
        return lo + self.next_u64() % span

    def split(self, index: int) -> "SeededSampler":
        """Independent child stream for trial ``index``."""
        return SeededSampler(_mix64((self.seed & _MASK) ^ _mix64(index + 0x5851F42D4C957F2D)),
                             0, self.height)

    def choice(self, seq):
        return seq[self.next_u64() % len(seq)]


def sample_rational(sampler: SeededSampler, excluded: Iterable = (),
                    height: int | None = None, nonzero: bool = False,
                    max_tries: int = 1000) -> Fraction:
    """Draw p/q with |p| ≤ height and 1 ≤ q ≤ height, avoiding ``excluded``."""
    h = height or sampler.height
    bad = {Fraction(x) for x in excluded}
    if nonzero:
        bad.add(Fraction(0))
    for _ in range(max_tries):
        p = sampler.randint(-h, h)
        q = sampler.randint(1, h)
        r = Fraction(p, q)
        if r not in bad:
            return r
    raise SamplerExhausted(f"no rational of height {h} outside the excluded set after {max_tries} draws")
