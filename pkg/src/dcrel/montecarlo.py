"""Crude Monte Carlo estimation of diameter-constrained reliability.

Samples are drawn in fixed-size chunks. Chunk ``c`` uses its own Philox4x32-10
stream seeded by ``SeedSequence(seed, spawn_key=(c,))``, so the success count
depends only on (instance, samples, seed, chunk_size) and never on how many
worker threads process the chunks.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from statistics import NormalDist

import numpy as np

from dcrel.errors import InstanceError
from dcrel.exact import _Space, thread_count
from dcrel.graph import NetworkInstance

__all__ = ["DEFAULT_CHUNK_SIZE", "EstimateReport", "GENERATOR_NAME", "estimate_reliability",
           "wilson_interval"]

DEFAULT_CHUNK_SIZE = 8192
GENERATOR_NAME = "numpy.Philox4x32-10/SeedSequence(seed,spawn_key=(chunk,))"


@dataclass(frozen=True)
class EstimateReport:
    point_estimate: float
    samples: int
    seed: int
    ci_low: float
    ci_high: float
    confidence_level: float = 0.95
    successes: int = 0
    chunk_size: int = DEFAULT_CHUNK_SIZE
    generator: str = GENERATOR_NAME

    def to_json(self) -> dict:
        return {
            "estimate": self.point_estimate,
            "n": self.samples,
            "successes": self.successes,
            "seed": self.seed,
            "ci": [self.ci_low, self.ci_high],
            "level": self.confidence_level,
            "chunk_size": self.chunk_size,
            "generator": self.generator,
        }


def wilson_interval(successes: int, n: int, level: float = 0.95) -> tuple[float, float]:
    """Wilson score interval for a binomial proportion."""
    if n < 1:
        raise ValueError("n must be positive")
    z = NormalDist().inv_cdf(1 - (1 - level) / 2)
    phat = successes / n
    z2n = z * z / n
    center = (phat + z2n / 2) / (1 + z2n)
    half = z / (1 + z2n) * math.sqrt(phat * (1 - phat) / n + z2n / (4 * n))
    return max(0.0, min(center - half, phat)), min(1.0, max(center + half, phat))


def _chunk_successes(space: _Space, probs: np.ndarray, seed: int, chunk: int, size: int) -> int:
    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=(chunk,))))
    up = rng.random((size, len(probs))) < probs
    packed = np.packbits(up, axis=1, bitorder="little")
    cache: dict[bytes, bool] = {}
    hits = 0
    for row in packed:
        key = row.tobytes()
        ok = cache.get(key)
        if ok is None:
            ok = cache[key] = space.phi_bits(space.expand(int.from_bytes(key, "little")))
        hits += ok
    return hits


def estimate_reliability(instance: NetworkInstance, samples: int, seed: int,
                         confidence_level: float = 0.95,
                         chunk_size: int = DEFAULT_CHUNK_SIZE,
                         threads: int | None = None) -> EstimateReport:
    """Estimate R by sampling edge states independently with probabilities p_i."""
    if samples < 1:
        raise InstanceError("samples must be at least 1")
    if not 0 <= seed < 2 ** 64:
        raise InstanceError("seed must be a 64-bit unsigned integer")
    if chunk_size < 1:
        raise InstanceError("chunk size must be positive")
    space = _Space(instance)
    if not space.random:
        # nothing random: every sample is the same state
        hit = int(space.phi_bits(space.fixed))
        return EstimateReport(float(hit), samples, seed, float(hit), float(hit),
                              confidence_level, hit * samples, chunk_size)
    probs = np.array([float(instance.probabilities[i]) for i in space.random])
    sizes = [min(chunk_size, samples - start) for start in range(0, samples, chunk_size)]

    def work(chunk: int) -> int:
        return _chunk_successes(space, probs, seed, chunk, sizes[chunk])

    workers = min(threads or thread_count(), len(sizes))
    if workers <= 1:
        successes = sum(map(work, range(len(sizes))))
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            successes = sum(pool.map(work, range(len(sizes))))
    low, high = wilson_interval(successes, samples, confidence_level)
    return EstimateReport(successes / samples, samples, seed, low, high, confidence_level,
                          successes, chunk_size)
