"""Hit-or-miss estimates for the unit ball and the 4-cube corner construction.

Samples are drawn in fixed-size chunks.  Chunk ``i`` always uses the i-th
child of ``SeedSequence(seed)`` feeding a Philox (counter-based) generator,
so the integer hit counts do not depend on how many workers run the chunks
or in which order they finish.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass

import numpy as np

__all__ = [
    "McEstimate",
    "CoverageEstimate",
    "chunk_generators",
    "estimate_p_hyper",
    "estimate_coverage",
    "DEFAULT_CHUNK",
]

DEFAULT_CHUNK = 1 << 16
_MAX_SEED = 1 << 64


@dataclass(frozen=True)
class McEstimate:
    n: int
    samples: int
    hits: int
    p_hat: float
    std_err: float
    seed: int

    def z_score(self, exact: float) -> float:
        diff = self.p_hat - exact
        if self.std_err == 0:
            return 0.0 if diff == 0 else math.copysign(math.inf, diff)
        return diff / self.std_err

    def as_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class CoverageEstimate:
    """Fractions of the cube [-2, 2]^n inside the inner ball, a corner ball, or neither."""

    n: int
    samples: int
    seed: int
    inner_hits: int
    corner_hits: int
    frac_inner: float
    frac_corner: float
    frac_uncovered: float

    @property
    def uncovered_hits(self) -> int:
        return self.samples - self.inner_hits - self.corner_hits

    def std_err(self, frac: float) -> float:
        return math.sqrt(frac * (1.0 - frac) / self.samples)

    def as_dict(self) -> dict:
        return asdict(self)


def _check(n: int, samples: int, seed: int):
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if samples < 1:
        raise ValueError("samples must be >= 1")
    if not 0 <= seed < _MAX_SEED:
        raise ValueError("seed must fit in an unsigned 64-bit integer")


def _chunk_sizes(samples: int, chunk: int) -> list[int]:
    full, rest = divmod(samples, chunk)
    return [chunk] * full + ([rest] if rest else [])


def chunk_generators(seed: int, count: int) -> list[np.random.Generator]:
    """Independent, reproducible generators for chunks ``0 .. count-1``."""
    children = np.random.SeedSequence(seed).spawn(count)
    return [np.random.Generator(np.random.Philox(child)) for child in children]


def _run_chunks(task, n, samples, seed, chunk, workers):
    sizes = _chunk_sizes(samples, chunk)
    jobs = list(zip(chunk_generators(seed, len(sizes)), sizes))
    if workers <= 1 or len(jobs) == 1:
        return [task(rng, n, size) for rng, size in jobs]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda job: task(job[0], n, job[1]), jobs))


def _ball_hits(rng: np.random.Generator, n: int, size: int) -> int:
    pts = rng.uniform(-1.0, 1.0, size=(size, n))
    return int(np.count_nonzero(np.einsum("ij,ij->i", pts, pts) < 1.0))


def estimate_p_hyper(
    n: int, samples: int, seed: int = 0, *, chunk: int = DEFAULT_CHUNK, workers: int = 1
) -> McEstimate:
    """Fraction of uniform points of [-1, 1]^n with squared norm strictly below 1."""
    _check(n, samples, seed)
    hits = sum(_run_chunks(_ball_hits, n, samples, seed, chunk, workers))
    p_hat = hits / samples
    std_err = math.sqrt(p_hat * (1.0 - p_hat) / samples)
    return McEstimate(n, samples, hits, p_hat, std_err, seed)


def _coverage_counts(rng: np.random.Generator, n: int, size: int) -> tuple[int, int]:
    pts = rng.uniform(-2.0, 2.0, size=(size, n))
    inner_r = math.sqrt(n) - 1.0
    inner = np.einsum("ij,ij->i", pts, pts) < inner_r * inner_r if inner_r > 0 else np.zeros(size, bool)
    # nearest corner centre (+-1, ..., +-1) is the componentwise sign, sign(0) = +1
    centre = np.where(pts >= 0.0, 1.0, -1.0)
    off = pts - centre
    corner = np.einsum("ij,ij->i", off, off) < 1.0
    if np.any(inner & corner):
        raise RuntimeError("point classified as both inner and corner; tangency violated")
    return int(np.count_nonzero(inner)), int(np.count_nonzero(corner))


def estimate_coverage(
    n: int, samples: int, seed: int = 0, *, chunk: int = DEFAULT_CHUNK, workers: int = 1
) -> CoverageEstimate:
    """Classify uniform points of [-2, 2]^n against the 2^n unit corner balls
    and the inner ball of radius sqrt(n) - 1 tangent to all of them."""
    _check(n, samples, seed)
    counts = _run_chunks(_coverage_counts, n, samples, seed, chunk, workers)
    inner = sum(c[0] for c in counts)
    corner = sum(c[1] for c in counts)
    uncovered = samples - inner - corner
    return CoverageEstimate(
        n, samples, seed, inner, corner,
        inner / samples, corner / samples, uncovered / samples,
    )
