"""Seeded instance generators for the benchmark families.

``pisinger`` draws weights in ``[10, R]`` with half the total weight as
capacity; ``small`` draws weights in ``[1, 1000]`` with capacities from
random shares ``lambda_i`` scaled by ``sigma``.

Randomness comes from numpy's PCG64 seeded through ``SeedSequence``; each
instance uses separate substreams for weights, profits and capacities, and
capacity retries draw from further substreams so they never disturb the
item data. Streams are not compatible with Pisinger's C generator.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil, floor

import numpy as np

from .errors import DegenerateDraw
from .model import MkpInstance, validate_mkp

CORRELATIONS = ("uncorrelated", "weakly", "strongly", "subset_sum")
FAMILIES = ("pisinger", "small")
SIGMAS = (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4))
MAX_RETRIES = 100

_CORR_ALIASES = {
    "unc": "uncorrelated",
    "uncorrelated": "uncorrelated",
    "wea": "weakly",
    "weak": "weakly",
    "weakly": "weakly",
    "str": "strongly",
    "strong": "strongly",
    "strongly": "strongly",
    "s-s": "subset_sum",
    "ss": "subset_sum",
    "subset_sum": "subset_sum",
    "subset-sum": "subset_sum",
}


def normalize_correlation(name: str) -> str:
    try:
        return _CORR_ALIASES[name.strip().lower()]
    except KeyError:
        raise ValueError(f"unknown correlation class {name!r}") from None


@dataclass(frozen=True)
class GenSpec:
    family: str
    n: int
    m: int
    correlation: str
    seed: int
    R: int | None = None
    sigma: Fraction | None = None

    def __post_init__(self):
        object.__setattr__(self, "correlation", normalize_correlation(self.correlation))
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if self.n < 1 or self.m < 1:
            raise ValueError("n and m must be positive")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in 64 bits")
        if self.family == "pisinger":
            if self.R is None or self.R < 10:
                raise ValueError("pisinger family needs R >= 10")
            if self.sigma is not None:
                raise ValueError("sigma only applies to the small family")
        else:
            if self.correlation == "subset_sum":
                raise ValueError("the small family has no subset-sum class")
            if self.sigma is None:
                raise ValueError("small family needs sigma")
            object.__setattr__(self, "sigma", Fraction(self.sigma).limit_denominator(1000))
            if self.sigma not in SIGMAS:
                raise ValueError(f"sigma must be one of 0.25, 0.5, 0.75, got {self.sigma}")

    @property
    def range_label(self) -> str:
        if self.family == "pisinger":
            return str(self.R)
        return format(float(self.sigma), "g")

    @property
    def filename(self) -> str:
        return f"{self.family}_{self.correlation}_n{self.n}_m{self.m}_R{self.range_label}_s{self.seed}.mkp"


def _streams(seed: int):
    root = np.random.SeedSequence(seed)
    return root.spawn(3)


def _rng(seq: np.random.SeedSequence) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seq))


def _ints(rng: np.random.Generator, lo: int, hi: int, size=None):
    """Uniform integers in ``[lo, hi]`` inclusive."""
    return rng.integers(lo, hi, size=size, endpoint=True)


def gen_pisinger(spec: GenSpec) -> MkpInstance:
    if spec.family != "pisinger":
        raise ValueError("gen_pisinger needs a pisinger spec")
    n, m, R = spec.n, spec.m, spec.R
    s_w, s_p, s_c = _streams(spec.seed)
    weights = [int(x) for x in _ints(_rng(s_w), 10, R, n)]
    corr = spec.correlation
    if corr == "uncorrelated":
        profits = [int(x) for x in _ints(_rng(s_p), 10, R, n)]
    elif corr == "weakly":
        rng = _rng(s_p)
        spread = Fraction(R, 10)
        profits = []
        for w in weights:
            lo, hi = ceil(w - spread), floor(w + spread)
            p = int(_ints(rng, lo, hi))
            while p < 1:
                p = int(_ints(rng, lo, hi))
            profits.append(p)
    elif corr == "strongly":
        profits = [w + 10 for w in weights]
    else:
        profits = list(weights)

    total_w = sum(weights)
    half = total_w // 2
    lo = ceil(Fraction(2 * total_w, 5 * m))
    hi = floor(Fraction(3 * total_w, 5 * m))
    capacities = None
    for attempt in range(MAX_RETRIES):
        rng = _rng(s_c.spawn(1)[0]) if attempt else _rng(s_c)
        first = [int(x) for x in _ints(rng, lo, hi, m - 1)] if m > 1 else []
        last = half - sum(first)
        if last >= 1 and all(c >= 1 for c in first):
            capacities = first + [last]
            break
    if capacities is None:
        raise DegenerateDraw(f"could not draw positive capacities for {spec}")
    return validate_mkp(zip(profits, weights), capacities, name=spec.filename[:-4])


def gen_small(spec: GenSpec) -> MkpInstance:
    if spec.family != "small":
        raise ValueError("gen_small needs a small spec")
    n, m = spec.n, spec.m
    s_w, s_p, s_c = _streams(spec.seed)
    weights = [int(x) for x in _ints(_rng(s_w), 1, 1000, n)]
    corr = spec.correlation
    if corr == "uncorrelated":
        profits = [int(x) for x in _ints(_rng(s_p), 1, 1000, n)]
    elif corr == "weakly":
        theta = _ints(_rng(s_p), 1, 400, n)
        # 0.6 w + theta rounded half up; 0.6 w is never exactly .5 off an integer
        profits = [(6 * w + 5) // 10 + int(t) for w, t in zip(weights, theta)]
    else:
        profits = [w + 200 for w in weights]

    total_w = sum(weights)
    sigma = spec.sigma
    capacities = None
    for attempt in range(MAX_RETRIES):
        rng = _rng(s_c.spawn(1)[0]) if attempt else _rng(s_c)
        lam = rng.random(m)
        while np.any(lam == 0.0):
            lam = rng.random(m)
        lam = lam / lam.sum()
        caps = [floor(sigma * Fraction(float(l)) * total_w) for l in lam]
        if all(c >= 1 for c in caps):
            capacities = caps
            break
    if capacities is None:
        raise DegenerateDraw(f"could not draw positive capacities for {spec}")
    return validate_mkp(zip(profits, weights), capacities, name=spec.filename[:-4])


def generate(spec: GenSpec) -> MkpInstance:
    if spec.family == "pisinger":
        return gen_pisinger(spec)
    return gen_small(spec)
