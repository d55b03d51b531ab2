"""Seedable generation of sort inputs from six standard distributions.

Discrete models (binomial, Poisson, discrete uniform) produce integer keys
and therefore heavily tied inputs; the continuous models (uniform,
exponential, normal) produce real keys that are distinct with probability
one. All samplers are built from unit uniforms of a single deterministic
PCG64 stream, so a (spec, n, seed) triple always yields the same keys.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass
from typing import Union

import numpy as np

__all__ = [
    "Binomial",
    "Poisson",
    "DiscreteUniform",
    "ContinuousUniform",
    "Exponential",
    "StdNormal",
    "DistributionSpec",
    "Sample",
    "make_rng",
    "spec_entropy",
    "parse_spec",
    "sample",
    "sample_binomial",
    "sample_poisson",
    "sample_discrete_uniform",
    "sample_continuous_uniform",
    "sample_exponential",
    "sample_std_normal",
]

# Generating one Poisson key multiplies uniforms until the running product
# drops below exp(-lambda); a run that survives this many rounds indicates a
# rate too large for the multiplication method (exp(-lambda) underflows).
POISSON_MAX_DRAWS = 1_000_000

# Uniform chunk budget for the binomial sampler, in doubles (~32 MB).
_BINOMIAL_CHUNK = 4 << 20


def make_rng(seed: int) -> np.random.Generator:
    """Unit-uniform source: PCG64 stream, reproducible for a given seed.

    Only ``rng.random()`` is ever consumed by the samplers, which keeps the
    generated streams on the most stable part of numpy's generator API.
    """
    if not isinstance(seed, (int, np.integer)):
        raise TypeError(f"seed must be an integer, got {type(seed).__name__}")
    return np.random.Generator(np.random.PCG64(int(seed)))


def _fmt_num(v) -> str:
    # canonical text keeps integral values bare: lambda=1, not lambda=1.0
    f = float(v)
    if f == int(f) and abs(f) < 1e15:
        return str(int(f))
    return repr(f)


@dataclass(frozen=True)
class Binomial:
    """Counts of successes in m unit-uniform trials with threshold p."""

    m: int
    p: float

    name = "binomial"
    domain = "integer"

    def __post_init__(self):
        if int(self.m) != self.m or self.m < 0:
            raise ValueError(f"binomial m must be a nonnegative integer, got {self.m}")
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"binomial p must lie in [0, 1], got {self.p}")
        object.__setattr__(self, "m", int(self.m))
        object.__setattr__(self, "p", float(self.p))

    def canonical(self) -> str:
        return f"binomial:m={self.m},p={_fmt_num(self.p)}"

    def sample(self, n: int, rng: np.random.Generator) -> "Sample":
        return sample_binomial(self.m, self.p, n, rng)


@dataclass(frozen=True)
class Poisson:
    """Poisson counts via the multiplication method (product of uniforms)."""

    lam: float

    name = "poisson"
    domain = "integer"

    def __post_init__(self):
        if not self.lam > 0.0:
            raise ValueError(f"poisson lambda must be positive, got {self.lam}")
        object.__setattr__(self, "lam", float(self.lam))

    def canonical(self) -> str:
        return f"poisson:lambda={_fmt_num(self.lam)}"

    def sample(self, n: int, rng: np.random.Generator) -> "Sample":
        return sample_poisson(self.lam, n, rng)


@dataclass(frozen=True)
class DiscreteUniform:
    """Equiprobable integer keys on {1, ..., k}."""

    k: int

    name = "duniform"
    domain = "integer"

    def __post_init__(self):
        if int(self.k) != self.k or self.k < 1:
            raise ValueError(f"duniform k must be a positive integer, got {self.k}")
        object.__setattr__(self, "k", int(self.k))

    def canonical(self) -> str:
        return f"duniform:k={self.k}"

    def sample(self, n: int, rng: np.random.Generator) -> "Sample":
        return sample_discrete_uniform(self.k, n, rng)


@dataclass(frozen=True)
class ContinuousUniform:
    """Real keys uniform on [0, theta)."""

    theta: float

    name = "cuniform"
    domain = "real"

    def __post_init__(self):
        if not self.theta > 0.0:
            raise ValueError(f"cuniform theta must be positive, got {self.theta}")
        object.__setattr__(self, "theta", float(self.theta))

    def canonical(self) -> str:
        return f"cuniform:theta={_fmt_num(self.theta)}"

    def sample(self, n: int, rng: np.random.Generator) -> "Sample":
        return sample_continuous_uniform(self.theta, n, rng)


@dataclass(frozen=True)
class Exponential:
    """Exponential keys with rate theta (mean 1/theta), inverse transform."""

    theta: float

    name = "exponential"
    domain = "real"

    def __post_init__(self):
        if not self.theta > 0.0:
            raise ValueError(f"exponential theta must be positive, got {self.theta}")
        object.__setattr__(self, "theta", float(self.theta))

    def canonical(self) -> str:
        return f"exponential:theta={_fmt_num(self.theta)}"

    def sample(self, n: int, rng: np.random.Generator) -> "Sample":
        return sample_exponential(self.theta, n, rng)


@dataclass(frozen=True)
class StdNormal:
    """Normal keys mean + sd*Z with Z from Box-Muller pairs."""

    mean: float
    sd: float

    name = "normal"
    domain = "real"

    def __post_init__(self):
        if not self.sd >= 0.0:
            raise ValueError(f"normal sd must be nonnegative, got {self.sd}")
        object.__setattr__(self, "mean", float(self.mean))
        object.__setattr__(self, "sd", float(self.sd))

    def canonical(self) -> str:
        return f"normal:mean={_fmt_num(self.mean)},sd={_fmt_num(self.sd)}"

    def sample(self, n: int, rng: np.random.Generator) -> "Sample":
        return sample_std_normal(self.mean, self.sd, n, rng)


DistributionSpec = Union[
    Binomial, Poisson, DiscreteUniform, ContinuousUniform, Exponential, StdNormal
]


@dataclass(frozen=True)
class Sample:
    """A generated key array together with the spec that produced it."""

    keys: np.ndarray
    spec: DistributionSpec

    @property
    def n(self) -> int:
        return len(self.keys)

    @property
    def key_domain(self) -> str:
        return self.spec.domain


def spec_entropy(spec: DistributionSpec) -> int:
    """Stable 64-bit entropy word for a spec, from its canonical text."""
    digest = hashlib.sha256(spec.canonical().encode("ascii")).digest()
    return int.from_bytes(digest[:8], "big")


# ---------------------------------------------------------------------------
# parsing

_FIELDS = {
    "binomial": ("m", "p"),
    "poisson": ("lambda",),
    "duniform": ("k",),
    "cuniform": ("theta",),
    "exponential": ("theta",),
    "normal": ("mean", "sd"),
}


def parse_spec(text: str) -> DistributionSpec:
    """Parse the canonical text form, e.g. ``binomial:m=100,p=0.5``.

    Case-insensitive; unknown distribution names and unknown or missing
    keys are rejected with ValueError.
    """
    raw = text.strip().lower()
    name, sep, body = raw.partition(":")
    name = name.strip()
    if name not in _FIELDS:
        raise ValueError(f"unknown distribution {name!r} in {text!r}")
    if not sep or not body.strip():
        raise ValueError(f"missing parameters for {name!r} in {text!r}")

    kv: dict[str, float] = {}
    for item in body.split(","):
        key, eq, val = item.partition("=")
        key = key.strip()
        if not eq:
            raise ValueError(f"expected key=value, got {item!r} in {text!r}")
        if key not in _FIELDS[name]:
            raise ValueError(f"unknown key {key!r} for {name!r} in {text!r}")
        if key in kv:
            raise ValueError(f"duplicate key {key!r} in {text!r}")
        try:
            kv[key] = float(val)
        except ValueError:
            raise ValueError(f"non-numeric value {val!r} for {key!r} in {text!r}") from None
    missing = [k for k in _FIELDS[name] if k not in kv]
    if missing:
        raise ValueError(f"missing key(s) {missing} for {name!r} in {text!r}")

    if name == "binomial":
        m = kv["m"]
        if m != int(m):
            raise ValueError(f"binomial m must be an integer, got {m}")
        return Binomial(int(m), kv["p"])
    if name == "poisson":
        return Poisson(kv["lambda"])
    if name == "duniform":
        k = kv["k"]
        if k != int(k):
            raise ValueError(f"duniform k must be an integer, got {k}")
        return DiscreteUniform(int(k))
    if name == "cuniform":
        return ContinuousUniform(kv["theta"])
    if name == "exponential":
        return Exponential(kv["theta"])
    return StdNormal(kv["mean"], kv["sd"])


# ---------------------------------------------------------------------------
# samplers

def _check_n(n: int) -> int:
    if int(n) != n or n < 0:
        raise ValueError(f"sample size must be a nonnegative integer, got {n}")
    return int(n)


def sample_binomial(m: int, p: float, n: int, rng: np.random.Generator) -> Sample:
    """n keys, each the count of m unit uniforms falling below p."""
    spec = Binomial(m, p)
    n = _check_n(n)
    keys = np.zeros(n, dtype=np.int64)
    if spec.m > 0 and n > 0:
        rows_per_chunk = max(1, _BINOMIAL_CHUNK // spec.m)
        for start in range(0, n, rows_per_chunk):
            stop = min(start + rows_per_chunk, n)
            u = rng.random((stop - start, spec.m))
            keys[start:stop] = (u < spec.p).sum(axis=1)
    return Sample(keys, spec)


def sample_poisson(lam: float, n: int, rng: np.random.Generator) -> Sample:
    """n Poisson keys by Knuth's multiplication method.

    Each key multiplies unit uniforms until the product drops below
    exp(-lambda); the key is the number of draws minus one. Pending keys
    draw in synchronized rounds, capped at POISSON_MAX_DRAWS.
    """
    spec = Poisson(lam)
    n = _check_n(n)
    bound = math.exp(-spec.lam)
    keys = np.zeros(n, dtype=np.int64)
    product = np.ones(n)
    pending = np.arange(n)
    draws = 0
    while pending.size:
        draws += 1
        if draws > POISSON_MAX_DRAWS:
            raise RuntimeError(
                f"poisson sampler exceeded {POISSON_MAX_DRAWS} draws per key "
                f"(lambda={spec.lam} too large for the multiplication method)"
            )
        product[pending] *= rng.random(pending.size)
        done = product[pending] < bound
        keys[pending[done]] = draws - 1
        pending = pending[~done]
    return Sample(keys, spec)


def sample_discrete_uniform(k: int, n: int, rng: np.random.Generator) -> Sample:
    """n keys floor(k*u) + 1, equiprobable on {1, ..., k}."""
    spec = DiscreteUniform(k)
    n = _check_n(n)
    keys = (spec.k * rng.random(n)).astype(np.int64) + 1
    return Sample(keys, spec)


def sample_continuous_uniform(theta: float, n: int, rng: np.random.Generator) -> Sample:
    """n real keys u*theta on [0, theta)."""
    spec = ContinuousUniform(theta)
    n = _check_n(n)
    keys = rng.random(n) * spec.theta
    # u*theta can round up to exactly theta at the top of the unit range
    np.minimum(keys, np.nextafter(spec.theta, 0.0), out=keys)
    return Sample(keys, spec)


def _redraw_zeros(u: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    zero = u <= 0.0
    while zero.any():
        u[zero] = rng.random(int(zero.sum()))
        zero = u <= 0.0
    return u


def sample_exponential(theta: float, n: int, rng: np.random.Generator) -> Sample:
    """n strictly positive keys -ln(u)/theta; zero uniforms are redrawn."""
    spec = Exponential(theta)
    n = _check_n(n)
    u = _redraw_zeros(rng.random(n), rng)
    keys = -np.log(u) / spec.theta
    return Sample(keys, spec)


def sample_std_normal(mean: float, sd: float, n: int, rng: np.random.Generator) -> Sample:
    """n keys mean + sd*Z via Box-Muller.

    ceil(n/2) pairs are generated; the cosine keys fill the first half of
    the array and the sine keys the second half. For odd n the last key of
    the final pair is dropped.
    """
    spec = StdNormal(mean, sd)
    n = _check_n(n)
    if n == 0:
        return Sample(np.zeros(0), spec)
    pairs = (n + 1) // 2
    u1 = _redraw_zeros(rng.random(pairs), rng)
    u2 = rng.random(pairs)
    radius = np.sqrt(-2.0 * np.log(u1))
    angle = 2.0 * math.pi * u2
    z = np.concatenate([radius * np.cos(angle), radius * np.sin(angle)])[:n]
    return Sample(spec.mean + spec.sd * z, spec)


def sample(spec: DistributionSpec, n: int, rng: np.random.Generator) -> Sample:
    """Generate n keys from an already validated spec."""
    return spec.sample(n, rng)
