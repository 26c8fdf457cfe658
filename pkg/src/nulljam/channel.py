"""System configuration and circularly symmetric complex Gaussian channels.

Random numbers come from :class:`RandomStream`, a thin wrapper that derives
a Philox (counter-based) generator from ``(seed, stream_id[, block])`` via
``numpy.random.SeedSequence`` spawn keys. The same key always reproduces the
same sequence, and distinct keys give statistically independent streams.
"""
from dataclasses import dataclass, field

import numpy as np

from .linalg import cholesky_factor, is_hermitian, null_space_basis

__all__ = ["RandomStream", "HelperSpec", "SystemConfig", "ChannelDraw",
           "db_to_linear", "linear_to_db", "as_generator",
           "sample_complex_gaussian", "draw_channels"]


def db_to_linear(db):
    return 10.0 ** (db / 10.0)


def linear_to_db(x):
    return 10.0 * np.log10(x)


@dataclass(frozen=True)
class RandomStream:
    """Seeded, stream-indexed source of numpy generators."""
    seed: int
    stream_id: int = 0

    def generator(self, block=None):
        key = (self.stream_id,) if block is None else (self.stream_id, block)
        ss = np.random.SeedSequence(self.seed, spawn_key=key)
        return np.random.Generator(np.random.Philox(ss))

    def substream(self, stream_id):
        return RandomStream(self.seed, stream_id)


def as_generator(rng):
    if isinstance(rng, np.random.Generator):
        return rng
    if isinstance(rng, RandomStream):
        return rng.generator()
    if isinstance(rng, (int, np.integer)):
        return RandomStream(int(rng)).generator()
    raise TypeError(f"cannot make a generator from {type(rng).__name__}")


@dataclass
class HelperSpec:
    """One cooperative jammer.

    ``snr`` is linear (P_k / N0). ``eve_cov`` is the covariance of the
    helper-to-eavesdropper channel and defaults to the identity.
    ``bob_channel`` is the helper-to-destination channel the helper nulls;
    when absent the first coordinate axis is used, which only matters for
    non-isotropic ``eve_cov``.
    """
    n_antennas: int
    snr: float
    eve_cov: np.ndarray = None
    bob_channel: np.ndarray = None

    def __post_init__(self):
        if int(self.n_antennas) != self.n_antennas or self.n_antennas < 2:
            raise ValueError("each helper needs at least 2 antennas")
        self.n_antennas = int(self.n_antennas)
        if not self.snr > 0:
            raise ValueError(f"helper snr must be positive, got {self.snr}")
        n = self.n_antennas
        if self.eve_cov is None:
            self.eve_cov = np.eye(n, dtype=complex)
        self.eve_cov = np.asarray(self.eve_cov, dtype=complex)
        if self.eve_cov.shape != (n, n):
            raise ValueError(f"eve_cov must be {n}x{n}, got {self.eve_cov.shape}")
        if not np.all(np.isfinite(self.eve_cov)) or not is_hermitian(self.eve_cov):
            raise ValueError("eve_cov must be a finite Hermitian matrix")
        if self.bob_channel is not None:
            self.bob_channel = np.asarray(self.bob_channel, dtype=complex).ravel()
            if self.bob_channel.size != n:
                raise ValueError("bob_channel length must equal n_antennas")

    @property
    def weight_sq(self):
        """Per-dimension jamming power at full budget, in SNR units."""
        return self.snr / (self.n_antennas - 1)

    def null_basis(self):
        if self.bob_channel is None:
            h = np.zeros(self.n_antennas, dtype=complex)
            h[0] = 1.0
        else:
            h = self.bob_channel
        return null_space_basis(h)


@dataclass
class SystemConfig:
    n_source_antennas: int
    source_snr: float
    eve_var: float = 1.0
    helpers: list = field(default_factory=list)
    epsilon: float = 0.01

    def __post_init__(self):
        if self.n_source_antennas < 1:
            raise ValueError("need at least one source antenna")
        if not self.source_snr > 0:
            raise ValueError("source_snr must be positive")
        if not self.eve_var > 0:
            raise ValueError("eve_var must be positive")
        if not 0 < self.epsilon < 1:
            raise ValueError(f"epsilon must lie in (0, 1), got {self.epsilon}")
        self.helpers = list(self.helpers)

    @property
    def jamming_dims(self):
        """Total jamming degrees of freedom, sum of (N_k - 1)."""
        return sum(h.n_antennas - 1 for h in self.helpers)

    def with_helper_channels(self, h_k):
        """Copy of the config whose helpers null the given channels."""
        helpers = [HelperSpec(s.n_antennas, s.snr, s.eve_cov, h)
                   for s, h in zip(self.helpers, h_k, strict=True)]
        return SystemConfig(self.n_source_antennas, self.source_snr,
                            self.eve_var, helpers, self.epsilon)


@dataclass
class ChannelDraw:
    h0: np.ndarray
    h_k: list
    g0: np.ndarray
    g_k: list


def sample_complex_gaussian(cov, rng, size=None):
    """Draw from CN(0, cov), i.e. ``L (x + iy) / sqrt(2)`` with ``L L^H = cov``.

    With ``size`` given, returns an array of shape ``(size, n)``.
    """
    cov = np.atleast_2d(np.asarray(cov, dtype=complex))
    lower = cholesky_factor(cov)
    gen = as_generator(rng)
    n = cov.shape[0]
    shape = (n,) if size is None else (size, n)
    z = (gen.standard_normal(shape) + 1j * gen.standard_normal(shape)) / np.sqrt(2.0)
    return z @ lower.T


def draw_channels(cfg, rng, legit_variance=1.0):
    """One independent realisation of every channel in the system."""
    gen = as_generator(rng)
    nt = cfg.n_source_antennas
    h0 = sample_complex_gaussian(legit_variance * np.eye(nt), gen)
    h_k = [sample_complex_gaussian(np.eye(s.n_antennas), gen) for s in cfg.helpers]
    g0 = sample_complex_gaussian(cfg.eve_var * np.eye(nt), gen)
    g_k = [sample_complex_gaussian(s.eve_cov, gen) for s in cfg.helpers]
    return ChannelDraw(h0, h_k, g0, g_k)
