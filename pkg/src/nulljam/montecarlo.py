"""Monte Carlo oracles for the closed-form outage and rate results.

Trials are cut into fixed blocks of ``BLOCK`` samples; block ``b`` always
draws from ``RandomStream.generator(block=b)``. Workers only decide which
blocks they process, and counts are summed in block order, so an estimate is
bit-identical for any worker count given the same seed and trial total.
"""
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .channel import RandomStream
from .linalg import cholesky_factor
from .jamming import validate_input_covariance
from .outage import outage_log_slope

__all__ = ["McEstimate", "BLOCK", "estimate_outage", "eve_sinr_samples",
           "estimate_rate_outage", "empirical_max_rate", "proportion",
           "rate_std_error"]

BLOCK = 1 << 16


@dataclass(frozen=True)
class McEstimate:
    mean: float
    std_error: float
    trials: int


def proportion(hits, trials):
    p = hits / trials
    return McEstimate(p, float(np.sqrt(p * (1.0 - p) / trials)), trials)


def _as_stream(rng):
    if isinstance(rng, RandomStream):
        return rng
    if isinstance(rng, (int, np.integer)):
        return RandomStream(int(rng))
    raise TypeError("Monte Carlo routines need a RandomStream or an integer seed")


def _blocks(trials):
    full, rest = divmod(trials, BLOCK)
    return [BLOCK] * full + ([rest] if rest else [])


def _run_blocks(fn, trials, stream, workers):
    sizes = _blocks(trials)
    tasks = [(b, n, stream.generator(block=b)) for b, n in enumerate(sizes)]
    if workers <= 1 or len(tasks) == 1:
        return [fn(n, gen) for _, n, gen in tasks]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        # map preserves block order
        return list(pool.map(lambda t: fn(t[1], t[2]), tasks))


def _cn(gen, shape):
    return (gen.standard_normal(shape) + 1j * gen.standard_normal(shape)) / np.sqrt(2.0)


def _projectors(cfg, bases):
    """Per-helper ``w_k^2``-scaled maps ``z -> E_k^H L_k z`` with ``L_k L_k^H = Sigma_k``."""
    if bases is None:
        bases = [s.null_basis() for s in cfg.helpers]
    out = []
    for spec, e in zip(cfg.helpers, bases, strict=True):
        out.append((spec.weight_sq, e.conj().T @ cholesky_factor(spec.eve_cov)))
    return out


def _interference(projs, gen, n):
    total = np.zeros(n)
    for w2, a in projs:
        z = _cn(gen, (n, a.shape[1]))
        total += w2 * np.sum(np.abs(z @ a.T) ** 2, axis=1)
    return total


def estimate_outage(cfg, chi, trials, rng, workers=1, bases=None):
    """Empirical ``Pr(rho0 |g_01|^2 / (J + 1) > chi)``.

    Only the first coordinate of the source-to-eavesdropper channel is drawn,
    which is distributed as ``CN(0, sigma^2)``.
    """
    if trials < 1:
        raise ValueError("need at least one trial")
    stream = _as_stream(rng)
    projs = _projectors(cfg, bases)

    def count(n, gen):
        g01 = cfg.eve_var * np.abs(_cn(gen, n)) ** 2
        ratio = cfg.source_snr * g01 / (_interference(projs, gen, n) + 1.0)
        return int(np.count_nonzero(ratio > chi))

    hits = sum(_run_blocks(count, trials, stream, workers))
    return proportion(hits, trials)


def eve_sinr_samples(q, cfg, trials, rng, workers=1, bases=None):
    """Samples of ``rho0 g0^H Q g0 / (J + 1)`` with the full vector ``g0``."""
    q = validate_input_covariance(q, cfg.n_source_antennas)
    stream = _as_stream(rng)
    projs = _projectors(cfg, bases)
    scale = np.sqrt(cfg.eve_var)

    def draw(n, gen):
        g0 = scale * _cn(gen, (n, cfg.n_source_antennas))
        signal = np.einsum("ni,ij,nj->n", g0.conj(), q, g0).real
        return cfg.source_snr * signal / (_interference(projs, gen, n) + 1.0)

    return np.concatenate(_run_blocks(draw, trials, stream, workers))


def _threshold(q, cfg, h0, rate):
    legit = float(np.vdot(h0, np.asarray(q) @ h0).real)
    return (1.0 + cfg.source_snr * legit) / 2.0 ** rate - 1.0


def estimate_rate_outage(q, cfg, h0, rate, trials, rng, workers=1):
    """Empirical ``Pr(C1 < rate)`` for an arbitrary input covariance ``q``.

    A nonpositive SINR threshold means the rate exceeds the legitimate link
    capacity, so outage is certain and no sampling is done.
    """
    h0 = np.asarray(h0, dtype=complex).ravel()
    thr = _threshold(q, cfg, h0, rate)
    if thr <= 0:
        return McEstimate(1.0, 0.0, trials)
    sinr = eve_sinr_samples(q, cfg, trials, rng, workers)
    return proportion(int(np.count_nonzero(sinr > thr)), trials)


def empirical_max_rate(q, cfg, h0, eps, trials, rng, workers=1, iterations=40):
    """Largest rate whose empirical outage stays within ``eps``.

    Bisects on ``[0, log2(1 + rho0 h0^H Q h0)]`` using one fixed set of
    samples, so the empirical outage is monotone in the rate.
    """
    h0 = np.asarray(h0, dtype=complex).ravel()
    legit = float(np.vdot(h0, np.asarray(q) @ h0).real)
    upper = float(np.log2(1.0 + cfg.source_snr * legit))
    sinr = np.sort(eve_sinr_samples(q, cfg, trials, rng, workers))

    def outage(rate):
        thr = _threshold(q, cfg, h0, rate)
        if thr <= 0:
            return 1.0
        return (trials - np.searchsorted(sinr, thr, side="right")) / trials

    if outage(upper) <= eps:
        return upper
    if outage(0.0) > eps:
        return 0.0
    lo, hi = 0.0, upper
    for _ in range(iterations):
        mid = 0.5 * (lo + hi)
        if outage(mid) <= eps:
            lo = mid
        else:
            hi = mid
    return lo


def rate_std_error(cfg, chi_eps, trials, eps=None):
    """Standard error of an empirical rate found at outage level ``eps``.

    The empirical ``(1 - eps)`` quantile of the eavesdropper SINR has error
    ``sqrt(eps (1 - eps) / n) / f(chi_eps)`` with ``f`` the SINR density; the
    rate moves by ``d chi / ((1 + chi) ln 2)``.
    """
    eps = cfg.epsilon if eps is None else eps
    density = -eps * outage_log_slope(cfg, chi_eps)
    quantile_se = np.sqrt(eps * (1.0 - eps) / trials) / density
    return float(quantile_se / ((1.0 + chi_eps) * np.log(2.0)))
