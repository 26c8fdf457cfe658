"""Closed-form outage probability of the eavesdropper's SINR.

The event ``rho0 |g|^2 / (J + 1) > chi`` is rewritten as ``z^H D z > 1`` for
a standard complex Gaussian ``z`` and a diagonal ``D`` with exactly one
positive entry ``nu0 = sigma^2 rho0 / chi``. The negative entries are the
jamming eigenvalues ``-rho_k/(N_k-1) * eig(E_k^H Sigma_k E_k)``. With a single
positive eigenvalue the tail of the quadratic form is

    Pr(z^H D z >= y) = exp(-y / nu0) * prod_j (1 - nu_j / nu0) ** (-m_j)

where ``nu_j`` are the distinct negative entries with multiplicity ``m_j``.
"""
from dataclasses import dataclass, field

import numpy as np

from .linalg import hermitian_eigendecomp

__all__ = ["GroupedSpectrum", "group_eigenvalues", "jamming_eigenvalues",
           "build_spectrum", "tail_probability", "outage_probability",
           "outage_log_slope"]

DEFAULT_GROUP_TOL = 1e-9


@dataclass
class GroupedSpectrum:
    nu0: float
    groups: list = field(default_factory=list)

    def __post_init__(self):
        if not self.nu0 > 0:
            raise ValueError("the positive eigenvalue nu0 must be > 0")
        for nu, m in self.groups:
            if not nu < 0:
                raise ValueError("quadratic form must have exactly one positive eigenvalue")
            if m < 1:
                raise ValueError("multiplicities must be positive")

    @property
    def multiplicity(self):
        return sum(m for _, m in self.groups)


def group_eigenvalues(values, tol=DEFAULT_GROUP_TOL):
    """Merge values within relative distance ``tol`` of a group's mean.

    Returns ``[(mean, multiplicity), ...]`` sorted descending.
    """
    vals = sorted(float(v) for v in values)
    groups = []
    for v in vals:
        if groups:
            mean = groups[-1][0] / groups[-1][1]
            if abs(v - mean) <= tol * max(abs(v), abs(mean)):
                groups[-1][0] += v
                groups[-1][1] += 1
                continue
        groups.append([v, 1])
    return [(s / m, m) for s, m in reversed(groups)]


def jamming_eigenvalues(cfg, bases=None, tol=DEFAULT_GROUP_TOL):
    """Grouped negative eigenvalues of ``D``; these do not depend on chi.

    ``bases`` overrides the helpers' null-space bases. Zero eigenvalues of a
    rank-deficient ``E^H Sigma E`` contribute unit factors and are dropped.
    """
    if bases is None:
        bases = [s.null_basis() for s in cfg.helpers]
    negatives = []
    for spec, e in zip(cfg.helpers, bases, strict=True):
        projected = e.conj().T @ spec.eve_cov @ e
        d = hermitian_eigendecomp(projected).eigenvalues
        top = float(d[0]) if d.size else 0.0
        if d.size and d[-1] < -1e-8 * float(np.linalg.norm(spec.eve_cov)):
            raise ValueError("covariance not PSD: D would have extra positive eigenvalues")
        keep = d[np.abs(d) > 1e-12 * top] if top > 0 else d[:0]
        negatives.extend(-spec.weight_sq * keep)
    return group_eigenvalues(negatives, tol)


def build_spectrum(cfg, chi, bases=None, tol=DEFAULT_GROUP_TOL):
    if not chi > 0:
        raise ValueError(f"chi must be positive, got {chi}")
    nu0 = cfg.eve_var * cfg.source_snr / chi
    return GroupedSpectrum(nu0, jamming_eigenvalues(cfg, bases, tol))


def tail_probability(spectrum, y=1.0):
    """``Pr(z^H D z >= y)`` for ``y > 0``, evaluated in log space."""
    if not y > 0:
        raise ValueError("tail threshold must be positive")
    nu0 = spectrum.nu0
    log_p = -y / nu0
    for nu, m in spectrum.groups:
        log_p -= m * np.log1p(-nu / nu0)
    return float(np.exp(log_p))


def outage_probability(cfg, chi, bases=None, tol=DEFAULT_GROUP_TOL, groups=None):
    """``Pr(rho0 |g_01|^2 / (sum_k rho_k/(N_k-1) ||E_k^H g_k||^2 + 1) > chi)``.

    ``groups`` may pass precomputed :func:`jamming_eigenvalues` to skip the
    per-call eigendecompositions. ``chi <= 0`` gives probability 1.
    """
    if chi <= 0:
        return 1.0
    if groups is None:
        return tail_probability(build_spectrum(cfg, chi, bases, tol))
    return tail_probability(GroupedSpectrum(cfg.eve_var * cfg.source_snr / chi, groups))


def outage_log_slope(cfg, chi, groups=None):
    """``d log P_out / d chi``; always negative."""
    if groups is None:
        groups = jamming_eigenvalues(cfg)
    s = cfg.eve_var * cfg.source_snr
    return -1.0 / s - sum(m * (-nu) / (s - nu * chi) for nu, m in groups)
