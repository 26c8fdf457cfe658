"""Outage-constrained secrecy rate maximisation.

With an isotropic source-to-eavesdropper channel, beamforming along ``h0``
is optimal. The best rate then follows from the SINR threshold ``chi_eps``
that the eavesdropper exceeds with probability exactly ``eps``:

    R* = log2(1 + rho0 ||h0||^2) - log2(1 + chi_eps)

and ``R* > 0`` iff the outage at ``chi = rho0 ||h0||^2`` is below ``eps``.
"""
from dataclasses import dataclass

import numpy as np

from .outage import DEFAULT_GROUP_TOL, jamming_eigenvalues, outage_probability

__all__ = ["OutageSolution", "optimal_input_covariance", "critical_chi",
           "solution_from_chi", "optimal_rate", "feasibility_check"]

PROB_TOL = 1e-10
CHI_RTOL = 1e-12
_MAX_ITER = 400


@dataclass(frozen=True)
class OutageSolution:
    chi_eps: float
    rate: float
    feasible: bool


def optimal_input_covariance(h0):
    """Rank-one projector ``h0 h0^H / ||h0||^2``."""
    h0 = np.asarray(h0, dtype=complex).ravel()
    norm_sq = float(np.vdot(h0, h0).real)
    if norm_sq == 0:
        raise ValueError("optimal covariance undefined for a zero legitimate channel")
    return np.outer(h0, h0.conj()) / norm_sq


def critical_chi(cfg, eps=None, bases=None, tol=DEFAULT_GROUP_TOL):
    """Threshold ``chi`` whose closed-form outage equals ``eps`` (bisection).

    The upper bracket starts at ``rho0 * sigma^2`` and grows by 4x until the
    outage drops below ``eps``; the lower bracket is ``0+`` where the outage
    tends to one.
    """
    eps = cfg.epsilon if eps is None else eps
    if not 0 < eps < 1:
        raise ValueError(f"epsilon must lie in (0, 1), got {eps}")
    groups = jamming_eigenvalues(cfg, bases, tol)

    def p_out(chi):
        return outage_probability(cfg, chi, groups=groups)

    lo, hi = 0.0, cfg.source_snr * cfg.eve_var
    while p_out(hi) >= eps:
        lo, hi = hi, 4.0 * hi
    for _ in range(_MAX_ITER):
        mid = 0.5 * (lo + hi)
        p = p_out(mid)
        if p > eps:
            lo = mid
        else:
            hi = mid
        if hi - lo <= CHI_RTOL * hi and abs(p - eps) <= PROB_TOL:
            break
    chi = 0.5 * (lo + hi)
    if abs(p_out(chi) - eps) > PROB_TOL:
        raise RuntimeError("bisection for the critical threshold did not converge")
    return chi


def solution_from_chi(chi_eps, gain):
    """Assemble the solution given ``chi_eps`` and ``gain = rho0 ||h0||^2``."""
    rate = float(np.log2(1.0 + gain) - np.log2(1.0 + chi_eps))
    return OutageSolution(chi_eps, rate, bool(chi_eps < gain))


def _gain(cfg, h0):
    h0 = np.asarray(h0, dtype=complex).ravel()
    norm_sq = float(np.vdot(h0, h0).real)
    if norm_sq == 0:
        raise ValueError("legitimate channel must be nonzero")
    return cfg.source_snr * norm_sq


def optimal_rate(cfg, h0, chi_eps=None):
    """Optimal rate for the legitimate channel ``h0``.

    Infeasible cases keep the negative rate, with ``feasible=False``.
    ``chi_eps`` can be passed when already known (it does not depend on h0).
    """
    gain = _gain(cfg, h0)
    if chi_eps is None:
        chi_eps = critical_chi(cfg)
    return solution_from_chi(chi_eps, gain)


def feasibility_check(cfg, h0):
    """True iff a strictly positive rate meets the outage budget."""
    return outage_probability(cfg, _gain(cfg, h0)) < cfg.epsilon
