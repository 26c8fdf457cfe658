"""Null-space jammers and the instantaneous secrecy rate.

All powers are in SNR units (normalised by the receiver noise power), so the
noise power itself never appears.
"""
from dataclasses import dataclass

import numpy as np

from .linalg import is_hermitian, null_space_basis

__all__ = ["JammerState", "build_jammer", "build_jammers", "validate_input_covariance",
           "eve_interference_power", "secrecy_rate", "bob_residual_interference",
           "received_signals"]


@dataclass
class JammerState:
    """Null-space basis ``E`` (N_k x (N_k-1)) and squared weight ``|w|^2``.

    ``weight_sq`` is in SNR units: ``rho_k / (N_k - 1)`` at full power.
    """
    basis: np.ndarray
    weight_sq: float

    @property
    def n_antennas(self):
        return self.basis.shape[0]


def build_jammer(h_k, rho_k):
    h_k = np.asarray(h_k, dtype=complex).ravel()
    if h_k.size < 2:
        raise ValueError("no null space degrees of freedom (helper needs >= 2 antennas)")
    if not rho_k > 0:
        raise ValueError("helper snr must be positive")
    return JammerState(null_space_basis(h_k), rho_k / (h_k.size - 1))


def build_jammers(cfg, h_k=None):
    """Jammers for every helper in ``cfg``; ``h_k`` overrides the helpers' own channels."""
    if h_k is None:
        return [JammerState(s.null_basis(), s.weight_sq) for s in cfg.helpers]
    return [build_jammer(h, s.snr) for s, h in zip(cfg.helpers, h_k, strict=True)]


def validate_input_covariance(q, n=None):
    q = np.asarray(q, dtype=complex)
    if q.ndim != 2 or q.shape[0] != q.shape[1] or (n is not None and q.shape[0] != n):
        raise ValueError(f"input covariance has wrong shape {q.shape}")
    if not is_hermitian(q):
        raise ValueError("input covariance must be Hermitian")
    if np.trace(q).real > 1 + 1e-12:
        raise ValueError("input covariance trace exceeds 1")
    if np.linalg.eigvalsh(0.5 * (q + q.conj().T))[0] < -1e-12:
        raise ValueError("input covariance must be PSD")
    return q


def eve_interference_power(jammers, g_k):
    """Jamming power reaching the eavesdropper, ``sum_k |w_k|^2 ||E_k^H g_k||^2``.

    Each ``g_k`` may carry leading batch dimensions (``(..., N_k)``), in which
    case the result has the batch shape.
    """
    total = 0.0
    for jam, g in zip(jammers, g_k, strict=True):
        proj = np.asarray(g) @ jam.basis.conj()
        total = total + jam.weight_sq * np.sum(np.abs(proj) ** 2, axis=-1)
    return total


def _quad(q, v):
    return float(np.vdot(v, q @ v).real)


def secrecy_rate(q, draw, cfg, jammers=None):
    """Signed instantaneous secrecy rate in bits per channel use.

    Negative values are returned as is; reporting code clamps at zero.
    """
    if jammers is None:
        jammers = build_jammers(cfg, draw.h_k)
    rho0 = cfg.source_snr
    legit = rho0 * _quad(q, draw.h0)
    eve = rho0 * _quad(q, draw.g0) / (eve_interference_power(jammers, draw.g_k) + 1.0)
    return float(np.log2(1.0 + legit) - np.log2(1.0 + eve))


def bob_residual_interference(jammers, h_k, t_k):
    """``|sum_k h_k^H (w_k E_k t_k)|^2`` for concrete noise samples ``t_k``."""
    total = 0j
    for jam, h, t in zip(jammers, h_k, t_k, strict=True):
        n_k = np.sqrt(jam.weight_sq) * (jam.basis @ np.asarray(t))
        total += np.vdot(h, n_k)
    return float(abs(total) ** 2)


def received_signals(draw, cfg, x, t_k, noise, jammers=None):
    """Noisy observations at the destination and the eavesdropper.

    Signals are in SNR units: source power ``rho0``, unit noise power. ``x``
    is the source symbol vector, ``t_k`` the per-helper white noise inputs
    and ``noise`` the pair ``(n_b, n_e)``.
    """
    if jammers is None:
        jammers = build_jammers(cfg, draw.h_k)
    amp = np.sqrt(cfg.source_snr)
    jam = [np.sqrt(j.weight_sq) * (j.basis @ np.asarray(t)) for j, t in zip(jammers, t_k)]
    y_b = amp * np.vdot(draw.h0, x) + sum(np.vdot(h, n) for h, n in zip(draw.h_k, jam)) + noise[0]
    y_e = amp * np.vdot(draw.g0, x) + sum(np.vdot(g, n) for g, n in zip(draw.g_k, jam)) + noise[1]
    return complex(y_b), complex(y_e)
