"""Experiment configuration files.

The format is flat ``key = value`` lines; ``#`` starts a comment and blank
lines are ignored. Keys are namespaced::

    system.nt = 3                # source antennas
    system.rho0_db = 5           # or system.rho0 (linear)
    system.sigma2 = 1            # per-entry variance of the source-eve channel
    system.epsilon = 0.01
    system.legit_variance = 1
    system.h0 = 1+0.5j, 0.2, -1j # optional fixed legitimate channel
    helpers.count = 5
    helpers.nk = 2               # or a comma list, cycled over helpers
    helpers.rho_db = 2           # or helpers.rho (linear)
    helpers.cov_file = cov.txt   # optional, shared by all helpers
    helpers.3.cov_file = c3.txt  # optional, helper 3 only (1-based)
    mc.trials = 100000
    mc.seed = 0
    mc.draws = 1000
    mc.workers = 1
    sweep.n_min = 5
    sweep.n_max = 10
    target.fraction = 0.6
    outage.group_tol = 1e-9
    validate.points = 8

Covariance files hold a whitespace-separated complex matrix (``1+0.5j``
style entries); relative paths resolve against the config file's directory.
"""
import re
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .channel import HelperSpec, SystemConfig, db_to_linear
from .linalg import cholesky_factor
from .outage import DEFAULT_GROUP_TOL

__all__ = ["ConfigError", "ExperimentConfig", "parse_config", "load_config"]

_PER_HELPER = re.compile(r"^helpers\.(\d+)\.cov_file$")
_KNOWN = {
    "system.nt", "system.rho0_db", "system.rho0", "system.sigma2", "system.epsilon",
    "system.legit_variance", "system.h0",
    "helpers.count", "helpers.nk", "helpers.rho_db", "helpers.rho", "helpers.cov_file",
    "mc.trials", "mc.seed", "mc.draws", "mc.workers",
    "sweep.n_min", "sweep.n_max", "target.fraction", "outage.group_tol", "validate.points",
}


class ConfigError(ValueError):
    def __init__(self, key, message):
        super().__init__(f"config key '{key}': {message}")
        self.key = key


@dataclass
class ExperimentConfig:
    n_source_antennas: int = 3
    source_snr: float = db_to_linear(5.0)
    eve_var: float = 1.0
    epsilon: float = 0.01
    legit_variance: float = 1.0
    h0: np.ndarray = None
    helper_count: int = 0
    helper_nk: tuple = (2,)
    helper_snr: float = db_to_linear(2.0)
    shared_cov: np.ndarray = None
    helper_covs: dict = field(default_factory=dict)
    n_min: int = 5
    n_max: int = 10
    trials: int = 100_000
    seed: int = 0
    channel_draws: int = 1000
    workers: int = 1
    target_fraction: float = 0.6
    group_tol: float = DEFAULT_GROUP_TOL
    validate_points: int = 8

    def helper_spec(self, k):
        """Spec of helper ``k`` (0-based)."""
        nk = self.helper_nk[k % len(self.helper_nk)]
        cov = self.helper_covs.get(k + 1, self.shared_cov)
        return HelperSpec(nk, self.helper_snr, cov)

    def system(self, n_helpers=None):
        n = self.helper_count if n_helpers is None else n_helpers
        return SystemConfig(self.n_source_antennas, self.source_snr, self.eve_var,
                            [self.helper_spec(k) for k in range(n)], self.epsilon)

    def isotropic(self, n_helpers):
        """True when every helper's eavesdropper covariance is a multiple of I."""
        for k in range(n_helpers):
            cov = self.helper_spec(k).eve_cov
            if not np.allclose(cov, cov[0, 0] * np.eye(cov.shape[0]), rtol=0, atol=1e-14):
                return False
        return True


def _split(text):
    pairs = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(line, f"line {lineno} is not of the form key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        pairs.append((key, value))
    return pairs


def _number(key, value, kind=float):
    try:
        x = kind(value)
    except ValueError:
        raise ConfigError(key, f"cannot parse {value!r} as {kind.__name__}") from None
    if kind is float and not np.isfinite(x):
        raise ConfigError(key, "must be finite")
    return x


def _load_matrix(key, path, base):
    p = Path(path)
    if not p.is_absolute():
        p = base / p
    try:
        m = np.loadtxt(p, dtype=complex, ndmin=2)
    except (OSError, ValueError) as exc:
        raise ConfigError(key, f"cannot read matrix file {p}: {exc}") from None
    if m.shape[0] != m.shape[1]:
        raise ConfigError(key, f"matrix in {p} is not square")
    return m


def parse_config(text, base_dir="."):
    """Parse config text into an :class:`ExperimentConfig`."""
    base = Path(base_dir)
    cfg = ExperimentConfig()
    seen = set()
    for key, value in _split(text):
        m = _PER_HELPER.match(key)
        if key not in _KNOWN and not m:
            raise ConfigError(key, "unknown key")
        if key in seen:
            raise ConfigError(key, "duplicate key")
        seen.add(key)
        if m:
            idx = int(m.group(1))
            if idx < 1:
                raise ConfigError(key, "helper indices start at 1")
            cfg.helper_covs[idx] = _load_matrix(key, value, base)
        elif key == "system.nt":
            cfg.n_source_antennas = _number(key, value, int)
        elif key == "system.rho0_db":
            cfg.source_snr = db_to_linear(_number(key, value))
        elif key == "system.rho0":
            cfg.source_snr = _number(key, value)
        elif key == "system.sigma2":
            cfg.eve_var = _number(key, value)
        elif key == "system.epsilon":
            cfg.epsilon = _number(key, value)
        elif key == "system.legit_variance":
            cfg.legit_variance = _number(key, value)
        elif key == "system.h0":
            try:
                cfg.h0 = np.array([complex(s.replace(" ", "")) for s in value.split(",")])
            except ValueError:
                raise ConfigError(key, f"cannot parse complex list {value!r}") from None
        elif key == "helpers.count":
            cfg.helper_count = _number(key, value, int)
        elif key == "helpers.nk":
            cfg.helper_nk = tuple(_number(key, s.strip(), int) for s in value.split(","))
        elif key == "helpers.rho_db":
            cfg.helper_snr = db_to_linear(_number(key, value))
        elif key == "helpers.rho":
            cfg.helper_snr = _number(key, value)
        elif key == "helpers.cov_file":
            cfg.shared_cov = _load_matrix(key, value, base)
        elif key == "mc.trials":
            cfg.trials = _number(key, value, int)
        elif key == "mc.seed":
            cfg.seed = _number(key, value, int)
        elif key == "mc.draws":
            cfg.channel_draws = _number(key, value, int)
        elif key == "mc.workers":
            cfg.workers = _number(key, value, int)
        elif key == "sweep.n_min":
            cfg.n_min = _number(key, value, int)
        elif key == "sweep.n_max":
            cfg.n_max = _number(key, value, int)
        elif key == "target.fraction":
            cfg.target_fraction = _number(key, value)
        elif key == "outage.group_tol":
            cfg.group_tol = _number(key, value)
        elif key == "validate.points":
            cfg.validate_points = _number(key, value, int)
    if {"system.rho0", "system.rho0_db"} <= seen:
        raise ConfigError("system.rho0", "give either system.rho0 or system.rho0_db")
    if {"helpers.rho", "helpers.rho_db"} <= seen:
        raise ConfigError("helpers.rho", "give either helpers.rho or helpers.rho_db")
    validate(cfg)
    return cfg


def validate(cfg):
    """Range checks; raises :class:`ConfigError` naming the offending key."""
    checks = [
        ("system.nt", cfg.n_source_antennas >= 1, "must be >= 1"),
        ("system.rho0", cfg.source_snr > 0, "must be positive"),
        ("system.sigma2", cfg.eve_var > 0, "must be positive"),
        ("system.epsilon", 0 < cfg.epsilon < 1, "must lie in (0, 1)"),
        ("system.legit_variance", cfg.legit_variance > 0, "must be positive"),
        ("system.h0", cfg.h0 is None or (cfg.h0.size == cfg.n_source_antennas
                                         and np.any(cfg.h0 != 0)),
         "must be a nonzero vector of length system.nt"),
        ("helpers.count", cfg.helper_count >= 0, "must be >= 0"),
        ("helpers.nk", all(n >= 2 for n in cfg.helper_nk), "each helper needs >= 2 antennas"),
        ("helpers.rho", cfg.helper_snr > 0, "must be positive"),
        ("mc.trials", cfg.trials >= 1, "must be >= 1"),
        ("mc.seed", 0 <= cfg.seed < 2 ** 64, "must be an unsigned 64-bit integer"),
        ("mc.draws", cfg.channel_draws >= 1, "must be >= 1"),
        ("mc.workers", cfg.workers >= 1, "must be >= 1"),
        ("sweep.n_min", cfg.n_min >= 1, "must be >= 1"),
        ("sweep.n_max", cfg.n_max >= cfg.n_min, "must be >= sweep.n_min"),
        ("target.fraction", 0 <= cfg.target_fraction <= 1, "must lie in [0, 1]"),
        ("outage.group_tol", cfg.group_tol > 0, "must be positive"),
        ("validate.points", cfg.validate_points >= 8, "must be >= 8"),
    ]
    for key, ok, msg in checks:
        if not ok:
            raise ConfigError(key, msg)
    n_helpers = max(cfg.helper_count, cfg.n_max)
    for k in range(n_helpers):
        key = f"helpers.{k + 1}.cov_file" if k + 1 in cfg.helper_covs else "helpers.cov_file"
        try:
            cholesky_factor(cfg.helper_spec(k).eve_cov)
        except ValueError as exc:
            raise ConfigError(key, str(exc)) from None


def load_config(path):
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError("--config", f"cannot read {path}: {exc}") from None
    return parse_config(text, path.parent)
