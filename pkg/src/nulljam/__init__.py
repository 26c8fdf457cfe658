"""Outage-constrained secrecy rates for MISO wiretap channels with null-space jammers."""
from .channel import (ChannelDraw, HelperSpec, RandomStream, SystemConfig, db_to_linear,
                      draw_channels, linear_to_db, sample_complex_gaussian)
from .jamming import (JammerState, bob_residual_interference, build_jammer, build_jammers,
                      eve_interference_power, received_signals, secrecy_rate)
from .linalg import HermitianEigen, cholesky_factor, hermitian_eigendecomp, null_space_basis
from .montecarlo import (McEstimate, empirical_max_rate, estimate_outage,
                         estimate_rate_outage, rate_std_error)
from .optimizer import (OutageSolution, critical_chi, feasibility_check,
                        optimal_input_covariance, optimal_rate)
from .outage import (GroupedSpectrum, build_spectrum, group_eigenvalues, outage_probability,
                     tail_probability)

__version__ = "0.1.0"
