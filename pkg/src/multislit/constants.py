"""Physical constants (CODATA 2018, SI units)."""

HBAR = 1.054571817e-34   # reduced Planck constant, J s
K_B = 1.380649e-23       # Boltzmann constant, J / K
PLANCK = 6.62607015e-34  # Planck constant, J s
