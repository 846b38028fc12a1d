"""Tolerances and physical constants shared across modules."""

import math

# numerical tolerances (override by reassigning before use)
HERM_TOL = 1e-12
RECON_TOL = 1e-10
UNITARY_TOL = 1e-10
PSD_TOL = 1e-10
DEGENERACY_TOL = 1e-9

# atomic units -> SI / eV
HARTREE_EV = 27.211386
RYDBERG_EV = HARTREE_EV / 2
ATOMIC_TIME_S = 2.4188843e-17
FINE_STRUCTURE = 1 / 137.035999
SPEED_OF_LIGHT_AU = 1 / FINE_STRUCTURE

# hydrogen hyperfine line, documented value only
HYDROGEN_21CM_HZ = 1420.405751768e6

DEFAULT_SEED = 20250101

SQRT2 = math.sqrt(2.0)
