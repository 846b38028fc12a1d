"""Numerical companion to an introductory quantum-mechanics course.

Dense state-vector and matrix routines for qubits, lattice particles,
oscillators, angular momentum, hydrogen, Bell tests, the lattice Dirac
equation and renormalization-group flows. Units: hbar = 1 throughout.
"""

__version__ = "0.1.0"
