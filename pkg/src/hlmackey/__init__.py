"""Exact computations with invariant functions on gl(n, F_q) and u(2n, F_{q^2}).

Orbit enumeration, parabolic restriction and induction, the graded bialgebra
A_q and the twisted module B, Hall-Littlewood branching graphs and harmonic
functionals.  All arithmetic is exact.
"""

__version__ = "0.1.0"
