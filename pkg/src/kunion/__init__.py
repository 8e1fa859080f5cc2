"""Exact and certified checks for almost k-union closed set systems.

Modules
-------
numerics   rationals, intervals, phi_k and the ring Q[x]/(x^k + x - 1)
poly       dense polynomials, Sturm chains, root counts, discriminants
paperpoly  p_k = alpha_k rho_k - sigma_k and its root structure
analysis   entropy functions f_k, F_k, M_k and sampled inequalities
constants  certified phi_k, psi_k, alpha_k, mu_k, z_k and the frequency bound
simulate   Monte Carlo and exhaustive checks of the extremal family
cli        the ``kunion`` command
"""

__version__ = "0.1.0"
