"""Tensor eigenpair toolkit: solvers, nondegeneracy certificates and censuses.

Modules:
    tensors: Dense and symmetric tensors, multilinear kernels, JSON codec
    eigen: Z-, singular-tuple and H-eigenpair solvers with certification
    odeco: Orthogonally decomposable tensors and their exact eigenpairs
    census: Brute-force oracles and Monte Carlo censuses
    reports: JSON and text report writers
"""

__version__ = "0.1.0"
