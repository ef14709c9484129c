"""Invariant-theoretic computations for bound quiver algebras.

Everything runs over exact rational arithmetic: bilinear and quadratic forms
on the Grothendieck group, King (semi)stability of explicit representations,
semi-invariant weight-space dimensions and moduli Hilbert series, theta-stable
decompositions, and transport of weights and modules across tilting.
"""

__version__ = "0.1.0"
