"""Exact combinatorics of self-dual parameters for unitary groups.

The package computes, in exact rational arithmetic, the finite-group and
sign data attached to formal parameters of quasi-split unitary groups:
centralizer shapes and their component groups, Weyl-set invariants of
complex reductive components, elliptic endoscopic data with their
stabilization coefficients, sign characters built from symplectic root
numbers, stable and spectral multiplicity coefficients, and formal
standard-character expansions.  Everything is driven by shape data
(degrees, dualities, multiplicities); no representations are constructed.
"""

__version__ = "0.1.0"
