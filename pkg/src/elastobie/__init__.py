"""Boundary-integral solver for time-harmonic elastic scattering by a rigid
2D obstacle.

The scattered displacement field is Helmholtz-decomposed into compressional and
shear scalar potentials, each satisfying a Helmholtz equation; single-layer
ansatzes lead to a coupled system of boundary integral equations that is
discretized by trigonometric (Nystrom) collocation with singular quadratures
exact for trigonometric polynomials.  Corner domains are handled by a graded
parameter substitution with shifted collocation nodes.
"""

__version__ = "0.1.0"
