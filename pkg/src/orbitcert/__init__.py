"""Certified periodic-point prover for algebraic planar maps.

Exact rational arithmetic end to end for everything that is part of a proof
(root isolation, box discards, Poincare-Miranda certification); explicit
arbitrary-precision floating point only for the analytic-numeric studies
(invariant manifolds, homoclinic searches).
"""

__version__ = "0.1.0"
