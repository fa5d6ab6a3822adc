"""diarep: exact computations with representations of diagrams of module
categories indexed by finite categories.

Layers, bottom up:

- field / linalg: exact scalars and deterministic dense linear algebra
- fincat: finite categories, functors, ideals, stratification
- modcat: algebras, modules, bimodules, tensor/hom, limits and colimits
- diagram: coherent (possibly non-strict) diagrams of module categories
- rep: representations of a diagram, morphisms, kernels and cokernels
- functors: restriction, Kan extensions, zero-extension, stalks, adjunctions
- classify: projectivity and injectivity criteria versus brute-force oracles
- cli / workspace: declarative text workspaces and the command-line driver
"""

__version__ = "0.1.0"
