"""Exact-arithmetic toolkit for bounded-diameter families of subspaces of F_q^n.

Modules: gfq (field tables), subspace (canonical RREF representation and the
metric), qcount (big-integer bound formulas), grassmann (layer and lattice
enumeration), families (named constructions and admissibility), oracle
(exhaustive search and exact sweeps), cli (command-line front end).
"""

__version__ = "0.1.0"
