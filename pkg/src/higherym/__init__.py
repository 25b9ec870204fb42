"""Exact exterior calculus over differential 2-crossed modules.

Lie algebras by structure constants, crossed and 2-crossed structures with
axiom checkers, invariant bilinear form triples and their induced maps,
algebra-valued polynomial differential forms on the unit box, the curvature
and differential identities of 3-connections, the quadratic action with
exact variational checks, and finite group squares/cubes.
"""

__version__ = "0.1.0"
