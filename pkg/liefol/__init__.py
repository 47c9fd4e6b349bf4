"""
liefol - left-invariant foliation verifier.
Structure constants, Levi-Civita geometry, foliation predicates and the
classification of conformal foliations with minimal leaves on 4-dimensional
metric Lie algebras.
"""

__version__ = "1.0.0"
