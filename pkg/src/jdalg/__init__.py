"""Exact computer algebra for Jacobi-diagram algebras on two and three
strands: free Lie algebras in Lyndon form, truncated Drinfeld-Kohno
envelopes, associators and their twists, combinatorial braid invariants,
Lie-algebra weight systems, and a batch verification CLI."""

__version__ = "0.1.0"
