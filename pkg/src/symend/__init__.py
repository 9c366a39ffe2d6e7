"""Exact endomorphism-algebra computations for modular representations.

Builds string, band, cyclic-group and Nakayama uniserial modules over
finite fields, computes their endomorphism algebras, and decides whether
those algebras are quasi-Frobenius, Frobenius, weakly symmetric or
symmetric.
"""

__version__ = "0.1.0"
