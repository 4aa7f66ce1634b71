"""Exact homology of finite cyclic covers of arrangement complements,
multinet verification, polarization, and torsion certificates for
Milnor fibers."""

__version__ = "0.1.0"
