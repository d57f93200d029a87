"""Torsion endotrivial groups K(G) of finite groups via weak homomorphisms
and towers of local subgroups."""

__version__ = "0.1.0"
