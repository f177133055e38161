"""Tools for bounding the minimum number of distinct eigenvalues q(G) of
symmetric matrices with a prescribed off-diagonal zero pattern, explicit
certificate constructions, and exhaustive small-order verification of the
complement inequality q(G) + q(G^c) <= |G| + 2."""

__version__ = "1.0.0"

from .graphs import (Graph, complement, graph6_decode, graph6_encode,
                     enumerate_nonisomorphic)
from .spectra import DEFAULT_TOL, ToleranceConfig, spectrum
from .constructions import Certificate, certificate_bank, verify_certificate
from .strong import strong_property_check
from .bounds import bound_report
from .families import classify_tree, q_tree, q_tree_complement
from .conjecture import verdict

__all__ = [
    "Graph", "complement", "graph6_decode", "graph6_encode",
    "enumerate_nonisomorphic", "DEFAULT_TOL", "ToleranceConfig", "spectrum",
    "Certificate", "certificate_bank", "verify_certificate",
    "strong_property_check", "bound_report", "classify_tree", "q_tree",
    "q_tree_complement", "verdict",
]
