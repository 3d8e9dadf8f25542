"""Exact computational toolkit for algebras entwined with coalgebras.

The package represents an algebra A, a coalgebra C, and an entwining map
psi: C (x) A -> A (x) C by structure constants over Q or a prime field,
verifies all axioms exactly, and computes the associated twisted
Hochschild/Cartier cohomology, cup products, equivariant subcomplexes, and
infinitesimal deformations.  See README.md and the demos/ directory.
"""

from .entwining import EntwiningStructure, check_bowtie
from .linalg import QQ, FieldSpec, Mat
from .structures import FiniteAlgebra, FiniteCoalgebra, LinearMap
from .zoo import load, named_example, save

__all__ = [
    "EntwiningStructure",
    "FieldSpec",
    "FiniteAlgebra",
    "FiniteCoalgebra",
    "LinearMap",
    "Mat",
    "QQ",
    "check_bowtie",
    "load",
    "named_example",
    "save",
]
__version__ = "0.1.0"
