"""Entwining structures from scratch.

An entwining structure is a triple (A, C, psi): a finite-dimensional algebra,
a coalgebra, and a map psi: C (x) A -> A (x) C satisfying four compatibility
relations (two pentagons, two triangles).  This script builds a few, pokes at
psi, and shows the twisted convolution algebra on Hom(C, A).
"""

from entwine.entwining import (
    check_bowtie,
    check_tower_compatibility,
    convolution_psi,
    convolution_unit,
    psi_up,
)
from entwine.linalg import QQ, Mat
from entwine.structures import LinearMap
from entwine.zoo import (
    bialgebra_self_entwining,
    corrupted_psi_entwining,
    group_algebra_hopf,
    sweedler_h4,
    trivial_entwining,
)

# Every algebra/coalgebra pair entwines via the flip of tensor factors.
h = group_algebra_hopf(2)
flip = trivial_entwining(h.algebra, h.coalgebra)
print("flip entwining of (kZ2, kZ2):", check_bowtie(flip.algebra, flip.coalgebra, flip.psi))

# A bialgebra entwines with itself via psi(c (x) a) = a_(1) (x) c a_(2).
kz2 = bialgebra_self_entwining(h)
print("\npsi matrix of the canonical kZ2 self-entwining (columns c (x) a):")
for row in kz2.psi.mat.to_fraction_rows():
    print("  ", [str(v) for v in row])

# The towers psi^n move C past n tensor copies of A; here on g (x) g (x) g.
v = Mat.from_triples(QQ, 8, 1, [(7, 0, 1)])
print("\npsi^2 fixes g (x) g (x) g:", (psi_up(kz2, 2).mat @ v) == v)

# Compatibility of the towers with multiplication/comultiplication inside:
print("tower compatibility (n=2, j=0):", check_tower_compatibility(kz2, 2, 0))

# Breaking one sign of psi is caught, with the failing relation named.
bad = corrupted_psi_entwining()
report = check_bowtie(bad.algebra, bad.coalgebra, bad.psi)
print("\ncorrupted psi:", report)

# Hom(C, A) becomes an associative algebra under the twisted convolution
# (f * g)(c) = f(c_(2))_alpha g(c_(1)^alpha), with unit 1 o eps.
one = convolution_unit(kz2)
f = LinearMap((2,), (2,), Mat.from_rows(QQ, [[0, 1], [1, 0]]))
print("\nunit law of the twisted convolution:", convolution_psi(kz2, f, one) == f)

# Sweedler's four-dimensional Hopf algebra gives a noncommutative example.
h4 = bialgebra_self_entwining(sweedler_h4())
print("Sweedler H4 self-entwining passes the bow-tie:",
      check_bowtie(h4.algebra, h4.coalgebra, h4.psi).ok)
