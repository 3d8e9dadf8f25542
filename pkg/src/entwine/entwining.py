"""Entwining structures (A, C, psi) and their induced (co)module structures.

psi: C (x) A -> A (x) C must make the bow-tie diagram commute, equivalently
the four relations, written in alpha-notation psi(c (x) a) = a_alpha (x) c^alpha:

    left pentagon:  (aa')_alpha (x) c^alpha = a_alpha a'_beta (x) c^{alpha beta}
    left triangle:  1_alpha (x) c^alpha = 1 (x) c
    right pentagon: a_alpha (x) Delta(c^alpha)
                        = a_{beta alpha} (x) c_(1)^alpha (x) c_(2)^beta
    right triangle: a_alpha eps(c^alpha) = a eps(c)

The two tower families

    psi^n : C (x) A^n -> A^n (x) C      (move C right past n copies of A)
    psi_n : C^n (x) A -> A (x) C^n      (move A left past n copies of C)

make A (x) C^n an A-bimodule and C (x) A^n a C-bicomodule; those structures
drive every differential downstream, so the towers are cached per structure.
"""

from __future__ import annotations

from .errors import BowTieError, DegreeError, ShapeMismatchError
from .structures import (
    Bicomodule,
    Bimodule,
    FiniteAlgebra,
    FiniteCoalgebra,
    LinearMap,
    ValidationReport,
    compose,
    decode_index,
    identity_map,
    tensor,
    validate_algebra,
    validate_bicomodule,
    validate_bimodule,
    validate_coalgebra,
)

BOWTIE_RELATIONS = ("left pentagon", "left triangle", "right pentagon", "right triangle")


def check_bowtie(a: FiniteAlgebra, c: FiniteCoalgebra, psi: LinearMap) -> ValidationReport:
    """Evaluate the four bow-tie relations as exact matrix identities."""
    if psi.domain_shape != (c.dim, a.dim) or psi.codomain_shape != (a.dim, c.dim):
        raise ShapeMismatchError("psi must map C(x)A -> A(x)C")
    ida, idc = a.identity(), c.identity()
    report = ValidationReport("bow-tie")

    def record(name, lhs, rhs, labels):
        diff = lhs.mat - rhs.mat
        if not diff.is_zero():
            first = min(j for _, j, _ in diff.triples())
            idx = decode_index(lhs.domain_shape, first)
            report.add_failure(name, tuple(lab[k] for lab, k in zip(labels, idx)))

    # psi o (C (x) mu) = (mu (x) C) o (A (x) psi) o (psi (x) A)
    record(
        "left pentagon",
        compose(psi, tensor(idc, a.mult)),
        compose(tensor(a.mult, idc), compose(tensor(ida, psi), tensor(psi, ida))),
        [c.basis_labels, a.basis_labels, a.basis_labels],
    )
    # psi o (C (x) 1) = 1 (x) C
    record(
        "left triangle",
        compose(psi, tensor(idc, a.unit_map())),
        tensor(a.unit_map(), idc),
        [c.basis_labels],
    )
    # (A (x) Delta) o psi = (psi (x) C) o (C (x) psi) o (Delta (x) A)
    record(
        "right pentagon",
        compose(tensor(ida, c.comult), psi),
        compose(tensor(psi, idc), compose(tensor(idc, psi), tensor(c.comult, ida))),
        [c.basis_labels, a.basis_labels],
    )
    # (A (x) eps) o psi = eps (x) A
    record(
        "right triangle",
        compose(tensor(ida, c.counit), psi),
        tensor(c.counit, ida),
        [c.basis_labels, a.basis_labels],
    )
    return report


class EntwiningStructure:
    """Validated triple (A, C, psi) with cached psi towers."""

    def __init__(self, algebra, coalgebra, psi, hopf=None, _skip_validation=False):
        self.algebra = algebra
        self.coalgebra = coalgebra
        self.psi = psi
        self.hopf = hopf
        self._cache: dict = {}
        if not _skip_validation:
            validate_algebra(algebra).raise_if_failed()
            validate_coalgebra(coalgebra).raise_if_failed()
            report = check_bowtie(algebra, coalgebra, psi)
            if not report.ok:
                raise BowTieError(str(report), report=report)

    @classmethod
    def unchecked(cls, algebra, coalgebra, psi, hopf=None):
        """Construct without validation (diagnostics and negative fixtures)."""
        return cls(algebra, coalgebra, psi, hopf=hopf, _skip_validation=True)

    @property
    def field(self):
        return self.algebra.field

    def summary(self):
        return {
            "field": str(self.field),
            "dim_A": self.algebra.dim,
            "dim_C": self.coalgebra.dim,
            "hopf": self.hopf is not None,
        }

    def _cached(self, key, build):
        if key not in self._cache:
            self._cache[key] = build()
        return self._cache[key]

    def __repr__(self):
        return f"EntwiningStructure(dim_A={self.algebra.dim}, dim_C={self.coalgebra.dim})"


def psi_up(e: EntwiningStructure, n: int) -> LinearMap:
    """psi^n: C (x) A^n -> A^n (x) C; psi^1 = psi."""
    if n < 1:
        raise DegreeError("psi^n needs n >= 1")

    def build():
        if n == 1:
            return e.psi
        prev = psi_up(e, n - 1)
        ida_pow = identity_map(e.field, (e.algebra.dim,) * (n - 1))
        ida = e.algebra.identity()
        return compose(tensor(ida_pow, e.psi), tensor(prev, ida))

    return e._cached(("up", n), build)


def psi_down(e: EntwiningStructure, n: int) -> LinearMap:
    """psi_n: C^n (x) A -> A (x) C^n; psi_1 = psi."""
    if n < 1:
        raise DegreeError("psi_n needs n >= 1")

    def build():
        if n == 1:
            return e.psi
        prev = psi_down(e, n - 1)
        idc_pow = identity_map(e.field, (e.coalgebra.dim,) * (n - 1))
        idc = e.coalgebra.identity()
        return compose(tensor(e.psi, idc_pow), tensor(idc, prev))

    return e._cached(("down", n), build)


# -- induced structures -------------------------------------------------------


def rho_L_action(e: EntwiningStructure, n: int) -> LinearMap:
    """Left action of A on A (x) C^n: multiply into the first factor."""
    if n == 0:
        return e.algebra.mult
    idc_pow = identity_map(e.field, (e.coalgebra.dim,) * n)
    return tensor(e.algebra.mult, idc_pow)


def rho_R_action(e: EntwiningStructure, n: int) -> LinearMap:
    """Right action of A on A (x) C^n: pass a through C^n with psi_n, then multiply."""
    def build():
        if n == 0:
            return e.algebra.mult
        ida = e.algebra.identity()
        idc_pow = identity_map(e.field, (e.coalgebra.dim,) * n)
        return compose(tensor(e.algebra.mult, idc_pow), tensor(ida, psi_down(e, n)))

    return e._cached(("rhoRact", n), build)


def rho_L_coaction(e: EntwiningStructure, n: int) -> LinearMap:
    """Left coaction of C on C (x) A^n: comultiply the first factor."""
    if n == 0:
        return e.coalgebra.comult
    ida_pow = identity_map(e.field, (e.algebra.dim,) * n)
    return tensor(e.coalgebra.comult, ida_pow)


def rho_R_coaction(e: EntwiningStructure, n: int) -> LinearMap:
    """Right coaction of C on C (x) A^n: comultiply, then push one C right with psi^n."""
    def build():
        if n == 0:
            return e.coalgebra.comult
        ida_pow = identity_map(e.field, (e.algebra.dim,) * n)
        idc = e.coalgebra.identity()
        return compose(tensor(idc, psi_up(e, n)), tensor(e.coalgebra.comult, ida_pow))

    return e._cached(("rhoRcoact", n), build)


def bimodule_on_A_Cn(e: EntwiningStructure, n: int) -> Bimodule:
    if n < 1:
        raise DegreeError("bimodule tower needs n >= 1")
    dim = e.algebra.dim * e.coalgebra.dim**n
    labels = None
    m = Bimodule(dim, rho_L_action(e, n), rho_R_action(e, n), labels=labels)
    validate_bimodule(e.algebra, m).raise_if_failed()
    return m


def bicomodule_on_C_An(e: EntwiningStructure, n: int) -> Bicomodule:
    if n < 1:
        raise DegreeError("bicomodule tower needs n >= 1")
    dim = e.coalgebra.dim * e.algebra.dim**n
    v = Bicomodule(dim, rho_L_coaction(e, n), rho_R_coaction(e, n))
    validate_bicomodule(e.coalgebra, v).raise_if_failed()
    return v


def check_tower_compatibility(e: EntwiningStructure, n: int, j: int):
    """Do multiplication/comultiplication inside the towers commute with rho_R?

    Returns (first_square_ok, second_square_ok): the first square multiplies
    two adjacent A-factors inside C (x) A^{n+1}; the second comultiplies a
    C-factor inside A (x) C^n.
    """
    if n < 1:
        raise DegreeError("need n >= 1")
    if not 0 <= j <= n - 1:
        raise DegreeError(f"slot j={j} out of range for n={n}")
    da, dc = e.algebra.dim, e.coalgebra.dim
    field = e.field
    idc = e.coalgebra.identity()
    ida = e.algebra.identity()

    def ida_pow(k):
        return identity_map(field, (da,) * k)

    def idc_pow(k):
        return identity_map(field, (dc,) * k)

    mul_inside = tensor(tensor(tensor(idc, ida_pow(j)), e.algebra.mult), ida_pow(n - j - 1))
    lhs1 = compose(rho_R_coaction(e, n), mul_inside)
    rhs1 = compose(tensor(mul_inside, idc), rho_R_coaction(e, n + 1))
    first = lhs1 == rhs1

    com_inside = tensor(tensor(tensor(ida, idc_pow(j)), e.coalgebra.comult), idc_pow(n - j - 1))
    lhs2 = compose(rho_R_action(e, n + 1), tensor(com_inside, ida))
    rhs2 = compose(com_inside, rho_R_action(e, n))
    second = lhs2 == rhs2
    return first, second


# -- twisted convolution -------------------------------------------------------


def convolution_psi(e: EntwiningStructure, f: LinearMap, g: LinearMap) -> LinearMap:
    """(f *_psi g)(c) = f(c_(2))_alpha g(c_(1)^alpha)."""
    da, dc = e.algebra.dim, e.coalgebra.dim
    for h in (f, g):
        if h.domain_shape != (dc,) or h.codomain_shape != (da,):
            raise ShapeMismatchError("convolution operands must map C -> A")
    ida = e.algebra.identity()
    idc = e.coalgebra.identity()
    inner = compose(e.psi, tensor(idc, f))
    return compose(e.algebra.mult, compose(tensor(ida, g), compose(inner, e.coalgebra.comult)))


def convolution_unit(e: EntwiningStructure) -> LinearMap:
    """The unit 1 o eps of the twisted convolution algebra Hom(C, A)."""
    return compose(e.algebra.unit_map(), e.coalgebra.counit)
