"""Worked examples and (de)serialization of entwining structures.

The file format is a single JSON document:

    {
      "format": "entwine-structure/1",
      "field": "Q" | "Fp:<p>",
      "algebra":   {"dim", "labels", "mult":   [[i, j, k, "a/b"], ...], "unit": ["a/b", ...]},
      "coalgebra": {"dim", "labels", "comult": [[i, j, k, "a/b"], ...], "counit": ["a/b", ...]},
      "psi": [[row, col, "a/b"], ...],
      "hopf": {"antipode": [[i, j, "a/b"], ...]}        # optional
    }

mult triples read e_i . e_j += c e_k; comult triples read
Delta(e_i) += c e_j (x) e_k; psi rows index A (x) C and columns C (x) A in the
leftmost-most-significant flattening.  Coefficients are decimal integer
fractions.  Loading validates everything: field spec, index ranges, algebra
and coalgebra axioms, the bow-tie relations (failures are reported by relation
name), and the antipode axioms when a hopf section is present.
"""

from __future__ import annotations

import json
import warnings

from .entwining import EntwiningStructure, check_bowtie
from .errors import (
    BowTieError,
    PreconditionError,
    ShapeMismatchError,
    StructureParseError,
)
from .linalg import FieldSpec, Mat, format_coeff, parse_coeff
from .structures import (
    FiniteAlgebra,
    FiniteCoalgebra,
    LinearMap,
    ValidationReport,
    compose,
    flip_map,
    tensor,
    validate_algebra,
    validate_coalgebra,
)

FORMAT_TAG = "entwine-structure/1"


class Bialgebra:
    """An algebra and coalgebra on one space with compatible structures."""

    def __init__(self, algebra: FiniteAlgebra, coalgebra: FiniteCoalgebra, _validate=True):
        if algebra.dim != coalgebra.dim:
            raise ShapeMismatchError("bialgebra needs one underlying space")
        self.algebra = algebra
        self.coalgebra = coalgebra
        if _validate:
            validate_algebra(algebra).raise_if_failed()
            validate_coalgebra(coalgebra).raise_if_failed()
            validate_bialgebra(self).raise_if_failed()

    @property
    def dim(self):
        return self.algebra.dim

    @property
    def field(self):
        return self.algebra.field

    @property
    def basis_labels(self):
        return self.algebra.basis_labels


class HopfAlgebra(Bialgebra):
    """Bialgebra with an antipode."""

    def __init__(self, algebra, coalgebra, antipode: LinearMap, _validate=True):
        super().__init__(algebra, coalgebra, _validate=_validate)
        self.antipode = antipode
        if _validate:
            validate_antipode(self).raise_if_failed()


def validate_bialgebra(b: Bialgebra) -> ValidationReport:
    """Delta and eps must be algebra maps and 1 grouplike."""
    a, c = b.algebra, b.coalgebra
    ida = a.identity()
    report = ValidationReport("bialgebra")
    d = a.dim
    flip = flip_map(a.field, d, d)
    lhs = compose(c.comult, a.mult)
    rhs = compose(
        tensor(a.mult, a.mult),
        compose(tensor(tensor(ida, flip), ida), tensor(c.comult, c.comult)),
    )
    if lhs != rhs:
        report.add_failure("comultiplication is an algebra map")
    if compose(c.comult, a.unit_map()) != tensor(a.unit_map(), a.unit_map()):
        report.add_failure("grouplike unit")
    if compose(c.counit, a.mult) != tensor(c.counit, c.counit):
        report.add_failure("counit is an algebra map")
    if compose(c.counit, a.unit_map()).mat.entry(0, 0) != 1:
        report.add_failure("counit of unit")
    return report


def validate_antipode(h: HopfAlgebra) -> ValidationReport:
    a, c, s = h.algebra, h.coalgebra, h.antipode
    ida = a.identity()
    report = ValidationReport("antipode")
    target = compose(a.unit_map(), c.counit)
    if compose(a.mult, compose(tensor(s, ida), c.comult)) != target:
        report.add_failure("left antipode axiom")
    if compose(a.mult, compose(tensor(ida, s), c.comult)) != target:
        report.add_failure("right antipode axiom")
    return report


# -- constructors ---------------------------------------------------------------


def trivial_entwining(a: FiniteAlgebra, c: FiniteCoalgebra) -> EntwiningStructure:
    """psi = flip of tensor factors."""
    return EntwiningStructure(a, c, flip_map(a.field, c.dim, a.dim))


def bialgebra_self_entwining(h: Bialgebra) -> EntwiningStructure:
    """psi(c (x) a) = a_(1) (x) c a_(2); entwines the bialgebra with itself."""
    a, c = h.algebra, h.coalgebra
    d = a.dim
    flip = flip_map(a.field, d, d)
    psi = compose(
        tensor(a.identity(), a.mult),
        compose(tensor(flip, a.identity()), tensor(c.identity(), c.comult)),
    )
    psi = LinearMap((d, d), (d, d), psi.mat)
    return EntwiningStructure(a, c, psi, hopf=h if isinstance(h, HopfAlgebra) else None)


def comodule_algebra_entwining(
    c_bialg: Bialgebra, a: FiniteAlgebra, coaction: LinearMap
) -> EntwiningStructure:
    """psi(c (x) a) = a_(0) (x) c a_(1) for a comodule algebra (A, coaction)."""
    c = c_bialg.coalgebra
    if coaction.domain_shape != (a.dim,) or coaction.codomain_shape != (a.dim, c.dim):
        raise ShapeMismatchError("coaction must map A -> A(x)C")
    report = validate_comodule_algebra(c_bialg, a, coaction)
    report.raise_if_failed()
    flip = flip_map(a.field, c.dim, a.dim)
    psi = compose(
        tensor(a.identity(), c_bialg.algebra.mult),
        compose(tensor(flip, c.identity()), tensor(c.identity(), coaction)),
    )
    psi = LinearMap((c.dim, a.dim), (a.dim, c.dim), psi.mat)
    return EntwiningStructure(a, c, psi)


def validate_comodule_algebra(c_bialg: Bialgebra, a: FiniteAlgebra, coaction) -> ValidationReport:
    c = c_bialg.coalgebra
    ida, idc = a.identity(), c.identity()
    report = ValidationReport("comodule algebra")
    if compose(tensor(coaction, idc), coaction) != compose(tensor(ida, c.comult), coaction):
        report.add_failure("coaction coassociativity")
    if compose(tensor(ida, c.counit), coaction) != ida:
        report.add_failure("coaction counit")
    flip = flip_map(a.field, c.dim, a.dim)
    lhs = compose(coaction, a.mult)
    rhs = compose(
        tensor(a.mult, c_bialg.algebra.mult),
        compose(tensor(tensor(ida, flip), idc), tensor(coaction, coaction)),
    )
    if lhs != rhs:
        report.add_failure("coaction is an algebra map")
    if compose(coaction, a.unit_map()) != tensor(a.unit_map(), c_bialg.algebra.unit_map()):
        report.add_failure("coaction of unit")
    return report


def group_algebra_hopf(n: int, field: FieldSpec = FieldSpec.rationals()) -> HopfAlgebra:
    """Group algebra of Z/n with grouplike basis g^0, ..., g^{n-1}."""
    if n < 1:
        raise PreconditionError("group order must be >= 1")
    if field.characteristic and n % field.characteristic == 0:
        warnings.warn(f"char {field.characteristic} divides group order {n}; not semisimple")
    labels = ["1"] if n == 1 else ["1", "g"] + [f"g{k}" for k in range(2, n)]
    mult = [(i, j, (i + j) % n, 1) for i in range(n) for j in range(n)]
    unit = [1] + [0] * (n - 1)
    algebra = FiniteAlgebra.from_structure_constants(field, labels, mult, unit)
    comult = [(i, i, i, 1) for i in range(n)]
    counit = [1] * n
    coalgebra = FiniteCoalgebra.from_structure_constants(field, labels, comult, counit)
    antipode = LinearMap(
        (n,), (n,), Mat.from_triples(field, n, n, [((-i) % n, i, 1) for i in range(n)])
    )
    return HopfAlgebra(algebra, coalgebra, antipode)


def sweedler_h4(field: FieldSpec = FieldSpec.rationals()) -> HopfAlgebra:
    """Sweedler's four-dimensional Hopf algebra on basis 1, g, x, gx.

    Conventions: g^2 = 1, x^2 = 0, xg = -gx, Delta(x) = x (x) 1 + g (x) x,
    S(x) = -gx.  Needs characteristic != 2.
    """
    if field.characteristic == 2:
        raise PreconditionError("Sweedler H4 requires characteristic != 2")
    labels = ["1", "g", "x", "gx"]
    mult = [
        (0, 0, 0, 1), (0, 1, 1, 1), (0, 2, 2, 1), (0, 3, 3, 1),
        (1, 0, 1, 1), (2, 0, 2, 1), (3, 0, 3, 1),
        (1, 1, 0, 1),            # g.g = 1
        (1, 2, 3, 1),            # g.x = gx
        (1, 3, 2, 1),            # g.gx = x
        (2, 1, 3, -1),           # x.g = -gx
        (3, 1, 2, -1),           # gx.g = -x
    ]
    unit = [1, 0, 0, 0]
    algebra = FiniteAlgebra.from_structure_constants(field, labels, mult, unit)
    comult = [
        (0, 0, 0, 1),
        (1, 1, 1, 1),
        (2, 2, 0, 1), (2, 1, 2, 1),        # Delta x = x(x)1 + g(x)x
        (3, 3, 1, 1), (3, 0, 3, 1),        # Delta gx = gx(x)g + 1(x)gx
    ]
    counit = [1, 1, 0, 0]
    coalgebra = FiniteCoalgebra.from_structure_constants(field, labels, comult, counit)
    antipode = LinearMap(
        (4,),
        (4,),
        Mat.from_triples(field, 4, 4, [(0, 0, 1), (1, 1, 1), (3, 2, -1), (2, 3, 1)]),
    )
    return HopfAlgebra(algebra, coalgebra, antipode)


def z2_graded_algebra_entwining(field: FieldSpec = FieldSpec.rationals()) -> EntwiningStructure:
    """k[x]/(x^2) graded by Z/2 (deg x = 1), entwined with k[Z/2]."""
    h = group_algebra_hopf(2, field)
    a = FiniteAlgebra.from_structure_constants(
        field, ["1", "x"], [(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1)], [1, 0]
    )
    # coaction 1 -> 1 (x) 1, x -> x (x) g
    coaction = LinearMap(
        (2,), (2, 2), Mat.from_triples(field, 4, 2, [(0, 0, 1), (3, 1, 1)])
    )
    return comodule_algebra_entwining(h, a, coaction)


def translation_map(h: HopfAlgebra) -> LinearMap:
    """tau(c) = S(c_(1)) (x) c_(2), with both splitting identities verified."""
    a, c = h.algebra, h.coalgebra
    ida, idc = a.identity(), c.identity()
    tau = compose(tensor(h.antipode, idc), c.comult)
    tau = LinearMap((c.dim,), (a.dim, a.dim), tau.mat)
    # c^(1) c^(2)_(0) (x) c^(2)_(1) = 1 (x) c  (coaction of the canonical cover)
    lhs1 = compose(tensor(a.mult, idc), tensor(ida, c.comult))
    lhs1 = compose(lhs1, tau)
    if lhs1 != tensor(a.unit_map(), idc):
        raise PreconditionError("translation map identity (cover splitting) fails")
    # a_(0) a_(1)^(1) (x) a_(1)^(2) = 1 (x) a
    lhs2 = compose(tensor(a.mult, ida), compose(tensor(ida, tau), c.comult))
    if lhs2 != tensor(a.unit_map(), ida):
        raise PreconditionError("translation map identity (counit splitting) fails")
    return tau


def corrupted_psi_entwining(field: FieldSpec = FieldSpec.rationals()) -> EntwiningStructure:
    """Flip entwining of (kZ2, kZ2) with one sign flipped: breaks the bow-tie."""
    h = group_algebra_hopf(2, field)
    psi = flip_map(field, 2, 2)
    bad = psi.mat - Mat.from_triples(field, 4, 4, [(1, 2, 2)])  # psi(g (x) 1) = -1 (x) g
    return EntwiningStructure.unchecked(h.algebra, h.coalgebra, LinearMap((2, 2), (2, 2), bad))


# -- serialization ----------------------------------------------------------------


def _structure_dict(e: EntwiningStructure) -> dict:
    a, c = e.algebra, e.coalgebra
    doc = {
        "format": FORMAT_TAG,
        "field": str(e.field),
        "algebra": {
            "dim": a.dim,
            "labels": list(a.basis_labels),
            "mult": sorted(
                [[i, j, k, format_coeff(v)] for (i, j, k, v) in a.mult_triples()],
                key=lambda t: t[:3],
            ),
            "unit": [format_coeff(a.unit.entry(i, 0)) for i in range(a.dim)],
        },
        "coalgebra": {
            "dim": c.dim,
            "labels": list(c.basis_labels),
            "comult": sorted(
                [[i, j, k, format_coeff(v)] for (i, j, k, v) in c.comult_triples()],
                key=lambda t: t[:3],
            ),
            "counit": [format_coeff(v) for v in c.counit_values()],
        },
        "psi": [[i, j, format_coeff(v)] for (i, j, v) in e.psi.mat.triples()],
    }
    if e.hopf is not None:
        doc["hopf"] = {
            "antipode": [[i, j, format_coeff(v)] for (i, j, v) in e.hopf.antipode.mat.triples()]
        }
    return doc


def save(e: EntwiningStructure, path) -> None:
    with open(path, "w") as fh:
        json.dump(_structure_dict(e), fh, indent=1)
        fh.write("\n")


def _require(doc, key, context):
    if key not in doc:
        raise StructureParseError(f"missing field {key!r} in {context}")
    return doc[key]


def load(path, validate: bool = True) -> EntwiningStructure:
    """Load and fully validate a structure file.

    Parse problems raise StructureParseError; axiom failures raise
    ValidationError; bow-tie failures raise BowTieError naming the relation.
    With validate=False the structure is returned unchecked (diagnostics).
    """
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise StructureParseError(f"{path}: invalid JSON at line {exc.lineno}") from None
    if doc.get("format") != FORMAT_TAG:
        raise StructureParseError(f"{path}: unknown format {doc.get('format')!r}")
    field = FieldSpec.parse(_require(doc, "field", "document"))

    adoc = _require(doc, "algebra", "document")
    labels = _require(adoc, "labels", "algebra")
    if len(labels) != _require(adoc, "dim", "algebra"):
        raise StructureParseError("algebra dim does not match labels")
    try:
        mult = [(i, j, k, parse_coeff(cf)) for i, j, k, cf in _require(adoc, "mult", "algebra")]
        unit = [parse_coeff(v) for v in _require(adoc, "unit", "algebra")]
        algebra = FiniteAlgebra.from_structure_constants(field, labels, mult, unit)
    except (ValueError, TypeError):
        raise StructureParseError("malformed algebra section") from None

    cdoc = _require(doc, "coalgebra", "document")
    clabels = _require(cdoc, "labels", "coalgebra")
    if len(clabels) != _require(cdoc, "dim", "coalgebra"):
        raise StructureParseError("coalgebra dim does not match labels")
    try:
        comult = [(i, j, k, parse_coeff(cf)) for i, j, k, cf in _require(cdoc, "comult", "coalgebra")]
        counit = [parse_coeff(v) for v in _require(cdoc, "counit", "coalgebra")]
        coalgebra = FiniteCoalgebra.from_structure_constants(field, clabels, comult, counit)
    except (ValueError, TypeError):
        raise StructureParseError("malformed coalgebra section") from None

    da, dc = algebra.dim, coalgebra.dim
    try:
        psi_mat = Mat.from_triples(
            field, da * dc, dc * da, [(i, j, parse_coeff(cf)) for i, j, cf in _require(doc, "psi", "document")]
        )
    except (ValueError, TypeError):
        raise StructureParseError("malformed psi section") from None
    psi = LinearMap((dc, da), (da, dc), psi_mat)

    hopf = None
    if "hopf" in doc:
        try:
            s_mat = Mat.from_triples(
                field, da, da, [(i, j, parse_coeff(cf)) for i, j, cf in doc["hopf"]["antipode"]]
            )
        except (KeyError, ValueError, TypeError):
            raise StructureParseError("malformed hopf section") from None
        antipode = LinearMap((da,), (da,), s_mat)
        hopf = HopfAlgebra(algebra, coalgebra, antipode, _validate=validate)

    if not validate:
        return EntwiningStructure.unchecked(algebra, coalgebra, psi, hopf=hopf)

    validate_algebra(algebra).raise_if_failed()
    validate_coalgebra(coalgebra).raise_if_failed()
    report = check_bowtie(algebra, coalgebra, psi)
    if not report.ok:
        raise BowTieError(str(report), report=report)
    return EntwiningStructure(algebra, coalgebra, psi, hopf=hopf)


COEFF_FORMAT_TAG = "entwine-coefficients/1"


def load_coefficients(path, e: EntwiningStructure, side: str):
    """Load a bimodule (side 'A') or bicomodule (side 'C') from a JSON file.

    Schema: {"format": "entwine-coefficients/1", "dim": d,
             "left": [[row, col, "a/b"], ...], "right": [[row, col, "a/b"], ...]}
    with left/right the matrices of the (co)action maps; loading validates the
    (co)module axioms against the structure's algebra resp. coalgebra.
    """
    from .structures import (
        Bicomodule,
        Bimodule,
        validate_bicomodule,
        validate_bimodule,
    )

    try:
        with open(path) as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise StructureParseError(f"{path}: invalid JSON at line {exc.lineno}") from None
    if doc.get("format") != COEFF_FORMAT_TAG:
        raise StructureParseError(f"{path}: unknown format {doc.get('format')!r}")
    dim = _require(doc, "dim", "coefficients")
    field = e.field
    da, dc = e.algebra.dim, e.coalgebra.dim

    def matrix(key, rows, cols):
        triples = [(i, j, parse_coeff(cf)) for i, j, cf in _require(doc, key, "coefficients")]
        return Mat.from_triples(field, rows, cols, triples)

    if side == "A":
        left = LinearMap((da, dim), (dim,), matrix("left", dim, da * dim))
        right = LinearMap((dim, da), (dim,), matrix("right", dim, dim * da))
        m = Bimodule(dim, left, right)
        validate_bimodule(e.algebra, m).raise_if_failed()
        return m
    left = LinearMap((dim,), (dc, dim), matrix("left", dc * dim, dim))
    right = LinearMap((dim,), (dim, dc), matrix("right", dim * dc, dim))
    v = Bicomodule(dim, left, right)
    validate_bicomodule(e.coalgebra, v).raise_if_failed()
    return v


def save_coefficients(m, path, side: str):
    """Serialize a Bimodule or Bicomodule to the coefficients file schema."""
    doc = {
        "format": COEFF_FORMAT_TAG,
        "dim": m.dim,
        "left": [[i, j, format_coeff(v)] for (i, j, v) in m.left.mat.triples()],
        "right": [[i, j, format_coeff(v)] for (i, j, v) in m.right.mat.triples()],
    }
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=1)
        fh.write("\n")


# -- named fixtures ----------------------------------------------------------------


def field_algebra(field=FieldSpec.rationals()) -> FiniteAlgebra:
    return FiniteAlgebra.from_structure_constants(field, ["1"], [(0, 0, 0, 1)], [1])


def field_coalgebra(field=FieldSpec.rationals()) -> FiniteCoalgebra:
    return FiniteCoalgebra.from_structure_constants(field, ["1"], [(0, 0, 0, 1)], [1])


def named_example(name: str, field=FieldSpec.rationals()) -> EntwiningStructure:
    """Fixture constructors addressed by name (also used by the CLI)."""
    if name == "trivial-k":
        return trivial_entwining(field_algebra(field), field_coalgebra(field))
    if name == "trivial-z2":
        h = group_algebra_hopf(2, field)
        return trivial_entwining(h.algebra, h.coalgebra)
    if name == "z2":
        return bialgebra_self_entwining(group_algebra_hopf(2, field))
    if name == "z3":
        return bialgebra_self_entwining(group_algebra_hopf(3, field))
    if name == "sweedler":
        return bialgebra_self_entwining(sweedler_h4(field))
    if name == "graded-z2":
        return z2_graded_algebra_entwining(field)
    if name == "corrupted-psi":
        return corrupted_psi_entwining(field)
    raise PreconditionError(f"unknown example {name!r}")


EXAMPLE_NAMES = ("trivial-k", "trivial-z2", "z2", "z3", "sweedler", "graded-z2", "corrupted-psi")
