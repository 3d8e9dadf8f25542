"""Twisted cochain complexes of an entwining structure and their cohomology.

The module-valued complex has degree-n space Hom(C (x) A^n, M) with

    d f = leftact o (A (x) f) o (psi (x) A^n)
        + sum_k (-1)^k  f o (C (x) A^{k-1} (x) mu (x) A^{n-k})
        + (-1)^{n+1} rightact o (f (x) A)

and the comodule-valued complex has degree-n space Hom(V, A (x) C^n) with the
dual differential.  Cochains are flattened row-major; differentials are sparse
operators on those coordinates.

Two independent reference builders (the Hochschild complex of an algebra and
the Cartier complex of a coalgebra) are coded directly from their classical
formulas and never share code with the twisted builders: they serve as oracles
for the degenerate cases C = k resp. A = k.
"""

from __future__ import annotations

from .entwining import EntwiningStructure
from .errors import (
    DegreeError,
    InternalConsistencyError,
    MissingTranslationMapError,
    ShapeMismatchError,
)
from .homspace import middle_operator, op_postcompose, op_precompose, unvec, vec
from .linalg import (
    Mat,
    kernel_basis,
    image_basis,
    kron,
    quotient_with_projection,
    solve,
    vstack,
)
from .structures import (
    Bicomodule,
    Bimodule,
    FiniteAlgebra,
    FiniteCoalgebra,
    LinearMap,
    compose,
    identity_map,
    tensor,
    validate_bimodule,
)


class CochainComplex:
    """Graded spaces with degree-raising differentials; d o d = 0 is verified."""

    def __init__(self, field, space_dims, differentials, degree_shapes=None, label=""):
        self.field = field
        self.space_dims = list(space_dims)
        self.differentials = list(differentials)
        self.degree_shapes = degree_shapes
        self.label = label
        self.max_degree = len(self.space_dims) - 1
        if len(self.differentials) != self.max_degree:
            raise ShapeMismatchError("need one differential per consecutive degree pair")
        for n, d in enumerate(self.differentials):
            if d.cols != self.space_dims[n] or d.rows != self.space_dims[n + 1]:
                raise ShapeMismatchError(f"differential {n} has wrong shape")
        for n in range(self.max_degree - 1):
            if not (self.differentials[n + 1] @ self.differentials[n]).is_zero():
                raise InternalConsistencyError(
                    f"{label or 'complex'}: d{n + 1} o d{n} != 0 (invalid inputs)"
                )

    def differential(self, n) -> Mat:
        if not 0 <= n < len(self.differentials):
            raise DegreeError(f"no differential at degree {n}")
        return self.differentials[n]

    def cochain(self, n, column: Mat) -> LinearMap:
        if self.degree_shapes is None:
            raise ShapeMismatchError("complex carries no shape metadata")
        dom, cod = self.degree_shapes[n]
        return unvec(column, dom, cod)


class CohomologyResult:
    """Cocycle/coboundary bases and class representatives at one degree."""

    def __init__(self, degree, cocycle_basis, coboundary_basis, class_reps, reduce):
        self.degree = degree
        self.cocycle_basis = cocycle_basis
        self.coboundary_basis = coboundary_basis
        self.class_reps = class_reps
        self.reduce = reduce
        self.betti = len(cocycle_basis) - len(coboundary_basis)

    def __repr__(self):
        return f"CohomologyResult(degree={self.degree}, betti={self.betti})"


def cohomology(cx: CochainComplex, n: int) -> CohomologyResult:
    """H^n = ker d^n / im d^{n-1}; d^{-1} is the zero map."""
    if not 0 <= n <= cx.max_degree - 1:
        raise DegreeError(f"cohomology needs d^{n}; complex stops at {cx.max_degree}")
    cocycles = kernel_basis(cx.differential(n))
    boundaries = [] if n == 0 else image_basis(cx.differential(n - 1))
    class_reps, reduce = quotient_with_projection(
        boundaries, cocycles, field=cx.field, length=cx.space_dims[n]
    )
    return CohomologyResult(n, cocycles, boundaries, class_reps, reduce)


# -- differential operators ----------------------------------------------------


def module_differential(e: EntwiningStructure, m: Bimodule, n: int) -> Mat:
    """Operator of d^n on Hom(C (x) A^n, M), flattened."""
    a, c = e.algebra, e.coalgebra
    da, dc, dm = a.dim, c.dim, m.dim
    dom = dc * da**n
    ida_n = identity_map(e.field, (da,) * n)
    psi_an = tensor(e.psi, ida_n)
    total = middle_operator(m.left.mat, da, dm, dom, 1, psi_an.mat)
    for k in range(1, n + 1):
        ins = tensor(
            tensor(identity_map(e.field, (dc,) + (da,) * (k - 1)), a.mult),
            identity_map(e.field, (da,) * (n - k)),
        )
        op = op_precompose(ins.mat, dm)
        total = total + op if k % 2 == 0 else total - op
    last = middle_operator(m.right.mat, 1, dm, dom, da, Mat.identity(e.field, dc * da ** (n + 1)))
    total = total + last if (n + 1) % 2 == 0 else total - last
    return total


def comodule_differential(e: EntwiningStructure, v: Bicomodule, n: int) -> Mat:
    """Operator of d^n on Hom(V, A (x) C^n), flattened."""
    a, c = e.algebra, e.coalgebra
    da, dc, dv = a.dim, c.dim, v.dim
    cod = da * dc**n
    idc_n = identity_map(e.field, (dc,) * n)
    psi_cn = tensor(e.psi, idc_n)
    term = middle_operator(psi_cn.mat, dc, cod, dv, 1, v.left.mat)
    total = term
    for k in range(1, n + 1):
        ins = tensor(
            tensor(identity_map(e.field, (da,) + (dc,) * (k - 1)), c.comult),
            identity_map(e.field, (dc,) * (n - k)),
        )
        op = op_postcompose(ins.mat, dv)
        total = total + op if k % 2 == 0 else total - op
    last = middle_operator(Mat.identity(e.field, cod * dc), 1, cod, dv, dc, v.right.mat)
    total = total + last if (n + 1) % 2 == 0 else total - last
    return total


def build_CpsiAM(e: EntwiningStructure, m: Bimodule, n_max: int = 3) -> CochainComplex:
    """The module-valued twisted complex, degrees 0..n_max."""
    a, c = e.algebra, e.coalgebra
    dims = [m.dim * c.dim * a.dim**n for n in range(n_max + 1)]
    diffs = [module_differential(e, m, n) for n in range(n_max)]
    shapes = [(((c.dim,) + (a.dim,) * n), (m.dim,)) for n in range(n_max + 1)]
    return CochainComplex(e.field, dims, diffs, degree_shapes=shapes, label="C_psi(A,M)")


def build_ApsiCV(e: EntwiningStructure, v: Bicomodule, n_max: int = 3) -> CochainComplex:
    """The comodule-valued twisted complex, degrees 0..n_max."""
    a, c = e.algebra, e.coalgebra
    dims = [v.dim * a.dim * c.dim**n for n in range(n_max + 1)]
    diffs = [comodule_differential(e, v, n) for n in range(n_max)]
    shapes = [((v.dim,), ((a.dim,) + (c.dim,) * n)) for n in range(n_max + 1)]
    return CochainComplex(e.field, dims, diffs, degree_shapes=shapes, label="A_psi(C,V)")


# -- independent classical oracles ----------------------------------------------


def hochschild_differential(a: FiniteAlgebra, m: Bimodule, n: int) -> Mat:
    """Classical Hochschild d^n on Hom(A^n, M), coded directly."""
    da, dm = a.dim, m.dim
    dom = da**n
    total = middle_operator(
        m.left.mat, da, dm, dom, 1, Mat.identity(a.field, da ** (n + 1))
    )
    for k in range(1, n + 1):
        ins = tensor(
            tensor(identity_map(a.field, (da,) * (k - 1)), a.mult),
            identity_map(a.field, (da,) * (n - k)),
        )
        op = op_precompose(ins.mat, dm)
        total = total + op if k % 2 == 0 else total - op
    last = middle_operator(m.right.mat, 1, dm, dom, da, Mat.identity(a.field, da ** (n + 1)))
    total = total + last if (n + 1) % 2 == 0 else total - last
    return total


def hochschild_complex(a: FiniteAlgebra, m: Bimodule, n_max: int = 3) -> CochainComplex:
    dims = [m.dim * a.dim**n for n in range(n_max + 1)]
    diffs = [hochschild_differential(a, m, n) for n in range(n_max)]
    shapes = [((a.dim,) * n, (m.dim,)) for n in range(n_max + 1)]
    return CochainComplex(a.field, dims, diffs, degree_shapes=shapes, label="Hochschild")


def cartier_differential(c: FiniteCoalgebra, v: Bicomodule, n: int) -> Mat:
    """Classical Cartier d^n on Hom(V, C^n), coded directly."""
    dc, dv = c.dim, v.dim
    cod = dc**n
    total = middle_operator(
        Mat.identity(c.field, dc ** (n + 1)), dc, cod, dv, 1, v.left.mat
    )
    for k in range(1, n + 1):
        ins = tensor(
            tensor(identity_map(c.field, (dc,) * (k - 1)), c.comult),
            identity_map(c.field, (dc,) * (n - k)),
        )
        op = op_postcompose(ins.mat, dv)
        total = total + op if k % 2 == 0 else total - op
    last = middle_operator(Mat.identity(c.field, dc ** (n + 1)), 1, cod, dv, dc, v.right.mat)
    total = total + last if (n + 1) % 2 == 0 else total - last
    return total


def cartier_complex(c: FiniteCoalgebra, v: Bicomodule, n_max: int = 3) -> CochainComplex:
    dims = [v.dim * c.dim**n for n in range(n_max + 1)]
    diffs = [cartier_differential(c, v, n) for n in range(n_max)]
    shapes = [((v.dim,), (c.dim,) * n) for n in range(n_max + 1)]
    return CochainComplex(c.field, dims, diffs, degree_shapes=shapes, label="Cartier")


# -- inclusions of the classical complexes ---------------------------------------


def hochschild_inclusion_operator(e: EntwiningStructure, m: Bimodule, n: int) -> Mat:
    """Flattened operator of j^n: f |-> eps (x) f."""
    ida_n = Mat.identity(e.field, e.algebra.dim**n)
    return op_precompose(kron(e.coalgebra.counit.mat, ida_n), m.dim)


def hochschild_inclusion(e: EntwiningStructure, m: Bimodule, f: LinearMap) -> LinearMap:
    """j(f) = eps (x) f in Hom(C (x) A^n, M)."""
    n = len(f.domain_shape)
    da = e.algebra.dim
    if f.domain_shape != (da,) * n or f.codomain_dim != m.dim:
        raise ShapeMismatchError("inclusion expects f: A^n -> M")
    ida_n = Mat.identity(e.field, da**n)
    mat = f.mat @ kron(e.coalgebra.counit.mat, ida_n)
    return LinearMap((e.coalgebra.dim,) + (da,) * n, f.codomain_shape, mat)


def cartier_inclusion_operator(e: EntwiningStructure, v: Bicomodule, n: int) -> Mat:
    """Flattened operator of jbar^n: f |-> 1 (x) f."""
    idc_n = Mat.identity(e.field, e.coalgebra.dim**n)
    return op_postcompose(kron(e.algebra.unit, idc_n), v.dim)


def cartier_inclusion(e: EntwiningStructure, v: Bicomodule, f: LinearMap) -> LinearMap:
    """jbar(f) = 1 (x) f in Hom(V, A (x) C^n)."""
    n = len(f.codomain_shape)
    dc = e.coalgebra.dim
    if f.codomain_shape != (dc,) * n or f.domain_dim != v.dim:
        raise ShapeMismatchError("inclusion expects f: V -> C^n")
    mat = kron(e.algebra.unit, Mat.identity(e.field, dc**n)) @ f.mat
    return LinearMap(f.domain_shape, (e.algebra.dim,) + (dc,) * n, mat)


# -- Hom(C, M) bimodule -----------------------------------------------------------


def hom_CM_bimodule(e: EntwiningStructure, m: Bimodule) -> Bimodule:
    """Hom(C, M) with (a.f)(c) = a_alpha . f(c^alpha) and (f.a)(c) = f(c).a."""
    a, c = e.algebra, e.coalgebra
    da, dc, dm = a.dim, c.dim, m.dim
    dim = dm * dc
    left_cols = []
    for r in range(da):
        emb = LinearMap((), (da,), Mat.from_triples(e.field, da, 1, [(r, 0, 1)]))
        route = compose(e.psi, tensor(c.identity(), emb))
        left_cols.append(middle_operator(m.left.mat, da, dm, dc, 1, route.mat))
    left_triples = []
    for r, block in enumerate(left_cols):
        for i, j, val in block.triples():
            left_triples.append((i, r * dim + j, val))
    left = LinearMap(
        (da, dim), (dim,), Mat.from_triples(e.field, dim, da * dim, left_triples)
    )
    right_triples = []
    for s in range(da):
        emb = LinearMap((), (da,), Mat.from_triples(e.field, da, 1, [(s, 0, 1)]))
        acts = compose(m.right, tensor(identity_map(e.field, (dm,)), emb))
        block = op_postcompose(acts.mat, dc)
        for i, j, val in block.triples():
            right_triples.append((i, j * da + s, val))
    right = LinearMap(
        (dim, da), (dim,), Mat.from_triples(e.field, dim, dim * da, right_triples)
    )
    hom = Bimodule(dim, left, right)
    validate_bimodule(a, hom).raise_if_failed()
    return hom


# -- projectivity witness ----------------------------------------------------------


def tensor_square_bimodule(a: FiniteAlgebra) -> Bimodule:
    """A (x) A with a.(x (x) y) = ax (x) y and (x (x) y).a = x (x) ya."""
    ida = a.identity()
    left = tensor(a.mult, ida)
    right = LinearMap(
        (a.dim * a.dim, a.dim), (a.dim * a.dim,), tensor(ida, a.mult).mat
    )
    left = LinearMap((a.dim, a.dim * a.dim), (a.dim * a.dim,), left.mat)
    return Bimodule(a.dim * a.dim, left, right)


def projectivity_witness(e: EntwiningStructure) -> LinearMap | None:
    """A 0-cocycle chi: C -> A (x) A with mu o chi = 1 o eps, if one exists."""
    a, c = e.algebra, e.coalgebra
    m = tensor_square_bimodule(a)
    d0 = module_differential(e, m, 0)
    mu_post = op_postcompose(a.mult.mat, c.dim)
    target = vec(compose(a.unit_map(), c.counit))
    system = vstack([d0, mu_post])
    rhs = vstack([Mat.zeros(e.field, d0.rows, 1), target])
    x = solve(system, rhs)
    if x is None:
        return None
    return unvec(x, (c.dim,), (a.dim, a.dim))


# -- Hopf contracting homotopy -------------------------------------------------------


def hopf_contracting_homotopy(e: EntwiningStructure, m: Bimodule, n: int) -> Mat:
    """Operator of h^n(f)(c, a^1..a^{n-1}) = tau'(c)_1 . f(tau-co-leg, ...).

    Only available for the canonical self-entwining of a Hopf algebra, whose
    translation map tau(c) = S(c_(1)) (x) c_(2) supplies the contraction; the
    caller checks h^{n+1} d^n + d^{n-1} h^n = id.
    """
    if e.hopf is None:
        raise MissingTranslationMapError("structure carries no Hopf/translation data")
    if n < 1:
        raise DegreeError("homotopy starts at degree 1")
    from .zoo import translation_map

    a, c = e.algebra, e.coalgebra
    da, dc, dm = a.dim, c.dim, m.dim
    tau = e._cached(("tau",), lambda: translation_map(e.hopf))
    ida_pow = identity_map(e.field, (da,) * (n - 1))
    step1 = tensor(tau, ida_pow)
    unit_coact = compose(c.comult, LinearMap((), (dc,), e.algebra.unit))
    step2 = tensor(
        tensor(identity_map(e.field, (da,)), LinearMap((), (da, dc), unit_coact.mat)),
        identity_map(e.field, (da,) * n),
    )
    step3 = tensor(a.mult, identity_map(e.field, (dc,) + (da,) * n))
    xi = compose(step3, compose(step2, step1))
    return middle_operator(m.left.mat, da, dm, dc * da**n, 1, xi.mat)


# -- degree-zero characterization -----------------------------------------------------


def h0_characterization(e: EntwiningStructure) -> list[LinearMap]:
    """Basis of {phi: C -> A with a_alpha phi(c^alpha) = phi(c) a for all a, c}.

    Built from psi and mu directly, independently of the complex machinery.
    """
    a, c = e.algebra, e.coalgebra
    da, dc = a.dim, c.dim
    lhs = middle_operator(a.mult.mat, da, da, dc, 1, e.psi.mat)
    rhs = middle_operator(a.mult.mat, 1, da, dc, da, Mat.identity(e.field, dc * da))
    basis = kernel_basis(lhs - rhs)
    return [unvec(v, (dc,), (da,)) for v in basis]


# -- resolution scaffolding (bar / cobar) ----------------------------------------------


def bar_delta(e: EntwiningStructure, n: int) -> LinearMap:
    """delta_n: A (x) C (x) A^{n+1} -> A (x) C (x) A^n."""
    if n < 1:
        raise DegreeError("bar differential starts at degree 1")
    a, c = e.algebra, e.coalgebra
    da, dc = a.dim, c.dim
    ida_n = identity_map(e.field, (da,) * n)
    first = compose(
        tensor(tensor(a.mult, c.identity()), ida_n),
        tensor(tensor(a.identity(), e.psi), ida_n),
    )
    total = first
    for k in range(1, n + 1):
        ins = tensor(
            tensor(
                tensor(identity_map(e.field, (da, dc)), identity_map(e.field, (da,) * (k - 1))),
                a.mult,
            ),
            identity_map(e.field, (da,) * (n - k)),
        )
        total = total + ins if k % 2 == 0 else total - ins
    return total


def bar_homotopy(e: EntwiningStructure, n: int) -> LinearMap:
    """h_n = (-1)^n ( - (x) 1): A (x) C (x) A^{n+1} -> A (x) C (x) A^{n+2}."""
    a, c = e.algebra, e.coalgebra
    space = identity_map(e.field, (a.dim, c.dim) + (a.dim,) * (n + 1))
    h = tensor(space, a.unit_map())
    return h if n % 2 == 0 else -h


def cob_delta(e: EntwiningStructure, n: int) -> LinearMap:
    """deltabar^n: C (x) A (x) C^{n+1} -> C (x) A (x) C^{n+2}."""
    if n < 0:
        raise DegreeError("cobar differential starts at degree 0")
    a, c = e.algebra, e.coalgebra
    idc_n1 = identity_map(e.field, (c.dim,) * (n + 1))
    first = compose(
        tensor(tensor(c.identity(), e.psi), idc_n1),
        tensor(tensor(c.comult, a.identity()), idc_n1),
    )
    total = first
    for k in range(1, n + 2):
        ins = tensor(
            tensor(
                tensor(identity_map(e.field, (c.dim, a.dim)), identity_map(e.field, (c.dim,) * (k - 1))),
                c.comult,
            ),
            identity_map(e.field, (c.dim,) * (n + 1 - k)),
        )
        total = total + ins if k % 2 == 0 else total - ins
    return total


def cob_homotopy(e: EntwiningStructure, n: int) -> LinearMap:
    """h^n = (-1)^{n+1} ( - (x) eps): C (x) A (x) C^{n+1} -> C (x) A (x) C^n."""
    a, c = e.algebra, e.coalgebra
    space = identity_map(e.field, (c.dim, a.dim) + (c.dim,) * n)
    h = tensor(space, c.counit)
    return -h if n % 2 == 0 else h
