"""Comp operations, cup products, weak-comp axioms, equivariant subcomplex."""

import random

import pytest

from entwine.compalg import (
    ALGEBRA,
    COALGEBRA,
    CompContext,
    _cond2_core,
    check_prelie_identities,
    coboundary,
    comp_i,
    cup,
    diamond,
    eps_tensor_id,
    equivariant_basis,
    equivariant_checks,
    graded_commutativity,
    lin_comb,
    sqcup,
    verify_weak_comp,
)
from entwine.entwining import convolution_psi
from entwine.errors import DegreeError
from entwine.homspace import vec
from entwine.linalg import QQ, Mat
from entwine.structures import LinearMap, compose, identity_map, tensor
from entwine.zoo import named_example


@pytest.fixture(scope="module")
def kz2_ctx():
    return CompContext(named_example("z2"), ALGEBRA)


@pytest.fixture(scope="module")
def kz2_dual():
    return CompContext(named_example("z2"), COALGEBRA)


@pytest.fixture(scope="module")
def triv_ctx():
    return CompContext(named_example("trivial-z2"), ALGEBRA)


def test_out_of_range_insertion_is_zero(kz2_ctx):
    f = kz2_ctx.basis(1)[0]
    g = kz2_ctx.basis(1)[1]
    assert comp_i(kz2_ctx, f, 1, g).is_zero
    assert comp_i(kz2_ctx, f, 5, g).is_zero


def test_insert_pi_is_multiplication_insertion(kz2_ctx):
    # f <>_i pi collapses to precomposition with the multiplication at slot i,
    # checked as one operator identity per (m, i) by linearity in f.
    e = kz2_ctx.e
    a, c = e.algebra, e.coalgebra
    for m in (1, 2):
        for i in range(m):
            for f in kz2_ctx.basis(m):
                ins = tensor(
                    tensor(
                        tensor(c.identity(), identity_map(QQ, (a.dim,) * i)), a.mult
                    ),
                    identity_map(QQ, (a.dim,) * (m - i - 1)),
                )
                direct = LinearMap(
                    ins.domain_shape, f.map_.codomain_shape, f.map_.mat @ ins.mat
                )
                assert comp_i(kz2_ctx, f, i, kz2_ctx.pi).map_ == direct


def test_insertion_hand_value(kz2_ctx):
    # two-step hand composition on kZ2 with grouplike Delta c = c (x) c:
    # taking f = g = mu (viewed in Hom(C (x) A, A)),
    #   (f o_0 g)(c, a) = f(c_(1), g(c_(2), a)) = c (c a) = c^2 a = eps(c) a
    mu = kz2_ctx.cochain(1, kz2_ctx.e.algebra.mult)
    out = comp_i(kz2_ctx, mu, 0, mu)
    assert out == eps_tensor_id(kz2_ctx)


def test_diamond_single_term_for_degree_one(kz2_ctx):
    f = kz2_ctx.basis(1)[2]
    g = kz2_ctx.basis(1)[3]
    assert diamond(kz2_ctx, f, g) == comp_i(kz2_ctx, f, 0, g)


def test_diamond_degree_bookkeeping(kz2_ctx):
    f = kz2_ctx.basis(2)[0]
    g = kz2_ctx.basis(1)[0]
    assert diamond(kz2_ctx, f, g).degree == 2


def test_pi_diamond_pi_vanishes(kz2_ctx, kz2_dual):
    assert diamond(kz2_ctx, kz2_ctx.pi, kz2_ctx.pi).is_zero
    assert diamond(kz2_dual, kz2_dual.pi, kz2_dual.pi).is_zero


def test_degree_zero_sqcup_is_twisted_convolution(kz2_ctx):
    for f in kz2_ctx.basis(0):
        for g in kz2_ctx.basis(0):
            conv = convolution_psi(kz2_ctx.e, f.map_, g.map_)
            assert sqcup(kz2_ctx, f, g).map_ == conv


def test_degree_zero_cup_is_convolution(kz2_ctx):
    e = kz2_ctx.e
    for f in kz2_ctx.basis(0):
        for g in kz2_ctx.basis(0):
            ordinary = compose(
                e.algebra.mult, compose(tensor(f.map_, g.map_), e.coalgebra.comult)
            )
            assert cup(kz2_ctx, f, g).map_ == ordinary


def test_cup_associativity_on_basis(kz2_ctx):
    rng = random.Random(1)
    cochains = kz2_ctx.basis(0) + kz2_ctx.basis(1)
    for _ in range(30):
        f, g, h = (cochains[rng.randrange(len(cochains))] for _ in range(3))
        lhs = cup(kz2_ctx, cup(kz2_ctx, f, g), h)
        rhs = cup(kz2_ctx, f, cup(kz2_ctx, g, h))
        assert lhs == rhs


def test_pi_is_coboundary_of_counit_tensor_identity(kz2_ctx, kz2_dual):
    assert coboundary(kz2_ctx, eps_tensor_id(kz2_ctx)) == kz2_ctx.pi
    assert coboundary(kz2_dual, eps_tensor_id(kz2_dual)) == kz2_dual.pi


def test_coboundary_squares_to_zero(kz2_ctx, kz2_dual):
    for ctx in (kz2_ctx, kz2_dual):
        for m in (0, 1, 2):
            for f in ctx.basis(m):
                assert coboundary(ctx, coboundary(ctx, f)).is_zero


def test_derivation_property_small(kz2_ctx):
    # d(f cup g) = df cup g + (-1)^m f cup dg for degrees m + n <= 2
    for m in (0, 1):
        for n in range(0, 2 - m + 1):
            for f in kz2_ctx.basis(m):
                for g in kz2_ctx.basis(n):
                    lhs = coboundary(kz2_ctx, cup(kz2_ctx, f, g))
                    sign = -1 if m % 2 else 1
                    rhs = lin_comb(
                        kz2_ctx,
                        m + n + 1,
                        [
                            (1, cup(kz2_ctx, coboundary(kz2_ctx, f), g)),
                            (sign, cup(kz2_ctx, f, coboundary(kz2_ctx, g))),
                        ],
                    )
                    assert lhs == rhs


def test_dual_side_cup_routes_agree(kz2_dual):
    # cup() raises on route mismatch, so evaluating is the assertion
    for m in (0, 1):
        for n in (0, 1):
            for f in kz2_dual.basis(m):
                for g in kz2_dual.basis(n):
                    cup(kz2_dual, f, g)
                    sqcup(kz2_dual, f, g)


def test_weak_comp_axioms_all_fixtures():
    for name in ("trivial-k", "trivial-z2", "z2", "z3", "sweedler"):
        e = named_example(name)
        assert verify_weak_comp(CompContext(e, ALGEBRA), 2).ok, name
        assert verify_weak_comp(CompContext(e, COALGEBRA), 2).ok, name


def test_weak_comp_over_prime_field():
    from entwine.linalg import FieldSpec
    from entwine.zoo import bialgebra_self_entwining, group_algebra_hopf

    e = bialgebra_self_entwining(group_algebra_hopf(2, FieldSpec.prime(7)))
    assert verify_weak_comp(CompContext(e, ALGEBRA), 2).ok
    assert verify_weak_comp(CompContext(e, COALGEBRA), 2).ok


def test_weak_comp_degree_cap():
    ctx = CompContext(named_example("trivial-k"), ALGEBRA)
    with pytest.raises(DegreeError):
        verify_weak_comp(ctx, 4)
    assert verify_weak_comp(ctx, 3).ok  # adds seeded degree-3 samples


def test_condition3_fails_for_non_pi(kz2_ctx):
    # the weak axioms only promise condition (3) for pi itself
    fake = kz2_ctx.basis(2)[6]
    report = verify_weak_comp(kz2_ctx, 2, pi=fake)
    assert not report.ok
    assert any("condition (3)" in name for name, _ in report.failures())


def test_core_identity_matches_brute_force(kz2_ctx, kz2_dual):
    rng = random.Random(0)
    for ctx in (kz2_ctx, kz2_dual):
        for _ in range(40):
            m = rng.randint(1, 2)
            n = rng.randint(0, 2)
            p = rng.randint(0, 2)
            f = ctx.basis(m)[rng.randrange(ctx.space_dim(m))]
            g = ctx.basis(n)[rng.randrange(ctx.space_dim(n))]
            h = ctx.basis(p)[rng.randrange(ctx.space_dim(p))]
            for i in range(m):
                for j in range(i, i + n):
                    lhs = comp_i(ctx, comp_i(ctx, f, i, g), j, h)
                    rhs = comp_i(ctx, f, i, comp_i(ctx, g, j - i, h))
                    assert (lhs == rhs) and _cond2_core(ctx, m, n, p, i, j)


def _brute_cond3(ctx, m, free, i, j, pi2, pi_first):
    for f in ctx.basis(m):
        for x in ctx.basis(free):
            if pi_first:
                lhs = comp_i(ctx, comp_i(ctx, f, i, pi2), j, x)
                rhs = comp_i(ctx, comp_i(ctx, f, j, x), i + x.degree - 1, pi2)
            else:
                lhs = comp_i(ctx, comp_i(ctx, f, i, x), j, pi2)
                rhs = comp_i(ctx, comp_i(ctx, f, j, pi2), i + 1, x)
            if lhs != rhs:
                return False
    return True


def test_condition3_operators_match_brute_force(kz2_ctx, kz2_dual):
    # the slot-free operator verdict must agree with a literal tuple scan,
    # both for pi (holds) and for arbitrary 2-cochains (generally fails)
    from entwine.compalg import _cond3_operators

    for ctx in (kz2_ctx, kz2_dual):
        for pi2 in (ctx.pi, ctx.basis(2)[6]):
            for free in (0, 1, 2):
                lhs, rhs = _cond3_operators(ctx, 2, free, 1, 0, pi2, pi_first=False)
                assert (lhs == rhs) == _brute_cond3(ctx, 2, free, 1, 0, pi2, False)
                lhs, rhs = _cond3_operators(ctx, 2, free, 1, 0, pi2, pi_first=True)
                assert (lhs == rhs) == _brute_cond3(ctx, 2, free, 1, 0, pi2, True)


def test_prelie_identities(kz2_ctx):
    f = kz2_ctx.basis(1)[3]
    g = kz2_ctx.basis(1)[5]
    h = kz2_ctx.basis(2)[7]
    assert check_prelie_identities(kz2_ctx, kz2_ctx.pi, f, g).ok
    assert check_prelie_identities(kz2_ctx, f, kz2_ctx.pi, g).ok
    assert check_prelie_identities(kz2_ctx, f, g, h).ok


def test_prelie_degenerate_degree_zero(kz2_ctx):
    f = kz2_ctx.basis(0)[0]
    g = kz2_ctx.basis(0)[1]
    assert check_prelie_identities(kz2_ctx, f, g, kz2_ctx.pi).ok


def test_theorem_sign_identity_random_pairs(kz2_ctx):
    rng = random.Random(2)
    pool = kz2_ctx.basis(0) + kz2_ctx.basis(1) + kz2_ctx.basis(2)
    for _ in range(25):
        f = pool[rng.randrange(len(pool))]
        g = pool[rng.randrange(len(pool))]
        if f.degree + g.degree > 3:
            continue
        assert check_prelie_identities(kz2_ctx, f, g, kz2_ctx.pi).ok


def test_graded_commutativity_degree_zero(kz2_ctx, triv_ctx):
    assert graded_commutativity(kz2_ctx, 0, 0).ok
    assert graded_commutativity(triv_ctx, 0, 0).ok


def test_graded_commutativity_empty_degrees(kz2_ctx):
    # the Hopf fixture has no positive-degree classes: vacuous but reported
    rep = graded_commutativity(kz2_ctx, 1, 1)
    assert rep.ok and any("no class pairs" in n for n, _, _ in rep.items)


def test_one_dim_everything_equivariant():
    ctx = CompContext(named_example("trivial-k"), ALGEBRA)
    for n in (0, 1, 2):
        assert len(equivariant_basis(ctx, n)) == ctx.space_dim(n)


def test_equivariant_dims_kz2(kz2_ctx):
    # solver-computed subspace dimensions, frozen
    assert [len(equivariant_basis(kz2_ctx, n)) for n in (0, 1, 2)] == [2, 4, 8]


def test_pi_is_equivariant(kz2_ctx):
    from entwine.compalg import equivariance_operator

    assert (equivariance_operator(kz2_ctx, 2) @ vec(kz2_ctx.pi.map_)).is_zero()


def test_equivariant_checks_kz2(kz2_ctx):
    report = equivariant_checks(kz2_ctx, 2)
    assert report.ok, str(report)
    names = [n for n, _, _ in report.items]
    assert any("translation-map criterion" in n for n in names)


def test_equivariant_checks_sweedler():
    ctx = CompContext(named_example("sweedler"), ALGEBRA)
    report = equivariant_checks(ctx, 2)
    assert report.ok, str(report)
