from fractions import Fraction as F

import pytest

from liouville.checks import random_diffeo, random_jet
from liouville.errors import (FamilyMismatch, NotLiouville, ResonantMultiplier,
                              ZeroGerm)
from liouville.germs import rk_action
from liouville.jets import DiffeoGerm, Jet
from liouville.plane import (EquilibriumType, FieldKind, LiouvilleDiffeo,
                             PlaneField, constant_family, equilibria,
                             field_from_germ, lie_residual, linearize_diffeo,
                             pushforward, q_family, real_roots_in,
                             singularity_tangent_space, t_family,
                             time_reversal_equivalent, transversality,
                             unfolding_q, unfolding_t)
from liouville.polys import SparsePoly

N = 12


def poly2(terms):
    return SparsePoly(2, terms)


def test_field_from_square_germ():
    fld = field_from_germ(Jet.monomial(2, 1, N))
    assert fld.xx == poly2({(1, 1): -2})
    assert fld.xy == poly2({(0, 2): 1})


def test_field_from_unit_germ():
    fld = field_from_germ(Jet.one(N))
    assert fld.xx.is_zero
    assert fld.xy == poly2({(0, 0): 1})


def test_field_from_linear_germ():
    fld = field_from_germ(Jet.monomial(1, F(3), N))
    assert fld.xx == poly2({(1, 0): -3})
    assert fld.xy == poly2({(0, 1): 3})


def test_lie_residual_zero_on_germ_fields(rng):
    for _ in range(25):
        f = random_jet(rng, N, vanishing=rng.randint(0, 4))
        res = lie_residual(field_from_germ(f))
        assert res[0].is_zero and res[1].is_zero


def test_lie_residual_radial_field():
    fld = PlaneField.general(poly2({(1, 0): 1}), poly2({(0, 1): 1}))
    res = lie_residual(fld)
    assert res[0].is_zero
    assert res[1] == poly2({(1, 0): 2})


def test_lie_residual_shear_field():
    fld = PlaneField.general(poly2({}), poly2({(1, 0): 1}))
    res = lie_residual(fld)
    assert res[0] == poly2({(1, 0): 1})
    assert res[1].is_zero


def test_pushforward_mobius():
    # transporting the unit-slope field along h = y/(y+1) lands on y + y^2
    h = DiffeoGerm(Jet.x(N) * Jet([1, 1], N).reciprocal())
    out = pushforward(LiouvilleDiffeo(h), field_from_germ(Jet.x(N)))
    assert out.germ == Jet([0, 1, 1], N - 1)


def test_pushforward_identity(rng):
    f = random_jet(rng, N, vanishing=1)
    fld = field_from_germ(f)
    out = pushforward(LiouvilleDiffeo(DiffeoGerm.identity(N)), fld)
    assert out.germ == f.truncate(N - 1)


def test_pushforward_scaling():
    h = DiffeoGerm(Jet.monomial(1, 2, N))
    out = pushforward(LiouvilleDiffeo(h), field_from_germ(Jet.monomial(2, 1, N)))
    assert out.germ == Jet.monomial(2, 2, N - 1)


def test_pushforward_requires_germ():
    fld = PlaneField.general(poly2({}), poly2({(1, 0): 1}))
    with pytest.raises(NotLiouville):
        pushforward(LiouvilleDiffeo(DiffeoGerm.identity(N)), fld)


def test_commuting_square(rng):
    for _ in range(20):
        f = random_jet(rng, N, vanishing=rng.randint(0, 3))
        h = random_diffeo(rng, N)
        assert pushforward(LiouvilleDiffeo(h), field_from_germ(f)) == \
            field_from_germ(rk_action(f, h))


def test_jacobian_transport_identity(rng):
    # the defining identity of the transport, checked symbolically on jets:
    # with H = h^(-1), g = (1/h')(f o h) satisfies g o H = H' f, and its
    # derivative consequence (g' o H) H' = f' H' + H'' f
    for _ in range(10):
        f = random_jet(rng, N, vanishing=rng.randint(0, 3))
        h = random_diffeo(rng, N)
        g = rk_action(f, h)
        inverse = h.inverse()
        lhs = g.compose(inverse.jet)
        rhs = inverse.derivative() * f
        assert lhs.agrees_through(rhs, min(lhs.order, rhs.order))
        lhs2 = g.derivative().compose(inverse.jet) * inverse.derivative()
        rhs2 = f.derivative() * inverse.derivative() \
            + inverse.jet.derivative().derivative() * f
        assert lhs2.agrees_through(rhs2, min(lhs2.order, rhs2.order))


def test_pullback_form_factor(rng):
    for _ in range(15):
        psi = LiouvilleDiffeo(random_diffeo(rng, N))
        factor = psi.pullback_form_factor()
        assert factor == Jet.one(factor.order)


# -- equilibria ---------------------------------------------------------------

def test_equilibria_q1():
    eqs = equilibria(unfolding_q(1), (-3.0, 3.0))
    assert [(e.y, e.type) for e in eqs] == [
        (F(-1), EquilibriumType.SADDLE), (F(0), EquilibriumType.SADDLE)]
    by_y = {e.y: e.eigenvalues for e in eqs}
    assert by_y[F(0)] == (-1, 1)
    assert by_y[F(-1)] == (1, -1)


def test_equilibria_degenerate_line():
    eqs = equilibria(unfolding_q(0), (-3.0, 3.0))
    assert [(e.y, e.type) for e in eqs] == [(F(0), EquilibriumType.DEGENERATE_LINE)]


def test_equilibria_unit_field_empty():
    assert equilibria(field_from_germ(Jet.one(N)), (-3.0, 3.0)) == []


def test_equilibria_irrational_saddles():
    f = Jet.monomial(2, 1, N) - Jet([2], N)  # y^2 - 2
    eqs = equilibria(field_from_germ(f), (-3.0, 3.0))
    assert len(eqs) == 2
    assert all(e.type is EquilibriumType.SADDLE for e in eqs)
    assert abs(float(eqs[0].y) + 2**0.5) < 1e-9
    assert abs(float(eqs[1].y) - 2**0.5) < 1e-9


def test_equilibria_irrational_degenerate():
    # (y^2-2)^2 has double roots at +-sqrt(2)
    base = Jet.monomial(2, 1, N) - Jet([2], N)
    eqs = equilibria(field_from_germ(base * base), (-3.0, 3.0))
    assert [e.type for e in eqs] == [EquilibriumType.DEGENERATE_LINE] * 2


def test_equilibria_interval_filter():
    eqs = equilibria(unfolding_q(-2), (-1.0, 1.0))  # roots 0 and 2
    assert [e.y for e in eqs] == [F(0)]


def test_equilibria_eigenvalue_skew(rng):
    for _ in range(10):
        f = random_jet(rng, N, vanishing=rng.randint(1, 3))
        for eq in equilibria(field_from_germ(f), (-5.0, 5.0)):
            if eq.eigenvalues is not None:
                assert eq.eigenvalues[0] == -eq.eigenvalues[1]


def test_real_roots_rational_recovery():
    # 6y^3 - y^2 - 2y = y(2y+1)(3y-2)... roots 0, -1/2, 2/3
    coeffs = [F(0), F(-2), F(-1), F(6)]
    roots = real_roots_in(coeffs, -2.0, 2.0)
    assert roots == [F(-1, 2), F(0), F(2, 3)]


# -- singularity classes, unfoldings, transversality -------------------------

def test_singularity_tangent_square():
    space = singularity_tangent_space(Jet.monomial(2, 1, N), 8)
    for t in range(2, 9):
        e = [F(0)] * 9
        e[t] = F(1)
        assert space.contains(e)
    e = [F(0)] * 9
    e[1] = F(1)
    assert not space.contains(e)


def test_singularity_tangent_linear_full():
    space = singularity_tangent_space(Jet.x(N), 8)
    assert space.rank == 8


def test_unfolding_q_zero_is_square_model():
    assert unfolding_q(0).germ == Jet.monomial(2, 1, N)
    assert unfolding_t(0, 0).germ == Jet.monomial(3, 1, N)


def test_unfolding_q_components():
    fld = unfolding_q(1)
    assert fld.xx == poly2({(1, 0): -1, (1, 1): -2})
    assert fld.xy == poly2({(0, 1): 1, (0, 2): 1})


def test_unfolding_t_components():
    fld = unfolding_t(F(1, 2), 3)
    assert fld.xx == poly2({(1, 0): F(-1, 2), (1, 1): -6, (1, 2): -3})
    assert fld.xy == poly2({(0, 1): F(1, 2), (0, 2): 3, (0, 3): 1})


def test_transversality_q():
    ok, rank = transversality(q_family(N), Jet.monomial(2, 1, N))
    assert ok and rank == 1


def test_transversality_t():
    ok, rank = transversality(t_family(N), Jet.monomial(3, 1, N))
    assert ok and rank == 2


def test_transversality_constant_family():
    model = Jet.monomial(2, 1, N)
    ok, rank = transversality(constant_family(model), model)
    assert not ok and rank == 0


def test_transversality_family_mismatch():
    with pytest.raises(FamilyMismatch):
        transversality(q_family(N), Jet.monomial(3, 1, N))


def test_q_partial_is_linear_germ():
    from liouville.plane import family_partials
    partials = family_partials(q_family(N))
    assert partials == [Jet.x(N)]


# -- diffeomorphism linearization ---------------------------------------------

def test_linearize_diffeo_already_linear():
    psi, res = linearize_diffeo(DiffeoGerm(Jet.monomial(1, F(1, 2), 10)))
    assert psi.jet == Jet.x(10)
    assert res.is_zero


def test_linearize_diffeo_quadratic_tail():
    h = DiffeoGerm(Jet([0, F(1, 2), 1], 10))
    psi, res = linearize_diffeo(h)
    assert res.is_zero
    conj = psi.jet.compose(h.jet).compose(psi.inverse().jet)
    assert conj == Jet.monomial(1, F(1, 2), 10)


def test_linearize_diffeo_resonant():
    with pytest.raises(ResonantMultiplier):
        linearize_diffeo(DiffeoGerm(Jet([0, -1, 1], 10)))
    with pytest.raises(ResonantMultiplier):
        linearize_diffeo(DiffeoGerm(Jet([0, 1, 1], 10)))


def test_linearize_diffeo_random(rng):
    for multiplier in (F(1, 2), F(1, 3), F(-2)):
        for _ in range(5):
            coeffs = [F(0), multiplier] + [
                F(rng.randint(-2, 2), rng.choice([1, 2])) for _ in range(9)]
            psi, res = linearize_diffeo(DiffeoGerm(Jet(coeffs, 10)))
            assert res.is_zero


# -- time reversal -------------------------------------------------------------

def test_time_reversal_cubic_signs():
    plus = field_from_germ(Jet.monomial(3, 1, N))
    minus = field_from_germ(Jet.monomial(3, -1, N))
    assert time_reversal_equivalent(plus, minus)
    assert not time_reversal_equivalent(plus, plus)


def test_time_reversal_linear():
    a = field_from_germ(Jet.monomial(1, 2, N))
    b = field_from_germ(Jet.monomial(1, -2, N))
    assert time_reversal_equivalent(a, b)
    assert not time_reversal_equivalent(a, a)


def test_time_reversal_checks_modulus():
    f = field_from_germ(Jet([0, 0, 1, 1], N))
    assert time_reversal_equivalent(f, -f)
    # same order and sign data but a different degree-3 modulus
    g = field_from_germ(Jet([0, 0, -1, 1], N))
    assert not time_reversal_equivalent(f, g)


def test_zero_germ_rejected():
    with pytest.raises(ZeroGerm):
        equilibria(field_from_germ(Jet.zero(N)), (-1.0, 1.0))
