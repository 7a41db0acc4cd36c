from fractions import Fraction as F

import pytest

from liouville.checks import random_fraction, random_hamiltonian, random_jet
from liouville.contact import (Field3, ad_matrix, decompose_liouville,
                               eigenvalue_of, field_from_hamiltonian, flow_germ,
                               germ_route_linearization, homogeneous_basis,
                               induced_plane_diffeo, lie_bracket, lie_residual3,
                               lift_plane_field, linear_field, linearize_field,
                               liouville_homogeneous, project_to_plane,
                               reeb_field)
from liouville.errors import (ComponentsDependOnZ, HamiltonianDependsOnZ,
                              NotInSpan, NotLiouville, ZeroLinearPart)
from liouville.jets import Jet
from liouville.plane import FieldKind, field_from_germ
from liouville.polys import SparsePoly

N = 12


def poly3(terms):
    return SparsePoly(3, terms)


def test_hamiltonian_xy():
    fld = field_from_hamiltonian(poly3({(1, 1, 0): 1}))
    assert fld.xx == poly3({(1, 0, 0): -1})
    assert fld.xy == poly3({(0, 1, 0): 1})
    assert fld.xz.is_zero


def test_hamiltonian_x():
    fld = field_from_hamiltonian(poly3({(1, 0, 0): 1}))
    assert (fld.xx.is_zero, fld.xy == poly3({(0, 0, 0): 1}), fld.xz.is_zero) == \
        (True, True, True)


def test_hamiltonian_x_squared():
    fld = field_from_hamiltonian(poly3({(2, 0, 0): 1}))
    assert fld.xx.is_zero
    assert fld.xy == poly3({(1, 0, 0): 2})
    assert fld.xz == poly3({(2, 0, 0): -1})
    assert all(p.is_zero for p in lie_residual3(fld))


def test_hamiltonian_rejects_z():
    with pytest.raises(HamiltonianDependsOnZ):
        field_from_hamiltonian(poly3({(0, 0, 1): 1}))


def test_reeb():
    fld = reeb_field()
    assert fld.xx.is_zero and fld.xy.is_zero
    assert fld.xz == poly3({(0, 0, 0): 1})
    # alpha(R) = Xz + x*Xy = 1
    assert fld.xz + poly3({(1, 0, 0): 1}) * fld.xy == poly3({(0, 0, 0): 1})
    assert field_from_hamiltonian(poly3({(0, 0, 0): 1})) == fld


def test_lie_residual_examples():
    fld = Field3(poly3({(1, 0, 0): 1}), poly3({}), poly3({}))
    assert lie_residual3(fld) == (poly3({}), poly3({(1, 0, 0): 1}), poly3({}))
    fld = Field3(poly3({}), poly3({}), poly3({(0, 0, 1): 1}))
    assert lie_residual3(fld) == (poly3({}), poly3({}), poly3({(0, 0, 0): 1}))


def test_lie_residual_zero_for_hamiltonian_fields(rng):
    for _ in range(25):
        h = random_hamiltonian(rng, 6)
        fld = field_from_hamiltonian(h)
        assert all(p.is_zero for p in lie_residual3(fld))


def test_hamiltonian_recorded_and_recovered(rng):
    x = poly3({(1, 0, 0): 1})
    for _ in range(15):
        h = random_hamiltonian(rng, 5)
        fld = field_from_hamiltonian(h)
        assert fld.hamiltonian == h
        assert fld.xz + x * fld.xy == h


def test_project_round_trip():
    plane_field = field_from_germ(Jet.monomial(2, 1, N))
    lifted = lift_plane_field(plane_field, 7)
    assert project_to_plane(lifted, N) == plane_field


def test_project_general_field():
    fld = field_from_hamiltonian(poly3({(2, 0, 0): 1}))
    projected = project_to_plane(fld)
    assert projected.kind is FieldKind.GENERAL
    assert projected.xy == SparsePoly(2, {(1, 0): 2})


def test_project_reeb_is_zero_plane_field():
    projected = project_to_plane(reeb_field(), N)
    assert projected.kind is FieldKind.LIOUVILLE
    assert projected.xx.is_zero and projected.xy.is_zero


def test_project_rejects_z_dependence():
    fld = Field3(poly3({(0, 0, 1): 1}), poly3({}), poly3({}))
    with pytest.raises(ComponentsDependOnZ):
        project_to_plane(fld)


def test_lift_saddle_model():
    fld = lift_plane_field(field_from_germ(Jet.monomial(1, 2, N)), 1)
    assert fld.xx == poly3({(1, 0, 0): -2})
    assert fld.xy == poly3({(0, 1, 0): 2})
    assert fld.xz == poly3({(0, 0, 0): 1})


def test_lift_zero_field_is_reeb():
    fld = lift_plane_field(field_from_germ(Jet.zero(N)), 1)
    assert fld == reeb_field()


def test_lift_quadratic_model_flat():
    fld = lift_plane_field(field_from_germ(Jet.monomial(2, 1, N)), 0)
    assert fld.xx == poly3({(1, 1, 0): -2})
    assert fld.xy == poly3({(0, 2, 0): 1})
    assert fld.xz.is_zero


def test_lift_requires_liouville():
    from liouville.plane import PlaneField
    general = PlaneField.general(SparsePoly(2, {}), SparsePoly(2, {(1, 0): 1}))
    with pytest.raises(NotLiouville):
        lift_plane_field(general, 0)


# -- homogeneous basis ---------------------------------------------------------

def test_basis_counts_small():
    basis = homogeneous_basis(1)
    assert basis.counts == (6, 2, 1) and basis.dimension == 9
    assert homogeneous_basis(2).dimension == 18


def test_basis_dimension_law():
    for d in range(1, 7):
        basis = homogeneous_basis(d)
        assert basis.counts == (3 * d + 3, d * d + d, (d * d + d) // 2)
        assert basis.dimension == 3 * (d * d + 3 * d + 2) // 2


def test_basis_degree_one_second_class_instances():
    basis = homogeneous_basis(1)
    rotations = basis.fields[6:8]
    assert rotations[0] == Field3(poly3({(1, 0, 0): 1}), poly3({(0, 1, 0): -1}),
                                  poly3({}))
    assert rotations[1] == Field3(poly3({}), poly3({(0, 1, 0): 1}),
                                  poly3({(0, 0, 1): -1}))


def test_liouville_homogeneous_values():
    x1 = liouville_homogeneous(1)
    assert x1 == Field3(poly3({(1, 0, 0): 1}), poly3({(0, 1, 0): -1}), poly3({}))
    x2 = liouville_homogeneous(2)
    assert x2 == Field3(poly3({(1, 1, 0): 2}), poly3({(0, 2, 0): -1}), poly3({}))


def test_liouville_homogeneous_preserves_form():
    for d in range(1, 9):
        res = lie_residual3(liouville_homogeneous(d))
        assert all(p.is_zero for p in res)


def test_projection_is_minus_plane_model():
    for d in range(1, 7):
        projected = project_to_plane(liouville_homogeneous(d), N)
        model = field_from_germ(Jet.monomial(d, 1, N))
        assert projected == -model


def test_bracket_antisymmetry(rng):
    x2 = liouville_homogeneous(2)
    assert lie_bracket(x2, x2).is_zero


def test_bracket_disjoint_scalings():
    a = Field3(poly3({(1, 0, 0): 1}), poly3({}), poly3({}))
    b = Field3(poly3({}), poly3({(0, 1, 0): 1}), poly3({}))
    assert lie_bracket(a, b).is_zero


def test_bracket_x1_x2():
    assert lie_bracket(linear_field(1), liouville_homogeneous(2)) == \
        liouville_homogeneous(2).scale(-1)


def test_bracket_witt_structure():
    # [X_d, X_e] = (d - e) X_(d+e-1)
    for d in range(1, 5):
        for e in range(1, 5):
            lhs = lie_bracket(liouville_homogeneous(d), liouville_homogeneous(e))
            rhs = liouville_homogeneous(d + e - 1).scale(d - e) \
                if d != e else Field3.zero()
            assert lhs == rhs


def test_every_basis_field_is_eigenvector():
    for d in range(1, 5):
        for fld in homogeneous_basis(d, validate=False).fields:
            eigenvalue_of(fld, F(3, 2))


def test_ad_matrix_diagonal():
    for d in range(1, 4):
        matrix = ad_matrix(F(2), d)
        n = len(matrix)
        for i in range(n):
            for j in range(n):
                if i != j:
                    assert matrix[i][j] == 0


def test_ad_matrix_xd_entry():
    # the generator X_d sits in the second class at offset (0, d-1, 0)
    for d in range(2, 5):
        basis = homogeneous_basis(d, validate=False)
        index = basis.fields.index(liouville_homogeneous(d))
        matrix = ad_matrix(F(3), d)
        assert matrix[index][index] == 3 * (1 - d)


def test_ad_matrix_rejects_zero():
    with pytest.raises(ZeroLinearPart):
        ad_matrix(0, 2)


def test_ambient_resonances_exist():
    # the operator has zero eigenvalues on the full space (the radial fields
    # with equal x and y exponents), so the kernel claim is meaningful only
    # on the generator span
    matrix = ad_matrix(1, 3)
    diag = [matrix[i][i] for i in range(len(matrix))]
    assert any(v == 0 for v in diag)
    for d in range(2, 9):
        assert eigenvalue_of(liouville_homogeneous(d), 1) == 1 - d != 0


# -- linearization -------------------------------------------------------------

def test_decompose_roundtrip(rng):
    coeffs = {1: F(1), 2: random_fraction(rng), 4: random_fraction(rng)}
    fld = Field3.zero()
    for d, c in coeffs.items():
        fld = fld + liouville_homogeneous(d).scale(c)
    assert decompose_liouville(fld) == {d: c for d, c in coeffs.items() if c}


def test_decompose_rejects_outside_span():
    with pytest.raises(NotInSpan):
        decompose_liouville(reeb_field())
    with pytest.raises(NotInSpan):
        decompose_liouville(field_from_hamiltonian(poly3({(2, 0, 0): 1})))


def test_linearize_already_linear():
    log, final = linearize_field(linear_field(1), N)
    assert log == [] and final == linear_field(1)


def test_linearize_single_step():
    fld = linear_field(1) + liouville_homogeneous(2)
    log, final = linearize_field(fld, N)
    assert [(s.degree, s.coefficient) for s in log] == [(2, F(-1))]
    assert final == linear_field(1)


def test_linearize_zero_linear_part():
    with pytest.raises(ZeroLinearPart):
        linearize_field(liouville_homogeneous(2), N)


def test_flow_germ_explicit():
    # time-one flow of -X_2 on the axis: y / (1 - y)
    h = flow_germ(2, -1, 8)
    assert h.jet == Jet.x(8) * Jet([1, -1], 8).reciprocal()


def test_route_agreement_detailed(rng):
    order = 13
    for _ in range(5):
        fld = linear_field(1)
        for d in range(2, 6):
            fld = fld + liouville_homogeneous(d).scale(random_fraction(rng, 3, 2))
        log, final = linearize_field(fld, order)
        assert final == linear_field(1)
        flow_route = induced_plane_diffeo(log, order)
        germ_route, plane_nf = germ_route_linearization(fld, order)
        assert flow_route.h.jet.agrees_through(germ_route.h.jet, order - 1)
        assert plane_nf.germ == Jet.monomial(1, -1, order - 1)


def test_route_agreement_scaled(rng):
    order = 13
    fld = linear_field(F(3, 2)) + liouville_homogeneous(3).scale(F(1, 3))
    log, final = linearize_field(fld, order)
    assert final == linear_field(F(3, 2))
    flow_route = induced_plane_diffeo(log, order)
    germ_route, _ = germ_route_linearization(fld, order)
    assert flow_route.h.jet.agrees_through(germ_route.h.jet, order - 1)
