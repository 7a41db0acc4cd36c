"""Strictly contact polynomial fields on R^3 with the form dz + x dy.

Covers the contact-Hamiltonian construction X_H = (-H_y, H_x, H - x H_x),
the Reeb field, symbolic verification that a field preserves the form, the
projection to the plane along the Reeb direction and its section (lifting
plane fields by a constant z-component), the full homogeneous basis of
degree-d polynomial fields with its class counts, the bracket operator
against the linear field a(x d/dx - y d/dy) whose matrix is diagonal in
that basis, and normal-form linearization of fields spanned by the
homogeneous generators X_d = d x y^(d-1) d/dx - y^d d/dy.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (ComponentsDependOnZ, HamiltonianDependsOnZ,
                     InternalInvariantError, NotInSpan, NotLiouville,
                     ZeroLinearPart)
from .jets import DEFAULT_ORDER, DiffeoGerm, Jet
from .linalg import solve, sparse_rank
from .plane import (FieldKind, LiouvilleDiffeo, PlaneField, field_from_germ,
                    pushforward)
from .polys import SparsePoly, poly_from_jet, trivar, univariate_in

_X = SparsePoly(3, {(1, 0, 0): 1})


@dataclass(frozen=True)
class Field3:
    """Three exact polynomial components; fields built from a contact
    Hamiltonian H keep it (alpha(X) = Xz + x*Xy = H holds symbolically)."""

    xx: SparsePoly
    xy: SparsePoly
    xz: SparsePoly
    hamiltonian: SparsePoly | None = None

    @classmethod
    def zero(cls) -> "Field3":
        return cls(trivar(), trivar(), trivar())

    @property
    def is_zero(self) -> bool:
        return self.xx.is_zero and self.xy.is_zero and self.xz.is_zero

    def components(self) -> tuple[SparsePoly, SparsePoly, SparsePoly]:
        return (self.xx, self.xy, self.xz)

    def __add__(self, other: "Field3") -> "Field3":
        return Field3(self.xx + other.xx, self.xy + other.xy, self.xz + other.xz)

    def __sub__(self, other: "Field3") -> "Field3":
        return Field3(self.xx - other.xx, self.xy - other.xy, self.xz - other.xz)

    def __neg__(self) -> "Field3":
        return Field3(-self.xx, -self.xy, -self.xz)

    def scale(self, c) -> "Field3":
        c = Fraction(c)
        return Field3(c * self.xx, c * self.xy, c * self.xz)

    def __eq__(self, other):
        if not isinstance(other, Field3):
            return NotImplemented
        return self.components() == other.components()

    def __hash__(self):
        return hash(self.components())

    def to_json(self) -> dict:
        return {
            "Xx": self.xx.to_json(),
            "Xy": self.xy.to_json(),
            "Xz": self.xz.to_json(),
            "hamiltonian": None if self.hamiltonian is None else self.hamiltonian.to_json(),
        }

    def pretty(self) -> str:
        names = ("x", "y", "z")
        return (f"({self.xx.pretty(names)}) d/dx + ({self.xy.pretty(names)}) d/dy"
                f" + ({self.xz.pretty(names)}) d/dz")


def field_from_hamiltonian(h: SparsePoly) -> Field3:
    """The strictly contact field of a z-independent Hamiltonian:
    (-H_y, H_x, H - x*H_x)."""
    if h.nvars != 3:
        h = SparsePoly(3, {(e[0], e[1], 0): c for e, c in h.terms.items()}) \
            if h.nvars == 2 else _fail_arity(h)
    if h.depends_on(2):
        raise HamiltonianDependsOnZ("contact Hamiltonians here must not involve z")
    hx = h.diff(0)
    return Field3(-h.diff(1), hx, h - _X * hx, hamiltonian=h)


def _fail_arity(h):
    raise ValueError(f"Hamiltonian must be a polynomial in (x, y): got {h.nvars} variables")


def reeb_field() -> Field3:
    """The unique field with alpha(R) = 1 and d(alpha)(R, .) = 0: d/dz."""
    return Field3(trivar(), trivar(), SparsePoly.constant(3, 1),
                  hamiltonian=SparsePoly.constant(3, 1))


def lie_residual3(field: Field3) -> tuple[SparsePoly, SparsePoly, SparsePoly]:
    """Components of the Lie derivative of dz + x dy along the field, via
    Cartan's formula with F = Xz + x*Xy: (F_x - Xy, F_y + Xx, F_z)."""
    f = field.xz + _X * field.xy
    return (f.diff(0) - field.xy, f.diff(1) + field.xx, f.diff(2))


def project_to_plane(field: Field3, order: int = DEFAULT_ORDER) -> PlaneField:
    """Drop the Reeb direction.  The projection is tagged Liouville exactly
    when the plane part matches the germ dictionary (-x f'(y), f(y))."""
    if field.xx.depends_on(2) or field.xy.depends_on(2):
        raise ComponentsDependOnZ("x/y components must be z-independent to project")
    xx = SparsePoly(2, {(e[0], e[1]): c for e, c in field.xx.terms.items()})
    xy = SparsePoly(2, {(e[0], e[1]): c for e, c in field.xy.terms.items()})
    f_poly = univariate_in(xy, 1)
    if f_poly is not None:
        germ = Jet(f_poly.coeffs, max(order, f_poly.order))
        expect_xx = SparsePoly(2, {(1, 0): -1}) * poly_from_jet(germ.derivative(), 2, 1)
        if xx == expect_xx:
            return field_from_germ(germ)
    return PlaneField.general(xx, xy)


def lift_plane_field(plane: PlaneField, c) -> Field3:
    """Lift a Liouville plane field by a constant Reeb component c; its
    contact Hamiltonian is c + x*f(y)."""
    if plane.kind is not FieldKind.LIOUVILLE:
        raise NotLiouville("only Liouville plane fields lift to strictly contact fields")
    c = Fraction(c)
    to3 = lambda p: SparsePoly(3, {(e[0], e[1], 0): v for e, v in p.terms.items()})
    hamiltonian = SparsePoly.constant(3, c) + _X * to3(plane.xy)
    lifted = Field3(to3(plane.xx), to3(plane.xy), SparsePoly.constant(3, c),
                    hamiltonian=hamiltonian)
    if any(not r.is_zero for r in lie_residual3(lifted)):
        raise InternalInvariantError("lift failed to preserve the contact form")
    return lifted


# ---------------------------------------------------------------------------
# Homogeneous basis and the bracket operator
# ---------------------------------------------------------------------------

def _mono(i: int, j: int, k: int) -> SparsePoly:
    return SparsePoly(3, {(i, j, k): 1})


def _triples(total: int):
    for m1 in range(total + 1):
        for m2 in range(total - m1 + 1):
            yield (m1, m2, total - m1 - m2)


@dataclass(frozen=True)
class HomBasis:
    """The degree-d basis in three classes: single-monomial fields missing
    their own variable (3d+3), trace-free two-term rotations (d^2+d), and
    radial three-term fields ((d^2+d)/2)."""

    degree: int
    fields: tuple[Field3, ...]
    counts: tuple[int, int, int]

    @property
    def dimension(self) -> int:
        return len(self.fields)

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "counts": list(self.counts),
            "dimension": self.dimension,
            "fields": [f.to_json() for f in self.fields],
        }


def homogeneous_basis(d: int, validate: bool = True) -> HomBasis:
    """All three families at degree d, in class order and ascending
    lexicographic exponent order inside each family."""
    if d < 1:
        raise ValueError("degree must be >= 1")
    zero = trivar()
    fields: list[Field3] = []

    first = 0
    for m1 in range(d + 1):
        m2 = d - m1
        fields.append(Field3(_mono(0, m1, m2), zero, zero))
        first += 1
    for m1 in range(d + 1):
        m2 = d - m1
        fields.append(Field3(zero, _mono(m1, 0, m2), zero))
        first += 1
    for m1 in range(d + 1):
        m2 = d - m1
        fields.append(Field3(zero, zero, _mono(m1, m2, 0)))
        first += 1

    second = 0
    for m1, m2, m3 in _triples(d - 1):
        fields.append(Field3((m2 + 1) * _mono(m1 + 1, m2, m3),
                             -(m1 + 1) * _mono(m1, m2 + 1, m3), zero))
        second += 1
    for m1, m2, m3 in _triples(d - 1):
        fields.append(Field3(zero, (m3 + 1) * _mono(m1, m2 + 1, m3),
                             -(m2 + 1) * _mono(m1, m2, m3 + 1)))
        second += 1

    third = 0
    for m1, m2, m3 in _triples(d - 1):
        fields.append(Field3(_mono(m1 + 1, m2, m3), _mono(m1, m2 + 1, m3),
                             _mono(m1, m2, m3 + 1)))
        third += 1

    basis = HomBasis(d, tuple(fields), (first, second, third))
    expected = (3 * d + 3, d * d + d, (d * d + d) // 2)
    if basis.counts != expected or basis.dimension != 3 * (d * d + 3 * d + 2) // 2:
        raise InternalInvariantError("basis class counts disagree with the dimension law")
    if validate and sparse_rank(_basis_rows(basis)) != basis.dimension:
        raise InternalInvariantError("homogeneous basis is rank deficient")
    return basis


def _monomials(d: int) -> list[tuple]:
    return sorted(_triples(d))


def _basis_rows(basis: HomBasis) -> list[dict[int, Fraction]]:
    monos = {m: i for i, m in enumerate(_monomials(basis.degree))}
    nm = len(monos)
    rows = []
    for field in basis.fields:
        row: dict[int, Fraction] = {}
        for ci, comp in enumerate(field.components()):
            for e, c in comp.terms.items():
                row[ci * nm + monos[e]] = c
        rows.append(row)
    return rows


def liouville_homogeneous(d: int) -> Field3:
    """X_d = d x y^(d-1) d/dx - y^d d/dy: the one-dimensional space of
    degree-d fields preserving both the contact form and x dy.  It is the
    second-class basis pattern with first and third exponents zero."""
    if d < 1:
        raise ValueError("degree must be >= 1")
    field = Field3(d * _mono(1, d - 1, 0), -_mono(0, d, 0), trivar())
    if any(not r.is_zero for r in lie_residual3(field)):
        raise InternalInvariantError("X_d must preserve the contact form")
    m1, m2, m3 = 0, d - 1, 0
    pattern = Field3((m2 + 1) * _mono(m1 + 1, m2, m3),
                     -(m1 + 1) * _mono(m1, m2 + 1, m3), trivar())
    if field != pattern:
        raise InternalInvariantError("X_d disagrees with the basis pattern")
    return field


def linear_field(a) -> Field3:
    """a (x d/dx - y d/dy): the only linear strictly contact field."""
    a = Fraction(a)
    return Field3(a * _mono(1, 0, 0), -a * _mono(0, 1, 0), trivar())


def lie_bracket(x_field: Field3, y_field: Field3) -> Field3:
    """[X, Y]_i = sum_j (X_j d_j Y_i - Y_j d_j X_i), exact."""
    xs = x_field.components()
    ys = y_field.components()
    out = []
    for i in range(3):
        acc = trivar()
        for j in range(3):
            acc = acc + xs[j] * ys[i].diff(j) - ys[j] * xs[i].diff(j)
        out.append(acc)
    return Field3(*out)


def eigenvalue_of(basis_field: Field3, a=1) -> Fraction:
    """The exact scalar with [a(x d/dx - y d/dy), B] = lambda * B; raises if
    the bracket is not a multiple of B."""
    image = lie_bracket(linear_field(a), basis_field)
    lam = None
    for comp, icomp in zip(basis_field.components(), image.components()):
        for e, c in comp.terms.items():
            ratio = icomp.coefficient(e) / c
            if lam is None:
                lam = ratio
            elif lam != ratio:
                raise InternalInvariantError("bracket image is not a scalar multiple")
    lam = lam if lam is not None else Fraction(0)
    if image != basis_field.scale(lam):
        raise InternalInvariantError("bracket image is not a scalar multiple")
    return lam


def ad_matrix(a, d: int) -> list[list[Fraction]]:
    """Matrix of X -> [a(x d/dx - y d/dy), X] in the homogeneous_basis(d)
    ordering (column j = coordinates of the image of the j-th basis field)."""
    a = Fraction(a)
    if a == 0:
        raise ZeroLinearPart("the linear field vanishes; its bracket operator is zero")
    basis = homogeneous_basis(d, validate=False)
    n = basis.dimension
    monos = {m: i for i, m in enumerate(_monomials(d))}
    nm = len(monos)

    def flat(field: Field3) -> list[Fraction]:
        vec = [Fraction(0)] * (3 * nm)
        for ci, comp in enumerate(field.components()):
            for e, c in comp.terms.items():
                vec[ci * nm + monos[e]] = c
        return vec

    columns: list[list[Fraction]] = []
    pending: list[int] = []
    rows_flat = [flat(f) for f in basis.fields]
    for j, field in enumerate(basis.fields):
        image = lie_bracket(linear_field(a), field)
        coords = None
        try:
            lam = eigenvalue_of(field, a)
        except InternalInvariantError:
            lam = None
        if lam is not None:
            coords = [Fraction(0)] * n
            coords[j] = lam
        else:
            pending.append(j)
            coords = flat(image)  # placeholder, resolved below
        columns.append(coords)
    if pending:
        matrix = [[rows_flat[jj][ii] for jj in range(n)] for ii in range(3 * nm)]
        square = [row[:n] for row in matrix[: n]]  # dimension equals 3*nm
        for j in pending:
            sol = solve(square, columns[j][:n])
            if sol is None:
                raise InternalInvariantError("bracket image escapes the basis span")
            columns[j] = sol
    return [[columns[j][i] for j in range(n)] for i in range(n)]


# ---------------------------------------------------------------------------
# Normal-form linearization over the Liouville-homogeneous span
# ---------------------------------------------------------------------------

def decompose_liouville(field: Field3) -> dict[int, Fraction]:
    """Coefficients c_d with field = sum c_d X_d; NotInSpan when the field
    is not such a combination."""
    if not field.xz.is_zero:
        raise NotInSpan("fields in the Liouville-homogeneous span have no z component")
    coeffs: dict[int, Fraction] = {}
    recomposed = Field3.zero()
    for e, c in field.xy.terms.items():
        if e[0] == 0 and e[2] == 0 and e[1] >= 1:
            coeffs[e[1]] = -c
    for d, c in coeffs.items():
        recomposed = recomposed + liouville_homogeneous(d).scale(c)
    if recomposed != field:
        raise NotInSpan("field is not a combination of the generators X_d")
    return coeffs


def _witt_bracket(u: dict[int, Fraction], v: dict[int, Fraction], cap: int
                  ) -> dict[int, Fraction]:
    # [X_d, X_e] = (d - e) X_(d+e-1)
    out: dict[int, Fraction] = {}
    for d, cd in u.items():
        for e, ce in v.items():
            deg = d + e - 1
            if deg <= cap:
                out[deg] = out.get(deg, Fraction(0)) + (d - e) * cd * ce
    return {k: v for k, v in out.items() if v}


def _exp_ad(z: dict[int, Fraction], w: dict[int, Fraction], cap: int
            ) -> dict[int, Fraction]:
    result = dict(w)
    term = dict(w)
    m = 0
    while term:
        m += 1
        term = _witt_bracket(z, term, cap)
        term = {k: v / m for k, v in term.items()}
        for k, v in term.items():
            result[k] = result.get(k, Fraction(0)) + v
    return {k: v for k, v in result.items() if v}


@dataclass(frozen=True)
class LinearizationStep:
    """One homological step: the generator coefficient * X_degree whose
    time-one flow removes the degree-d tail."""

    degree: int
    coefficient: Fraction

    def field(self) -> Field3:
        return liouville_homogeneous(self.degree).scale(self.coefficient)

    def flow_germ(self, order: int) -> DiffeoGerm:
        return flow_germ(self.degree, self.coefficient, order)


def linearize_field(field: Field3, order: int = DEFAULT_ORDER
                    ) -> tuple[list[LinearizationStep], Field3]:
    """Remove the tails degree by degree: the degree-d tail c_d X_d is killed
    by the generator (c_d / (a(1-d))) X_d, whose flow adds only higher-degree
    terms.  Returns the generator log and the final field a X_1."""
    coeffs = decompose_liouville(field)
    a = coeffs.get(1, Fraction(0))
    if a == 0:
        raise ZeroLinearPart("normal-form linearization needs a nonzero linear part")
    current = {d: c for d, c in coeffs.items() if d <= order}
    log: list[LinearizationStep] = []
    for d in range(2, order + 1):
        cd = current.get(d)
        if not cd:
            continue
        g = cd / (a * (1 - d))
        log.append(LinearizationStep(d, g))
        current = _exp_ad({d: g}, current, order)
    if current != {1: a}:
        raise InternalInvariantError("homological sweep left a nonlinear tail")
    return log, linear_field(a)


def flow_germ(d: int, mu, order: int) -> DiffeoGerm:
    """Time-one flow of mu*X_d on the y-axis, as an exact jet:
    y (1 + (d-1) mu y^(d-1))^(-1/(d-1)).  The x-component follows from the
    Liouville structure: the full plane map is (x/h'(y), h(y))."""
    if d < 2:
        raise ValueError("flow germs are used for the nonlinear generators only")
    mu = Fraction(mu)
    alpha = Fraction(-1, d - 1)
    u = Jet.monomial(d - 1, (d - 1) * mu, order)
    series = Jet.zero(order)
    term = Jet.one(order)
    j = 0
    while not term.is_zero and j * (d - 1) <= order:
        series = series + term * _binomial(alpha, j)
        term = term * u
        j += 1
    return DiffeoGerm(Jet.x(order) * series)


def _binomial(alpha: Fraction, j: int) -> Fraction:
    out = Fraction(1)
    for i in range(j):
        out = out * (alpha - i) / (i + 1)
    return out


def induced_plane_diffeo(log: list[LinearizationStep], order: int) -> LiouvilleDiffeo:
    """Composite plane transformation of the linearization steps, through the
    germ of the composed flows (earliest step outermost)."""
    h = DiffeoGerm.identity(order)
    for step in log:
        h = h.compose(step.flow_germ(order))
    return LiouvilleDiffeo(h)


def germ_route_linearization(field: Field3, order: int = DEFAULT_ORDER
                             ) -> tuple[LiouvilleDiffeo, PlaneField]:
    """Linearize through the plane dictionary instead: normalize the
    projected germ and transport.  Returns (diffeo, plane field)."""
    from .germs import normal_form

    plane = project_to_plane(field, order)
    if plane.kind is not FieldKind.LIOUVILLE:
        raise NotLiouville("the field does not project to a germ-backed plane field")
    result = normal_form(plane.germ)
    psi = LiouvilleDiffeo(result.diffeo)
    return psi, pushforward(psi, plane)
