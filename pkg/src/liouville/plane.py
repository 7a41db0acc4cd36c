"""Plane vector fields preserving the 1-form x dy, and their germ dictionary.

A field preserves x dy exactly when it has the shape (-x f'(y), f(y)) for a
univariate f; this module realizes that dictionary in both directions,
transports fields along the plane diffeomorphisms (x, y) -> (x/h'(y), h(y)),
verifies the Lie-derivative identity symbolically, locates and classifies
equilibria, builds the ideal tangent space of a singularity class, the
standard one- and two-parameter unfoldings, and linearizes the plane
diffeomorphisms at the jet level.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Callable, Sequence

from .errors import FamilyMismatch, NotLiouville, ResonantMultiplier, ZeroGerm
from .germs import conjugacy_invariants, rk_action
from .jets import DEFAULT_ORDER, DiffeoGerm, Jet
from .linalg import RowSpace
from .polys import SparsePoly, bivar, poly_from_jet, univariate_in


class FieldKind(Enum):
    LIOUVILLE = "liouville"
    GENERAL = "general"


@dataclass(frozen=True)
class PlaneField:
    """Components (xx, xy) in the plane; Liouville-kind fields carry the
    defining germ f (a jet in y) with xx = -x f'(y) and xy = f(y)."""

    xx: SparsePoly
    xy: SparsePoly
    kind: FieldKind
    germ: Jet | None = None

    def __post_init__(self):
        if self.kind is FieldKind.LIOUVILLE:
            if self.germ is None:
                raise ValueError("Liouville-kind fields need their defining germ")
            expect_xy = poly_from_jet(self.germ, 2, 1)
            expect_xx = SparsePoly(2, {(1, 0): -1}) * poly_from_jet(
                self.germ.derivative(), 2, 1)
            if self.xx != expect_xx or self.xy != expect_xy:
                raise ValueError("components do not match the germ dictionary")

    @classmethod
    def general(cls, xx: SparsePoly, xy: SparsePoly) -> "PlaneField":
        return cls(xx, xy, FieldKind.GENERAL)

    def __neg__(self) -> "PlaneField":
        if self.kind is FieldKind.LIOUVILLE:
            return field_from_germ(-self.germ)
        return PlaneField.general(-self.xx, -self.xy)

    def to_json(self) -> dict:
        return {
            "kind": self.kind.value,
            "germ": None if self.germ is None else self.germ.to_json(),
            "Xx": self.xx.to_json(),
            "Xy": self.xy.to_json(),
        }

    def pretty(self) -> str:
        return f"({self.xx.pretty(('x', 'y'))}) d/dx + ({self.xy.pretty(('x', 'y'))}) d/dy"


def field_from_germ(f: Jet) -> PlaneField:
    """The unique x dy preserving field with y-component f: (-x f'(y), f(y))."""
    xy = poly_from_jet(f, 2, 1)
    xx = SparsePoly(2, {(1, 0): -1}) * poly_from_jet(f.derivative(), 2, 1)
    return PlaneField(xx, xy, FieldKind.LIOUVILLE, f)


def lie_residual(field: PlaneField) -> tuple[SparsePoly, SparsePoly]:
    """Components of the Lie derivative of x dy along the field, by Cartan's
    formula: (d/dx(x*Xy) - Xy, d/dy(x*Xy) + Xx).  Zero pair iff preserving."""
    x = SparsePoly(2, {(1, 0): 1})
    inner = x * field.xy
    return (inner.diff(0) - field.xy, inner.diff(1) + field.xx)


@dataclass(frozen=True)
class LiouvilleDiffeo:
    """The plane map (x, y) -> (x / h'(y), h(y)) generated by a 1-D germ h;
    these are exactly the plane diffeomorphisms preserving x dy."""

    h: DiffeoGerm

    def compose(self, other: "LiouvilleDiffeo") -> "LiouvilleDiffeo":
        return LiouvilleDiffeo(self.h.compose(other.h))

    def inverse(self) -> "LiouvilleDiffeo":
        return LiouvilleDiffeo(self.h.inverse())

    def linear_part(self) -> tuple[Fraction, Fraction]:
        a = 1 / self.h.multiplier
        return (a, 1 / a)

    def pullback_form_factor(self) -> Jet:
        """Coefficient of x dy in the pullback of x dy: (1/h') * h' as a jet.
        Identically one -- the executable shape of form preservation."""
        dh = self.h.derivative()
        return dh.reciprocal() * dh


def pushforward(psi: LiouvilleDiffeo, field: PlaneField) -> PlaneField:
    """Transport through the germ dictionary: the transported field is the
    field of (1/h')(f o h)."""
    if field.kind is not FieldKind.LIOUVILLE:
        raise NotLiouville("pushforward is defined through the germ dictionary")
    return field_from_germ(rk_action(field.germ, psi.h))


# ---------------------------------------------------------------------------
# Equilibria
# ---------------------------------------------------------------------------

class EquilibriumType(Enum):
    SADDLE = "saddle"
    DEGENERATE_LINE = "degenerate_line"


@dataclass(frozen=True)
class Equilibrium:
    """A saddle sits at (0, y); a degenerate value marks the whole line y = y*."""

    y: Fraction | float
    type: EquilibriumType
    eigenvalues: tuple | None

    @property
    def location(self) -> tuple:
        return (0, self.y)

    @property
    def exact(self) -> bool:
        return isinstance(self.y, Fraction)

    def to_json(self) -> dict:
        return {
            "y": str(self.y) if self.exact else float(self.y),
            "exact": self.exact,
            "type": self.type.value,
            "eigenvalues": None if self.eigenvalues is None else [
                str(v) if isinstance(v, Fraction) else float(v)
                for v in self.eigenvalues
            ],
        }


def _strip(coeffs: Sequence[Fraction]) -> list[Fraction]:
    out = list(coeffs)
    while out and not out[-1]:
        out.pop()
    return out


def _poly_divmod(a: list[Fraction], b: list[Fraction]):
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    r = list(a)
    while len(r) >= len(b) and any(r):
        if not r[-1]:
            r.pop()
            continue
        shift = len(r) - len(b)
        factor = r[-1] / b[-1]
        q[shift] = factor
        for i, c in enumerate(b):
            r[i + shift] -= factor * c
        r.pop()
    return q, _strip(r)


def _poly_gcd(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a, b = _strip(a), _strip(b)
    while b:
        _, r = _poly_divmod(a, b)
        a, b = b, r
    if a:
        lead = a[-1]
        a = [c / lead for c in a]
    return a


def _eval_float(coeffs: Sequence[Fraction], t: float) -> float:
    acc = 0.0
    for c in reversed(coeffs):
        acc = acc * t + float(c)
    return acc


def real_roots_in(coeffs: Sequence[Fraction], lo: float, hi: float,
                  tol: float = 1e-12) -> list:
    """Real roots of an exact polynomial inside [lo, hi].

    Sign-change bisection on the square-free part; a root is reported as an
    exact Fraction when small-denominator reconstruction verifies exactly,
    as a float refined to ``tol`` otherwise.
    """
    poly = _strip(coeffs)
    if not poly:
        raise ZeroGerm("root finding on the zero polynomial")
    if len(poly) == 1:
        return []
    deriv = _strip([poly[i] * i for i in range(1, len(poly))])
    gcd = _poly_gcd(poly, deriv)
    squarefree, _ = _poly_divmod(poly, gcd) if len(gcd) > 1 else (poly, [])
    squarefree = _strip(squarefree)

    degree = len(squarefree) - 1
    cells = max(32, 8 * degree)
    nodes = [lo + (hi - lo) * i / cells for i in range(cells + 1)]
    values = [_eval_float(squarefree, t) for t in nodes]

    found: list[float] = []
    for i, v in enumerate(values):
        if v == 0.0:
            found.append(nodes[i])
    for i in range(cells):
        a, b = nodes[i], nodes[i + 1]
        va, vb = values[i], values[i + 1]
        if va == 0.0 or vb == 0.0 or va * vb > 0:
            continue
        for _ in range(120):
            mid = 0.5 * (a + b)
            vm = _eval_float(squarefree, mid)
            if vm == 0.0 or (b - a) < tol * max(1.0, abs(mid)):
                break
            if va * vm < 0:
                b, vb = mid, vm
            else:
                a, va = mid, vm
        found.append(0.5 * (a + b))

    roots: list = []
    for r in sorted(found):
        if roots and abs(float(roots[-1]) - r) < 1e-9:
            continue
        candidate = Fraction(r).limit_denominator(10**9)
        exact = Fraction(0)
        for c in reversed(poly):
            exact = exact * candidate + c
        roots.append(candidate if exact == 0 else r)
    return roots


def equilibria(field: PlaneField, y_interval: tuple[float, float]) -> list[Equilibrium]:
    """All equilibria of a Liouville field with y in the interval: hyperbolic
    saddles (0, y*) with eigenvalues (-f'(y*), f'(y*)) where the root is
    simple, degenerate lines y = y* where f' vanishes too."""
    if field.kind is not FieldKind.LIOUVILLE:
        raise NotLiouville("equilibria analysis needs the defining germ")
    f = field.germ
    if f is None or f.is_zero:
        raise ZeroGerm("the zero field is singular everywhere")
    out = []
    fprime = f.derivative()
    for root in real_roots_in(f.coeffs, float(y_interval[0]), float(y_interval[1])):
        if isinstance(root, Fraction):
            slope = fprime.eval(root)
            degenerate = slope == 0
        else:
            slope = _eval_float(fprime.coeffs, root)
            degenerate = abs(slope) <= 1e-9
        if degenerate:
            out.append(Equilibrium(root, EquilibriumType.DEGENERATE_LINE, None))
        else:
            out.append(Equilibrium(root, EquilibriumType.SADDLE, (-slope, slope)))
    return out


# ---------------------------------------------------------------------------
# Singularity classes, unfoldings, transversality
# ---------------------------------------------------------------------------

def singularity_tangent_space(f: Jet, deg: int | None = None) -> RowSpace:
    """Row-reduced truncation of the ideal <f> to degree deg: the tangent
    space of the class of fields sharing f's singularity, read through the
    germ dictionary."""
    if f.is_zero:
        raise ZeroGerm("tangent space of the zero germ is undefined")
    if deg is None:
        deg = f.order
    if deg > f.order:
        raise ValueError("deg exceeds the jet order")
    rows = []
    for s in range(deg + 1):
        row = [Fraction(0)] * (deg + 1)
        for i, c in enumerate(f.coeffs):
            if c and i + s <= deg:
                row[i + s] = c
        rows.append(row)
    return RowSpace(rows, deg + 1)


def unfolding_q(a, order: int = DEFAULT_ORDER) -> PlaneField:
    """One-parameter unfolding through the quadratic model: germ a*y + y^2."""
    a = Fraction(a)
    return field_from_germ(Jet.monomial(1, a, order) + Jet.monomial(2, 1, order))


def unfolding_t(a, b, order: int = DEFAULT_ORDER) -> PlaneField:
    """Two-parameter unfolding through the cubic model: germ a*y + b*y^2 + y^3."""
    a, b = Fraction(a), Fraction(b)
    return field_from_germ(Jet.monomial(1, a, order) + Jet.monomial(2, b, order)
                           + Jet.monomial(3, 1, order))


@dataclass(frozen=True)
class GermFamily:
    """A germ family affine in its parameters (model + sum of a_i * g_i)."""

    nparams: int
    at: Callable[[tuple], Jet]
    name: str = ""

    def __call__(self, params: tuple) -> Jet:
        if len(params) != self.nparams:
            raise ValueError(f"family {self.name or '?'} takes {self.nparams} parameters")
        return self.at(tuple(Fraction(p) for p in params))


def q_family(order: int = DEFAULT_ORDER) -> GermFamily:
    return GermFamily(1, lambda p: unfolding_q(p[0], order).germ, "Q")


def t_family(order: int = DEFAULT_ORDER) -> GermFamily:
    return GermFamily(2, lambda p: unfolding_t(p[0], p[1], order).germ, "T")


def constant_family(f: Jet, name: str = "") -> GermFamily:
    return GermFamily(0, lambda p: f, name)


def family_partials(family: GermFamily) -> list[Jet]:
    """Exact parameter derivatives at the parameter origin, using the affine
    contract; a doubled step cross-checks affinity."""
    zero = (Fraction(0),) * family.nparams
    base = family(zero)
    partials = []
    for i in range(family.nparams):
        e1 = tuple(Fraction(1 if j == i else 0) for j in range(family.nparams))
        e2 = tuple(Fraction(2 if j == i else 0) for j in range(family.nparams))
        d1 = family(e1) - base
        if family(e2) - base != 2 * d1:
            raise ValueError("family is not affine in its parameters")
        partials.append(d1)
    return partials


def transversality(family: GermFamily, model: Jet, deg: int | None = None
                   ) -> tuple[bool, int]:
    """Rank of the parameter derivatives inside span{y..y^deg} modulo the
    ideal <model>; transversal iff it equals the model's codimension."""
    zero = (Fraction(0),) * family.nparams
    base = family(zero)
    n = min(base.order, model.order)
    if base.truncate(n) != model.truncate(n):
        raise FamilyMismatch("family(0) is not the stated model")
    k = model.order_of_vanishing()
    if k is None:
        raise ZeroGerm("model is zero through its order")
    if deg is None:
        deg = model.order
    tangent = singularity_tangent_space(model, deg)
    rows = []
    for partial in family_partials(family):
        row = [Fraction(0)] * (deg + 1)
        for i, c in enumerate(partial.coeffs[: deg + 1]):
            row[i] = c
        rows.append(row)
    rank = tangent.quotient_rank(rows)
    codim = max(k - 1, 0)
    return (rank == codim, rank)


# ---------------------------------------------------------------------------
# Jet linearization of the plane diffeomorphisms
# ---------------------------------------------------------------------------

def linearize_diffeo(h: DiffeoGerm) -> tuple[DiffeoGerm, Jet]:
    """Solve psi o h o psi^(-1) = lambda*y through the order, lambda = h'(0).

    The coefficient recursion divides by lambda - lambda^n, nonzero for all
    n >= 2 exactly when lambda is not +-1; the excluded multipliers raise
    ResonantMultiplier.  Returns (psi, residual jet of the conjugation),
    with the residual identically zero through the order by construction.
    The induced plane map (x, y) -> (x/psi'(y), psi(y)) conjugates the
    corresponding Liouville diffeomorphism to (x/lambda, lambda*y).
    """
    lam = h.multiplier
    if lam == 1 or lam == -1:
        raise ResonantMultiplier(f"multiplier {lam} admits no formal linearization")
    n = h.order
    powers = [None, h.jet]
    for j in range(2, n + 1):
        powers.append(powers[-1] * h.jet)
    s = [Fraction(0)] * (n + 1)
    s[1] = Fraction(1)
    lam_pow = lam
    for m in range(2, n + 1):
        lam_pow = lam_pow * lam
        acc = h.jet.coeff(m)
        for j in range(2, m):
            if s[j]:
                acc = acc + s[j] * powers[j].coeff(m)
        s[m] = acc / (lam - lam_pow)
    psi = DiffeoGerm(Jet(s, n))
    conjugated = psi.jet.compose(h.jet).compose(psi.inverse().jet)
    residual = conjugated - Jet.monomial(1, lam, n)
    return psi, residual


def time_reversal_equivalent(x_field: PlaneField, y_field: PlaneField) -> bool:
    """True when the two Liouville fields agree up to reversing time: the
    first field's germ and the negated second germ share their complete
    conjugacy data (order, sign, and the degree-(2k-1) modulus)."""
    for fld in (x_field, y_field):
        if fld.kind is not FieldKind.LIOUVILLE:
            raise NotLiouville("time-reversal comparison needs germ-backed fields")
    return conjugacy_invariants(x_field.germ) == conjugacy_invariants(-y_field.germ)
