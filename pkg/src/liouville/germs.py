"""Classification of univariate germs under the derivative-weighted contact action.

The group action is g = (1/phi')*(f o phi) for a diffeomorphism germ phi
fixing the origin; it is exactly the conjugacy action on one-dimensional
vector fields f(x) d/dx written in the inverse variable.  This module
provides the action itself, the classification verdict (unit / linear /
power with sign), the ideal tangent space <f> + f'*m with its codimension
and determinacy tests, and the construction of normalizing diffeomorphisms.

One fact of the mathematics deserves a headline because it shapes the API:
for a germ of vanishing order k >= 2 the pure power sigma*x^k is reachable
only when the residue of dx/f vanishes.  The 1-form dx/f(x) pulls back
exactly under the action, so its residue (the coefficient of 1/x in the
Laurent expansion) is a conjugacy invariant; the best attainable polynomial
form is

    sigma*x^k + beta*x^(2k-1),      beta = -residue(f),

obtained by a triangular coefficient recursion whose single resonant degree
is 2k-1.  :func:`normal_form` reports both the attained form and beta, and
``exact`` is True precisely when the pure power was reached.  Units and
order-1 germs always normalize exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import comb

from .errors import InternalInvariantError, ZeroGerm
from .jets import DiffeoGerm, Jet
from .linalg import RowSpace
from .radicals import Radical, nth_root


def rk_action(f: Jet, phi: DiffeoGerm | Jet) -> Jet:
    """(1/phi')*(f o phi); a right action.  The result loses one order: the
    top coefficient would need phi beyond its own truncation."""
    if not isinstance(phi, DiffeoGerm):
        phi = DiffeoGerm(phi)
    return phi.derivative().reciprocal() * f.compose(phi.jet)


class ClassKind(Enum):
    UNIT = "unit"
    LINEAR = "linear"
    POWER = "power"
    UNDETERMINED = "undetermined"


@dataclass(frozen=True)
class GermClass:
    """Classification verdict: kind, vanishing order, sign data, codimension.

    For even k the sign of the leading coefficient is absorbed by rescaling
    (the scaling condition a*c^(k-1) = sigma has k-1 odd) and is stored
    normalized to +1; for odd k it is an invariant.  Units carry no
    codimension (None plays the not-applicable marker); undetermined germs
    record the truncation order that failed to decide.
    """

    kind: ClassKind
    order: int | None = None
    sign: int | None = None
    linear_coefficient: Fraction | None = None
    codim: int | None = None
    order_bound: int | None = None

    def symbol(self) -> str:
        if self.kind is ClassKind.UNIT:
            return ""
        if self.kind is ClassKind.LINEAR:
            return "A0"
        if self.kind is ClassKind.POWER:
            return f"A{self.order - 1}"
        return "undetermined"

    def normal_form_jet(self, order: int) -> Jet:
        if self.kind is ClassKind.UNIT:
            return Jet.one(order)
        if self.kind is ClassKind.LINEAR:
            return Jet.monomial(1, self.linear_coefficient, order)
        if self.kind is ClassKind.POWER:
            return Jet.monomial(self.order, self.sign, order)
        raise ZeroGerm("undetermined germ has no normal form")

    def to_json(self) -> dict:
        return {
            "class": self.symbol(),
            "sign": self.sign,
            "codim": self.codim,
            "a": None if self.linear_coefficient is None else str(self.linear_coefficient),
        }


def _sign_of(value) -> int:
    if isinstance(value, Fraction):
        return 1 if value > 0 else -1
    approx = float(value)
    if abs(approx) < 1e-9:
        raise InternalInvariantError("cannot determine the sign of a near-zero coefficient")
    return 1 if approx > 0 else -1


def classify(f: Jet) -> GermClass:
    """Verdict per the vanishing order; codimension is order - 1 past order 0."""
    k = f.order_of_vanishing()
    if k is None:
        return GermClass(ClassKind.UNDETERMINED, order_bound=f.order)
    if k == 0:
        return GermClass(ClassKind.UNIT, order=0)
    if k == 1:
        return GermClass(ClassKind.LINEAR, order=1,
                         linear_coefficient=f.coeff(1), codim=0)
    sign = 1 if k % 2 == 0 else _sign_of(f.coeff(k))
    return GermClass(ClassKind.POWER, order=k, sign=sign, codim=k - 1)


# ---------------------------------------------------------------------------
# Tangent space <f> + f' m, codimension, determinacy
# ---------------------------------------------------------------------------

def _shifted_rows(jet: Jet, shifts: range, deg: int):
    for s in shifts:
        row = [Fraction(0)] * (deg + 1)
        for i, c in enumerate(jet.coeffs):
            if c and i + s <= deg:
                row[i + s] = c
        yield row


def tangent_space(f: Jet, deg: int | None = None) -> RowSpace:
    """Row-reduced truncation of <f> + f'*m to degree deg.

    Rows are x^i*f (i >= 0) and x^j*f' (j >= 1).  Requires deg <= order(f)
    so every retained row coefficient is actually known.
    """
    if f.is_zero:
        raise ZeroGerm("tangent space of the zero germ is undefined")
    if deg is None:
        deg = f.order
    if deg > f.order:
        raise ValueError("deg exceeds the jet order; higher rows would be unknown")
    rows = list(_shifted_rows(f, range(0, deg + 1), deg))
    rows.extend(_shifted_rows(f.derivative(), range(1, deg + 1), deg))
    return RowSpace(rows, deg + 1)


def codimension(f: Jet, deg: int | None = None) -> int:
    """dim of span{x..x^deg} modulo the tangent space; equals order-1 for
    non-unit polynomial germs once deg >= order + 1."""
    space = tangent_space(f, deg)
    deg = space.ncols - 1
    rank_in_m = RowSpace([row[1:] for row in space.rows], deg).rank
    return deg - rank_in_m


def is_determined(f: Jet, k: int) -> bool:
    """Row-space test: every monomial x^(k+1)..x^N inside m*(<f> + f'*m)."""
    if f.is_zero:
        raise ZeroGerm("determinacy of the zero germ is undefined")
    n = f.order
    if k + 1 > n:
        raise ValueError("k+1 exceeds the jet order; nothing to test")
    rows = list(_shifted_rows(f, range(1, n + 1), n))
    rows.extend(_shifted_rows(f.derivative(), range(2, n + 1), n))
    space = RowSpace(rows, n + 1)
    for t in range(k + 1, n + 1):
        e = [Fraction(0)] * (n + 1)
        e[t] = Fraction(1)
        if not space.contains(e):
            return False
    return True


def residue(f: Jet) -> Fraction:
    """Coefficient of 1/x in the Laurent expansion of 1/f; invariant under
    the group action.  Needs order(f) >= 2*ord(f) - 1 to be determined."""
    k = f.order_of_vanishing()
    if k is None:
        raise ZeroGerm("residue of the zero germ is undefined")
    if k == 0:
        return Fraction(0)
    if f.order < 2 * k - 1:
        raise ValueError(f"order {f.order} too small: residue needs degree {2 * k - 1}")
    unit_part = Jet(f.coeffs[k:], f.order - k)
    return unit_part.reciprocal().coeff(k - 1)


# ---------------------------------------------------------------------------
# Normalizing diffeomorphisms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class NormalForm:
    """Outcome of a normalization: the diffeomorphism, the verdict, the spec
    normal form targeted, what the action actually attained (one order below
    the input, as the action costs a derivative), and the modulus beta of
    the unremovable x^(2k-1) term (zero when the pure form was reached)."""

    diffeo: DiffeoGerm
    germ_class: GermClass
    target: Jet
    achieved: Jet
    modulus: Fraction

    @property
    def exact(self) -> bool:
        return self.achieved == self.target


def normalizing_diffeo(f: Jet) -> tuple[DiffeoGerm, GermClass]:
    result = normal_form(f)
    return result.diffeo, result.germ_class


def normal_form(f: Jet) -> NormalForm:
    """Construct phi bringing f as close to its class normal form as the
    action permits: all the way for units and order-1 germs, and to
    sigma*x^k + beta*x^(2k-1) for order k >= 2 (see the module docstring)."""
    verdict = classify(f)
    order = f.order
    if verdict.kind is ClassKind.UNDETERMINED:
        raise ZeroGerm("zero through the truncation order; nothing to normalize")

    if verdict.kind is ClassKind.UNIT:
        antiderivative = f.reciprocal().integral().truncate(order)
        phi = DiffeoGerm(antiderivative).inverse()
        beta = Fraction(0)
    else:
        k = verdict.order
        lead = f.coeff(k)
        if k == 1:
            c1 = Fraction(1)
            target_lead = lead
        else:
            target_lead = Fraction(verdict.sign)
            ratio = target_lead / lead
            root = nth_root(abs(ratio), k - 1)
            c1 = -root if ratio < 0 else root
        phi, beta = _solve_conjugation(f, k, c1, target_lead)

    achieved = rk_action(f, phi)
    target = verdict.normal_form_jet(achieved.order)
    expected = target if beta == 0 else target + Jet.monomial(
        2 * verdict.order - 1, beta, achieved.order)
    if achieved != expected:
        raise InternalInvariantError("normalization certificate failed to verify")
    return NormalForm(phi, verdict, target, achieved, beta)


def _solve_conjugation(f: Jet, k: int, c1, target_lead) -> tuple[DiffeoGerm, Fraction]:
    """Solve f o phi = phi' * T degree by degree, T = target_lead*x^k plus,
    past the resonant degree, beta*x^(2k-1).

    The pivot for c_(n+1) is target_lead*(k-1-n): nonzero except at n = k-1,
    where the defect cannot be removed and defines beta.  Powers of phi are
    maintained incrementally: appending c*x^s to phi updates phi^i by the
    binomial tail sum_j C(i,j) c^j x^(js) phi^(i-j).
    """
    order = f.order
    cap = order  # the degree-t equation only involves phi coefficients <= t-k+1
    zero = Fraction(0)

    phi = [zero] * (order + 1)
    phi[1] = c1
    # powers[i][t] = coefficient of x^t in phi^i, through degree cap
    powers = []
    for i in range(order + 1):
        vec = [zero] * (cap + 1)
        if i <= cap:
            vec[i] = c1**i
        powers.append(vec)
    # composite[t] = coefficient of x^t in f o phi, through degree cap
    composite = [zero] * (cap + 1)
    for i in range(k, order + 1):
        a = f.coeffs[i]
        if a:
            for t in range(cap + 1):
                if powers[i][t]:
                    composite[t] = composite[t] + a * powers[i][t]

    beta = zero
    beta_rational = Fraction(0)
    for t in range(k + 1, cap + 1):
        n = t - k
        # [phi' * T]_t with T = target_lead*x^k + beta*x^(2k-1)
        rhs = zero
        if 1 <= t - k + 1 <= order:
            rhs = rhs + target_lead * (t - k + 1) * phi[t - k + 1]
        if beta and 1 <= t - 2 * k + 2 <= order:
            rhs = rhs + beta * (t - 2 * k + 2) * phi[t - 2 * k + 2]
        defect = composite[t] - rhs
        if n == k - 1:
            beta = defect / c1
            if isinstance(beta, Radical):
                if not beta.is_rational:
                    raise InternalInvariantError("resonant modulus must be rational")
                beta_rational = beta.as_fraction()
            else:
                beta_rational = Fraction(beta)
            continue
        if not defect:
            continue
        pivot = target_lead * (k - 1 - n)
        c = -defect / pivot
        s = n + 1
        phi[s] = c
        _update_powers(powers, composite, f, c, s, cap, order)

    coeffs = [_demote(v) for v in phi]
    return DiffeoGerm(Jet(coeffs, order)), beta_rational


def _update_powers(powers, composite, f: Jet, c, s: int, cap: int, order: int):
    cpow = [None, c]
    jmax = cap // s
    for j in range(2, jmax + 1):
        cpow.append(cpow[-1] * c)
    for i in range(order, 0, -1):
        delta = None
        for j in range(1, min(i, jmax) + 1):
            w = comb(i, j) * cpow[j]
            src = powers[i - j]
            shift = j * s
            if delta is None:
                delta = [Fraction(0)] * (cap + 1)
            for idx in range(cap + 1 - shift):
                v = src[idx]
                if v:
                    delta[idx + shift] = delta[idx + shift] + w * v
        if delta is None:
            continue
        vec = powers[i]
        for idx in range(cap + 1):
            if delta[idx]:
                vec[idx] = vec[idx] + delta[idx]
        a = f.coeffs[i]
        if a:
            for idx in range(cap + 1):
                if delta[idx]:
                    composite[idx] = composite[idx] + a * delta[idx]


def _demote(value):
    if isinstance(value, Radical) and value.is_rational:
        return value.as_fraction()
    return value


def conjugacy_invariants(f: Jet):
    """Complete polynomial-conjugacy data: ("unit",), ("linear", a), or
    ("power", k, sigma, beta) with beta the degree-(2k-1) modulus (None when
    the truncation order cannot see it)."""
    verdict = classify(f)
    if verdict.kind is ClassKind.UNDETERMINED:
        raise ZeroGerm("invariants of the zero germ are undefined")
    if verdict.kind is ClassKind.UNIT:
        return ("unit",)
    if verdict.kind is ClassKind.LINEAR:
        return ("linear", verdict.linear_coefficient)
    k = verdict.order
    if f.order < 2 * k - 1:
        return ("power", k, verdict.sign, None)
    return ("power", k, verdict.sign, -residue(f))
