"""Exact arithmetic on truncated univariate power series (jets).

A :class:`Jet` holds the coefficients c0..cN of a power series truncated at
degree N (its *order*).  Coefficients are exact: ``fractions.Fraction`` by
default, and any other exact scalar implementing ``+ - * /`` and equality
(see :mod:`liouville.radicals`) passes through untouched.  Floats are
rejected at construction; nothing in this module ever rounds.

Truncation semantics matter everywhere: a jet carries no information beyond
its order, so binary operations between jets of unequal order first truncate
to the smaller order, the derivative drops one order, and the antiderivative
gains one.  ``order_of_vanishing`` returns ``None`` for a jet that is zero
through its order -- truncated data cannot certify flatness, so no infinite
order is ever claimed.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .errors import NonzeroConstantTerm, ZeroConstantTerm

DEFAULT_ORDER = 12

_ZERO = Fraction(0)
_ONE = Fraction(1)


def coerce_scalar(value):
    """Return an exact scalar for ``value``; reject floats."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    if isinstance(value, float):
        raise TypeError("floating-point coefficients are not exact; "
                        "pass Fraction, int, or a 'p/q' string")
    return value


class Jet:
    """A power series truncated at degree ``order``, with exact coefficients."""

    __slots__ = ("order", "coeffs")

    def __init__(self, coeffs: Iterable, order: int | None = None):
        cs = [coerce_scalar(c) for c in coeffs]
        if order is None:
            if not cs:
                raise ValueError("empty coefficient list needs an explicit order")
            order = len(cs) - 1
        if order < 0:
            raise ValueError("order must be >= 0")
        if len(cs) < order + 1:
            cs.extend([_ZERO] * (order + 1 - len(cs)))
        elif len(cs) > order + 1:
            cs = cs[: order + 1]
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Jet is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, order: int = DEFAULT_ORDER) -> "Jet":
        return cls([_ZERO], order)

    @classmethod
    def one(cls, order: int = DEFAULT_ORDER) -> "Jet":
        return cls([_ONE], order)

    @classmethod
    def x(cls, order: int = DEFAULT_ORDER) -> "Jet":
        return cls.monomial(1, 1, order)

    @classmethod
    def monomial(cls, degree: int, coeff=1, order: int = DEFAULT_ORDER) -> "Jet":
        if degree > order:
            raise ValueError(f"degree {degree} exceeds order {order}")
        cs = [_ZERO] * (order + 1)
        cs[degree] = coerce_scalar(coeff)
        return cls(cs, order)

    # -- basic queries -----------------------------------------------------

    def coeff(self, i: int):
        """Coefficient of x^i.  Beyond the order the value is unknown, not zero."""
        if i < 0 or i > self.order:
            raise ValueError(f"coefficient {i} outside retained range 0..{self.order}")
        return self.coeffs[i]

    @property
    def constant(self):
        return self.coeffs[0]

    @property
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def order_of_vanishing(self) -> int | None:
        """Smallest k with c_k != 0, or None if zero through the order."""
        for k, c in enumerate(self.coeffs):
            if c:
                return k
        return None

    def truncate(self, order: int) -> "Jet":
        if order > self.order:
            raise ValueError("cannot extend a jet: higher coefficients are unknown")
        return Jet(self.coeffs[: order + 1], order)

    def map_coefficients(self, fn: Callable) -> "Jet":
        return Jet([fn(c) for c in self.coeffs], self.order)

    # -- ring operations ---------------------------------------------------

    def __add__(self, other):
        if isinstance(other, Jet):
            n = min(self.order, other.order)
            return Jet([self.coeffs[i] + other.coeffs[i] for i in range(n + 1)], n)
        c = coerce_scalar(other)
        return Jet((self.coeffs[0] + c,) + self.coeffs[1:], self.order)

    __radd__ = __add__

    def __neg__(self):
        return Jet([-c for c in self.coeffs], self.order)

    def __sub__(self, other):
        return self + (-other if isinstance(other, Jet) else -coerce_scalar(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Jet):
            n = min(self.order, other.order)
            out = [_ZERO] * (n + 1)
            for i in range(min(len(self.coeffs), n + 1)):
                a = self.coeffs[i]
                if a:
                    for j in range(min(len(other.coeffs), n - i + 1)):
                        b = other.coeffs[j]
                        if b:
                            out[i + j] = out[i + j] + a * b
            return Jet(out, n)
        c = coerce_scalar(other)
        return Jet([c * v for v in self.coeffs], self.order)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("jet powers take natural exponents")
        result = Jet.one(self.order)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, Jet):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.order, self.coeffs))

    def agrees_through(self, other: "Jet", degree: int) -> bool:
        """Coefficient-wise equality of the two jets through x^degree."""
        if degree > self.order or degree > other.order:
            raise ValueError("comparison degree exceeds a jet order")
        return all(self.coeffs[i] == other.coeffs[i] for i in range(degree + 1))

    # -- calculus ----------------------------------------------------------

    def derivative(self) -> "Jet":
        """Formal derivative; the order drops by one."""
        if self.order == 0:
            return Jet.zero(0)
        return Jet([self.coeffs[i + 1] * (i + 1) for i in range(self.order)],
                   self.order - 1)

    def integral(self) -> "Jet":
        """Formal antiderivative with zero constant term; the order rises by one."""
        out = [_ZERO] * (self.order + 2)
        for i, c in enumerate(self.coeffs):
            if c:
                out[i + 1] = c / (i + 1)
        return Jet(out, self.order + 1)

    def reciprocal(self) -> "Jet":
        """g with self * g = 1 through the order; needs a unit constant term."""
        c0 = self.coeffs[0]
        if not c0:
            raise ZeroConstantTerm("jet has no reciprocal: constant term is zero")
        inv0 = _ONE / c0
        out = [inv0] + [_ZERO] * self.order
        for n in range(1, self.order + 1):
            acc = _ZERO
            for k in range(1, n + 1):
                if self.coeffs[k]:
                    acc = acc + self.coeffs[k] * out[n - k]
            out[n] = -inv0 * acc
        return Jet(out, self.order)

    def compose(self, inner: "Jet") -> "Jet":
        """self(inner(x)) through the shared order; inner must vanish at 0."""
        if inner.coeffs[0]:
            raise NonzeroConstantTerm(
                "composition of germs at 0 needs inner constant term 0")
        n = min(self.order, inner.order)
        result = Jet.zero(n)
        clipped = inner.truncate(n) if inner.order > n else inner
        for c in reversed(self.coeffs[: n + 1]):
            result = result * clipped
            if c:
                result = result + c
        return result

    def eval(self, point):
        """Exact Horner evaluation of the truncated polynomial."""
        point = coerce_scalar(point)
        acc = _ZERO
        for c in reversed(self.coeffs):
            acc = acc * point + c
        return acc

    # -- presentation ------------------------------------------------------

    def __repr__(self):
        return f"Jet({self.pretty()!r}, order={self.order})"

    def pretty(self, var: str = "x") -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                mono = var if i == 1 else f"{var}^{i}"
                if c == 1:
                    terms.append(mono)
                elif c == -1:
                    terms.append(f"-{mono}")
                else:
                    terms.append(f"{c}*{mono}")
        if not terms:
            return "0"
        out = terms[0]
        for t in terms[1:]:
            out += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
        return out

    def to_json(self) -> dict:
        return {"order": self.order, "coeffs": [_coeff_json(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: dict) -> "Jet":
        return cls([Fraction(c) for c in data["coeffs"]], data["order"])


def _coeff_json(c):
    if isinstance(c, Fraction):
        return str(c)
    to_json = getattr(c, "to_json", None)
    if to_json is not None:
        return to_json()
    return str(c)


class DiffeoGerm:
    """A jet with c0 = 0 and c1 != 0: a local diffeomorphism fixing the origin."""

    __slots__ = ("jet",)

    def __init__(self, jet: Jet | Sequence):
        if not isinstance(jet, Jet):
            jet = Jet(jet)
        if jet.coeffs[0]:
            raise ValueError("diffeomorphism germ must fix the origin (c0 = 0)")
        if jet.order < 1 or not jet.coeffs[1]:
            raise ValueError("diffeomorphism germ needs a nonzero linear coefficient")
        object.__setattr__(self, "jet", jet)

    def __setattr__(self, name, value):
        raise AttributeError("DiffeoGerm is immutable")

    @classmethod
    def identity(cls, order: int = DEFAULT_ORDER) -> "DiffeoGerm":
        return cls(Jet.x(order))

    @property
    def order(self) -> int:
        return self.jet.order

    @property
    def multiplier(self):
        """The linear coefficient c1 (the derivative at the origin)."""
        return self.jet.coeffs[1]

    def derivative(self) -> Jet:
        return self.jet.derivative()

    def compose(self, other: "DiffeoGerm") -> "DiffeoGerm":
        """self after other: x -> self(other(x))."""
        return DiffeoGerm(self.jet.compose(other.jet))

    def inverse(self) -> "DiffeoGerm":
        """Compositional inverse psi with self(psi(x)) = x through the order.

        Solved coefficient by coefficient: appending c_n x^n to psi shifts the
        degree-n residual by multiplier * c_n and leaves lower degrees alone.
        """
        n = self.order
        inv1 = _ONE / self.multiplier
        psi = [_ZERO] * (n + 1)
        psi[1] = inv1
        for m in range(2, n + 1):
            residual = self.jet.compose(Jet(psi, n))
            psi[m] = psi[m] - inv1 * residual.coeffs[m]
        return DiffeoGerm(Jet(psi, n))

    def __eq__(self, other):
        if not isinstance(other, DiffeoGerm):
            return NotImplemented
        return self.jet == other.jet

    def __hash__(self):
        return hash(self.jet)

    def __repr__(self):
        return f"DiffeoGerm({self.jet.pretty()!r}, order={self.order})"
