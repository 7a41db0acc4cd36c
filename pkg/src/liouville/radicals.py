"""Exact arithmetic in real radical extensions Q(rho) with rho = R^(1/m).

Normalizing a germ of vanishing order k rescales the variable by a root of
the leading coefficient (the scaling condition a*c^(k-1) = sigma), and that
root is rarely rational.  Elements here are vectors over the power basis
1, rho, ..., rho^(m-1) with rational entries, so every operation stays
exact and zero-testing is literal.

The pair (R, m) is canonicalized before use: m-th power content of R is
extracted so that t^m - R is irreducible over Q (classical criterion: no
prime dividing m divides every exponent of R, and R > 0 avoids the -4
fourth-power case).  Irreducibility makes the quotient ring a field, so
division is always defined.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from . import linalg


def _factor_exponents(p: int, q: int) -> dict[int, int]:
    """Prime exponent map of the positive rational p/q (q exponents negative)."""
    from sympy import factorint  # deferred: sympy import is slow

    exps: dict[int, int] = {}
    for prime, e in factorint(p).items():
        exps[prime] = exps.get(prime, 0) + e
    for prime, e in factorint(q).items():
        exps[prime] = exps.get(prime, 0) - e
    return exps


def nth_root(radicand: Fraction, index: int):
    """Exact positive real ``radicand**(1/index)``: a Fraction when rational,
    otherwise a :class:`Radical` over the canonical minimal extension."""
    radicand = Fraction(radicand)
    if radicand <= 0:
        raise ValueError("nth_root takes a positive radicand; factor signs out first")
    if index < 1:
        raise ValueError("root index must be >= 1")
    if index == 1 or radicand == 1:
        return radicand
    exps = _factor_exponents(radicand.numerator, radicand.denominator)
    content = 0
    for e in exps.values():
        content = gcd(content, abs(e))
    d = gcd(index, content)
    index //= d
    reduced = Fraction(1)
    for prime, e in exps.items():
        reduced *= Fraction(prime) ** (e // d)
    if index == 1:
        return reduced
    vec = [Fraction(0)] * index
    vec[1] = Fraction(1)
    return Radical(reduced, index, vec)


class Radical:
    """An element of Q(rho), rho = radicand^(1/index), t^index - radicand irreducible."""

    __slots__ = ("radicand", "index", "vec")

    def __init__(self, radicand: Fraction, index: int, vec):
        object.__setattr__(self, "radicand", radicand)
        object.__setattr__(self, "index", index)
        object.__setattr__(self, "vec", tuple(Fraction(v) for v in vec))
        if len(self.vec) != index:
            raise ValueError("coefficient vector length must equal the root index")

    def __setattr__(self, name, value):
        raise AttributeError("Radical is immutable")

    # -- representation helpers --------------------------------------------

    def _same_field(self, other: "Radical") -> bool:
        return self.radicand == other.radicand and self.index == other.index

    def _lift(self, value):
        """Coerce a scalar into this field's vector, or None if impossible."""
        if isinstance(value, Radical):
            if not self._same_field(value):
                return None
            return value.vec
        if isinstance(value, (int, str)):
            value = Fraction(value)
        if isinstance(value, Fraction):
            return (value,) + (Fraction(0),) * (self.index - 1)
        return None

    def _make(self, vec) -> "Radical | Fraction":
        if not any(vec[1:]):
            return vec[0]
        return Radical(self.radicand, self.index, vec)

    @property
    def is_rational(self) -> bool:
        return not any(self.vec[1:])

    def as_fraction(self) -> Fraction:
        if not self.is_rational:
            raise ValueError(f"{self} is not rational")
        return self.vec[0]

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        ov = self._lift(other)
        if ov is None:
            return NotImplemented
        return self._make(tuple(a + b for a, b in zip(self.vec, ov)))

    __radd__ = __add__

    def __neg__(self):
        return Radical(self.radicand, self.index, tuple(-v for v in self.vec))

    def __sub__(self, other):
        ov = self._lift(other)
        if ov is None:
            return NotImplemented
        return self._make(tuple(a - b for a, b in zip(self.vec, ov)))

    def __rsub__(self, other):
        ov = self._lift(other)
        if ov is None:
            return NotImplemented
        return self._make(tuple(b - a for a, b in zip(self.vec, ov)))

    def _mul_vec(self, ov):
        m = self.index
        out = [Fraction(0)] * m
        for i, a in enumerate(self.vec):
            if a:
                for j, b in enumerate(ov):
                    if b:
                        k = i + j
                        if k < m:
                            out[k] += a * b
                        else:
                            out[k - m] += a * b * self.radicand
        return tuple(out)

    def __mul__(self, other):
        ov = self._lift(other)
        if ov is None:
            return NotImplemented
        return self._make(self._mul_vec(ov))

    __rmul__ = __mul__

    def _inverse_vec(self):
        m = self.index
        cols = []
        basis = [Fraction(0)] * m
        for j in range(m):
            e = list(basis)
            e[j] = Fraction(1)
            cols.append(self._mul_vec(tuple(e)))
        matrix = [[cols[j][i] for j in range(m)] for i in range(m)]
        rhs = [Fraction(1)] + [Fraction(0)] * (m - 1)
        sol = linalg.solve(matrix, rhs)
        if sol is None:
            raise ZeroDivisionError("division by zero in radical field")
        return tuple(sol)

    def __truediv__(self, other):
        ov = self._lift(other)
        if ov is None:
            return NotImplemented
        helper = Radical(self.radicand, self.index, ov)
        return self._make(self._mul_vec(helper._inverse_vec()))

    def __rtruediv__(self, other):
        ov = self._lift(other)
        if ov is None:
            return NotImplemented
        helper = Radical(self.radicand, self.index, ov)
        return self._make(helper._mul_vec(self._inverse_vec()))

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("radical powers take natural exponents")
        result = Fraction(1)
        base = self
        while n:
            if n & 1:
                result = base * result
            base = base * base
            n >>= 1
        return result

    # -- comparisons / conversions -------------------------------------------

    def __bool__(self):
        return any(self.vec)

    def __eq__(self, other):
        ov = self._lift(other)
        if ov is None:
            return NotImplemented
        return self.vec == ov

    def __hash__(self):
        return hash((self.radicand, self.index, self.vec))

    def __float__(self):
        rho = float(self.radicand) ** (1.0 / self.index)
        return sum(float(v) * rho**j for j, v in enumerate(self.vec))

    def __repr__(self):
        return f"Radical({self})"

    def __str__(self):
        parts = []
        root = f"{self.radicand}^(1/{self.index})"
        for j, v in enumerate(self.vec):
            if not v:
                continue
            if j == 0:
                parts.append(str(v))
            else:
                base = root if j == 1 else f"{root}^{j}"
                parts.append(base if v == 1 else f"{v}*{base}")
        return " + ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        return {
            "radicand": str(self.radicand),
            "index": self.index,
            "vector": [str(v) for v in self.vec],
        }
