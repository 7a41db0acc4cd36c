"""Sparse exact polynomials in a fixed number of variables.

Terms are stored as a map from exponent tuples to nonzero Fraction
coefficients.  Two thin aliases fix the arity used by the plane (x, y) and
space (x, y, z) modules; the arithmetic is shared.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

from .jets import Jet


class SparsePoly:
    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[tuple, object] | None = None):
        clean: dict[tuple, Fraction] = {}
        for exps, c in (terms or {}).items():
            c = c if isinstance(c, Fraction) else Fraction(c)
            if not c:
                continue
            exps = tuple(int(e) for e in exps)
            if len(exps) != nvars or any(e < 0 for e in exps):
                raise ValueError(f"bad exponent tuple {exps} for {nvars} variables")
            clean[exps] = clean.get(exps, Fraction(0)) + c
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "terms", {e: c for e, c in clean.items() if c})

    def __setattr__(self, name, value):
        raise AttributeError("SparsePoly is immutable")

    @classmethod
    def zero(cls, nvars: int) -> "SparsePoly":
        return cls(nvars, {})

    @classmethod
    def constant(cls, nvars: int, c) -> "SparsePoly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, nvars: int, index: int) -> "SparsePoly":
        exps = [0] * nvars
        exps[index] = 1
        return cls(nvars, {tuple(exps): 1})

    # -- queries -------------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, index: int) -> int:
        return max((e[index] for e in self.terms), default=-1)

    def depends_on(self, index: int) -> bool:
        return any(e[index] for e in self.terms)

    def coefficient(self, exps: tuple) -> Fraction:
        return self.terms.get(tuple(exps), Fraction(0))

    def homogeneous_part(self, d: int) -> "SparsePoly":
        return SparsePoly(self.nvars,
                          {e: c for e, c in self.terms.items() if sum(e) == d})

    # -- arithmetic ------------------------------------------------------------

    def _check(self, other: "SparsePoly"):
        if self.nvars != other.nvars:
            raise ValueError("polynomial arity mismatch")

    def __add__(self, other):
        if not isinstance(other, SparsePoly):
            return NotImplemented
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return SparsePoly(self.nvars, out)

    def __neg__(self):
        return SparsePoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, SparsePoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, SparsePoly):
            self._check(other)
            out: dict[tuple, Fraction] = {}
            for e1, c1 in self.terms.items():
                for e2, c2 in other.terms.items():
                    e = tuple(a + b for a, b in zip(e1, e2))
                    out[e] = out.get(e, Fraction(0)) + c1 * c2
            return SparsePoly(self.nvars, out)
        c = other if isinstance(other, Fraction) else Fraction(other)
        return SparsePoly(self.nvars, {e: c * v for e, v in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, SparsePoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, tuple(sorted(self.terms.items()))))

    def diff(self, index: int) -> "SparsePoly":
        out: dict[tuple, Fraction] = {}
        for e, c in self.terms.items():
            if e[index]:
                ne = list(e)
                ne[index] -= 1
                out[tuple(ne)] = c * e[index]
        return SparsePoly(self.nvars, out)

    def eval_exact(self, point: Iterable) -> Fraction:
        point = [p if isinstance(p, Fraction) else Fraction(p) for p in point]
        total = Fraction(0)
        for e, c in self.terms.items():
            term = c
            for p, k in zip(point, e):
                term *= p**k
            total += term
        return total

    # -- conversions -----------------------------------------------------------

    def sorted_terms(self) -> list[tuple[tuple, Fraction]]:
        return sorted(self.terms.items())

    def to_json(self) -> list:
        return [[*e, str(c)] for e, c in self.sorted_terms()]

    @classmethod
    def from_json(cls, nvars: int, data: list) -> "SparsePoly":
        return cls(nvars, {tuple(row[:-1]): Fraction(row[-1]) for row in data})

    def compiled(self):
        """Float-evaluation closure for the numerical integrators."""
        items = [(float(c), e) for e, c in self.sorted_terms()]

        def evaluate(point):
            total = 0.0
            for c, e in items:
                term = c
                for p, k in zip(point, e):
                    if k:
                        term *= p**k
                total += term
            return total

        return evaluate

    def pretty(self, names: tuple[str, ...]) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            factors = []
            for name, k in zip(names, e):
                if k == 1:
                    factors.append(name)
                elif k > 1:
                    factors.append(f"{name}^{k}")
            body = "*".join(factors)
            if not body:
                parts.append(str(c))
            elif c == 1:
                parts.append(body)
            elif c == -1:
                parts.append(f"-{body}")
            else:
                parts.append(f"{c}*{body}")
        out = parts[0]
        for t in parts[1:]:
            out += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
        return out

    def __repr__(self):
        names = ("x", "y", "z")[: self.nvars] if self.nvars <= 3 else tuple(
            f"v{i}" for i in range(self.nvars))
        return f"SparsePoly({self.pretty(names)!r})"


def bivar(terms: Mapping[tuple, object] | None = None) -> SparsePoly:
    return SparsePoly(2, terms)


def trivar(terms: Mapping[tuple, object] | None = None) -> SparsePoly:
    return SparsePoly(3, terms)


def univariate_in(poly: SparsePoly, index: int) -> Jet | None:
    """Extract the polynomial as a jet in one variable if it involves no other;
    None when it genuinely mixes variables."""
    for e in poly.terms:
        if any(k for i, k in enumerate(e) if i != index):
            return None
    deg = max((e[index] for e in poly.terms), default=0)
    coeffs = [Fraction(0)] * (deg + 1)
    for e, c in poly.terms.items():
        coeffs[e[index]] = c
    return Jet(coeffs, deg)


def poly_from_jet(jet: Jet, nvars: int, index: int) -> SparsePoly:
    terms = {}
    for i, c in enumerate(jet.coeffs):
        if c:
            e = [0] * nvars
            e[index] = i
            terms[tuple(e)] = c
    return SparsePoly(nvars, terms)
