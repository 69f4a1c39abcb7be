"""Sparse multivariate polynomials with rational coefficients.

Variables are ray ids (strings).  A monomial is a tuple of (variable,
exponent) pairs sorted by variable, coefficients are Fractions, and zero
coefficients are never stored, so structural equality of two polynomials is
mathematical equality.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

from .errors import DimensionMismatch
from .linalg import Mat, ZERO

Mono = tuple[tuple[str, int], ...]


def _mono_mul(a: Mono, b: Mono) -> Mono:
    exps: dict[str, int] = dict(a)
    for var, e in b:
        exps[var] = exps.get(var, 0) + e
    return tuple(sorted(exps.items()))


def _mono_deg(m: Mono) -> int:
    return sum(e for _, e in m)


class MultiPoly:
    """Immutable sparse polynomial over ray-id variables."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Mono, Fraction] | None = None):
        cleaned = {}
        if terms:
            for mono, coeff in terms.items():
                coeff = Fraction(coeff)
                if coeff != 0:
                    cleaned[tuple(sorted(mono))] = coeff
        self.terms: dict[Mono, Fraction] = cleaned

    @classmethod
    def zero(cls) -> "MultiPoly":
        return cls()

    @classmethod
    def constant(cls, c) -> "MultiPoly":
        return cls({(): Fraction(c)})

    @classmethod
    def variable(cls, var: str) -> "MultiPoly":
        return cls({((var, 1),): Fraction(1)})

    @classmethod
    def linear(cls, coeffs: Mapping[str, Fraction], const: Fraction = ZERO) -> "MultiPoly":
        terms: dict[Mono, Fraction] = {((v, 1),): Fraction(c) for v, c in coeffs.items()}
        if const:
            terms[()] = Fraction(const)
        return cls(terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, MultiPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self) -> str:
        if not self.terms:
            return "MultiPoly(0)"
        parts = []
        for mono, coeff in sorted(self.terms.items()):
            body = "*".join(f"{v}^{e}" if e > 1 else v for v, e in mono) or "1"
            parts.append(f"{coeff}*{body}")
        return "MultiPoly(" + " + ".join(parts) + ")"

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        terms = dict(self.terms)
        for mono, coeff in other.terms.items():
            terms[mono] = terms.get(mono, ZERO) + coeff
        return MultiPoly(terms)

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        terms = dict(self.terms)
        for mono, coeff in other.terms.items():
            terms[mono] = terms.get(mono, ZERO) - coeff
        return MultiPoly(terms)

    def __neg__(self) -> "MultiPoly":
        return MultiPoly({m: -c for m, c in self.terms.items()})

    def __mul__(self, other) -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            c = Fraction(other)
            return MultiPoly({m: c * v for m, v in self.terms.items()})
        terms: dict[Mono, Fraction] = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                m = _mono_mul(ma, mb)
                terms[m] = terms.get(m, ZERO) + ca * cb
        return MultiPoly(terms)

    __rmul__ = __mul__

    def total_degree(self) -> int:
        return max((_mono_deg(m) for m in self.terms), default=0)

    def is_homogeneous(self, degree: int | None = None) -> bool:
        degs = {_mono_deg(m) for m in self.terms}
        if not degs:
            return True
        if len(degs) > 1:
            return False
        return degree is None or degs == {degree}

    def variables(self) -> set[str]:
        return {v for mono in self.terms for v, _ in mono}

    def partial(self, var: str) -> "MultiPoly":
        terms: dict[Mono, Fraction] = {}
        for mono, coeff in self.terms.items():
            exps = dict(mono)
            e = exps.get(var, 0)
            if e == 0:
                continue
            if e == 1:
                del exps[var]
            else:
                exps[var] = e - 1
            m = tuple(sorted(exps.items()))
            terms[m] = terms.get(m, ZERO) + e * coeff
        return MultiPoly(terms)

    def directional(self, direction: Mapping[str, Fraction]) -> "MultiPoly":
        """Derivative along the vector with the given per-variable components."""
        out = MultiPoly.zero()
        for var, comp in direction.items():
            if comp:
                out = out + Fraction(comp) * self.partial(var)
        return out

    def eval_at(self, values: Mapping[str, Fraction]) -> Fraction:
        total = ZERO
        for mono, coeff in self.terms.items():
            term = coeff
            for var, e in mono:
                if var not in values:
                    raise DimensionMismatch(f"no value for variable {var!r}")
                term *= Fraction(values[var]) ** e
            total += term
        return total

    def hessian(self, variables: Iterable[str]) -> Mat:
        """Constant Hessian matrix of a quadratic form, in the given variable order."""
        if self.total_degree() > 2:
            raise DimensionMismatch("hessian matrix requires a quadratic polynomial")
        order = list(variables)
        index = {v: i for i, v in enumerate(order)}
        n = len(order)
        h = [[ZERO] * n for _ in range(n)]
        for mono, coeff in self.terms.items():
            if _mono_deg(mono) != 2:
                continue
            if len(mono) == 1:
                (var, _), = mono
                i = index[var]
                h[i][i] += 2 * coeff
            else:
                (v1, _), (v2, _) = mono
                i, j = index[v1], index[v2]
                h[i][j] += coeff
                h[j][i] += coeff
        return tuple(tuple(row) for row in h)

    def hessian_of_contraction(
        self, directions: Iterable[Mapping[str, Fraction]], variables: Iterable[str]
    ) -> Mat:
        """Hessian of the quadratic obtained by contracting along each direction."""
        g = self
        for direction in directions:
            g = g.directional(direction)
        return g.hessian(variables)
