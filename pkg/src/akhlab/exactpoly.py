"""Exact rational polynomial arithmetic for the parameter-relation identities.

Elements live in the complexified commutative ring

    Q[a, s, b] / (s^2 - 2a,  b^2 - 8a(1 - 2a)),

where s stands for sqrt(2a) and b for the temporal rate beta. An
ExactPoly is re + i*im with both parts held as monomial maps
(a-power, s-power, b-power) -> Fraction; the quadratic relations are
applied eagerly during every product, so s- and b-exponents are always
0 or 1 and the zero polynomial is exactly the empty map. Because the
quotient ring is an integral domain, a product with the monomials s, b
or with i vanishes iff its cofactor does, so whole coefficient
expressions can be tested for zero directly.

The relations are a parameter (a Relations object) so that deliberately
wrong substitutions can be exercised as negative controls.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

Monomial = tuple[int, int, int]
TermMap = dict[Monomial, Fraction]


@dataclass(frozen=True)
class Relations:
    """Reduction rules: the polynomials that s^2 and b^2 collapse to."""

    s_square: tuple[tuple[Monomial, Fraction], ...]
    b_square: tuple[tuple[Monomial, Fraction], ...]


DEFAULT_RELATIONS = Relations(
    s_square=(((1, 0, 0), Fraction(2)),),  # s^2 = 2a
    b_square=(((1, 0, 0), Fraction(8)), ((2, 0, 0), Fraction(-16))),  # b^2 = 8a - 16a^2
)

WRONG_B_RELATIONS = Relations(
    s_square=(((1, 0, 0), Fraction(2)),),
    b_square=(((1, 0, 0), Fraction(8)),),  # deliberately wrong: b^2 = 8a
)


def _reduce(terms: TermMap, relations: Relations) -> TermMap:
    out: TermMap = {}
    stack = [(mono, coeff) for mono, coeff in terms.items()]
    while stack:
        (pa, ps, pb), c = stack.pop()
        if c == 0:
            continue
        if ps >= 2:
            for (ra, rs, rb), rc in relations.s_square:
                stack.append(((pa + ra, ps - 2 + rs, pb + rb), c * rc))
            continue
        if pb >= 2:
            for (ra, rs, rb), rc in relations.b_square:
                stack.append(((pa + ra, ps + rs, pb - 2 + rb), c * rc))
            continue
        key = (pa, ps, pb)
        acc = out.get(key, Fraction(0)) + c
        if acc == 0:
            out.pop(key, None)
        else:
            out[key] = acc
    return out


def _add(p: TermMap, q: TermMap) -> TermMap:
    out = dict(p)
    for key, c in q.items():
        acc = out.get(key, Fraction(0)) + c
        if acc == 0:
            out.pop(key, None)
        else:
            out[key] = acc
    return out


def _scale(p: TermMap, c: Fraction) -> TermMap:
    if c == 0:
        return {}
    return {key: v * c for key, v in p.items()}


def _mul(p: TermMap, q: TermMap, relations: Relations) -> TermMap:
    raw: TermMap = {}
    for (pa1, ps1, pb1), c1 in p.items():
        for (pa2, ps2, pb2), c2 in q.items():
            key = (pa1 + pa2, ps1 + ps2, pb1 + pb2)
            raw[key] = raw.get(key, Fraction(0)) + c1 * c2
    return _reduce(raw, relations)


@dataclass(frozen=True)
class ExactPoly:
    """Complexified ring element re + i*im with exact rational coefficients."""

    re: TermMap = field(default_factory=dict)
    im: TermMap = field(default_factory=dict)
    relations: Relations = DEFAULT_RELATIONS

    @staticmethod
    def constant(value, relations: Relations = DEFAULT_RELATIONS) -> "ExactPoly":
        c = Fraction(value)
        return ExactPoly({(0, 0, 0): c} if c != 0 else {}, {}, relations)

    def _coerce(self, other) -> "ExactPoly":
        if isinstance(other, ExactPoly):
            if other.relations != self.relations:
                raise ValueError("mixing polynomials with different ring relations")
            return other
        if isinstance(other, (int, Fraction)):
            return ExactPoly.constant(other, self.relations)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return ExactPoly(_add(self.re, o.re), _add(self.im, o.im), self.relations)

    __radd__ = __add__

    def __neg__(self):
        return ExactPoly(_scale(self.re, Fraction(-1)), _scale(self.im, Fraction(-1)), self.relations)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            return ExactPoly(_scale(self.re, c), _scale(self.im, c), self.relations)
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        rel = self.relations
        re = _add(_mul(self.re, o.re, rel), _scale(_mul(self.im, o.im, rel), Fraction(-1)))
        im = _add(_mul(self.re, o.im, rel), _mul(self.im, o.re, rel))
        return ExactPoly(re, im, rel)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only nonnegative integer powers are supported")
        out = ExactPoly.constant(1, self.relations)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    @property
    def is_zero(self) -> bool:
        return not self.re and not self.im

    def __str__(self) -> str:
        if self.is_zero:
            return "0"

        def render(terms: TermMap) -> str:
            parts = []
            for (pa, ps, pb), c in sorted(terms.items()):
                factors = [str(c)]
                for sym, p in (("a", pa), ("s", ps), ("b", pb)):
                    if p == 1:
                        factors.append(sym)
                    elif p > 1:
                        factors.append(f"{sym}^{p}")
                parts.append("*".join(factors))
            return " + ".join(parts) if parts else "0"

        if not self.im:
            return render(self.re)
        if not self.re:
            return f"i*({render(self.im)})"
        return f"({render(self.re)}) + i*({render(self.im)})"


def generators(relations: Relations = DEFAULT_RELATIONS):
    """The ring generators (a, s, b, i) and the unit, as ExactPoly values."""
    one = Fraction(1)
    a = ExactPoly({(1, 0, 0): one}, {}, relations)
    s = ExactPoly({(0, 1, 0): one}, {}, relations)
    b = ExactPoly({(0, 0, 1): one}, {}, relations)
    i = ExactPoly({}, {(0, 0, 0): one}, relations)
    unit = ExactPoly.constant(1, relations)
    return a, s, b, i, unit
