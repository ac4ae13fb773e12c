"""Normalized rational functions over Q.

A RatFunc is a pair of MPoly values num/den with den != 0, gcd(num, den) = 1
and the denominator's graded-lex leading coefficient equal to 1.  Under that
normalization the representation of a value is unique, so ``==`` decides
mathematical equality.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Optional, Union

from .errors import DegenerateInput
from .polys import MPoly, divexact, gcd, lcm

Scalar = Union[int, Fraction]


class RatFunc:
    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if isinstance(num, (int, Fraction)):
            num = MPoly.const(num)
        if den is None:
            den = MPoly.const(1)
        elif isinstance(den, (int, Fraction)):
            den = MPoly.const(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            num, den = MPoly.zero(), MPoly.const(1)
        else:
            g = gcd(num, den)
            if not (g.is_const() and g.as_const() == 1):
                num = divexact(num, g)
                den = divexact(den, g)
            lc = den.leading_coeff()
            if lc != 1:
                inv = 1 / lc
                num = num * inv
                den = den * inv
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, *a):  # pragma: no cover - guard
        raise AttributeError("RatFunc is immutable")

    # -- constructors --------------------------------------------------------

    @staticmethod
    def zero() -> "RatFunc":
        return RatFunc(MPoly.zero())

    @staticmethod
    def one() -> "RatFunc":
        return RatFunc(MPoly.const(1))

    @staticmethod
    def const(c: Scalar) -> "RatFunc":
        return RatFunc(MPoly.const(c))

    @staticmethod
    def variable(name: str) -> "RatFunc":
        return RatFunc(MPoly.variable(name))

    # -- queries --------------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_const(self) -> bool:
        return self.num.is_const() and self.den.is_const()

    def as_const(self) -> Fraction:
        if not self.is_const():
            raise ValueError("not a constant")
        return self.num.as_const() / self.den.as_const()

    def variables(self) -> tuple:
        return tuple(sorted(set(self.num.vars) | set(self.den.vars),
                            key=lambda v: (v not in self.num.vars, v)))

    def free_of(self, name: str) -> bool:
        return name not in self.num.vars and name not in self.den.vars

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = RatFunc.const(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __repr__(self) -> str:
        if self.den == MPoly.const(1):
            return repr(self.num)
        return f"({self.num!r})/({self.den!r})"

    # -- arithmetic -------------------------------------------------------------

    @staticmethod
    def _coerce(v) -> Optional["RatFunc"]:
        if isinstance(v, RatFunc):
            return v
        if isinstance(v, (int, Fraction)):
            return RatFunc.const(v)
        if isinstance(v, MPoly):
            return RatFunc(v)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.is_zero():
            return o
        if o.is_zero():
            return self
        g = gcd(self.den, o.den)
        if g.is_const():
            return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)
        db = divexact(self.den, g)
        dd = divexact(o.den, g)
        return RatFunc(self.num * dd + o.num * db, db * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.is_zero() or o.is_zero():
            return RatFunc.zero()
        g1 = gcd(self.num, o.den)
        g2 = gcd(o.num, self.den)
        n1 = self.num if g1.is_const() else divexact(self.num, g1)
        d2 = o.den if g1.is_const() else divexact(o.den, g1)
        n2 = o.num if g2.is_const() else divexact(o.num, g2)
        d1 = self.den if g2.is_const() else divexact(self.den, g2)
        return RatFunc(n1 * n2, d1 * d2)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return self * RatFunc(o.den, o.num)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        return o / self

    def __pow__(self, k: int):
        if k == 0:
            return RatFunc.one()
        if k < 0:
            if self.is_zero():
                raise ZeroDivisionError("negative power of zero")
            return RatFunc(self.den ** (-k), self.num ** (-k))
        return RatFunc(self.num ** k, self.den ** k)

    # -- calculus -----------------------------------------------------------------

    def derivative(self, name: str) -> "RatFunc":
        """Formal partial derivative with respect to one variable."""
        dn = self.num.derivative(name)
        dd = self.den.derivative(name)
        if dd.is_zero():
            return RatFunc(dn, self.den)
        return RatFunc(dn * self.den - self.num * dd, self.den * self.den)

    def subs_values(self, values: Mapping[str, Fraction]) -> "RatFunc":
        den = self.den.subs_values(values)
        if den.is_zero():
            raise DegenerateInput("denominator vanishes at substitution point")
        return RatFunc(self.num.subs_values(values), den)

    def eval_all(self, values: Mapping[str, Fraction]) -> Fraction:
        den = self.den.eval_all(values)
        if den == 0:
            raise DegenerateInput("denominator vanishes at evaluation point")
        return self.num.eval_all(values) / den

    def subs_var(self, name: str, value: "RatFunc") -> "RatFunc":
        """Substitute a rational function for one variable (Horner scheme)."""
        if self.free_of(name):
            return self

        def horner(p: MPoly) -> "RatFunc":
            coeffs = p.coeffs_in(name)
            acc = RatFunc.zero()
            for c in reversed(coeffs):
                acc = acc * value + RatFunc(c)
            return acc

        den = horner(self.den)
        if den.is_zero():
            raise DegenerateInput(
                f"denominator becomes identically zero after substituting {name}")
        return horner(self.num) / den


def common_denominator(fns) -> MPoly:
    """lcm of the denominators of an iterable of RatFunc."""
    d = MPoly.const(1)
    for f in fns:
        d = lcm(d, f.den)
    return d
