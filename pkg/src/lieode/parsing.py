"""Parsing and printing of scalar ODEs in quasi-linear normal form.

Accepted input shapes are ``y'' + <expr> = 0`` and ``y'' = <expr>`` (any
derivative order >= 2 on the left).  The parser builds a small expression
tree, lowers it to an exact rational function of the jet coordinates, clears
the denominator, and solves for the highest derivative.  Equations that are
not linear in their highest derivative are rejected.

Operator precedence: ^ binds tighter than unary minus, which binds tighter
than * and /, which bind tighter than + and -.  ^ takes a bare (possibly
negative) integer exponent; parenthesized exponents and chained ^ are
rejected so that y^(k) stays unambiguous — parenthesize the base instead,
as in (x^2)^3.  Implicit multiplication is rejected.  Derivative
markers are primes (up to four) or ``y^(k)``; ``y^2`` is a square while
``y^(2)`` is a second derivative.  exp and log are admitted only in point
transformation expressions, never in ODE text.
"""
from __future__ import annotations

import dataclasses
from fractions import Fraction
from typing import List, Optional, Tuple

from .errors import InputError, NotQuasiLinear, OdeSyntaxError, OrderTooLow
from .jets import JetPoly, jet_name, jet_order_of
from .polys import MPoly, _mono_key, var_rank
from .ratfunc import RatFunc

MAX_PRIMES = 4


# -- expression trees ---------------------------------------------------------


@dataclasses.dataclass(frozen=True)
class Num:
    value: Fraction
    pos: int = 0


@dataclasses.dataclass(frozen=True)
class Coord:
    index: int  # 0 = independent coordinate, 1 = dependent coordinate
    pos: int = 0


@dataclasses.dataclass(frozen=True)
class DerivY:
    order: int
    pos: int = 0


@dataclasses.dataclass(frozen=True)
class Neg:
    arg: "Expr"
    pos: int = 0


@dataclasses.dataclass(frozen=True)
class BinOp:
    op: str  # + - * /
    left: "Expr"
    right: "Expr"
    pos: int = 0


@dataclasses.dataclass(frozen=True)
class Pow:
    base: "Expr"
    exponent: int
    pos: int = 0


@dataclasses.dataclass(frozen=True)
class Call:
    func: str  # exp | log
    arg: "Expr"
    pos: int = 0


Expr = object


# -- tokenizer ----------------------------------------------------------------

_SYMBOLS = "+-*/^()="


def _tokenize(text: str) -> List[Tuple[str, str, int]]:
    out = []
    i, nchars = 0, len(text)
    while i < nchars:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < nchars and text[j].isdigit():
                j += 1
            out.append(("int", text[i:j], i))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < nchars and (text[j].isalnum() or text[j] == "_"):
                j += 1
            out.append(("name", text[i:j], i))
            i = j
            continue
        if ch == "'":
            j = i
            while j < nchars and text[j] == "'":
                j += 1
            out.append(("primes", text[i:j], i))
            i = j
            continue
        if ch in _SYMBOLS:
            out.append((ch, ch, i))
            i += 1
            continue
        raise OdeSyntaxError(f"unexpected character {ch!r}", i)
    out.append(("end", "", nchars))
    return out


class _Parser:
    def __init__(self, text: str, coords: Tuple[str, str],
                 allow_funcs: bool, allow_derivatives: bool):
        self.text = text
        self.tokens = _tokenize(text)
        self.k = 0
        self.coords = coords
        self.allow_funcs = allow_funcs
        self.allow_derivatives = allow_derivatives

    def peek(self, ahead: int = 0):
        return self.tokens[min(self.k + ahead, len(self.tokens) - 1)]

    def take(self):
        t = self.tokens[self.k]
        if t[0] != "end":
            self.k += 1
        return t

    def expect(self, kind: str, what: str):
        t = self.take()
        if t[0] != kind:
            raise OdeSyntaxError(f"expected {what}", t[2])
        return t

    # expr := term (("+"|"-") term)*
    def expr(self):
        node = self.term()
        while self.peek()[0] in "+-":
            op, _, pos = self.take()
            node = BinOp(op, node, self.term(), pos)
        return node

    # term := unary (("*"|"/") unary)*
    def term(self):
        node = self.unary()
        while self.peek()[0] in "*/":
            op, _, pos = self.take()
            node = BinOp(op, node, self.unary(), pos)
        return node

    # unary := "-" unary | factor
    def unary(self):
        if self.peek()[0] == "-":
            _, _, pos = self.take()
            return Neg(self.unary(), pos)
        return self.factor()

    # factor := atom ("^" exponent)*, right-associative
    def factor(self):
        base = self.atom()
        if self.peek()[0] == "^":
            _, _, pos = self.take()
            if self.peek()[0] == "(":
                raise OdeSyntaxError(
                    "parenthesized exponents are not allowed; "
                    "derivative markers y^(k) attach to bare y only", self.peek()[2])
            exp = self._exponent()
            rest = base
            # fold further ^ right-associatively into the integer exponent
            while self.peek()[0] == "^":
                raise OdeSyntaxError("chained ^ is ambiguous; parenthesize", self.peek()[2])
            return Pow(rest, exp, pos)
        return base

    def _exponent(self) -> int:
        neg = False
        if self.peek()[0] == "-":
            self.take()
            neg = True
        t = self.expect("int", "an integer exponent")
        val = int(t[1])
        return -val if neg else val

    def atom(self):
        kind, val, pos = self.peek()
        if kind == "int":
            self.take()
            return Num(Fraction(int(val)), pos)
        if kind == "(":
            self.take()
            node = self.expr()
            self.expect(")", "a closing parenthesis")
            return node
        if kind == "name":
            self.take()
            if val in ("exp", "log"):
                if not self.allow_funcs:
                    raise OdeSyntaxError(
                        f"{val} is only allowed in transformation expressions", pos)
                self.expect("(", f"'(' after {val}")
                arg = self.expr()
                self.expect(")", "a closing parenthesis")
                return Call(val, arg, pos)
            if val == self.coords[0]:
                if self.peek()[0] == "primes":
                    raise OdeSyntaxError(
                        f"derivative markers attach to {self.coords[1]} only", self.peek()[2])
                return Coord(0, pos)
            if val == self.coords[1]:
                return self._dependent(pos)
            raise OdeSyntaxError(f"unknown symbol {val!r}", pos)
        raise OdeSyntaxError("expected a number, coordinate or parenthesis", pos)

    def _dependent(self, pos: int):
        kind, val, p2 = self.peek()
        if kind == "primes":
            self.take()
            order = len(val)
            if order > MAX_PRIMES:
                raise OdeSyntaxError(
                    f"at most {MAX_PRIMES} primes; write {self.coords[1]}^({order})", p2)
            if not self.allow_derivatives:
                raise OdeSyntaxError("derivatives are not allowed here", p2)
            return DerivY(order, pos)
        if kind == "^" and self.peek(1)[0] == "(":
            self.take()  # ^
            self.take()  # (
            t = self.expect("int", "a derivative order")
            order = int(t[1])
            self.expect(")", "a closing parenthesis")
            if not self.allow_derivatives:
                raise OdeSyntaxError("derivatives are not allowed here", p2)
            if order == 0:
                return Coord(1, pos)
            return DerivY(order, pos)
        return Coord(1, pos)


def parse_expr_tree(text: str, coords: Tuple[str, str] = ("x", "y"), *,
                    allow_funcs: bool = False,
                    allow_derivatives: bool = True):
    """Parse one expression into a tree; raises OdeSyntaxError with position."""
    p = _Parser(text, coords, allow_funcs, allow_derivatives)
    node = p.expr()
    t = p.peek()
    if t[0] != "end":
        raise OdeSyntaxError(f"unexpected {t[1]!r} (implicit multiplication "
                             "is not supported)", t[2])
    return node


# -- lowering to rational jet functions ----------------------------------------


def lower_jet(node) -> RatFunc:
    """Lower a function-free tree to a RatFunc in the jet coordinates."""
    if isinstance(node, Num):
        return RatFunc.const(node.value)
    if isinstance(node, Coord):
        return RatFunc.variable("x" if node.index == 0 else "y")
    if isinstance(node, DerivY):
        return RatFunc.variable(jet_name(node.order))
    if isinstance(node, Neg):
        return -lower_jet(node.arg)
    if isinstance(node, Pow):
        base = lower_jet(node.base)
        if node.exponent < 0 and base.is_zero():
            raise InputError("zero raised to a negative power")
        return base ** node.exponent
    if isinstance(node, BinOp):
        a, b = lower_jet(node.left), lower_jet(node.right)
        if node.op == "+":
            return a + b
        if node.op == "-":
            return a - b
        if node.op == "*":
            return a * b
        if b.is_zero():
            raise InputError("division by zero in input expression")
        return a / b
    if isinstance(node, Call):
        raise InputError(f"{node.func} is not allowed in ODE text")
    raise TypeError(f"unexpected node {node!r}")


# -- the ODE type --------------------------------------------------------------


@dataclasses.dataclass(frozen=True)
class OdeSpec:
    """y^(n) + f(x, y, ..., y^(n-1)) = 0 with rational f."""

    n: int
    f: JetPoly

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("order must be at least 1")
        if self.f.tight_order() > self.n - 1:
            raise ValueError("f involves the highest derivative")

    def __str__(self) -> str:
        return print_ode(self)


def parse_ode(text: str) -> OdeSpec:
    p = _Parser(text, ("x", "y"), allow_funcs=False, allow_derivatives=True)
    lhs = p.expr()
    p.expect("=", "'='")
    rhs = p.expr()
    t = p.peek()
    if t[0] != "end":
        raise OdeSyntaxError(f"unexpected {t[1]!r} after the equation", t[2])
    rf = lower_jet(lhs) - lower_jet(rhs)
    num = rf.num
    if num.is_zero():
        raise OrderTooLow("equation reduces to 0 = 0")
    n = max((jet_order_of(v) for v in num.vars), default=-1)
    if n < 2:
        raise OrderTooLow(
            f"highest derivative has order {max(n, 0)}; certification needs order >= 2")
    top = jet_name(n)
    if num.degree_in(top) != 1:
        raise NotQuasiLinear(
            f"equation is nonlinear in its highest derivative y^({n})")
    low, lead = num.coeffs_in(top)
    f = RatFunc(low) / RatFunc(lead)
    return OdeSpec(n, JetPoly(f))


# -- printing -------------------------------------------------------------------


def deriv_marker(k: int, name: str = "y") -> str:
    if k == 0:
        return name
    if 1 <= k <= MAX_PRIMES:
        return name + "'" * k
    return f"{name}^({k})"


def _display_var(v: str) -> str:
    k = jet_order_of(v)
    if k >= 0:
        return deriv_marker(k)
    if v == "x":
        return "x"
    raise ValueError(f"variable {v!r} has no surface syntax")


def _fmt_term(coeff: Fraction, mono, names) -> str:
    pieces = []
    c = abs(coeff)
    vars_part = []
    for v, e in zip(names, mono):
        if not e:
            continue
        d = _display_var(v)
        if e == 1:
            vars_part.append(d)
        elif d in ("x", "y"):
            vars_part.append(f"{d}^{e}")
        else:
            vars_part.append(f"({d})^{e}")
    if not vars_part:
        pieces.append(str(c))
    else:
        if c != 1:
            pieces.append(str(c))
        pieces.extend(vars_part)
    return "*".join(pieces)


def format_mpoly(p: MPoly) -> str:
    if p.is_zero():
        return "0"
    monos = sorted(p.terms, key=_mono_key, reverse=True)
    out = []
    for i, m in enumerate(monos):
        c = p.terms[m]
        body = _fmt_term(c, m, p.vars)
        if i == 0:
            out.append(f"-{body}" if c < 0 else body)
        else:
            out.append(f" - {body}" if c < 0 else f" + {body}")
    return "".join(out)


def _den_needs_parens(p: MPoly) -> bool:
    if len(p.terms) != 1:
        return True
    (mono, c), = p.terms.items()
    nvars = sum(1 for e in mono if e)
    return c != 1 or nvars != 1


def format_ratfunc(r: RatFunc) -> str:
    num_s = format_mpoly(r.num)
    if r.den == MPoly.const(1):
        return num_s
    if len(r.num.terms) > 1:
        num_s = f"({num_s})"
    den_s = format_mpoly(r.den)
    if _den_needs_parens(r.den):
        den_s = f"({den_s})"
    return f"{num_s}/{den_s}"


def format_jetpoly(p: JetPoly) -> str:
    return format_ratfunc(p.expr)


def print_ode(o: OdeSpec) -> str:
    head = deriv_marker(o.n)
    if o.f.is_zero():
        return f"{head} = 0"
    s = format_ratfunc(o.f.expr)
    if s.startswith("-"):
        return f"{head} - {s[1:]} = 0"
    return f"{head} + {s} = 0"
