"""Oracle instance factory: push linear constant-coefficient ODEs through
point transformations.

Given a characteristic polynomial p (standing for the linear equation
u^(n) + a_{n-1} u^(n-1) + ... + a_0 u = 0) and a point transformation
u = psi(x, y), t = phi(x, y), the image equation in (x, y) is obtained by
the chain rule: along solution curves, u_{k+1} = D_x(u_k) / D_x(phi).
Substituting into the linear equation and solving for y^(n) (which always
appears linearly where the Jacobian is nonzero) yields an equation in the
accepted quasi-linear class, with a known ground truth: the image is
linearizable and, unless the source spectrum is an affine image of
{0, 1, ..., n-1} or a single repeated root, its certificate case is
constant-coefficients with recoverable class equal to the source's.

Transcendental building blocks (exp, log) are adjoined as fresh symbols
t1, t2, ... with recorded chain-rule partials, so all arithmetic stays in
exact rational functions; images are admitted into the corpus only when
every adjoined symbol cancels out of the final f.
"""
from __future__ import annotations

import dataclasses
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import InputError, InternalInvariantError, NonRationalInstance
from .jets import JetPoly, jet_name
from .parsing import (BinOp, Call, Coord, DerivY, Neg, Num, OdeSpec, Pow,
                      parse_expr_tree, print_ode)
from .ratfunc import RatFunc
from .recovery import CharPoly, affine_class, affine_equivalent

_0 = Fraction(0)
_1 = Fraction(1)


class TranscendentalRegistry:
    """Adjoined exp/log symbols with their chain-rule derivatives."""

    def __init__(self):
        self._entries: List[Tuple[str, RatFunc]] = []  # (kind, argument)
        self._partials: Dict[Tuple[str, str], RatFunc] = {}

    def adjoin(self, kind: str, arg: RatFunc) -> RatFunc:
        if kind == "log" and arg.is_zero():
            raise InputError("log of zero in transformation expression")
        for i, (k, a) in enumerate(self._entries):
            if k == kind and a == arg:
                return RatFunc.variable("t%d" % (i + 1))
        self._entries.append((kind, arg))
        return RatFunc.variable("t%d" % len(self._entries))

    def is_symbol(self, name: str) -> bool:
        return name[:1] == "t" and name[1:].isdigit()

    def partial(self, name: str, var: str) -> RatFunc:
        """d(symbol)/d(var) for var in {x, y}, chain rule included."""
        key = (name, var)
        got = self._partials.get(key)
        if got is None:
            kind, arg = self._entries[int(name[1:]) - 1]
            dnarg = self.partial_of(arg, var)
            if kind == "exp":
                got = RatFunc.variable(name) * dnarg
            else:
                got = dnarg / arg
            self._partials[key] = got
        return got

    def partial_of(self, f: RatFunc, var: str) -> RatFunc:
        """Full partial d f / d var treating adjoined symbols by chain rule."""
        out = f.derivative(var)
        for name in f.variables():
            if self.is_symbol(name):
                d = f.derivative(name)
                if not d.is_zero():
                    out = out + d * self.partial(name, var)
        return out

    def total_dx(self, f: RatFunc) -> RatFunc:
        """Total x-derivative on the jet space, chain rule over all symbols."""
        out = RatFunc.zero()
        for name in f.variables():
            d = f.derivative(name)
            if d.is_zero():
                continue
            if name == "x":
                out = out + d
            elif name == "y":
                out = out + d * RatFunc.variable(jet_name(1))
            elif self.is_symbol(name):
                dx_sym = (self.partial(name, "x")
                          + self.partial(name, "y") * RatFunc.variable(jet_name(1)))
                out = out + d * dx_sym
            elif name[:1] == "y":
                k = int(name[1:])
                out = out + d * RatFunc.variable(jet_name(k + 1))
            else:
                raise InternalInvariantError("unexpected variable %r" % name)
        return out


def lower_transformation_expr(node, reg: TranscendentalRegistry) -> RatFunc:
    """Lower a transformation expression tree, adjoining exp/log symbols."""
    if isinstance(node, Num):
        return RatFunc.const(node.value)
    if isinstance(node, Coord):
        return RatFunc.variable("x" if node.index == 0 else "y")
    if isinstance(node, DerivY):
        raise InputError("derivatives are not allowed in transformations")
    if isinstance(node, Neg):
        return -lower_transformation_expr(node.arg, reg)
    if isinstance(node, Pow):
        base = lower_transformation_expr(node.base, reg)
        if node.exponent < 0 and base.is_zero():
            raise InputError("zero raised to a negative power")
        return base ** node.exponent
    if isinstance(node, BinOp):
        a = lower_transformation_expr(node.left, reg)
        b = lower_transformation_expr(node.right, reg)
        if node.op == "+":
            return a + b
        if node.op == "-":
            return a - b
        if node.op == "*":
            return a * b
        if b.is_zero():
            raise InputError("division by zero in transformation expression")
        return a / b
    if isinstance(node, Call):
        arg = lower_transformation_expr(node.arg, reg)
        return reg.adjoin(node.func, arg)
    raise TypeError("unexpected node %r" % (node,))


def _has_symbols(f: RatFunc, reg: TranscendentalRegistry) -> bool:
    return any(reg.is_symbol(v) for v in f.variables())


@dataclasses.dataclass
class PointTransformation:
    """u = psi(x, y), t = phi(x, y), with symbolically nonzero Jacobian."""

    psi_text: str
    phi_text: str

    def __post_init__(self):
        self.registry = TranscendentalRegistry()
        psi_tree = parse_expr_tree(self.psi_text, allow_funcs=True,
                                   allow_derivatives=False)
        phi_tree = parse_expr_tree(self.phi_text, allow_funcs=True,
                                   allow_derivatives=False)
        self.psi = lower_transformation_expr(psi_tree, self.registry)
        self.phi = lower_transformation_expr(phi_tree, self.registry)
        reg = self.registry
        self.jacobian = (reg.partial_of(self.phi, "x") * reg.partial_of(self.psi, "y")
                         - reg.partial_of(self.phi, "y") * reg.partial_of(self.psi, "x"))
        if self.jacobian.is_zero():
            raise InputError("transformation Jacobian vanishes identically")

    @property
    def name(self) -> str:
        return "u=%s, t=%s" % (self.psi_text, self.phi_text)


@dataclasses.dataclass
class OracleInstance:
    ode: OdeSpec
    source_poly: CharPoly
    transformation: PointTransformation
    expected_case: str  # "trivial" | "constant-coefficients"

    @property
    def label(self) -> str:
        return "%s under %s" % (self.source_poly, self.transformation.name)


def is_staircase_class(p: CharPoly) -> bool:
    """True iff p's roots are an affine image of {0, 1, ..., n-1} or all equal.

    Exactly these spectra (arithmetic progressions, including the degenerate
    all-equal case) make the linear equation point-equivalent to u^(n) = 0:
    t = e^(d x), u = y e^(-a x) maps the solution span of the AP spectrum
    {a, a+d, ...} onto polynomials of degree < n.  Degree-2 spectra are
    always such an image, matching the classical fact that every linear
    second-order equation is equivalent to the trivial one.
    """
    n = p.degree
    if affine_class(p).is_trivial:
        return True
    staircase = CharPoly.from_roots([Fraction(i) for i in range(n)])
    return affine_equivalent(p, staircase)


def push_linear(p: CharPoly, T: PointTransformation) -> OracleInstance:
    """Image of the linear equation with characteristic polynomial p under T."""
    n = p.degree
    if n < 2:
        raise InputError("source equation must have order at least 2")
    reg = T.registry
    dphi = reg.total_dx(T.phi)
    if dphi.is_zero():
        raise InputError("transformation time variable is constant on solutions")
    u = [T.psi]
    for _ in range(n):
        u.append(reg.total_dx(u[-1]) / dphi)
    full = p.full_coeffs()
    eq = RatFunc.zero()
    for k, a in enumerate(full):
        if a:
            eq = eq + RatFunc.const(a) * u[k]
    top = jet_name(n)
    num = eq.num
    if num.degree_in(top) != 1:
        raise InternalInvariantError(
            "image equation is not linear in the highest derivative")
    low, lead = num.coeffs_in(top)
    if lead.is_zero():
        raise InternalInvariantError(
            "coefficient of the highest derivative vanished identically")
    f = RatFunc(low, lead)  # the reduction cancels shared transcendental factors
    if _has_symbols(f, reg):
        raise NonRationalInstance(
            "image of %s under %s is outside the rational class"
            % (p, T.name))
    if not f.free_of(top):
        raise InternalInvariantError("highest derivative failed to isolate")
    ode = OdeSpec(n, JetPoly(f))
    case = "trivial" if is_staircase_class(p) else "constant-coefficients"
    return OracleInstance(ode, p, T, case)


def pulled_back_generator(T: PointTransformation, tau_text: str, mu_text: str
                          ) -> Optional[Tuple[RatFunc, RatFunc]]:
    """Pull the target-side generator tau(t,u) d_t + mu(t,u) d_u back to (x, y).

    Returns (xi, eta), or None when the pullback leaves the rational class
    (callers must treat None as "check skipped", never as success).
    """
    reg = T.registry
    tau = _lower_target_function(tau_text, T, reg)
    mu = _lower_target_function(mu_text, T, reg)
    J = T.jacobian
    psi_x = reg.partial_of(T.psi, "x")
    psi_y = reg.partial_of(T.psi, "y")
    phi_x = reg.partial_of(T.phi, "x")
    phi_y = reg.partial_of(T.phi, "y")
    xi = (tau * psi_y - mu * phi_y) / J
    eta = (mu * phi_x - tau * psi_x) / J
    if _has_symbols(xi, reg) or _has_symbols(eta, reg):
        return None
    return xi, eta


def _lower_target_function(text: str, T: PointTransformation,
                           reg: TranscendentalRegistry) -> RatFunc:
    tree = parse_expr_tree(text, coords=("t", "u"), allow_funcs=False,
                           allow_derivatives=False)
    f = lower_jet_in_target(tree)
    return f.subs_var("t", T.phi).subs_var("u", T.psi)


def lower_jet_in_target(node) -> RatFunc:
    if isinstance(node, Num):
        return RatFunc.const(node.value)
    if isinstance(node, Coord):
        return RatFunc.variable("t" if node.index == 0 else "u")
    if isinstance(node, Neg):
        return -lower_jet_in_target(node.arg)
    if isinstance(node, Pow):
        return lower_jet_in_target(node.base) ** node.exponent
    if isinstance(node, BinOp):
        a = lower_jet_in_target(node.left)
        b = lower_jet_in_target(node.right)
        if node.op == "+":
            return a + b
        if node.op == "-":
            return a - b
        if node.op == "*":
            return a * b
        if b.is_zero():
            raise InputError("division by zero in generator expression")
        return a / b
    if isinstance(node, DerivY):
        raise InputError("derivatives are not allowed in generator expressions")
    raise TypeError("unexpected node %r" % (node,))


def shipped_transformations() -> List[PointTransformation]:
    """The deterministic transformation list used for the oracle corpus."""
    return [
        PointTransformation("y", "x"),
        PointTransformation("exp(y)", "x"),
        PointTransformation("y", "exp(x)"),
        PointTransformation("1/y", "x"),
        PointTransformation("y/x", "1/x"),
    ]


def corpus_sources() -> List[CharPoly]:
    """Rational-root source polynomials of degrees 2 through 4."""
    root_sets = [
        [0, 0], [1, -1], [1, 1], [0, 3],
        [0, 0, 0], [-1, 0, 1], [0, 1, 1], [-1, 1, 2],
        [0, 0, 0, 0], [-1, 0, 0, 1], [-1, 0, 1, 2], [-1, 0, 1, 3],
    ]
    return [CharPoly.from_roots([Fraction(r) for r in roots])
            for roots in root_sets]


def default_corpus() -> List[OracleInstance]:
    """Every admissible (source, transformation) image, deterministic order."""
    out: List[OracleInstance] = []
    for T in shipped_transformations():
        for p in corpus_sources():
            try:
                out.append(push_linear(p, T))
            except NonRationalInstance:
                continue
    return out
