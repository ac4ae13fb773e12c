"""Characteristic-polynomial recovery from the symmetry algebra.

For a linearizable equation whose symmetry dimension is m = n+2, the derived
algebra D is abelian of dimension n (the pushed-forward solution fields) and
the two-dimensional factor space L/D acts on D by the bracket.  The action
matrix of a representative that acts non-trivially has eigenvalues k*lambda_i
+ b for the characteristic roots lambda_i of any constant-coefficient linear
target, with unknown k != 0 and b.  Its characteristic polynomial therefore
determines the target's characteristic polynomial exactly up to the affine
root map lambda -> k*lambda + b, and that ambiguity class is decided by
rational invariants of the centered coefficients -- no root extraction.

Equality of classes: center both polynomials (shift roots so their sum is 0),
compare the supports {j : c_j != 0} of the centered coefficients c_j (the
coefficient of z^(n-j), j = 2..n), and compare the scale-normalized tuple
c_j / T^(j/g), where g = gcd(support) and T is the deterministic product
prod c_j^(x_j) with sum x_j * (j/g) = 1.  The tuple is invariant under
c_j -> k^j c_j and complete: equal tuples yield k as a g-th root of the
T-ratio, which always exists over the complex numbers.
"""
from __future__ import annotations

import dataclasses
import math
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import InternalInvariantError
from .liealgebra import LieAlgebraTable, Subalgebra
from .linalg import Mat, Vec, charpoly as matrix_charpoly, in_span, is_scalar_matrix, solve
from .parsing import deriv_marker

_0 = Fraction(0)
_1 = Fraction(1)


@dataclasses.dataclass(frozen=True)
class CharPoly:
    """Monic polynomial z^n + a_{n-1} z^{n-1} + ... + a_0, ascending coeffs."""

    coeffs: Tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs",
                           tuple(Fraction(c) for c in self.coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs)

    @staticmethod
    def from_roots(roots: Sequence[Fraction]) -> "CharPoly":
        acc = [_1]
        for r in roots:
            r = Fraction(r)
            nxt = [_0] * (len(acc) + 1)
            for i, c in enumerate(acc):      # acc * (z - r), ascending order
                nxt[i + 1] += c
                nxt[i] -= c * r
            acc = nxt
        return CharPoly(tuple(acc[:-1]))

    def full_coeffs(self) -> List[Fraction]:
        return list(self.coeffs) + [_1]

    def __str__(self) -> str:
        n = self.degree
        parts = ["z^%d" % n if n > 1 else "z"]
        for k in range(n - 1, -1, -1):
            a = self.coeffs[k]
            if not a:
                continue
            sign = " + " if a > 0 else " - "
            mag = abs(a)
            if k == 0:
                parts.append(sign + str(mag))
            else:
                zk = "z^%d" % k if k > 1 else "z"
                parts.append(sign + (zk if mag == 1 else "%s*%s" % (mag, zk)))
        return "".join(parts)


def root_affine_image(p: CharPoly, k: Fraction, b: Fraction) -> CharPoly:
    """The monic polynomial whose roots are k*lambda + b over p's roots."""
    k = Fraction(k)
    b = Fraction(b)
    if k == 0:
        raise ValueError("root scale k must be nonzero")
    n = p.degree
    # q(z) = k^n * p((z - b)/k) = sum_j a_j k^(n-j) (z - b)^j,  a_n = 1
    out = [_0] * (n + 1)
    full = p.full_coeffs()
    for j, a in enumerate(full):
        if not a:
            continue
        scale = a * k ** (n - j)
        # (z - b)^j expanded ascending
        for i in range(j + 1):
            out[i] += scale * math.comb(j, i) * (-b) ** (j - i)
    assert out[n] == 1
    return CharPoly(tuple(out[:n]))


def centered(p: CharPoly) -> CharPoly:
    """Shift roots so their sum vanishes (kills the z^{n-1} coefficient)."""
    n = p.degree
    if n == 0:
        return p
    shift = p.coeffs[n - 1] / n   # roots move by +a_{n-1}/n
    q = root_affine_image(p, _1, shift)
    if n >= 2 and q.coeffs[n - 1] != 0:
        raise InternalInvariantError("centering failed to kill the trace term")
    return q


def _extended_gcd_combination(values: Sequence[int]) -> Tuple[int, Dict[int, int]]:
    """gcd of values plus integer weights: sum w[i]*values[i] = gcd."""
    g = 0
    weights: Dict[int, int] = {}
    for idx, v in enumerate(values):
        if g == 0:
            g, s, t = v, 0, 1
        else:
            # extended Euclid for (g, v)
            a, b = g, v
            sa, ta, sb, tb = 1, 0, 0, 1
            while b:
                q, r = divmod(a, b)
                a, b = b, r
                sa, sb = sb, sa - q * sb
                ta, tb = tb, ta - q * tb
            g, s, t = a, sa, ta
        for j in weights:
            weights[j] *= s
        weights[idx] = t
    return g, weights


@dataclasses.dataclass(frozen=True)
class AffineClass:
    """Complete invariant of a spectrum under root maps lambda -> k*lambda + b.

    ``support`` lists the indices j (2..n) whose centered coefficient c_j is
    nonzero, and ``canonical`` the scale-normalized values c_j / T^(j/g);
    equality of (degree, support, canonical) is equivalence.  The centered
    representative, the zero pattern, and the anchored ratios
    I_j = c_j^{j0} / c_{j0}^j (j0 = min support) ride along for reporting.
    """

    degree: int
    support: Tuple[int, ...]
    canonical: Tuple[Fraction, ...]
    centered_coeffs: Tuple[Fraction, ...] = dataclasses.field(compare=False)
    zero_pattern: Tuple[int, ...] = dataclasses.field(compare=False)
    anchored_invariants: Tuple[Tuple[int, Fraction], ...] = dataclasses.field(compare=False)

    @property
    def is_trivial(self) -> bool:
        """True when the class is that of z^n (all centered coefficients 0)."""
        return not self.support


def affine_class(p: CharPoly) -> AffineClass:
    n = p.degree
    q = centered(p)
    # c_j = coefficient of z^(n-j), j = 2..n
    c = {j: q.coeffs[n - j] for j in range(2, n + 1)}
    support = tuple(j for j in range(2, n + 1) if c[j])
    zero_pattern = tuple(j for j in range(2, n + 1) if not c[j])
    canonical: Tuple[Fraction, ...] = ()
    if support:
        g = math.gcd(*support)
        reduced = [j // g for j in support]
        gg, weights = _extended_gcd_combination(reduced)
        assert gg == 1
        T = _1
        for idx, j in enumerate(support):
            w = weights.get(idx, 0)
            if w:
                T *= c[j] ** w
        canonical = tuple(c[j] / T ** (j // g) for j in support)
    j0 = support[0] if support else None
    anchored = tuple((j, c[j] ** j0 / c[j0] ** j)
                     for j in support[1:]) if support else ()
    return AffineClass(n, support, canonical, tuple(q.coeffs),
                       zero_pattern, anchored)


REASON_EQUIVALENT = "equivalent"
REASON_DEGREE = "degree-mismatch"
REASON_PATTERN = "zero-pattern-mismatch"
REASON_SCALE = "scale-invariant-mismatch"


def classify_pair(p: CharPoly, q: CharPoly) -> Tuple[bool, str]:
    if p.degree != q.degree:
        return False, REASON_DEGREE
    a = affine_class(p)
    b = affine_class(q)
    if a.support != b.support:
        return False, REASON_PATTERN
    if a.canonical != b.canonical:
        return False, REASON_SCALE
    return True, REASON_EQUIVALENT


def affine_equivalent(p: CharPoly, q: CharPoly) -> bool:
    return classify_pair(p, q)[0]


# -- Lie-algebra side: factor space and adjoint action ------------------------


def factor_space(L: LieAlgebraTable, D: Subalgebra) -> Tuple[Vec, Vec]:
    """Two standard basis vectors completing D's basis to a basis of L."""
    if L.m - D.dimension != 2:
        raise ValueError("factor space requires codimension 2, got %d"
                         % (L.m - D.dimension))
    reps: List[Vec] = []
    span = [list(v) for v in D.basis]
    for i in range(L.m):
        cand = [_1 if t == i else _0 for t in range(L.m)]
        if not in_span(cand, span):
            reps.append(cand)
            span.append(cand)
            if len(reps) == 2:
                return reps[0], reps[1]
    raise InternalInvariantError("failed to complete derived basis to the full algebra")


def adjoint_on_derived(L: LieAlgebraTable, D: Subalgebra, e: Sequence[Fraction]) -> Mat:
    """Matrix of [e, .] on D's basis; column i holds the coords of [e, d_i]."""
    if in_span(e, D.basis):
        raise ValueError("representative lies in the derived algebra")
    r = D.dimension
    cols: List[Vec] = []
    mat_T = [list(row) for row in zip(*D.basis)] if r else []
    for d in D.basis:
        w = L.bracket(e, d)
        coords = solve(mat_T, w)
        if coords is None:
            raise InternalInvariantError(
                "bracket with the derived algebra leaves its span "
                "(ideal property violated)")
        cols.append(coords)
    return [[cols[j][i] for j in range(r)] for i in range(r)]


def recovery_details(L: LieAlgebraTable, D: Subalgebra):
    """(representative, action matrix, char poly) for the first non-scalar action."""
    e1, e2 = factor_space(L, D)
    e3 = [a + b for a, b in zip(e1, e2)]
    for e in (e1, e2, e3):
        A = adjoint_on_derived(L, D, e)
        if not is_scalar_matrix(A):
            return e, A, CharPoly(tuple(matrix_charpoly(A)))
    raise InternalInvariantError(
        "all factor-space candidates act as scalars; an all-equal spectrum "
        "belongs to the maximal class, not to m = n+2")


def recover_charpoly(L: LieAlgebraTable, D: Subalgebra) -> CharPoly:
    """Characteristic polynomial of the target, up to affine root maps."""
    return recovery_details(L, D)[2]


def trivial_class(n: int) -> AffineClass:
    """The class of z^n, i.e. of the equation u^(n) = 0."""
    return affine_class(CharPoly((_0,) * n))


def class_to_ode(c, n: Optional[int] = None) -> str:
    """Representative constant-coefficient linear ODE of a class.

    Accepts an AffineClass or a CharPoly; renders the centered representative
    as e.g. "u''' - u' = 0".
    """
    if isinstance(c, CharPoly):
        c = affine_class(c)
    coeffs = c.centered_coeffs
    n = c.degree if n is None else n
    if n != c.degree:
        raise ValueError("degree mismatch between class and requested order")
    parts = [deriv_marker(n, "u")]
    for k in range(n - 1, -1, -1):
        a = coeffs[k]
        if not a:
            continue
        term = deriv_marker(k, "u")
        mag = abs(a)
        if mag != 1:
            term = "%s*%s" % (mag, term)
        parts.append(("+ " if a > 0 else "- ") + term)
    return " ".join(parts) + " = 0"
