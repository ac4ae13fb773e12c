"""End-to-end analysis of one equation: parse, complete, certify, recover.

``analyze`` is the single entry point that the command-line interface wraps.
It runs the whole chain —

    determining system -> involutive completion -> series basis
    -> structure constants -> linearizability certificate
    -> (if constant-coefficients) characteristic-polynomial recovery

— and returns a ``RunReport`` carrying every intermediate object, so callers
can render as much or as little as they need.  The symmetry-dimension bounds
are asserted on every run; a violation is an engine bug, not bad input.
"""
from __future__ import annotations

import dataclasses
import time
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .determining import LinDiffPoly, LinDiffSystem, Slot, determining_system
from .involutive import InvolutiveSystem, Ranking, complete
from .liealgebra import (CASE_CONSTANT, CASE_NONCONSTANT, CASE_TRIVIAL,
                         Certificate, LieAlgebraTable, Point, Subalgebra,
                         assert_dimension_bounds, certify, derived_algebra,
                         series_basis, structure_constants)
from .linalg import Mat, Vec
from .parsing import OdeSpec, format_ratfunc, parse_ode, print_ode
from .recovery import (AffineClass, CharPoly, affine_class, class_to_ode,
                       recovery_details, trivial_class)

NOTE_NONCONSTANT = "nonconstant coefficients — recovery out of scope"


def format_equation(eq: LinDiffPoly, ranking=None) -> str:
    """Render one linear determining equation, highest slot first."""
    slots = sorted(eq, key=ranking.key if ranking else None, reverse=bool(ranking))
    parts = []
    for s in slots:
        c = format_ratfunc(eq[s])
        if c == "1":
            term = s.label()
        elif c == "-1":
            term = "-" + s.label()
        elif ("+" in c[1:]) or ("-" in c[1:]) or "/" in c:
            term = "(%s)*%s" % (c, s.label())
        else:
            term = "%s*%s" % (c, s.label())
        if parts and not term.startswith("-"):
            parts.append("+ " + term)
        elif parts:
            parts.append("- " + term[1:])
        else:
            parts.append(term)
    return " ".join(parts) + " = 0" if parts else "0 = 0"


@dataclasses.dataclass(frozen=True)
class RecoveryReport:
    """Constant-coefficient target, up to root maps lambda -> k*lambda + b.

    ``char_poly`` is a member of the recovered class (for the maximal
    symmetry case it is the canonical representative z^n itself);
    ``representative`` and ``action_matrix`` record the factor-space element
    whose adjoint action produced it, when one was needed.
    """

    char_poly: CharPoly
    affine: AffineClass
    representative_ode: str
    representative: Optional[Vec] = None
    action_matrix: Optional[Mat] = None

    def as_dict(self) -> dict:
        out = {
            "char_poly": [str(c) for c in self.char_poly.full_coeffs()],
            "affine_class": {
                "degree": self.affine.degree,
                "support": list(self.affine.support),
                "canonical_invariants": [
                    [j, str(v)] for j, v in self.affine.canonical],
                "trivial": self.affine.is_trivial,
            },
            "representative_ode": self.representative_ode,
        }
        if self.action_matrix is not None:
            out["action_matrix"] = [[str(v) for v in row]
                                    for row in self.action_matrix]
        return out


@dataclasses.dataclass(frozen=True)
class RunReport:
    """Everything one analysis run produced, from raw input to verdict."""

    ode: OdeSpec
    determining: LinDiffSystem
    involutive: InvolutiveSystem
    basis_point: Point
    truncation_order: int
    algebra: LieAlgebraTable
    derived: Subalgebra
    certificate: Certificate
    recovery: Optional[RecoveryReport]
    note: Optional[str]
    timings: Dict[str, float]

    @property
    def m(self) -> int:
        return self.algebra.m

    @property
    def n(self) -> int:
        return self.ode.n


def analyze(source,
            point: Optional[Point] = None,
            max_order: Optional[int] = None,
            ranking: Optional[Ranking] = None) -> RunReport:
    """Run the full decision chain on an equation (text or parsed form).

    ``point`` fixes the series expansion point instead of the automatic
    choice; ``max_order`` raises the Taylor truncation order above the
    minimum the completion dictates; ``ranking`` overrides the slot order
    used for the completion.
    """
    timings: Dict[str, float] = {}
    t_all = time.perf_counter()

    t = time.perf_counter()
    ode = parse_ode(source) if isinstance(source, str) else source
    timings["parse"] = time.perf_counter() - t

    t = time.perf_counter()
    detsys = determining_system(ode)
    timings["determining"] = time.perf_counter() - t

    t = time.perf_counter()
    inv = complete(detsys, ranking)
    timings["completion"] = time.perf_counter() - t
    assert_dimension_bounds(ode.n, inv.dimension)

    t = time.perf_counter()
    basis = series_basis(inv, point=point, N=max_order)
    timings["series"] = time.perf_counter() - t

    t = time.perf_counter()
    table = structure_constants(basis, inv)
    timings["structure"] = time.perf_counter() - t

    t = time.perf_counter()
    derived = derived_algebra(table)
    cert = certify(ode.n, table)
    timings["certify"] = time.perf_counter() - t

    recovery = None
    note = None
    t = time.perf_counter()
    if cert.case == CASE_TRIVIAL:
        cls = trivial_class(ode.n)
        recovery = RecoveryReport(
            char_poly=CharPoly((Fraction(0),) * ode.n),
            affine=cls,
            representative_ode=class_to_ode(cls))
    elif cert.case == CASE_CONSTANT:
        e, A, p = recovery_details(table, derived)
        recovery = RecoveryReport(
            char_poly=p,
            affine=affine_class(p),
            representative_ode=class_to_ode(p),
            representative=list(e),
            action_matrix=A)
    elif cert.case == CASE_NONCONSTANT:
        note = NOTE_NONCONSTANT
    timings["recovery"] = time.perf_counter() - t
    timings["total"] = time.perf_counter() - t_all

    return RunReport(ode=ode, determining=detsys, involutive=inv,
                     basis_point=basis[0].point if basis else (Fraction(0), Fraction(0)),
                     truncation_order=basis[0].N if basis else 0,
                     algebra=table, derived=derived, certificate=cert,
                     recovery=recovery, note=note, timings=timings)
