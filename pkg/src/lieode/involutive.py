"""Completion of linear PDE systems to an involutive (passive) form.

The determining equations form a linear homogeneous system in two unknown
functions of (x, y) with rational-function coefficients.  This module brings
such a system to a canonical solved form with respect to a Riquier ranking of
the derivative slots:

* every equation is solved for its highest slot (coefficient one),
* no equation contains any derivative of another equation's leading slot,
* every cross-derivative (integrability condition) of two equations with
  leading slots on the same unknown reduces to zero.

Reduction eliminates a slot by differentiating the equation solved for a
lower slot and subtracting; since the ranking is stable under differentiation
and every non-leading slot ranks below the lead, each step replaces a slot by
strictly lower ones, so normal forms terminate.  Completion is the linear
Buchberger loop: fully reduce an equation, insert it, requeue any equation
whose lead became reducible, re-reduce the survivors' tails, then process
cross-derivative pairs until none produces anything new.  Each insertion
strictly enlarges the cone of leading slots, so Dickson's lemma bounds the
number of insertions and the loop terminates.

The parametric slots (those outside the cone of the leading slots) index the
free Taylor data of the solution space; their count is its dimension.
"""
from __future__ import annotations

import dataclasses
import itertools
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .determining import ETA, XI, LinDiffPoly, LinDiffSystem, Slot
from .errors import InternalInvariantError
from .ratfunc import RatFunc


@dataclasses.dataclass(frozen=True)
class Ranking:
    """Total order on slots given by a key function, highest key = highest slot.

    A Riquier ranking must compare two derivatives of the same unknown the
    same way for every unknown; both shipped rankings guarantee that by
    comparing the multi-index before the unknown tag.
    """

    name: str
    key: Callable[[Slot], tuple]

    def max_slot(self, slots) -> Slot:
        return max(slots, key=self.key)

    def sorted(self, slots, reverse: bool = False) -> List[Slot]:
        return sorted(slots, key=self.key, reverse=reverse)


def default_ranking() -> Ranking:
    """Order by total derivative order, then x-degree, then xi < eta."""
    return Ranking("order,xdeg,xi<eta",
                   lambda s: (s.order, s.dx, 0 if s.unknown == XI else 1))


def alt_ranking() -> Ranking:
    """Order by total order, then y-degree, then eta < xi (for cross-checks)."""
    return Ranking("order,ydeg,eta<xi",
                   lambda s: (s.order, s.dy, 0 if s.unknown == ETA else 1))


# -- single equations -----------------------------------------------------------


def lin_derive(eq: LinDiffPoly, var: str) -> LinDiffPoly:
    """Differentiate an equation with respect to x or y (product rule)."""
    out: LinDiffPoly = {}

    def put(s, v):
        old = out.get(s)
        v = v if old is None else old + v
        if v.is_zero():
            out.pop(s, None)
        else:
            out[s] = v

    step = (1, 0) if var == "x" else (0, 1)
    for s, c in eq.items():
        dc = c.derivative(var)
        if not dc.is_zero():
            put(s, dc)
        put(s.derive(*step), c)
    return out


class _Eq:
    """Completion-internal equation: monic solved form plus derivative cache."""

    __slots__ = ("terms", "lead", "ident", "_dcache")

    def __init__(self, terms: LinDiffPoly, lead: Slot, ident: int):
        self.terms = terms
        self.lead = lead
        self.ident = ident
        self._dcache: Dict[Tuple[int, int], LinDiffPoly] = {(0, 0): terms}

    def derived(self, ddx: int, ddy: int) -> LinDiffPoly:
        key = (ddx, ddy)
        got = self._dcache.get(key)
        if got is not None:
            return got
        if ddx:
            base = self.derived(ddx - 1, ddy)
            val = lin_derive(base, "x")
        else:
            base = self.derived(ddx, ddy - 1)
            val = lin_derive(base, "y")
        self._dcache[key] = val
        return val

    def invalidate(self):
        self._dcache = {(0, 0): self.terms}


def _monic(eq: LinDiffPoly, ranking: Ranking) -> Tuple[LinDiffPoly, Slot]:
    lead = ranking.max_slot(eq)
    c = eq[lead]
    if c == RatFunc.one():
        return dict(eq), lead
    return {s: v / c for s, v in eq.items()}, lead


def reduce(p: LinDiffPoly, eqs: Sequence[_Eq], ranking: Ranking) -> LinDiffPoly:
    """Full normal form of p modulo the solved equations."""
    work = {s: c for s, c in p.items() if not c.is_zero()}
    while True:
        best = None
        best_eq = None
        for s in work:
            for e in eqs:
                if e.lead.divides(s):
                    if best is None or ranking.key(s) > ranking.key(best):
                        best, best_eq = s, e
                    break
        if best is None:
            return work
        c = work[best]
        d = best_eq.derived(best.dx - best_eq.lead.dx, best.dy - best_eq.lead.dy)
        for t, v in d.items():
            nv = work.get(t, RatFunc.zero()) - c * v
            if nv.is_zero():
                work.pop(t, None)
            else:
                work[t] = nv
        if best in work:  # the lead of d is monic at `best`, must cancel
            raise InternalInvariantError("reduction failed to eliminate a slot")


def _cross(a: _Eq, b: _Eq) -> LinDiffPoly:
    """Difference of the two prolongations to the least common derivative."""
    lx = max(a.lead.dx, b.lead.dx)
    ly = max(a.lead.dy, b.lead.dy)
    da = a.derived(lx - a.lead.dx, ly - a.lead.dy)
    db = b.derived(lx - b.lead.dx, ly - b.lead.dy)
    out = dict(da)
    for s, c in db.items():
        v = out.get(s, RatFunc.zero()) - c
        if v.is_zero():
            out.pop(s, None)
        else:
            out[s] = v
    return out


@dataclasses.dataclass
class InvolutiveSystem:
    ranking: Ranking
    equations: List[LinDiffPoly]   # monic, inter-reduced, sorted by lead
    leads: List[Slot]
    parametric: List[Slot]

    _eqs: List[_Eq] = dataclasses.field(default=None, repr=False)
    _nf_cache: Dict[Slot, LinDiffPoly] = dataclasses.field(
        default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        if self._eqs is None:
            self._eqs = [_Eq(t, l, i)
                         for i, (t, l) in enumerate(zip(self.equations, self.leads))]

    @property
    def dimension(self) -> int:
        return len(self.parametric)

    def reduce(self, p: LinDiffPoly) -> LinDiffPoly:
        return reduce(p, self._eqs, self.ranking)

    def normal_form(self, slot: Slot) -> LinDiffPoly:
        """Express one slot through parametric slots on solutions."""
        got = self._nf_cache.get(slot)
        if got is None:
            got = self.reduce({slot: RatFunc.one()})
            self._nf_cache[slot] = got
        return dict(got)

    def max_parametric_order(self) -> int:
        return max((s.order for s in self.parametric), default=0)


def _parametric_slots(leads: Sequence[Slot], ranking: Ranking) -> List[Slot]:
    out = []
    for unk in (XI, ETA):
        mine = [s for s in leads if s.unknown == unk]
        ax = min((s.dx for s in mine if s.dy == 0), default=None)
        ay = min((s.dy for s in mine if s.dx == 0), default=None)
        if ax is None or ay is None:
            raise InternalInvariantError(
                "symmetry algebra is not finite-dimensional; "
                "this cannot happen for equations of order two or higher")
        for i in range(ax):
            for j in range(ay):
                s = Slot(unk, i, j)
                if not any(l.divides(s) for l in mine):
                    out.append(s)
    return ranking.sorted(out)


def complete(system, ranking: Optional[Ranking] = None) -> InvolutiveSystem:
    """Complete a determining system to its canonical involutive form."""
    if ranking is None:
        ranking = default_ranking()
    raw = system.equations if isinstance(system, LinDiffSystem) else list(system)

    eqs: List[_Eq] = []
    queue: List[LinDiffPoly] = [dict(e) for e in raw]
    pairs: List[Tuple[_Eq, _Eq]] = []
    counter = itertools.count()

    def insert_from_queue():
        while queue:
            p = queue.pop(0)
            h = reduce(p, eqs, ranking)
            if not h:
                continue
            terms, lead = _monic(h, ranking)
            new = _Eq(terms, lead, next(counter))
            # drop equations whose lead became reducible; they re-enter the queue
            doomed = [e for e in eqs if new.lead.divides(e.lead)]
            for e in doomed:
                eqs.remove(e)
                queue.append(e.terms)
            pairs[:] = [(a, b) for (a, b) in pairs
                        if a not in doomed and b not in doomed]
            eqs.append(new)
            # keep tails fully reduced: rewrite tails containing derivatives
            # of the new lead
            for e in eqs:
                if e is new:
                    continue
                if any(new.lead.divides(s) for s in e.terms if s != e.lead):
                    tail = {s: c for s, c in e.terms.items() if s != e.lead}
                    tail = reduce(tail, eqs, ranking)
                    tail[e.lead] = RatFunc.one()
                    e.terms = tail
                    e.invalidate()
            for e in eqs:
                if e is not new and e.lead.unknown == new.lead.unknown:
                    pairs.append((e, new))

    insert_from_queue()
    while pairs:
        pairs.sort(key=lambda ab: (ranking.key(Slot(
            ab[0].lead.unknown,
            max(ab[0].lead.dx, ab[1].lead.dx),
            max(ab[0].lead.dy, ab[1].lead.dy))),
            ab[0].ident, ab[1].ident))
        a, b = pairs.pop(0)
        s = _cross(a, b)
        h = reduce(s, eqs, ranking)
        if h:
            queue.append(h)
            insert_from_queue()

    ordered = sorted(eqs, key=lambda e: ranking.key(e.lead))
    leads = [e.lead for e in ordered]
    parametric = _parametric_slots(leads, ranking)
    return InvolutiveSystem(ranking, [e.terms for e in ordered], leads, parametric,
                            _eqs=[_Eq(e.terms, e.lead, i)
                                  for i, e in enumerate(ordered)])


def solution_dimension(inv: InvolutiveSystem) -> int:
    return inv.dimension


def audit_involutive(inv: InvolutiveSystem, original=None) -> bool:
    """Post-hoc passivity check: cross-derivatives and originals reduce to zero."""
    eqs = inv._eqs
    for a, b in itertools.combinations(eqs, 2):
        if a.lead.unknown != b.lead.unknown:
            continue
        if reduce(_cross(a, b), eqs, inv.ranking):
            return False
    if original is not None:
        raw = original.equations if isinstance(original, LinDiffSystem) else original
        for eq in raw:
            if reduce(eq, eqs, inv.ranking):
                return False
    for e in eqs:
        for s in e.terms:
            if s != e.lead and any(l.divides(s) for l in inv.leads):
                return False
    return True
