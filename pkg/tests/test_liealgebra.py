"""Series bases, structure constants, derived algebras, certificates."""
import itertools
from fractions import Fraction

import pytest

from lieode.determining import ETA, XI, Slot, determining_system
from lieode.errors import InternalInvariantError, SingularPoint
from lieode.involutive import complete
from lieode.liealgebra import (CASE_CONSTANT, CASE_NONCONSTANT, CASE_NONE,
                               CASE_TRIVIAL, Certificate, LieAlgebraTable,
                               assert_dimension_bounds, certify,
                               derived_algebra, expansion_points, is_abelian,
                               series_basis, solution_data_from_components,
                               structure_constants)
from lieode.parsing import parse_ode
from lieode.ratfunc import RatFunc

F = Fraction
ONE = RatFunc.one()
ZERO = RatFunc.zero()
X = RatFunc.variable("x")
Y = RatFunc.variable("y")


def run(text):
    inv = complete(determining_system(parse_ode(text)))
    basis = series_basis(inv)
    table = structure_constants(basis, inv)
    return inv, basis, table


# -- series solutions ---------------------------------------------------------------


def test_series_basis_is_delta_initial_data():
    inv, basis, _ = run("y'' = 0")
    params = basis[0].parametric
    for i, sol in enumerate(basis):
        for j, p in enumerate(params):
            assert sol.data[p] == (1 if i == j else 0)


def test_series_basis_truncation_floor():
    inv = complete(determining_system(parse_ode("y'' = 0")))
    with pytest.raises(ValueError):
        series_basis(inv, N=inv.max_parametric_order() + 1)


def test_singular_expansion_point_is_reported():
    inv = complete(determining_system(parse_ode("y'' + y'/x = 0")))
    with pytest.raises(SingularPoint):
        series_basis(inv, point=(F(0), F(0)))


def test_automatic_point_avoids_singularities():
    inv = complete(determining_system(parse_ode("y'' + y'/x = 0")))
    basis = series_basis(inv)
    assert basis[0].point[0] != 0    # x = 0 meets the coefficient pole


def test_generators_reconstruct_from_series_basis():
    # the eight classical fields of y'' = 0 lie in the span of the basis,
    # with coordinates given by their parametric data  [DERIVED]
    inv, basis, _ = run("y'' = 0")
    params = basis[0].parametric
    point, N = basis[0].point, basis[0].N
    fields = [(ONE, ZERO), (ZERO, ONE), (X, ZERO), (Y, ZERO),
              (ZERO, X), (ZERO, Y), (X * X, X * Y), (X * Y, Y * Y)]
    for xi, eta in fields:
        data = solution_data_from_components(xi, eta, point, N)
        coords = [data[p] for p in params]
        for slot, value in data.items():
            recon = sum((basis[k].data[slot] * c
                         for k, c in enumerate(coords)), F(0))
            assert recon == value


# -- structure constants -------------------------------------------------------------


def test_translation_scaling_bracket():
    # {d_x, x d_x}: [e1, e2] = e1, so C[0][1] = (1, 0)  [PAPER]
    eqs = [{Slot(XI, 2, 0): ONE}, {Slot(XI, 0, 1): ONE},
           {Slot(ETA, 0, 0): ONE}]
    inv = complete(eqs)
    basis = series_basis(inv)
    table = structure_constants(basis, inv)
    assert table.m == 2
    assert table.C[0][1] == [F(1), F(0)]
    assert table.C[1][0] == [F(-1), F(0)]
    D = derived_algebra(table)
    assert D.dimension == 1 and is_abelian(D)


def test_constants_algebra_is_abelian():
    eqs = [{Slot(XI, 1, 0): ONE}, {Slot(XI, 0, 1): ONE},
           {Slot(ETA, 1, 0): ONE}, {Slot(ETA, 0, 1): ONE}]
    inv = complete(eqs)
    table = structure_constants(series_basis(inv), inv)
    assert all(c == 0 for row in table.C for vec in row for c in vec)
    assert derived_algebra(table).dimension == 0


def test_bracket_antisymmetry_and_jacobi_hold():
    _, _, table = run("y'' = 0")
    m = table.m
    for i, j in itertools.combinations(range(m), 2):
        ei = [F(int(k == i)) for k in range(m)]
        ej = [F(int(k == j)) for k in range(m)]
        assert table.bracket(ei, ej) == [-v for v in table.bracket(ej, ei)]
    table.validate()   # exact antisymmetry + Jacobi on all triples


def test_validate_rejects_broken_antisymmetry():
    C = [[[F(0)] * 2 for _ in range(2)] for _ in range(2)]
    C[0][1] = [F(1), F(0)]
    C[1][0] = [F(1), F(0)]    # should be negated
    with pytest.raises(InternalInvariantError):
        LieAlgebraTable(2, C).validate()


def test_validate_rejects_broken_jacobi():
    # sl2-like table with one sign flipped breaks Jacobi  [DERIVED]
    m = 3
    C = [[[F(0)] * m for _ in range(m)] for _ in range(m)]

    def setbr(i, j, vec):
        C[i][j] = [F(v) for v in vec]
        C[j][i] = [-F(v) for v in vec]

    setbr(0, 1, (0, 0, 2))     # [e,f] = 2h   (sign flipped from -2h... )
    setbr(0, 2, (2, 0, 0))     # wrong sign relative to a consistent sl2
    setbr(1, 2, (0, 2, 0))
    with pytest.raises(InternalInvariantError):
        LieAlgebraTable(m, C).validate()


def test_structure_constants_stable_under_deeper_truncation():
    inv, basis, table = run("y''' + 3*y'*y'' + (y')^3 - 2*(y'' + (y')^2) + y' = 0")
    deeper = series_basis(inv, point=basis[0].point, N=basis[0].N + 2)
    assert structure_constants(deeper).C == table.C


def test_structure_constants_stable_across_expansion_points():
    inv = complete(determining_system(parse_ode("y'' = y^2")))
    invariants = []
    for p in itertools.islice(expansion_points(), 4):
        try:
            basis = series_basis(inv, point=p)
        except SingularPoint:
            continue
        table = structure_constants(basis, inv)
        cert = certify(2, table)
        invariants.append((cert.m, cert.derived_dimension,
                           cert.derived_abelian))
    assert len(invariants) >= 2
    assert len(set(invariants)) == 1


# -- certificates --------------------------------------------------------------------


def _synthetic_scaling_action(n, m):
    """m-dim table: e_m scales an abelian ideal e_1..e_n; the rest is central."""
    C = [[[F(0)] * m for _ in range(m)] for _ in range(m)]
    for i in range(n):
        vec = [F(0)] * m
        vec[i] = F(1)       # [e_m, e_i] = e_i
        C[m - 1][i] = vec
        C[i][m - 1] = [-v for v in vec]
    table = LieAlgebraTable(m, C)
    table.validate()
    return table


def test_certify_maximal_cases():
    _, _, t2 = run("y'' = 0")
    cert = certify(2, t2)
    assert cert.linearizable and cert.case == CASE_TRIVIAL and cert.m == 8

    _, _, t4 = run("y'''' = 0")
    cert = certify(4, t4)
    assert cert.linearizable and cert.case == CASE_TRIVIAL and cert.m == 8


def test_certify_negative_case():
    _, _, table = run("y'' = y^2")
    cert = certify(2, table)
    assert not cert.linearizable
    assert cert.case == CASE_NONE and cert.m == 2


def test_certify_constant_coefficients_case():
    # image of a genuinely non-trivial constant-coefficient cubic  [DERIVED]
    _, _, table = run("y''' + 3*y'*y'' + (y')^3 - 2*(y'' + (y')^2) + y' = 0")
    cert = certify(3, table)
    assert cert.linearizable
    assert cert.case == CASE_CONSTANT
    assert cert.m == 5 and cert.derived_dimension == 3 and cert.derived_abelian


def test_certify_synthetic_intermediate_dimensions():
    # n+1 with an abelian derived algebra of dimension n: linearizable,
    # nonconstant-coefficients; same at n+2; n+3 is never linearizable
    cert = certify(3, _synthetic_scaling_action(3, 4))
    assert cert.linearizable and cert.case == CASE_NONCONSTANT

    cert = certify(3, _synthetic_scaling_action(3, 5))
    assert cert.linearizable and cert.case == CASE_CONSTANT

    abelian6 = LieAlgebraTable(6, [[[F(0)] * 6 for _ in range(6)]
                                   for _ in range(6)])
    cert = certify(3, abelian6)
    assert not cert.linearizable and cert.case == CASE_NONE


def test_certify_small_dimensions_need_the_derived_condition():
    # m = n+2 alone is not enough: an abelian 5-dim algebra has derived
    # dimension 0, not n, so certification must refuse it
    abelian5 = LieAlgebraTable(5, [[[F(0)] * 5 for _ in range(5)]
                                   for _ in range(5)])
    cert = certify(3, abelian5)
    assert not cert.linearizable


def test_certify_n2_requires_maximal():
    # for second-order equations only m = 8 certifies
    cert = certify(2, _synthetic_scaling_action(2, 4))
    assert not cert.linearizable


def test_dimension_bounds():
    assert_dimension_bounds(2, 8)
    assert_dimension_bounds(3, 7)
    with pytest.raises(InternalInvariantError):
        assert_dimension_bounds(2, 9)
    with pytest.raises(InternalInvariantError):
        assert_dimension_bounds(3, 8)


def test_certificate_serialization():
    cert = Certificate("linearizable", CASE_TRIVIAL, 8, 2, 8, False)
    d = cert.as_dict()
    assert d == {"verdict": "linearizable", "case": "trivial", "m": 8,
                 "n": 2, "derived_dimension": 8, "derived_abelian": False}
