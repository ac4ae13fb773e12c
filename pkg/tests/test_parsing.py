"""Equation grammar: precedence, derivative markers, normal form, printing."""
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lieode.errors import (InputError, NotQuasiLinear, OdeSyntaxError,
                           OrderTooLow)
from lieode.jets import JetPoly
from lieode.parsing import (MAX_PRIMES, OdeSpec, deriv_marker, lower_jet,
                            parse_expr_tree, parse_ode, print_ode)
from lieode.ratfunc import RatFunc

from conftest import rationals


def rf(text):
    return lower_jet(parse_expr_tree(text))


def jet(k):
    return JetPoly.coordinate(k)


# -- expression grammar -----------------------------------------------------------


def test_unary_minus_binds_looser_than_power():
    # -y^2 is -(y^2), not (-y)^2  [TRIVIAL]
    assert rf("-y^2") == -(RatFunc.variable("y") ** 2)
    assert rf("-y^2") != RatFunc.variable("y") ** 2


def test_chained_power_rejected():
    # chained ^ is ambiguous and refused; parenthesizing the base works
    with pytest.raises(OdeSyntaxError, match="chained"):
        rf("2^3^2")
    assert rf("(2^3)^2") == RatFunc.const(Fraction(64))


def test_negative_exponent_is_written_bare():
    assert rf("x^-2") == RatFunc.const(1) / (RatFunc.variable("x") ** 2)
    # parenthesized exponents would collide with the y^(k) marker syntax
    with pytest.raises(OdeSyntaxError):
        rf("x^(-2)")


def test_prime_markers_versus_powers():
    # y^(2) is a derivative, y^2 a square
    assert rf("y''") == rf("y^(2)")
    assert rf("y^2") == RatFunc.variable("y") ** 2
    assert rf("y^(0)") == RatFunc.variable("y")


def test_prime_limit_and_suggestion():
    assert rf("y" + "'" * MAX_PRIMES) == RatFunc.variable("y4")
    with pytest.raises(OdeSyntaxError, match=r"y\^\(5\)"):
        rf("y'''''")


def test_primes_attach_to_dependent_variable_only():
    with pytest.raises(OdeSyntaxError):
        rf("x''")


def test_implicit_multiplication_rejected():
    with pytest.raises(OdeSyntaxError, match="implicit multiplication"):
        rf("2 y")


def test_error_position_is_reported():
    with pytest.raises(OdeSyntaxError) as err:
        rf("y + %")
    assert "position 4" in str(err.value)
    assert err.value.position == 4


def test_division_by_zero_constant():
    with pytest.raises(InputError):
        rf("y/(2 - 2)")


def test_functions_only_in_transformation_context():
    with pytest.raises(OdeSyntaxError):
        parse_expr_tree("exp(y)")
    node = parse_expr_tree("exp(y)", allow_funcs=True)
    assert node is not None
    # and even then they may not reach the jet lowering
    with pytest.raises(InputError):
        lower_jet(node)


def test_derivatives_can_be_disallowed():
    with pytest.raises(OdeSyntaxError):
        parse_expr_tree("y'", allow_derivatives=False)


# -- equation normal form ---------------------------------------------------------


def test_parse_ode_simple():
    ode = parse_ode("y'' = 0")
    assert ode.n == 2
    assert ode.f.is_zero()


def test_parse_ode_moves_rhs():
    # y'' = y^2 becomes y'' + (-y^2) = 0  [TRIVIAL]
    ode = parse_ode("y'' = y^2")
    assert ode.n == 2
    assert ode.f == -(jet(0) * jet(0))


def test_parse_ode_divides_leading_coefficient():
    # 2*y'' + y' = 0 → f = y'/2  [DERIVED]
    ode = parse_ode("2*y'' + y' = 0")
    assert ode.f == jet(1) / JetPoly.const(2)
    # x*y''' - y = 0 → f = -y/x
    ode = parse_ode("x*y''' - y = 0")
    assert ode.n == 3
    assert ode.f == -jet(0) / JetPoly.x()


def test_parse_ode_top_derivative_may_sit_on_the_right():
    ode = parse_ode("y = y''")
    assert ode.n == 2
    assert ode.f == -jet(0)


def test_parse_ode_high_order_marker():
    assert parse_ode("y^(5) = 0").n == 5


def test_not_quasi_linear():
    with pytest.raises(NotQuasiLinear):
        parse_ode("(y'')^2 = y")
    with pytest.raises(NotQuasiLinear):
        parse_ode("y''*y'' + y = 0")


def test_order_too_low():
    with pytest.raises(OrderTooLow):
        parse_ode("y' = y")
    with pytest.raises(OrderTooLow):
        parse_ode("y'' - y'' = y")   # top derivative cancels


def test_missing_equals_sign():
    with pytest.raises(OdeSyntaxError):
        parse_ode("y'' + y")


# -- printing round trip ----------------------------------------------------------


def test_print_ode_normal_form():
    assert print_ode(parse_ode("y'' = y^2")) == "y'' - y^2 = 0"
    assert print_ode(parse_ode("y'' = 0")) == "y'' = 0"


def test_deriv_marker_shapes():
    assert deriv_marker(0) == "y"
    assert deriv_marker(2) == "y''"
    assert deriv_marker(MAX_PRIMES + 1) == "y^(5)"
    assert deriv_marker(3, "u") == "u'''"


@st.composite
def ode_specs(draw):
    """Random quasi-linear equations with small rational f."""
    n = draw(st.integers(2, 4))
    coords = [JetPoly.x()] + [jet(k) for k in range(n)]
    num = JetPoly.zero()
    for _ in range(draw(st.integers(1, 3))):
        term = JetPoly.const(draw(rationals(max_abs=5, max_den=3)))
        for _ in range(draw(st.integers(0, 2))):
            term = term * draw(st.sampled_from(coords))
        num = num + term
    den = draw(st.sampled_from([
        JetPoly.const(1),
        jet(0),
        JetPoly.const(1) + jet(0) * jet(0),
        JetPoly.x(),
    ]))
    return OdeSpec(n, num / den)


@given(ode_specs())
def test_print_parse_roundtrip(ode):
    assert parse_ode(print_ode(ode)) == ode
