"""Polynomial core: ring axioms, printing/parsing, substitution,
weighted degrees, and the antisymmetric pair convention."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from versaldef.poly import (
    NONHOMOGENEOUS,
    ParseError,
    Polynomial,
    build_registry,
    parse,
    substitute,
    to_str,
    weighted_degree,
)

REG = build_registry(nz=3, y=True, npairs=3)


def _random_poly(draw_terms):
    p = Polynomial.zero(REG)
    for coeff, var_exps in draw_terms:
        term = Polynomial.const(REG, coeff)
        for pos, e in var_exps:
            term = term * Polynomial.var(REG, REG.names[pos]) ** e
        p = p + term
    return p


coeffs = st.fractions(min_value=-9, max_value=9, max_denominator=4)

term_strategy = st.tuples(
    coeffs,
    st.lists(
        st.tuples(st.integers(0, REG.nvars - 1), st.integers(1, 3)),
        max_size=3,
    ),
)
poly_strategy = st.lists(term_strategy, max_size=5).map(_random_poly)


@settings(max_examples=150, deadline=None)
@given(poly_strategy, poly_strategy, poly_strategy)
def test_ring_axioms(p, q, r):
    assert p + q == q + p
    assert (p + q) + r == p + (q + r)
    assert p * q == q * p
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p + Polynomial.zero(REG) == p
    assert p * Polynomial.const(REG, 1) == p
    assert p - p == Polynomial.zero(REG)


@settings(max_examples=150, deadline=None)
@given(poly_strategy)
def test_parse_print_roundtrip(p):
    assert parse(to_str(p), REG) == p


@settings(max_examples=60, deadline=None)
@given(poly_strategy, poly_strategy)
def test_substitution_is_homomorphism(p, q):
    target = build_registry(nz=3, y=True, npairs=3)
    image = {
        "z1": Polynomial.var(target, "z2"),
        "z2": Polynomial.var(target, "z1") + Polynomial.const(target, 1),
    }
    sp = substitute(p, image, target=target)
    sq = substitute(q, image, target=target)
    assert substitute(p + q, image, target=target) == sp + sq
    assert substitute(p * q, image, target=target) == sp * sq


def test_weighted_degree_uses_weights():
    p = Polynomial.var(REG, "z1") * Polynomial.var(REG, "z2") - Polynomial.var(REG, "y")
    assert weighted_degree(p) == 2
    q = Polynomial.var(REG, "z1") + Polynomial.var(REG, "y")
    assert weighted_degree(q) is NONHOMOGENEOUS


def test_antisymmetric_reversal():
    assert Polynomial.var(REG, "a_2_1") == -Polynomial.var(REG, "a_1_2")
    assert parse("a_2_1 + a_1_2", REG).is_zero()
    with pytest.raises(KeyError):
        REG.position("a_2_1")


def test_ordered_pairs_registry_keeps_both_directions():
    reg = build_registry(nz=2, npairs=2, ordered_pairs=True)
    assert "a_1_2" in reg.names and "a_2_1" in reg.names
    assert Polynomial.var(reg, "a_2_1") != -Polynomial.var(reg, "a_1_2")


def test_registry_order_and_weights():
    reg = build_registry(nz=2, y=True, t=True, s=True, npairs=2, params=(2, 5))
    assert reg.names == ("z1", "z2", "y", "t", "s", "a_1_2", "a_2", "a_5")
    assert reg.weights[reg.position("y")] == 2
    assert all(
        w == 1 for i, w in enumerate(reg.weights) if i != reg.position("y")
    )


def test_parse_errors():
    with pytest.raises(ParseError):
        parse("z1 +* z2", REG)
    with pytest.raises(ParseError):
        parse("w3 + 1", REG)


def test_power_and_scalars():
    z1 = Polynomial.var(REG, "z1")
    assert z1 ** 3 == z1 * z1 * z1
    assert 2 * z1 == z1 + z1
    assert (z1 + 1) - 1 == z1
    assert z1 ** 0 == Polynomial.const(REG, 1)


def test_display_name_override():
    p = Polynomial.var(REG, "z1") * Polynomial.var(REG, "z2")
    fancy = [f"v{i}" for i in range(REG.nvars)]
    assert to_str(p, fancy) == "v0*v1"
    with pytest.raises(ValueError):
        to_str(p, ["too", "few"])
