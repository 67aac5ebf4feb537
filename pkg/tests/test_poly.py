"""Sparse polynomial arithmetic: pinned examples and ring-axiom properties."""

import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from neurovar.domains import PrimeField, RATIONALS
from neurovar.poly import Ring, SparsePoly, monomials_of_degree, poly_eval, poly_partial, poly_pow

PRIME = PrimeField((1 << 61) - 1)


def test_monomials_of_degree_binary_quartics():
    monos = monomials_of_degree(2, 4)
    assert monos == [(4, 0), (3, 1), (2, 2), (1, 3), (0, 4)]


def test_monomials_of_degree_linear():
    assert monomials_of_degree(3, 1) == [(1, 0, 0), (0, 1, 0), (0, 0, 1)]


def test_monomials_of_degree_nonics():
    monos = monomials_of_degree(2, 9)
    assert len(monos) == 10
    assert monos[0] == (9, 0)
    assert monos[-1] == (0, 9)


@pytest.mark.parametrize("nvars,deg", [(1, 0), (2, 7), (3, 4), (4, 5), (5, 2)])
def test_monomials_of_degree_count_and_order(nvars, deg):
    monos = monomials_of_degree(nvars, deg)
    assert len(monos) == math.comb(nvars - 1 + deg, nvars - 1)
    assert monos == sorted(monos, reverse=True)
    assert all(sum(m) == deg for m in monos)


def test_poly_pow_binomial_square():
    ring = Ring(["x", "y"])
    x, y = ring.var("x"), ring.var("y")
    assert poly_pow(x + y, 2) == x * x + (x * y).scale(Fraction(2)) + y * y


def test_poly_pow_zeroth_power_is_one():
    ring = Ring(["x", "y"])
    p = ring.var("x") + ring.const_int(5)
    assert poly_pow(p, 0) == ring.one()
    assert poly_pow(ring.zero(), 0) == ring.one()


def test_poly_pow_cube_of_binary_cubic_pencil():
    # (b*y^3 + x^3)^3 = x^9 + 3b x^6 y^3 + 3b^2 x^3 y^6 + b^3 y^9
    ring = Ring(["x", "y", "b"])
    x, y, b = (ring.var(n) for n in "xyb")
    cube = poly_pow(b * poly_pow(y, 3) + poly_pow(x, 3), 3)
    expected = (
        poly_pow(x, 9)
        + (b * poly_pow(x, 6) * poly_pow(y, 3)).scale(Fraction(3))
        + (b * b * poly_pow(x, 3) * poly_pow(y, 6)).scale(Fraction(3))
        + b * b * b * poly_pow(y, 9)
    )
    assert cube == expected


def test_poly_pow_pencil_sum_coordinates():
    # c*(b1 y^3+x^3)^3 + (b2 y^3+x^3)^3 has x^6y^3-coordinate 3*(c*b1 + b2).
    ring = Ring(["x", "y", "b1", "b2", "c"])
    x, y, b1, b2, c = (ring.var(n) for n in ("x", "y", "b1", "b2", "c"))
    f = c * poly_pow(b1 * poly_pow(y, 3) + poly_pow(x, 3), 3) + poly_pow(
        b2 * poly_pow(y, 3) + poly_pow(x, 3), 3
    )
    coeff = {m[:2]: c2 for m, c2 in f.terms.items() if m[0] == 6 and m[1] == 3}
    got = SparsePoly(ring, {m: c2 for m, c2 in f.terms.items() if (m[0], m[1]) == (6, 3)})
    expected = ((c * b1 + b2) * poly_pow(x, 6) * poly_pow(y, 3)).scale(Fraction(3))
    assert got == expected
    assert coeff


def test_poly_partial_power_rule():
    ring = Ring(["x", "y"])
    x, y = ring.var("x"), ring.var("y")
    assert poly_partial(x * x * y, "x") == (x * y).scale(Fraction(2))


def test_poly_partial_constant():
    ring = Ring(["x"])
    assert poly_partial(ring.const_int(7), "x") == ring.zero()


def test_poly_partial_three_variables():
    ring = Ring(["a", "b", "c"])
    a, b, c = (ring.var(n) for n in "abc")
    p = poly_pow(a, 4) * poly_pow(b, 2) * c
    assert poly_partial(p, "b") == (poly_pow(a, 4) * b * c).scale(Fraction(2))


def test_poly_eval_simple():
    ring = Ring(["x", "y"])
    p = ring.var("x") * ring.var("x") + ring.var("y")
    assert poly_eval(p, {"x": Fraction(2), "y": Fraction(3)}) == 7


def test_poly_eval_zero_polynomial():
    ring = Ring(["x", "y"])
    assert poly_eval(ring.zero(), [Fraction(11), Fraction(-4)]) == 0


def test_poly_eval_conic_relation_on_squares():
    # z0*z2 - z1^2 vanishes on points of the form (t^2, t*s, s^2).
    ring = Ring(["z0", "z1", "z2"])
    z0, z1, z2 = (ring.var(f"z{i}") for i in range(3))
    rel = z0 * z2 - z1 * z1
    rng = random.Random(42)
    for _ in range(20):
        t, s = Fraction(rng.randint(-50, 50)), Fraction(rng.randint(-50, 50))
        assert poly_eval(rel, [t * t, t * s, s * s]) == 0


# -- property tests --------------------------------------------------------------


def _poly_from_spec(domain, terms):
    ring = Ring(["x", "y", "z"], domain)
    acc = {}
    for exps, coeff in terms:
        c = domain.from_int(coeff)
        if exps in acc:
            c = domain.add(acc[exps], c)
        if c:
            acc[exps] = c
        elif exps in acc:
            del acc[exps]
    return SparsePoly(ring, acc)


exponents = st.tuples(
    st.integers(0, 4), st.integers(0, 4), st.integers(0, 4)
)
term_lists = st.lists(st.tuples(exponents, st.integers(-9, 9)), max_size=6)


@settings(max_examples=100, deadline=None)
@given(term_lists, term_lists, term_lists, st.booleans())
def test_ring_axioms(ta, tb, tc, use_prime):
    domain = PRIME if use_prime else RATIONALS
    a, b, c = (_poly_from_spec(domain, t) for t in (ta, tb, tc))
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c


@settings(max_examples=60, deadline=None)
@given(term_lists, st.integers(0, 3), st.integers(0, 3), st.booleans())
def test_pow_additivity(terms, e1, e2, use_prime):
    domain = PRIME if use_prime else RATIONALS
    p = _poly_from_spec(domain, terms)
    assert poly_pow(p, e1 + e2) == poly_pow(p, e1) * poly_pow(p, e2)


@settings(max_examples=80, deadline=None)
@given(
    term_lists,
    term_lists,
    st.tuples(st.integers(-20, 20), st.integers(-20, 20), st.integers(-20, 20)),
    st.booleans(),
)
def test_eval_is_ring_homomorphism(ta, tb, point, use_prime):
    domain = PRIME if use_prime else RATIONALS
    a, b = _poly_from_spec(domain, ta), _poly_from_spec(domain, tb)
    vals = [domain.from_int(v) for v in point]
    assert poly_eval(a * b, vals) == domain.mul(poly_eval(a, vals), poly_eval(b, vals))
    assert poly_eval(a + b, vals) == domain.add(poly_eval(a, vals), poly_eval(b, vals))


@settings(max_examples=60, deadline=None)
@given(term_lists, st.tuples(st.integers(-20, 20), st.integers(-20, 20), st.integers(-20, 20)))
def test_reduction_compatibility(terms, point):
    # Integer-coefficient evaluation over the rationals reduces mod p to the
    # prime-field evaluation of the reduced polynomial.
    p = PRIME.p
    over_q = _poly_from_spec(RATIONALS, terms)
    over_p = _poly_from_spec(PRIME, terms)
    vals_q = [Fraction(v) for v in point]
    vals_p = [v % p for v in point]
    value = poly_eval(over_q, vals_q)
    assert value.denominator == 1
    assert int(value) % p == poly_eval(over_p, vals_p)


def test_partial_is_linear():
    ring = Ring(["x", "y"])
    rng = random.Random(3)
    for _ in range(20):
        a = _random_poly(ring, rng)
        b = _random_poly(ring, rng)
        assert (a + b).partial("x") == a.partial("x") + b.partial("x")


def _random_poly(ring, rng):
    terms = {}
    for _ in range(rng.randint(0, 5)):
        m = tuple(rng.randint(0, 3) for _ in range(ring.nvars))
        c = Fraction(rng.randint(-9, 9))
        if c:
            terms[m] = c
    return SparsePoly(ring, terms)


def test_substitute_partial_assignment():
    ring = Ring(["x", "y", "w"])
    x, y, w = (ring.var(n) for n in "xyw")
    p = w * x * x + y.scale(Fraction(3)) + w * w
    q = p.substitute({"w": Fraction(2)})
    expected = (x * x).scale(Fraction(2)) + y.scale(Fraction(3)) + ring.const_int(4)
    assert q == expected
