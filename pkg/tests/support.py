"""Shared fixtures for the test suite: transcribed golden data and CLI driver."""

import os
import subprocess
import sys
from fractions import Fraction

from neurovar.network import weight_name
from neurovar.poly import SparsePoly

# Shorthand for weight names in golden data: a01 -> w1_0_1, b10 -> w2_1_0, ...
_LAYER_OF = {"a": 1, "b": 2, "c": 3}


def term(ring, coeff, spec):
    """Build coeff * monomial from shorthand like '2 a00^2 a10^2 b00 b01 c00'."""
    exps = [0] * ring.nvars
    for token in spec.split():
        if "^" in token:
            name, e = token.split("^")
            e = int(e)
        else:
            name, e = token, 1
        wname = weight_name(_LAYER_OF[name[0]], int(name[1]), int(name[2]))
        exps[ring.index(wname)] += e
    return SparsePoly(ring, {tuple(exps): Fraction(coeff)})


def poly_from_terms(ring, terms):
    acc = ring.zero()
    for coeff, spec in terms:
        acc = acc + term(ring, coeff, spec)
    return acc


def expected_quartic_coefficients(ring):
    """Golden coefficients of the (2,2,2,1),(2,2) network, transcribed term
    by term from the worked quartic example."""
    s0 = [
        (1, "a00^4 b00^2 c00"), (1, "a00^4 b10^2 c01"),
        (2, "a00^2 a10^2 b00 b01 c00"), (2, "a00^2 a10^2 b10 b11 c01"),
        (1, "a10^4 b01^2 c00"), (1, "a10^4 b11^2 c01"),
    ]
    s1 = [
        (4, "a00^3 a01 b00^2 c00"), (4, "a00^3 a01 b10^2 c01"),
        (4, "a00^2 a10 a11 b00 b01 c00"), (4, "a00^2 a10 a11 b10 b11 c01"),
        (4, "a00 a01 a10^2 b00 b01 c00"), (4, "a00 a01 a10^2 b10 b11 c01"),
        (4, "a10^3 a11 b01^2 c00"), (4, "a10^3 a11 b11^2 c01"),
    ]
    s2 = [
        (6, "a00^2 a01^2 b00^2 c00"), (6, "a00^2 a01^2 b10^2 c01"),
        (2, "a00^2 a11^2 b00 b01 c00"), (2, "a00^2 a11^2 b10 b11 c01"),
        (8, "a00 a01 a10 a11 b00 b01 c00"), (8, "a00 a01 a10 a11 b10 b11 c01"),
        (2, "a01^2 a10^2 b00 b01 c00"), (2, "a01^2 a10^2 b10 b11 c01"),
        (6, "a10^2 a11^2 b01^2 c00"), (6, "a10^2 a11^2 b11^2 c01"),
    ]
    s3 = [
        (4, "a00 a01^3 b00^2 c00"), (4, "a00 a01^3 b10^2 c01"),
        (4, "a00 a01 a11^2 b00 b01 c00"), (4, "a00 a01 a11^2 b10 b11 c01"),
        (4, "a01^2 a10 a11 b00 b01 c00"), (4, "a01^2 a10 a11 b10 b11 c01"),
        (4, "a10 a11^3 b01^2 c00"), (4, "a10 a11^3 b11^2 c01"),
    ]
    s4 = [
        (1, "a01^4 b00^2 c00"), (1, "a01^4 b10^2 c01"),
        (2, "a01^2 a11^2 b00 b01 c00"), (2, "a01^2 a11^2 b10 b11 c01"),
        (1, "a11^4 b01^2 c00"), (1, "a11^4 b11^2 c01"),
    ]
    return [poly_from_terms(ring, s) for s in (s0, s1, s2, s3, s4)]


def tctc_gauge_mask():
    """Gauge pinning the first layer's off-diagonal to 1 (standard elsewhere),
    so that at a11 = a22 = 0 the two first-layer forms are exactly (y, x)."""
    return (((0, 1), (1, 0)), ((0, 1), (1, 1)), ((0, 1),))


def run_cli(*args, env_extra=None):
    env = dict(os.environ)
    if env_extra:
        env.update(env_extra)
    return subprocess.run(
        [sys.executable, "-m", "neurovar", *args],
        capture_output=True,
        text=True,
        env=env,
    )
