"""Reference computations that share no code with the package.

Each oracle uses a different mechanism from the implementation it checks:
complex floating point instead of exact cyclotomic arithmetic, sympy series
instead of dense integer kernels, brute-force minimality loops instead of lcm.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from itertools import combinations
from math import floor

import sympy


def root_of_unity(x) -> complex:
    return cmath.exp(2j * cmath.pi * float(x))


def float_alternating_trace(exponents, d: int) -> int:
    """``prod (1 - exp(2 pi i d x))`` in complex floats, rounded."""
    acc = 1 + 0j
    for x in exponents:
        acc *= 1 - root_of_unity(d * Fraction(x))
    assert abs(acc.imag) < 1e-6, acc
    r = round(acc.real)
    assert abs(acc.real - r) < 1e-6, acc
    return r


def float_poly_from_roots(exponents) -> list[int]:
    """Coefficients, constant term first, of ``prod (t - exp(2 pi i x))``."""
    coeffs = [1 + 0j]
    for x in exponents:
        z = root_of_unity(x)
        nxt = [0j] * (len(coeffs) + 1)
        for k, c in enumerate(coeffs):
            nxt[k + 1] += c
            nxt[k] -= z * c
        coeffs = nxt
    out = []
    for c in coeffs:
        assert abs(c.imag) < 1e-6 and abs(c.real - round(c.real)) < 1e-6, coeffs
        out.append(round(c.real))
    return out


def brute_exterior_exponents(exponents, i: int) -> list[Fraction]:
    """All ``i``-element sub-multiset sums, reduced mod 1, by plain enumeration."""
    out = []
    for combo in combinations(range(len(exponents)), i):
        s = sum((Fraction(exponents[k]) for k in combo), Fraction(0))
        out.append(s - floor(s))
    return out


def minimal_e(jumps) -> int:
    """Smallest ``d >= 1`` with every ``d * j`` integral, by search."""
    d = 1
    while any((d * Fraction(j)).denominator != 1 for j in jumps):
        d += 1
    return d


def sympy_cyclotomic(n: int) -> list[int]:
    t = sympy.Symbol("t")
    return [int(c) for c in reversed(sympy.Poly(sympy.cyclotomic_poly(n, t), t).all_coeffs())]


Lsym, Tsym = sympy.symbols("L T")


def _mono(mono):
    out = 1
    for sym in mono:
        out *= sympy.Symbol(f"[{sym.id}]")
    return out


def gring_to_sympy(elem):
    out = 0
    for (lexp, mono), c in elem.items():
        out += sympy.Rational(c) * Lsym**lexp * _mono(mono)
    return sympy.expand(out)


def sympy_rational(r):
    """A MotivicRational as a sympy expression; class symbols become free symbols."""
    num = 0
    for k, elem in r.numerator.items():
        num += gring_to_sympy(elem) * Tsym**k
    den = 1
    for (a, b), m in r.denominator.items():
        den *= (1 - Lsym**a * Tsym**b) ** m
    return num / den


def sympy_coefficients(expr, N: int) -> dict:
    """Taylor coefficients in T up to T**N, zeros omitted."""
    ser = sympy.series(expr, Tsym, 0, N + 1).removeO()
    poly = sympy.Poly(sympy.expand(ser), Tsym)
    return {k: sympy.expand(c) for (k,), c in poly.terms() if c != 0}
