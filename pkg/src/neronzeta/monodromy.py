"""Tame monodromy from jump data: cyclotomic and roots-of-unity arithmetic.

Roots of unity are written additively: the exponent ``x`` in Q/Z stands for
``exp(2*pi*i*x)``.  The eigenvalue attached to a jump ``j`` is the one with
exponent ``j`` (that is ``xi**(e*j)`` for the primitive ``e``-th root
``xi = exp(2*pi*i/e)``).  All arithmetic with such roots is exact, in
``Z[y]/Phi_E(y)`` with ``y`` a primitive ``E``-th root of unity.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb, gcd, lcm
from typing import Mapping

from . import kernels
from .jumps import JumpSpectrum, conductor, divisors, frac, tau
from .results import CheckResult


class InconsistentSpectrumError(ValueError):
    """The jump data cannot come from an abelian variety."""


class IntegralityError(ArithmeticError):
    """A quantity that must be a rational integer was not."""


def totient(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if gcd(k, n) == 1)


class IntPolynomial:
    """Polynomial in ``t`` with integer coefficients, ascending order."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        c = [int(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> "IntPolynomial":
        return cls([0] * k + [c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return IntPolynomial([x + y for x, y in zip(a, b)])

    def __neg__(self):
        return IntPolynomial([-x for x in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPolynomial([x * other for x in self.coeffs])
        return IntPolynomial(kernels.convolve(list(self.coeffs), list(other.coeffs)))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = IntPolynomial([1])
        for _ in range(n):
            out = out * self
        return out

    def divmod_monic(self, m: "IntPolynomial"):
        q, r = kernels.divmod_monic(list(self.coeffs), list(m.coeffs))
        return IntPolynomial(q), IntPolynomial(r)

    def exact_div(self, m: "IntPolynomial") -> "IntPolynomial":
        q, r = self.divmod_monic(m)
        if not r.is_zero():
            raise ArithmeticError(f"{m} does not divide {self}")
        return q

    def divides(self, other: "IntPolynomial") -> bool:
        """True iff this monic polynomial divides ``other``."""
        return other.divmod_monic(self)[1].is_zero()

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other):
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
            mag = abs(c)
            text = str(mag) if not mono else (mono if mag == 1 else f"{mag}*{mono}")
            parts.append(("-" if c < 0 else "+", text))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, text in parts[1:]:
            out += f" {sign} {text}"
        return out

    def __repr__(self):
        return f"IntPolynomial({list(self.coeffs)})"


@lru_cache(maxsize=None)
def cyclotomic(n: int) -> IntPolynomial:
    """The cyclotomic polynomial of the primitive ``n``-th roots of unity."""
    if n < 1:
        raise ValueError("cyclotomic index must be positive")
    poly = IntPolynomial([-1] + [0] * (n - 1) + [1])
    for d in divisors(n)[:-1]:
        poly = poly.exact_div(cyclotomic(d))
    return poly


def cyclotomic_factorization(poly: IntPolynomial, candidates) -> dict[int, int] | None:
    """Write ``poly`` as a product of ``Phi_n`` over ``candidates``, or return None."""
    rest = poly
    out = {}
    for n in sorted(candidates):
        phi = cyclotomic(n)
        while rest.degree >= phi.degree:
            q, r = rest.divmod_monic(phi)
            if not r.is_zero():
                break
            out[n] = out.get(n, 0) + 1
            rest = q
    if rest != IntPolynomial([1]):
        return None
    return out


def cyclotomic_product(factors: Mapping[int, int]) -> IntPolynomial:
    out = IntPolynomial([1])
    for n, k in sorted(factors.items()):
        out = out * cyclotomic(n) ** k
    return out


class CycloInteger:
    """Element of ``Z[y]/Phi_E(y)``, stored as its reduced residue."""

    __slots__ = ("E", "residue")

    def __init__(self, E: int, coeffs=()):
        self.E = E
        c = [int(x) for x in coeffs]
        phi = cyclotomic(E)
        if len(c) > phi.degree:
            _, c = kernels.divmod_monic(c, list(phi.coeffs))
        while c and c[-1] == 0:
            c.pop()
        self.residue = tuple(c)

    @classmethod
    def root(cls, E: int, k: int) -> "CycloInteger":
        """The root of unity ``y**k``."""
        k %= E
        return cls(E, [0] * k + [1])

    @classmethod
    def integer(cls, E: int, n: int) -> "CycloInteger":
        return cls(E, [n])

    def _lift(self, other):
        if isinstance(other, int):
            return CycloInteger(self.E, [other])
        if other.E != self.E:
            raise ValueError("cyclotomic moduli differ")
        return other

    def __add__(self, other):
        other = self._lift(other)
        n = max(len(self.residue), len(other.residue))
        a = self.residue + (0,) * (n - len(self.residue))
        b = other.residue + (0,) * (n - len(other.residue))
        return CycloInteger(self.E, [x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return CycloInteger(self.E, [-x for x in self.residue])

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if isinstance(other, int):
            return CycloInteger(self.E, [x * other for x in self.residue])
        other = self._lift(other)
        return CycloInteger(self.E, kernels.convolve(list(self.residue), list(other.residue)))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not self.residue

    def is_integer(self) -> bool:
        return len(self.residue) <= 1

    def to_int(self) -> int:
        if not self.is_integer():
            raise IntegralityError(f"{self!r} is not a rational integer")
        return self.residue[0] if self.residue else 0

    def __eq__(self, other):
        if isinstance(other, int):
            other = CycloInteger(self.E, [other])
        if not isinstance(other, CycloInteger):
            return NotImplemented
        return self.E == other.E and self.residue == other.residue

    def __hash__(self):
        return hash((self.E, self.residue))

    def __repr__(self):
        return f"CycloInteger(E={self.E}, {list(self.residue)})"


class UnityRootMultiset:
    """Galois-stable multiset of exponents in Q/Z."""

    __slots__ = ("entries",)

    def __init__(self, entries: Mapping):
        clean: dict[Fraction, int] = {}
        for x, m in dict(entries).items():
            if m:
                x = frac(Fraction(x))
                clean[x] = clean.get(x, 0) + int(m)
        for x, m in clean.items():
            n = x.denominator
            for k in range(n):
                if gcd(k, n) == 1 and clean.get(Fraction(k, n), 0) != m:
                    raise InconsistentSpectrumError(
                        f"root multiset is not Galois stable: {x} has multiplicity {m} "
                        f"but {Fraction(k, n)} has {clean.get(Fraction(k, n), 0)}"
                    )
        self.entries = dict(sorted(clean.items()))

    @property
    def size(self) -> int:
        return sum(self.entries.values())

    @property
    def E(self) -> int:
        return lcm(*(x.denominator for x in self.entries)) if self.entries else 1

    def exponents(self) -> list[Fraction]:
        out = []
        for x, m in self.entries.items():
            out.extend([x] * m)
        return out

    def __eq__(self, other):
        if not isinstance(other, UnityRootMultiset):
            return NotImplemented
        return self.entries == other.entries

    def __repr__(self):
        body = ", ".join(f"{x}: {m}" for x, m in self.entries.items())
        return f"UnityRootMultiset({{{body}}})"


def nu(s: JumpSpectrum) -> dict[int, int]:
    """Twice the total multiplicity of jumps of each order, indexed by divisors of ``e``."""
    out = {d: 0 for d in divisors(s.e)}
    for j, m in s.entries:
        out[tau(j)] += 2 * m
    return out


def _cyclotomic_exponents(s: JumpSpectrum) -> dict[int, int]:
    out = {}
    for d, v in nu(s).items():
        if v % totient(d):
            raise InconsistentSpectrumError(
                f"nu_{d} = {v} is not divisible by phi({d}) = {totient(d)}: spectrum is not realizable"
            )
        if v:
            out[d] = v // totient(d)
    return out


def char_poly_sigma(s: JumpSpectrum) -> IntPolynomial:
    """Characteristic polynomial of the tame monodromy on the rational Tate module."""
    return cyclotomic_product(_cyclotomic_exponents(s))


def char_poly_factorization(s: JumpSpectrum) -> dict[int, int]:
    return _cyclotomic_exponents(s)


def eigen_exponents(s: JumpSpectrum) -> UnityRootMultiset:
    out = {}
    for d, k in _cyclotomic_exponents(s).items():
        for r in range(d):
            if gcd(r, d) == 1:
                out[Fraction(r, d)] = k
    return UnityRootMultiset(out)


def _cyclic_mul(f, g, E):
    """Product of polynomials in ``t`` whose coefficients lie in ``Z[y]/(y**E - 1)``.

    ``f`` and ``g`` are lists (indexed by ``t``-degree) of length-``E`` lists.
    Uses Kronecker packing so the work is one dense integer convolution.
    """
    S = 2 * E - 1
    fa = [0] * (len(f) * S)
    for k, row in enumerate(f):
        fa[k * S : k * S + E] = row
    ga = [0] * (len(g) * S)
    for k, row in enumerate(g):
        ga[k * S : k * S + E] = row
    prod = kernels.convolve(fa, ga)
    out = [[0] * E for _ in range(len(f) + len(g) - 1)]
    for n, c in enumerate(prod):
        if c:
            k, s = divmod(n, S)
            out[k][s % E] += c
    return out


def polynomial_from_roots(roots: Mapping[Fraction, int]) -> IntPolynomial:
    """``prod (t - exp(2 pi i x))**m``, checked to have rational integer coefficients."""
    E = lcm(*(Fraction(x).denominator for x in roots)) if roots else 1
    poly = [[1] + [0] * (E - 1)]
    for x, m in sorted(roots.items()):
        r = int(Fraction(x) * E) % E
        factor = []
        for j in range(m + 1):
            row = [0] * E
            row[(r * (m - j)) % E] = comb(m, j) * (-1) ** (m - j)
            factor.append(row)
        poly = _cyclic_mul(poly, factor, E)
    coeffs = []
    for k, row in enumerate(poly):
        val = CycloInteger(E, row)
        if not val.is_integer():
            raise IntegralityError(f"coefficient of t^{k} is not integral: {val!r}")
        coeffs.append(val.to_int())
    return IntPolynomial(coeffs)


def subset_sums(roots: UnityRootMultiset, i: int) -> Counter:
    exps = roots.exponents()
    if not 0 <= i <= len(exps):
        raise ValueError(f"exterior degree {i} outside 0..{len(exps)}")
    return Counter(frac(sum(c, Fraction(0))) for c in combinations(exps, i))


def hi_char_poly(roots: UnityRootMultiset, i: int) -> IntPolynomial:
    """Characteristic polynomial on the ``i``-th exterior power.

    Enumerates all ``i``-element sub-multisets of the exponents; the number of
    factors is ``C(len, i)``.
    """
    return polynomial_from_roots(subset_sums(roots, i))


def is_p_tame(poly: IntPolynomial, p: int, candidates) -> bool:
    fac = cyclotomic_factorization(poly, candidates)
    if fac is None:
        return False
    return p == 1 or all(n % p for n in fac)


def _lift_poly(poly: IntPolynomial, E: int):
    return [CycloInteger(E, [c]) for c in poly.coeffs]


def _divide_linear(coeffs, root):
    """Synthetic division by ``t - root``; returns (quotient, remainder)."""
    n = len(coeffs) - 1
    q = [None] * n
    acc = coeffs[n]
    for k in range(n - 1, -1, -1):
        q[k] = acc
        acc = coeffs[k] + acc * root
    return q, acc


def check_jump_divisor(s: JumpSpectrum) -> CheckResult:
    """Does ``prod (t - xi**(e*j))**m`` divide the monodromy characteristic polynomial?"""
    E = s.e
    coeffs = _lift_poly(char_poly_sigma(s), E)
    for j, m in s.entries:
        root = CycloInteger.root(E, int(j * E))
        for _ in range(m):
            if len(coeffs) < 2:
                return CheckResult("jump_divisor", False, [f"degree exhausted at jump {j}"])
            coeffs, rem = _divide_linear(coeffs, root)
            if not rem.is_zero():
                return CheckResult("jump_divisor", False, [f"t - exp(2 pi i {j}) does not divide with multiplicity {m}"])
    return CheckResult("jump_divisor", True)


def hg_polynomial(s: JumpSpectrum) -> IntPolynomial:
    return hi_char_poly(eigen_exponents(s), s.g)


def check_hg_cyclotomic(s: JumpSpectrum) -> CheckResult:
    n = tau(conductor(s))
    poly = hg_polynomial(s)
    ok = cyclotomic(n).divides(poly)
    details = [] if ok else [f"Phi_{n} does not divide the H^{s.g} polynomial"]
    return CheckResult("hg_cyclotomic", ok, details)


def alternating_trace(roots: UnityRootMultiset, d: int) -> int:
    """``prod_x (1 - exp(2 pi i d x))`` as an exact integer."""
    E = roots.E
    acc = CycloInteger.integer(E, 1)
    one = CycloInteger.integer(E, 1)
    for x, m in roots.entries.items():
        factor = one - CycloInteger.root(E, int(d * x * E))
        for _ in range(m):
            acc = acc * factor
            if acc.is_zero():
                return 0
    return acc.to_int()


def check_multiplicity_bound(s: JumpSpectrum) -> CheckResult:
    v = nu(s)
    bad = []
    for j, m in s.entries:
        d = tau(j)
        if m * totient(d) > v[d]:
            bad.append(f"jump {j}: multiplicity {m} > nu_{d}/phi({d}) = {Fraction(v[d], totient(d))}")
    return CheckResult("multiplicity_bound", not bad, bad)
