"""The zeta series attached to tame Neron data, as a series and in closed form.

``series`` sums the explicit coefficient formula degree by degree.
``closed_form`` builds the same function as a rational function, one residue
class of ``d`` modulo ``e`` at a time, with denominators ``1 - L**a T**b``
where ``a/b`` equals the base change conductor.  ``expand`` turns a rational
function back into a truncated series so the two routes can be compared.

Poles are located through the Poincare specialization ``L -> u**2``: after
substituting ``T = W * u**(-2c)`` every denominator factor becomes ``1 - W**b``
and the pole at ``s = c`` sits at ``W = 1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, gcd, lcm
from typing import Mapping

from . import kernels
from .gring import ONE, ZERO, GRingElement, L, LaurentPoly, chi_top, poincare
from .jumps import ReductionProfile, _ord, conductor
from .monodromy import (
    IntegralityError,
    alternating_trace,
    cyclotomic,
    eigen_exponents,
)
from .results import CheckResult


class DegenerateSpecializationError(ArithmeticError):
    """The specialized numerator vanished identically."""


@dataclass
class MotivicSeries:
    """Truncated series ``sum_d coefficients[d] * T**d`` for ``d <= N``; zero coefficients omitted."""

    N: int
    coefficients: dict = field(default_factory=dict)

    def __post_init__(self):
        self.coefficients = {d: c for d, c in sorted(self.coefficients.items()) if c and d <= self.N}

    def coefficient(self, d: int) -> GRingElement:
        return self.coefficients.get(d, ZERO)

    def mismatches(self, other: "MotivicSeries") -> list[int]:
        n = min(self.N, other.N)
        keys = {d for d in self.coefficients if d <= n} | {d for d in other.coefficients if d <= n}
        return sorted(d for d in keys if self.coefficient(d) != other.coefficient(d))

    def __eq__(self, other):
        if not isinstance(other, MotivicSeries):
            return NotImplemented
        return self.N == other.N and self.coefficients == other.coefficients

    def is_integral(self) -> bool:
        return all(c.is_integral() for c in self.coefficients.values())

    def __str__(self):
        if not self.coefficients:
            return "0"
        return " + ".join(f"({c})*T^{d}" for d, c in self.coefficients.items())


def _add_into(num: dict, k: int, c: GRingElement):
    v = num.get(k, ZERO) + c
    if v:
        num[k] = v
    else:
        num.pop(k, None)


class MotivicRational:
    """``numerator(T) / prod (1 - L**a T**b)**mult``.

    ``numerator`` maps a ``T``-exponent to a ring element; ``denominator``
    maps ``(a, b)`` to a positive multiplicity.
    """

    def __init__(self, numerator: Mapping[int, GRingElement], denominator: Mapping[tuple, int] | None = None):
        self.numerator = {k: v for k, v in sorted(numerator.items()) if v}
        den = {}
        for (a, b), m in (denominator or {}).items():
            if m < 0 or b < 1 or a < 0:
                raise ValueError(f"invalid denominator factor (1 - L^{a} T^{b})^{m}")
            if m:
                den[(a, b)] = den.get((a, b), 0) + m
        self.denominator = dict(sorted(den.items()))

    def factors(self):
        return [(a, b, m) for (a, b), m in self.denominator.items()]

    def is_integral(self) -> bool:
        return all(c.is_integral() for c in self.numerator.values())

    def ratios(self) -> set:
        return {Fraction(a, b) for a, b in self.denominator}

    def times_factor(self, a: int, b: int, k: int = 1) -> dict:
        """Numerator multiplied by ``(1 - L**a T**b)**k``."""
        num = dict(self.numerator)
        for _ in range(k):
            out = dict(num)
            for j, c in num.items():
                _add_into(out, j + b, -c.shift(a))
            num = out
        return num

    def __add__(self, other: "MotivicRational") -> "MotivicRational":
        den = dict(self.denominator)
        for key, m in other.denominator.items():
            den[key] = max(den.get(key, 0), m)
        total: dict = {}
        for part in (self, other):
            num = part.numerator
            for (a, b), m in den.items():
                extra = m - part.denominator.get((a, b), 0)
                if extra:
                    num = MotivicRational(num, part.denominator).times_factor(a, b, extra)
            for j, c in num.items():
                _add_into(total, j, c)
        return MotivicRational(total, den)

    def __neg__(self):
        return MotivicRational({k: -v for k, v in self.numerator.items()}, self.denominator)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "MotivicRational":
        """Multiply the numerator by a ring element or scalar."""
        return MotivicRational({k: v * c for k, v in self.numerator.items()}, self.denominator)

    def __eq__(self, other):
        if not isinstance(other, MotivicRational):
            return NotImplemented
        return self.numerator == other.numerator and self.denominator == other.denominator

    def numerator_str(self) -> str:
        if not self.numerator:
            return "0"
        parts = []
        for k, c in self.numerator.items():
            tpart = "" if k == 0 else ("T" if k == 1 else f"T^{k}")
            parts.append(f"({c})" + (f"*{tpart}" if tpart else ""))
        return " + ".join(parts)

    def denominator_str(self) -> str:
        if not self.denominator:
            return "1"
        parts = []
        for (a, b), m in self.denominator.items():
            lpart = "" if a == 0 else ("L" if a == 1 else f"L^{a}")
            tpart = "T" if b == 1 else f"T^{b}"
            mono = f"{lpart}*{tpart}" if lpart else tpart
            parts.append(f"(1 - {mono})" + (f"^{m}" if m > 1 else ""))
        return "*".join(parts)

    def __str__(self):
        return f"[{self.numerator_str()}] / [{self.denominator_str()}]"

    def __repr__(self):
        return f"MotivicRational({self})"

    def to_json(self) -> dict:
        return {
            "numerator": [{"T": k, "coeff": str(c)} for k, c in self.numerator.items()],
            "denominator": [{"a": a, "b": b, "mult": m} for (a, b), m in self.denominator.items()],
        }


def coefficient_at(pr: ReductionProfile, d: int) -> GRingElement:
    """Zeta coefficient ``phi (L-1)**t L**(u + ord) [B]`` at ``d``."""
    loc = pr.local(d)
    c = GRingElement.abelian(loc.b_class) if loc.a else ONE
    return ((L - 1) ** loc.t * c).shift(loc.u + _ord(pr.spectrum, d)) * loc.phi


def series(pr: ReductionProfile, N: int) -> MotivicSeries:
    if N < 1:
        raise ValueError("truncation must be positive")
    p = pr.spectrum.p
    return MotivicSeries(N, {d: coefficient_at(pr, d) for d in range(1, N + 1) if p == 1 or d % p})


def power_sum_numerator(step: int, start: int, t: int) -> list[int]:
    """Numerator ``P`` with ``sum_q (q*step + start)**t y**q = P(y) / (1 - y)**(t+1)``."""
    head = [(q * step + start) ** t for q in range(t + 1)]
    one_minus = [1]
    for _ in range(t + 1):
        one_minus = kernels.convolve(one_minus, [1, -1])
    return kernels.convolve_trunc(head, one_minus, t + 1)


def _place(num: dict, prefactor: GRingElement, poly, x_lexp: int, x_texp: int, lexp0: int, texp0: int):
    """Add ``prefactor * L**lexp0 T**texp0 * poly(L**x_lexp T**x_texp)`` into ``num``."""
    for k, coef in enumerate(poly):
        if coef:
            _add_into(num, texp0 + k * x_texp, (prefactor * coef).shift(lexp0 + k * x_lexp))


def class_prefactor(pr: ReductionProfile, alpha: int) -> GRingElement:
    """The ring element in front of the residue-class sum for ``alpha``."""
    s = pr.spectrum
    aprime = gcd(alpha, pr.e)
    rec = pr.records[aprime]
    u = s.g - rec.t - rec.a
    cls = GRingElement.abelian(rec.b_class) if rec.a else ONE
    return ((L - 1) ** rec.t * cls).shift(u + _ord(s, alpha)) * Fraction(rec.phi, aprime ** rec.t)


def class_piece(pr: ReductionProfile, alpha: int) -> MotivicRational:
    """Closed form of the part of the zeta function with ``d = alpha mod e``."""
    s = pr.spectrum
    e, p = pr.e, s.p
    ce = int(conductor(s) * e)
    t = pr.records[gcd(alpha, e)].t
    pref = class_prefactor(pr, alpha)
    num: dict = {}
    n1 = power_sum_numerator(e, alpha, t)
    if p == 1:
        _place(num, pref, n1, ce, e, 0, alpha)
        return MotivicRational(num, {(ce, e): t + 1})
    # 1/(1-x)^(t+1) = (1 + ... + x^(p-1))^(t+1) / (1-x^p)^(t+1)
    lift = [1]
    for _ in range(t + 1):
        lift = kernels.convolve(lift, [1] * p)
    _place(num, pref, kernels.convolve(n1, lift), ce, e, 0, alpha)
    q_alpha = next(q for q in range(p) if (alpha + q * e) % p == 0)
    n_alpha = alpha + q_alpha * e
    n2 = power_sum_numerator(e * p, n_alpha, t)
    _place(num, -pref, n2, ce * p, e * p, q_alpha * ce, n_alpha)
    return MotivicRational(num, {(ce * p, e * p): t + 1})


def closed_form(pr: ReductionProfile) -> MotivicRational:
    total = MotivicRational({})
    for alpha in range(1, pr.e + 1):
        total = total + class_piece(pr, alpha)
    if not total.is_integral():
        raise IntegralityError("closed-form numerator has non-integral coefficients")
    return total


def _expand_shared_ratio(r: MotivicRational, N: int, c: Fraction) -> dict:
    den = [1]
    for (a, b), m in r.denominator.items():
        for _ in range(m):
            den = kernels.convolve(den, [1] + [0] * (b - 1) + [-1])
    inv = kernels.inverse_series(den, N + 1)
    classes: dict = {}
    for j, elem in r.numerator.items():
        if j > N:
            continue
        for (i, mono), coef in elem.items():
            key = (mono, Fraction(i) - c * j)
            poly = classes.setdefault(key, {})
            poly[j] = poly.get(j, 0) + coef
    out: dict = {}
    for (mono, delta), poly in classes.items():
        dense = [0] * (max(poly) + 1)
        for j, v in poly.items():
            dense[j] = v
        res = kernels.convolve_trunc(dense, inv, N + 1)
        for d, v in enumerate(res):
            if v:
                lexp = delta + c * d
                if lexp.denominator != 1:
                    raise ArithmeticError("fractional Lefschetz exponent in expansion")
                key = (int(lexp), mono)
                terms = out.setdefault(d, {})
                terms[key] = terms.get(key, 0) + v
    return {d: GRingElement(terms) for d, terms in out.items()}


def _expand_generic(r: MotivicRational, N: int) -> dict:
    coeffs = [ZERO] * (N + 1)
    for j, elem in r.numerator.items():
        if j <= N:
            coeffs[j] = coeffs[j] + elem
    for (a, b), m in r.denominator.items():
        for _ in range(m):
            for k in range(b, N + 1):
                if coeffs[k - b]:
                    coeffs[k] = coeffs[k] + coeffs[k - b].shift(a)
    return dict(enumerate(coeffs))


def expand(r: MotivicRational, N: int) -> MotivicSeries:
    """Truncated power series of ``r`` up to ``T**N``.

    When every denominator factor has the same ratio ``a/b`` and the
    numerator is integral, monomials are grouped by class monomial and by
    ``(L-exponent) - ratio * (T-exponent)``, which the denominator preserves,
    so each group is a single dense integer series division.
    """
    ratios = r.ratios()
    if r.is_integral() and len(ratios) <= 1:
        c = next(iter(ratios)) if ratios else Fraction(0)
        coeffs = _expand_shared_ratio(r, N, c)
    else:
        coeffs = _expand_generic(r, N)
    return MotivicSeries(N, coeffs)


def degree(r: MotivicRational) -> int:
    if not r.numerator:
        raise ValueError("the zero function has no degree")
    return max(r.numerator) - sum(b * m for (_, b), m in r.denominator.items())


@dataclass
class PoleReport:
    location: Fraction
    order: int
    residue_leading_sign: int
    unique: bool
    order_upper_bound: int
    residue: LaurentPoly | None = None

    def to_json(self) -> dict:
        return {
            "location": f"{self.location.numerator}/{self.location.denominator}",
            "order": self.order,
            "order_upper_bound": self.order_upper_bound,
            "residue_leading_sign": self.residue_leading_sign,
            "unique": self.unique,
            "residue": str(self.residue) if self.residue is not None else None,
        }


def specialize(r: MotivicRational, c: Fraction) -> dict[int, list]:
    """Poincare-specialized numerator as a polynomial in ``W = T * u**(2c)``.

    Returned as ``{k: coeffs}`` where ``coeffs[j]`` is the coefficient of
    ``z**k W**j`` and ``z = u**(1/b0)`` for ``c = a0/b0`` in lowest terms.
    """
    a0, b0 = c.numerator, c.denominator
    top = max(r.numerator) if r.numerator else -1
    slices: dict[int, list] = {}
    for j, elem in r.numerator.items():
        for k, v in poincare(elem, b0).coeffs.items():
            row = slices.setdefault(k - 2 * a0 * j, [0] * (top + 1))
            row[j] += v
    return {k: row for k, row in sorted(slices.items()) if any(row)}


def pole_analysis(r: MotivicRational, pr: ReductionProfile) -> PoleReport:
    """Pole of ``r`` at ``s = c(A)`` after Poincare specialization.

    Dividing by a monic ``Phi_k(W)`` never mixes powers of ``z``, so the
    cancellation runs slice by slice on integer polynomials in ``W``.
    """
    c = conductor(pr.spectrum)
    a0, b0 = c.numerator, c.denominator
    unique_shape = all(a * b0 == a0 * b for a, b in r.denominator)
    slices = specialize(r, c)
    if not slices:
        raise DegenerateSpecializationError("specialized numerator vanishes identically")
    upper = sum(r.denominator.values())
    if not unique_shape:
        return PoleReport(c, 0, 0, False, upper, None)
    scale_den = 1
    for row in slices.values():
        for v in row:
            if isinstance(v, Fraction):
                scale_den = lcm(scale_den, v.denominator)
    slices = {k: [int(v * scale_den) for v in row] for k, row in slices.items()}
    # prod (1 - W^b)^m = (-1)^(sum m) * prod_k Phi_k(W)^(M_k)
    mult: dict[int, int] = {}
    sign = 1
    for (a, b), m in r.denominator.items():
        sign *= (-1) ** m
        for k in range(1, b + 1):
            if b % k == 0:
                mult[k] = mult.get(k, 0) + m
    for k in sorted(mult):
        phi = list(cyclotomic(k).coeffs)
        while mult[k]:
            quotients = {}
            for z, row in slices.items():
                q, rem = kernels.divmod_monic(row, phi)
                if any(rem):
                    break
                quotients[z] = q
            else:
                slices = quotients
                mult[k] -= 1
                continue
            break
    order = mult.get(1, 0)
    scale = scale_den
    for k, m in mult.items():
        if k > 1 and m:
            scale *= cyclotomic(k)(1) ** m
    at_one = LaurentPoly({z - 2 * a0 * order: sum(row) for z, row in slices.items()}, b0)
    residue = at_one * Fraction(sign, scale)
    lead = residue.leading_coefficient()
    lead_sign = (lead > 0) - (lead < 0)
    return PoleReport(c, order, lead_sign, order >= 1, upper, residue)


def class_residue_formula(pr: ReductionProfile, alpha: int) -> LaurentPoly:
    """Predicted residue of one residue-class piece at its pole of order ``t + 1``."""
    s = pr.spectrum
    e, p = pr.e, s.p
    c = conductor(s)
    a0, b0 = c.numerator, c.denominator
    t = pr.records[gcd(alpha, e)].t
    eps = 0 if p == 1 else 1
    scalar = (-1) ** (t + 1) * factorial(t) * (Fraction(1, e) - eps * Fraction(1, e * p))
    pref = poincare(class_prefactor(pr, alpha), b0)
    return (pref * scalar).shift(-2 * a0 * (alpha + t + 1))


def chi_identity_check(pr: ReductionProfile, N: int) -> CheckResult:
    """Euler characteristics of the coefficients versus component counts and monodromy traces."""
    s = pr.spectrum
    roots = eigen_exponents(s)
    traces: dict[int, int] = {}
    ser = series(pr, N)
    bad = []
    for d in range(1, N + 1):
        if s.p > 1 and d % s.p == 0:
            continue
        chi = chi_top(ser.coefficient(d))
        loc = pr.local(d)
        additive = loc.phi if loc.u == s.g else 0
        key = d % roots.E
        if key not in traces:
            traces[key] = alternating_trace(roots, d)
        tr = traces[key]
        if not chi == additive == tr:
            bad.append(f"d={d}: chi={chi}, additive phi={additive}, alternating trace={tr}")
    return CheckResult("chi", not bad, bad)


def chi_sequence(pr: ReductionProfile, N: int) -> list[int]:
    ser = series(pr, N)
    return [chi_top(ser.coefficient(d)) for d in range(1, N + 1)]
