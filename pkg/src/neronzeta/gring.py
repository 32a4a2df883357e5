"""Symbolic model of the localized Grothendieck ring of varieties.

Elements are finite integer (transiently rational) combinations of monomials
``L**k * [B_1] * ... * [B_r]`` where ``L`` is the Lefschetz class, ``k`` is any
integer and the ``B_i`` are abelian-variety class symbols.  No relations are
imposed between distinct class symbols, so equality is decidable by comparing
canonical term maps.

Two ring morphisms are provided: the Euler characteristic ``chi_top`` to the
integers and the Poincare polynomial ``poincare`` to Laurent polynomials in a
variable ``u`` (returned on a lattice of fractional exponents ``u**(1/D)``).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, lcm
from numbers import Rational
from typing import Iterable, Mapping


@dataclass(frozen=True, order=True)
class AbelianClassSymbol:
    """Formal class of an abelian variety of dimension ``dim``.

    A symbol of dimension 0 stands for the class of a point and is dropped
    from monomials, so it acts as the multiplicative identity.
    """

    id: str
    dim: int

    def __post_init__(self):
        if not isinstance(self.dim, int) or self.dim < 0:
            raise ValueError(f"abelian class {self.id!r}: dimension must be a non-negative integer")

    def to_json(self):
        return {"id": self.id, "dim": self.dim}


POINT = AbelianClassSymbol("pt", 0)


def _norm(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c.numerator)
    return c


def _check_monomial(mono):
    seen = {}
    for sym in mono:
        if seen.setdefault(sym.id, sym.dim) != sym.dim:
            raise ValueError(f"abelian class {sym.id!r} used with two different dimensions")


def _mono_mul(m1, m2):
    if not m1:
        return m2
    if not m2:
        return m1
    out = tuple(sorted(m1 + m2))
    _check_monomial(out)
    return out


class GRingElement:
    """Immutable element of the symbolic Grothendieck ring.

    ``terms`` maps ``(lefschetz_exponent, class_monomial)`` to a nonzero
    coefficient, where ``class_monomial`` is a sorted tuple of
    positive-dimensional :class:`AbelianClassSymbol` (repetition allowed).
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping | None = None):
        clean = {}
        if terms:
            for (k, mono), c in terms.items():
                if not c:
                    continue
                mono = tuple(sorted(s for s in mono if s.dim > 0))
                key = (int(k), mono)
                clean[key] = clean.get(key, 0) + c
            clean = {key: _norm(c) for key, c in clean.items() if c}
            for _, mono in clean:
                _check_monomial(mono)
        self._terms = clean
        self._hash = None

    # -- constructors -------------------------------------------------------

    @classmethod
    def _raw(cls, terms):
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def constant(cls, c) -> "GRingElement":
        return cls({(0, ()): c})

    @classmethod
    def lefschetz(cls, k: int = 1) -> "GRingElement":
        """The monomial ``L**k``."""
        return cls({(k, ()): 1})

    @classmethod
    def abelian(cls, sym: AbelianClassSymbol) -> "GRingElement":
        return cls({(0, (sym,)): 1})

    @classmethod
    def monomial(cls, coeff, lexp: int = 0, classes: Iterable[AbelianClassSymbol] = ()) -> "GRingElement":
        return cls({(lexp, tuple(classes)): coeff})

    # -- access -------------------------------------------------------------

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self._terms.values())

    def lefschetz_exponents(self):
        return sorted({k for k, _ in self._terms})

    def classes(self) -> set:
        return {s for _, mono in self._terms for s in mono}

    # -- arithmetic ---------------------------------------------------------

    @staticmethod
    def _coerce(other):
        if isinstance(other, GRingElement):
            return other
        if isinstance(other, (int, Fraction)):
            return GRingElement.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other._terms:
            return self
        out = dict(self._terms)
        for key, c in other._terms.items():
            v = out.get(key, 0) + c
            if v:
                out[key] = _norm(v)
            else:
                out.pop(key, None)
        return GRingElement._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return GRingElement._raw({key: -c for key, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return GRingElement._raw({})
            return GRingElement._raw({key: _norm(c * other) for key, c in self._terms.items()})
        if not isinstance(other, GRingElement):
            return NotImplemented
        out = {}
        for (k1, m1), c1 in self._terms.items():
            for (k2, m2), c2 in other._terms.items():
                key = (k1 + k2, _mono_mul(m1, m2))
                out[key] = out.get(key, 0) + c1 * c2
        return GRingElement._raw({key: _norm(c) for key, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only non-negative integer powers are supported")
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, k: int) -> "GRingElement":
        """Multiply by ``L**k``."""
        if not k:
            return self
        return GRingElement._raw({(e + k, m): c for (e, m), c in self._terms.items()})

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = GRingElement.constant(other)
        if not isinstance(other, GRingElement):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- rendering ----------------------------------------------------------

    def sorted_terms(self):
        return sorted(self._terms.items(), key=lambda kv: (kv[0][0], [s.id for s in kv[0][1]]))

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for (k, mono), c in self.sorted_terms():
            factors = []
            if k == 1:
                factors.append("L")
            elif k:
                factors.append(f"L^{k}")
            for sym, power in _group(mono):
                factors.append(f"[{sym.id}]" + (f"^{power}" if power > 1 else ""))
            mag = abs(c)
            if factors:
                body = "*".join(factors)
                text = body if mag == 1 else f"{mag}*{body}"
            else:
                text = str(mag)
            parts.append(("-" if c < 0 else "+", text))
        head_sign, head = parts[0]
        out = ("-" if head_sign == "-" else "") + head
        for sign, text in parts[1:]:
            out += f" {sign} {text}"
        return out

    def __repr__(self):
        return f"GRingElement({self})"


def _group(mono):
    out = []
    for sym in mono:
        if out and out[-1][0] == sym:
            out[-1][1] += 1
        else:
            out.append([sym, 1])
    return out


ZERO = GRingElement()
ONE = GRingElement.constant(1)
L = GRingElement.lefschetz(1)


def gring_arith(a: GRingElement, b: GRingElement, op: str) -> GRingElement:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown ring operation {op!r}")


def chi_top(a: GRingElement):
    """Euler characteristic: ``L -> 1``, positive-dimensional abelian classes -> 0."""
    return _norm(sum((c for (_, mono), c in a.items() if not mono), 0))


class LaurentPoly:
    """Laurent polynomial in ``z = u**(1/D)`` with rational coefficients."""

    __slots__ = ("D", "_coeffs")

    def __init__(self, coeffs: Mapping[int, Rational] | None = None, D: int = 1):
        if not isinstance(D, int) or D < 1:
            raise ValueError("lattice denominator must be a positive integer")
        self.D = D
        self._coeffs = {
            int(k): c if isinstance(c, int) else _norm(Fraction(c)) for k, c in (coeffs or {}).items() if c
        }

    @classmethod
    def from_u_poly(cls, coeffs: Mapping[int, Rational], D: int = 1) -> "LaurentPoly":
        """Build from a map ``u``-exponent -> coefficient."""
        return cls({k * D: c for k, c in coeffs.items()}, D)

    @property
    def coeffs(self) -> dict:
        return dict(self._coeffs)

    def relattice(self, D: int) -> "LaurentPoly":
        if D == self.D:
            return self
        if D % self.D:
            raise ValueError(f"lattice {self.D} does not divide {D}")
        f = D // self.D
        return LaurentPoly({k * f: c for k, c in self._coeffs.items()}, D)

    def _unify(self, other):
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly({0: other}, self.D)
        D = lcm(self.D, other.D)
        return self.relattice(D), other.relattice(D), D

    def __add__(self, other):
        a, b, D = self._unify(other)
        out = dict(a._coeffs)
        for k, c in b._coeffs.items():
            out[k] = out.get(k, 0) + c
        return LaurentPoly(out, D)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({k: -c for k, c in self._coeffs.items()}, self.D)

    def __sub__(self, other):
        return self + (-other if isinstance(other, LaurentPoly) else -Fraction(other))

    def __mul__(self, other):
        if not isinstance(other, LaurentPoly):
            return LaurentPoly({k: c * other for k, c in self._coeffs.items()}, self.D)
        a, b, D = self._unify(other)
        out = {}
        for k1, c1 in a._coeffs.items():
            for k2, c2 in b._coeffs.items():
                out[k1 + k2] = out.get(k1 + k2, 0) + c1 * c2
        return LaurentPoly(out, D)

    __rmul__ = __mul__

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by ``z**k``."""
        return LaurentPoly({e + k: c for e, c in self._coeffs.items()}, self.D)

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            if isinstance(other, (int, Fraction)):
                other = LaurentPoly({0: other}, self.D)
            else:
                return NotImplemented
        a, b, _ = self._unify(other)
        return a._coeffs == b._coeffs

    def __hash__(self):
        return hash(frozenset((Fraction(k, self.D), c) for k, c in self._coeffs.items()))

    def __bool__(self):
        return bool(self._coeffs)

    def is_zero(self) -> bool:
        return not self._coeffs

    def degree(self) -> Fraction:
        """Degree in ``u`` (may be fractional)."""
        if not self._coeffs:
            raise ValueError("zero polynomial has no degree")
        return Fraction(max(self._coeffs), self.D)

    def leading_coefficient(self):
        if not self._coeffs:
            return 0
        return self._coeffs[max(self._coeffs)]

    def at_one(self):
        return _norm(sum(self._coeffs.values(), Fraction(0)))

    def at_minus_one(self):
        """Evaluate at ``u = -1``; only defined for integral ``u``-exponents."""
        total = Fraction(0)
        for k, c in self._coeffs.items():
            if k % self.D:
                raise ValueError("fractional power of u cannot be evaluated at u = -1")
            total += c if (k // self.D) % 2 == 0 else -c
        return _norm(total)

    def __str__(self):
        if not self._coeffs:
            return "0"
        parts = []
        for k in sorted(self._coeffs, reverse=True):
            c = self._coeffs[k]
            x = Fraction(k, self.D)
            if x == 0:
                mono = ""
            elif x == 1:
                mono = "u"
            elif x.denominator == 1:
                mono = f"u^{x}"
            else:
                mono = f"u^({x})"
            mag = abs(c)
            text = str(mag) if not mono else (mono if mag == 1 else f"{mag}*{mono}")
            parts.append(("-" if c < 0 else "+", text))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, text in parts[1:]:
            out += f" {sign} {text}"
        return out

    def __repr__(self):
        return f"LaurentPoly({self}, D={self.D})"


def poincare(a: GRingElement, lattice: int = 1) -> LaurentPoly:
    """Poincare specialization: ``L -> u**2``, class of dim ``d`` -> ``(1+u)**(2d)``."""
    out = {}
    for (k, mono), c in a.items():
        n = 2 * sum(s.dim for s in mono)
        for i in range(n + 1):
            e = (2 * k + i) * lattice
            out[e] = out.get(e, 0) + c * comb(n, i)
    return LaurentPoly(out, lattice)
