"""Elliptic curves described by their Kodaira-Neron reduction type.

The jump (equivalently the base change conductor) of each reduction type and
the component-group orders of the additive fibers are curated data.  At import
time every entry is checked against two independent facts: ``e`` must equal
the order of the conductor in Q/Z, and each additive component count must
equal the monodromy product ``(1 - xi_1)(1 - xi_2)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import floor

from .gring import GRingElement, L, AbelianClassSymbol
from .jumps import JumpSpectrum, ReductionProfile, conductor, make_profile, tau
from .monodromy import alternating_trace, char_poly_sigma, cyclotomic, eigen_exponents
from .zeta import MotivicRational

ELLIPTIC_CLASS = AbelianClassSymbol("E0", 1)

# tag -> (jump, potential toric rank)
JUMPS = {
    "I0": (Fraction(0), 0),
    "In": (Fraction(0), 1),
    "II": (Fraction(1, 6), 0),
    "III": (Fraction(1, 4), 0),
    "IV": (Fraction(1, 3), 0),
    "I0*": (Fraction(1, 2), 0),
    "In*": (Fraction(1, 2), 1),
    "IV*": (Fraction(2, 3), 0),
    "III*": (Fraction(3, 4), 0),
    "II*": (Fraction(5, 6), 0),
}

# tag -> e, the degree of the minimal extension with semi-abelian reduction
DEGREES = {"I0": 1, "In": 1, "II": 6, "III": 4, "IV": 3, "I0*": 2, "In*": 2, "IV*": 3, "III*": 4, "II*": 6}

# component-group orders of the additive fibers
ADDITIVE_COMPONENTS = {"II": 1, "III": 2, "IV": 3, "I0*": 4, "In*": 4, "IV*": 3, "III*": 2, "II*": 1}

_TAG = re.compile(r"^(?:I(\d+)(\*?)|(II|III|IV)(\*?))$")


class KodairaTableError(AssertionError):
    pass


@dataclass(frozen=True)
class KodairaType:
    tag: str
    n: int | None = None

    def __post_init__(self):
        if self.tag not in JUMPS:
            raise ValueError(f"unknown Kodaira tag {self.tag!r}")
        if self.tag in ("In", "In*"):
            if not isinstance(self.n, int) or self.n < 1:
                raise ValueError(f"{self.tag} needs a positive integer n")
        elif self.n is not None:
            raise ValueError(f"{self.tag} takes no parameter")

    @classmethod
    def parse(cls, text: str) -> "KodairaType":
        m = _TAG.match(text.strip())
        if not m:
            raise ValueError(f"unknown Kodaira type {text!r}")
        digits, star, roman, rstar = m.groups()
        if roman:
            return cls(roman + rstar)
        n = int(digits)
        if n == 0:
            return cls("I0" + star)
        return cls("In" + star, n)

    @property
    def name(self) -> str:
        if self.tag == "In":
            return f"I{self.n}"
        if self.tag == "In*":
            return f"I{self.n}*"
        return self.tag

    @property
    def jump(self) -> Fraction:
        return JUMPS[self.tag][0]

    @property
    def e(self) -> int:
        return DEGREES[self.tag]

    @property
    def potentially_multiplicative(self) -> bool:
        return JUMPS[self.tag][1] == 1

    def __str__(self):
        return self.name


def battery(ns=(1, 2, 5)) -> list[KodairaType]:
    """Every reduction type, with ``I_n`` and ``I_n*`` at the given ``n``."""
    out = [KodairaType("I0")]
    out += [KodairaType("In", n) for n in ns]
    out += [KodairaType(t) for t in ("II", "III", "IV", "I0*")]
    out += [KodairaType("In*", n) for n in ns]
    out += [KodairaType(t) for t in ("IV*", "III*", "II*")]
    return out


def spectrum_of(k: KodairaType, p: int = 1) -> JumpSpectrum:
    return JumpSpectrum(1, p, [(k.jump, 1)])


def kodaira_input(k: KodairaType, p: int = 1) -> ReductionProfile:
    s = spectrum_of(k, p)
    e = s.e
    if k.tag == "In":
        rec = (1, 0, k.n)
    elif k.tag == "In*":
        # over K(2) an I_n* fiber becomes I_2n
        rec = (1, 0, 2 * k.n)
    else:
        rec = (0, 1, 1, ELLIPTIC_CLASS)
    return make_profile(s, {e: rec})


def _x(c: Fraction, b: int):
    return (int(c * b), b)


def elliptic_zeta(k: KodairaType, p: int = 1) -> MotivicRational:
    """Closed form of the zeta function written directly from the reduction type."""
    pr = kodaira_input(k, p)
    s = pr.spectrum
    e = s.e
    c = conductor(s)
    eps = 0 if p == 1 else 1
    ep = e * p
    x = _x(c, e)
    xp = _x(c, ep)
    roots = eigen_exponents(s)
    J = [i for i in range(1, ep) if (p == 1 or i % p) and i % e]
    total = MotivicRational({})
    if J:
        num = {i: L.shift(floor(c * i)) * alternating_trace(roots, i) for i in J}
        total = total + MotivicRational(num, {xp: 1})
    if not k.potentially_multiplicative:
        part = MotivicRational({e: GRingElement.lefschetz(x[0])}, {x: 1})
        if eps:
            part = part - MotivicRational({ep: GRingElement.lefschetz(xp[0])}, {xp: 1})
        total = total + part.scale(GRingElement.abelian(ELLIPTIC_CLASS))
    else:
        part = MotivicRational({e: GRingElement.lefschetz(x[0])}, {x: 2})
        if eps:
            part = part - MotivicRational({ep: GRingElement.lefschetz(xp[0]) * p}, {xp: 2})
        total = total + part.scale((L - 1) * pr.records[e].phi)
    return total


def p_sigma_expected(k: KodairaType):
    """Monodromy characteristic polynomial predicted from the conductor alone."""
    c = k.jump
    if c == 0:
        return cyclotomic(1) ** 2
    if c == Fraction(1, 2):
        return cyclotomic(2) ** 2
    return cyclotomic(tau(c))


def validate_table() -> None:
    for k in battery(ns=(1, 3)):
        if k.e != tau(k.jump):
            raise KodairaTableError(f"{k}: e = {k.e} but the conductor {k.jump} has order {tau(k.jump)}")
        s = spectrum_of(k)
        if char_poly_sigma(s) != p_sigma_expected(k):
            raise KodairaTableError(f"{k}: monodromy polynomial does not match the conductor")
        if k.tag in ADDITIVE_COMPONENTS:
            phi = alternating_trace(eigen_exponents(s), 1)
            if phi != ADDITIVE_COMPONENTS[k.tag]:
                raise KodairaTableError(
                    f"{k}: tabulated component count {ADDITIVE_COMPONENTS[k.tag]} but the trace formula gives {phi}"
                )


validate_table()
