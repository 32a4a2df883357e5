"""Jump spectra of tamely ramified semi-abelian varieties and derived data.

A :class:`JumpSpectrum` records the jumps ``j`` in ``[0, 1)`` with their
multiplicities.  From it we get the degree ``e`` of the minimal extension with
semi-abelian reduction, the base change conductor, the order function and
the unipotent rank of the Neron model after any tame base change.

A :class:`ReductionProfile` adds the per-divisor-of-``e`` Neron data (toric
rank, abelian rank, component count, abelian quotient) and answers queries at
arbitrary ``d`` through ``gcd(d, e)``.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from math import floor, gcd, lcm
from typing import Iterable, Mapping

from .gring import POINT, AbelianClassSymbol


class SpectrumError(ValueError):
    """Invalid jump data."""


class TamenessError(SpectrumError):
    """A degree or a spectrum is not tame with respect to ``p``."""


class ProfileError(ValueError):
    """Inconsistent reduction profile; ``divisor`` names the offending entry when known."""

    def __init__(self, message: str, divisor: int | None = None):
        super().__init__(message)
        self.divisor = divisor


class TraceFormulaError(ProfileError):
    """Component count at a purely additive divisor contradicts the trace formula."""


def tau(x: Fraction) -> int:
    """Order of ``x`` in Q/Z."""
    return Fraction(x).denominator


def frac(x: Fraction) -> Fraction:
    """Fractional part in ``[0, 1)``."""
    x = Fraction(x)
    return x - floor(x)


def divisors(n: int) -> list[int]:
    small, large = [], []
    i = 1
    while i * i <= n:
        if n % i == 0:
            small.append(i)
            if i * i != n:
                large.append(n // i)
        i += 1
    return small + large[::-1]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def check_degree(d: int, p: int) -> None:
    """Reject degrees outside N' (positive integers prime to ``p``)."""
    if isinstance(d, bool) or not isinstance(d, int) or d < 1:
        raise ValueError(f"degree must be a positive integer, got {d!r}")
    if p > 1 and d % p == 0:
        raise TamenessError(f"degree {d} is divisible by the residue characteristic {p}")


@dataclass(frozen=True)
class JumpSpectrum:
    """Jumps with multiplicities of a ``g``-dimensional semi-abelian variety.

    ``entries`` is normalized to a tuple of ``(jump, multiplicity)`` pairs
    sorted by jump, with equal jumps merged.
    """

    g: int
    p: int
    entries: tuple = field(default=())

    def __post_init__(self):
        g, p = self.g, self.p
        if isinstance(g, bool) or not isinstance(g, int) or g < 1:
            raise SpectrumError(f"dimension g must be a positive integer, got {g!r}")
        if isinstance(p, bool) or not isinstance(p, int) or not (p == 1 or is_prime(p)):
            raise SpectrumError(f"characteristic exponent p must be 1 or a prime, got {p!r}")
        raw = self.entries.items() if isinstance(self.entries, Mapping) else self.entries
        merged: dict[Fraction, int] = {}
        for j, m in raw:
            j = Fraction(j)
            if not 0 <= j < 1:
                raise SpectrumError(f"jump {j} is not in [0, 1)")
            if isinstance(m, bool) or not isinstance(m, int) or m < 1:
                raise SpectrumError(f"multiplicity of jump {j} must be a positive integer, got {m!r}")
            merged[j] = merged.get(j, 0) + m
        total = sum(merged.values())
        if total != g:
            raise SpectrumError(f"multiplicities sum to {total}, expected g = {g}")
        object.__setattr__(self, "entries", tuple(sorted(merged.items())))
        e = self.e
        if p > 1 and e % p == 0:
            raise TamenessError(f"e = {e} is divisible by p = {p}: the spectrum is not tame")

    @property
    def e(self) -> int:
        return lcm(*(tau(j) for j, _ in self.entries)) if self.entries else 1

    def as_dict(self) -> dict:
        return dict(self.entries)

    def multiplicity(self, j) -> int:
        return self.as_dict().get(Fraction(j), 0)

    def __str__(self):
        body = ", ".join(f"{j}:{m}" for j, m in self.entries)
        return f"{{{body}}} (g={self.g}, p={self.p})"


def derive_e(s: JumpSpectrum) -> int:
    return s.e


def base_change(s: JumpSpectrum, d: int) -> JumpSpectrum:
    """Jump spectrum after a tame base change of degree ``d``."""
    check_degree(d, s.p)
    return JumpSpectrum(s.g, s.p, [(frac(d * j), m) for j, m in s.entries])


def integer_jumps(s: JumpSpectrum, e_prime: int) -> dict[int, int]:
    """Jumps for the degree-``e_prime`` extension on its integral scale: ``floor(j * e_prime)``."""
    check_degree(e_prime, s.p)
    out: dict[int, int] = {}
    for j, m in s.entries:
        k = floor(j * e_prime)
        out[k] = out.get(k, 0) + m
    return dict(sorted(out.items()))


def conductor(s: JumpSpectrum) -> Fraction:
    return sum((m * j for j, m in s.entries), Fraction(0))


def elementary_divisors(s: JumpSpectrum) -> list[Fraction]:
    out = []
    for j, m in s.entries:
        if j:
            out.extend([j] * m)
    return out


def _ord(s: JumpSpectrum, d: int) -> int:
    return sum(m * floor(j * d) for j, m in s.entries)


def ord_(s: JumpSpectrum, d: int) -> int:
    """Order function ``sum m * floor(j * d)``."""
    check_degree(d, s.p)
    return _ord(s, d)


def _unipotent_rank(s: JumpSpectrum, d: int) -> int:
    return sum(m for j, m in s.entries if (d * j).denominator != 1)


def unipotent_rank(s: JumpSpectrum, d: int) -> int:
    check_degree(d, s.p)
    return _unipotent_rank(s, d)


@dataclass(frozen=True)
class ProfileRecord:
    """Neron data at one divisor of ``e``: toric rank, abelian rank, components, abelian quotient."""

    t: int
    a: int
    phi: int
    b_class: AbelianClassSymbol = POINT

    def to_json(self) -> dict:
        out = {"t": self.t, "a": self.a, "phi": self.phi}
        if self.a:
            out["b_class"] = self.b_class.to_json()
        return out


@dataclass(frozen=True)
class LocalData:
    """Neron data of ``A(d)`` for one degree ``d``."""

    d: int
    u: int
    t: int
    a: int
    phi: int
    b_class: AbelianClassSymbol


@dataclass(frozen=True)
class ReductionProfile:
    spectrum: JumpSpectrum
    records: Mapping[int, ProfileRecord]
    strict: bool = True
    warnings: tuple = ()

    @classmethod
    def build(
        cls,
        spectrum: JumpSpectrum,
        records: Mapping[int, ProfileRecord],
        strict: bool = True,
    ) -> "ReductionProfile":
        """Validate and complete per-divisor data.

        Divisors of ``e`` at which the reduction is purely additive may be
        omitted: there ``t = a = 0`` and the component count is read off the
        trace formula.  Any other divisor must be given explicitly.
        """
        from .monodromy import alternating_trace, eigen_exponents

        g, e = spectrum.g, spectrum.e
        divs = divisors(e)
        extra = sorted(set(records) - set(divs))
        if extra:
            raise ProfileError(f"profile keys {extra} are not divisors of e = {e}")
        roots = eigen_exponents(spectrum)
        notes = []
        full = {}
        for alpha in divs:
            u = _unipotent_rank(spectrum, alpha)
            rec = records.get(alpha)
            if rec is None:
                if u != g:
                    raise ProfileError(
                        f"divisor {alpha}: missing profile entry (reduction is not purely additive there)",
                        divisor=alpha,
                    )
                rec = ProfileRecord(0, 0, alternating_trace(roots, alpha), POINT)
            check_record(alpha, rec, u, g)
            if u == g:
                expected = alternating_trace(roots, alpha)
                if rec.phi != expected:
                    msg = (
                        f"divisor {alpha}: phi = {rec.phi} but the trace formula gives "
                        f"{expected} at this purely additive divisor"
                    )
                    if strict:
                        raise TraceFormulaError(msg, divisor=alpha)
                    warnings.warn(msg, stacklevel=2)
                    notes.append(msg)
            full[alpha] = rec
        t_e = full[e].t
        for alpha, rec in full.items():
            if rec.t > t_e:
                raise ProfileError(
                    f"divisor {alpha}: toric rank {rec.t} exceeds the potential toric rank {t_e}", divisor=alpha
                )
        ids: dict[str, int] = {}
        for alpha, rec in full.items():
            if ids.setdefault(rec.b_class.id, rec.b_class.dim) != rec.b_class.dim:
                raise ProfileError(f"abelian class {rec.b_class.id!r} used with two different dimensions")
        return cls(spectrum, dict(sorted(full.items())), strict, tuple(notes))

    @property
    def e(self) -> int:
        return self.spectrum.e

    @property
    def t_pot(self) -> int:
        return self.records[self.e].t

    def potential_good(self) -> bool:
        return self.t_pot == 0

    def local(self, d: int) -> LocalData:
        """Data at ``d`` via ``gcd(d, e)``, without the N' membership check."""
        alpha = gcd(d, self.e)
        rec = self.records[alpha]
        return LocalData(
            d=d,
            u=self.spectrum.g - rec.t - rec.a,
            t=rec.t,
            a=rec.a,
            phi=(d // alpha) ** rec.t * rec.phi,
            b_class=rec.b_class,
        )


def check_record(alpha, rec, u, g):
    for name in ("t", "a", "phi"):
        v = getattr(rec, name)
        if isinstance(v, bool) or not isinstance(v, int):
            raise ProfileError(f"divisor {alpha}: {name} must be an integer, got {v!r}", divisor=alpha)
    if rec.t < 0 or rec.a < 0:
        raise ProfileError(f"divisor {alpha}: ranks must be non-negative", divisor=alpha)
    if rec.phi < 1:
        raise ProfileError(f"divisor {alpha}: component count must be positive, got {rec.phi}", divisor=alpha)
    if u + rec.t + rec.a != g:
        raise ProfileError(f"divisor {alpha}: u + t + a = {u} + {rec.t} + {rec.a} != g = {g}", divisor=alpha)
    if rec.b_class.dim != rec.a:
        raise ProfileError(
            f"divisor {alpha}: abelian class {rec.b_class.id!r} has dimension {rec.b_class.dim}, "
            f"expected abelian rank {rec.a}",
            divisor=alpha,
        )


def profile_at(pr: ReductionProfile, d: int) -> LocalData:
    check_degree(d, pr.spectrum.p)
    return pr.local(d)


def make_profile(
    spectrum: JumpSpectrum,
    records: Mapping[int, Iterable] | None = None,
    strict: bool = True,
) -> ReductionProfile:
    """Convenience wrapper accepting ``{alpha: (t, a, phi[, b_class])}`` tuples."""
    recs = {}
    for alpha, val in (records or {}).items():
        if isinstance(val, ProfileRecord):
            recs[alpha] = val
            continue
        t, a, phi, *rest = val
        b = rest[0] if rest else (AbelianClassSymbol(f"B{alpha}", a) if a else POINT)
        if isinstance(b, str):
            b = AbelianClassSymbol(b, a)
        recs[alpha] = ProfileRecord(t, a, phi, b)
    return ReductionProfile.build(spectrum, recs, strict=strict)


order_function = ord_
