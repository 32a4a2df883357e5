"""Random realizable tame inputs for property tests and benchmarks."""

from __future__ import annotations

import random
from fractions import Fraction
from math import gcd

from .gring import AbelianClassSymbol, GRingElement
from .jumps import JumpSpectrum, ProfileRecord, ReductionProfile, _unipotent_rank, divisors
from .monodromy import InconsistentSpectrumError, check_multiplicity_bound, eigen_exponents

PRIMES = (1, 2, 3, 5, 7)


def random_spectrum(rng: random.Random, g_max: int = 3, e_max: int = 12, p: int | None = None) -> JumpSpectrum:
    """A tame spectrum passing the realizability constraints on the monodromy.

    Rejection-samples jumps ``k/n`` until every ``nu_d`` is divisible by
    ``phi(d)`` and every multiplicity bound holds.
    """
    while True:
        g = rng.randint(1, g_max)
        n = rng.randint(1, e_max)
        jumps = []
        for _ in range(g):
            jumps.append(Fraction(0) if rng.random() < 0.25 else Fraction(rng.randrange(n), n))
        e = 1
        for j in jumps:
            e = e * j.denominator // gcd(e, j.denominator)
        choices = [q for q in PRIMES if gcd(q, e) == 1] if p is None else [p]
        if not choices or (p is not None and gcd(p, e) != 1):
            continue
        s = JumpSpectrum(g, rng.choice(choices), [(j, 1) for j in jumps])
        try:
            eigen_exponents(s)
        except InconsistentSpectrumError:
            continue
        if check_multiplicity_bound(s):
            return s


def random_profile(rng: random.Random, spectrum: JumpSpectrum | None = None, **kw) -> ReductionProfile:
    s = spectrum if spectrum is not None else random_spectrum(rng, **kw)
    g, e = s.g, s.e
    divs = divisors(e)
    t_at: dict[int, int] = {}
    for alpha in reversed(divs):
        cap = g - _unipotent_rank(s, alpha)
        for beta in divs:
            if beta != alpha and beta % alpha == 0:
                cap = min(cap, t_at[beta])
        t_at[alpha] = rng.randint(0, cap)
    records = {}
    for alpha in divs:
        u = _unipotent_rank(s, alpha)
        if u == g:
            continue
        t = t_at[alpha]
        a = g - u - t
        b = AbelianClassSymbol(f"{rng.choice('BC')}{a}", a) if a else AbelianClassSymbol("pt", 0)
        records[alpha] = ProfileRecord(t, a, rng.randint(1, 6), b)
    return ReductionProfile.build(s, records)


def random_gring(rng: random.Random, max_terms: int = 5, classes=None) -> GRingElement:
    if classes is None:
        classes = [AbelianClassSymbol("pt", 0), AbelianClassSymbol("E", 1), AbelianClassSymbol("S", 2), AbelianClassSymbol("T", 3)]
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        mono = tuple(rng.choice(classes) for _ in range(rng.randint(0, 2)))
        terms[(rng.randint(-3, 4), mono)] = rng.randint(-9, 9)
    return GRingElement(terms)
