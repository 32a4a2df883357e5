"""Batch front end.

``analyze`` reads a JSON document describing either a jump spectrum with its
per-divisor Neron data or a Kodaira type, runs the whole pipeline and prints a
report.  ``elliptic`` does the same for a Kodaira type given on the command
line, and ``expand`` prints the series coefficients of the closed form.

Exit status: 0 when every requested check passes, 1 when a check fails or a
computation errors out, 2 when the input is rejected.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .elliptic import KodairaType, elliptic_zeta, kodaira_input
from .gring import POINT, AbelianClassSymbol, LaurentPoly
from .jumps import (
    JumpSpectrum,
    ProfileError,
    ProfileRecord,
    ReductionProfile,
    SpectrumError,
    TamenessError,
    _ord,
    _unipotent_rank,
    check_record,
    conductor,
    divisors,
    elementary_divisors,
    is_prime,
)
from .monodromy import (
    InconsistentSpectrumError,
    IntegralityError,
    char_poly_factorization,
    char_poly_sigma,
    check_hg_cyclotomic,
    check_jump_divisor,
    check_multiplicity_bound,
    eigen_exponents,
    hg_polynomial,
    hi_char_poly,
    is_p_tame,
)
from .zeta import (
    MotivicSeries,
    chi_identity_check,
    class_residue_formula,
    closed_form,
    degree,
    expand,
    pole_analysis,
    series,
)

CHECKS = ("oracle", "pole", "chi", "monodromy", "degree", "bounds")
DEFAULT_TRUNCATION = 200
FORMATS = ("text", "json")

_RATIONAL = re.compile(r"^\s*(-?\d+)\s*(?:/\s*(\d+)\s*)?$")
_SPECTRUM_KEYS = {"g", "p", "jumps", "profile"}
_KODAIRA_KEYS = {"kodaira", "p"}
_RECORD_KEYS = {"t", "a", "phi", "b_class"}


class InputError(ValueError):
    """Rejected input; ``path`` locates the offending field (``$`` is the document root)."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path
        self.message = message


def rational_str(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class AnalysisRequest:
    profile: ReductionProfile
    kodaira: KodairaType | None = None
    truncation: int = DEFAULT_TRUNCATION
    checks: tuple = CHECKS
    fmt: str = "text"

    @property
    def strict(self) -> bool:
        return self.profile.strict


def default_truncation(pr: ReductionProfile) -> int:
    """200 terms, or two full periods ``e*p`` when that is longer."""
    return max(DEFAULT_TRUNCATION, 2 * pr.e * pr.spectrum.p)


# --- parsing ---------------------------------------------------------------


def _int(value, path: str, minimum: int | None = None) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise InputError(path, f"expected an integer, got {json.dumps(value)}")
    if minimum is not None and value < minimum:
        raise InputError(path, f"must be at least {minimum}, got {value}")
    return value


def _rational(value, path: str) -> Fraction:
    if isinstance(value, int) and not isinstance(value, bool):
        return Fraction(value)
    if isinstance(value, str):
        m = _RATIONAL.match(value)
        if m:
            num, den = int(m.group(1)), int(m.group(2) or 1)
            if den == 0:
                raise InputError(path, "zero denominator")
            return Fraction(num, den)
    raise InputError(path, f"expected a rational string 'a/b', got {json.dumps(value)}")


def _object(value, path: str, allowed: set, required: set) -> dict:
    if not isinstance(value, dict):
        raise InputError(path, f"expected an object, got {json.dumps(value)}")
    unknown = sorted(set(value) - allowed)
    if unknown:
        raise InputError(f"{path}.{unknown[0]}", "unknown key")
    missing = sorted(required - set(value))
    if missing:
        raise InputError(path, f"missing key {missing[0]!r}")
    return value


def _p(value, path: str = "$.p") -> int:
    p = _int(value, path, minimum=1)
    if p != 1 and not is_prime(p):
        raise InputError(path, f"characteristic exponent must be 1 or a prime, got {p}")
    return p


def _b_class(value, a: int, path: str) -> AbelianClassSymbol:
    if isinstance(value, str):
        if not value:
            raise InputError(path, "empty class id")
        return AbelianClassSymbol(value, a)
    obj = _object(value, path, {"id", "dim"}, {"id", "dim"})
    if not isinstance(obj["id"], str) or not obj["id"]:
        raise InputError(f"{path}.id", "expected a non-empty string")
    dim = _int(obj["dim"], f"{path}.dim", minimum=0)
    if dim != a:
        raise InputError(f"{path}.dim", f"dimension {dim} differs from the abelian rank a = {a}")
    return AbelianClassSymbol(obj["id"], dim)


def _parse_spectrum(doc: dict) -> JumpSpectrum:
    g = _int(doc["g"], "$.g", minimum=1)
    p = _p(doc["p"])
    if not isinstance(doc["jumps"], list):
        raise InputError("$.jumps", "expected a list")
    entries = []
    for i, item in enumerate(doc["jumps"]):
        path = f"$.jumps[{i}]"
        obj = _object(item, path, {"j", "m"}, {"j", "m"})
        j = _rational(obj["j"], f"{path}.j")
        if not 0 <= j < 1:
            raise InputError(f"{path}.j", f"jump {j} is not in [0, 1)")
        entries.append((j, _int(obj["m"], f"{path}.m", minimum=1)))
    try:
        s = JumpSpectrum(g, p, entries)
    except TamenessError as exc:
        raise InputError("$.p", str(exc)) from None
    except SpectrumError as exc:
        raise InputError("$.jumps", str(exc)) from None
    try:
        eigen_exponents(s)
    except InconsistentSpectrumError as exc:
        raise InputError("$.jumps", str(exc)) from None
    return s


def _parse_profile(value, s: JumpSpectrum, strict: bool) -> ReductionProfile:
    if not isinstance(value, dict):
        raise InputError("$.profile", "expected an object keyed by divisors of e")
    e, g = s.e, s.g
    records = {}
    paths = {}
    for key, raw in value.items():
        path = f"$.profile.{key}"
        if not re.fullmatch(r"[1-9]\d*", key):
            raise InputError(path, "key must be a positive integer written in decimal")
        alpha = int(key)
        if e % alpha:
            raise InputError(path, f"{alpha} is not a divisor of e = {e}")
        obj = _object(raw, path, _RECORD_KEYS, {"t", "a", "phi"})
        t = _int(obj["t"], f"{path}.t", minimum=0)
        a = _int(obj["a"], f"{path}.a", minimum=0)
        phi = _int(obj["phi"], f"{path}.phi", minimum=1)
        if a and "b_class" not in obj:
            raise InputError(path, f"b_class is required when a = {a} > 0")
        if not a and "b_class" in obj:
            raise InputError(f"{path}.b_class", "only allowed when a > 0")
        b = _b_class(obj["b_class"], a, f"{path}.b_class") if a else POINT
        rec = ProfileRecord(t, a, phi, b)
        try:
            check_record(alpha, rec, _unipotent_rank(s, alpha), g)
        except ProfileError as exc:
            raise InputError(path, str(exc)) from None
        records[alpha] = rec
        paths[alpha] = path
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            return ReductionProfile.build(s, records, strict=strict)
    except ProfileError as exc:
        raise InputError(paths.get(exc.divisor, "$.profile"), str(exc)) from None


def parse_document(document, strict: bool = True) -> tuple[ReductionProfile, KodairaType | None]:
    """Validate a JSON document (text or decoded) into a profile."""
    if isinstance(document, (str, bytes)):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise InputError("$", f"invalid JSON: {exc}") from None
    if not isinstance(document, dict):
        raise InputError("$", "expected a JSON object")
    if "kodaira" in document:
        doc = _object(document, "$", _KODAIRA_KEYS, _KODAIRA_KEYS)
        if not isinstance(doc["kodaira"], str):
            raise InputError("$.kodaira", "expected a Kodaira tag string")
        try:
            k = KodairaType.parse(doc["kodaira"])
        except ValueError as exc:
            raise InputError("$.kodaira", str(exc)) from None
        p = _p(doc["p"])
        try:
            return kodaira_input(k, p), k
        except TamenessError as exc:
            raise InputError("$.p", str(exc)) from None
    doc = _object(document, "$", _SPECTRUM_KEYS, _SPECTRUM_KEYS)
    s = _parse_spectrum(doc)
    return _parse_profile(doc["profile"], s, strict), None


def _request(pr, k, truncate, checks, fmt) -> AnalysisRequest:
    if truncate is None:
        N = default_truncation(pr)
    else:
        N = _int(truncate, "--truncate", minimum=1)
        if N < pr.e:
            raise InputError("--truncate", f"truncation {N} is smaller than e = {pr.e}")
    if checks is None or (isinstance(checks, str) and not checks.strip()):
        names = CHECKS
    else:
        items = checks.split(",") if isinstance(checks, str) else list(checks)
        wanted = {c.strip() for c in items if c.strip()}
        unknown = sorted(wanted - set(CHECKS))
        if unknown:
            raise InputError("--checks", f"unknown check {unknown[0]!r}; choose from {', '.join(CHECKS)}")
        names = tuple(c for c in CHECKS if c in wanted) or CHECKS
    if fmt not in FORMATS:
        raise InputError("--format", f"unknown format {fmt!r}")
    return AnalysisRequest(pr, k, N, names, fmt)


def parse_input(document, truncate=None, checks=None, fmt: str = "text", strict: bool = True) -> AnalysisRequest:
    pr, k = parse_document(document, strict)
    return _request(pr, k, truncate, checks, fmt)


def elliptic_request(tag: str, p: int = 1, truncate=None, checks=None, fmt: str = "text") -> AnalysisRequest:
    return parse_input({"kodaira": tag, "p": p}, truncate, checks, fmt)


def render_input(req: AnalysisRequest | ReductionProfile) -> dict:
    """Canonical JSON document; omitted additive divisors appear filled in."""
    if isinstance(req, AnalysisRequest):
        if req.kodaira is not None:
            return {"kodaira": req.kodaira.name, "p": req.profile.spectrum.p}
        pr = req.profile
    else:
        pr = req
    s = pr.spectrum
    return {
        "g": s.g,
        "p": s.p,
        "jumps": [{"j": rational_str(j), "m": m} for j, m in s.entries],
        "profile": {str(alpha): rec.to_json() for alpha, rec in pr.records.items()},
    }


# --- analysis --------------------------------------------------------------


def _verdict(ok: bool, details=(), reason: str = "") -> dict:
    if ok:
        return {"status": "pass"}
    details = [str(d) for d in details]
    out = {"status": "fail", "reason": reason or (details[0] if details else "check failed")}
    if details:
        out["details"] = details
    return out


def _skipped(reason: str) -> dict:
    return {"status": "skipped", "reason": reason}


def _series_diff(a: MotivicSeries, b: MotivicSeries, label: str, limit: int = 5) -> list[str]:
    bad = a.mismatches(b)
    return [f"{label} differs at T^{d}: {a.coefficient(d)} vs {b.coefficient(d)}" for d in bad[:limit]] + (
        [f"{len(bad) - limit} further mismatches"] if len(bad) > limit else []
    )


def ord_identity_failures(s: JumpSpectrum, q_max: int = 5, span: int = 10) -> list[str]:
    """``ord(d + q e) = ord(d) + q c e`` and ``ord(d) <= c d`` with equality iff ``e | d``."""
    e, p = s.e, s.p
    c = conductor(s)
    bad = []
    for d in range(1, span * e + 1):
        if p > 1 and d % p == 0:
            continue
        o = _ord(s, d)
        if o > c * d or (o == c * d) != (d % e == 0):
            bad.append(f"ord({d}) = {o} against c*d = {c * d}")
        for q in range(1, q_max + 1):
            if _ord(s, d + q * e) != o + q * c * e:
                bad.append(f"ord({d} + {q}*{e}) != ord({d}) + {q}*c*e")
    return bad


def _check_oracle(req, cf):
    pr, N = req.profile, req.truncation
    ref = series(pr, N)
    bad = _series_diff(expand(cf, N), ref, "closed form")
    if req.kodaira is not None:
        ez = elliptic_zeta(req.kodaira, pr.spectrum.p)
        bad += _series_diff(expand(ez, N), ref, "elliptic closed form")
    return _verdict(not bad, bad, f"expansion disagrees with the series up to T^{N}" if bad else "")


def _check_pole(req, cf, pole):
    pr = req.profile
    t = pr.t_pot
    c = conductor(pr.spectrum)
    bad = []
    if pole.location != c:
        bad.append(f"location {pole.location} != c = {c}")
    if not pole.unique:
        bad.append("pole at s = c is not the unique candidate")
    if pole.order != t + 1:
        bad.append(f"order {pole.order} != t_pot + 1 = {t + 1}")
    if pole.residue_leading_sign != (-1) ** (t + 1):
        bad.append(f"residue sign {pole.residue_leading_sign} != {(-1) ** (t + 1)}")
    if not bad:
        predicted = LaurentPoly({}, pole.residue.D)
        for alpha in range(1, pr.e + 1):
            if pr.local(alpha).t == t:
                predicted = predicted + class_residue_formula(pr, alpha)
        if predicted != pole.residue:
            bad.append(f"residue {pole.residue} != predicted {predicted}")
    return _verdict(not bad, bad)


def _check_chi(req):
    res = chi_identity_check(req.profile, req.truncation)
    bad = list(res.details[:5]) + list(req.profile.warnings)
    return _verdict(res.passed and not req.profile.warnings, bad, "Euler characteristics contradict the trace formula")


def _check_monodromy(req):
    s = req.profile.spectrum
    bad = []
    poly = char_poly_sigma(s)
    if poly.degree != 2 * s.g:
        bad.append(f"P_sigma has degree {poly.degree}, expected {2 * s.g}")
    if not is_p_tame(poly, s.p, divisors(s.e)):
        bad.append("P_sigma is not a product of cyclotomic factors of order dividing e and prime to p")
    for res in (check_jump_divisor(s), check_hg_cyclotomic(s)):
        if not res:
            bad += [f"{res.name}: {d}" for d in res.details] or [res.name]
    roots = eigen_exponents(s)
    for i in range(0, 2 * s.g + 1):
        try:
            h = hi_char_poly(roots, i)
        except IntegralityError as exc:
            bad.append(f"H^{i}: {exc}")
            continue
        if h.degree != comb(2 * s.g, i):
            bad.append(f"H^{i} polynomial has degree {h.degree}, expected {comb(2 * s.g, i)}")
    return _verdict(not bad, bad)


def _check_degree(req, deg):
    pr = req.profile
    good = pr.spectrum.p == 1 and pr.potential_good()
    ok = deg == 0 if good else deg < 0
    expect = "0" if good else "negative"
    return _verdict(ok, [f"degree {deg}, expected {expect}"])


def _check_bounds(req):
    s = req.profile.spectrum
    res = check_multiplicity_bound(s)
    bad = list(res.details) + ord_identity_failures(s)
    return _verdict(not bad, bad[:10])


@dataclass
class AnalysisReport:
    input: dict
    truncation: int
    strict: bool = True
    summary: dict = field(default_factory=dict)
    checks: dict = field(default_factory=dict)
    warnings: list = field(default_factory=list)
    errors: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.errors and all(v["status"] != "fail" for v in self.checks.values())

    @property
    def exit_status(self) -> int:
        return 0 if self.passed else 1

    def to_json(self) -> dict:
        return {
            "input": self.input,
            "truncation": self.truncation,
            "mode": "strict" if self.strict else "lenient",
            **self.summary,
            "checks": self.checks,
            "warnings": self.warnings,
            "errors": self.errors,
            "status": "pass" if self.passed else "fail",
        }

    def to_text(self) -> str:
        rows = []
        inp = self.input
        if "kodaira" in inp:
            rows.append(("input", f"Kodaira type {inp['kodaira']}, p = {inp['p']}"))
        else:
            jumps = ", ".join(f"{j['j']} (x{j['m']})" for j in inp["jumps"])
            rows.append(("input", f"g = {inp['g']}, p = {inp['p']}, jumps {jumps}"))
        rows.append(("mode", "strict" if self.strict else "lenient"))
        rows.append(("truncation", str(self.truncation)))
        sm = self.summary
        if "conductor" in sm:
            rows.append(("conductor", sm["conductor"]))
            rows.append(("elementary divisors", ", ".join(sm["elementary_divisors"]) or "none"))
            rows.append(("e", str(sm["e"])))
            rows.append(("t_pot", str(sm["t_pot"])))
        if "p_sigma" in sm:
            fac = " * ".join(
                f"Phi_{d}" + (f"^{m}" if m > 1 else "") for d, m in sm["p_sigma"]["factorization"].items()
            )
            rows.append(("P_sigma", fac))
        if "hg" in sm:
            rows.append(("H^g polynomial", sm["hg"]["polynomial"]))
            rows.append((f"Phi_{sm['hg']['tau_c']} | H^g", _status_text(sm["hg"]["verdict"])))
        if "closed_form" in sm:
            rows.append(("zeta numerator", sm["closed_form"]["numerator"]))
            rows.append(("zeta denominator", sm["closed_form"]["denominator"]))
        if "pole" in sm:
            pl = sm["pole"]
            rows.append(("pole", f"s = {pl['location']}, order {pl['order']}, residue sign {pl['residue_leading_sign']:+d}"))
            rows.append(("residue", pl["residue"] or "n/a"))
        if "degree" in sm:
            rows.append(("degree", str(sm["degree"])))
        for name, v in self.checks.items():
            rows.append((f"check {name}", _status_text(v)))
            details = v.get("details", [])
            if details and details[0] == v.get("reason"):
                details = details[1:]
            rows += [("", f"  {d}") for d in details]
        for w in self.warnings:
            rows.append(("warning", w))
        for err in self.errors:
            rows.append(("error", err))
        rows.append(("status", "pass" if self.passed else "fail"))
        width = max(len(k) for k, _ in rows)
        return "\n".join(f"{k.ljust(width)} {':' if k else ' '} {v}" for k, v in rows)


def _status_text(v: dict) -> str:
    if v["status"] == "pass":
        return "pass"
    return f"{v['status']} ({v['reason']})"


def run(req: AnalysisRequest) -> AnalysisReport:
    pr = req.profile
    s = pr.spectrum
    rep = AnalysisReport(render_input(req), req.truncation, req.strict, warnings=list(pr.warnings))

    def stage(name, fn):
        try:
            return fn()
        except (ArithmeticError, ValueError) as exc:
            rep.errors.append(f"{name}: {type(exc).__name__}: {exc}")
            return None

    c = conductor(s)
    rep.summary["conductor"] = rational_str(c)
    rep.summary["elementary_divisors"] = [rational_str(j) for j in elementary_divisors(s)]
    rep.summary["e"] = pr.e
    rep.summary["t_pot"] = pr.t_pot
    fac = stage("monodromy", lambda: char_poly_factorization(s))
    if fac is not None:
        rep.summary["p_sigma"] = {
            "polynomial": str(char_poly_sigma(s)),
            "factorization": {str(d): m for d, m in sorted(fac.items())},
        }
    hg = stage("monodromy", lambda: hg_polynomial(s))
    if hg is not None:
        res = check_hg_cyclotomic(s)
        rep.summary["hg"] = {
            "polynomial": str(hg),
            "tau_c": c.denominator,
            "verdict": _verdict(res.passed, res.details),
        }
    cf = stage("closed_form", lambda: closed_form(pr))
    pole = deg = None
    if cf is not None:
        rep.summary["closed_form"] = {"numerator": cf.numerator_str(), "denominator": cf.denominator_str()}
        pole = stage("pole", lambda: pole_analysis(cf, pr))
        if pole is not None:
            rep.summary["pole"] = pole.to_json()
        deg = stage("degree", lambda: degree(cf))
        if deg is not None:
            rep.summary["degree"] = deg

    needs = {"oracle": cf, "pole": pole, "degree": deg}
    runners = {
        "oracle": lambda: _check_oracle(req, cf),
        "pole": lambda: _check_pole(req, cf, pole),
        "chi": lambda: _check_chi(req),
        "monodromy": lambda: _check_monodromy(req),
        "degree": lambda: _check_degree(req, deg),
        "bounds": lambda: _check_bounds(req),
    }
    for name in CHECKS:
        if name not in req.checks:
            rep.checks[name] = _skipped("not requested")
        elif name in needs and needs[name] is None:
            rep.checks[name] = _verdict(False, reason=f"{name} input unavailable after an earlier error")
        else:
            try:
                rep.checks[name] = runners[name]()
            except (ArithmeticError, ValueError) as exc:
                rep.checks[name] = _verdict(False, reason=f"{type(exc).__name__}: {exc}")
    return rep


def expansion(req: AnalysisRequest) -> MotivicSeries:
    return expand(closed_form(req.profile), req.truncation)


# --- command line ----------------------------------------------------------


def _common(sub: argparse.ArgumentParser):
    sub.add_argument("--truncate", type=int, default=None, metavar="N", help="series truncation (default 200)")
    sub.add_argument("--checks", default=None, metavar="LIST", help=f"comma-separated subset of {','.join(CHECKS)}")
    sub.add_argument("--format", choices=FORMATS, default="text")
    sub.add_argument("--lenient", action="store_true", help="downgrade trace-formula violations to warnings")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="neronzeta", description="Exact zeta-series analysis from jump and Neron component data")
    subs = ap.add_subparsers(dest="command", required=True)
    an = subs.add_parser("analyze", help="analyze a JSON input file ('-' for stdin)")
    an.add_argument("file")
    _common(an)
    el = subs.add_parser("elliptic", help="analyze an elliptic curve by Kodaira type")
    el.add_argument("--type", required=True, dest="tag", metavar="TAG")
    el.add_argument("--p", type=int, default=1, metavar="P")
    _common(el)
    ex = subs.add_parser("expand", help="print series coefficients of the closed form")
    ex.add_argument("file")
    ex.add_argument("--truncate", type=int, required=True, metavar="N")
    ex.add_argument("--format", choices=FORMATS, default="text")
    ex.add_argument("--lenient", action="store_true")
    return ap


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError("$", f"cannot read {path}: {exc.strerror}") from None


def _emit_input_error(exc: InputError, fmt: str, out, err) -> int:
    if fmt == "json":
        print(json.dumps({"status": "input_error", "path": exc.path, "error": exc.message}, indent=2), file=out)
    else:
        print(f"input error at {exc.path}: {exc.message}", file=err)
    return 2


def _print_series(ser: MotivicSeries, fmt: str, out):
    if fmt == "json":
        doc = {"truncation": ser.N, "coefficients": [{"d": d, "coeff": str(c)} for d, c in ser.coefficients.items()]}
        print(json.dumps(doc, indent=2), file=out)
        return
    width = len(f"T^{ser.N}")
    for d, c in ser.coefficients.items():
        print(f"{f'T^{d}'.ljust(width)} : {c}", file=out)


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    fmt = args.format
    strict = not args.lenient
    try:
        if args.command == "elliptic":
            pr, k = parse_document({"kodaira": args.tag, "p": args.p})
        else:
            pr, k = parse_document(_read(args.file), strict)
        checks = getattr(args, "checks", None)
        req = _request(pr, k, args.truncate, checks, fmt)
    except InputError as exc:
        return _emit_input_error(exc, fmt, out, err)
    if args.command == "expand":
        try:
            ser = expansion(req)
        except (ArithmeticError, ValueError) as exc:
            print(f"error: {exc}", file=err)
            return 1
        _print_series(ser, fmt, out)
        return 0
    rep = run(req)
    if fmt == "json":
        print(json.dumps(rep.to_json(), indent=2), file=out)
    else:
        print(rep.to_text(), file=out)
    return rep.exit_status


if __name__ == "__main__":
    sys.exit(main())
