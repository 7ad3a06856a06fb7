"""Short exact renderings of cyclotomic values for CLI reports.

Rationals print as fractions, square roots as ``sqrt(q)``, real quadratic
surds as ``(p + q*sqrt(n))/D``, purely imaginary values as ``i``-multiples,
complex values with renderable parts as ``re + (im)*i``, and everything else
in the canonical ``cyc(e=<conductor>; <index>:<coeff>, ...)`` serialization.
Candidate forms are guessed from certified decimals and then verified by
exact cyclotomic equality, so a rendering is never wrong — at worst it falls
back to the canonical form.  Every rendering is value-determined, making
identical inputs give byte-identical reports.
"""

from __future__ import annotations

import math
from fractions import Fraction

from ..cyclo import Cyclotomic

_MINUS_I = Cyclotomic.root_of_unity(4, 3)
_SURD_BASES = (2, 3, 5, 6, 7, 10, 11, 13)
_SQRTS = {n: None for n in _SURD_BASES}


def _sqrt_cached(n: int) -> Cyclotomic:
    if _SQRTS[n] is None:
        from ..cyclo import sqrt_rational

        _SQRTS[n] = sqrt_rational(n)
    return _SQRTS[n]


def _quadratic_surd(v: Cyclotomic, v_float: float) -> str | None:
    """v as (p + q*sqrt(n))/D with small integers, exactly verified."""
    for n in _SURD_BASES:
        root = math.sqrt(n)
        for den in range(1, 25):
            target = v_float * den
            qmax = int(abs(target) / root) + 2
            for q in range(-qmax, qmax + 1):
                if q == 0:
                    continue
                p = round(target - q * root)
                if abs(p + q * root - target) > 1e-9 * den:
                    continue
                cand = (Cyclotomic.rational(p) + _sqrt_cached(n) * q) \
                    * Fraction(1, den)
                if cand == v:
                    g = math.gcd(math.gcd(abs(p), abs(q)), den)
                    p, q, den = p // g, q // g, den // g
                    qs = "sqrt(%d)" % n if q == 1 else \
                        "-sqrt(%d)" % n if q == -1 else f"{q}*sqrt({n})"
                    body = qs if p == 0 else f"{p}{'+' if q > 0 else ''}{qs}"
                    return body if den == 1 else f"({body})/{den}"
    return None


def _pretty_real(v: Cyclotomic) -> str | None:
    q = v.as_rational()
    if q is not None:
        return str(q)
    q2 = (v * v).as_rational()
    if q2 is not None:
        sign = "-" if v.sign_real() < 0 else ""
        return f"{sign}sqrt({q2})"
    return _quadratic_surd(v, v.approx(1e-12).midpoint.real)


def _imag_str(im: str) -> str:
    if im == "1":
        return "i"
    if im == "-1":
        return "-i"
    if any(ch in im for ch in "+-*/") and not im.startswith("-"):
        return f"({im})*i"
    if im.startswith("-") and any(ch in im[1:] for ch in "+-*/"):
        return f"-({im[1:]})*i"
    return f"{im}*i"


def pretty(v: Cyclotomic) -> str:
    if v.is_real():
        got = _pretty_real(v)
        if got is not None:
            return got
    else:
        w = v * _MINUS_I
        if w.is_real():
            got = _pretty_real(w)
            if got is not None:
                return _imag_str(got)
        else:
            re = v.real_part()
            im = (v - re) * _MINUS_I
            re_s, im_s = _pretty_real(re), _pretty_real(im)
            if re_s is not None and im_s is not None:
                tail = _imag_str(im_s)
                return f"{re_s}{'' if tail.startswith('-') else '+'}{tail}"
    d, coeffs = v.canonical_key()
    terms = ", ".join(f"{j}:{c}" for j, c in enumerate(coeffs) if c)
    return f"cyc(e={d}; {terms})"


def decimal_str(v: Cyclotomic, digits: int = 10) -> str:
    """Decimal approximation with certified-noise components clipped to 0."""
    c = v.approx_rel(digits)
    re, im = c.midpoint.real, c.midpoint.imag
    if abs(re) <= c.radius:
        re = 0.0
    if abs(im) <= c.radius:
        return f"{re:.{digits}g}"
    return f"{re:.{digits}g}{im:+.{digits}g}i"


def value_str(v: Cyclotomic) -> str:
    """Exact rendering plus a decimal when the exact form is not a fraction."""
    p = pretty(v)
    if v.as_rational() is not None:
        return p
    return f"{p} ~ {decimal_str(v)}"


def bracket_row(cells) -> str:
    """Cells as bracket pairs ``[value, size]`` in the stored cell order."""
    return "".join(f"[{value_str(c.value)}, {c.size}]" for c in cells)


def sort_key_real(v: Cyclotomic):
    """Deterministic sort key for real values: descending numeric order."""
    return -v.approx(1e-12).midpoint.real


def multiset_str(pairs) -> str:
    """(value, count) pairs as ``{[v, n] ...}``, largest value first."""
    ordered = sorted(pairs, key=lambda t: (sort_key_real(t[0]), t[1]))
    inner = " ".join(f"[{value_str(v)}, {n}]" for v, n in ordered)
    return "{" + inner + "}"


def value_set_str(values) -> str:
    """A set of complex values as ``{v1, v2, ...}``, deterministic order."""
    def key(v):
        c = v.approx(1e-12).midpoint
        return (-c.real, -c.imag)

    return "{" + ", ".join(pretty(v) for v in sorted(values, key=key)) + "}"


def angle_set_str(angles) -> str:
    """An angle-entry sequence as ``{m1, m2, ...}`` with exact moduli."""
    parts = []
    for e in angles:
        if e.modulus is not None:
            parts.append(value_str(e.modulus))
        else:
            parts.append(f"sqrt({value_str(e.abs_squared)})")
    return "{" + ", ".join(parts) + "}"
