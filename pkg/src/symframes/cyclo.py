"""Exact arithmetic in cyclotomic fields Q(zeta_e).

Conventions, frozen for the whole package:

* zeta_e denotes exp(2*pi*i/e).
* An element of Q(zeta_e) is a coefficient vector of rationals over the
  power basis 1, z, z^2, ..., z^(phi(e)-1), i.e. the unique reduction of a
  polynomial in z modulo the e-th cyclotomic polynomial.  With the basis
  fixed, two elements stored at the same conductor are equal iff their
  coefficient tuples are equal.
* Mixed conductors are lifted to the lcm before arithmetic; results stay at
  the lifted conductor and are not descended automatically (descent is only
  performed by canonical_key, used for hashing and serialization).
* Numerical images are certified: approx() returns a midpoint plus a radius
  that rigorously bounds the distance to the true value.  compare_real()
  decides exactly via the canonical zero test before any numerics run, so
  floating point never decides equality.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .errors import NotReal, PrecisionUnreachable

_ZERO = Fraction(0)
_ONE = Fraction(1)

_MAX_REAL_PREC = 4096


def phi(e: int) -> int:
    """Euler totient."""
    result = e
    n = e
    p = 2
    while p * p <= n:
        if n % p == 0:
            while n % p == 0:
                n //= p
            result -= result // p
        p += 1
    if n > 1:
        result -= result // n
    return result


def _factor(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _divisors(n: int) -> list[int]:
    divs = [1]
    for p, a in _factor(n).items():
        divs = [d * p**k for d in divs for k in range(a + 1)]
    return sorted(divs)


_POLY_CACHE: dict[int, tuple[int, ...]] = {}


def cyclotomic_polynomial(e: int) -> tuple[int, ...]:
    """Coefficients (ascending) of the e-th cyclotomic polynomial."""
    if e in _POLY_CACHE:
        return _POLY_CACHE[e]
    # (x^e - 1) divided exactly by the product of Phi_d for proper divisors d.
    poly = [-1] + [0] * (e - 1) + [1]
    for d in _divisors(e)[:-1]:
        q = cyclotomic_polynomial(d)
        poly = _polydiv_exact(poly, list(q))
    result = tuple(poly)
    _POLY_CACHE[e] = result
    return result


def _polydiv_exact(num: list[int], den: list[int]) -> list[int]:
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for k in range(len(out) - 1, -1, -1):
        c = num[k + len(den) - 1]
        out[k] = c
        if c:
            for i, d in enumerate(den):
                num[k + i] -= c * d
    if any(num[: len(den) - 1]):
        raise ArithmeticError("inexact cyclotomic polynomial division")
    return out


_TABLE_CACHE: dict[int, list[tuple[Fraction, ...]]] = {}


def _power_table(e: int) -> list[tuple[Fraction, ...]]:
    """Reduction of z^m modulo Phi_e for m in range(e), as basis vectors."""
    if e in _TABLE_CACHE:
        return _TABLE_CACHE[e]
    f = phi(e)
    poly = cyclotomic_polynomial(e)
    table: list[tuple[Fraction, ...]] = []
    for m in range(f):
        row = [_ZERO] * f
        row[m] = _ONE
        table.append(tuple(row))
    # z^f = -(poly[0] + poly[1] z + ... + poly[f-1] z^(f-1)),  Phi_e is monic
    cur = [Fraction(-c) for c in poly[:f]]
    table.append(tuple(cur))
    for _ in range(f + 1, e):
        top = cur[-1]
        nxt = [_ZERO] + cur[:-1]
        if top:
            for i in range(f):
                nxt[i] += top * table[f][i]
        cur = nxt
        table.append(tuple(cur))
    _TABLE_CACHE[e] = table
    return table


_LIFT_CACHE: dict[tuple[int, int], list[tuple[Fraction, ...]]] = {}


def _lift_table(d: int, e: int) -> list[tuple[Fraction, ...]]:
    """Images of the conductor-d basis monomials inside Q(zeta_e), d | e."""
    key = (d, e)
    if key in _LIFT_CACHE:
        return _LIFT_CACHE[key]
    step = e // d
    table = _power_table(e)
    out = [table[(j * step) % e] for j in range(phi(d))]
    _LIFT_CACHE[key] = out
    return out


def _lcm(a: int, b: int) -> int:
    return a // math.gcd(a, b) * b


@dataclass(frozen=True)
class CertifiedComplex:
    """Floating approximation with a rigorous error radius."""

    midpoint: complex
    radius: float


class Cyclotomic:
    """Immutable element of Q(zeta_e) in canonical reduced form."""

    __slots__ = ("conductor", "coeffs", "_key")

    def __init__(self, conductor: int, coeffs: tuple[Fraction, ...]):
        if conductor < 1:
            raise ValueError("conductor must be positive")
        if len(coeffs) != phi(conductor):
            raise ValueError("coefficient vector has wrong length")
        object.__setattr__(self, "conductor", conductor)
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "_key", None)

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("Cyclotomic is immutable")

    # --- constructors -------------------------------------------------

    @staticmethod
    def rational(x) -> "Cyclotomic":
        return Cyclotomic(1, (Fraction(x),))

    @staticmethod
    def zero() -> "Cyclotomic":
        return _CYC_ZERO

    @staticmethod
    def one() -> "Cyclotomic":
        return _CYC_ONE

    @staticmethod
    def root_of_unity(e: int, k: int = 1) -> "Cyclotomic":
        """zeta_e^k, stored at the reduced conductor e/gcd(e,k)."""
        if e < 1:
            raise ValueError("order must be positive")
        k %= e
        g = math.gcd(e, k) if k else e
        e, k = e // g, k // g
        if e == 1:
            return _CYC_ONE
        table = _power_table(e)
        return Cyclotomic(e, table[k])

    # --- structural helpers -------------------------------------------

    def lift(self, e: int) -> "Cyclotomic":
        """Rewrite at conductor e; e must be a multiple of the current one."""
        if e == self.conductor:
            return self
        if e % self.conductor:
            raise ValueError("can only lift to a multiple of the conductor")
        table = _lift_table(self.conductor, e)
        f = phi(e)
        acc = [_ZERO] * f
        for j, c in enumerate(self.coeffs):
            if c:
                row = table[j]
                for i in range(f):
                    if row[i]:
                        acc[i] += c * row[i]
        return Cyclotomic(e, tuple(acc))

    def _pair(self, other: "Cyclotomic"):
        e = _lcm(self.conductor, other.conductor)
        return self.lift(e), other.lift(e), e

    @staticmethod
    def _coerce(x) -> "Cyclotomic":
        if isinstance(x, Cyclotomic):
            return x
        if isinstance(x, (int, Fraction)):
            return Cyclotomic.rational(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to Cyclotomic")

    # --- ring operations ----------------------------------------------

    def __add__(self, other):
        other = Cyclotomic._coerce(other)
        a, b, e = self._pair(other)
        return Cyclotomic(e, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.conductor, tuple(-x for x in self.coeffs))

    def __sub__(self, other):
        return self + (-Cyclotomic._coerce(other))

    def __rsub__(self, other):
        return Cyclotomic._coerce(other) + (-self)

    def __mul__(self, other):
        other = Cyclotomic._coerce(other)
        if other.conductor == 1:
            q = other.coeffs[0]
            if not q:
                return _CYC_ZERO
            return Cyclotomic(self.conductor, tuple(c * q for c in self.coeffs))
        if self.conductor == 1:
            return other * self
        a, b, e = self._pair(other)
        f = phi(e)
        acc = [_ZERO] * e
        bc = b.coeffs
        for i, ai in enumerate(a.coeffs):
            if not ai:
                continue
            for j, bj in enumerate(bc):
                if bj:
                    k = i + j
                    if k >= e:
                        k -= e
                    acc[k] += ai * bj
        table = _power_table(e)
        res = acc[:f]
        for m in range(f, e):
            cm = acc[m]
            if cm:
                row = table[m]
                for i in range(f):
                    if row[i]:
                        res[i] += cm * row[i]
        return Cyclotomic(e, tuple(res))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            if not q:
                raise ZeroDivisionError
            return Cyclotomic(self.conductor, tuple(c / q for c in self.coeffs))
        raise TypeError("division is only supported by rational scalars")

    def inverse(self) -> "Cyclotomic":
        """Exact multiplicative inverse via the Galois norm.

        The product of all Galois conjugates is rational, so 1/z is the
        product of the nontrivial conjugates divided by that norm.
        """
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        e = self.conductor
        if e == 1:
            return Cyclotomic.rational(1 / self.coeffs[0])
        acc = _CYC_ONE
        for a in range(2, e):
            if math.gcd(a, e) == 1:
                acc = acc * self.galois(a)
        norm = (self * acc).as_rational()
        if norm is None or norm == 0:
            raise ArithmeticError("Galois norm failed to be a nonzero rational")
        return acc / norm

    def galois(self, a: int) -> "Cyclotomic":
        """Apply the automorphism zeta_e -> zeta_e^a; gcd(a, e) must be 1."""
        e = self.conductor
        if math.gcd(a % e if e > 1 else 1, e) != 1:
            raise ValueError("galois exponent must be coprime to the conductor")
        if e == 1:
            return self
        table = _power_table(e)
        f = phi(e)
        acc = [_ZERO] * f
        for j, c in enumerate(self.coeffs):
            if c:
                row = table[(a * j) % e]
                for i in range(f):
                    if row[i]:
                        acc[i] += c * row[i]
        return Cyclotomic(e, tuple(acc))

    def conj(self) -> "Cyclotomic":
        if self.conductor == 1:
            return self
        return self.galois(self.conductor - 1)

    def abs_squared(self) -> "Cyclotomic":
        return self * self.conj()

    # --- predicates -----------------------------------------------------

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def as_rational(self) -> Fraction | None:
        """The value as a Fraction if it is rational, else None."""
        if any(self.coeffs[1:]):
            return None
        return self.coeffs[0]

    def is_real(self) -> bool:
        return self.conj() == self

    def real_part(self) -> "Cyclotomic":
        return (self + self.conj()) / 2

    def imag_part_times_i(self) -> "Cyclotomic":
        """(z - conj(z))/2 = i * Im(z), stays inside the field."""
        return (self - self.conj()) / 2

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Cyclotomic.rational(other)
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        if self.conductor == other.conductor:
            return self.coeffs == other.coeffs
        a, b, _ = self._pair(other)
        return a.coeffs == b.coeffs

    def __hash__(self):
        return hash(self.canonical_key())

    # --- canonical form --------------------------------------------------

    def canonical_key(self):
        """(minimal conductor, coefficients there); value-determined."""
        key = self._key
        if key is not None:
            return key
        e = self.conductor
        best = None
        for d in _divisors(e):
            if d % 4 == 2:
                continue  # Q(zeta_d) = Q(zeta_{d/2}), already tested
            if self._fixed_by_gal_over(d):
                best = (d, self._express_at(d))
                break
        assert best is not None
        object.__setattr__(self, "_key", best)
        return best

    def _fixed_by_gal_over(self, d: int) -> bool:
        e = self.conductor
        if d == e:
            return True
        for a in range(1, e):
            if a % d == 1 % d and math.gcd(a, e) == 1 and a != 1:
                if self.galois(a) != self:
                    return False
        return True

    def _express_at(self, d: int) -> tuple[Fraction, ...]:
        if d == self.conductor:
            return self.coeffs
        basis = _lift_table(d, self.conductor)
        fe, fd = phi(self.conductor), phi(d)
        # Solve sum_j x_j * basis[j] = coeffs by Gaussian elimination.
        rows = [[basis[j][i] for j in range(fd)] + [self.coeffs[i]] for i in range(fe)]
        sol = _solve_exact(rows, fd)
        return tuple(sol)

    def descend(self) -> "Cyclotomic":
        """Equal value at its minimal conductor."""
        d, coeffs = self.canonical_key()
        if d == self.conductor:
            return self
        return Cyclotomic(d, coeffs)

    # --- numerics ----------------------------------------------------------

    def _eval_mp(self, prec: int):
        """mpmath value at binary precision prec plus a rigorous radius."""
        e = self.conductor
        with mpmath.workprec(prec):
            total = mpmath.mpf(0)
            val = mpmath.mpc(0)
            for j, c in enumerate(self.coeffs):
                if not c:
                    continue
                cj = mpmath.mpf(c.numerator) / c.denominator
                val += cj * mpmath.expjpi(mpmath.mpf(2 * j) / e)
                total += abs(cj)
            # Every mpmath operation above is correctly rounded to ~1 ulp;
            # the bound below is deliberately generous.
            radius = (total + 1) * mpmath.mpf(2) ** (8 + int(math.log2(len(self.coeffs) + 1)) - prec)
            return val, radius

    def approx(self, target: float = 1e-12) -> CertifiedComplex:
        """Certified complex approximation with radius at most target."""
        if target <= 0:
            raise ValueError("target radius must be positive")
        prec = max(80, int(-math.log2(target)) + 40)
        if prec > _MAX_REAL_PREC:
            raise PrecisionUnreachable(f"target radius {target} is below supported granularity")
        val, radius = self._eval_mp(prec)
        mid = complex(val)
        # float64 rounding of the midpoint
        extra = (abs(mid) + 1.0) * 2.0**-51 + 5e-324
        total = float(radius) + extra
        if total > target:
            raise PrecisionUnreachable(
                f"cannot certify radius {target}; best achievable here is about {total:.3g}"
            )
        return CertifiedComplex(mid, total)

    def approx_rel(self, digits: int) -> CertifiedComplex:
        """Certified approximation good to ``digits`` significant digits.

        The target radius scales with the value's magnitude, so large values
        (e.g. character degrees) stay certifiable; the float64 midpoint caps
        the achievable relative precision near 15 significant digits.
        """
        coarse = self.approx(1e-3)
        mag = max(abs(coarse.midpoint), 1.0)
        return self.approx(mag * 10.0 ** (-digits - 2))

    def sign_real(self) -> int:
        """Sign of a real cyclotomic: -1, 0 or 1. Exact."""
        if self.is_zero():
            return 0
        if not self.is_real():
            raise NotReal("sign_real on a non-real value")
        q = self.as_rational()
        if q is not None:
            return -1 if q < 0 else 1
        prec = 64
        while prec <= _MAX_REAL_PREC:
            val, radius = self._eval_mp(prec)
            re = val.real
            if abs(re) > radius:
                return -1 if re < 0 else 1
            prec *= 2
        raise PrecisionUnreachable("sign separation exceeded the precision cap")

    # --- presentation -------------------------------------------------------

    def decimal(self, digits: int = 12) -> str:
        c = self.approx_rel(digits)
        re, im = c.midpoint.real, c.midpoint.imag
        if abs(im) <= c.radius:
            return f"{re:.{digits}g}"
        return f"{re:.{digits}g}{im:+.{digits}g}i"

    def __str__(self):
        q = self.as_rational()
        if q is not None:
            return str(q)
        d, coeffs = self.canonical_key()
        inner = ", ".join(f"{j}:{c}" for j, c in enumerate(coeffs) if c)
        return f"cyc(e={d}; {inner})"

    def __repr__(self):
        d, coeffs = self.canonical_key()
        if d == 1:
            return f"Cyclotomic({coeffs[0]})"
        terms = ",".join(f"{j}:{c}" for j, c in enumerate(coeffs) if c)
        return f"Cyclotomic(e={d}; {terms}; ~{self.decimal(6)})"

    def to_dict(self) -> dict:
        d, coeffs = self.canonical_key()
        return {
            "conductor": d,
            "coeffs": [[j, c.numerator, c.denominator] for j, c in enumerate(coeffs) if c],
            "approx": self.decimal(13),
        }

    @staticmethod
    def from_dict(data: dict) -> "Cyclotomic":
        e = int(data["conductor"])
        vec = [_ZERO] * phi(e)
        for j, num, den in data["coeffs"]:
            vec[int(j)] = Fraction(int(num), int(den))
        return Cyclotomic(e, tuple(vec))


_CYC_ZERO = Cyclotomic(1, (_ZERO,))
_CYC_ONE = Cyclotomic(1, (_ONE,))


def _solve_exact(rows: list[list[Fraction]], ncols: int) -> list[Fraction]:
    """Solve an overdetermined consistent system given as [A | b] rows."""
    m = len(rows)
    piv_rows: list[int] = []
    r = 0
    for col in range(ncols):
        sel = None
        for i in range(r, m):
            if rows[i][col]:
                sel = i
                break
        if sel is None:
            continue
        rows[r], rows[sel] = rows[sel], rows[r]
        pv = rows[r][col]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(m):
            if i != r and rows[i][col]:
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        piv_rows.append(col)
        r += 1
        if r == ncols:
            break
    sol = [_ZERO] * ncols
    for i, col in enumerate(piv_rows):
        sol[col] = rows[i][ncols]
    # Consistency: remaining rows must be zero.
    for i in range(r, m):
        if rows[i][ncols]:
            raise ArithmeticError("inconsistent linear system in conductor descent")
    return sol


def compare_real(a, b) -> int:
    """Exact three-way comparison of two real cyclotomic (or rational) values.

    Decides equality by the canonical zero test; only when the difference is
    provably nonzero does interval refinement with doubling precision run.
    """
    a = Cyclotomic._coerce(a)
    b = Cyclotomic._coerce(b)
    return (a - b).sign_real()


def sqrt_rational(q) -> Cyclotomic:
    """Exact square root of a nonnegative rational as a cyclotomic number."""
    q = Fraction(q)
    if q < 0:
        raise ValueError("sqrt_rational needs a nonnegative argument")
    if q == 0:
        return _CYC_ZERO
    n = q.numerator * q.denominator  # sqrt(q) = sqrt(n)/denominator
    k = 1
    s = 1
    for p, a in _factor(n).items():
        k *= p ** (a // 2)
        if a % 2:
            s *= p
    out = Cyclotomic.rational(Fraction(k, q.denominator))
    for p in _factor(s):
        out = out * _sqrt_prime(p)
    return out


def _sqrt_prime(p: int) -> Cyclotomic:
    if p == 2:
        return Cyclotomic.root_of_unity(8, 1) - Cyclotomic.root_of_unity(8, 3)
    g = _CYC_ZERO
    for t in range(1, p):
        ls = pow(t, (p - 1) // 2, p)
        term = Cyclotomic.root_of_unity(p, t)
        g = g + term if ls == 1 else g - term
    if p % 4 == 1:
        return g
    return Cyclotomic.root_of_unity(4, 3) * g  # -i * (i sqrt p)


def _rational_sqrt(x: Fraction) -> Fraction | None:
    if x < 0:
        return None
    rn, rd = math.isqrt(x.numerator), math.isqrt(x.denominator)
    if rn * rn == x.numerator and rd * rd == x.denominator:
        return Fraction(rn, rd)
    return None


# minimal conductors whose maximal real subfield is Q(sqrt(D))
_QUADRATIC_REAL = {5: 5, 8: 2, 12: 3}


def sqrt_real(q: Cyclotomic) -> Cyclotomic | None:
    """Exact square root of a nonnegative real cyclotomic, when reachable.

    Handles rational values and real quadratic irrationals whose square
    root stays inside the same quadratic field (written u + v*sqrt(D)).
    Returns None when no exact form is found here.
    """
    if not q.is_real():
        raise NotReal("sqrt_real needs a real argument")
    r = q.as_rational()
    if r is not None:
        return sqrt_rational(r) if r >= 0 else None
    c, coeffs = q.canonical_key()
    d = _QUADRATIC_REAL.get(c)
    if d is None:
        return None
    qd = Cyclotomic(c, coeffs)
    sig = None
    for a in range(2, c):
        if math.gcd(a, c) == 1:
            im = qd.galois(a)
            if im != qd:
                sig = im
                break
    if sig is None:
        return None
    s = sqrt_rational(d)
    alpha2 = (qd + sig).as_rational()
    beta2d = ((qd - sig) * s).as_rational()
    if alpha2 is None or beta2d is None:
        return None
    alpha = alpha2 / 2
    beta = beta2d / (2 * d)
    disc = _rational_sqrt(alpha * alpha - d * beta * beta)
    if disc is None:
        return None
    for branch in (alpha + disc, alpha - disc):
        u = _rational_sqrt(branch / 2)
        if u is None or u == 0:
            continue
        w = Cyclotomic.rational(u) + s * (beta / (2 * u))
        if w * w == qd:
            return w if w.sign_real() >= 0 else -w
    return None


def cyc_sum(values) -> Cyclotomic:
    acc = _CYC_ZERO
    for v in values:
        acc = acc + v
    return acc
