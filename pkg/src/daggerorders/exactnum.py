"""Exact arithmetic primitives over Q and its localizations.

Rationals are ``fractions.Fraction`` throughout, valuations are plain ints
with ``INF`` for the zero ideal, and every factorization is certified:
trial division up to a bound, deterministic Miller-Rabin on the cofactor,
and a hard ``FactorizationError`` when the square-free part cannot be
certified.  No floating point anywhere.
"""

import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt

INF = float("inf")
#: sentinel for the infinite place in `hilbert_symbol`
OO = INF

DEFAULT_FACTOR_BOUND = 10**6


class FactorizationError(ArithmeticError):
    """Square-free part (or full factorization) could not be certified."""


def factor_bound():
    """Trial-division bound; DAGGER_FACTOR_BOUND overrides the default."""
    raw = os.environ.get("DAGGER_FACTOR_BOUND")
    return int(raw) if raw else DEFAULT_FACTOR_BOUND


# ---------------------------------------------------------------------------
# primality / factorization


def is_prime(n):
    """Deterministic Miller-Rabin, valid far beyond any certified cofactor."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # exact for n < 3.3 * 10**24
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@lru_cache(maxsize=None)
def _small_primes(bound):
    sieve = bytearray([1]) * (bound + 1)
    sieve[0:2] = b"\x00\x00"
    for p in range(2, isqrt(bound) + 1):
        if sieve[p]:
            step = len(range(p * p, bound + 1, p))
            sieve[p * p :: p] = bytearray(step)
    return tuple(i for i in range(bound + 1) if sieve[i])


def _iroot(n, k):
    """Largest r with r**k <= n (n >= 1, k >= 1)."""
    if k == 1:
        return n
    if k == 2:
        return isqrt(n)
    r = int(round(n ** (1.0 / k)))
    while r > 1 and r**k > n:
        r -= 1
    while (r + 1) ** k <= n:
        r += 1
    return r


@lru_cache(maxsize=8192)
def _factor_abs(n, bound):
    """Factor n >= 1 into {prime: exponent}; raises FactorizationError."""
    out = {}
    exhausted = True
    for p in _small_primes(bound):
        if p * p > n:
            exhausted = False
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out[p] = e
    if n == 1:
        return out
    if not exhausted or n <= bound * bound or is_prime(n):
        # no factor below min(bound, sqrt(n)) remains, so n is prime
        out[n] = out.get(n, 0) + 1
        return out
    # composite cofactor with every prime factor above the bound: only a
    # perfect prime power can still be certified
    k = 2
    while 2**k <= n:
        r = _iroot(n, k)
        if r**k == n and is_prime(r):
            out[r] = out.get(r, 0) + k
            return out
        k += 1
    raise FactorizationError(
        f"cannot certify factorization of cofactor {n} (bound {bound})"
    )


def factor(n, bound=None):
    """Certified factorization of a nonzero integer as {prime: exponent}."""
    n = int(n)
    if n == 0:
        raise ValueError("cannot factor zero")
    return dict(_factor_abs(abs(n), bound or factor_bound()))


def _check_prime(p):
    if not isinstance(p, int) or not is_prime(p):
        raise ValueError(f"{p!r} is not a prime")
    return p


# ---------------------------------------------------------------------------
# rationals


def as_fraction(x):
    """Coerce int/str/Fraction to Fraction; rejects floats (never lossy)."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


def parse_rational(text):
    """Parse "n" or "n/d" into a Fraction.

    >>> parse_rational("9/10")
    Fraction(9, 10)
    """
    text = text.strip()
    if "/" in text:
        num, den = text.split("/", 1)
        return Fraction(int(num), int(den))
    return Fraction(int(text))


def format_rational(x):
    """Serialize a Fraction as "n" or "n/d" (the wire format everywhere)."""
    x = as_fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def valuation(x, p):
    """p-adic valuation ord_p(x) of a rational; INF for x == 0.

    >>> valuation(50, 5)
    2
    >>> valuation(Fraction(9, 10), 5)
    -1
    """
    _check_prime(p)
    x = as_fraction(x)
    if x == 0:
        return INF
    v = 0
    n = x.numerator
    while n % p == 0:
        n //= p
        v += 1
    d = x.denominator
    while d % p == 0:
        d //= p
        v -= 1
    return v


def unit_mod(x, m):
    """Canonical residue in [0, m) of a rational with denominator prime to m."""
    x = as_fraction(x)
    if gcd(x.denominator, m) != 1:
        raise ValueError(f"{x} is not integral at the modulus {m}")
    return x.numerator * pow(x.denominator, -1, m) % m


# ---------------------------------------------------------------------------
# square classes and ideals


@dataclass(frozen=True)
class SquareClass:
    """An element of Q^x/(Q^x)^2, stored as its square-free representative."""

    representative: int

    def __post_init__(self):
        r = self.representative
        if r == 0:
            raise ValueError("square class of zero is undefined")
        for e in factor(r).values():
            if e > 1:
                raise ValueError(f"{r} is not square-free")

    def __mul__(self, other):
        return square_class(Fraction(self.representative * other.representative))

    def __repr__(self):
        return f"SquareClass({self.representative})"


@dataclass(frozen=True)
class IdealZ:
    """An ideal of Z by its nonnegative generator (0 = zero ideal, 1 = Z)."""

    generator: int

    def __post_init__(self):
        if self.generator < 0:
            raise ValueError("generator must be nonnegative")

    def __mul__(self, other):
        return IdealZ(self.generator * other.generator)

    def intersect(self, other):
        a, b = self.generator, other.generator
        if a == 0 or b == 0:
            return IdealZ(0)
        return IdealZ(a * b // gcd(a, b))

    def valuation(self, p):
        return valuation(self.generator, p)

    def __repr__(self):
        return f"IdealZ({self.generator})"

    def __str__(self):
        return f"({self.generator})"


@dataclass(frozen=True)
class LocalIdeal:
    """The ideal p^valuation of Z localized at p; valuation INF = zero ideal."""

    prime: int
    valuation: object  # int or INF

    def __post_init__(self):
        _check_prime(self.prime)
        if self.valuation != INF and not isinstance(self.valuation, int):
            raise ValueError("valuation must be an int or INF")

    @property
    def is_zero(self):
        return self.valuation == INF

    def __repr__(self):
        if self.is_zero:
            return f"LocalIdeal({self.prime}, zero)"
        return f"LocalIdeal({self.prime}^{self.valuation})"


def square_class(x):
    """Image of a nonzero rational in Q^x/(Q^x)^2.

    >>> square_class(Fraction(4, 9))
    SquareClass(1)
    >>> square_class(50)
    SquareClass(2)
    """
    x = as_fraction(x)
    if x == 0:
        raise ValueError("square class of zero is undefined")
    n = x.numerator * x.denominator
    rep = -1 if n < 0 else 1
    for p, e in factor(n).items():
        if e % 2:
            rep *= p
    return SquareClass(rep)


def iota(c):
    """Square-free ideal of Z generated by the integral members of a class."""
    return IdealZ(abs(c.representative))


# ---------------------------------------------------------------------------
# Hilbert symbol


def _legendre(u, p):
    r = pow(u % p, (p - 1) // 2, p)
    return 1 if r == 1 else -1


def hilbert_symbol(a, b, p):
    """Hilbert symbol (a, b)_p at a finite prime p or the infinite place OO.

    The product over all places is +1; (a, b)_oo = -1 iff a < 0 and b < 0.
    """
    a = as_fraction(a)
    b = as_fraction(b)
    if a == 0 or b == 0:
        raise ValueError("Hilbert symbol requires nonzero arguments")
    if p == OO:
        return -1 if a < 0 and b < 0 else 1
    _check_prime(p)
    al = valuation(a, p)
    bl = valuation(b, p)
    u = a / Fraction(p) ** al
    v = b / Fraction(p) ** bl
    if p != 2:
        s = 1
        if al % 2 and bl % 2 and (p - 1) // 2 % 2:
            s = -s
        if bl % 2 and _legendre(unit_mod(u, p), p) < 0:
            s = -s
        if al % 2 and _legendre(unit_mod(v, p), p) < 0:
            s = -s
        return s
    u8 = unit_mod(u, 8)
    v8 = unit_mod(v, 8)
    eps_u = (u8 - 1) // 2 % 2
    eps_v = (v8 - 1) // 2 % 2
    om_u = (u8 * u8 - 1) // 8 % 2
    om_v = (v8 * v8 - 1) // 8 % 2
    e = eps_u * eps_v + al * om_v + bl * om_u
    return -1 if e % 2 else 1


# ---------------------------------------------------------------------------
# quadratic defect


def quadratic_defect(a, p):
    """Quadratic defect d(a) at p: the smallest ideal among (a - b^2)Z_(p).

    Zero ideal (valuation INF) exactly when a is a square in Q_p.  For odd
    valuation the defect is (a) itself; for units at odd p it is the whole
    ring unless a is a residue; at p = 2 the unit defects are read off a
    mod 8.
    """
    a = as_fraction(a)
    if a == 0:
        raise ValueError("quadratic defect of zero is undefined")
    _check_prime(p)
    v = valuation(a, p)
    if v % 2:
        return LocalIdeal(p, v)
    u = a / Fraction(p) ** v
    if p != 2:
        if _legendre(unit_mod(u, p), p) == 1:
            return LocalIdeal(p, INF)
        return LocalIdeal(p, v)
    u8 = unit_mod(u, 8)
    if u8 == 1:
        return LocalIdeal(p, INF)
    if u8 == 5:
        return LocalIdeal(p, v + 2)
    return LocalIdeal(p, v + 1)
