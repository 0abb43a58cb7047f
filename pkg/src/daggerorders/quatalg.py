"""Quaternion algebras (a,b/Q), their elements, and orthogonal involutions.

An algebra is the pair (a, b) with i^2 = a, j^2 = b, ij = -ji.  Elements
carry exact rational coordinates (w, x, y, z) for w + x*i + y*j + z*ij.
An orthogonal involution is conjugation-then-twist x -> u * conj(x) * u^-1
by a pure quaternion u; the skew space H^- is the line Q*u.
"""

from dataclasses import dataclass
from fractions import Fraction

from .exactnum import (
    IdealZ,
    as_fraction,
    factor,
    format_rational,
    hilbert_symbol,
    parse_rational,
    square_class,
)


class AlgebraMismatchError(ValueError):
    """Operands live in different quaternion algebras."""


@dataclass(frozen=True)
class QuaternionAlgebra:
    a: Fraction
    b: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a", as_fraction(self.a))
        object.__setattr__(self, "b", as_fraction(self.b))
        if self.a == 0 or self.b == 0:
            raise ValueError("(a,b/Q) requires nonzero a and b")

    def element(self, w, x=0, y=0, z=0):
        return Quat(self, as_fraction(w), as_fraction(x), as_fraction(y), as_fraction(z))

    def one(self):
        return self.element(1)

    def gen_i(self):
        return self.element(0, 1)

    def gen_j(self):
        return self.element(0, 0, 1)

    def gen_ij(self):
        return self.element(0, 0, 0, 1)

    def basis(self):
        return (self.one(), self.gen_i(), self.gen_j(), self.gen_ij())

    def to_json_dict(self):
        return {"a": format_rational(self.a), "b": format_rational(self.b)}

    @classmethod
    def from_json_dict(cls, data):
        return cls(parse_rational(data["a"]), parse_rational(data["b"]))

    def __repr__(self):
        return f"QuaternionAlgebra({self.a}, {self.b})"


@dataclass(frozen=True)
class Quat:
    """w + x*i + y*j + z*ij with exact rational coordinates."""

    algebra: QuaternionAlgebra
    w: Fraction
    x: Fraction
    y: Fraction
    z: Fraction

    def coords(self):
        return (self.w, self.x, self.y, self.z)

    def _check(self, other):
        if self.algebra != other.algebra:
            raise AlgebraMismatchError("elements of different algebras")

    def __add__(self, other):
        self._check(other)
        return Quat(
            self.algebra,
            self.w + other.w,
            self.x + other.x,
            self.y + other.y,
            self.z + other.z,
        )

    def __sub__(self, other):
        self._check(other)
        return Quat(
            self.algebra,
            self.w - other.w,
            self.x - other.x,
            self.y - other.y,
            self.z - other.z,
        )

    def __neg__(self):
        return Quat(self.algebra, -self.w, -self.x, -self.y, -self.z)

    def scale(self, c):
        c = as_fraction(c)
        return Quat(self.algebra, c * self.w, c * self.x, c * self.y, c * self.z)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check(other)
        a = self.algebra.a
        b = self.algebra.b
        w1, x1, y1, z1 = self.coords()
        w2, x2, y2, z2 = other.coords()
        return Quat(
            self.algebra,
            w1 * w2 + a * x1 * x2 + b * y1 * y2 - a * b * z1 * z2,
            w1 * x2 + x1 * w2 - b * y1 * z2 + b * z1 * y2,
            w1 * y2 + y1 * w2 + a * x1 * z2 - a * z1 * x2,
            w1 * z2 + z1 * w2 + x1 * y2 - y1 * x2,
        )

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def conjugate(self):
        """Standard involution: w - x*i - y*j - z*ij."""
        return Quat(self.algebra, self.w, -self.x, -self.y, -self.z)

    def trd(self):
        return 2 * self.w

    def nrd(self):
        a = self.algebra.a
        b = self.algebra.b
        return self.w**2 - a * self.x**2 - b * self.y**2 + a * b * self.z**2

    def inverse(self):
        n = self.nrd()
        if n == 0:
            raise ZeroDivisionError("element has reduced norm zero")
        return self.conjugate().scale(1 / n)

    def is_pure(self):
        return self.w == 0

    def is_scalar(self):
        return self.x == 0 and self.y == 0 and self.z == 0

    def is_zero(self):
        return self.is_scalar() and self.w == 0

    def to_json_dict(self):
        return {
            "w": format_rational(self.w),
            "x": format_rational(self.x),
            "y": format_rational(self.y),
            "z": format_rational(self.z),
        }

    @classmethod
    def from_json_dict(cls, algebra, data):
        return algebra.element(
            parse_rational(data["w"]),
            parse_rational(data["x"]),
            parse_rational(data["y"]),
            parse_rational(data["z"]),
        )

    def __repr__(self):
        return f"Quat({self.w}, {self.x}, {self.y}, {self.z})"


def conjugate(x):
    return x.conjugate()


def nrd(x):
    return x.nrd()


def trd(x):
    return x.trd()


@dataclass(frozen=True)
class OrthogonalInvolution:
    """x -> u * conj(x) * u^-1 for a nonzero pure quaternion u."""

    u: Quat

    def __post_init__(self):
        if not self.u.is_pure():
            raise ValueError("the twisting element must be a pure quaternion")
        if self.u.is_zero():
            raise ValueError("the twisting element must be nonzero")
        if self.u.nrd() == 0:
            raise ValueError("the twisting element must be invertible")

    @property
    def algebra(self):
        return self.u.algebra

    def __call__(self, x):
        if x.algebra != self.algebra:
            raise AlgebraMismatchError("element not in the involution's algebra")
        n = self.u.nrd()
        return (self.u * x.conjugate() * self.u).scale(Fraction(-1) / n)

    def matrix(self):
        """Action on coordinates: row r = image of the r-th basis element."""
        return [list(self(e).coords()) for e in self.algebra.basis()]

    def discriminant(self):
        return square_class(self.u.nrd())

    def same_as(self, other):
        """Involutions agree iff the twisting elements are parallel."""
        if self.algebra != other.algebra:
            return False
        c1 = self.u.coords()
        c2 = other.u.coords()
        return all(
            c1[r] * c2[s] == c1[s] * c2[r] for r in range(4) for s in range(r + 1, 4)
        )

    def to_json_dict(self):
        return {"algebra": self.algebra.to_json_dict(), "u": self.u.to_json_dict()}

    @classmethod
    def from_json_dict(cls, data, algebra=None):
        if algebra is None:
            algebra = QuaternionAlgebra.from_json_dict(data["algebra"])
        return cls(Quat.from_json_dict(algebra, data["u"]))

    def __repr__(self):
        return f"OrthogonalInvolution(u={self.u!r})"


def apply_involution(inv, x):
    return inv(x)


def involution_discriminant(inv):
    return inv.discriminant()


def algebra_discriminant(algebra):
    """Product of the finite ramified primes, via Hilbert symbols.

    Only primes dividing 2 or the numerators/denominators of a, b can
    ramify; the result is square-free by construction.
    """
    a, b = algebra.a, algebra.b
    candidates = {2}
    for value in (a.numerator, a.denominator, b.numerator, b.denominator):
        candidates.update(factor(value))
    d = 1
    for p in sorted(candidates):
        if hilbert_symbol(a, b, p) == -1:
            d *= p
    return IdealZ(d)


def is_similitude(inv, g):
    """Similitude test for g in GO(H, not-dagger): returns the exponent l
    with g^dagger * g == (-1)^l * nrd(g), or None when g is no similitude.

    Note l == 0 is a meaningful "yes"; compare the result against None.
    """
    n = g.nrd()
    if n == 0:
        raise ZeroDivisionError("similitude candidates must be invertible")
    s = inv(g) * g
    if not s.is_scalar():
        return None
    if s.w == n:
        return 0
    if s.w == -n:
        return 1
    raise ArithmeticError("scalar g^dagger*g is not +-nrd(g); broken involution")
