"""Full-rank Z-lattices and orders inside a quaternion algebra.

A lattice is stored as (den, rows): four integer Hermite-basis rows over the
coordinate basis 1, i, j, ij, all divided by a single positive denominator,
with gcd(den, rows) = 1.  The Hermite form is canonical, so two lattices are
equal iff their stored data are equal.  Orders are a validated refinement.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

from . import _kernel, ratmat
from .exactnum import IdealZ
from .quatalg import AlgebraMismatchError, QuaternionAlgebra

_igcd = gcd


class RankError(ValueError):
    """Generators do not span the algebra over Q."""


class NotAnOrderError(ValueError):
    """Lattice fails one of the order axioms."""


def _lcm(a, b):
    return a * b // gcd(a, b)


@dataclass(frozen=True, eq=False)
class IntegralLattice4:
    algebra: QuaternionAlgebra
    den: int
    rows: tuple  # 4 tuples of 4 ints, canonical HNF

    def __eq__(self, other):
        if not isinstance(other, IntegralLattice4):
            return NotImplemented
        return (
            self.algebra == other.algebra
            and self.den == other.den
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.algebra, self.den, self.rows))

    # -- construction ------------------------------------------------------

    @classmethod
    def from_generators(cls, algebra, quats):
        coords = []
        for q in quats:
            if q.algebra != algebra:
                raise AlgebraMismatchError("generator in a different algebra")
            coords.append(list(q.coords()))
        return cls.from_rational_rows(algebra, coords)

    @classmethod
    def from_rational_rows(cls, algebra, coords):
        den = 1
        for row in coords:
            for c in row:
                den = _lcm(den, Fraction(c).denominator)
        mat = [[int(c * den) for c in row] for row in coords]
        rows = _kernel.hnf(mat, 4)
        if len(rows) != 4:
            raise RankError(f"generators span rank {len(rows)} < 4")
        return cls._from_int_rows(algebra, den, rows)

    @classmethod
    def _from_int_rows(cls, algebra, den, rows):
        g = den
        for row in rows:
            for c in row:
                g = _igcd(g, c)
        if g > 1:
            den //= g
            rows = [[c // g for c in row] for row in rows]
        return cls(algebra, den, tuple(tuple(r) for r in rows))

    # -- views -------------------------------------------------------------

    def basis_matrix(self):
        """4x4 Fraction matrix; row r = coordinates of the r-th basis vector."""
        d = self.den
        return [[Fraction(c, d) for c in row] for row in self.rows]

    def basis(self):
        return tuple(
            self.algebra.element(*[Fraction(c, self.den) for c in row])
            for row in self.rows
        )

    def det(self):
        """Determinant of the basis matrix (diagonal product in HNF)."""
        d = Fraction(1)
        for r in range(4):
            d *= Fraction(self.rows[r][r], self.den)
        return d

    def contains(self, q):
        if q.algebra != self.algebra:
            raise AlgebraMismatchError("element in a different algebra")
        return self.coordinates_of(q) is not None

    __contains__ = contains

    def coordinates_of(self, q):
        """Integer coordinates of q over the Hermite basis, or None."""
        v = [Fraction(c) * self.den for c in q.coords()]
        out = [0, 0, 0, 0]
        for r in (3, 2, 1, 0):
            piv = self.rows[r][r]
            num = v[r]
            if num.denominator != 1 or num.numerator % piv:
                return None
            c = num.numerator // piv
            out[r] = c
            if c:
                for t in range(r + 1):
                    v[t] -= c * self.rows[r][t]
        return out

    def index_in(self, other):
        """[other : self] for self contained in other (a positive rational)."""
        return abs(self.det() / other.det())

    def scaled(self, c):
        c = Fraction(c)
        return IntegralLattice4.from_rational_rows(
            self.algebra, [[c * Fraction(e, self.den) for e in row] for row in self.rows]
        )

    def superlattice_with(self, extra_quats):
        rows = [list(b.coords()) for b in self.basis()]
        rows += [list(q.coords()) for q in extra_quats]
        return IntegralLattice4.from_rational_rows(self.algebra, rows)

    # -- serialization -----------------------------------------------------

    def to_json_dict(self):
        from .exactnum import format_rational

        return {
            "algebra": self.algebra.to_json_dict(),
            "basis": [
                [format_rational(Fraction(c, self.den)) for c in row]
                for row in self.rows
            ],
        }

    @classmethod
    def from_json_dict(cls, data, algebra=None):
        from .exactnum import parse_rational

        if algebra is None:
            algebra = QuaternionAlgebra.from_json_dict(data["algebra"])
        coords = [[parse_rational(c) for c in row] for row in data["basis"]]
        return cls.from_rational_rows(algebra, coords)

    def __repr__(self):
        return f"IntegralLattice4(den={self.den}, rows={self.rows})"


class Order4(IntegralLattice4):
    """A lattice that is a ring with 1 (use validate()/from_lattice to check)."""

    @classmethod
    def from_lattice(cls, lat):
        order = cls(lat.algebra, lat.den, lat.rows)
        order.validate()
        return order

    @classmethod
    def trusted(cls, lat):
        """Reinterpret an already-verified lattice as an order (no recheck)."""
        return cls(lat.algebra, lat.den, lat.rows)

    def validate(self):
        problem = order_defect(self)
        if problem is not None:
            raise NotAnOrderError(problem)


def canonicalize(algebra, quats):
    """HNF lattice spanned by the given elements; rejects rank < 4."""
    return IntegralLattice4.from_generators(algebra, quats)


def standard_order(algebra):
    """Z<1, i, j, ij>; an order only when a and b are integers (validated)."""
    return Order4.from_lattice(
        IntegralLattice4.from_generators(algebra, algebra.basis())
    )


def intersect(l1, l2):
    """Set-theoretic intersection of two lattices."""
    if l1.algebra != l2.algebra:
        raise AlgebraMismatchError("lattices in different algebras")
    d = _lcm(l1.den, l2.den)
    a = [[c * (d // l1.den) for c in row] for row in l1.rows]
    b = [[-c * (d // l2.den) for c in row] for row in l2.rows]
    ker = _kernel.kernel(a + b, 4)
    rows = []
    for k in ker:
        rows.append([sum(k[t] * a[t][s] for t in range(4)) for s in range(4)])
    rows = _kernel.hnf(rows, 4)
    if len(rows) != 4:
        raise RankError("intersection lost rank (inconsistent input)")
    return IntegralLattice4._from_int_rows(l1.algebra, d, rows)


def lattice_sum(l1, l2):
    """Lattice generated by the union of two lattices."""
    if l1.algebra != l2.algebra:
        raise AlgebraMismatchError("lattices in different algebras")
    d = _lcm(l1.den, l2.den)
    a = [[c * (d // l1.den) for c in row] for row in l1.rows]
    b = [[c * (d // l2.den) for c in row] for row in l2.rows]
    rows = _kernel.hnf(a + b, 4)
    return IntegralLattice4._from_int_rows(l1.algebra, d, rows)


def order_defect(lat):
    """None if `lat` is an order, else a human-readable reason."""
    if not lat.contains(lat.algebra.one()):
        return "does not contain 1"
    basis = lat.basis()
    for e1 in basis:
        for e2 in basis:
            if not lat.contains(e1 * e2):
                return "not closed under multiplication"
    # implied by the ring axioms, kept as a safety net
    for e in basis:
        if e.trd().denominator != 1 or e.nrd().denominator != 1:
            return "basis element is not integral"
    return None


def is_order(lat):
    return order_defect(lat) is None


def trace_gram(lat):
    """Gram matrix trd(e_r * e_s) over the Hermite basis."""
    basis = lat.basis()
    return [[(e1 * e2).trd() for e2 in basis] for e1 in basis]


def reduced_discriminant(order):
    """Positive d with d^2 = |det trd(e_r e_s)|, as an ideal of Z."""
    det = ratmat.mat_det(trace_gram(order))
    det = abs(det)
    num = isqrt_exact(det.numerator)
    den = isqrt_exact(det.denominator)
    if num is None or den is None:
        raise ArithmeticError("trace Gram determinant is not a perfect square")
    if den != 1:
        raise NotAnOrderError("reduced discriminant is not integral")
    return IdealZ(num)


def isqrt_exact(n):
    r = isqrt(n)
    return r if r * r == n else None


def involution_image(inv, lat):
    """Image lattice under the involution (orders map to orders)."""
    if inv.algebra != lat.algebra:
        raise AlgebraMismatchError("involution on a different algebra")
    image = IntegralLattice4.from_generators(
        lat.algebra, [inv(e) for e in lat.basis()]
    )
    if isinstance(lat, Order4):
        return Order4.trusted(image)
    return image


def is_dagger_stable(inv, lat):
    return involution_image(inv, lat) == lat


def trace_dual(lat):
    """{x : trd(x * lat) in Z}; the double dual is the identity."""
    gram = trace_gram(lat)
    dual_rows = ratmat.mat_mul(ratmat.mat_inv(gram), lat.basis_matrix())
    return IntegralLattice4.from_rational_rows(lat.algebra, dual_rows)
