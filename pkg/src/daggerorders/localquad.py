"""Rank-2 quadratic lattices over Z localized at a prime.

The split quaternion algebra at p is Mat(2, F) with the involution attached
to the diagonal form q(x, y) = lam*x^2 + y^2, lam a square-free integral
representative of the involution discriminant.  Lattices carry global
rational data; every ideal computation reduces to a valuation at the fixed
prime, so no truncated p-adics appear anywhere.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from . import _kernel, ratmat
from .exactnum import (
    INF,
    LocalIdeal,
    as_fraction,
    factor,
    format_rational,
    is_prime,
    parse_rational,
    quadratic_defect,
    valuation,
)


def _val(x, p):
    return valuation(x, p)


def _check_lambda(lam):
    lam = as_fraction(lam)
    if lam == 0 or lam.denominator != 1:
        raise ValueError("lambda must be a nonzero square-free integer")
    for e in factor(lam.numerator).values():
        if e > 1:
            raise ValueError(f"lambda = {lam} is not square-free")
    return lam


@dataclass(frozen=True)
class LocalQuadLattice2:
    """Lattice spanned by the two basis columns inside (F^2, lam*x^2 + y^2)."""

    prime: int
    lam: Fraction
    basis: tuple  # ((b00, b01), (b10, b11)) Fractions; columns are vectors

    def __post_init__(self):
        if not is_prime(self.prime):
            raise ValueError(f"{self.prime} is not a prime")
        object.__setattr__(self, "lam", _check_lambda(self.lam))
        rows = tuple(tuple(as_fraction(x) for x in row) for row in self.basis)
        object.__setattr__(self, "basis", rows)
        if self._det() == 0:
            raise ValueError("basis is singular")

    def _det(self):
        b = self.basis
        return b[0][0] * b[1][1] - b[0][1] * b[1][0]

    @property
    def gram(self):
        b = [list(row) for row in self.basis]
        d = self.diagonal_form()
        g = ratmat.mat_mul(ratmat.mat_mul(ratmat.transpose(b), d), b)
        return ((g[0][0], g[0][1]), (g[1][0], g[1][1]))

    def diagonal_form(self):
        return [[self.lam, Fraction(0)], [Fraction(0), Fraction(1)]]

    def with_basis(self, rows):
        return LocalQuadLattice2(
            self.prime, self.lam, tuple(tuple(x for x in row) for row in rows)
        )

    def scaled(self, c):
        c = as_fraction(c)
        return self.with_basis([[c * x for x in row] for row in self.basis])

    def to_json_dict(self):
        return {
            "p": self.prime,
            "lambda": format_rational(self.lam),
            "basis": [[format_rational(x) for x in row] for row in self.basis],
        }

    @classmethod
    def from_json_dict(cls, data):
        rows = tuple(
            tuple(parse_rational(x) for x in row) for row in data["basis"]
        )
        return cls(int(data["p"]), parse_rational(data["lambda"]), rows)


def standard_lattice(p, lam):
    """The lattice o^2 with Gram diag(lam, 1)."""
    return LocalQuadLattice2(p, as_fraction(lam), ((1, 0), (0, 1)))


def same_local_lattice(l1, l2):
    """Equality of the Z_(p)-spans (prime and form must agree)."""
    if l1.prime != l2.prime or l1.lam != l2.lam:
        raise ValueError("lattices live in different local quadratic spaces")
    return _same_span([list(r) for r in l1.basis], [list(r) for r in l2.basis], l1.prime)


def _same_span(b1, b2, p):
    m = ratmat.mat_mul(ratmat.mat_inv(b1), b2)
    if any(_val(x, p) < 0 for row in m for x in row):
        return False
    return _val(m[0][0] * m[1][1] - m[0][1] * m[1][0], p) == 0


# ---------------------------------------------------------------------------
# dual, scale/norm/volume, modular and maximal lattices


def dual(lat):
    """Dual lattice via the inverse Gram; an involution on lattices."""
    b = [list(r) for r in lat.basis]
    g = [list(r) for r in lat.gram]
    return lat.with_basis(ratmat.mat_mul(b, ratmat.mat_inv(g)))


def scale_norm_volume(lat):
    """The ideals (scale, norm, volume) at the lattice's prime.

    Scale is generated by all Gram entries, norm by the diagonal Gram
    entries together with 2*scale, volume by the Gram determinant.
    """
    p = lat.prime
    g = lat.gram
    s = min(_val(g[0][0], p), _val(g[0][1], p), _val(g[1][1], p))
    n2 = _val(2, p) + s if s != INF else INF
    nv = min(_val(g[0][0], p), _val(g[1][1], p), n2)
    vv = _val(g[0][0] * g[1][1] - g[0][1] * g[0][1], p)
    return (LocalIdeal(p, s), LocalIdeal(p, nv), LocalIdeal(p, vv))


def is_modular(lat):
    """LocalIdeal a with lat = a * dual(lat), or None when not modular."""
    s, _, v = scale_norm_volume(lat)
    if v.valuation == 2 * s.valuation:
        return s
    return None


class OrthogonalizationFailure(ValueError):
    """Dyadic lattice with norm strictly inside scale has no orthogonal basis."""


def orthogonalize(lat):
    """Same lattice with a diagonal Gram.

    Pivots on a vector attaining the norm ideal and completes with its
    Gram-Schmidt complement; this is a unimodular (at p) change of basis.
    Fails exactly when p = 2 and the norm is strictly inside the scale.
    """
    p = lat.prime
    g = lat.gram
    v11 = _val(g[0][0], p)
    v22 = _val(g[1][1], p)
    v12 = _val(g[0][1], p)
    s = min(v11, v22, v12)
    if v11 > s and v22 > s:
        if p == 2:
            raise OrthogonalizationFailure(
                "norm is strictly inside scale at p = 2; lattice is modular"
            )
        pivot = (1, 1)  # q(e1 + e2) attains the scale when 2 is a unit
    elif v11 <= v22:
        pivot = (1, 0)
    else:
        pivot = (0, 1)
    b = [list(r) for r in lat.basis]
    x, y = pivot
    f1 = [x * b[0][0] + y * b[0][1], x * b[1][0] + y * b[1][1]]
    other = [b[0][1], b[1][1]] if pivot == (1, 0) else [b[0][0], b[1][0]]
    d = lat.diagonal_form()

    def form(u, w):
        return sum(u[i] * d[i][j] * w[j] for i in range(2) for j in range(2))

    c = form(other, f1) / form(f1, f1)
    f2 = [other[0] - c * f1[0], other[1] - c * f1[1]]
    out = lat.with_basis(((f1[0], f2[0]), (f1[1], f2[1])))
    og = out.gram
    v1 = _val(og[0][0], p)
    v2 = _val(og[1][1], p)
    if v1 > v2:
        out = out.with_basis(
            ((out.basis[0][1], out.basis[0][0]), (out.basis[1][1], out.basis[1][0]))
        )
    return out


def is_maximal(lat, a):
    """Is the lattice a-maximal (no superlattice keeps its norm inside a)?

    Fast accept through the square-free criterion val(4 a^-2 v) <= 1; the
    odd-prime leftovers reduce to a residue test after orthogonalizing, the
    dyadic leftovers to the quadratic defect (diagonalizable case) or to a
    valuation pattern (modular case).
    """
    p = lat.prime
    if a.prime != p:
        raise ValueError("ideal and lattice live at different primes")
    m = a.valuation
    if m == INF:
        raise ValueError("a-maximality needs a nonzero ideal")
    _, nrm, vol = scale_norm_volume(lat)
    if nrm.valuation < m:
        raise ValueError("precondition violated: norm not contained in the ideal")
    n = _val(2, p)
    if 2 * n + vol.valuation - 2 * m <= 1:
        return True
    if p != 2:
        diag = orthogonalize(lat)
        g = diag.gram
        r = _val(g[0][0], p)
        s = _val(g[1][1], p)
        if r > s:
            r, s = s, r
        if r >= m + 2 or s >= m + 2:
            return False
        # r = s = m + 1: maximal exactly when -u1*u2 is a non-residue
        u1 = g[0][0] / Fraction(p) ** r
        u2 = g[1][1] / Fraction(p) ** s
        from .exactnum import unit_mod

        res = pow(unit_mod(-u1 * u2, p), (p - 1) // 2, p)
        return res != 1
    g = lat.gram
    v11 = _val(g[0][0], p)
    v22 = _val(g[1][1], p)
    v12 = _val(g[0][1], p)
    if v12 < min(v11, v22):
        # modular with norm strictly inside scale: only the valuation
        # pattern matters (alpha = beta = 2 units * 2 keeps it anisotropic)
        j = v12
        if j == m - 1:
            return True
        if j == m:
            return v11 == j + 1 and v22 == j + 1
        return False
    diag = orthogonalize(lat)
    dg = diag.gram
    r = _val(dg[0][0], p)  # orthogonalize sorts the norm generator first
    if r != m:
        return False
    lam2 = dg[1][1] / dg[0][0]
    if _val(lam2, p) >= 2:
        return False
    return quadratic_defect(-lam2, 2).valuation == 1


# ---------------------------------------------------------------------------
# the lattice-to-order map


@dataclass(frozen=True)
class LocalOrder2x2:
    """Z_(p)-order in Mat(2, F) spanned by four 2x2 matrices."""

    prime: int
    generators: tuple  # four 2x2 Fraction matrices

    def flat(self):
        return [[m[i][j] for i in range(2) for j in range(2)] for m in self.generators]

    def same_as(self, other):
        """Equality of the Z_(p)-spans of the generators."""
        if self.prime != other.prime:
            return False
        m1 = self.flat()
        m2 = other.flat()
        for mat in (
            ratmat.mat_mul(m2, ratmat.mat_inv(m1)),
            ratmat.mat_mul(m1, ratmat.mat_inv(m2)),
        ):
            for row in mat:
                for x in row:
                    if _val(x, self.prime) < 0:
                        return False
        return True

    def contains_matrix(self, g):
        vec = [g[0][0], g[0][1], g[1][0], g[1][1]]
        coords = ratmat.vec_mat(vec, ratmat.mat_inv(self.flat()))
        return all(_val(x, self.prime) >= 0 for x in coords)

    def conjugated(self, g):
        gi = ratmat.mat_inv(g)
        return LocalOrder2x2(
            self.prime,
            tuple(
                tuple(tuple(row) for row in ratmat.mat_mul(ratmat.mat_mul(g, m), gi))
                for m in self.generators
            ),
        )


_ELEMENTARY = (
    ((Fraction(1), Fraction(0)), (Fraction(0), Fraction(0))),
    ((Fraction(0), Fraction(1)), (Fraction(0), Fraction(0))),
    ((Fraction(0), Fraction(0)), (Fraction(1), Fraction(0))),
    ((Fraction(0), Fraction(0)), (Fraction(0), Fraction(1))),
)


def order_of_lattice(lat):
    """End(L) cap End(L-dual) as a LocalOrder2x2.

    End(L) is the conjugate of Mat(2, o) by the basis; intersecting with the
    dual's endomorphisms is a p-integrality condition solved exactly over Z.
    """
    p = lat.prime
    b = [list(r) for r in lat.basis]
    b_inv = ratmat.mat_inv(b)
    g = [list(r) for r in lat.gram]
    g_inv = ratmat.mat_inv(g)
    conj = []
    for e in _ELEMENTARY:
        m = ratmat.mat_mul(ratmat.mat_mul(b, [list(r) for r in e]), b_inv)
        conj.append(m)
    # sigma = sum eta_k conj[k] lies in End(dual) iff G E(eta) G^-1 is
    # p-integral, a linear condition on eta with W rows = flattened G E_k G^-1
    w = []
    for e in _ELEMENTARY:
        m = ratmat.mat_mul(ratmat.mat_mul(g, [list(r) for r in e]), g_inv)
        w.append([m[0][0], m[0][1], m[1][0], m[1][1]])
    den = 1
    for row in w:
        for x in row:
            den = den * x.denominator // gcd(den, x.denominator)
    w_int = [[int(x * den) for x in row] for row in w]
    # eta . w_int must land in den*Z_(p)^4; only the p-part pv of den matters,
    # and for integer eta that is the congruence eta . w_int = 0 mod pv
    pv = p ** _val(den, p)
    stacked = [list(row) for row in w_int] + [
        [pv if t == s else 0 for t in range(4)] for s in range(4)
    ]
    ker = _kernel.kernel(stacked, 4)
    gens = []
    for k in ker:
        eta = k[:4]
        m = [[Fraction(0), Fraction(0)], [Fraction(0), Fraction(0)]]
        for c, cm in zip(eta, conj):
            for i in range(2):
                for j in range(2):
                    m[i][j] += c * cm[i][j]
        gens.append((tuple(m[0]), tuple(m[1])))
    return LocalOrder2x2(p, tuple(gens))


# ---------------------------------------------------------------------------
# equivalence, similitudes, and counting


def lattice_equivalent(l1, l2):
    """Scalar multiples or scalar multiples of the dual (same order test)."""
    if l1.prime != l2.prime or l1.lam != l2.lam:
        raise ValueError("lattices live in different local quadratic spaces")
    p = l1.prime
    for other in (l2, dual(l2)):
        dv = _val(l1._det(), p) - _val(other._det(), p)
        if dv % 2 == 0:
            scaled = other.scaled(Fraction(p) ** (dv // 2))
            if same_local_lattice(l1, scaled):
                return True
    return False


def is_similitude_matrix(lam, g):
    """Exponent l with g^T diag(lam,1) g == (-1)^l det(g) diag(lam,1), or None.

    Note l == 0 is a meaningful "yes"; compare the result against None.
    """
    lam = as_fraction(lam)
    g = [[as_fraction(x) for x in row] for row in g]
    det = g[0][0] * g[1][1] - g[0][1] * g[1][0]
    if det == 0:
        raise ZeroDivisionError("similitude candidates must be invertible")
    d = [[lam, Fraction(0)], [Fraction(0), Fraction(1)]]
    m = ratmat.mat_mul(ratmat.mat_mul(ratmat.transpose(g), d), g)
    plus = [[det * lam, Fraction(0)], [Fraction(0), det]]
    if m == plus:
        return 0
    minus = [[-det * lam, Fraction(0)], [Fraction(0), -det]]
    if m == minus:
        return 1
    return None


def stabilizes_standard_order(p, g):
    """Does g conjugate Mat(2, Z_(p)) to itself?

    Equivalent to g being a scalar times a p-integral matrix with unit
    determinant, so odd-valuation determinants always fail.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not a prime")
    g = [[as_fraction(x) for x in row] for row in g]
    det = g[0][0] * g[1][1] - g[0][1] * g[1][0]
    if det == 0:
        raise ZeroDivisionError("stabilizer candidates must be invertible")
    dv = _val(det, p)
    if dv % 2:
        return False
    c = Fraction(p) ** (dv // 2)
    return all(_val(x / c, p) >= 0 for row in g for x in row)


def isomorphism_class_count(defect_valuation, n):
    """Isomorphism classes of maximal stable orders from the defect of -lam.

    Pure function of (defect valuation, n = ord_p(2)): odd defect 2m+1 gives
    m+1 classes, defect (4) = p^(2n) or the zero ideal gives n+1; other
    finite even defects cannot occur for a unit or uniformizer discriminant.
    """
    if defect_valuation == INF:
        return n + 1
    d = int(defect_valuation)
    if d % 2 == 1:
        return (d - 1) // 2 + 1
    if d == 2 * n:
        return n + 1
    raise ValueError(f"impossible quadratic defect valuation {d} at ord(2) = {n}")


def count_classes(p, lam):
    """Number of isomorphism classes of maximal stable orders at p.

    One at every odd prime; at p = 2 the count is driven by the quadratic
    defect of -lam through the dyadic counting formula with n = ord_2(2) = 1.
    """
    lam = _check_lambda(lam)
    if not is_prime(p):
        raise ValueError(f"{p} is not a prime")
    if p != 2:
        return 1
    d = quadratic_defect(-lam, 2).valuation
    return isomorphism_class_count(d, 1)


def norm_weight_orders(alpha, beta, p=2):
    """Orders of the norm and weight generators of Gram ((alpha,1),(1,beta)).

    Requires the displayed unimodular shape with alpha a norm generator
    (ord(alpha) <= ord(beta) and alpha attains the norm ideal); the weight
    generator is beta or 2, whichever has smaller order.
    """
    if p != 2:
        raise ValueError("the norm/weight pattern is dyadic; use p = 2")
    alpha = as_fraction(alpha)
    beta = as_fraction(beta)
    det = alpha * beta - 1
    if _val(det, p) != 0:
        raise ValueError("Gram ((alpha,1),(1,beta)) must be unimodular")
    va = _val(alpha, p)
    vb = _val(beta, p)
    norm_val = min(va, vb, 1)
    if va != norm_val:
        raise ValueError("alpha is not a norm generator")
    if not (va <= vb):
        raise ValueError("precondition ord(alpha) <= ord(beta) violated")
    weight = vb if vb < 1 else 1
    return (int(va), int(weight))
