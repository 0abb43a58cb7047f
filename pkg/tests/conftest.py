import random
from fractions import Fraction

import pytest

from daggerorders import (
    Order4,
    OrthogonalInvolution,
    QuaternionAlgebra,
    canonicalize,
)


@pytest.fixture(scope="session")
def golden():
    """Worked example: H = (-1,-5/Q) with the involution negating only ij.

    O1 and O2 are maximal orders whose intersections with their involution
    images are the golden lattices; note (45 + 385i - 63j + ij)/90 has
    reduced norm 21, while the numerator-90 variant (norm 87/4) would not
    even be integral.
    """
    H = QuaternionAlgebra(-1, -5)
    one, i, j, k = H.basis()
    dag = OrthogonalInvolution(k)
    o1 = Order4.from_lattice(
        canonicalize(
            H,
            [
                one,
                i,
                j,
                H.element(
                    Fraction(1, 2), Fraction(1, 2), Fraction(3, 10), Fraction(-1, 10)
                ),
            ],
        )
    )
    o2 = Order4.from_lattice(
        canonicalize(
            H,
            [
                one,
                i.scale(9),
                j,
                H.element(
                    Fraction(45, 90),
                    Fraction(385, 90),
                    Fraction(-63, 90),
                    Fraction(1, 90),
                ),
            ],
        )
    )
    return {"H": H, "dagger": dag, "O1": o1, "O2": o2}


@pytest.fixture()
def rng():
    return random.Random(20260808)


def random_algebra(rng, bound=30):
    a = 0
    b = 0
    while a == 0:
        a = rng.randint(-bound, bound)
    while b == 0:
        b = rng.randint(-bound, bound)
    return QuaternionAlgebra(a, b)


def random_pure(rng, algebra, bound=5):
    while True:
        x, y, z = (rng.randint(-bound, bound) for _ in range(3))
        if (x, y, z) != (0, 0, 0):
            return algebra.element(0, x, y, z)


def random_quat(rng, algebra, bound=9, den=4):
    return algebra.element(
        *[Fraction(rng.randint(-bound, bound), rng.randint(1, den)) for _ in range(4)]
    )
