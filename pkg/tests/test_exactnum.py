import random
from fractions import Fraction

import pytest

from daggerorders.exactnum import (
    INF,
    OO,
    FactorizationError,
    IdealZ,
    LocalIdeal,
    factor,
    format_rational,
    hilbert_symbol,
    iota,
    parse_rational,
    quadratic_defect,
    square_class,
    valuation,
)

from _oracles import defect_oracle, hilbert_oracle


def test_valuation_examples():
    assert valuation(50, 5) == 2
    assert valuation(0, 3) == INF
    assert valuation(Fraction(9, 10), 5) == -1


def test_valuation_rejects_non_prime():
    with pytest.raises(ValueError):
        valuation(10, 6)


def test_valuation_additive():
    rng = random.Random(1)
    for _ in range(500):
        x = Fraction(rng.randint(1, 400), rng.randint(1, 400)) * rng.choice([1, -1])
        y = Fraction(rng.randint(1, 400), rng.randint(1, 400)) * rng.choice([1, -1])
        p = rng.choice([2, 3, 5, 7, 11])
        assert valuation(x * y, p) == valuation(x, p) + valuation(y, p)


def test_square_class_examples():
    assert square_class(Fraction(4, 9)).representative == 1
    assert square_class(-5).representative == -5
    assert square_class(50).representative == 2
    with pytest.raises(ValueError):
        square_class(0)


def test_square_class_constant_on_square_multiples():
    rng = random.Random(2)
    for _ in range(1000):
        x = Fraction(rng.randint(1, 300), rng.randint(1, 300)) * rng.choice([1, -1])
        t = Fraction(rng.randint(1, 50), rng.randint(1, 50))
        assert square_class(x * t * t) == square_class(x)


def test_iota_examples():
    assert iota(square_class(1)) == IdealZ(1)
    assert iota(square_class(5)) == IdealZ(5)
    assert iota(square_class(-5)) == IdealZ(5)


def test_ideal_arithmetic():
    assert IdealZ(4) * IdealZ(6) == IdealZ(24)
    assert IdealZ(4).intersect(IdealZ(6)) == IdealZ(12)
    assert IdealZ(0).intersect(IdealZ(6)) == IdealZ(0)


def test_hilbert_examples():
    assert hilbert_symbol(-1, -5, OO) == -1
    assert hilbert_symbol(-1, -5, 2) == -1
    assert hilbert_symbol(-1, -5, 5) == 1


def test_hilbert_against_bruteforce():
    cases = [(-1, -5), (-1, -1), (2, 3), (-2, 5), (3, 7), (5, 5), (-6, 10), (7, -14)]
    for a, b in cases:
        for p in (2, 3, 5, 7, OO):
            assert hilbert_symbol(a, b, p) == hilbert_oracle(a, b, p), (a, b, p)


def test_hilbert_symmetric_bimultiplicative_product():
    rng = random.Random(3)
    for _ in range(500):
        a = rng.randint(-60, 60) or 1
        b = rng.randint(-60, 60) or 1
        c = rng.randint(-60, 60) or 1
        places = {OO, 2}
        for n in (a, b, c):
            places.update(factor(abs(n)))
        for p in places:
            assert hilbert_symbol(a, b, p) == hilbert_symbol(b, a, p)
            assert hilbert_symbol(a * c * c, b, p) == hilbert_symbol(a, b, p)
            assert hilbert_symbol(a, b, p) * hilbert_symbol(a, c, p) == hilbert_symbol(
                a, b * c, p
            )
        prod = 1
        for p in places:
            prod *= hilbert_symbol(a, b, p)
        assert prod == 1


def test_defect_examples():
    assert quadratic_defect(17, 2) == LocalIdeal(2, INF)
    assert quadratic_defect(5, 2) == LocalIdeal(2, 2)
    assert quadratic_defect(3, 7) == LocalIdeal(7, 0)
    with pytest.raises(ValueError):
        quadratic_defect(0, 3)


def test_defect_odd_valuation_equals_valuation():
    for a in (2, 8, 50, -2, 24, 3, 27, -75):
        for p in (2, 3, 5):
            v = valuation(a, p)
            if v != INF and v % 2:
                assert quadratic_defect(a, p).valuation == v


def test_defect_against_bruteforce():
    for a in range(-50, 51):
        if a == 0:
            continue
        for p in (2, 3, 5, 7):
            got = quadratic_defect(a, p).valuation
            want = defect_oracle(a, p, depth=12)
            assert got == want, (a, p, got, want)


def test_factor_certification():
    assert factor(360) == {2: 3, 3: 2, 5: 1}
    big_prime = 1000003
    assert factor(big_prime * 4, bound=100) == {2: 2, big_prime: 1}
    assert factor(big_prime**2, bound=100) == {big_prime: 2}
    with pytest.raises(FactorizationError):
        factor(1000003 * 1000033, bound=100)


def test_factor_bound_env_override(monkeypatch):
    monkeypatch.setenv("DAGGER_FACTOR_BOUND", "10")
    with pytest.raises(FactorizationError):
        factor(10007 * 10009)
    assert factor(10007**2) == {10007: 2}  # prime powers stay certifiable
    monkeypatch.delenv("DAGGER_FACTOR_BOUND")
    assert factor(10007 * 10009) == {10007: 1, 10009: 1}


def test_rational_wire_format():
    assert parse_rational("9/10") == Fraction(9, 10)
    assert parse_rational("-7") == Fraction(-7)
    assert format_rational(Fraction(9, 10)) == "9/10"
    assert format_rational(Fraction(4, 2)) == "2"
    rng = random.Random(4)
    for _ in range(200):
        x = Fraction(rng.randint(-999, 999), rng.randint(1, 999))
        assert parse_rational(format_rational(x)) == x
