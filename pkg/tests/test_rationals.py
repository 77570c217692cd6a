from tautring.rationals import (binomial, factorial, is_rat, parse_rat, rat,
                                rat_str)


def test_rat_arithmetic():
    assert rat(1, 2) + rat(1, 3) == rat(5, 6)
    assert rat(2, 4) == rat(1, 2)
    assert rat(3) * rat(1, 3) == 1


def test_rat_str_roundtrip():
    for v in (rat(0), rat(5), rat(-7, 3), rat(22, 7)):
        assert parse_rat(rat_str(v)) == v


def test_is_rat():
    assert is_rat(rat(1, 2))
    assert not is_rat("1/2")


def test_factorial_binomial():
    assert factorial(0) == 1
    assert factorial(6) == 720
    assert binomial(10, 3) == 120
    assert binomial(4, 7) == 0
