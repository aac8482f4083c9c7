from fractions import Fraction

from hypothesis import strategies as st

from fscalc.constants import Scale
from fscalc.params import ExtExp, SpaceParam


def random_rational(rng, low, high, max_denominator=12):
    """A rational in ``[low, high]`` drawn from a seeded ``random.Random``"""
    denominator = rng.randint(1, max_denominator)
    return Fraction(rng.randint(low * denominator, high * denominator), denominator)


def rationals(low, high, max_denominator=4):
    return st.integers(1, max_denominator).flatmap(
        lambda denominator: st.integers(low * denominator, high * denominator).map(
            lambda numerator: Fraction(numerator, denominator)
        )
    )


def finite_exponents():
    return rationals(0, 2).filter(lambda recip: recip > 0).map(ExtExp)


def exponents():
    return rationals(0, 2).map(ExtExp)


def dimensions():
    return st.sampled_from([2, 3])


def f_spaces(low=-2, high=4):
    return st.builds(
        lambda s, p, q: SpaceParam(Scale.F, s, p, q),
        rationals(low, high),
        finite_exponents(),
        exponents(),
    )
