from fractions import Fraction

import pytest

from conftest import labels, random_essential
from symdyn import sft, spectral
from symdyn.errors import DidNotConverge, EmptyShift, LMaxTooSmall, NoCycle


def upper_power(bound: Fraction, l: int) -> Fraction:
    out = Fraction(1)
    base = bound
    while l:
        if l & 1:
            out *= base
        base *= base
        l >>= 1
    return out


def test_golden_mean_bracket():
    b = spectral.entropy_bounds(sft.golden_mean())
    assert b.width <= Fraction(1, 10**6)
    # lambda^2 - lambda - 1 changes sign across the bracket
    f = lambda v: v * v - v - 1
    assert f(b.lambda_lo) <= 0 <= f(b.lambda_hi)


@pytest.mark.parametrize("x,value", [(sft.full_shift(2), 2), (sft.full_shift(3), 3),
                                     (sft.cycle(5), 1)])
def test_exact_brackets(x, value):
    b = spectral.entropy_bounds(x)
    assert b.lambda_lo == b.lambda_hi == value


def test_reducible_takes_max_component():
    # golden mean feeding into a full 2-shift
    x = sft.from_matrix(list("abcd"), [[1, 1, 1, 0], [1, 0, 0, 0], [0, 0, 1, 1], [0, 0, 1, 1]])
    b = spectral.entropy_bounds(x)
    assert b.lambda_lo == b.lambda_hi == 2


def test_errors():
    with pytest.raises(EmptyShift):
        spectral.entropy_bounds(sft.empty_sft())
    with pytest.raises(NoCycle):
        spectral.entropy_bounds(sft.from_matrix(["a", "b"], [[0, 1], [0, 0]]))
    with pytest.raises(DidNotConverge) as info:
        spectral.entropy_bounds(sft.golden_mean(), Fraction(1, 10**30), max_iter=3)
    assert info.value.bracket.lambda_lo <= info.value.bracket.lambda_hi


def test_brackets_nest_as_tolerance_shrinks(rng):
    for n in range(1, 6):
        for _ in range(10):
            x = sft.from_matrix(labels(n), random_essential(rng, n))
            coarse = spectral.entropy_bounds(x, Fraction(1, 10))
            fine = spectral.entropy_bounds(x, Fraction(1, 10**8))
            assert coarse.lambda_lo <= fine.lambda_hi and fine.lambda_lo <= coarse.lambda_hi
            assert fine.width <= Fraction(1, 10**8)


@pytest.mark.parametrize("x", [sft.golden_mean(), sft.full_shift(2), sft.full_shift(3), sft.cycle(4)])
def test_coarse_sandwich(x):
    hi = spectral.entropy_bounds(x).lambda_hi
    for l in (5, 10, 20):
        assert sft.word_count(x, l) <= x.n * upper_power(hi, l)


def test_limit_degree_examples():
    assert spectral.limit_degree(sft.full_shift(2), 6) == spectral.Stabilized(2, 1)
    r = spectral.limit_degree(sft.golden_mean(), 8)
    assert isinstance(r, spectral.NotStabilized)
    assert r.ratios[:3] == (Fraction(3, 2), Fraction(5, 3), Fraction(8, 5))
    assert spectral.limit_degree(sft.cycle(3), 6) == spectral.Stabilized(1, 1)
    with pytest.raises(LMaxTooSmall):
        spectral.limit_degree(sft.full_shift(2), 3)


def test_stabilized_invariant(rng):
    for _ in range(60):
        n = rng.randint(1, 5)
        x = sft.from_matrix(labels(n), random_essential(rng, n))
        r = spectral.limit_degree(x, 10)
        if isinstance(r, spectral.Stabilized):
            for l in range(r.since_l, 10):
                assert sft.word_count(x, l + 1) == r.degree * sft.word_count(x, l)
