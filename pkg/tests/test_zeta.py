from fractions import Fraction

import pytest

from conftest import labels, random_matrix
from oracles import brute_cyclic_count, reversed_char_poly_by_interpolation, series_of_reciprocal
from symdyn import sft, zeta
from symdyn.errors import EmptyShift, NotAutomorphism, NotBijective


def test_examples():
    assert str(zeta.dynamical_zeta(sft.golden_mean())) == "1 / (1 - t - t^2)"
    assert str(zeta.dynamical_zeta(sft.full_shift(2))) == "1 / (1 - 2*t)"
    assert str(zeta.dynamical_zeta(sft.cycle(3))) == "1 / (1 - t^3)"
    assert zeta.zeta_series(sft.golden_mean(), 4).coeffs == (1, 1, 2, 3, 5)
    with pytest.raises(EmptyShift):
        zeta.char_poly_reversed(sft.empty_sft())


def test_char_poly_against_determinants(rng):
    for n in range(1, 6):
        for _ in range(15):
            rows = random_matrix(rng, n)
            x = sft.from_matrix(labels(n), rows)
            got = list(zeta.char_poly_reversed(x).coeffs)
            want = reversed_char_poly_by_interpolation(rows)
            while want and want[-1] == 0:
                want.pop()
            assert got == want


def test_series_against_cyclic_words(rng):
    for n in range(1, 5):
        for _ in range(10):
            rows = random_matrix(rng, n)
            x = sft.from_matrix(labels(n), rows)
            counts = [brute_cyclic_count(rows, k) for k in range(1, 7)]
            want = zeta.PowerSeries.exp_of_counts(counts, 6)
            assert zeta.zeta_series(x, 6) == want
            den = list(zeta.char_poly_reversed(x).coeffs)
            assert list(want.coeffs) == series_of_reciprocal(den, 6)


def test_rational_function_normalisation():
    rf = zeta.RationalFunction.make(zeta.IntPoly((2, -2)), zeta.IntPoly((-4, 0, 4)))
    # (2 - 2t) / (4t^2 - 4) = -1/2 * 1/(1 + t)
    assert rf.series(3).coeffs == (Fraction(-1, 2), Fraction(1, 2), Fraction(-1, 2), Fraction(1, 2))
    assert rf.denominator.coeffs[0] > 0


def test_log_derivative_roundtrip():
    counts = [1, 3, 4, 7, 11, 18]
    s = zeta.PowerSeries.exp_of_counts(counts, 6)
    assert list(s.log_derivative().coeffs) == counts


def test_twist_on_cycle():
    x = sft.cycle(3)
    tw = zeta.make_twist(x, (1, 2, 0))
    assert tw.order == 3
    # N_n counts states x with an edge x -> f0^n(x)
    assert zeta.twisted_counts(tw, 6) == [3, 0, 0, 3, 0, 0]
    assert str(zeta.twisted_log_derivative(tw)) == "3 / (1 - t^3)"


def test_twist_errors():
    x = sft.golden_mean()
    with pytest.raises(NotBijective):
        zeta.make_twist(x, (0, 0))
    with pytest.raises(NotAutomorphism):
        zeta.make_twist(x, (1, 0))


def test_identity_twist_counts_loops(rng):
    for n in range(1, 5):
        rows = random_matrix(rng, n)
        x = sft.from_matrix(labels(n), rows)
        tw = zeta.identity_twist(x)
        loops = sum(rows[i][i] for i in range(n))
        assert zeta.twisted_counts(tw, 6) == [loops] * 6
        assert zeta.twisted_zeta_series(tw, 6) == zeta.PowerSeries.exp_of_counts([loops] * 6, 6)
