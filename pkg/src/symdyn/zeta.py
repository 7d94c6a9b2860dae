"""Dynamical zeta functions, exact power series and Frobenius-twisted counts."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import _matrix
from .errors import EmptyShift, IntegralityViolation, InvalidArgument, NotAutomorphism, NotBijective
from .sft import Sft, periodic_count


# ---------------------------------------------------------------------------
# integer polynomials in t

def _strip(cs):
    cs = list(cs)
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


def _term(c, i, first):
    mag = abs(c)
    if i == 0:
        body = str(mag)
    else:
        mono = "t" if i == 1 else f"t^{i}"
        body = mono if mag == 1 else f"{mag}*{mono}"
    if first:
        return ("-" if c < 0 else "") + body
    return (" - " if c < 0 else " + ") + body


@dataclass(frozen=True)
class IntPoly:
    """Integer polynomial in t, coefficients low-to-high with trailing zeros stripped."""

    coeffs: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _strip(int(c) for c in self.coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, t):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return IntPoly(tuple(x + y for x, y in zip(a, b)))

    def __neg__(self):
        return IntPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if self.is_zero() or other.is_zero():
            return IntPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return IntPoly(tuple(out))

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c:
                parts.append(_term(c, i, not parts))
        return "".join(parts)


def _qpoly_divmod(a, b):
    a = [Fraction(c) for c in a]
    b = [Fraction(c) for c in b]
    quo = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and a:
        c = a[-1] / b[-1]
        s = len(a) - len(b)
        quo[s] = c
        for i, y in enumerate(b):
            a[s + i] -= c * y
        while a and a[-1] == 0:
            a.pop()
    return _strip(quo), _strip(a)


def _qpoly_gcd(a, b):
    a, b = _strip(a), _strip(b)
    while b:
        a, b = b, _qpoly_divmod(a, b)[1]
    if not a:
        return a
    return tuple(c / a[-1] for c in a)


@dataclass(frozen=True)
class RationalFunction:
    """Reduced quotient of integer polynomials.

    Normal form: no common polynomial factor, no common integer content, and the
    denominator's constant term positive (leading coefficient if the constant
    term vanishes).
    """

    numerator: IntPoly
    denominator: IntPoly

    @classmethod
    def make(cls, num, den) -> "RationalFunction":
        num = num if isinstance(num, IntPoly) else IntPoly(tuple(num))
        den = den if isinstance(den, IntPoly) else IntPoly(tuple(den))
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            return cls(IntPoly(), IntPoly((1,)))
        g = _qpoly_gcd(num.coeffs, den.coeffs)
        n_q = _qpoly_divmod(num.coeffs, g)[0]
        d_q = _qpoly_divmod(den.coeffs, g)[0]
        scale = math.lcm(*(Fraction(c).denominator for c in n_q + d_q))
        n_i = [int(Fraction(c) * scale) for c in n_q]
        d_i = [int(Fraction(c) * scale) for c in d_q]
        content = math.gcd(*n_i, *d_i)
        n_i = [c // content for c in n_i]
        d_i = [c // content for c in d_i]
        sign_ref = d_i[0] if d_i[0] != 0 else d_i[-1]
        if sign_ref < 0:
            n_i = [-c for c in n_i]
            d_i = [-c for c in d_i]
        return cls(IntPoly(tuple(n_i)), IntPoly(tuple(d_i)))

    def series(self, m: int) -> "PowerSeries":
        """Expansion to order m; needs a nonzero constant term in the denominator."""
        den = self.denominator.coeffs
        if den[0] == 0:
            raise InvalidArgument("denominator vanishes at t = 0")
        num = self.numerator.coeffs
        out = []
        for k in range(m + 1):
            acc = Fraction(num[k] if k < len(num) else 0)
            for i in range(1, min(k, len(den) - 1) + 1):
                acc -= den[i] * out[k - i]
            out.append(acc / den[0])
        return PowerSeries(tuple(out))

    def __str__(self):
        num, den = str(self.numerator), str(self.denominator)
        if len(self.numerator.coeffs) - self.numerator.coeffs.count(0) > 1:
            num = f"({num})"
        if den == "1":
            return num
        if len(self.denominator.coeffs) - self.denominator.coeffs.count(0) > 1:
            den = f"({den})"
        return f"{num} / {den}"


@dataclass(frozen=True)
class PowerSeries:
    """Truncated series c_0 + c_1 t + ... + c_m t^m with exact rational coefficients."""

    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, i):
        return self.coeffs[i]

    def truncate(self, m: int) -> "PowerSeries":
        return PowerSeries(self.coeffs[: m + 1])

    def derivative(self) -> "PowerSeries":
        return PowerSeries(tuple(i * c for i, c in enumerate(self.coeffs))[1:])

    def log_derivative(self) -> "PowerSeries":
        """S'/S to order m - 1 (S must have a nonzero constant term)."""
        c = self.coeffs
        if not c or c[0] == 0:
            raise InvalidArgument("logarithmic derivative needs a nonzero constant term")
        d = self.derivative().coeffs
        out = []
        for k in range(len(d)):
            acc = d[k] - sum(c[i] * out[k - i] for i in range(1, k + 1))
            out.append(acc / c[0])
        return PowerSeries(tuple(out))

    @classmethod
    def exp_of_counts(cls, counts: Sequence[int], m: int) -> "PowerSeries":
        """exp(sum_{n>=1} counts[n-1] t^n / n) to order m.

        From S' = S * sum N_n t^(n-1):  k c_k = sum_{n=1..k} N_n c_{k-n}.
        """
        if m < 0:
            raise InvalidArgument("order must be nonnegative")
        c = [Fraction(1)]
        for k in range(1, m + 1):
            c.append(sum(counts[n - 1] * c[k - n] for n in range(1, k + 1)) / k)
        return cls(tuple(c))

    def __str__(self):
        return ", ".join(str(c) for c in self.coeffs)


# ---------------------------------------------------------------------------
# untwisted zeta

def _reversed_char_poly(x: Sft) -> IntPoly:
    """det(I - tA) by Faddeev-LeVerrier over the rationals."""
    n = x.n
    a = [[Fraction(v) for v in row] for row in x.transition]
    m = [[Fraction(0)] * n for _ in range(n)]
    c = [Fraction(1)]
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{k-1} I ;  c_k = -tr(A M_k) / k
        am = [[sum(a[i][l] * m[l][j] for l in range(n) if a[i][l]) for j in range(n)]
              for i in range(n)]
        m = [[am[i][j] + (c[-1] if i == j else 0) for j in range(n)] for i in range(n)]
        tr = sum(sum(a[i][l] * m[l][i] for l in range(n) if a[i][l]) for i in range(n))
        c.append(-Fraction(tr) / k)
    if any(v.denominator != 1 for v in c):
        raise IntegralityViolation(f"non-integral characteristic coefficients {c}")
    # det(tI - A) = sum c_k t^(n-k), so det(I - tA) = sum c_k t^k
    return IntPoly(tuple(int(v) for v in c))


def char_poly_reversed(x: Sft) -> IntPoly:
    if x.is_empty:
        raise EmptyShift("the shift has no states")
    return _reversed_char_poly(x)


def dynamical_zeta(x: Sft) -> RationalFunction:
    return RationalFunction.make(IntPoly((1,)), char_poly_reversed(x))


def periodic_counts(x: Sft, n_max: int) -> list:
    """[tr(A), tr(A^2), ..., tr(A^n_max)]."""
    if x.is_empty:
        return [0] * n_max
    a = x.matrix if _matrix._fits(x.matrix, n_max) else x.matrix.astype(object)
    p = a
    out = [_matrix.trace(p)]
    for _ in range(n_max - 1):
        p = p.dot(a)
        out.append(_matrix.trace(p))
    return out[:n_max]


def zeta_series(x: Sft, m: int) -> PowerSeries:
    """exp(sum N(X,n) t^n / n) to order m, checked against 1/det(I - tA)."""
    s = PowerSeries.exp_of_counts(periodic_counts(x, m), m)
    expected = RationalFunction.make(IntPoly((1,)), _reversed_char_poly(x)).series(m)
    assert s == expected, "zeta series disagrees with the determinant formula"
    return s


# ---------------------------------------------------------------------------
# twisted zeta

@dataclass(frozen=True)
class TwistData:
    """A 1-block automorphism of ``host`` given by the state permutation ``perm``."""

    host: Sft
    perm: tuple
    order: int

    def power(self, n: int) -> tuple:
        """The permutation f0^n as an image array."""
        k = n % self.order
        out = list(range(len(self.perm)))
        for _ in range(k):
            out = [self.perm[i] for i in out]
        return tuple(out)


def _perm_order(perm) -> int:
    seen = [False] * len(perm)
    d = 1
    for i in range(len(perm)):
        if seen[i]:
            continue
        length, j = 0, i
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        d = math.lcm(d, length)
    return d


def make_twist(x: Sft, f0: Sequence[int]) -> TwistData:
    perm = tuple(int(v) for v in f0)
    n = x.n
    if len(perm) != n or sorted(perm) != list(range(n)):
        raise NotBijective(f"{list(perm)} is not a permutation of {n} states")
    t = x.transition
    for i in range(n):
        for j in range(n):
            if t[i][j] != t[perm[i]][perm[j]]:
                raise NotAutomorphism(
                    f"transition[{x.states[i]}][{x.states[j]}] = {t[i][j]} but "
                    f"transition[{x.states[perm[i]]}][{x.states[perm[j]]}] = "
                    f"{t[perm[i]][perm[j]]}", (i, j))
    return TwistData(x, perm, _perm_order(perm))


def identity_twist(x: Sft) -> TwistData:
    return make_twist(x, range(x.n))


def twisted_count(tw: TwistData, n: int) -> int:
    """|{x : T[x][f0^n(x)] = 1}|, cross-checked against tr(T F^n)."""
    if n < 1:
        raise InvalidArgument("n must be positive")
    t = tw.host.transition
    fn = tw.power(n)
    direct = sum(t[i][fn[i]] for i in range(tw.host.n))
    size = tw.host.n
    if size:
        f = np.zeros((size, size), dtype=np.int64)
        f[list(tw.perm), list(range(size))] = 1  # F[z][y] = 1 iff z = f0(y)
        via_trace = _matrix.trace(tw.host.matrix.dot(np.linalg.matrix_power(f, n)))
    else:
        via_trace = 0
    assert direct == via_trace, "twisted count disagrees with tr(T F^n)"
    return direct


def twisted_counts(tw: TwistData, n_max: int) -> list:
    return [twisted_count(tw, n) for n in range(1, n_max + 1)]


def twisted_log_derivative(tw: TwistData) -> RationalFunction:
    """sum_{n>=1} N_n t^(n-1) summed as (N_1 + ... + N_d t^(d-1)) / (1 - t^d).

    N_n depends on n mod d only; the residue 0 is represented by r = d.
    """
    d = tw.order
    num = IntPoly(tuple(twisted_counts(tw, d)))
    den = IntPoly((1,) + (0,) * (d - 1) + (-1,))
    return RationalFunction.make(num, den)


def twisted_zeta_series(tw: TwistData, m: int) -> PowerSeries:
    """exp(sum N_n t^n / n) to order m, checked against the rational log-derivative."""
    s = PowerSeries.exp_of_counts(twisted_counts(tw, max(m, 0)), m)
    if m >= 1:
        assert s.log_derivative() == twisted_log_derivative(tw).series(m - 1)
    return s
