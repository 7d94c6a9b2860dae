"""Certified entropy brackets and limit degrees from word counts.

All arithmetic is exact.  The spectral radius is bracketed by Collatz-Wielandt
bounds for B + I on each irreducible component; logs are left to callers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .decomp import irreducible_components
from .errors import DidNotConverge, EmptyShift, InvalidArgument, LMaxTooSmall, NoCycle
from .sft import Sft, _require_words

DEFAULT_TOL = Fraction(1, 10**6)
DEFAULT_MAX_ITER = 1000


@dataclass(frozen=True)
class EntropyBracket:
    """lambda_lo <= spectral radius <= lambda_hi; entropy is log of the radius."""

    lambda_lo: Fraction
    lambda_hi: Fraction
    iterations: int

    @property
    def width(self) -> Fraction:
        return self.lambda_hi - self.lambda_lo

    def contains(self, value) -> bool:
        return self.lambda_lo <= value <= self.lambda_hi

    def log_bounds(self) -> tuple:
        return math.log(self.lambda_lo), math.log(self.lambda_hi)


def _bits_for(tol: Fraction) -> int:
    return max(64, math.ceil(math.log2(tol.denominator / max(tol.numerator, 1))) + 32)


def _perron_bracket(x: Sft, tol: Fraction, max_iter: int):
    """Collatz-Wielandt bracket for an irreducible shift.

    For any positive v, min (Mv)_i / v_i <= rho(M) <= max (Mv)_i / v_i.  With
    M = B + I (primitive) power iteration drives both ends to rho(B) + 1.  The
    vector is re-rounded to integers every step; the bounds stay valid because
    they hold for every positive vector.
    """
    n = x.n
    succ = x.successors
    bits = _bits_for(tol)
    scale = 1 << bits
    v = [1] * n
    lo, hi = None, None
    for it in range(1, max_iter + 1):
        w = [v[i] + sum(v[j] for j in succ[i]) for i in range(n)]
        ratios = [Fraction(w[i], v[i]) for i in range(n)]
        cand_lo, cand_hi = min(ratios) - 1, max(ratios) - 1
        lo = cand_lo if lo is None else max(lo, cand_lo)
        hi = cand_hi if hi is None else min(hi, cand_hi)
        if hi - lo <= tol:
            return lo, hi, it
        top = max(w)
        v = [max(1, -(-wi * scale // top)) for wi in w]
    raise DidNotConverge(max_iter, EntropyBracket(lo, hi, max_iter))


def entropy_bounds(x: Sft, tol=DEFAULT_TOL, max_iter: int = DEFAULT_MAX_ITER) -> EntropyBracket:
    """Rational bracket around the spectral radius of the transition matrix."""
    tol = Fraction(tol)
    if tol <= 0:
        raise InvalidArgument("tolerance must be positive")
    if x.is_empty:
        raise EmptyShift("the shift has no states")
    comps = irreducible_components(x)
    if not comps:
        raise NoCycle("the shift has no cycle, so its entropy is -infinity")
    los, his, its = [], [], []
    failed = False
    for c in comps:
        try:
            lo, hi, it = _perron_bracket(c, tol, max_iter)
        except DidNotConverge as err:
            failed = True
            lo, hi, it = err.bracket.lambda_lo, err.bracket.lambda_hi, max_iter
        los.append(lo)
        his.append(hi)
        its.append(it)
    bracket = EntropyBracket(max(los), max(his), max(its))
    if failed:
        raise DidNotConverge(max_iter, bracket)
    return bracket


@dataclass(frozen=True)
class Stabilized:
    degree: int
    since_l: int
    ratios: tuple = field(default=(), compare=False)


@dataclass(frozen=True)
class NotStabilized:
    ratios: tuple


def word_counts(x: Sft, l_max: int) -> list:
    """[|W(X,1)|, ..., |W(X,l_max)|] by repeated right multiplication."""
    _require_words(x)
    succ = x.successors
    u = [1] * x.n
    counts = [sum(u)]
    for _ in range(l_max - 1):
        u = [sum(u[j] for j in succ[i]) for i in range(x.n)]
        counts.append(sum(u))
    return counts


def limit_degree(x: Sft, l_max: int = 12, window: int = 3):
    """Stabilized(d, l0) if the last ``window`` count ratios all equal the integer d.

    l0 is the first length from which every ratio |W(l+1)|/|W(l)| equals d.
    Nothing is extrapolated: if the tail is not constant and integral the
    ratios are returned as NotStabilized.
    """
    if window < 2:
        raise InvalidArgument("window must be at least 2")
    if x.is_empty:
        raise EmptyShift("the shift has no states")
    if l_max < window + 1:
        raise LMaxTooSmall(f"max length {l_max} is below window + 1 = {window + 1}")
    counts = word_counts(x, l_max)
    ratios = tuple(Fraction(counts[i + 1], counts[i]) for i in range(l_max - 1))
    tail = ratios[-window:]
    d = tail[0]
    if all(r == d for r in tail) and d.denominator == 1:
        since = len(ratios)
        while since > 1 and ratios[since - 2] == d:
            since -= 1
        return Stabilized(int(d), since, ratios)
    return NotStabilized(ratios)


def is_out_degree_regular(x: Sft) -> bool:
    return x.n > 0 and len({x.out_degree(i) for i in range(x.n)}) == 1
