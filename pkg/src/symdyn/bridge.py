"""Order-1 separable difference systems over F_q and their shifts of finite type.

A system is a vertex polynomial g(x) and edge polynomials f_j(x, y), where y
stands for the shifted variable.  Over the algebraic closure with the identity
on F_q, its solutions are the sequences of roots of g whose consecutive pairs
satisfy every f_j: the infinite paths of a 0/1 shift on the roots.  The q-power
Frobenius permutes the roots and commutes with the shift.  Counting solutions
over (closure, Frob^n) is then the twisted trace tr(T F^n).
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

from . import ff
from .decomp import sigma_component_indices
from .errors import (
    AlphabetTooLarge,
    EmptyShift,
    FieldMismatch,
    FrobeniusNotAutomorphism,
    InvalidArgument,
    NoCycle,
    NotAutomorphism,
    NotSeparable,
)
from .ff import BiPoly, FqContext, Poly
from .sft import Sft, from_matrix, prune
from .spectral import DEFAULT_TOL, Stabilized, entropy_bounds, is_out_degree_regular, limit_degree
from .zeta import TwistData, make_twist, twisted_count, twisted_log_derivative, twisted_zeta_series


@dataclass(frozen=True)
class DifferenceSystem:
    ctx: FqContext
    g: Poly
    constraints: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "constraints", tuple(self.constraints))
        if self.g.ctx != self.ctx or any(f.ctx != self.ctx for f in self.constraints):
            raise FieldMismatch("system polynomials must live over the base field")
        if self.g.degree < 1:
            raise InvalidArgument("vertex polynomial must be nonconstant")

    def to_text(self) -> str:
        """Serialize in the ``.dsys`` format."""
        lines = [f"p {self.ctx.p}", f"e {self.ctx.e}"]
        if self.ctx.e > 1:
            lines.append(f"modulus {ff.format_int_poly(self.ctx.modulus, 't')}")
        lines.append(f"vertex {self.g}")
        lines.extend(f"edge {f}" for f in self.constraints)
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class SftWithFrobenius:
    sft: Sft
    alphabet: tuple
    twist: TwistData
    m: int

    @property
    def field(self) -> FqContext:
        return self.alphabet[0].ctx if self.alphabet else None


def _splitting(sys: DifferenceSystem, m_max, scan_limit):
    return _split_poly(sys.g, m_max, scan_limit)


@functools.lru_cache(maxsize=256)
def _split_poly(g: Poly, m_max, scan_limit):
    if not ff.is_separable(g):
        raise NotSeparable(f"vertex polynomial {g} is not separable")
    m = ff.splitting_degree(g, m_max, scan_limit)
    ext, emb = ff.extend_field(g.ctx, m, scan_limit)
    return m, ext, emb


def build_sft(sys: DifferenceSystem, m_max: int | None = None,
              scan_limit: int | None = None) -> SftWithFrobenius:
    """The (unpruned) shift on the roots of g, with the q-Frobenius as its twist."""
    return _build_sft(sys, m_max, scan_limit)


@functools.lru_cache(maxsize=256)
def _build_sft(sys, m_max, scan_limit):
    m, ext, emb = _splitting(sys, m_max, scan_limit)
    alphabet = tuple(ff.roots_in(sys.g, m, scan_limit))
    fs = [f.evaluator(emb, ext) for f in sys.constraints]
    n = len(alphabet)
    rows = [[1 if all(not f(a, b) for f in fs) else 0 for b in alphabet] for a in alphabet]
    x = from_matrix([str(a) for a in alphabet], rows)
    pos = {a: i for i, a in enumerate(alphabet)}
    q = sys.ctx.q
    try:
        perm = [pos[ff.frobenius(a, 1, q)] for a in alphabet]
    except KeyError:
        raise FrobeniusNotAutomorphism("Frobenius does not preserve the root set") from None
    try:
        tw = make_twist(x, perm)
    except NotAutomorphism as err:
        raise FrobeniusNotAutomorphism(f"Frobenius breaks the edge relation: {err}") from None
    assert len(alphabet) == n == sys.g.degree
    return SftWithFrobenius(x, alphabet, tw, m)


def point_count_direct(sys: DifferenceSystem, n: int, m_max: int | None = None,
                       scan_limit: int | None = None) -> int:
    """Solutions over (closure of F_q, Frob^n) by scanning the splitting field.

    A solution is determined by x = alpha with g(alpha) = 0 and sigma(alpha) =
    alpha^(q^n); it must satisfy f_j(alpha, alpha^(q^n)) = 0 for every j.
    """
    if n < 1:
        raise InvalidArgument("n must be positive")
    _, ext, emb = _splitting(sys, m_max, scan_limit)
    g = sys.g.map_coeffs(emb, ext)
    fs = [f.evaluator(emb, ext) for f in sys.constraints]
    q = sys.ctx.q
    count = 0
    for alpha in ext.elements():
        if g(alpha):
            continue
        beta = ff.frobenius(alpha, n, q)
        if all(not f(alpha, beta) for f in fs):
            count += 1
    return count


def point_count_matrix(sys: DifferenceSystem, n: int, m_max: int | None = None,
                       scan_limit: int | None = None) -> int:
    return twisted_count(build_sft(sys, m_max, scan_limit).twist, n)


def difference_zeta(sys: DifferenceSystem, m: int, m_max: int | None = None,
                    scan_limit: int | None = None):
    """(series of exp(sum N_n t^n / n) to order m, its rational log-derivative)."""
    tw = build_sft(sys, m_max, scan_limit).twist
    return twisted_zeta_series(tw, m), twisted_log_derivative(tw)


def _pruned(sys, m_max, scan_limit) -> Sft:
    return prune(build_sft(sys, m_max, scan_limit).sft)


def system_entropy(sys: DifferenceSystem, tol=DEFAULT_TOL, m_max: int | None = None,
                   scan_limit: int | None = None, max_iter: int = 1000):
    x = _pruned(sys, m_max, scan_limit)
    if x.is_empty:
        raise NoCycle("the system has no infinite solutions")
    return entropy_bounds(x, tol, max_iter)


def frobenius_component_orbits(sys: DifferenceSystem, m_max: int | None = None,
                               scan_limit: int | None = None):
    """Sigma-components of the pruned shift and the Frobenius orbits on them.

    Returns (pruned shift, components as index tuples, orbits as sorted tuples
    of component indices).
    """
    built = build_sft(sys, m_max, scan_limit)
    ess, comps = sigma_component_indices(built.sft)
    owner = {}
    for k, c in enumerate(comps):
        for i in c:
            owner[ess.states[i]] = k
    full = built.sft.states
    image = {}
    for k, c in enumerate(comps):
        targets = {owner.get(full[built.twist.perm[full.index(ess.states[i])]]) for i in c}
        if len(targets) != 1 or None in targets:
            raise AssertionError("Frobenius does not map sigma-components onto components")
        image[k] = targets.pop()
    if sorted(image.values()) != list(range(len(comps))):
        raise AssertionError("Frobenius does not permute the sigma-components")
    orbits, seen = [], set()
    for k in range(len(comps)):
        if k in seen:
            continue
        orbit, j = [], k
        while j not in seen:
            seen.add(j)
            orbit.append(j)
            j = image[j]
        orbits.append(tuple(sorted(orbit)))
    return ess, comps, orbits


def spec_sigma_component_count(sys: DifferenceSystem, m_max: int | None = None,
                               scan_limit: int | None = None) -> int:
    """Number of Frobenius orbits of sigma-components of the pruned shift."""
    return len(frobenius_component_orbits(sys, m_max, scan_limit)[2])


@functools.lru_cache(maxsize=64)
def _lagrange(ctx: FqContext, n: int):
    """g = prod (x - a_i) and the Lagrange basis coefficient rows (padded to n)."""
    pts = [ctx.element_at(i) for i in range(n)]
    X = Poly.x(ctx)
    g = Poly(ctx, [1])
    for a in pts:
        g = g * (X - a)
    basis = []
    for i, a in enumerate(pts):
        num, den = Poly(ctx, [1]), ctx.one
        for j, b in enumerate(pts):
            if j != i:
                num = num * (X - b)
                den = den * (a - b)
        e = num * den.inverse()
        basis.append(tuple(e.coeffs) + (ctx.zero,) * (n - len(e.coeffs)))
    return g, tuple(basis)


def _dot(values, ctx):
    acc = ctx.zero
    for v in values:
        acc = acc + v
    return acc


def sft_to_system(x: Sft, ctx: FqContext) -> DifferenceSystem:
    """A system whose shift is x, on the first |states| elements of F_q.

    g = prod (x - a_i) and f = sum over non-edges (i, j) of e_i(x) e_j(y) with
    e_i the Lagrange basis at the a_i.  So f(a_i, a_j) is 0 on edges and 1 off
    them.
    """
    n = x.n
    if n == 0:
        raise EmptyShift("cannot present the empty shift")
    if ctx.q < n:
        raise AlphabetTooLarge(f"{n} states do not fit into F_{ctx.q}")
    g, basis = _lagrange(ctx, n)
    # coefficient of x^a y^b in f is sum over non-edges (i, j) of E[i][a] E[j][b]
    non = [[not x.transition[i][j] for j in range(n)] for i in range(n)]
    half = [[_dot([basis[j][b] for j in range(n) if non[i][j]], ctx) for b in range(n)]
            for i in range(n)]
    terms = {}
    for a in range(n):
        for b in range(n):
            terms[(a, b)] = _dot([basis[i][a] * half[i][b] for i in range(n)], ctx)
    f = BiPoly(ctx, terms)
    return DifferenceSystem(ctx, g, (f,))


def limit_degree_system(sys: DifferenceSystem, l_max: int = 12, window: int = 3,
                        m_max: int | None = None, scan_limit: int | None = None):
    """Limit degree of the pruned shift.

    When the ratio has stabilized at d on an out-degree-regular shift, the
    entropy bracket is checked to contain d.
    """
    x = _pruned(sys, m_max, scan_limit)
    result = limit_degree(x, l_max, window)
    if isinstance(result, Stabilized) and is_out_degree_regular(x):
        bracket = entropy_bounds(x)
        if not bracket.contains(result.degree):
            raise AssertionError(
                f"limit degree {result.degree} outside entropy bracket "
                f"[{bracket.lambda_lo}, {bracket.lambda_hi}]")
    return result
