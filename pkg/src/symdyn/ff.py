"""Finite fields F_{p^e}, polynomials over them, and exhaustive root finding.

Elements are coefficient vectors in the generator ``t`` modulo a monic
irreducible polynomial.  The modulus chosen by :func:`build_field` is the
smallest irreducible one when monic polynomials are ordered by their
coefficient tuples, constant term first.  Everything here is desk scale: root
finding scans the whole field, bounded by a configurable element count.
"""

from __future__ import annotations

import functools
import itertools
import math
import random
import re
from dataclasses import dataclass

from .errors import (
    DegreeZero,
    FieldMismatch,
    InputSyntaxError,
    InvalidArgument,
    NotPrime,
    NotSeparable,
    NotSplitWithinBound,
    ScanLimitExceeded,
    ZeroPolynomial,
)

DEFAULT_SCAN_LIMIT = 2**20


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    return all(n % d for d in range(3, math.isqrt(n) + 1, 2))


def _check_scan(size: int, scan_limit: int | None) -> None:
    limit = DEFAULT_SCAN_LIMIT if scan_limit is None else scan_limit
    if size > limit:
        raise ScanLimitExceeded(f"field of size {size} exceeds scan limit {limit}")


# ---------------------------------------------------------------------------
# polynomials over Z/p as int lists, low-to-high

def _strip(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def _pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _strip(out)


def _psub(a, b, p):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _strip([(x - y) % p for x, y in zip(a, b)])


def _pdivmod(a, b, p):
    a, b = _strip(a), _strip(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv = pow(b[-1], p - 2, p)
    q = [0] * max(len(a) - len(b) + 1, 0)
    r = list(a)
    while len(r) >= len(b):
        c = r[-1] * inv % p
        s = len(r) - len(b)
        q[s] = c
        for i, y in enumerate(b):
            r[s + i] = (r[s + i] - c * y) % p
        r = _strip(r)
    return _strip(q), r


def _pgcd(a, b, p):
    a, b = _strip(a), _strip(b)
    while b:
        a, b = b, _pdivmod(a, b, p)[1]
    if a:
        inv = pow(a[-1], p - 2, p)
        a = [x * inv % p for x in a]
    return a


def _ppowmod(base, n, mod, p):
    result = [1]
    base = _pdivmod(base, mod, p)[1]
    while n:
        if n & 1:
            result = _pdivmod(_pmul(result, base, p), mod, p)[1]
        base = _pdivmod(_pmul(base, base, p), mod, p)[1]
        n >>= 1
    return result


def _prime_factors(n):
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def is_irreducible_mod_p(f, p: int) -> bool:
    """Rabin's test for a monic polynomial given as low-to-high ints mod p."""
    f = _strip(f)
    n = len(f) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    x = [0, 1]
    if _psub(_ppowmod(x, p**n, f, p), x, p):
        return False
    for r in _prime_factors(n):
        h = _psub(_ppowmod(x, p ** (n // r), f, p), x, p)
        if len(_pgcd(f, h, p)) != 1:
            return False
    return True


def monic_polys(p: int, degree: int):
    """All monic polynomials of a degree, ordered by coefficient tuple (constant first)."""
    for low in itertools.product(range(p), repeat=degree):
        yield list(low) + [1]


@functools.lru_cache(maxsize=None)
def _smallest_irreducible(p, e):
    if e == 1:
        return (0, 1)
    for f in monic_polys(p, e):
        if f[0] != 0 and is_irreducible_mod_p(f, p):
            return tuple(f)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


# ---------------------------------------------------------------------------
# fields

@dataclass(frozen=True)
class FqContext:
    """The field (Z/p)[t]/(modulus); ``modulus`` is low-to-high and monic of degree e."""

    p: int
    e: int
    modulus: tuple

    @property
    def q(self) -> int:
        return self.p**self.e

    def __call__(self, value) -> "FieldElement":
        """Coerce an int (reduced mod p) or a coefficient sequence into the field."""
        if isinstance(value, FieldElement):
            if value.ctx != self:
                raise FieldMismatch("element belongs to a different field")
            return value
        if isinstance(value, int):
            return FieldElement(self, (value % self.p,) + (0,) * (self.e - 1))
        coeffs = [int(c) % self.p for c in value]
        if len(coeffs) > self.e:
            coeffs = _pdivmod(coeffs, self.modulus, self.p)[1]
        coeffs = list(coeffs) + [0] * (self.e - len(coeffs))
        return FieldElement(self, tuple(coeffs))

    @functools.cached_property
    def zero(self) -> "FieldElement":
        return self(0)

    @functools.cached_property
    def one(self) -> "FieldElement":
        return self(1)

    @property
    def gen(self) -> "FieldElement":
        """The class of t."""
        return self([0, 1])

    def elements(self):
        """All elements in canonical order (lexicographic on coefficient tuples)."""
        for coeffs in itertools.product(range(self.p), repeat=self.e):
            yield FieldElement(self, coeffs)

    def index(self, a: "FieldElement") -> int:
        """Position of ``a`` in :meth:`elements`."""
        n = 0
        for c in a.coeffs:
            n = n * self.p + c
        return n

    def element_at(self, i: int) -> "FieldElement":
        coeffs = []
        for _ in range(self.e):
            i, c = divmod(i, self.p)
            coeffs.append(c)
        return FieldElement(self, tuple(reversed(coeffs)))

    def __str__(self):
        if self.e == 1:
            return f"F_{self.p}"
        return f"F_{self.q} = F_{self.p}[t]/({format_int_poly(self.modulus, 't')})"


def build_field(p: int, e: int, scan_limit: int | None = None) -> FqContext:
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if e < 1:
        raise DegreeZero("extension degree must be at least 1")
    _check_scan(p**e, scan_limit)
    return _field(p, e)


@functools.lru_cache(maxsize=None)
def _field(p, e):
    return FqContext(p, e, _smallest_irreducible(p, e))


def field_with_modulus(p: int, modulus) -> FqContext:
    """A field with a user-chosen monic irreducible modulus (low-to-high ints)."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    f = _strip([int(c) % p for c in modulus])
    if len(f) < 2:
        raise DegreeZero("modulus must have positive degree")
    if f[-1] != 1:
        raise InvalidArgument("modulus must be monic")
    if not is_irreducible_mod_p(f, p):
        raise InvalidArgument(f"modulus {format_int_poly(f, 't')} is reducible mod {p}")
    return FqContext(p, len(f) - 1, tuple(f))


class FieldElement:
    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: FqContext, coeffs):
        self.ctx = ctx
        self.coeffs = tuple(coeffs)

    def _other(self, other):
        if isinstance(other, FieldElement):
            if other.ctx is not self.ctx and other.ctx != self.ctx:
                raise FieldMismatch(f"cannot combine elements of {self.ctx} and {other.ctx}")
            return other
        if isinstance(other, int):
            return self.ctx(other)
        return NotImplemented

    def __add__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        p = self.ctx.p
        return FieldElement(self.ctx, ((a + b) % p for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        p = self.ctx.p
        return FieldElement(self.ctx, ((-a) % p for a in self.coeffs))

    def __sub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        ctx = self.ctx
        p = ctx.p
        if ctx.e == 1:
            return FieldElement(ctx, ((self.coeffs[0] * other.coeffs[0]) % p,))
        prod = [0] * (2 * ctx.e - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    prod[i + j] += a * b
        mod = ctx.modulus
        e = ctx.e
        # modulus is monic: t^e = -(m_0 + ... + m_{e-1} t^{e-1})
        for k in range(len(prod) - 1, e - 1, -1):
            c = prod[k] % p
            if c:
                for i in range(e):
                    prod[k - e + i] -= c * mod[i]
        return FieldElement(ctx, (c % p for c in prod[:e]))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.ctx.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self):
        if not self:
            raise ZeroDivisionError("zero has no inverse")
        return self ** (self.ctx.q - 2)

    def __truediv__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __bool__(self):
        return any(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, int):
            return self == self.ctx(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.coeffs == other.coeffs and self.ctx == other.ctx

    def __hash__(self):
        return hash((self.ctx.p, self.ctx.modulus, self.coeffs))

    def sort_key(self):
        return self.coeffs

    def __repr__(self):
        return f"FieldElement({self}, p={self.ctx.p}, e={self.ctx.e})"

    def __str__(self):
        return format_int_poly(self.coeffs, "t")


def format_int_poly(coeffs, var: str) -> str:
    """Render low-to-high integer coefficients as e.g. ``t^2+2*t+1``."""
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if not c:
            continue
        if i == 0:
            terms.append(str(c))
            continue
        mono = var if i == 1 else f"{var}^{i}"
        terms.append(mono if c == 1 else f"{c}*{mono}")
    return "+".join(terms) if terms else "0"


def frobenius(a: FieldElement, k: int, q: int | None = None) -> FieldElement:
    """Return a^(q^k); q defaults to the characteristic.

    Nonzero elements satisfy a^(|F|-1) = 1, so the exponent is reduced first.
    """
    if k < 0:
        raise InvalidArgument("Frobenius power must be nonnegative")
    base = a.ctx.p if q is None else q
    if not a:
        return a
    return a ** pow(base, k, a.ctx.q - 1)


# ---------------------------------------------------------------------------
# univariate polynomials over F_q

class Poly:
    """Polynomial in ``x`` over a field context; coefficients low-to-high."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: FqContext, coeffs=()):
        cs = [ctx(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.ctx = ctx
        self.coeffs = tuple(cs)

    @classmethod
    def x(cls, ctx):
        return cls(ctx, [0, 1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def lead(self):
        return self.coeffs[-1] if self.coeffs else self.ctx.zero

    def _other(self, other):
        if isinstance(other, Poly):
            if other.ctx != self.ctx:
                raise FieldMismatch("polynomials over different fields")
            return other
        if isinstance(other, (int, FieldElement)):
            return Poly(self.ctx, [other])
        return NotImplemented

    def __add__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        n = max(len(self.coeffs), len(other.coeffs))
        z = self.ctx.zero
        a = self.coeffs + (z,) * (n - len(self.coeffs))
        b = other.coeffs + (z,) * (n - len(other.coeffs))
        return Poly(self.ctx, [u + v for u, v in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.ctx, [-c for c in self.coeffs])

    def __sub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        if self.is_zero() or other.is_zero():
            return Poly(self.ctx)
        out = [self.ctx.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] = out[i + j] + a * b
        return Poly(self.ctx, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = Poly(self.ctx, [1])
        for _ in range(n):
            result = result * self
        return result

    def __divmod__(self, other):
        other = self._other(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        inv = other.lead().inverse()
        rem = list(self.coeffs)
        quo = [self.ctx.zero] * max(len(rem) - len(other.coeffs) + 1, 0)
        while len(rem) >= len(other.coeffs) and rem:
            c = rem[-1] * inv
            s = len(rem) - len(other.coeffs)
            quo[s] = c
            for i, b in enumerate(other.coeffs):
                rem[s + i] = rem[s + i] - c * b
            while rem and not rem[-1]:
                rem.pop()
        return Poly(self.ctx, quo), Poly(self.ctx, rem)

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __eq__(self, other):
        if isinstance(other, (int, FieldElement)):
            other = Poly(self.ctx, [other])
        if not isinstance(other, Poly):
            return NotImplemented
        return self.ctx == other.ctx and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(("Poly", self.coeffs))

    def monic(self):
        if self.is_zero():
            return self
        inv = self.lead().inverse()
        return Poly(self.ctx, [c * inv for c in self.coeffs])

    def derivative(self):
        return Poly(self.ctx, [c * i for i, c in enumerate(self.coeffs)][1:])

    def __call__(self, x: FieldElement) -> FieldElement:
        acc = x.ctx.zero
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def map_coeffs(self, embed, target: FqContext) -> "Poly":
        return Poly(target, [embed(c) for c in self.coeffs])

    def __repr__(self):
        return f"Poly({self})"

    def __str__(self):
        return format_poly({(i, 0): c for i, c in enumerate(self.coeffs)})


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd (the zero polynomial if both are zero)."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def is_separable(g: Poly) -> bool:
    if g.is_zero():
        raise ZeroPolynomial("separability of the zero polynomial is undefined")
    return poly_gcd(g, g.derivative()).degree == 0


# ---------------------------------------------------------------------------
# bivariate polynomials f(x, y), y standing for the shifted variable

class BiPoly:
    """Polynomial in ``x`` and ``y``; ``terms`` maps (x-degree, y-degree) to nonzero coefficients."""

    __slots__ = ("ctx", "_terms")

    def __init__(self, ctx: FqContext, terms=None):
        self.ctx = ctx
        clean = {}
        for key, c in (terms or {}).items():
            c = ctx(c)
            if c:
                clean[(int(key[0]), int(key[1]))] = c
        self._terms = tuple(sorted(clean.items()))

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    @classmethod
    def from_product(cls, px: Poly, py: Poly) -> "BiPoly":
        """The product px(x) * py(y)."""
        terms = {}
        for i, a in enumerate(px.coeffs):
            for j, b in enumerate(py.coeffs):
                terms[(i, j)] = a * b
        return cls(px.ctx, terms)

    def is_zero(self):
        return not self._terms

    def __add__(self, other):
        if other.ctx != self.ctx:
            raise FieldMismatch("polynomials over different fields")
        terms = self.terms
        for k, c in other._terms:
            terms[k] = terms.get(k, self.ctx.zero) + c
        return BiPoly(self.ctx, terms)

    def __mul__(self, other):
        if other.ctx != self.ctx:
            raise FieldMismatch("polynomials over different fields")
        terms = {}
        for (i, j), a in self._terms:
            for (k, l), b in other._terms:
                key = (i + k, j + l)
                terms[key] = terms.get(key, self.ctx.zero) + a * b
        return BiPoly(self.ctx, terms)

    def __call__(self, x: FieldElement, y: FieldElement) -> FieldElement:
        acc = x.ctx.zero
        for (i, j), c in self._terms:
            acc = acc + c * x**i * y**j
        return acc

    def evaluator(self, embed, target: FqContext):
        """A fast evaluator over ``target`` with coefficients pushed through ``embed``."""
        terms = [(i, j, embed(c)) for (i, j), c in self._terms]
        dx = max((i for i, _, _ in terms), default=0)
        dy = max((j for _, j, _ in terms), default=0)

        def powers(a, d):
            out = [target.one]
            for _ in range(d):
                out.append(out[-1] * a)
            return out

        def f(x, y):
            px, py = powers(x, dx), powers(y, dy)
            acc = target.zero
            for i, j, c in terms:
                acc = acc + c * px[i] * py[j]
            return acc

        return f

    def __eq__(self, other):
        if not isinstance(other, BiPoly):
            return NotImplemented
        return self.ctx == other.ctx and self._terms == other._terms

    def __hash__(self):
        return hash(("BiPoly", self._terms))

    def __repr__(self):
        return f"BiPoly({self})"

    def __str__(self):
        return format_poly(self.terms)


def _coeff_str(c: FieldElement) -> tuple[str, bool]:
    s = str(c)
    compound = "+" in s or ("*" in s and c.ctx.e > 1)
    return s, compound


def format_poly(terms: dict) -> str:
    """Render {(i, j): coeff} in the polynomial text syntax, highest total degree first."""
    parts = []
    for (i, j) in sorted(terms, key=lambda k: (-(k[0] + k[1]), -k[0], -k[1])):
        c = terms[(i, j)]
        if not c:
            continue
        mono = []
        if i:
            mono.append("x" if i == 1 else f"x^{i}")
        if j:
            mono.append("y" if j == 1 else f"y^{j}")
        cs, compound = _coeff_str(c)
        if not mono:
            parts.append(f"({cs})" if compound else cs)
        elif cs == "1":
            parts.append("*".join(mono))
        else:
            parts.append(("(%s)" % cs if compound else cs) + "*" + "*".join(mono))
    return "+".join(parts) if parts else "0"


# ---------------------------------------------------------------------------
# extensions and roots

class Embedding:
    """Field homomorphism F_q -> F_{q^m} sending the base generator to ``image``."""

    def __init__(self, base: FqContext, target: FqContext, image: FieldElement):
        self.base = base
        self.target = target
        self.image = image
        powers = [target.one]
        for _ in range(base.e - 1):
            powers.append(powers[-1] * image)
        self._powers = powers

    def __call__(self, a: FieldElement) -> FieldElement:
        if a.ctx != self.base:
            raise FieldMismatch("element is not in the embedding's base field")
        acc = self.target.zero
        for c, pw in zip(a.coeffs, self._powers):
            if c:
                acc = acc + pw * c
        return acc


_HOM_EXHAUSTIVE = 4096


def _verify_embedding(emb: Embedding) -> None:
    base = emb.base
    if base.q**2 <= _HOM_EXHAUSTIVE:
        pairs = itertools.product(list(base.elements()), repeat=2)
    else:
        rng = random.Random(base.q)
        pairs = ((base.element_at(rng.randrange(base.q)), base.element_at(rng.randrange(base.q)))
                 for _ in range(2000))
    if emb(base.one) != emb.target.one:
        raise AssertionError("embedding is not unital")
    for a, b in pairs:
        if emb(a + b) != emb(a) + emb(b) or emb(a * b) != emb(a) * emb(b):
            raise AssertionError(f"embedding fails to be a homomorphism at ({a}, {b})")


@functools.lru_cache(maxsize=None)
def _extension(ctx, m):
    ext = _field(ctx.p, ctx.e * m)
    if m == 1 and ext == ctx:
        emb = Embedding(ctx, ext, ctx.gen)
    else:
        modulus = ctx.modulus
        image = None
        for a in ext.elements():
            acc = ext.zero
            for c in reversed(modulus):
                acc = acc * a + c
            if not acc:
                image = a
                break
        if image is None:  # pragma: no cover - impossible for a genuine extension
            raise AssertionError("base modulus has no root in the extension")
        emb = Embedding(ctx, ext, image)
    _verify_embedding(emb)
    return ext, emb


def extend_field(ctx: FqContext, m: int, scan_limit: int | None = None):
    """Return (F_{q^m}, embedding F_q -> F_{q^m})."""
    if m < 1:
        raise DegreeZero("extension degree must be at least 1")
    _check_scan(ctx.p ** (ctx.e * m), scan_limit)
    return _extension(ctx, m)


def roots_in(g: Poly, m: int, scan_limit: int | None = None) -> list:
    """All roots of g in F_{q^m}, in canonical element order."""
    if g.is_zero():
        raise ZeroPolynomial("every element is a root of the zero polynomial")
    ext, emb = extend_field(g.ctx, m, scan_limit)
    h = g.map_coeffs(emb, ext)
    return [a for a in ext.elements() if not h(a)]


def max_extension_degree(ctx: FqContext, scan_limit: int | None = None) -> int:
    limit = DEFAULT_SCAN_LIMIT if scan_limit is None else scan_limit
    m = 0
    while ctx.q ** (m + 1) <= limit:
        m += 1
    return m


def splitting_degree(g: Poly, m_max: int | None = None, scan_limit: int | None = None) -> int:
    """Least m with g splitting into distinct linear factors over F_{q^m}."""
    if not is_separable(g):
        raise NotSeparable(f"{g} is not separable")
    bound = max_extension_degree(g.ctx, scan_limit) if m_max is None else m_max
    for m in range(1, bound + 1):
        if len(roots_in(g, m, scan_limit)) == g.degree:
            return m
    raise NotSplitWithinBound(f"{g} does not split over F_(q^m) for m <= {bound}")


# ---------------------------------------------------------------------------
# polynomial text syntax

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|(\S))")


def _tokenize(text):
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # pragma: no cover - regex always matches non-space
            break
        if m.group(1) is not None:
            out.append(("int", int(m.group(1)), m.start(1)))
        elif m.group(2) is not None:
            out.append(("name", m.group(2), m.start(2)))
        else:
            out.append(("op", m.group(3), m.start(3)))
        pos = m.end()
    return out


class _PolyParser:
    """Recursive descent over sums, products, powers and parentheses.

    Values are dicts {(t-degree, x-degree, y-degree): int mod p}.
    """

    _VARS = {"t": 0, "x": 1, "y": 2}

    def __init__(self, text, p, allowed):
        self.toks = _tokenize(text)
        self.i = 0
        self.p = p
        self.allowed = allowed
        self.text = text

    def fail(self, msg, tok=None):
        col = tok[2] + 1 if tok else len(self.text) + 1
        raise InputSyntaxError(f"{msg} at column {col} in polynomial {self.text.strip()!r}")

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def add(self, a, b, sign=1):
        out = dict(a)
        for k, c in b.items():
            out[k] = (out.get(k, 0) + sign * c) % self.p
        return {k: c for k, c in out.items() if c}

    def mul(self, a, b):
        out = {}
        for (t1, x1, y1), c1 in a.items():
            for (t2, x2, y2), c2 in b.items():
                k = (t1 + t2, x1 + x2, y1 + y2)
                out[k] = (out.get(k, 0) + c1 * c2) % self.p
        return {k: c for k, c in out.items() if c}

    def parse(self):
        if not self.toks:
            self.fail("empty polynomial")
        value = self.expr()
        if self.peek() is not None:
            self.fail("unexpected token", self.peek())
        return value

    def expr(self):
        sign = 1
        tok = self.peek()
        if tok and tok[0] == "op" and tok[1] in "+-":
            self.take()
            sign = -1 if tok[1] == "-" else 1
        value = self.add({}, self.term(), sign)
        while True:
            tok = self.peek()
            if tok and tok[0] == "op" and tok[1] in "+-":
                self.take()
                value = self.add(value, self.term(), -1 if tok[1] == "-" else 1)
            else:
                return value

    def term(self):
        value = self.power()
        while True:
            tok = self.peek()
            if tok and tok[0] == "op" and tok[1] == "*":
                self.take()
                value = self.mul(value, self.power())
            elif tok and (tok[0] in ("int", "name") or tok[1] == "("):
                # implicit multiplication: 3x, (x-1)(x-2)
                value = self.mul(value, self.power())
            else:
                return value

    def power(self):
        base = self.atom()
        tok = self.peek()
        if tok and tok[0] == "op" and tok[1] == "^":
            self.take()
            exp = self.take()
            if exp is None or exp[0] != "int":
                self.fail("expected integer exponent", exp)
            if exp[1] > 10_000:
                self.fail("exponent too large", exp)
            result = {(0, 0, 0): 1 % self.p} if self.p > 1 else {}
            result = {k: c for k, c in result.items() if c}
            for _ in range(exp[1]):
                result = self.mul(result, base)
            return result
        return base

    def atom(self):
        tok = self.take()
        if tok is None:
            self.fail("unexpected end of polynomial")
        kind, val, _ = tok
        if kind == "int":
            c = val % self.p
            return {(0, 0, 0): c} if c else {}
        if kind == "name":
            if val not in self._VARS or val not in self.allowed:
                self.fail(f"unknown variable {val!r}", tok)
            key = [0, 0, 0]
            key[self._VARS[val]] = 1
            return {tuple(key): 1}
        if val == "(":
            inner = self.expr()
            close = self.take()
            if close is None or close[1] != ")":
                self.fail("expected ')'", close)
            return inner
        self.fail(f"unexpected {val!r}", tok)


def parse_int_poly(text: str, p: int, var: str = "t") -> list:
    """Parse a polynomial in one variable over Z/p into low-to-high ints."""
    raw = _PolyParser(text, p, {var}).parse()
    idx = _PolyParser._VARS[var]
    out = {}
    for key, c in raw.items():
        out[key[idx]] = (out.get(key[idx], 0) + c) % p
    if not out:
        return []
    coeffs = [0] * (max(out) + 1)
    for d, c in out.items():
        coeffs[d] = c
    return _strip(coeffs)


def parse_bipoly(text: str, ctx: FqContext, allow_y: bool = True) -> BiPoly:
    """Parse text in x, y and the field generator t into a :class:`BiPoly`."""
    allowed = {"t", "x", "y"} if allow_y else {"t", "x"}
    raw = _PolyParser(text, ctx.p, allowed).parse()
    gen = ctx.gen
    terms = {}
    for (a, i, j), c in raw.items():
        terms[(i, j)] = terms.get((i, j), ctx.zero) + gen**a * c
    return BiPoly(ctx, terms)


def parse_poly(text: str, ctx: FqContext) -> Poly:
    """Parse a univariate polynomial in x (field generator t allowed in coefficients)."""
    bp = parse_bipoly(text, ctx, allow_y=False)
    terms = bp.terms
    if not terms:
        return Poly(ctx)
    coeffs = [ctx.zero] * (max(i for i, _ in terms) + 1)
    for (i, _), c in terms.items():
        coeffs[i] = c
    return Poly(ctx, coeffs)
