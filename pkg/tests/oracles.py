"""Brute-force reference implementations used only by the tests.

Nothing here imports symdyn; inputs are plain lists of 0/1 rows.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

import numpy as np


# ---------------------------------------------------------------- fields

def poly_mod_p(a, b, p):
    """Remainder of a by b over F_p, coefficient lists constant first."""
    a = [c % p for c in a]
    inv = pow(b[-1], -1, p)
    while len(a) >= len(b) and any(a):
        if a[-1] == 0:
            a.pop()
            continue
        f = a[-1] * inv % p
        shift = len(a) - len(b)
        for i, c in enumerate(b):
            a[shift + i] = (a[shift + i] - f * c) % p
        a.pop()
    while a and a[-1] == 0:
        a.pop()
    return a


def irreducible_by_trial_division(f, p):
    deg = len(f) - 1
    for d in range(1, deg // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            if not poly_mod_p(f, list(tail) + [1], p):
                return False
    return True


def smallest_irreducible(p, e):
    for tail in itertools.product(range(p), repeat=e):
        f = list(tail) + [1]
        if irreducible_by_trial_division(f, p):
            return tuple(f)
    raise AssertionError


# ---------------------------------------------------------------- words

def all_words(n, l):
    return np.array(list(itertools.product(range(n), repeat=l)), dtype=np.int64).reshape(-1, l)


def brute_word_count(rows, l):
    a = np.array(rows, dtype=np.int64)
    n = len(rows)
    if n == 0:
        return 0
    w = all_words(n, l)
    ok = np.ones(len(w), dtype=bool)
    for i in range(l - 1):
        ok &= a[w[:, i], w[:, i + 1]] == 1
    return int(ok.sum())


def brute_cyclic_count(rows, n, words=None):
    """Words of length n admissible including the wrap-around pair."""
    a = np.array(rows, dtype=np.int64)
    k = len(rows)
    if k == 0:
        return 0
    w = all_words(k, n) if words is None else words
    ok = a[w[:, -1], w[:, 0]] == 1
    for i in range(n - 1):
        ok &= a[w[:, i], w[:, i + 1]] == 1
    return int(ok.sum())


# ---------------------------------------------------------------- graphs

def reachability(rows):
    n = len(rows)
    r = [[bool(rows[i][j]) for j in range(n)] for i in range(n)]
    for k in range(n):
        for i in range(n):
            if r[i][k]:
                for j in range(n):
                    if r[k][j]:
                        r[i][j] = True
    return r


def brute_classes(rows):
    """Communicating classes as a set of frozensets."""
    n = len(rows)
    r = reachability(rows)
    out = set()
    for i in range(n):
        out.add(frozenset(j for j in range(n) if j == i or (r[i][j] and r[j][i])))
    return out


def forward_alive(rows):
    """States that start an infinite path: those reaching a cycle."""
    n = len(rows)
    r = reachability(rows)
    on_cycle = [r[i][i] for i in range(n)]
    return [i for i in range(n) if on_cycle[i] or any(r[i][j] and on_cycle[j] for j in range(n))]


def weak_components(n, edges):
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for a, b in edges:
        parent[find(a)] = find(b)
    groups = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return sorted(groups.values())


def labeling_exists(n, edges, m):
    """Is there l: [n] -> Z/m with l(v) = l(u) + 1 on every edge?  Backtracking search."""
    if n == 0:
        return True
    labels = [None] * n
    labels[0] = 0
    order = list(range(1, n))

    def consistent(upto):
        for a, b in edges:
            if labels[a] is not None and labels[b] is not None:
                if (labels[a] + 1 - labels[b]) % m:
                    return False
        return True

    def go(k):
        if not consistent(k):
            return False
        if k == len(order):
            return True
        v = order[k]
        for c in range(m):
            labels[v] = c
            if go(k + 1):
                return True
        labels[v] = None
        return False

    return go(0)


def brute_strong_core_moduli(rows):
    """Maximal labeling modulus per weak component of the essential part."""
    alive = forward_alive(rows)
    idx = {s: k for k, s in enumerate(alive)}
    edges = [(idx[i], idx[j]) for i in alive for j in alive if rows[i][j]]
    out = []
    for comp in weak_components(len(alive), edges):
        local = {s: k for k, s in enumerate(comp)}
        cedges = [(local[a], local[b]) for a, b in edges if a in local]
        best = max(m for m in range(1, len(comp) + 1) if labeling_exists(len(comp), cedges, m))
        out.append((tuple(alive[s] for s in comp), best))
    return out


# ---------------------------------------------------------------- series

def series_of_reciprocal(den, m):
    """Coefficients of 1/den(t) to order m; den[0] must be nonzero."""
    c = []
    for k in range(m + 1):
        acc = Fraction(1 if k == 0 else 0)
        for i in range(1, min(k, len(den) - 1) + 1):
            acc -= den[i] * c[k - i]
        c.append(acc / den[0])
    return c


def det_fraction(mat):
    """Determinant by Gaussian elimination over the rationals."""
    a = [[Fraction(v) for v in row] for row in mat]
    n = len(a)
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        for r in range(col + 1, n):
            f = a[r][col] / a[col][col]
            for k in range(col, n):
                a[r][k] -= f * a[col][k]
    return det


def reversed_char_poly_by_interpolation(rows):
    """det(I - tA) from its values at t = 0..n, via Lagrange interpolation."""
    n = len(rows)
    pts = list(range(n + 1))
    vals = [det_fraction([[(1 if i == j else 0) - t * rows[i][j] for j in range(n)]
                          for i in range(n)]) for t in pts]
    coeffs = [Fraction(0)] * (n + 1)
    for k, tk in enumerate(pts):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, tj in enumerate(pts):
            if j == k:
                continue
            basis = [Fraction(0)] + basis
            for i in range(len(basis) - 1):
                basis[i] -= tj * basis[i + 1]
            denom *= tk - tj
        for i in range(n + 1):
            coeffs[i] += vals[k] * basis[i] / denom
    return [int(c) for c in coeffs]


# ---------------------------------------------------------------- isomorphism

def canonical_form(rows):
    """Lexicographically least relabelled matrix, for deduplication."""
    n = len(rows)
    best = None
    for perm in itertools.permutations(range(n)):
        key = tuple(rows[perm[i]][perm[j]] for i in range(n) for j in range(n))
        if best is None or key < best:
            best = key
    return best


def matrices_up_to_iso(n):
    seen = set()
    out = []
    for bits in itertools.product((0, 1), repeat=n * n):
        rows = [list(bits[i * n:(i + 1) * n]) for i in range(n)]
        key = canonical_form(rows)
        if key not in seen:
            seen.add(key)
            out.append(rows)
    return out


def all_matrices(n):
    for bits in itertools.product((0, 1), repeat=n * n):
        yield [list(bits[i * n:(i + 1) * n]) for i in range(n)]


def is_essential(rows):
    return all(any(r) for r in rows)
