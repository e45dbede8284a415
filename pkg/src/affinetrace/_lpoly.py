"""
Sparse Laurent polynomials in z_1..z_N for the shuffle algebra engine.

A polynomial is a dict ``{key: coeff}``.  The first N entries of a key are
z-exponents; the rest depend on the scalar context:

* `EXACT` keeps q1, q2 symbolic: keys end with ``(a, b)`` for q1^a q2^b and
  coefficients are ints.
* `Probe` substitutes fixed rationals for q1, q2: keys are z-exponents only
  and coefficients are Fractions.

Everything here is pure and works identically in both contexts.
"""

from fractions import Fraction
from itertools import combinations, permutations
from operator import add as _add

from .errors import InexactDivision


class _Exact:
    extra = 2
    name = "exact"

    def scalar(self, a: int, b: int, sign: int = 1):
        """Monomial ±q1^a q2^b as (key suffix, coefficient)."""
        return (a, b), sign

    def zero_suffix(self):
        return (0, 0)


class Probe:
    """Numeric substitution q1 = x1, q2 = x2 with exact rationals."""

    extra = 0
    name = "probe"

    def __init__(self, x1: Fraction, x2: Fraction):
        self.x1 = Fraction(x1)
        self.x2 = Fraction(x2)

    def scalar(self, a: int, b: int, sign: int = 1):
        return (), sign * self.x1 ** a * self.x2 ** b

    def zero_suffix(self):
        return ()

    def __repr__(self):
        return f"Probe(q1={self.x1}, q2={self.x2})"


EXACT = _Exact()


def add_into(acc: dict, p: dict, scale=1):
    for k, c in p.items():
        v = acc.get(k, 0) + c * scale
        if v:
            acc[k] = v
        else:
            acc.pop(k, None)


def add(p: dict, r: dict, scale=1) -> dict:
    out = dict(p)
    add_into(out, r, scale)
    return out


def mul(p: dict, r: dict) -> dict:
    out: dict = {}
    for k1, c1 in p.items():
        for k2, c2 in r.items():
            k = tuple(map(_add, k1, k2))
            v = out.get(k, 0) + c1 * c2
            if v:
                out[k] = v
            else:
                del out[k]
    return out


def monomial(N: int, exps, ctx, a=0, b=0, coeff=1) -> dict:
    suffix, c = ctx.scalar(a, b, 1)
    return {tuple(exps) + suffix: c * coeff}


def one(N: int, ctx) -> dict:
    return monomial(N, (0,) * N, ctx)


def shift(p: dict, delta: tuple, scale=1) -> dict:
    if scale == 1:
        return {tuple(map(_add, k, delta)): c for k, c in p.items()}
    return {tuple(map(_add, k, delta)): c * scale for k, c in p.items()}


def scale_by_monomial(p: dict, N: int, ctx, zexps, a: int, b: int, sign: int = 1) -> dict:
    suffix, c = ctx.scalar(a, b, sign)
    return shift(p, tuple(zexps) + suffix, c)


def mul_binomial(p: dict, N: int, ctx, i: int, j: int, a: int, b: int) -> dict:
    """p * (1 - q1^a q2^b z_i / z_j), 0-based indices."""
    delta = [0] * N
    delta[i] += 1
    delta[j] -= 1
    suffix, c = ctx.scalar(a, b, 1)
    out = dict(p)
    add_into(out, shift(p, tuple(delta) + suffix), -c)
    return out


def mul_qbinomial(p: dict, N: int, ctx, a: int, b: int, sign: int = -1) -> dict:
    """p * (1 + sign * q1^a q2^b)."""
    suffix, c = ctx.scalar(a, b, 1)
    out = dict(p)
    add_into(out, shift(p, (0,) * N + suffix), sign * c)
    return out


def mul_difference(p: dict, N: int, i: int, j: int) -> dict:
    """p * (z_i - z_j)."""
    if not p:
        return {}
    L = len(next(iter(p)))
    ei = tuple(1 if t == i else 0 for t in range(L))
    ej = tuple(1 if t == j else 0 for t in range(L))
    out = shift(p, ei)
    add_into(out, shift(p, ej), -1)
    return out


def permute(p: dict, N: int, sigma) -> dict:
    """Substitute z_i -> z_{sigma(i)} (0-based)."""
    out: dict = {}
    for k, c in p.items():
        nk = [0] * N
        for i in range(N):
            nk[sigma[i]] = k[i]
        key = tuple(nk) + k[N:]
        v = out.get(key, 0) + c
        if v:
            out[key] = v
        else:
            out.pop(key, None)
    return out


def sign_of(sigma) -> int:
    s = 1
    for i, j in combinations(range(len(sigma)), 2):
        if sigma[i] > sigma[j]:
            s = -s
    return s


def all_perms(N: int):
    return [(p, sign_of(p)) for p in permutations(range(N))]


def shuffles(n: int, m: int):
    """Minimal coset representatives of S_n x S_m in S_{n+m}, with signs."""
    N = n + m
    out = []
    for block in combinations(range(N), n):
        rest = [t for t in range(N) if t not in block]
        sigma = tuple(block) + tuple(rest)
        out.append((sigma, sign_of(sigma)))
    return out


def divide_linear(p: dict, N: int, ctx, x: int, y: int, a: int = 0, b: int = 0) -> dict:
    """
    Exact quotient of p by (z_x - q1^a q2^b z_y).

    Terms are grouped into lines on which the divisor acts as a two-term
    recurrence; a nonzero remainder raises InexactDivision.
    """
    suffix, mval = ctx.scalar(a, b, 1)
    exact = ctx.extra > 0
    lines: dict = {}
    for k, c in p.items():
        ex, ey = k[x], k[y]
        rest = list(k)
        rest[x] = 0
        rest[y] = ex + ey
        if exact:
            rest[N] += ex * a
            rest[N + 1] += ex * b
        lines.setdefault(tuple(rest), {})[ex] = c
    out: dict = {}
    for rest, line in lines.items():
        s = rest[y]
        kmin, kmax = min(line), max(line)
        g = 0
        for k in range(kmax, kmin, -1):
            ck = line.get(k, 0)
            g = ck + (g if exact else mval * g)
            if g:
                key = list(rest)
                key[x] = k - 1
                key[y] = s - k
                if exact:
                    key[N] -= k * a
                    key[N + 1] -= k * b
                out[tuple(key)] = g
        remainder = line[kmin] + (g if exact else mval * g)
        if remainder:
            raise InexactDivision(
                f"remainder {remainder} dividing by z{x + 1} - q1^{a} q2^{b} z{y + 1}"
            )
    return out


def divide_vandermonde(p: dict, N: int, ctx) -> dict:
    """Exact quotient by prod_{i<j} (z_i - z_j)."""
    for i, j in combinations(range(N), 2):
        p = divide_linear(p, N, ctx, i, j)
    return p


def antisymmetrize(p: dict, N: int, perms) -> dict:
    out: dict = {}
    for sigma, sgn in perms:
        add_into(out, permute(p, N, sigma), sgn)
    return out


def is_symmetric(p: dict, N: int) -> bool:
    if N < 2:
        return True
    gens = [(1, 0) + tuple(range(2, N)), tuple(range(1, N)) + (0,)]
    return all(permute(p, N, g) == p for g in gens)


def to_fraction_dict(p: dict) -> dict:
    return {k: Fraction(c) for k, c in p.items()}
