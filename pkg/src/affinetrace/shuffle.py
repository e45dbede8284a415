"""
The shuffle algebra S = ⊕ S_n over Q(q1, q2).

Elements of S_n are symmetric Laurent polynomials in z_1..z_n (`SymLaurent`).
The product is

    F * G = Sym[ F(z_1..z_n) G(z_{n+1}..z_{n+m}) / (n! m!)
                 * prod_{i <= n < j} (1 - q1 z_i/z_j)(1 - q2 z_i/z_j)(1 - q1 q2 z_j/z_i)
                                     / (1 - z_i/z_j) ].

Symmetrizations are computed over the common denominator
V = prod_{i<j} (z_i - z_j): the numerator is antisymmetrized and then divided
by V exactly, one linear factor at a time.  A nonzero remainder is a bug in
the input formula and raises `InexactDivision`.
"""

from fractions import Fraction
from functools import lru_cache
from itertools import combinations
import random


from . import _lpoly as lp
from ._lpoly import EXACT, Probe
from .affine_weyl import staircase
from .errors import InexactDivision, StrandMismatch
from .parsing import Cursor, parse_scalar_at
from .ring import IntPoly2, Q1, Q2, RatFun2, _from_sympy, _to_sympy

__all__ = [
    "SymLaurent", "GradedShuffleElement", "Probe", "EXACT",
    "symmetrize_fraction", "shuffle_product", "r_element", "h_element",
    "wheel_check", "partial_k", "power_sum", "probe_point",
]


def _lcm(polys) -> IntPoly2:
    acc = IntPoly2(1)
    for p in polys:
        if p.is_one() or p == acc:
            continue
        a, b = _to_sympy(acc), _to_sympy(p)
        acc = _from_sympy(a.lcm(b))
    return acc


class SymLaurent:
    """
    Symmetric Laurent polynomial in z_1..z_n with `RatFun2` coefficients.

    ``n = 0`` is the scalar component; its only key is the empty tuple.
    """

    __slots__ = ("n", "_t")

    def __init__(self, n: int, terms=None, check: bool = True):
        self.n = n
        self._t = {}
        for k, c in (terms or {}).items():
            k = tuple(int(x) for x in k)
            if len(k) != n:
                raise StrandMismatch(f"exponent vector {k} has the wrong length for S_{n}")
            c = RatFun2.coerce(c) if not isinstance(c, RatFun2) else c
            if c:
                prev = self._t.get(k)
                s = c if prev is None else prev + c
                if s:
                    self._t[k] = s
                else:
                    self._t.pop(k, None)
        if check and not self.is_symmetric():
            raise ValueError("coefficients are not symmetric under permutations of z")

    @classmethod
    def _raw(cls, n: int, terms: dict) -> "SymLaurent":
        obj = object.__new__(cls)
        obj.n = n
        obj._t = terms
        return obj

    @classmethod
    def scalar(cls, c) -> "SymLaurent":
        c = RatFun2.coerce(c)
        return cls._raw(0, {(): c} if c else {})

    @classmethod
    def monomial_symmetric(cls, exps, coeff=1) -> "SymLaurent":
        """m_λ: the sum of the distinct permutations of the exponent vector."""
        coeff = RatFun2.coerce(coeff)
        keys = {tuple(p) for p in _distinct_perms(tuple(exps))}
        return cls._raw(len(exps), {k: coeff for k in keys} if coeff else {})

    @property
    def terms(self) -> dict:
        return dict(self._t)

    def items(self):
        return self._t.items()

    def coefficient(self, exps) -> RatFun2:
        return self._t.get(tuple(exps), RatFun2())

    def is_symmetric(self) -> bool:
        if self.n < 2:
            return True
        for k, c in self._t.items():
            for g in ((1, 0) + tuple(range(2, self.n)), tuple(range(1, self.n)) + (0,)):
                pk = [0] * self.n
                for i in range(self.n):
                    pk[g[i]] = k[i]
                if self._t.get(tuple(pk)) != c:
                    return False
        return True

    def __bool__(self):
        return bool(self._t)

    def is_zero(self) -> bool:
        return not self._t

    def __eq__(self, other):
        if not isinstance(other, SymLaurent):
            return NotImplemented
        return self.n == other.n and self._t == other._t

    def __hash__(self):
        return hash((self.n, frozenset(self._t.items())))

    def __add__(self, other):
        if not isinstance(other, SymLaurent):
            return NotImplemented
        if self.n != other.n:
            raise StrandMismatch(f"S_{self.n} and S_{other.n} elements do not add; use GradedShuffleElement")
        out = dict(self._t)
        for k, c in other._t.items():
            prev = out.get(k)
            s = c if prev is None else prev + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return SymLaurent._raw(self.n, out)

    def __neg__(self):
        return SymLaurent._raw(self.n, {k: -c for k, c in self._t.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "SymLaurent":
        c = RatFun2.coerce(c)
        if not c:
            return SymLaurent._raw(self.n, {})
        return SymLaurent._raw(self.n, {k: x * c for k, x in self._t.items()})

    def __mul__(self, other):
        if isinstance(other, SymLaurent):
            return shuffle_product(self, other)
        if isinstance(other, (int, IntPoly2, RatFun2)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, IntPoly2, RatFun2)):
            return self.scale(other)
        return NotImplemented

    def dominant_terms(self) -> list:
        """(λ, coefficient) for weakly decreasing λ, sorted descending."""
        return sorted(
            ((k, c) for k, c in self._t.items() if list(k) == sorted(k, reverse=True)),
            reverse=True,
        )

    def __str__(self):
        if not self._t:
            return "0"
        parts = []
        for lam, c in self.dominant_terms():
            parts.append(f"({c})*m(" + ",".join(map(str, lam)) + ")")
        return " + ".join(parts)

    def __repr__(self):
        return f"SymLaurent(n={self.n}, {self})"

    @classmethod
    def parse(cls, text: str, n: int) -> "SymLaurent":
        """Inverse of `str`: ``(coeff)*m(λ) + ...`` or ``0``."""
        if text.strip() == "0":
            return cls._raw(n, {})
        cur = Cursor(text)
        one = RatFun2.coerce(1)
        variables = {"q1": one * Q1, "q2": one * Q2}
        out = cls._raw(n, {})
        while True:
            cur.expect("(")
            coeff = parse_scalar_at(cur, variables, RatFun2.coerce, lambda a, b: a / b)
            cur.expect(")")
            cur.expect("*")
            cur.expect("m")
            cur.expect("(")
            lam = []
            if n:
                lam.append(cur.signed_int())
                while cur.accept(","):
                    lam.append(cur.signed_int())
            cur.expect(")")
            if len(lam) != n:
                cur.fail(f"m(...) needs {n} exponents")
            out = out + cls.monomial_symmetric(lam, coeff)
            if not cur.accept("+"):
                break
        cur.expect_end()
        return out


def _distinct_perms(exps: tuple):
    from sympy.utilities.iterables import multiset_permutations

    return multiset_permutations(list(exps))


# -- conversion between SymLaurent and engine polynomials ---------------------

def _to_engine(F: SymLaurent) -> tuple[dict, IntPoly2]:
    """Numerator polynomial over Z in (z, q1, q2) and a common IntPoly2 denominator."""
    den = _lcm({c.den for c in F._t.values()})
    poly: dict = {}
    for k, c in F._t.items():
        num = c.num if c.den == den else c.num * _exact_quotient(den, c.den)
        for (a, b), v in num.items():
            key = k + (a, b)
            poly[key] = poly.get(key, 0) + v
    return {k: v for k, v in poly.items() if v}, den


def _exact_quotient(a: IntPoly2, b: IntPoly2) -> IntPoly2:
    return _from_sympy(_to_sympy(a).exquo(_to_sympy(b)))


def _from_engine(n: int, poly: dict, den: IntPoly2 = None, check: bool = True) -> SymLaurent:
    grouped: dict = {}
    for k, v in poly.items():
        grouped.setdefault(k[:n], {})[k[n:]] = v
    terms = {}
    trivial = den is None or den.is_one()
    one = IntPoly2(1)
    for z, qs in grouped.items():
        num = IntPoly2._raw(qs)
        terms[z] = RatFun2._raw(num, one) if trivial else RatFun2(num, den)
    F = SymLaurent._raw(n, terms)
    if check and not F.is_symmetric():
        raise AssertionError("engine produced a non-symmetric result")
    return F


def _probe_engine(F: SymLaurent, ctx: Probe) -> dict:
    out: dict = {}
    for k, c in F._t.items():
        v = c.evaluate(ctx.x1, ctx.x2)
        if v:
            out[k] = out.get(k, 0) + v
    return out


def engine_of(F: SymLaurent, ctx=EXACT) -> tuple[dict, IntPoly2]:
    if ctx is EXACT:
        return _to_engine(F)
    return _probe_engine(F, ctx), IntPoly2(1)


# -- symmetrization -----------------------------------------------------------

def symmetrize_fraction(n: int, numerator, factors=(), ctx=EXACT):
    """
    Sum over S_n of σ(numerator / prod(factors)).

    `numerator` is a `SymLaurent`-style mapping {exponent vector: coefficient}
    (it need not be symmetric) and each factor ``(i, j, a, b)`` stands for
    ``1 - q1^a q2^b z_i / z_j`` with 1-based indices.  The orbit of the factors
    is brought to a common denominator and divided out exactly.

    >>> print(symmetrize_fraction(2, {(0, 0): 1}, [(1, 2, 0, 0)]))
    (1)*m(0,0)
    """
    N = n
    if isinstance(numerator, SymLaurent):
        numerator = numerator.terms
    coeffs = {tuple(k): RatFun2.coerce(c) for k, c in numerator.items()}
    if ctx is EXACT:
        tmp = SymLaurent._raw(N, {k: c for k, c in coeffs.items() if c})
        poly, den = _to_engine(tmp)
    else:
        poly = {k: c.evaluate(ctx.x1, ctx.x2) for k, c in coeffs.items()}
        den = IntPoly2(1)
    total = _symmetrize_engine(poly, N, [(i - 1, j - 1, a, b) for i, j, a, b in factors], ctx)
    if ctx is EXACT:
        return _from_engine(N, total, den)
    return total


def _canonical_linear(x: int, y: int, a: int, b: int):
    """
    z_x - q^(a,b) z_y as (unit, (x', y', a', b')) with x' < y'.

    The unit is (sign, qa, qb) such that the form equals
    sign * q1^qa q2^qb * (z_x' - q^(a',b') z_y').
    """
    if x < y:
        return (1, 0, 0), (x, y, a, b)
    # z_x - c z_y = -c (z_y - c^-1 z_x)
    return (-1, a, b), (y, x, -a, -b)


def _symmetrize_engine(poly: dict, N: int, factors, ctx) -> dict:
    perms = lp.all_perms(N)
    per_perm = []
    common: dict = {}
    for sigma, _ in perms:
        mult: dict = {}
        sign, ua, ub = 1, 0, 0
        zshift = [0] * N
        for i, j, a, b in factors:
            # 1 - c z_i/z_j = (z_j - c z_i) / z_j, after relabelling by sigma
            si, sj = sigma[i], sigma[j]
            zshift[sj] += 1
            (s, qa, qb), lin = _canonical_linear(sj, si, a, b)
            sign *= s
            ua += qa
            ub += qb
            mult[lin] = mult.get(lin, 0) + 1
        per_perm.append((sigma, mult, sign, ua, ub, zshift))
        for lin, m in mult.items():
            common[lin] = max(common.get(lin, 0), m)
    total: dict = {}
    for sigma, mult, sign, ua, ub, zshift in per_perm:
        term = lp.permute(poly, N, sigma)
        # multiply by prod(z_j) / unit, then by the factors missing from this term
        term = lp.scale_by_monomial(term, N, ctx, zshift, -ua, -ub, sign)
        for lin, m in common.items():
            for _ in range(m - mult.get(lin, 0)):
                term = _mul_linear(term, N, ctx, lin)
        lp.add_into(total, term)
    for lin, m in sorted(common.items()):
        for _ in range(m):
            x, y, a, b = lin
            total = lp.divide_linear(total, N, ctx, x, y, a, b)
    return total


def _mul_linear(p: dict, N: int, ctx, lin) -> dict:
    x, y, a, b = lin
    ex = [0] * N
    ex[x] = 1
    ey = [0] * N
    ey[y] = 1
    out = lp.scale_by_monomial(p, N, ctx, ex, 0, 0)
    lp.add_into(out, lp.scale_by_monomial(p, N, ctx, ey, a, b), -1)
    return out


# -- R_d, H_{m,n}, products ---------------------------------------------------

@lru_cache(maxsize=None)
def _r_kernel(n: int, ctx) -> tuple:
    """
    For each σ: (sign σ, σ(K * M)) where K * M / V is the R_d integrand without z^d:

        K = prod_{i<j} (1 - q1 z_i/z_j)(1 - q2 z_i/z_j) * prod_{i+1<j} (1 - q1 q2 z_j/z_i)
        M = prod_{i<j} (-z_j)   (so that 1 / prod (1 - z_i/z_j) = M / V).
    """
    poly = lp.one(n, ctx)
    for i, j in combinations(range(n), 2):
        poly = lp.mul_binomial(poly, n, ctx, i, j, 1, 0)
        poly = lp.mul_binomial(poly, n, ctx, i, j, 0, 1)
        if j > i + 1:
            poly = lp.mul_binomial(poly, n, ctx, j, i, 1, 1)
    mexp = [j for j in range(n)]  # z_j appears once for each i < j
    sign = (-1) ** (n * (n - 1) // 2)
    poly = lp.scale_by_monomial(poly, n, ctx, mexp, 0, 0, sign)
    return tuple((sgn, sigma, lp.permute(poly, n, sigma)) for sigma, sgn in lp.all_perms(n))


@lru_cache(maxsize=None)
def _r_poly(d: tuple, ctx) -> dict:
    n = len(d)
    if n == 0:
        return lp.one(0, ctx)
    total: dict = {}
    for sgn, sigma, kpoly in _r_kernel(n, ctx):
        sd = [0] * n
        for i in range(n):
            sd[sigma[i]] = d[i]
        lp.add_into(total, lp.shift(kpoly, tuple(sd) + ctx.zero_suffix()), sgn)
    total = lp.divide_vandermonde(total, n, ctx)
    for _ in range(n - 1):
        total = lp.mul_qbinomial(total, n, ctx, 1, 0)
    for _ in range(n):
        total = lp.mul_qbinomial(total, n, ctx, 0, 1)
    return total


def r_element(d) -> SymLaurent:
    """
    R_d = (1-q1)^{n-1} (1-q2)^n Sym[ z^d / prod_{i<n} (1 - q1 q2 z_{i+1}/z_i)
                                     * prod_{i<j} (1-q1 z_i/z_j)(1-q2 z_i/z_j)(1-q1 q2 z_j/z_i) / (1 - z_i/z_j) ]

    The adjacent factors 1 - q1 q2 z_{i+1}/z_i cancel before symmetrizing.
    """
    d = tuple(int(x) for x in d)
    return _from_engine(len(d), _r_poly(d, EXACT))


def h_element(m: int, n: int) -> SymLaurent:
    return r_element(staircase(m, n))


def _embed(p: dict, N: int, offset: int, width: int) -> dict:
    out = {}
    for k, c in p.items():
        z = [0] * N
        z[offset:offset + width] = k[:width]
        out[tuple(z) + k[width:]] = c
    return out


def _shuffle_engine(f: dict, n: int, g: dict, m: int, ctx) -> dict:
    N = n + m
    q = lp.mul(_embed(f, N, 0, n), _embed(g, N, n, m))
    if n == 0 or m == 0:
        return q
    for i in range(n):
        for j in range(n, N):
            q = lp.mul_binomial(q, N, ctx, i, j, 1, 0)
            q = lp.mul_binomial(q, N, ctx, i, j, 0, 1)
            q = lp.mul_binomial(q, N, ctx, j, i, 1, 1)
    # 1 / prod_cross (1 - z_i/z_j) = prod_cross(-z_j) * prod_within(z_i - z_j) / V
    mexp = [0] * n + [n] * m
    q = lp.scale_by_monomial(q, N, ctx, mexp, 0, 0, (-1) ** (n * m))
    for lo, hi in ((0, n), (n, N)):
        for i, j in combinations(range(lo, hi), 2):
            q = lp.mul_difference(q, N, i, j)
    total = lp.antisymmetrize(q, N, lp.shuffles(n, m))
    return lp.divide_vandermonde(total, N, ctx)


def shuffle_product(F: SymLaurent, G: SymLaurent) -> SymLaurent:
    f, df = _to_engine(F)
    g, dg = _to_engine(G)
    out = _shuffle_engine(f, F.n, g, G.n, EXACT)
    return _from_engine(F.n + G.n, out, df * dg)


# -- wheel conditions and derivations -----------------------------------------

def _wheel_substitute(p: dict, N: int, ctx, variant: int) -> dict:
    """F(x, x q, x q1 q2, z_4, ...) with q = q1 (variant 1) or q2 (variant 2)."""
    out: dict = {}
    for k, c in p.items():
        e1, e2, e3 = k[0], k[1], k[2]
        if variant == 1:
            a, b = e2 + e3, e3
        else:
            a, b = e3, e2 + e3
        suffix, s = ctx.scalar(a, b, 1)
        key = (e1 + e2 + e3, 0, 0) + tuple(k[3:N]) + tuple(x + y for x, y in zip(k[N:], suffix))
        v = out.get(key, 0) + c * s
        if v:
            out[key] = v
        else:
            out.pop(key, None)
    return out


def wheel_check(F: SymLaurent, ctx=EXACT) -> bool:
    """True iff F(x, x q1, x q1 q2, ...) = F(x, x q2, x q1 q2, ...) = 0; vacuous for n < 3."""
    if F.n < 3:
        return True
    p, _ = engine_of(F, ctx)
    return not _wheel_substitute(p, F.n, ctx, 1) and not _wheel_substitute(p, F.n, ctx, 2)


def power_sum(n: int, k: int) -> SymLaurent:
    terms = {}
    for i in range(n):
        e = [0] * n
        e[i] = k
        terms[tuple(e)] = RatFun2.coerce(1)
    return SymLaurent._raw(n, terms)


def partial_k(F: SymLaurent, k: int) -> SymLaurent:
    """F * (z_1^k + ... + z_n^k); the empty power sum kills scalars."""
    if F.n == 0:
        return SymLaurent._raw(0, {})
    out: dict = {}
    for e, c in F._t.items():
        for i in range(F.n):
            key = e[:i] + (e[i] + k,) + e[i + 1:]
            prev = out.get(key)
            s = c if prev is None else prev + c
            if s:
                out[key] = s
            else:
                out.pop(key, None)
    return SymLaurent._raw(F.n, out)


class GradedShuffleElement:
    """Finite sum of homogeneous pieces, keyed by the number of variables."""

    __slots__ = ("pieces",)

    def __init__(self, pieces=None):
        self.pieces = {n: F for n, F in (pieces or {}).items() if F}

    def __getitem__(self, n) -> SymLaurent:
        return self.pieces.get(n, SymLaurent._raw(n, {}))

    def __add__(self, other):
        out = dict(self.pieces)
        for n, F in other.pieces.items():
            out[n] = out[n] + F if n in out else F
        return GradedShuffleElement(out)

    def __neg__(self):
        return GradedShuffleElement({n: -F for n, F in self.pieces.items()})

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        if not isinstance(other, GradedShuffleElement):
            return NotImplemented
        return self.pieces == other.pieces

    def is_zero(self) -> bool:
        return not self.pieces

    def __str__(self):
        if not self.pieces:
            return "0"
        return "\n".join(f"S_{n}: {self.pieces[n]}" for n in sorted(self.pieces))


def probe_point(seed: int) -> Probe:
    """Deterministic pseudo-random rational values for (q1, q2)."""
    rng = random.Random(seed)

    def draw():
        while True:
            x = Fraction(rng.randint(-97, 97), rng.randint(1, 61))
            if x not in (0, 1, -1):
                return x

    return Probe(draw(), draw())
