"""
The algebra Ã on generators ℰ_d, d ∈ Z^n, and its maps to the shuffle algebra and the cocenter.

Ã is handled as a relation generator rather than a rewriting system: the
functions here build instances of the defining relations as pairs of
`FormalElement` values and push them through

* `eval_shuffle`:  ℰ_d ↦ R_d, concatenation ↦ shuffle product;
* `eval_cocenter`: ℰ_{d^1}⋯ℰ_{d^r} ↦ q^{Σ(1 - n_i)} [E_{d^1} ⋆ ⋯ ⋆ E_{d^r}] in Tr(AH_N),
  with q1 ↦ q^-2 and q2 ↦ q^2 on coefficients.

`reduce_single_rows` writes ℰ_{(0,…,0,m)} in terms of one-row generators.
"""

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product

from . import _lpoly as lp
from ._lpoly import EXACT
from .cocenter import CocenterVector, e_class
from .errors import IndexOutOfRange, ScalarNotInvertible
from .hecke import EWord
from .parsing import Cursor, parse_scalar_at
from .ring import IntLaurent1, Q1, Q2, RatFun2, specialize_q
from .shuffle import GradedShuffleElement, SymLaurent, _r_poly, _shuffle_engine, r_element

__all__ = [
    "FormalElement", "rel_a1_instance", "rel_a2_instance", "tor1_instance", "tor2_instance",
    "eval_shuffle", "eval_shuffle_probe", "eval_cocenter", "verify_suite", "VerifyReport",
    "reduce_single_rows", "RELATIONS", "TARGETS",
]

ONE = RatFun2.coerce(1)
Q1Q2 = ONE * Q1 * Q2


class FormalElement:
    """Finite Q(q1,q2)-combination of words ℰ_{d^1}⋯ℰ_{d^r}; the empty word is the unit."""

    __slots__ = ("_t",)

    def __init__(self, terms=None):
        self._t = {}
        for w, c in (terms or {}).items():
            if not isinstance(w, EWord):
                w = EWord(tuple(w))
            c = RatFun2.coerce(c)
            if c:
                prev = self._t.get(w)
                s = c if prev is None else prev + c
                if s:
                    self._t[w] = s
                else:
                    self._t.pop(w, None)

    @classmethod
    def gen(cls, *rows, coeff=1) -> "FormalElement":
        """The word ℰ_{rows[0]}⋯ℰ_{rows[-1]} times `coeff`."""
        return cls({EWord(tuple(tuple(r) for r in rows)): coeff})

    @classmethod
    def one(cls) -> "FormalElement":
        return cls({EWord(()): 1})

    @property
    def terms(self) -> dict:
        return dict(self._t)

    def items(self):
        return self._t.items()

    def __bool__(self):
        return bool(self._t)

    def __eq__(self, other):
        if not isinstance(other, FormalElement):
            return NotImplemented
        return self._t == other._t

    def __hash__(self):
        return hash(frozenset(self._t.items()))

    def __add__(self, other):
        out = FormalElement()
        out._t = dict(self._t)
        for w, c in other._t.items():
            prev = out._t.get(w)
            s = c if prev is None else prev + c
            if s:
                out._t[w] = s
            else:
                out._t.pop(w, None)
        return out

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "FormalElement":
        c = RatFun2.coerce(c)
        out = FormalElement()
        if c:
            out._t = {w: x * c for w, x in self._t.items()}
        return out

    def __mul__(self, other):
        if isinstance(other, FormalElement):
            out = FormalElement()
            for w1, c1 in self._t.items():
                for w2, c2 in other._t.items():
                    out = out + FormalElement({w1 + w2: c1 * c2})
            return out
        if isinstance(other, (int, RatFun2)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, RatFun2)):
            return self.scale(other)
        return NotImplemented

    def words(self) -> list:
        return sorted(self._t, key=lambda w: (w.strands, len(w.factors), w.factors))

    def __str__(self):
        if not self._t:
            return "0"
        return " + ".join(f"({self._t[w]})*{w}" for w in self.words())

    def __repr__(self):
        return f"FormalElement({self})"

    @classmethod
    def parse(cls, text: str) -> "FormalElement":
        """Inverse of `str`: ``(coeff)*E(..)*E(..) + ...``, ``(coeff)*1`` or ``0``."""
        from .hecke import parse_eword_at

        if text.strip() == "0":
            return cls()
        cur = Cursor(text)
        variables = {"q1": ONE * Q1, "q2": ONE * Q2}
        out = cls()
        while True:
            cur.expect("(")
            c = parse_scalar_at(cur, variables, RatFun2.coerce, lambda a, b: a / b)
            cur.expect(")")
            cur.expect("*")
            if cur.peek().kind == "int" and cur.peek().text == "1":
                cur.next()
                w = EWord(())
            else:
                w = parse_eword_at(cur)
            out = out + cls({w: c})
            if not cur.accept("+"):
                break
        cur.expect_end()
        return out


# -- relation instances -------------------------------------------------------

def rel_a1_instance(d, i: int):
    """ℰ_d - q1q2 ℰ_{d-α_i} = (1-q1) ℰ_{d[1..i]} ℰ_{d[i+1..n]}, returned as (lhs, rhs)."""
    d = tuple(d)
    n = len(d)
    if not 1 <= i <= n - 1:
        raise IndexOutOfRange(f"split index {i} not in 1..{n - 1}")
    shifted = d[:i - 1] + (d[i - 1] - 1, d[i] + 1) + d[i + 1:]
    lhs = FormalElement.gen(d) - FormalElement.gen(shifted, coeff=Q1Q2)
    rhs = FormalElement.gen(d[:i], d[i:], coeff=1 - ONE * Q1)
    return lhs, rhs


def rel_a2_instance(k: int, d):
    """[ℰ_(k), ℰ_d] against (q2 - 1) times the insertion sums, returned as (lhs, rhs)."""
    d = tuple(d)
    lhs = FormalElement.gen((k,), d) - FormalElement.gen(d, (k,))
    terms: dict = {}
    for i, di in enumerate(d):
        if k >= di:
            for a in range(1, k - di + 1):
                w = d[:i] + (k - a, di + a) + d[i + 1:]
                terms[w] = terms.get(w, 0) + 1
        else:
            for a in range(1, di - k + 1):
                w = d[:i] + (di - a, k + a) + d[i + 1:]
                terms[w] = terms.get(w, 0) - 1
    rhs = FormalElement({EWord((w,)): c for w, c in terms.items()}).scale(ONE * Q2 - 1)
    return lhs, rhs


def _tor_coefficients():
    # elementary symmetric functions of q1, q2, 1/(q1 q2)
    r1, r2, r3 = ONE * Q1, ONE * Q2, Q1Q2.inverse()
    e1 = r1 + r2 + r3
    e2 = r1 * r2 + r1 * r3 + r2 * r3
    left = (ONE, -e1, e2, -ONE)
    right = (ONE, -e2, e1, -ONE)
    return left, right


def tor1_instance(a: int, b: int):
    """
    The instance (a, b) of the cubic toroidal relation among one-row generators:

        Σ_i c_i E_{a-i} E_{b+i} = Σ_i c'_i E_{b+i} E_{a-i},

    with c_i, c'_i the coefficients of z^{3-i} w^i in
    (z - q1 w)(z - q2 w)(z - w/(q1 q2)) and (q1 z - w)(q2 z - w)(z/(q1 q2) - w).
    """
    left, right = _tor_coefficients()
    lhs = FormalElement()
    rhs = FormalElement()
    for i in range(4):
        lhs = lhs + FormalElement.gen((a - i,), (b + i,), coeff=left[i])
        rhs = rhs + FormalElement.gen((b + i,), (a - i,), coeff=right[i])
    return lhs, rhs


def tor2_instance(m: int):
    """[[E_{m+1}, E_{m-1}], E_m] = 0 as (lhs, 0)."""
    x, y, z = (FormalElement.gen((m + 1,)), FormalElement.gen((m - 1,)), FormalElement.gen((m,)))
    inner = x * y - y * x
    return inner * z - z * inner, FormalElement()


# -- evaluation ---------------------------------------------------------------

@lru_cache(maxsize=None)
def _word_shuffle(w: EWord) -> SymLaurent:
    if not w.factors:
        return SymLaurent.scalar(1)
    if len(w.factors) == 1:
        return r_element(w.factors[0])
    return _word_shuffle(EWord(w.factors[:-1])) * r_element(w.factors[-1])


def eval_shuffle(x: FormalElement) -> GradedShuffleElement:
    pieces: dict = {}
    for w, c in x.items():
        v = _word_shuffle(w).scale(c)
        n = w.strands
        pieces[n] = pieces[n] + v if n in pieces else v
    return GradedShuffleElement(pieces)


@lru_cache(maxsize=None)
def _word_probe(w: EWord, ctx) -> dict:
    if not w.factors:
        return lp.one(0, ctx)
    last = w.factors[-1]
    rv = _r_poly(last, ctx)
    if len(w.factors) == 1:
        return rv
    head = EWord(w.factors[:-1])
    return _shuffle_engine(_word_probe(head, ctx), head.strands, rv, len(last), ctx)


def eval_shuffle_probe(x: FormalElement, ctx) -> dict:
    """Like `eval_shuffle` with q1, q2 replaced by the rationals of a `Probe`; returns {n: polynomial}."""
    pieces: dict = {}
    for w, c in x.items():
        acc = pieces.setdefault(w.strands, {})
        lp.add_into(acc, _word_probe(w, ctx), c.evaluate(ctx.x1, ctx.x2))
    return {n: p for n, p in pieces.items() if p}


def _word_scale(w: EWord) -> IntLaurent1:
    return IntLaurent1.q(sum(1 - len(f) for f in w.factors))


def eval_cocenter(x: FormalElement) -> dict:
    """{N: CocenterVector in Tr(AH_N)}; raises NonLaurent if a coefficient does not specialize."""
    pieces: dict = {}
    for w, c in x.items():
        v = e_class(w).scale(specialize_q(c) * _word_scale(w))
        n = w.strands
        pieces[n] = pieces[n] + v if n in pieces else v
    return {n: v for n, v in pieces.items() if v}


# -- verification suites ------------------------------------------------------

RELATIONS = ("rel-a1", "rel-a2", "tor1", "tor2", "rel-shuf")
TARGETS = ("cocenter", "shuffle")


@dataclass
class VerifyReport:
    relation: str
    target: str
    bounds: dict
    mode: str = "exact"
    instances: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def _instances(relation: str, n_max: int, d_max: int, k_max: int):
    rng = range(-d_max, d_max + 1)
    if relation in ("rel-a1", "rel-shuf"):
        for n in range(2, n_max + 1):
            for d in product(rng, repeat=n):
                for i in range(1, n):
                    yield {"d": list(d), "i": i}, rel_a1_instance(d, i)
    elif relation == "rel-a2":
        for n in range(1, n_max + 1):
            for k in range(-k_max, k_max + 1):
                for d in product(rng, repeat=n):
                    yield {"k": k, "d": list(d)}, rel_a2_instance(k, d)
    elif relation == "tor1":
        for a in rng:
            for b in rng:
                yield {"a": a, "b": b}, tor1_instance(a, b)
    elif relation == "tor2":
        for m in rng:
            yield {"m": m}, tor2_instance(m)
    else:
        raise ValueError(f"unknown relation {relation!r}; choose from {', '.join(RELATIONS)}")


def _render_graded(pieces: dict) -> str:
    if not pieces:
        return "0"
    return "; ".join(f"N={n}: " + str(pieces[n]).replace("\n", "; ") for n in sorted(pieces))


def verify_suite(relation: str, target: str, n_max: int = 3, d_max: int = 1, k_max: int = 1,
                 probe=None) -> VerifyReport:
    """
    Evaluate lhs - rhs of every instance within the bounds in `target`.

    `n_max` bounds the length of d (relations rel-a1, rel-a2), `d_max` bounds
    |d_i| and the toroidal indices, `k_max` bounds |k|.  With a `Probe`, the
    shuffle target is evaluated at that numeric point instead of exactly.
    """
    if target not in TARGETS:
        raise ValueError(f"unknown target {target!r}; choose from {', '.join(TARGETS)}")
    bounds = {"n_max": n_max, "d_max": d_max, "k_max": k_max}
    mode = "exact" if probe is None or target == "cocenter" else "probe"
    report = VerifyReport(relation, target, bounds, mode)
    for params, (lhs, rhs) in _instances(relation, n_max, d_max, k_max):
        report.instances += 1
        diff = lhs - rhs
        if target == "cocenter":
            value = eval_cocenter(diff)
            residual = _render_graded(value) if value else None
        elif mode == "probe":
            value = eval_shuffle_probe(diff, probe)
            residual = f"nonzero at {probe}" if value else None
        else:
            value = eval_shuffle(diff)
            residual = None if value.is_zero() else str(value).replace("\n", "; ")
        if residual is not None:
            report.failures.append({
                "instance": params, "lhs": str(lhs), "rhs": str(rhs), "residual": residual,
            })
    return report


# -- one-row reduction --------------------------------------------------------

def _row_step(d: tuple):
    """
    ℰ_d = c ℰ_{(0,…,0,|d|)} + rest, with rest in one-row words.

    Entries are pushed to the right with rel a 1 read forwards (d_i > 0) or
    backwards (d_i < 0).
    """
    n = len(d)
    i = next((j for j in range(n - 1) if d[j]), None)
    if i is None:
        return ONE, FormalElement()
    if d[i] > 0:
        nxt = d[:i] + (d[i] - 1, d[i + 1] + 1) + d[i + 2:]
        c, rest = _row(nxt)
        split = _express(d[:i + 1]) * _express(d[i + 1:])
        return c * Q1Q2, rest.scale(Q1Q2) + split.scale(1 - ONE * Q1)
    nxt = d[:i] + (d[i] + 1, d[i + 1] - 1) + d[i + 2:]
    c, rest = _row(nxt)
    split = _express(nxt[:i + 1]) * _express(nxt[i + 1:])
    inv = Q1Q2.inverse()
    return c * inv, (rest - split.scale(1 - ONE * Q1)).scale(inv)


@lru_cache(maxsize=None)
def _row(d: tuple):
    return _row_step(d)


@lru_cache(maxsize=None)
def _express(d: tuple) -> FormalElement:
    if len(d) == 1:
        return FormalElement.gen(d)
    c, rest = _row(d)
    return _top(len(d), sum(d)).scale(c) + rest


@lru_cache(maxsize=None)
def _top(n: int, m: int) -> FormalElement:
    """ℰ_{(0,…,0,m)} of length n in one-row words."""
    if n == 1:
        return FormalElement.gen((m,))
    if m == 0:
        lhs, rhs = rel_a2_instance(1, (-1,) + (0,) * (n - 2))
    else:
        lhs, rhs = rel_a2_instance(0, (0,) * (n - 2) + (m,))
    # lhs lives in products of shorter rows; rhs is a combination of length-n rows
    known = FormalElement()
    for w, c in lhs.items():
        term = FormalElement.one()
        for f in w.factors:
            term = term * _express(f)
        known = known + term.scale(c)
    divisor = RatFun2()
    for w, c in rhs.items():
        (row,) = w.factors
        cr, rest = _row(row)
        divisor = divisor + c * cr
        known = known - rest.scale(c)
    if not divisor:
        raise ScalarNotInvertible(f"coefficient of E(0,…,0,{m}) vanishes for n = {n}")
    return known.scale(divisor.inverse())


def reduce_single_rows(n: int, m: int) -> FormalElement:
    """
    ℰ_{(0,…,0,m)} (length n) as a combination of products of one-row generators ℰ_(k).

    >>> print(reduce_single_rows(1, 3))
    (1)*E(3)
    """
    if n < 1:
        raise ValueError("n must be positive")
    return _top(n, m)
