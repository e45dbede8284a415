"""
Exact coefficient rings.

* `IntLaurent1` -- Z[q^±1], coefficients of the affine Hecke algebra.
* `IntPoly2` -- Z[q1^±1, q2^±1].
* `RatFun2` -- normalized fractions of `IntPoly2`, i.e. Q(q1, q2).

All values are immutable.  Integers are accepted wherever a ring element is.

>>> q = IntLaurent1.q()
>>> print((q - q**-1) * (q + q**-1))
-q^-2 + q^2
>>> print(RatFun2(Q1 - Q1**2, 1 - Q1))
q1
"""

from fractions import Fraction
from functools import reduce
from math import gcd

from sympy import ZZ
from sympy.polys.rings import ring as _sympy_ring

from .errors import DivisionByZero, NonLaurent
from .parsing import parse_scalar

__all__ = ["IntLaurent1", "IntPoly2", "RatFun2", "Q1", "Q2", "specialize_q"]


def _add_into(acc: dict, other: dict, scale: int = 1) -> None:
    for e, c in other.items():
        v = acc.get(e, 0) + scale * c
        if v:
            acc[e] = v
        else:
            acc.pop(e, None)


def _term_text(coeff: int, monomial: str, first: bool) -> str:
    sign = "-" if coeff < 0 else ("" if first else "+")
    mag = abs(coeff)
    if not monomial:
        body = str(mag)
    elif mag == 1:
        body = monomial
    else:
        body = f"{mag}*{monomial}"
    if first:
        return sign + body
    return f" {sign} {body}"


def _power_text(var: str, e: int) -> str:
    if e == 0:
        return ""
    if e == 1:
        return var
    return f"{var}^{e}"


class IntLaurent1:
    """Laurent polynomial in q with integer coefficients, stored as {exponent: coeff}."""

    __slots__ = ("_t",)

    def __init__(self, terms=None):
        if isinstance(terms, int):
            terms = {0: terms}
        self._t = {int(e): int(c) for e, c in (terms or {}).items() if c}

    @classmethod
    def _raw(cls, terms: dict) -> "IntLaurent1":
        obj = object.__new__(cls)
        obj._t = terms
        return obj

    @classmethod
    def q(cls, e: int = 1) -> "IntLaurent1":
        return cls._raw({e: 1})

    @classmethod
    def coerce(cls, x) -> "IntLaurent1":
        if isinstance(x, IntLaurent1):
            return x
        if isinstance(x, int):
            return cls._raw({0: x} if x else {})
        raise TypeError(f"cannot coerce {type(x).__name__} to IntLaurent1")

    @property
    def terms(self) -> dict:
        return dict(self._t)

    def items(self):
        return self._t.items()

    def __bool__(self):
        return bool(self._t)

    def is_zero(self) -> bool:
        return not self._t

    def __eq__(self, other):
        if isinstance(other, int):
            other = IntLaurent1.coerce(other)
        if not isinstance(other, IntLaurent1):
            return NotImplemented
        return self._t == other._t

    def __hash__(self):
        return hash(frozenset(self._t.items()))

    def __add__(self, other):
        other = self.coerce(other) if isinstance(other, int) else other
        if not isinstance(other, IntLaurent1):
            return NotImplemented
        acc = dict(self._t)
        _add_into(acc, other._t)
        return IntLaurent1._raw(acc)

    __radd__ = __add__

    def __neg__(self):
        return IntLaurent1._raw({e: -c for e, c in self._t.items()})

    def __sub__(self, other):
        other = self.coerce(other) if isinstance(other, int) else other
        if not isinstance(other, IntLaurent1):
            return NotImplemented
        acc = dict(self._t)
        _add_into(acc, other._t, -1)
        return IntLaurent1._raw(acc)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return IntLaurent1._raw({})
            return IntLaurent1._raw({e: c * other for e, c in self._t.items()})
        if not isinstance(other, IntLaurent1):
            return NotImplemented
        acc: dict = {}
        for e1, c1 in self._t.items():
            for e2, c2 in other._t.items():
                e = e1 + e2
                v = acc.get(e, 0) + c1 * c2
                if v:
                    acc[e] = v
                else:
                    del acc[e]
        return IntLaurent1._raw(acc)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if len(self._t) != 1 or abs(next(iter(self._t.values()))) != 1:
                raise NonLaurent(f"{self} is not a unit of Z[q^±1]")
            (e, c), = self._t.items()
            return IntLaurent1._raw({e * k: c ** (-k)})
        result = IntLaurent1._raw({0: 1})
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, k: int) -> "IntLaurent1":
        return IntLaurent1._raw({e + k: c for e, c in self._t.items()})

    def degree_range(self) -> tuple[int, int]:
        return min(self._t), max(self._t)

    def divexact(self, other) -> "IntLaurent1":
        """Exact quotient in Z[q^±1]; raises NonLaurent when the division leaves a remainder."""
        other = self.coerce(other)
        if not other._t:
            raise DivisionByZero("division by zero in Z[q^±1]")
        if not self._t:
            return self
        rem = {e: Fraction(c) for e, c in self._t.items()}
        lo_d, hi_d = other.degree_range()
        lead = other._t[hi_d]
        quot = {}
        lo_r = min(rem)
        while rem and max(rem) - hi_d >= lo_r - lo_d:
            top = max(rem)
            c = rem[top] / lead
            shift = top - hi_d
            quot[shift] = c
            for e, oc in other._t.items():
                v = rem.get(e + shift, 0) - c * oc
                if v:
                    rem[e + shift] = v
                else:
                    rem.pop(e + shift, None)
        if rem or any(c.denominator != 1 for c in quot.values()):
            raise NonLaurent(f"({self}) / ({other}) is not in Z[q^±1]")
        return IntLaurent1._raw({e: int(c) for e, c in quot.items()})

    def __str__(self):
        if not self._t:
            return "0"
        parts = []
        for i, e in enumerate(sorted(self._t)):
            parts.append(_term_text(self._t[e], _power_text("q", e), i == 0))
        return "".join(parts)

    def __repr__(self):
        return f"IntLaurent1({self})"

    @classmethod
    def parse(cls, text: str) -> "IntLaurent1":
        return parse_scalar(text, {"q": cls.q()}, cls.coerce, lambda a, b: a.divexact(b))


class IntPoly2:
    """Laurent polynomial in q1, q2 over Z, stored as {(a, b): coeff} for q1^a q2^b."""

    __slots__ = ("_t",)

    def __init__(self, terms=None):
        if isinstance(terms, int):
            terms = {(0, 0): terms}
        self._t = {(int(a), int(b)): int(c) for (a, b), c in (terms or {}).items() if c}

    @classmethod
    def _raw(cls, terms: dict) -> "IntPoly2":
        obj = object.__new__(cls)
        obj._t = terms
        return obj

    @classmethod
    def monomial(cls, a: int, b: int, c: int = 1) -> "IntPoly2":
        return cls._raw({(a, b): c} if c else {})

    @classmethod
    def coerce(cls, x) -> "IntPoly2":
        if isinstance(x, IntPoly2):
            return x
        if isinstance(x, int):
            return cls._raw({(0, 0): x} if x else {})
        raise TypeError(f"cannot coerce {type(x).__name__} to IntPoly2")

    @property
    def terms(self) -> dict:
        return dict(self._t)

    def items(self):
        return self._t.items()

    def __bool__(self):
        return bool(self._t)

    def is_zero(self) -> bool:
        return not self._t

    def is_one(self) -> bool:
        return self._t == {(0, 0): 1}

    def __eq__(self, other):
        if isinstance(other, int):
            other = IntPoly2.coerce(other)
        if not isinstance(other, IntPoly2):
            return NotImplemented
        return self._t == other._t

    def __hash__(self):
        return hash(frozenset(self._t.items()))

    def __add__(self, other):
        if isinstance(other, int):
            other = IntPoly2.coerce(other)
        if not isinstance(other, IntPoly2):
            return NotImplemented
        acc = dict(self._t)
        _add_into(acc, other._t)
        return IntPoly2._raw(acc)

    __radd__ = __add__

    def __neg__(self):
        return IntPoly2._raw({e: -c for e, c in self._t.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = IntPoly2.coerce(other)
        if not isinstance(other, IntPoly2):
            return NotImplemented
        acc = dict(self._t)
        _add_into(acc, other._t, -1)
        return IntPoly2._raw(acc)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return IntPoly2._raw({})
            return IntPoly2._raw({e: c * other for e, c in self._t.items()})
        if not isinstance(other, IntPoly2):
            return NotImplemented
        acc: dict = {}
        for (a1, b1), c1 in self._t.items():
            for (a2, b2), c2 in other._t.items():
                e = (a1 + a2, b1 + b2)
                v = acc.get(e, 0) + c1 * c2
                if v:
                    acc[e] = v
                else:
                    del acc[e]
        return IntPoly2._raw(acc)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if len(self._t) != 1 or abs(next(iter(self._t.values()))) != 1:
                raise ArithmeticError(f"{self} is not a unit of Z[q1^±1, q2^±1]")
            ((a, b), c), = self._t.items()
            return IntPoly2._raw({(a * k, b * k): c ** (-k)})
        result = IntPoly2._raw({(0, 0): 1})
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, a: int, b: int) -> "IntPoly2":
        return IntPoly2._raw({(x + a, y + b): c for (x, y), c in self._t.items()})

    def min_exponents(self) -> tuple[int, int]:
        return min(a for a, _ in self._t), min(b for _, b in self._t)

    def content(self) -> int:
        return reduce(gcd, self._t.values(), 0)

    def specialize(self) -> IntLaurent1:
        """Substitute q1 = q^-2, q2 = q^2."""
        acc: dict = {}
        for (a, b), c in self._t.items():
            e = 2 * (b - a)
            v = acc.get(e, 0) + c
            if v:
                acc[e] = v
            else:
                del acc[e]
        return IntLaurent1._raw(acc)

    def evaluate(self, x1, x2):
        """Evaluate at numeric values (Fractions for probe mode)."""
        total = 0
        for (a, b), c in self._t.items():
            total += c * x1 ** a * x2 ** b
        return total

    def __str__(self):
        if not self._t:
            return "0"
        parts = []
        for i, (a, b) in enumerate(sorted(self._t, key=_grlex_key)):
            mono = "*".join(p for p in (_power_text("q1", a), _power_text("q2", b)) if p)
            parts.append(_term_text(self._t[(a, b)], mono, i == 0))
        return "".join(parts)

    def __repr__(self):
        return f"IntPoly2({self})"

    @classmethod
    def parse(cls, text: str) -> "IntPoly2":
        return parse_scalar(text, {"q1": Q1, "q2": Q2}, cls.coerce)


def _grlex_key(exp):
    # graded lexicographic with q1 < q2
    a, b = exp
    return (a + b, b, a)


Q1 = IntPoly2.monomial(1, 0)
Q2 = IntPoly2.monomial(0, 1)

_SRING, _, _ = _sympy_ring("q1,q2", ZZ)


def _to_sympy(p: IntPoly2):
    # caller guarantees non-negative exponents
    return _SRING.from_dict(dict(p._t))


def _from_sympy(sp) -> IntPoly2:
    return IntPoly2._raw({(int(a), int(b)): int(c) for (a, b), c in sp.items()})


def _normalize(num: IntPoly2, den: IntPoly2) -> tuple[IntPoly2, IntPoly2]:
    if not den._t:
        raise DivisionByZero("zero denominator")
    if not num._t:
        return num, IntPoly2._raw({(0, 0): 1})
    ma, mb = den.min_exponents()
    if ma or mb:
        den = den.shift(-ma, -mb)
        num = num.shift(-ma, -mb)
    if len(den._t) == 1:
        c = den._t[(0, 0)]
        g = gcd(num.content(), c)
        if c < 0:
            g = -g
        if g != 1:
            num = IntPoly2._raw({e: v // g for e, v in num._t.items()})
        return num, IntPoly2._raw({(0, 0): c // g})
    na, nb = num.min_exponents()
    g = _to_sympy(num.shift(-na, -nb)).gcd(_to_sympy(den))
    if not g.is_ground or abs(g.LC) != 1:
        num = _from_sympy(_to_sympy(num.shift(-na, -nb)).exquo(g)).shift(na, nb)
        den = _from_sympy(_to_sympy(den).exquo(g))
    lead = den._t[min(den._t, key=_grlex_key)]
    if lead < 0:
        num, den = -num, -den
    return num, den


class RatFun2:
    """
    Element of Q(q1, q2) as a reduced fraction of `IntPoly2` values.

    The denominator is a polynomial not divisible by q1 or q2 whose graded-lex
    minimal monomial has a positive coefficient; monomial factors live in the
    numerator.  Equality is decided on this normal form.
    """

    __slots__ = ("num", "den")

    def __init__(self, num=0, den=1):
        num = IntPoly2.coerce(num) if not isinstance(num, RatFun2) else num
        den = IntPoly2.coerce(den) if not isinstance(den, RatFun2) else den
        if isinstance(num, RatFun2) or isinstance(den, RatFun2):
            num = RatFun2.coerce(num) / RatFun2.coerce(den)
            self.num, self.den = num.num, num.den
            return
        self.num, self.den = _normalize(num, den)

    @classmethod
    def _raw(cls, num: IntPoly2, den: IntPoly2) -> "RatFun2":
        obj = object.__new__(cls)
        obj.num = num
        obj.den = den
        return obj

    @classmethod
    def coerce(cls, x) -> "RatFun2":
        if isinstance(x, RatFun2):
            return x
        if isinstance(x, (int, IntPoly2)):
            return cls._raw(IntPoly2.coerce(x), IntPoly2._raw({(0, 0): 1}))
        raise TypeError(f"cannot coerce {type(x).__name__} to RatFun2")

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    def __bool__(self):
        return bool(self.num)

    def is_zero(self) -> bool:
        return not self.num

    def __eq__(self, other):
        if isinstance(other, (int, IntPoly2)):
            other = RatFun2.coerce(other)
        if not isinstance(other, RatFun2):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other):
        if isinstance(other, (int, IntPoly2)):
            other = RatFun2.coerce(other)
        if not isinstance(other, RatFun2):
            return NotImplemented
        if self.den == other.den:
            if self.den.is_one():
                return RatFun2._raw(self.num + other.num, self.den)
            return RatFun2(self.num + other.num, self.den)
        return RatFun2(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFun2._raw(-self.num, self.den)

    def __sub__(self, other):
        if isinstance(other, (int, IntPoly2)):
            other = RatFun2.coerce(other)
        if not isinstance(other, RatFun2):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, IntPoly2)):
            other = RatFun2.coerce(other)
        if not isinstance(other, RatFun2):
            return NotImplemented
        if self.den.is_one() and other.den.is_one():
            return RatFun2._raw(self.num * other.num, self.den)
        return RatFun2(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "RatFun2":
        if not self.num:
            raise DivisionByZero("inverse of zero in Q(q1, q2)")
        return RatFun2(self.den, self.num)

    def __truediv__(self, other):
        if isinstance(other, (int, IntPoly2)):
            other = RatFun2.coerce(other)
        if not isinstance(other, RatFun2):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return RatFun2.coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return RatFun2(self.num ** k, self.den ** k)

    def normalize(self) -> "RatFun2":
        return RatFun2(self.num, self.den)

    def evaluate(self, x1, x2):
        d = self.den.evaluate(x1, x2)
        if d == 0:
            raise DivisionByZero(f"denominator {self.den} vanishes at the probe point")
        return self.num.evaluate(x1, x2) / d

    def __str__(self):
        if self.den.is_one():
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return f"RatFun2({self})"

    @classmethod
    def parse(cls, text: str) -> "RatFun2":
        one = cls.coerce(1)
        return parse_scalar(text, {"q1": one * Q1, "q2": one * Q2}, cls.coerce, lambda a, b: a / b)


def specialize_q(r) -> IntLaurent1:
    """
    Image of `r` under q1 -> q^-2, q2 -> q^2.

    Raises NonLaurent when the specialized denominator does not divide the
    specialized numerator in Z[q^±1].

    >>> print(specialize_q(RatFun2(1 - Q1 * Q2, 1 - Q1)))
    0
    """
    r = RatFun2.coerce(r)
    num = r.num.specialize()
    if r.den.is_one():
        return num
    den = r.den.specialize()
    if not den:
        raise NonLaurent(f"denominator of {r} vanishes under q1 = q^-2, q2 = q^2")
    return num.divexact(den)
