"""
The extended affine Hecke algebra AH_n over Z[q^±1] in the T_v basis.

Generators T_i (i mod n) satisfy (T_i - q)(T_i + q^-1) = 0, and Omega is the
length-zero element T_pi.  Products are computed by right multiplication with
generator letters; a basis element T_v is expanded along its canonical reduced
word ``pi^k s_{i_1} ... s_{i_l}``.
"""

from dataclasses import dataclass

from .affine_weyl import (
    AffinePermutation, _degree, _reduced_word, _right_descent, _rotate_right, _swap_right,
)
from .errors import IndexOutOfRange, StrandMismatch
from .parsing import Cursor, parse_scalar_at
from .ring import IntLaurent1

__all__ = [
    "HeckeElement", "BraidWord", "EWord",
    "mul_gen", "mul", "evaluate_word", "e_word_to_braid", "y_letters", "QDIFF",
]

QDIFF = IntLaurent1({1: 1, -1: -1})  # q - q^-1


def _acc(out: dict, key, c: IntLaurent1):
    prev = out.get(key)
    if prev is None:
        out[key] = c
        return
    s = prev + c
    if s:
        out[key] = s
    else:
        del out[key]


class HeckeElement:
    """Finite Z[q^±1]-combination of basis elements T_v, keyed by window tuples."""

    __slots__ = ("n", "_t")

    def __init__(self, n: int, terms=None):
        self.n = n
        self._t = {}
        for v, c in (terms or {}).items():
            w = v.window if isinstance(v, AffinePermutation) else tuple(v)
            if len(w) != n:
                raise StrandMismatch(f"basis element {w} is not on {n} strands")
            AffinePermutation(w)
            c = IntLaurent1.coerce(c)
            if c:
                _acc(self._t, w, c)

    @classmethod
    def _raw(cls, n: int, terms: dict) -> "HeckeElement":
        obj = object.__new__(cls)
        obj.n = n
        obj._t = terms
        return obj

    @classmethod
    def one(cls, n: int) -> "HeckeElement":
        return cls._raw(n, {tuple(range(1, n + 1)): IntLaurent1(1)})

    @classmethod
    def basis(cls, v: AffinePermutation) -> "HeckeElement":
        return cls._raw(v.n, {v.window: IntLaurent1(1)})

    @property
    def terms(self) -> dict:
        return {AffinePermutation(w): c for w, c in self._t.items()}

    def items(self):
        return self._t.items()

    def coefficient(self, v) -> IntLaurent1:
        w = v.window if isinstance(v, AffinePermutation) else tuple(v)
        return self._t.get(w, IntLaurent1())

    def __len__(self):
        return len(self._t)

    def __bool__(self):
        return bool(self._t)

    def __eq__(self, other):
        if not isinstance(other, HeckeElement):
            return NotImplemented
        return self.n == other.n and self._t == other._t

    def __hash__(self):
        return hash((self.n, frozenset(self._t.items())))

    def _check(self, other):
        if self.n != other.n:
            raise StrandMismatch(f"AH_{self.n} and AH_{other.n} elements do not combine")

    def __add__(self, other):
        if not isinstance(other, HeckeElement):
            return NotImplemented
        self._check(other)
        out = dict(self._t)
        for w, c in other._t.items():
            _acc(out, w, c)
        return HeckeElement._raw(self.n, out)

    def __neg__(self):
        return HeckeElement._raw(self.n, {w: -c for w, c in self._t.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "HeckeElement":
        c = IntLaurent1.coerce(c)
        if not c:
            return HeckeElement._raw(self.n, {})
        return HeckeElement._raw(self.n, {w: x * c for w, x in self._t.items()})

    def __mul__(self, other):
        if isinstance(other, HeckeElement):
            return mul(self, other)
        if isinstance(other, (int, IntLaurent1)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, IntLaurent1)):
            return self.scale(other)
        return NotImplemented

    def degrees(self) -> set:
        return {_degree(w) for w in self._t}

    def __str__(self):
        if not self._t:
            return "0"
        parts = []
        for w in sorted(self._t):
            c = self._t[w]
            basis = "T[" + ",".join(map(str, w)) + "]"
            parts.append(basis if c == 1 else f"({c})*{basis}")
        return " + ".join(parts)

    def __repr__(self):
        return f"HeckeElement(n={self.n}, {self})"

    @classmethod
    def parse(cls, text: str, n: int) -> "HeckeElement":
        """Inverse of `str`: ``[(coeff)*]T[window] + ...`` or ``0``."""
        if text.strip() == "0":
            return cls(n)
        cur = Cursor(text)
        terms: dict = {}
        while True:
            c = IntLaurent1(1)
            if cur.accept("("):
                c = parse_scalar_at(cur, {"q": IntLaurent1.q()}, IntLaurent1.coerce)
                cur.expect(")")
                cur.expect("*")
            cur.expect("T")
            cur.expect("[")
            w = [cur.signed_int()]
            while cur.accept(","):
                w.append(cur.signed_int())
            cur.expect("]")
            if len(w) != n:
                raise StrandMismatch(f"T{w} does not have {n} strands")
            _acc(terms, AffinePermutation(tuple(w)).window, c)
            if not cur.accept("+"):
                break
        cur.expect_end()
        return cls._raw(n, {w: c for w, c in terms.items() if c})


def _mul_T(terms: dict, i: int, e: int) -> dict:
    out: dict = {}
    for w, c in terms.items():
        ws = _swap_right(w, i)
        desc = _right_descent(w, i)
        _acc(out, ws, c)
        if e > 0 and desc:
            _acc(out, w, QDIFF * c)
        elif e < 0 and not desc:
            _acc(out, w, -(QDIFF * c))
    return out


def _mul_Omega(terms: dict, k: int) -> dict:
    return {_rotate_right(w, k): c for w, c in terms.items()}


def y_letters(i: int, n: int, k: int) -> list:
    """Letters of y_i^k = (T_{i-1}^-1 ... T_1^-1 Omega T_{n-1} ... T_i)^k."""
    if k >= 0:
        one = [("T", j, -1) for j in range(i - 1, 0, -1)] + [("Omega", 1)]
        one += [("T", j, 1) for j in range(n - 1, i - 1, -1)]
    else:
        one = [("T", j, -1) for j in range(i, n)] + [("Omega", -1)]
        one += [("T", j, 1) for j in range(1, i)]
    return one * abs(k)


def _apply(terms: dict, n: int, letter) -> dict:
    kind = letter[0]
    if kind == "T":
        _, i, e = letter
        if n < 2:
            raise IndexOutOfRange("AH_1 has no T generators")
        i %= n
        for _ in range(abs(e)):
            terms = _mul_T(terms, i, 1 if e > 0 else -1)
        return terms
    if kind == "Omega":
        return _mul_Omega(terms, letter[1]) if letter[1] else terms
    if kind == "Y":
        _, i, k = letter
        for sub in y_letters(i, n, k):
            terms = _apply(terms, n, sub)
        return terms
    if kind == "Id":
        return terms
    raise ValueError(f"unknown letter {letter!r}")


def mul_gen(x: HeckeElement, letter) -> HeckeElement:
    """Right multiplication by one letter: ("T", i, ±1), ("Omega", ±1) or ("Y", i, k)."""
    return HeckeElement._raw(x.n, _apply(x._t, x.n, letter))


def _basis_letters(w: tuple) -> list:
    k, word = _reduced_word(w)
    letters = [("Omega", k)] if k else []
    return letters + [("T", i, 1) for i in word]


def mul(x: HeckeElement, y: HeckeElement) -> HeckeElement:
    x._check(y)
    out: dict = {}
    for w, c in y._t.items():
        part = x._t
        for letter in _basis_letters(w):
            part = _apply(part, x.n, letter)
        for v, d in part.items():
            _acc(out, v, d * c)
    return HeckeElement._raw(x.n, out)


@dataclass(frozen=True)
class BraidWord:
    """
    Word in T_i^e (i mod n), Omega^e and Y_i^k on n strands.

    Letters are ``("T", i, e)``, ``("Omega", e)`` and ``("Y", i, k)``.
    """

    n: int
    letters: tuple = ()

    def __post_init__(self):
        for letter in self.letters:
            if letter[0] == "T":
                if self.n < 2 or not 0 <= letter[1] < self.n:
                    raise IndexOutOfRange(f"T{letter[1]} is not a generator of AH_{self.n}")
            elif letter[0] == "Y":
                if not 1 <= letter[1] <= self.n:
                    raise IndexOutOfRange(f"Y{letter[1]} is not a generator of AH_{self.n}")
            elif letter[0] != "Omega":
                raise ValueError(f"unknown letter {letter!r}")
        # zero exponents are the identity; dropping them makes equality structural
        letters = tuple(x for x in self.letters if x[-1] != 0)
        object.__setattr__(self, "letters", letters)

    def inverse(self) -> "BraidWord":
        inv = []
        for letter in reversed(self.letters):
            if letter[0] == "T":
                inv.append(("T", letter[1], -letter[2]))
            elif letter[0] == "Omega":
                inv.append(("Omega", -letter[1]))
            else:
                inv.append(("Y", letter[1], -letter[2]))
        return BraidWord(self.n, tuple(inv))

    def __add__(self, other: "BraidWord") -> "BraidWord":
        if self.n != other.n:
            raise StrandMismatch("braid words on different strand counts")
        return BraidWord(self.n, self.letters + other.letters)

    def __str__(self):
        if not self.letters:
            return "Id"
        out = []
        for letter in self.letters:
            if letter[0] == "T":
                out.append(f"T{letter[1]}" + ("" if letter[2] == 1 else f"^{letter[2]}"))
            elif letter[0] == "Omega":
                out.append("Omega" + ("" if letter[1] == 1 else f"^{letter[1]}"))
            else:
                out.append(f"Y{letter[1]}^{letter[2]}")
        return "*".join(out)

    @classmethod
    def parse(cls, text: str, n: int) -> "BraidWord":
        """
        word := atom {"*" atom};  atom := gen ["^" int];
        gen := "T" nat | "Y" nat | "Omega" | "Id"
        """
        cur = Cursor(text)
        letters = []
        expected = ("T<i>", "Y<i>", "Omega", "Id")
        while True:
            tok = cur.peek()
            if tok.kind != "name":
                cur.fail(f"unexpected {tok.text or 'end of input'!r}", expected)
            name = tok.text
            if name == "Id":
                cur.next()
                if cur.accept("^"):
                    cur.signed_int()
            elif name == "Omega":
                cur.next()
                e = cur.signed_int() if cur.accept("^") else 1
                if e:
                    letters.append(("Omega", e))
            elif name[0] in "TY" and name[1:].isdigit():
                pos = tok.pos
                cur.next()
                i = int(name[1:])
                e = cur.signed_int() if cur.accept("^") else 1
                if name[0] == "T":
                    if n < 2 or not 0 <= i < n:
                        raise IndexOutOfRange(f"T{i} at position {pos} is not a generator of AH_{n}")
                    if e:
                        letters.append(("T", i, e))
                else:
                    if not 1 <= i <= n:
                        raise IndexOutOfRange(f"Y{i} at position {pos} is not a generator of AH_{n}")
                    if e:
                        letters.append(("Y", i, e))
            else:
                cur.fail(f"unknown generator {name!r}", expected)
            if not cur.accept("*"):
                break
        cur.expect_end()
        return cls(n, tuple(letters))


def evaluate_word(word: BraidWord) -> HeckeElement:
    terms = HeckeElement.one(word.n)._t
    for letter in word.letters:
        terms = _apply(terms, word.n, letter)
    return HeckeElement._raw(word.n, terms)


@dataclass(frozen=True)
class EWord:
    """Star product E_{d^1} * ... * E_{d^r}; each factor is an integer vector of length >= 1."""

    factors: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        factors = tuple(tuple(int(x) for x in f) for f in self.factors)
        if any(len(f) == 0 for f in factors):
            raise ValueError("E-word factors must be non-empty")
        object.__setattr__(self, "factors", factors)

    @property
    def strands(self) -> int:
        return sum(len(f) for f in self.factors)

    def __add__(self, other: "EWord") -> "EWord":
        return EWord(self.factors + other.factors)

    def __str__(self):
        if not self.factors:
            return "1"
        return "*".join("E(" + ",".join(map(str, f)) + ")" for f in self.factors)

    @classmethod
    def parse(cls, text: str) -> "EWord":
        cur = Cursor(text)
        word = parse_eword_at(cur)
        cur.expect_end()
        return word


def parse_eword_at(cur: Cursor) -> EWord:
    """eexpr := eterm {"*" eterm};  eterm := "E(" int {"," int} ")"."""
    factors = []
    while True:
        cur.expect("E")
        cur.expect("(")
        f = [cur.signed_int()]
        while cur.accept(","):
            f.append(cur.signed_int())
        cur.expect(")")
        factors.append(tuple(f))
        if not (cur.at("*") and cur.peek(1).text == "E"):
            break
        cur.next()
    return EWord(tuple(factors))


def e_word_to_braid(e: EWord) -> BraidWord:
    """Y_1^{d_1} ... Y_N^{d_N} followed by the Coxeter blocks T_{[a, b]} = T_a ... T_{b-1}."""
    flat = [x for f in e.factors for x in f]
    n = len(flat)
    letters = [("Y", j, k) for j, k in enumerate(flat, start=1) if k]
    start = 1
    for f in e.factors:
        letters.extend(("T", j, 1) for j in range(start, start + len(f) - 1))
        start += len(f)
    return BraidWord(n, tuple(letters))
