"""
The extended affine symmetric group in window notation.

An element is an n-periodic bijection v of Z, v(i + n) = v(i) + n, stored as
its window (v(1), ..., v(n)).  Composition is ``(u * v)(i) = u(v(i))``, so a
generator word is evaluated left to right as a product of maps.

>>> pi = AffinePermutation.rotation(2)
>>> (pi * AffinePermutation.simple(1, 2)).window
(3, 2)
>>> print(convex_path(pi))
[(2,1)]
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations

from .errors import IndexOutOfRange, StrandMismatch
from .parsing import Cursor

__all__ = [
    "AffinePermutation", "GeneratorWord", "ConvexPath",
    "compose", "inverse", "from_word", "length", "length_by_descents",
    "degree", "translation_finite_factor", "newton_point", "convex_path",
    "reduced_word", "staircase",
]


def _eval(window: tuple, m: int) -> int:
    n = len(window)
    r = (m - 1) % n
    return window[r] + (m - 1 - r)


@dataclass(frozen=True)
class AffinePermutation:
    window: tuple[int, ...]

    def __post_init__(self):
        window = tuple(int(x) for x in self.window)
        object.__setattr__(self, "window", window)
        n = len(window)
        if n < 1:
            raise ValueError("an affine permutation needs at least one strand")
        if sorted(x % n for x in window) != list(range(n)):
            raise ValueError(f"window {window} is not a complete residue system mod {n}")

    @property
    def n(self) -> int:
        return len(self.window)

    def __call__(self, m: int) -> int:
        return _eval(self.window, m)

    def __mul__(self, other: "AffinePermutation") -> "AffinePermutation":
        return compose(self, other)

    def __pow__(self, k: int) -> "AffinePermutation":
        base = self if k >= 0 else inverse(self)
        result = AffinePermutation.identity(self.n)
        for _ in range(abs(k)):
            result = result * base
        return result

    def __str__(self):
        return "[" + ",".join(map(str, self.window)) + "]"

    @classmethod
    def identity(cls, n: int) -> "AffinePermutation":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def simple(cls, i: int, n: int) -> "AffinePermutation":
        """s_i, swapping i and i+1 periodically (i taken mod n)."""
        if n < 2:
            raise IndexOutOfRange("simple reflections need n >= 2")
        return cls(_swap_right(tuple(range(1, n + 1)), i % n))

    @classmethod
    def rotation(cls, n: int, k: int = 1) -> "AffinePermutation":
        """pi^k : m -> m + k."""
        return cls(tuple(i + k for i in range(1, n + 1)))

    @classmethod
    def translation(cls, d) -> "AffinePermutation":
        """y^d : m -> m + n*d_r where r = m mod n."""
        n = len(d)
        return cls(tuple(i + n * d[i - 1] for i in range(1, n + 1)))

    @classmethod
    def parse(cls, text: str) -> "AffinePermutation":
        cur = Cursor(text)
        cur.expect("[")
        vals = [cur.signed_int()]
        while cur.accept(","):
            vals.append(cur.signed_int())
        cur.expect("]")
        cur.expect_end()
        return cls(tuple(vals))


def _swap_right(window: tuple, i: int) -> tuple:
    """Window of v * s_i for 0 <= i < n."""
    n = len(window)
    w = list(window)
    if i == 0:
        w[0], w[n - 1] = window[n - 1] - n, window[0] + n
    else:
        w[i - 1], w[i] = window[i], window[i - 1]
    return tuple(w)


def _rotate_right(window: tuple, k: int) -> tuple:
    """Window of v * pi^k."""
    n = len(window)
    return tuple(_eval(window, i + k) for i in range(1, n + 1))


def _right_descent(window: tuple, i: int) -> bool:
    """True iff l(v s_i) < l(v), i.e. v(i) > v(i+1)."""
    if i == 0:
        return window[-1] - len(window) > window[0]
    return window[i - 1] > window[i]


def _left_simple(window: tuple, i: int) -> tuple:
    """Window of s_i * v: swap the values congruent to i and i+1."""
    n = len(window)
    out = []
    for x in window:
        r = x % n
        if r == i:
            out.append(x + 1)
        elif r == (i + 1) % n:
            out.append(x - 1)
        else:
            out.append(x)
    return tuple(out)


def _length(window: tuple) -> int:
    n = len(window)
    return sum(abs((window[j] - window[i]) // n) for i, j in combinations(range(n), 2))


def _degree(window: tuple) -> int:
    n = len(window)
    return (sum(window) - n * (n + 1) // 2) // n


def compose(u: AffinePermutation, v: AffinePermutation) -> AffinePermutation:
    if u.n != v.n:
        raise StrandMismatch(f"cannot compose elements on {u.n} and {v.n} strands")
    return AffinePermutation(tuple(_eval(u.window, x) for x in v.window))


def inverse(u: AffinePermutation) -> AffinePermutation:
    n = u.n
    inv = [0] * n
    for i, x in enumerate(u.window, start=1):
        r = (x - 1) % n
        # u(i) = x  =>  u^{-1}(r+1) = i - (x - 1 - r)
        inv[r] = i - (x - 1 - r)
    return AffinePermutation(tuple(inv))


def length(v: AffinePermutation) -> int:
    return _length(v.window)


def length_by_descents(v: AffinePermutation) -> int:
    """Count right-descent strips down to a pure rotation; independent of the inversion formula."""
    w = v.window
    count = 0
    n = len(w)
    while True:
        for i in range(n):
            if _right_descent(w, i):
                w = _swap_right(w, i)
                count += 1
                break
        else:
            return count


def degree(v: AffinePermutation) -> int:
    return _degree(v.window)


def reduced_word(v: AffinePermutation) -> tuple[int, list[int]]:
    """
    Canonical reduced expression v = pi^k s_{i_1} ... s_{i_l}.

    Right descents are stripped greedily (smallest index first); what remains
    is the rotation pi^k.
    """
    return _reduced_word(v.window)


def _reduced_word(w: tuple) -> tuple[int, list[int]]:
    n = len(w)
    letters = []
    while True:
        for i in range(n):
            if _right_descent(w, i):
                w = _swap_right(w, i)
                letters.append(i)
                break
        else:
            break
    letters.reverse()
    return _degree(w), letters


def translation_finite_factor(v: AffinePermutation) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """
    Split v = y^d * w with w in S_n.

    Returns (d, w) where w is in one-line notation on 1..n.
    """
    return _factor(v.window)


def _factor(window: tuple):
    n = len(window)
    w = tuple((x - 1) % n + 1 for x in window)
    d = [0] * n
    for i, x in enumerate(window, start=1):
        d[w[i - 1] - 1] = (x - w[i - 1]) // n
    return tuple(d), w


def _cycles(w: tuple) -> list[list[int]]:
    seen = set()
    cycles = []
    for start in range(1, len(w) + 1):
        if start in seen:
            continue
        cyc = []
        j = start
        while j not in seen:
            seen.add(j)
            cyc.append(j)
            j = w[j - 1]
        cycles.append(cyc)
    return cycles


def newton_point(v: AffinePermutation) -> tuple[Fraction, ...]:
    d, w = _factor(v.window)
    parts = []
    for cyc in _cycles(w):
        m = sum(d[j - 1] for j in cyc)
        parts.extend([Fraction(m, len(cyc))] * len(cyc))
    return tuple(sorted(parts, reverse=True))


def _slope_key(step):
    ell, m = step
    return (Fraction(m, ell), ell, m)


@dataclass(frozen=True)
class ConvexPath:
    """Multiset of steps (cycle length, cycle sum), sorted by slope, then (length, sum)."""

    steps: tuple[tuple[int, int], ...]

    def __post_init__(self):
        steps = tuple((int(a), int(b)) for a, b in self.steps)
        if not steps:
            raise ValueError("a convex path needs at least one step")
        if any(a < 1 for a, _ in steps):
            raise ValueError("step lengths must be positive")
        object.__setattr__(self, "steps", tuple(sorted(steps, key=_slope_key)))

    @property
    def strands(self) -> int:
        return sum(a for a, _ in self.steps)

    def slopes(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(m, ell) for ell, m in self.steps)

    def sort_key(self):
        return (self.strands, tuple(_slope_key(s) for s in self.steps))

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __str__(self):
        return "[" + ",".join(f"({a},{b})" for a, b in self.steps) + "]"

    @classmethod
    def parse(cls, text: str) -> "ConvexPath":
        cur = Cursor(text)
        path = parse_path_at(cur)
        cur.expect_end()
        return path


def parse_path_at(cur: Cursor) -> ConvexPath:
    cur.expect("[")
    steps = []
    while True:
        cur.expect("(")
        a = cur.signed_int()
        cur.expect(",")
        b = cur.signed_int()
        cur.expect(")")
        steps.append((a, b))
        if not cur.accept(","):
            break
    cur.expect("]")
    return ConvexPath(tuple(steps))


def convex_path(v: AffinePermutation) -> ConvexPath:
    return _path_of_window(v.window)


def _path_of_window(window: tuple) -> ConvexPath:
    d, w = _factor(window)
    return ConvexPath(tuple((len(c), sum(d[j - 1] for j in c)) for c in _cycles(w)))


def staircase(m: int, n: int) -> tuple[int, ...]:
    """d_i = floor(m i / n) - floor(m (i-1) / n), i = 1..n."""
    return tuple((m * i) // n - (m * (i - 1)) // n for i in range(1, n + 1))


@dataclass(frozen=True)
class GeneratorWord:
    """
    Word in s_i (i mod n), pi^k and y_i^k.

    Letters are tuples ``("s", i)``, ``("pi", k)`` and ``("y", i, k)``.
    """

    n: int
    letters: tuple = ()

    def __post_init__(self):
        for letter in self.letters:
            kind = letter[0]
            if kind == "s":
                if self.n < 2 or not 0 <= letter[1] < self.n:
                    raise IndexOutOfRange(f"s{letter[1]} is not a generator for n={self.n}")
            elif kind == "y":
                if not 1 <= letter[1] <= self.n:
                    raise IndexOutOfRange(f"y{letter[1]} is not a generator for n={self.n}")
            elif kind != "pi":
                raise ValueError(f"unknown letter {letter!r}")

    def __str__(self):
        if not self.letters:
            return "Id"
        out = []
        for letter in self.letters:
            if letter[0] == "s":
                out.append(f"s{letter[1]}")
            elif letter[0] == "pi":
                out.append("pi" if letter[1] == 1 else f"pi^{letter[1]}")
            else:
                out.append(f"y{letter[1]}^{letter[2]}")
        return "*".join(out)

    @classmethod
    def parse(cls, text: str, n: int) -> "GeneratorWord":
        """Grammar: ``atom {"*" atom}`` with atoms ``s<i>``, ``pi[^k]``, ``y<i>[^k]``, ``Id``."""
        cur = Cursor(text)
        letters = []
        while True:
            tok = cur.peek()
            if tok.kind != "name":
                cur.fail(f"unexpected {tok.text or 'end of input'!r}", ("s<i>", "pi", "y<i>", "Id"))
            name = tok.text
            if name == "Id":
                cur.next()
            elif name == "pi":
                cur.next()
                k = cur.signed_int() if cur.accept("^") else 1
                letters.append(("pi", k))
            elif name[0] in "sy" and name[1:].isdigit():
                cur.next()
                i = int(name[1:])
                if name[0] == "s":
                    if cur.at("^"):
                        cur.fail("s_i does not take an exponent", ("'*'", "end of input"))
                    if n < 2 or not 0 <= i < n:
                        raise IndexOutOfRange(f"s{i} is not a generator for n={n}")
                    letters.append(("s", i))
                else:
                    k = cur.signed_int() if cur.accept("^") else 1
                    if not 1 <= i <= n:
                        raise IndexOutOfRange(f"y{i} is not a generator for n={n}")
                    letters.append(("y", i, k))
            else:
                cur.fail(f"unknown generator {name!r}", ("s<i>", "pi", "y<i>", "Id"))
            if not cur.accept("*"):
                break
        cur.expect_end()
        return cls(n, tuple(letters))


def from_word(word: GeneratorWord) -> AffinePermutation:
    n = word.n
    w = tuple(range(1, n + 1))
    for letter in word.letters:
        if letter[0] == "s":
            w = _swap_right(w, letter[1])
        elif letter[0] == "pi":
            w = _rotate_right(w, letter[1])
        else:
            _, i, k = letter
            d = [0] * n
            d[i - 1] = k
            y = AffinePermutation.translation(d).window
            w = tuple(_eval(w, x) for x in y)
    return AffinePermutation(w)
