"""
Reduction of Hecke algebra elements to the cocenter Tr(AH_n) = AH_n / [AH_n, AH_n].

Classes [T_v] of minimal-length conjugacy representatives form a basis, and
two such representatives of one class give the same basis vector.  Basis
vectors are labelled by `ConvexPath`.

Non-minimal elements are reduced by searching their length-preserving
conjugation orbit (by simple reflections and by pi) for an element u with
l(s_i u s_i) = l(u) - 2, then using

    [T_u] = [T_{u'}] + (q - q^-1) [T_{s_i u'}],   u' = s_i u s_i.
"""

from collections import deque
from functools import lru_cache

from .affine_weyl import (
    AffinePermutation, ConvexPath, _left_simple, _length, _path_of_window, _rotate_right,
    _swap_right,
)
from .errors import StrandMismatch
from .hecke import QDIFF, EWord, HeckeElement, e_word_to_braid, evaluate_word
from .parsing import Cursor, parse_scalar_at
from .ring import IntLaurent1

__all__ = ["CocenterVector", "find_length_drop", "class_of", "e_class", "class_of_basis"]


class CocenterVector:
    """Coordinates in the convex-path basis of Tr(AH_n)."""

    __slots__ = ("n", "_c")

    def __init__(self, n: int, coords=None):
        self.n = n
        self._c = {}
        for path, c in (coords or {}).items():
            if not isinstance(path, ConvexPath):
                path = ConvexPath(tuple(path))
            if path.strands != n:
                raise StrandMismatch(f"path {path} does not have {n} strands")
            c = IntLaurent1.coerce(c)
            if c:
                prev = self._c.get(path)
                s = c if prev is None else prev + c
                if s:
                    self._c[path] = s
                else:
                    self._c.pop(path, None)

    @classmethod
    def _raw(cls, n: int, coords: dict) -> "CocenterVector":
        obj = object.__new__(cls)
        obj.n = n
        obj._c = coords
        return obj

    @property
    def coords(self) -> dict:
        return dict(self._c)

    def items(self):
        return self._c.items()

    def __getitem__(self, path) -> IntLaurent1:
        if not isinstance(path, ConvexPath):
            path = ConvexPath(tuple(path))
        return self._c.get(path, IntLaurent1())

    def __bool__(self):
        return bool(self._c)

    def is_zero(self) -> bool:
        return not self._c

    def __eq__(self, other):
        if not isinstance(other, CocenterVector):
            return NotImplemented
        return self.n == other.n and self._c == other._c

    def __hash__(self):
        return hash((self.n, frozenset(self._c.items())))

    def __add__(self, other):
        if not isinstance(other, CocenterVector):
            return NotImplemented
        if self.n != other.n:
            raise StrandMismatch(f"Tr(AH_{self.n}) and Tr(AH_{other.n}) do not add")
        out = dict(self._c)
        _merge(out, other._c)
        return CocenterVector._raw(self.n, out)

    def __neg__(self):
        return CocenterVector._raw(self.n, {p: -c for p, c in self._c.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "CocenterVector":
        c = IntLaurent1.coerce(c)
        if not c:
            return CocenterVector._raw(self.n, {})
        return CocenterVector._raw(self.n, {p: x * c for p, x in self._c.items()})

    def __rmul__(self, c):
        if isinstance(c, (int, IntLaurent1)):
            return self.scale(c)
        return NotImplemented

    def lines(self) -> list[str]:
        return [f"{p}: {self._c[p]}" for p in sorted(self._c)]

    def __str__(self):
        if not self._c:
            return "0"
        return "\n".join(self.lines())

    def __repr__(self):
        return f"CocenterVector(n={self.n}, {{{'; '.join(self.lines())}}})"

    @classmethod
    def parse(cls, text: str, n: int) -> "CocenterVector":
        """Inverse of `str`: one ``path: coefficient`` per line (or ``;``-separated), or ``0``."""
        from .affine_weyl import parse_path_at

        stripped = text.strip()
        if stripped == "0":
            return cls(n)
        coords = {}
        for chunk in stripped.replace(";", "\n").splitlines():
            if not chunk.strip():
                continue
            cur = Cursor(chunk)
            path = parse_path_at(cur)
            cur.expect(":")
            coeff = parse_scalar_at(cur, {"q": IntLaurent1.q()}, IntLaurent1.coerce)
            cur.expect_end()
            coords[path] = coords.get(path, IntLaurent1()) + coeff
        return cls(n, coords)


def _merge(out: dict, other: dict, scale=None):
    for p, c in other.items():
        if scale is not None:
            c = c * scale
        prev = out.get(p)
        s = c if prev is None else prev + c
        if s:
            out[p] = s
        else:
            out.pop(p, None)


def _conjugates(w: tuple):
    """Length-preserving neighbours: s_i w s_i for all i, and pi^{±1} w pi^{∓1}."""
    n = len(w)
    if n >= 2:
        for i in range(n):
            yield ("s", i), _left_simple(_swap_right(w, i), i)
    yield ("pi", 1), _rotate_right(tuple(x + 1 for x in w), -1)
    yield ("pi", -1), _rotate_right(tuple(x - 1 for x in w), 1)


def _find_drop(w: tuple, order=None):
    ell = _length(w)
    if ell < 2:
        return None
    seen = {w}
    queue = deque([w])
    while queue:
        u = queue.popleft()
        moves = list(_conjugates(u))
        if order is not None:
            moves = order(moves)
        for (kind, i), c in moves:
            lc = _length(c)
            if kind == "s" and lc == ell - 2:
                return u, i
            if lc == ell and c not in seen:
                seen.add(c)
                queue.append(c)
    return None


def find_length_drop(v: AffinePermutation):
    """
    Breadth-first search of the length-preserving conjugation orbit of v.

    Returns ``(u, i)`` with l(s_i u s_i) = l(u) - 2, or None when v already has
    minimal length in its conjugacy class.
    """
    found = _find_drop(v.window)
    if found is None:
        return None
    u, i = found
    return AffinePermutation(u), i


@lru_cache(maxsize=None)
def _class_of_window(w: tuple) -> tuple:
    found = _find_drop(w)
    if found is None:
        return ((_path_of_window(w), IntLaurent1(1)),)
    u, i = found
    u1 = _left_simple(_swap_right(u, i), i)
    out = dict(_class_of_window(u1))
    _merge(out, dict(_class_of_window(_left_simple(u1, i))), QDIFF)
    return tuple(out.items())


def _class_of_window_order(w: tuple, order) -> dict:
    """Uncached variant with a caller-chosen neighbour order; used to test order independence."""
    found = _find_drop(w, order)
    if found is None:
        return {_path_of_window(w): IntLaurent1(1)}
    u, i = found
    u1 = _left_simple(_swap_right(u, i), i)
    out = _class_of_window_order(u1, order)
    _merge(out, _class_of_window_order(_left_simple(u1, i), order), QDIFF)
    return out


def class_of_basis(v: AffinePermutation) -> CocenterVector:
    return CocenterVector._raw(v.n, dict(_class_of_window(v.window)))


def class_of(x: HeckeElement, order=None) -> CocenterVector:
    """
    Cocenter coordinates of x.

    `order`, if given, permutes the neighbour list of every search step; the
    result must not depend on it.
    """
    out: dict = {}
    for w, c in x.items():
        if order is None:
            part = dict(_class_of_window(w))
        else:
            part = _class_of_window_order(w, order)
        _merge(out, part, c)
    return CocenterVector._raw(x.n, out)


@lru_cache(maxsize=None)
def e_class(e: EWord) -> CocenterVector:
    return class_of(evaluate_word(e_word_to_braid(e)))
