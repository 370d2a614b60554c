"""Finitely presented target algebras for the Zhu reductions.

Three algebras are provided:

* ``VB``: ℂ[x] ⊕ ℂy with y² = 0, xy = Ny, yx = -Ny.
* ``VA1``: the five-dimensional algebra with basis 1, x, x², y, z, obtained
  from U(sl₂)/⟨e²⟩ via e ↦ y, f ↦ z, h ↦ x.
* ``AP``: generated by x, y, xa, xna, xb, xab. Elements are stored as
  Σ H·f_H(x, y) with a head H ∈ {1, xa, xna, xb, xab} and a commuting
  polynomial f_H to its right, reduced by the right relations of each head.

Basis words are tuples of ``(symbol, exponent)`` pairs; the unit is ``()``.
"""

from __future__ import annotations

import random
import re
from fractions import Fraction
from math import comb
from typing import Callable, Sequence

from .errors import VOAError

Word = tuple


def _word_str(word: Word) -> str:
    if not word:
        return "1"
    return "*".join(s if e == 1 else f"{s}^{e}" for s, e in word)


def format_coeffs(coeffs: dict, key: Callable) -> str:
    if not coeffs:
        return "0"
    parts = []
    for i, w in enumerate(sorted(coeffs, key=key)):
        c = Fraction(coeffs[w])
        body = _word_str(w)
        mag = abs(c)
        if i == 0:
            if c == 1:
                text = body
            elif c == -1:
                text = "-" + body if w else "-1"
            else:
                text = f"{c}*{body}" if w else str(c)
        else:
            sep = " - " if c < 0 else " + "
            text = sep + (body if mag == 1 else (f"{mag}*{body}" if w else str(mag)))
        parts.append(text)
    return "".join(parts)


class NormalFormElement:
    """An element of a presented algebra written in its canonical basis."""

    __slots__ = ("algebra", "coeffs")

    def __init__(self, algebra: "Algebra", coeffs: dict | None = None):
        self.algebra = algebra
        self.coeffs = {w: Fraction(c) for w, c in (coeffs or {}).items() if c}

    @property
    def tag(self) -> str:
        return self.algebra.tag

    def _check(self, other: "NormalFormElement") -> None:
        if not isinstance(other, NormalFormElement) or other.algebra != self.algebra:
            raise VOAError("TAG_MISMATCH", f"{self.tag} vs {getattr(other, 'tag', type(other).__name__)}")

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        self._check(other)
        out = dict(self.coeffs)
        for w, c in other.coeffs.items():
            out[w] = out.get(w, 0) + c
        return NormalFormElement(self.algebra, out)

    __radd__ = __add__

    def __neg__(self):
        return NormalFormElement(self.algebra, {w: -c for w, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, NormalFormElement):
            return self.algebra.mul(self, other)
        return NormalFormElement(self.algebra, {w: c * other for w, c in self.coeffs.items()})

    def __rmul__(self, scalar):
        return NormalFormElement(self.algebra, {w: c * scalar for w, c in self.coeffs.items()})

    def __pow__(self, k: int):
        out = self.algebra.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.coeffs
        if not isinstance(other, NormalFormElement):
            return NotImplemented
        return self.algebra == other.algebra and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.algebra, frozenset(self.coeffs.items())))

    def is_zero(self) -> bool:
        return not self.coeffs

    def __str__(self) -> str:
        return format_coeffs(self.coeffs, self.algebra.word_key)

    def __repr__(self) -> str:
        return f"<{self.tag} {self}>"


class Algebra:
    tag = ""

    def element(self, coeffs: dict) -> NormalFormElement:
        return NormalFormElement(self, self.normalize(coeffs))

    def normalize(self, coeffs: dict) -> dict:
        return {w: Fraction(c) for w, c in coeffs.items() if c}

    def one(self) -> NormalFormElement:
        return NormalFormElement(self, {(): 1})

    def zero(self) -> NormalFormElement:
        return NormalFormElement(self, {})

    def mul(self, u: NormalFormElement, v: NormalFormElement) -> NormalFormElement:
        u._check(v)
        if u.algebra is not self:
            raise VOAError("TAG_MISMATCH", f"{u.tag} vs {self.tag}")
        out: dict = {}
        for w1, c1 in u.coeffs.items():
            for w2, c2 in v.coeffs.items():
                for w, c in self.mul_words(w1, w2).items():
                    out[w] = out.get(w, 0) + c * c1 * c2
        return NormalFormElement(self, out)

    def mul_words(self, w1: Word, w2: Word) -> dict:
        raise NotImplementedError

    def word_key(self, w: Word):
        return (len(w), w)

    def gen(self, name: str) -> NormalFormElement:
        raise NotImplementedError

    def parse(self, text: str) -> NormalFormElement:
        return parse_normal_form(self, text)


class VBAlgebra(Algebra):
    """ℂ[x] ⊕ ℂy with y² = 0, x·y = N·y, y·x = -N·y."""

    tag = "VB"

    def __init__(self, N: int):
        self.N = N

    def __eq__(self, other):
        return isinstance(other, VBAlgebra) and other.N == self.N

    def __hash__(self):
        return hash(("VB", self.N))

    @staticmethod
    def xpow(k: int) -> Word:
        return (("x", k),) if k else ()

    def mul_words(self, w1, w2):
        y1 = w1 == (("y", 1),)
        y2 = w2 == (("y", 1),)
        if y1 and y2:
            return {}
        if y2:
            return {w2: self.N ** _xdeg(w1)}
        if y1:
            return {w1: (-self.N) ** _xdeg(w2)}
        return {self.xpow(_xdeg(w1) + _xdeg(w2)): 1}

    def word_key(self, w):
        return (1, 0) if w == (("y", 1),) else (0, _xdeg(w))

    def gen(self, name):
        if name == "x":
            return NormalFormElement(self, {(("x", 1),): 1})
        if name == "y":
            return NormalFormElement(self, {(("y", 1),): 1})
        if name == "1":
            return self.one()
        raise VOAError("UNKNOWN_NAME", name)

    def normalize(self, coeffs):
        for w in coeffs:
            if not (w == (("y", 1),) or all(s == "x" for s, _ in w)):
                raise VOAError("PARSE_ERROR", f"{_word_str(w)} is not a VB basis word")
        return super().normalize(coeffs)


def _xdeg(w: Word) -> int:
    return sum(e for s, e in w if s == "x")


_X, _X2, _Y, _Z = (("x", 1),), (("x", 2),), (("y", 1),), (("z", 1),)
_HALF = Fraction(1, 2)

# Products of basis words in the algebra with basis 1, x, x², y, z.
_VA1_TABLE = {
    (_X, _X): {_X2: 1}, (_X, _X2): {_X: 1}, (_X, _Y): {_Y: 1}, (_X, _Z): {_Z: -1},
    (_X2, _X): {_X: 1}, (_X2, _X2): {_X2: 1}, (_X2, _Y): {_Y: 1}, (_X2, _Z): {_Z: 1},
    (_Y, _X): {_Y: -1}, (_Y, _X2): {_Y: 1}, (_Y, _Y): {}, (_Y, _Z): {_X2: _HALF, _X: _HALF},
    (_Z, _X): {_Z: 1}, (_Z, _X2): {_Z: 1}, (_Z, _Y): {_X2: _HALF, _X: -_HALF}, (_Z, _Z): {},
}


class VA1Algebra(Algebra):
    """Basis 1, x, x², y, z with x³ = x, y² = z² = 0, yz = (x²+x)/2, zy = (x²-x)/2."""

    tag = "VA1"
    basis = ((), _X, _X2, _Y, _Z)

    def __eq__(self, other):
        return isinstance(other, VA1Algebra)

    def __hash__(self):
        return hash("VA1")

    def mul_words(self, w1, w2):
        if not w1:
            return {w2: 1}
        if not w2:
            return {w1: 1}
        return _VA1_TABLE[(w1, w2)]

    def word_key(self, w):
        return self.basis.index(w)

    def gen(self, name):
        table = {"1": (), "x": _X, "y": _Y, "z": _Z}
        if name not in table:
            raise VOAError("UNKNOWN_NAME", name)
        return NormalFormElement(self, {table[name]: 1})

    def normalize(self, coeffs):
        out: dict = {}
        for w, c in coeffs.items():
            if w in self.basis:
                out[w] = out.get(w, 0) + c
            elif all(s == "x" for s, _ in w):
                k = _xdeg(w)
                red = (("x", 2 - k % 2),)
                out[red] = out.get(red, 0) + c
            else:
                raise VOAError("PARSE_ERROR", f"{_word_str(w)} is not a VA1 basis word")
        return super().normalize(out)


# ---------------------------------------------------------------------------
# A_P

HEADS = ("", "xa", "xna", "xb", "xab")
J_HEADS = ("xb", "xab")


def _padd(acc: dict, poly: dict, scale=1) -> None:
    for k, c in poly.items():
        v = acc.get(k, 0) + c * scale
        if v:
            acc[k] = v
        else:
            acc.pop(k, None)


def _pmul(p: dict, q: dict) -> dict:
    out: dict = {}
    for (i1, j1), c1 in p.items():
        for (i2, j2), c2 in q.items():
            _padd(out, {(i1 + i2, j1 + j2): c1 * c2})
    return out


def _ppow(p: dict, k: int) -> dict:
    out = {(0, 0): Fraction(1)}
    for _ in range(k):
        out = _pmul(out, p)
    return out


def _subst(poly: dict, xs: dict, ys: dict) -> dict:
    """poly(xs, ys) for polynomials xs, ys in x and y."""
    out: dict = {}
    for (i, j), c in poly.items():
        _padd(out, _pmul(_ppow(xs, i), _ppow(ys, j)), c)
    return out


_PX = {(1, 0): 1}
_PY = {(0, 1): 1}

# f(x, y)·H = H·f(sx, sy)
_LEFT_PASS = {
    "xa": ({(0, 0): 1}, {(0, 1): 1, (0, 0): -1}),
    "xna": ({(0, 0): -1}, {(0, 1): 1, (0, 0): 1}),
    "xb": ({(1, 0): 1, (0, 0): -1}, {(0, 1): 1, (0, 0): 2}),
    "xab": ({(1, 0): 1, (0, 0): 1}, {(0, 1): 1, (0, 0): 1}),
}

# Head products H1·H2 = Σ H3·g(x, y)
_HEAD_TABLE = {
    ("xa", "xna"): [("", {(2, 0): _HALF, (1, 0): _HALF})],
    ("xna", "xa"): [("", {(2, 0): _HALF, (1, 0): -_HALF})],
    ("xa", "xb"): [("xab", {(0, 1): -1})],
    ("xb", "xa"): [("xab", {(0, 1): -1, (0, 0): -1})],
    ("xna", "xab"): [("xb", {(1, 0): -1, (0, 0): 1})],
    ("xab", "xna"): [("xb", {(1, 0): -1})],
}


def _reduce_head(head: str, poly: dict) -> dict:
    """Right-normal form of head·poly as {(i, j): c}."""
    out: dict = {}
    if head == "":
        for (i, j), c in poly.items():
            i = i if i < 3 else 2 - i % 2
            _padd(out, {(i, j): c})
    elif head == "xa":
        for (i, j), c in poly.items():
            _padd(out, {(0, j): c * (-1) ** i})
    elif head == "xna":
        for (i, j), c in poly.items():
            _padd(out, {(0, j): c})
    elif head == "xb":
        for (i, j), c in poly.items():
            _padd(out, {(min(i, 1), 0): c * (-1) ** j})
    elif head == "xab":
        flat = _subst(poly, _PX, {(0, 0): -1, (1, 0): -1})
        for (i, _), c in flat.items():
            if i == 0:
                _padd(out, {(0, 0): c})
            else:
                _padd(out, {(1, 0): c * (-1) ** (i - 1)})
    return out


def _to_word(head: str, i: int, j: int) -> Word:
    w = []
    if head:
        w.append((head, 1))
    if i:
        w.append(("x", i))
    if j:
        w.append(("y", j))
    return tuple(w)


def _from_word(w: Word) -> tuple[str, int, int]:
    head, i, j = "", 0, 0
    for pos, (s, e) in enumerate(w):
        if s in HEADS and s:
            if pos != 0 or e != 1:
                raise VOAError("PARSE_ERROR", f"{_word_str(w)} is not an AP word")
            head = s
        elif s == "x":
            i += e
        elif s == "y":
            j += e
        else:
            raise VOAError("UNKNOWN_NAME", s)
    return head, i, j


class APAlgebra(Algebra):
    """The presented algebra on x, y, xa, xna, xb, xab."""

    tag = "AP"
    generators = ("x", "y", "xa", "xna", "xb", "xab")

    def __eq__(self, other):
        return isinstance(other, APAlgebra)

    def __hash__(self):
        return hash("AP")

    def normalize(self, coeffs):
        grouped: dict = {}
        for w, c in coeffs.items():
            head, i, j = _from_word(w)
            _padd(grouped.setdefault(head, {}), {(i, j): Fraction(c)})
        out = {}
        for head, poly in grouped.items():
            for (i, j), c in _reduce_head(head, poly).items():
                out[_to_word(head, i, j)] = c
        return out

    def mul_words(self, w1, w2):
        h1, i1, j1 = _from_word(w1)
        h2, i2, j2 = _from_word(w2)
        if h2:
            sx, sy = _LEFT_PASS[h2]
            f1 = _subst({(i1, j1): 1}, sx, sy)
        else:
            f1 = {(i1, j1): 1}
        if not h1:
            heads = [(h2, {(0, 0): 1})]
        elif not h2:
            heads = [(h1, {(0, 0): 1})]
        else:
            heads = _HEAD_TABLE.get((h1, h2), [])
        out = {}
        for h3, g in heads:
            poly = _pmul(_pmul(g, f1), {(i2, j2): 1})
            for (i, j), c in _reduce_head(h3, poly).items():
                w = _to_word(h3, i, j)
                out[w] = out.get(w, 0) + c
        return out

    def word_key(self, w):
        head, i, j = _from_word(w)
        return (HEADS.index(head), i, j)

    def gen(self, name):
        if name == "1":
            return self.one()
        if name not in self.generators:
            raise VOAError("UNKNOWN_NAME", name)
        return NormalFormElement(self, {((name, 1),): 1})

    def word(self, head: str = "", i: int = 0, j: int = 0, coeff=1) -> NormalFormElement:
        return self.element({_to_word(head, i, j): coeff})


AP = APAlgebra()
VA1 = VA1Algebra()

J_WORDS = tuple(_to_word(h, i, 0) for h in J_HEADS for i in range(3))
BASE_WORDS = ((), _X, _X2, (("xa", 1),), (("xna", 1),))


def ap_decompose(u: NormalFormElement) -> tuple[NormalFormElement, NormalFormElement]:
    """Split an AP element into its A^P part and its J part."""
    if u.tag != "AP":
        raise VOAError("TAG_MISMATCH", "ap_decompose needs an AP element")
    u = u.algebra.element(u.coeffs)
    ap, j = {}, {}
    for w, c in u.coeffs.items():
        (j if _from_word(w)[0] in J_HEADS else ap)[w] = c
    return NormalFormElement(AP, ap), NormalFormElement(AP, j)


# ---------------------------------------------------------------------------
# Base ring R = span{1, x, x², xa, xna} and the skew-polynomial ring R[y; Id; δ]

_AP_TO_VA1 = {(): (), _X: _X, _X2: _X2, (("xa", 1),): _Y, (("xna", 1),): _Z}
_VA1_TO_AP = {v: k for k, v in _AP_TO_VA1.items()}
_DELTA_VA1 = {(): {}, _X: {}, _X2: {}, _Y: {_Y: -1}, _Z: {_Z: 1}}


def to_base_ring(u: NormalFormElement) -> NormalFormElement:
    """The VA1 element matching an AP element of R."""
    if u.tag == "VA1":
        return u
    u = AP.element(u.coeffs)
    out = {}
    for w, c in u.coeffs.items():
        if w not in _AP_TO_VA1:
            raise VOAError("OUT_OF_BASE_RING", f"{_word_str(w)} is not in span{{1, x, x^2, xa, xna}}")
        out[_AP_TO_VA1[w]] = c
    return NormalFormElement(VA1, out)


def from_base_ring(u: NormalFormElement) -> NormalFormElement:
    return NormalFormElement(AP, {_VA1_TO_AP[w]: c for w, c in u.coeffs.items()})


def delta(a: NormalFormElement) -> NormalFormElement:
    """δ = [y, ·] on R, defined basis-wise and extended linearly."""
    base = to_base_ring(a)
    out: dict = {}
    for w, c in base.coeffs.items():
        for w2, c2 in _DELTA_VA1[w].items():
            out[w2] = out.get(w2, 0) + c * c2
    res = NormalFormElement(VA1, out)
    return res if a.tag == "VA1" else from_base_ring(res)


class SkewPolyElement:
    """Σ_j a_j y^j with coefficients a_j in R (stored as VA1 elements)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: dict | None = None):
        self.coeffs = {j: a for j, a in (coeffs or {}).items() if not a.is_zero()}

    def __add__(self, other):
        out = dict(self.coeffs)
        for j, a in other.coeffs.items():
            out[j] = out[j] + a if j in out else a
        return SkewPolyElement(out)

    def __eq__(self, other):
        return isinstance(other, SkewPolyElement) and self.coeffs == other.coeffs

    def __mul__(self, other):
        return skew_mul(self, other)

    def __str__(self):
        if not self.coeffs:
            return "0"
        return " + ".join(f"({self.coeffs[j]})*y^{j}" for j in sorted(self.coeffs))

    __repr__ = __str__


def skew_mul(u: SkewPolyElement, v: SkewPolyElement) -> SkewPolyElement:
    """Product in R[y; Id; δ] using y^i b = Σ_k C(i,k) δ^k(b) y^(i-k)."""
    out: dict = {}
    for i, a in u.coeffs.items():
        for j, b in v.coeffs.items():
            db = b
            for k in range(i + 1):
                if k:
                    db = delta(db)
                if db.is_zero():
                    break
                term = (a * db) * comb(i, k)
                deg = i - k + j
                out[deg] = out[deg] + term if deg in out else term
    return SkewPolyElement(out)


def ap_to_skew(u: NormalFormElement) -> SkewPolyElement:
    """The basis-preserving map A^P → R[y; Id; δ]."""
    u = AP.element(u.coeffs)
    out: dict = {}
    for w, c in u.coeffs.items():
        head, i, j = _from_word(w)
        if head in J_HEADS:
            raise VOAError("OUT_OF_BASE_RING", f"{_word_str(w)} lies in J")
        base = _AP_TO_VA1[_to_word(head, i, 0)]
        out.setdefault(j, {})
        out[j][base] = out[j].get(base, 0) + c
    return SkewPolyElement({j: NormalFormElement(VA1, d) for j, d in out.items()})


def random_ap_element(rng: random.Random, terms: int = 3, max_y: int = 3, j_part: bool = True) -> NormalFormElement:
    heads = HEADS if j_part else HEADS[:3]
    coeffs = {}
    for _ in range(terms):
        head = rng.choice(heads)
        i = rng.randrange(3)
        j = rng.randrange(max_y + 1)
        coeffs[_to_word(head, i, j)] = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
    return AP.element(coeffs)


def random_ap_word(rng: random.Random, length: int) -> NormalFormElement:
    out = AP.one()
    for _ in range(length):
        out = out * AP.gen(rng.choice(APAlgebra.generators))
    return out


def iso_check(samples: int, seed: int) -> bool:
    """Does A^P → R[y; Id; δ] intertwine the two products on random pairs?"""
    rng = random.Random(seed)
    pairs = [(AP.one(), AP.one())]
    for _ in range(samples):
        pairs.append((random_ap_element(rng, j_part=False), random_ap_element(rng, j_part=False)))
    for u, v in pairs:
        if ap_to_skew(u * v) != ap_to_skew(u) * ap_to_skew(v):
            return False
    return True


# ---------------------------------------------------------------------------
# Defining relations of A_P, as noncommutative polynomials equal to zero


def _rel(*terms) -> tuple:
    return tuple((Fraction(c), tuple(w.split())) for c, w in terms)


RELATIONS: tuple[tuple[str, tuple], ...] = (
    ("x*xa = xa", _rel((1, "x xa"), (-1, "xa"))),
    ("x*xna = -xna", _rel((1, "x xna"), (1, "xna"))),
    ("xa*x = -xa", _rel((1, "xa x"), (1, "xa"))),
    ("xna*x = xna", _rel((1, "xna x"), (-1, "xna"))),
    ("xa*xna = x^2/2 + x/2", _rel((1, "xa xna"), (-_HALF, "x x"), (-_HALF, "x"))),
    ("xna*xa = x^2/2 - x/2", _rel((1, "xna xa"), (-_HALF, "x x"), (_HALF, "x"))),
    ("x*y = y*x", _rel((1, "x y"), (-1, "y x"))),
    ("x^3 = x", _rel((1, "x x x"), (-1, "x"))),
    ("y*xa = xa*y - xa", _rel((1, "y xa"), (-1, "xa y"), (1, "xa"))),
    ("y*xna = xna*y + xna", _rel((1, "y xna"), (-1, "xna y"), (-1, "xna"))),
    ("xb*y + xb = 0", _rel((1, "xb y"), (1, "xb"))),
    ("y*xb - xb = 0", _rel((1, "y xb"), (-1, "xb"))),
    ("xab*(x+y) + xab = 0", _rel((1, "xab x"), (1, "xab y"), (1, "xab"))),
    ("(x+y)*xab - xab = 0", _rel((1, "x xab"), (1, "y xab"), (-1, "xab"))),
    ("x*xb - xb*x + xb = 0", _rel((1, "x xb"), (-1, "xb x"), (1, "xb"))),
    ("x*xab - xab*x - xab = 0", _rel((1, "x xab"), (-1, "xab x"), (-1, "xab"))),
    ("xa*xb = -xab*y", _rel((1, "xa xb"), (1, "xab y"))),
    ("xb*xa = -xab*y - xab", _rel((1, "xb xa"), (1, "xab y"), (1, "xab"))),
    ("xna*xab = -xb*x + xb", _rel((1, "xna xab"), (1, "xb x"), (-1, "xb"))),
    ("xab*xna = -xb*x", _rel((1, "xab xna"), (1, "xb x"))),
    ("xa^2 = 0", _rel((1, "xa xa"))),
    ("xna^2 = 0", _rel((1, "xna xna"))),
    ("xb^2 = 0", _rel((1, "xb xb"))),
    ("xab^2 = 0", _rel((1, "xab xab"))),
    ("xa*xab = 0", _rel((1, "xa xab"))),
    ("xab*xa = 0", _rel((1, "xab xa"))),
    ("xb*xab = 0", _rel((1, "xb xab"))),
    ("xab*xb = 0", _rel((1, "xab xb"))),
    ("xb*xna = 0", _rel((1, "xb xna"))),
    ("xna*xb = 0", _rel((1, "xna xb"))),
)

# Consequences of the defining relations.
DERIVED_RELATIONS: tuple[tuple[str, tuple], ...] = (
    ("xab*x^2 + xab*x = 0", _rel((1, "xab x x"), (1, "xab x"))),
    ("xab*y^2 + xab*y = 0", _rel((1, "xab y y"), (1, "xab y"))),
    ("xb*(x+y)^2 + xb*(x+y) = 0",
     _rel((1, "xb x x"), (1, "xb x y"), (1, "xb y x"), (1, "xb y y"), (1, "xb x"), (1, "xb y"))),
    ("xb*x^2 - xb*x = 0", _rel((1, "xb x x"), (-1, "xb x"))),
)


def evaluate_relation(rel: Sequence, gens: dict, mul: Callable, add: Callable, scale: Callable, one):
    """Evaluate a relation polynomial with generator values from ``gens``."""
    total = None
    for c, word in rel:
        val = one
        for g in word:
            val = mul(val, gens[g])
        term = scale(val, c)
        total = term if total is None else add(total, term)
    return total


def ap_relation_value(rel: Sequence) -> NormalFormElement:
    return evaluate_relation(
        rel, {g: AP.gen(g) for g in APAlgebra.generators},
        lambda a, b: a * b, lambda a, b: a + b, lambda a, c: a * c, AP.one(),
    )


def relations_hold() -> dict[str, bool]:
    return {name: ap_relation_value(rel).is_zero() for name, rel in RELATIONS + DERIVED_RELATIONS}


# ---------------------------------------------------------------------------
# Text form


def parse_normal_form(algebra: Algebra, text: str) -> NormalFormElement:
    """Parse the canonical text form, e.g. ``3/2*x^2*y^3 - xb*x``."""
    s = text.replace(" ", "")
    if s in ("", "0"):
        return algebra.zero()
    if s[0] not in "+-":
        s = "+" + s
    coeffs: dict = {}
    for sign, body in re.findall(r"([+-])([^+-]+)", s):
        factors = body.split("*")
        c = Fraction(1)
        word = []
        for f in factors:
            if re.fullmatch(r"\d+(/\d+)?", f):
                c *= Fraction(f)
            elif f == "1":
                continue
            else:
                m = re.fullmatch(r"([a-z]+)(\^(\d+))?", f)
                if not m:
                    raise VOAError("PARSE_ERROR", f"bad factor {f!r}")
                word.append((m.group(1), int(m.group(3) or 1)))
        if sign == "-":
            c = -c
        if algebra.tag == "AP":
            el = AP.one()
            for sym, e in word:
                el = el * (AP.gen(sym) ** e)
            for w, cw in el.coeffs.items():
                coeffs[w] = coeffs.get(w, 0) + c * cw
        else:
            w = tuple(word)
            coeffs[w] = coeffs.get(w, 0) + c
    return algebra.element(coeffs)
