"""Symmetric and signed-permutation groups.

Permutations are tuples in one-line notation: ``w[k-1] = w(k)``.  Products
are composition of functions, ``(x*y)(k) = x(y(k))``, so right
multiplication by ``s_i`` swaps positions ``i`` and ``i+1``.  Signed
permutations use the same layout with signed images; ``s_0`` negates the
first entry.

>>> w_ab(2, 2)
(3, 4, 1, 2)
>>> reduced_word(w_ab(2, 2))
(2, 1, 3, 2)
"""

from __future__ import annotations

import itertools
import re
from functools import lru_cache
from typing import Iterable, Sequence

Perm = tuple
Word = tuple


# -- type A --------------------------------------------------------------------
def identity(d: int) -> Perm:
    return tuple(range(1, d + 1))


def is_signed(w: Perm) -> bool:
    return any(x < 0 for x in w)


def compose(x: Perm, y: Perm) -> Perm:
    """``x * y`` as functions (y first); works for signed permutations too."""
    out = []
    for k in y:
        img = x[abs(k) - 1]
        out.append(img if k > 0 else -img)
    return tuple(out)


def inverse(w: Perm) -> Perm:
    out = [0] * len(w)
    for i, k in enumerate(w, 1):
        out[abs(k) - 1] = i if k > 0 else -i
    return tuple(out)


def rmul_s(w: Perm, i: int) -> Perm:
    """``w * s_i`` (``i = 0`` is the sign change of position 1)."""
    if i == 0:
        return (-w[0],) + tuple(w[1:])
    lst = list(w)
    lst[i - 1], lst[i] = lst[i], lst[i - 1]
    return tuple(lst)


def lmul_s(i: int, w: Perm) -> Perm:
    """``s_i * w``: acts on values."""
    if i == 0:
        return tuple(-k if abs(k) == 1 else k for k in w)

    def f(k):
        a = abs(k)
        b = i + 1 if a == i else i if a == i + 1 else a
        return b if k > 0 else -b

    return tuple(f(k) for k in w)


def length(w: Perm) -> int:
    """Coxeter length; the type-B formula applies when signs occur.

    Type B uses ``inv(w) + sum_{w(j)<0} |w(j)|`` with ``inv`` counted on
    signed values.
    """
    n = len(w)
    inv = sum(1 for a in range(n) for b in range(a + 1, n) if w[a] > w[b])
    return inv + sum(-k for k in w if k < 0)


def descents(w: Perm, signed: bool | None = None) -> list:
    """Right descents ``{i : l(w s_i) < l(w)}``."""
    signed = is_signed(w) if signed is None else signed
    out = [0] if signed and w[0] < 0 else []
    out += [i for i in range(1, len(w)) if w[i - 1] > w[i]]
    return out


def from_word(word: Iterable[int], d: int, signed: bool = False) -> Perm:
    w = identity(d)
    for i in word:
        if i == 0 and not signed:
            raise ValueError("generator s_0 only exists in type B")
        if not 0 <= i < d:
            raise ValueError(f"generator index {i} out of range for rank {d}")
        w = rmul_s(w, i)
    return w


def reduced_word(w: Perm, tie: str = "min", signed: bool | None = None) -> Word:
    """Word from the compatible family: repeatedly strip a right descent.

    ``tie`` picks the stripped descent (``"min"`` is the library default).
    """
    signed = is_signed(w) if signed is None else signed
    letters = []
    while True:
        ds = descents(w, signed)
        if not ds:
            break
        i = ds[0] if tie == "min" else ds[-1]
        letters.append(i)
        w = rmul_s(w, i)
    return tuple(reversed(letters))


def all_perms(d: int) -> list:
    """All of Sigma_d sorted by (length, one-line)."""
    return sorted(itertools.permutations(range(1, d + 1)), key=lambda w: (length(w), w))


def all_signed(n: int) -> list:
    out = []
    for p in itertools.permutations(range(1, n + 1)):
        for signs in itertools.product((1, -1), repeat=n):
            out.append(tuple(a * s for a, s in zip(p, signs)))
    return sorted(out, key=lambda w: (length(w), w))


def compatible_reduced_family(d: int, tie: str = "min") -> dict:
    """Map every ``w`` in Sigma_d to ``r(w)`` with ``r(w) = r(w s_i) s_i``."""
    return {w: reduced_word(w, tie) for w in all_perms(d)}


def is_compatible_family(family: dict) -> bool:
    for w, word in family.items():
        if not word:
            if any(x != i for i, x in enumerate(w, 1)):
                return False
            continue
        parent = rmul_s(w, word[-1])
        if family.get(parent) != word[:-1] or length(parent) >= length(w):
            return False
    return True


def bruhat_leq(x: Perm, y: Perm) -> bool:
    """Subword criterion on the compatible reduced word of ``y``."""
    if len(x) != len(y):
        raise ValueError("Bruhat comparison needs equal rank")
    lx = length(x)
    if lx > length(y):
        return False
    reach = {identity(len(y))}
    for i in reduced_word(y):
        reach |= {rmul_s(u, i) for u in reach}
    return x in reach


@lru_cache(maxsize=None)
def bruhat_table(d: int) -> dict:
    """``(x, y) -> bool`` for all of Sigma_d (cached)."""
    ws = all_perms(d)
    return {(x, y): bruhat_leq(x, y) for x in ws for y in ws}


# -- special elements ----------------------------------------------------------
def s_a_to_b(a: int, b: int) -> Word:
    if a >= b:
        return tuple(range(a, b - 1, -1))
    return tuple(range(a, b + 1))


def s_a_to_b_to_a(a: int, b: int) -> Word:
    up = s_a_to_b(a, b)
    return up + tuple(reversed(up[:-1]))


def w_ab(a: int, b: int) -> Perm:
    """Block swap in Sigma_{a+b}: ``1..a -> b+1..b+a`` and ``a+1..a+b -> 1..b``."""
    if a < 0 or b < 0:
        raise ValueError("w_ab needs nonnegative block sizes")
    return tuple(range(b + 1, a + b + 1)) + tuple(range(1, b + 1))


def w_ab_word(a: int, b: int) -> Word:
    """``s_{a->1} s_{a+1->2} ... s_{a+b-1->b}``."""
    out: tuple = ()
    for k in range(b):
        out += s_a_to_b(a + k, 1 + k)
    return out


def longest(d: int) -> Perm:
    return tuple(range(d, 0, -1))


def longest_signed(n: int) -> Perm:
    return tuple(-k for k in range(1, n + 1))


def embed_wreath(w: Perm, m: int) -> Perm:
    """Sigma_d into Sigma_{md}: ``(i-1)m + j -> (w(i)-1)m + j``."""
    return tuple((w[i] - 1) * m + j for i in range(len(w)) for j in range(1, m + 1))


def shift(w: Perm, k: int, total: int) -> Perm:
    """Embed ``w`` acting on ``k+1..k+len(w)`` inside Sigma_total."""
    if k + len(w) > total:
        raise ValueError("shift out of range")
    return tuple(range(1, k + 1)) + tuple(x + k for x in w) + tuple(range(k + len(w) + 1, total + 1))


def parabolic_elements(d: int, gens: Iterable[int]) -> list:
    """Elements of the standard parabolic subgroup generated by ``gens``."""
    gens = list(gens)
    seen = {identity(d)}
    frontier = [identity(d)]
    while frontier:
        nxt = []
        for w in frontier:
            for i in gens:
                u = rmul_s(w, i)
                if u not in seen:
                    seen.add(u)
                    nxt.append(u)
        frontier = nxt
    return sorted(seen, key=lambda w: (length(w), w))


# -- text ----------------------------------------------------------------------
def format_perm(w: Perm) -> str:
    return "[" + ",".join(str(k) for k in w) + "]"


def format_word(word: Sequence[int]) -> str:
    return " ".join(f"s{i}" for i in word) if word else "e"


def parse_perm(text: str, d: int | None = None, signed: bool = False) -> Perm:
    """Accept ``[3,4,1,2]``, ``s3 s2 s1`` or ``e`` (needs ``d`` for words)."""
    t = text.strip()
    if t.startswith("["):
        w = tuple(int(x) for x in t.strip("[]").split(",") if x.strip())
        if sorted(abs(x) for x in w) != list(range(1, len(w) + 1)):
            raise ValueError(f"not a permutation: {text}")
        if d is not None and len(w) != d:
            raise ValueError(f"expected rank {d}: {text}")
        return w
    if d is None:
        raise ValueError("word notation needs the rank")
    if t in ("", "e", "1"):
        return identity(d)
    word = [int(x) for x in re.findall(r"s_?\{?(\d+)\}?", t)]
    return from_word(word, d, signed)


class CoxeterGroup:
    """Enumerated Sigma_n (``kind="A"``) or W(B_n) (``kind="B"``) with lookup tables.

    Elements are indexed ``0..N-1`` in (length, one-line) order; index 0 is
    the identity.  ``rmul[i][k]`` is the index of ``w_k s_i`` and
    ``lmul[i][k]`` that of ``s_i w_k``.
    """

    _cache: dict = {}

    def __new__(cls, kind: str, n: int):
        key = (kind, n)
        if key not in cls._cache:
            obj = super().__new__(cls)
            obj._build(kind, n)
            cls._cache[key] = obj
        return cls._cache[key]

    def _build(self, kind: str, n: int):
        if kind not in ("A", "B"):
            raise ValueError("kind must be 'A' or 'B'")
        self.kind, self.n = kind, n
        self.elements = all_perms(n) if kind == "A" else all_signed(n)
        self.index = {w: k for k, w in enumerate(self.elements)}
        self.length = [length(w) for w in self.elements]
        self.gens = list(range(1, n)) if kind == "A" else list(range(0, n))
        size = len(self.elements)
        self.rmul = {i: [self.index[rmul_s(w, i)] for w in self.elements] for i in self.gens}
        self.lmul = {i: [self.index[lmul_s(i, w)] for w in self.elements] for i in self.gens}
        self.inv = [self.index[inverse(w)] for w in self.elements]
        signed = kind == "B"
        self.words = [reduced_word(w, "min", signed) for w in self.elements]
        # compatible-family tree: parent = w s_{last letter}
        self.parent = [-1] * size
        self.last = [-1] * size
        self.children: list = [[] for _ in range(size)]
        for k, word in enumerate(self.words):
            if word:
                p = self.rmul[word[-1]][k]
                self.parent[k], self.last[k] = p, word[-1]
                self.children[p].append(k)
        self.longest = max(range(size), key=lambda k: self.length[k])

    def __len__(self):
        return len(self.elements)

    def __repr__(self):
        return f"CoxeterGroup({self.kind!r}, {self.n})"

    def idx(self, w) -> int:
        return self.index[tuple(w)]

    def from_word(self, word: Iterable[int]) -> int:
        k = 0
        for i in word:
            k = self.rmul[i][k]
        return k

    def ancestors_closure(self, support: Iterable[int]) -> set:
        """All prefixes (in the tree) of the given elements."""
        seen: set = set()
        for k in support:
            while k >= 0 and k not in seen:
                seen.add(k)
                k = self.parent[k]
        return seen
