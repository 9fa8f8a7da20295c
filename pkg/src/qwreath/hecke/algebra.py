"""Iwahori-Hecke algebras of types A and B on the standard basis.

Coefficients are usually :class:`~qwreath.coeff.Scalar` values with
``q = v^2``, but any commutative ring type with ``+``, ``*`` and zero
testing works (``flint.nmod`` is used for specialized type-B solves).

Quadratic relation: ``T_i^2 = (q_i - 1) T_i + q_i`` with ``q_0 = Q`` in
type B.
"""

from __future__ import annotations

import re
from typing import Iterable, Sequence

from ..coeff import ONE, ParseError, Scalar, V, _ScalarParser
from ..perm import CoxeterGroup, format_word, parse_perm


def _clean(d: dict) -> dict:
    return {k: c for k, c in d.items() if c}


def _acc(out: dict, k: int, c) -> None:
    s = out.get(k)
    out[k] = c if s is None else s + c


class HeckeAlgebra:
    """Hecke algebra of ``CoxeterGroup(kind, n)`` with parameters ``q`` (and ``Q``)."""

    _cache: dict = {}

    def __new__(cls, kind: str = "A", n: int = 2, q=None, Q=None):
        q = V ** 2 if q is None else q
        if Q is None:
            Q = q * 0 + 1
        key = (kind, n, repr(q), repr(Q), type(q).__name__, _modulus(q))
        obj = cls._cache.get(key)
        if obj is None:
            obj = super().__new__(cls)
            obj._init(kind, n, q, Q)
            cls._cache[key] = obj
        return obj

    def _init(self, kind, n, q, Q):
        self.kind, self.n = kind, n
        self.G = CoxeterGroup(kind, n)
        self.q, self.Q = q, Q
        self.zero_c = q * 0
        self.one_c = self.zero_c + 1
        self.params = {}
        for i in self.G.gens:
            qi = Q if i == 0 else q
            self.params[i] = (qi - 1, qi)
        self.symbolic = isinstance(q, Scalar)
        self.has_v = self.symbolic and q == V ** 2

    def __repr__(self):
        return f"HeckeAlgebra({self.kind!r}, {self.n}, q={self.q}, Q={self.Q})"

    # -- constructors ------------------------------------------------------------
    def element(self, coeffs: dict) -> "HeckeElement":
        return HeckeElement(self, _clean(coeffs))

    def zero(self) -> "HeckeElement":
        return HeckeElement(self, {})

    def one(self) -> "HeckeElement":
        return HeckeElement(self, {0: self.one_c})

    def scalar(self, c) -> "HeckeElement":
        return HeckeElement(self, _clean({0: self.one_c * c}))

    def _index(self, w) -> int:
        if isinstance(w, int):
            return w
        if isinstance(w, str):
            w = parse_perm(w, self.n, signed=self.kind == "B")
        return self.G.index[tuple(w)]

    def T(self, w=()) -> "HeckeElement":
        """``T_w`` for a permutation tuple, a text form, or an index."""
        if isinstance(w, tuple) and len(w) != self.n:
            return self.T_word(w)
        return HeckeElement(self, {self._index(w): self.one_c})

    def T_word(self, word: Sequence[int]) -> "HeckeElement":
        x = self.one()
        for i in word:
            x = x.rmul_gen(i)
        return x

    def gen(self, i: int) -> "HeckeElement":
        return HeckeElement(self, {self.G.rmul[i][0]: self.one_c})

    def gen_inv(self, i: int) -> "HeckeElement":
        a, b = self.params[i]
        binv = _inverse(b)
        return HeckeElement(self, _clean({self.G.rmul[i][0]: binv, 0: -a * binv}))

    # I-basis (type A with v^2 = q)
    def _need_v(self):
        if not self.has_v:
            raise ValueError("I-basis requires q = v^2 with v a declared variable")

    def I(self, w=()) -> "HeckeElement":
        self._need_v()
        k = self._index(w) if not (isinstance(w, tuple) and len(w) != self.n) else self.G.from_word(w)
        return HeckeElement(self, {k: V ** (-self.G.length[k])})

    def I_gen(self, i: int, sign: int = 1) -> "HeckeElement":
        """``I_i`` or, for ``sign=-1``, ``I_i^{-1} = I_i - (v - v^{-1})``."""
        self._need_v()
        x = HeckeElement(self, {self.G.rmul[i][0]: V ** -1})
        return x if sign > 0 else x - self.scalar(V - V ** -1)

    def I_word(self, word: Sequence[int], signs: Sequence[int] | int = 1) -> "HeckeElement":
        """Product of ``I_{i}^{±1}`` along ``word``."""
        if isinstance(signs, int):
            signs = [signs] * len(word)
        x = self.one()
        for i, s in zip(word, signs):
            x = x * self.I_gen(i, s)
        return x

    def I_bar_word(self, word: Sequence[int]) -> "HeckeElement":
        """``bar(I_{word})``: every letter inverted, order kept."""
        return self.I_word(word, -1)

    def from_I(self, coeffs: dict) -> "HeckeElement":
        self._need_v()
        out = {}
        for w, c in coeffs.items():
            k = self._index(w)
            out[k] = c * V ** (-self.G.length[k])
        return self.element(out)

    def parse(self, text: str, names: dict | None = None) -> "HeckeElement":
        """Parse sums of products of scalars, ``T[...]`` and ``I[...]`` atoms.

        ``T[2.1]`` and ``T[s2 s1]`` both mean ``T_{s2 s1}``; ``I[2.~1]`` multiplies ``I_2`` by the
        overbarred ``I_1^{-1}``.  ``names`` binds identifiers to elements.
        """
        env = dict(names or {})

        def atom(m):
            key = f"_b{len(env)}"
            word = re.findall(r"~?\d+", m.group(2))
            if m.group(1) == "T":
                env[key] = self.T_word([int(w) for w in word])
            else:
                env[key] = self.I_word([int(w.lstrip("~")) for w in word],
                                       [-1 if w.startswith("~") else 1 for w in word])
            return key

        return _HeckeParser(self, re.sub(r"([TI])\[([~0-9. s]*)\]", atom, text), env).parse()

    # -- kernels -----------------------------------------------------------------
    def _rgen(self, c: dict, i: int) -> dict:
        r = self.G.rmul[i]
        L = self.G.length
        a, b = self.params[i]
        out: dict = {}
        for k, x in c.items():
            k2 = r[k]
            if L[k2] > L[k]:
                _acc(out, k2, x)
            else:
                _acc(out, k, a * x)
                _acc(out, k2, b * x)
        return _clean(out)

    def _lgen(self, c: dict, i: int) -> dict:
        r = self.G.lmul[i]
        L = self.G.length
        a, b = self.params[i]
        out: dict = {}
        for k, x in c.items():
            k2 = r[k]
            if L[k2] > L[k]:
                _acc(out, k2, x)
            else:
                _acc(out, k, a * x)
                _acc(out, k2, b * x)
        return _clean(out)

    def _mul(self, x: dict, y: dict) -> dict:
        if not x or not y:
            return {}
        if len(y) == 1 and 0 in y:
            c = y[0]
            return _clean({k: a * c for k, a in x.items()})
        if len(x) == 1 and 0 in x:
            c = x[0]
            return _clean({k: c * a for k, a in y.items()})
        G = self.G
        out: dict = {}
        if len(x) <= len(y):
            # x * T_w along the compatible-family tree of w
            need = G.ancestors_closure(y)
            stack = [(0, x)]
            while stack:
                k, cur = stack.pop()
                cy = y.get(k)
                if cy is not None:
                    for j, a in cur.items():
                        _acc(out, j, a * cy)
                for ch in G.children[k]:
                    if ch in need:
                        stack.append((ch, self._rgen(cur, G.last[ch])))
        else:
            # T_w * y along the tree of w^{-1}
            inv = G.inv
            need = G.ancestors_closure(inv[k] for k in x)
            stack = [(0, y)]
            while stack:
                k, cur = stack.pop()
                cx = x.get(inv[k])
                if cx is not None:
                    for j, a in cur.items():
                        _acc(out, j, cx * a)
                for ch in G.children[k]:
                    if ch in need:
                        stack.append((ch, self._lgen(cur, G.last[ch])))
        return _clean(out)

    def _horner_left(self, a: dict, left_op) -> dict:
        """``sum_w a_w J_{r(w)}`` where ``J_{word}`` is a product of ``left_op`` letters."""
        G = self.G
        need = G.ancestors_closure(a)
        acc: dict = {}
        for k in sorted(need, key=lambda k: -G.length[k]):
            cur = acc.pop(k, {})
            if k in a:
                cur = dict(cur)
                _acc(cur, 0, a[k])
                cur = _clean(cur)
            if k == 0:
                return cur
            p = G.parent[k]
            moved = left_op(cur, G.last[k])
            tgt = acc.setdefault(p, {})
            for j, c in moved.items():
                _acc(tgt, j, c)
            acc[p] = _clean(tgt)
        return {}

    def _ginv_left(self, c: dict, i: int) -> dict:
        a, b = self.params[i]
        binv = _inverse(b)
        t = self._lgen(c, i)
        out = {k: x * binv for k, x in t.items()}
        for k, x in c.items():
            _acc(out, k, -(a * binv) * x)
        return _clean(out)


def _modulus(x):
    m = getattr(x, "modulus", None)
    return m() if callable(m) else None


def _inverse(b):
    if isinstance(b, Scalar):
        return b ** -1
    return b ** -1


class HeckeElement:
    """Sparse element ``sum c_w T_w`` (indices into the algebra's group)."""

    __slots__ = ("alg", "c")

    def __init__(self, alg: HeckeAlgebra, coeffs: dict):
        self.alg = alg
        self.c = coeffs

    # arithmetic
    def _same(self, other):
        if isinstance(other, HeckeElement):
            if other.alg is not self.alg:
                raise ValueError("elements of different Hecke algebras")
            return other
        return self.alg.scalar(other)

    def __add__(self, other):
        o = self._same(other)
        out = dict(self.c)
        for k, x in o.c.items():
            _acc(out, k, x)
        return HeckeElement(self.alg, _clean(out))

    __radd__ = __add__

    def __neg__(self):
        return HeckeElement(self.alg, {k: -x for k, x in self.c.items()})

    def __sub__(self, other):
        return self + (-self._same(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, HeckeElement):
            self._same(other)
            return HeckeElement(self.alg, self.alg._mul(self.c, other.c))
        return HeckeElement(self.alg, _clean({k: x * other for k, x in self.c.items()}))

    def __rmul__(self, other):
        return HeckeElement(self.alg, _clean({k: other * x for k, x in self.c.items()}))

    def __pow__(self, k: int):
        out = self.alg.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, HeckeElement):
            return self.alg is other.alg and self.c == other.c
        return self == self.alg.scalar(other)

    def __hash__(self):
        return hash(frozenset(self.c.items()))

    def __bool__(self):
        return bool(self.c)

    def rmul_gen(self, i: int) -> "HeckeElement":
        return HeckeElement(self.alg, self.alg._rgen(self.c, i))

    def lmul_gen(self, i: int) -> "HeckeElement":
        return HeckeElement(self.alg, self.alg._lgen(self.c, i))

    # structure maps
    def star(self) -> "HeckeElement":
        """Anti-automorphism ``T_w -> T_{w^{-1}}``."""
        inv = self.alg.G.inv
        return HeckeElement(self.alg, {inv[k]: x for k, x in self.c.items()})

    def bar(self) -> "HeckeElement":
        """``v -> v^{-1}``, ``T_w -> T_{w^{-1}}^{-1}`` (type A, symbolic v)."""
        alg = self.alg
        alg._need_v()
        a = {k: x.bar() for k, x in self.c.items()}
        return HeckeElement(alg, alg._horner_left(a, alg._ginv_left))

    def shift(self, k: int, target: "HeckeAlgebra | None" = None) -> "HeckeElement":
        """Apply ``T_i -> T_{i+k}`` into ``target`` (default: same algebra)."""
        from ..perm import shift as pshift

        tgt = target or self.alg
        G = self.alg.G
        out = {}
        for j, x in self.c.items():
            w = G.elements[j]
            out[tgt.G.index[pshift(w, k, tgt.n)] if k or tgt is not self.alg else j] = x
        return HeckeElement(tgt, out)

    def embed(self, target: "HeckeAlgebra") -> "HeckeElement":
        return self.shift(0, target)

    # views
    def coeff(self, w) -> object:
        return self.c.get(self.alg._index(w), self.alg.zero_c)

    def support(self) -> list:
        return [self.alg.G.elements[k] for k in sorted(self.c)]

    def items(self):
        G = self.alg.G
        for k in sorted(self.c, key=lambda k: (G.length[k], G.elements[k])):
            yield G.elements[k], self.c[k]

    def I_coeffs(self) -> dict:
        """Coefficients in the I-basis keyed by permutation."""
        self.alg._need_v()
        L = self.alg.G.length
        return {w: x * V ** L[self.alg.G.index[w]] for w, x in self.items()}

    def I_coeff(self, w) -> Scalar:
        k = self.alg._index(w)
        return self.c.get(k, Scalar(0)) * V ** self.alg.G.length[k]

    def specialize(self, smap) -> dict:
        out = {}
        for w, x in self.items():
            val = smap(x)
            if val:
                out[w] = val
        return out

    def in_parabolic(self, gens: Iterable[int]) -> bool:
        from ..perm import parabolic_elements

        allowed = set(parabolic_elements(self.alg.n, gens))
        return all(w in allowed for w in self.support())

    def format(self, basis: str = "T") -> str:
        if not self.c:
            return "0"
        G = self.alg.G
        parts = []
        for w, x in self.items():
            k = G.index[w]
            if basis == "I":
                x = x * V ** G.length[k]
                label = "I[" + ".".join(str(i) for i in G.words[k]) + "]" if k else ""
            else:
                label = f"T[{format_word(G.words[k])}]" if k else ""
            parts.append(_term(x, label))
        return _join(parts)

    def __str__(self):
        return self.format("T")

    __repr__ = __str__


def _term(c, label: str) -> str:
    s = str(c)
    if not label:
        return s
    if s == "1":
        return label
    if s == "-1":
        return "-" + label
    if isinstance(c, Scalar) and c.needs_parens():
        return f"({s})*{label}"
    return f"{s}*{label}"


def _join(parts: list) -> str:
    out = parts[0]
    for p in parts[1:]:
        out += " - " + p[1:] if p.startswith("-") else " + " + p
    return out


class _HeckeParser(_ScalarParser):
    def __init__(self, alg: HeckeAlgebra, text: str, env: dict):
        super().__init__(text)
        self.alg, self.env = alg, env

    def parse(self) -> HeckeElement:
        out = self.expr()
        if self.i != len(self.toks):
            raise ParseError("trailing input")
        return out

    def power(self):
        base = self.atom()
        if self.peek() != "^":
            return base
        self.take()
        neg = self.peek() == "-"
        if neg:
            self.take()
        k = int(self.take("int"))
        if not neg:
            return base ** k
        if set(base.c) - {0}:
            raise ParseError("negative power of a non-scalar")
        return self.alg.scalar(base.c.get(0, self.alg.zero_c) ** -k)

    def atom(self):
        k = self.peek()
        if k == "int":
            return self.alg.scalar(int(self.take()))
        if k == "name":
            name = self.take()
            return self.env[name] if name in self.env else self.alg.scalar(Scalar.var(name))
        if k == "(":
            self.take()
            e = self.expr()
            self.take(")")
            return e
        if k == "-":
            self.take()
            return -self.power()
        raise ParseError("unexpected token")
