"""Quantum wreath products ``B ≀_Q H(d)`` in right normal form.

An element is stored as ``{(tensor, w): c}`` meaning ``sum c * tensor * H_w``
where ``tensor`` is a ``d``-tuple of basis indices of ``B`` and ``w`` an
index into ``CoxeterGroup("A", d)``.  Multiplication is the regular right
action of the algebra on ``B^{⊗d} ⊗ KΣ_d``: pushing ``b`` left through
``H_w`` along the compatible reduced word, then appending the letters of
the right factor one at a time.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from typing import Callable, Iterable, Optional

from .base_alg import BaseAlgebra, _acc, demazure
from .coeff import ONE, Scalar, parse_scalar
from .perm import CoxeterGroup, all_perms, format_word, length, parse_perm, rmul_s

Pair = tuple


class ConditionViolation(ValueError):
    """A normal form was requested for a parameter choice that is not flat."""


class PreconditionError(ValueError):
    pass


def _clean(d: dict) -> dict:
    return {k: c for k, c in d.items() if c}


def _scale_into(out: dict, src: dict, c) -> None:
    for k, x in src.items():
        _acc(out, k, x * c)


# -- parameters ----------------------------------------------------------------
@dataclass(eq=False)
class ParamChoice:
    """``Q = (R, S, ρ, σ)`` with ``σ``, ``ρ`` given on basis pairs of ``B⊗B``.

    ``sigma=None`` means the flip; ``rho=None`` means ``ρ = 0``.
    ``sigma_inv`` defaults to ``sigma`` when ``sigma`` is the flip or the
    identity.  ``beta`` records the Demazure description ``ρ = ∂(·)β``.
    """

    R: dict
    S: dict
    sigma: Optional[Callable] = None
    rho: Optional[Callable] = None
    sigma_inv: Optional[Callable] = None
    sigma_kind: str = "flip"
    beta: Optional[dict] = None
    name: str = "Q"
    _scache: dict = field(default_factory=dict, repr=False)
    _rcache: dict = field(default_factory=dict, repr=False)
    _icache: dict = field(default_factory=dict, repr=False)

    @property
    def sigma_is_flip(self) -> bool:
        return self.sigma is None

    @property
    def rho_zero(self) -> bool:
        return self.rho is None

    def sigma_pair(self, p: Pair) -> dict:
        r = self._scache.get(p)
        if r is None:
            r = {(p[1], p[0]): ONE} if self.sigma is None else _clean(self.sigma(p))
            self._scache[p] = r
        return r

    def sigma_inv_pair(self, p: Pair) -> dict:
        if self.sigma is None:
            return {(p[1], p[0]): ONE}
        if self.sigma_inv is None:
            if self.sigma_kind == "identity":
                return {p: ONE}
            raise PreconditionError("σ^{-1} is not declared for this parameter choice")
        r = self._icache.get(p)
        if r is None:
            r = self._icache[p] = _clean(self.sigma_inv(p))
        return r

    def rho_pair(self, p: Pair) -> dict:
        if self.rho is None:
            return {}
        r = self._rcache.get(p)
        if r is None:
            r = self._rcache[p] = _clean(self.rho(p))
        return r

    def sigma_el(self, x: dict) -> dict:
        out: dict = {}
        for p, c in x.items():
            _scale_into(out, self.sigma_pair(p), c)
        return out

    def rho_el(self, x: dict) -> dict:
        out: dict = {}
        for p, c in x.items():
            _scale_into(out, self.rho_pair(p), c)
        return out

    def mutate(self, **changes) -> "ParamChoice":
        """Copy with some fields replaced (caches reset)."""
        changes.setdefault("_scache", {})
        changes.setdefault("_rcache", {})
        changes.setdefault("_icache", {})
        return replace(self, **changes)


def demazure_rho(B: BaseAlgebra, beta: dict) -> Callable:
    """``ρ(X^a⊗X^b) = ∂(X^a⊗X^b)·β`` on a monomial base."""

    def rho(p):
        a, b = p
        d = demazure(a, b)
        for k in d:
            B.check_index(k[0])
            B.check_index(k[1])
        return B.tensor_mul(d, beta)

    return rho


def identity_sigma(p: Pair) -> dict:
    return {p: ONE}


# -- algebra -------------------------------------------------------------------
class QwpAlgebra:
    """``B ≀_Q H(d)`` with a chosen compatible reduced-word family.

    ``family`` maps permutations to words; the default strips the minimal
    right descent (``tie="min"``).
    """

    def __init__(self, B: BaseAlgebra, Q: ParamChoice, d: int, tie: str = "min",
                 family: Optional[dict] = None, name: Optional[str] = None):
        if d < 1:
            raise ValueError("d >= 1")
        self.B, self.Q, self.d = B, Q, d
        self.name = name or f"{B.name} ≀ H({d})"
        self.G = CoxeterGroup("A", d)
        G = self.G
        if family is None:
            from .perm import reduced_word

            family = {w: reduced_word(w, tie) for w in G.elements}
        self.family = family
        self.words = [tuple(family[w]) for w in G.elements]
        self.last = [wd[-1] if wd else -1 for wd in self.words]
        self.parent = [G.rmul[wd[-1]][k] if wd else -1 for k, wd in enumerate(self.words)]
        self.one_t = (B.unit,) * d
        self._F: dict = {}
        self._T: dict = {}
        self._bb: dict = {}

    def __repr__(self):
        return f"QwpAlgebra({self.name})"

    @property
    def finite(self) -> bool:
        return self.B.finite

    @property
    def dim(self):
        return self.B.dim ** self.d * len(self.G) if self.finite else float("inf")

    def basis(self) -> list:
        """All ``(tensor, w)`` keys (finite ``B`` only)."""
        import itertools

        if not self.finite:
            raise ValueError("infinite base: use window_basis")
        return [(t, k) for k in range(len(self.G)) for t in itertools.product(self.B.basis, repeat=self.d)]

    def window_tensors(self, n: int) -> list:
        import itertools

        return list(itertools.product(self.B.window_indices(n), repeat=self.d))

    # -- slot maps ---------------------------------------------------------------
    def _check_i(self, i: int) -> None:
        if not 1 <= i <= self.d - 1:
            raise IndexError(f"slot index {i} out of range for d={self.d}")

    def embed_i(self, Z: dict, i: int) -> dict:
        """``Z ∈ B⊗B`` placed at slots ``(i, i+1)`` of ``B^{⊗d}``."""
        self._check_i(i)
        out = {}
        for (a, b), c in Z.items():
            t = list(self.one_t)
            t[i - 1], t[i] = a, b
            _acc(out, tuple(t), c)
        return out

    def _phi_tensor(self, fn: Callable, t: tuple, i: int) -> dict:
        out = {}
        for (a, b), c in fn((t[i - 1], t[i])).items():
            _acc(out, t[: i - 1] + (a, b) + t[i + 1:], c)
        return out

    def apply_phi_i(self, fn: Callable, x: dict, i: int) -> dict:
        """Apply a pair map ``fn`` to slots ``(i, i+1)`` of ``x ∈ B^{⊗d}``."""
        self._check_i(i)
        out: dict = {}
        for t, c in x.items():
            _scale_into(out, self._phi_tensor(fn, t, i), c)
        return out

    def sigma_i(self, x: dict, i: int) -> dict:
        return self.apply_phi_i(self.Q.sigma_pair, x, i)

    def sigma_inv_i(self, x: dict, i: int) -> dict:
        return self.apply_phi_i(self.Q.sigma_inv_pair, x, i)

    def rho_i(self, x: dict, i: int) -> dict:
        return self.apply_phi_i(self.Q.rho_pair, x, i)

    def sigma_w(self, w, b: dict) -> dict:
        """``σ_{i_1}⋯σ_{i_N}(b)`` along the family word of ``w``."""
        k = self._widx(w)
        for i in reversed(self.words[k]):
            b = self.sigma_i(b, i)
        return b

    def tensor_mul(self, x: dict, y: dict) -> dict:
        return self.B.tensor_mul(x, y)

    # -- regular right action ------------------------------------------------------
    def _lmul(self, b: tuple, x: dict) -> dict:
        """Left multiply every tensor of ``x`` by the basis tensor ``b``."""
        if b == self.one_t:
            return x
        out: dict = {}
        tm = self.B.tensor_mul
        for (t, w), c in x.items():
            for t2, c2 in tm({b: ONE}, {t: ONE}).items():
                _acc(out, (t2, w), c * c2)
        return out

    def F(self, w: int, a: tuple) -> dict:
        """``H_w · a`` for a basis tensor ``a``, in right normal form."""
        key = (w, a)
        r = self._F.get(key)
        if r is not None:
            return r
        if w == 0:
            r = {(a, 0): ONE}
        else:
            i, u = self.last[w], self.parent[w]
            out: dict = {}
            for t, c in self._phi_tensor(self.Q.sigma_pair, a, i).items():
                _scale_into(out, self.rmul_H(self.F(u, t), i), c)
            for t, c in self._phi_tensor(self.Q.rho_pair, a, i).items():
                _scale_into(out, self.F(u, t), c)
            r = _clean(out)
        self._F[key] = r
        return r

    def F_el(self, w: int, a: dict) -> dict:
        out: dict = {}
        for t, c in a.items():
            _scale_into(out, self.F(w, t), c)
        return _clean(out)

    def Tgen(self, w: int, i: int) -> dict:
        """``H_w · H_i`` in right normal form."""
        key = (w, i)
        r = self._T.get(key)
        if r is not None:
            return r
        G = self.G
        ws = G.rmul[i][w]
        if G.length[ws] > G.length[w]:
            r = {(self.one_t, ws): ONE}
        else:
            S_i = self.embed_i(self.Q.S, i)
            R_i = self.embed_i(self.Q.R, i)
            out = dict(self.rmul_H(self.F_el(ws, S_i), i))
            for k, c in self.F_el(ws, R_i).items():
                _acc(out, k, c)
            r = _clean(out)
        self._T[key] = r
        return r

    def rmul_H(self, x: dict, i: int) -> dict:
        out: dict = {}
        for (t, w), c in x.items():
            _scale_into(out, self._lmul(t, self.Tgen(w, i)), c)
        return _clean(out)

    def rmul_tensor(self, x: dict, a: dict) -> dict:
        """``x · a`` for ``a ∈ B^{⊗d}``."""
        out: dict = {}
        for (t, w), c in x.items():
            for s, cs in a.items():
                _scale_into(out, self._lmul(t, self.F(w, s)), c * cs)
        return _clean(out)

    def mul_basis(self, x: tuple, y: tuple) -> dict:
        key = (x, y)
        r = self._bb.get(key)
        if r is None:
            (a, xw), (b, yw) = x, y
            r = self._lmul(a, self.F(xw, b))
            for i in self.words[yw]:
                r = self.rmul_H(r, i)
            self._bb[key] = r
        return r

    def mul(self, x: dict, y: dict) -> dict:
        out: dict = {}
        for kx, cx in x.items():
            for ky, cy in y.items():
                _scale_into(out, self.mul_basis(kx, ky), cx * cy)
        return _clean(out)

    # -- element constructors --------------------------------------------------
    def element(self, terms: dict, form: str = "right") -> "QwpElement":
        return QwpElement(self, _clean(terms), form)

    def _widx(self, w) -> int:
        if isinstance(w, int):
            return w
        if isinstance(w, str):
            w = parse_perm(w, self.d)
        if len(w) != self.d:
            return self.G.from_word(w)
        return self.G.index[tuple(w)]

    def one(self) -> "QwpElement":
        return self.element({(self.one_t, 0): ONE})

    def zero(self) -> "QwpElement":
        return self.element({})

    def scalar(self, c) -> "QwpElement":
        return self.element({(self.one_t, 0): Scalar._c(c)})

    def H(self, i: int) -> "QwpElement":
        self._check_i(i)
        return self.element({(self.one_t, self.G.rmul[i][0]): ONE})

    def Hw(self, w) -> "QwpElement":
        return self.element({(self.one_t, self._widx(w)): ONE})

    def tensor(self, t, c=ONE) -> "QwpElement":
        t = tuple(t)
        if len(t) != self.d:
            raise ValueError("tensor length must equal d")
        for s in t:
            self.B.check_index(s)
        return self.element({(t, 0): Scalar._c(c)})

    def from_tensor_element(self, x: dict) -> "QwpElement":
        return self.element({(t, 0): c for t, c in x.items()})

    def slot(self, b, j: int) -> "QwpElement":
        """``b`` placed in slot ``j`` (1-based), units elsewhere."""
        t = list(self.one_t)
        t[j - 1] = b
        return self.tensor(t)

    # -- forms -----------------------------------------------------------------
    def to_left(self, x: dict) -> dict:
        """Rewrite a right-form dict as ``{(tensor, w): c}`` meaning ``Σ c H_w tensor``."""
        G = self.G
        rem = dict(x)
        out: dict = {}
        while rem:
            top = max(G.length[w] for (_, w) in rem)
            ws = sorted({w for (_, w) in rem if G.length[w] == top})
            for w in ws:
                b = {t: c for (t, ww), c in rem.items() if ww == w}
                pre = b
                for i in self.words[w]:
                    pre = self.sigma_inv_i(pre, i)
                for t, c in pre.items():
                    _acc(out, (t, w), c)
                    for k, cc in self.F(w, t).items():
                        _acc(rem, k, -c * cc)
                rem = _clean(rem)
                if any(ww == w for (_, ww) in rem):
                    raise ConditionViolation("left-form rewriting did not cancel the leading term")
        return _clean(out)

    def to_right(self, x: dict) -> dict:
        out: dict = {}
        for (t, w), c in x.items():
            _scale_into(out, self.F(w, t), c)
        return _clean(out)

    # -- text ------------------------------------------------------------------
    def format_key(self, t: tuple, w: int) -> str:
        parts = []
        if t != self.one_t:
            parts.append("(" + "⊗".join(self.B.name_of(s) for s in t) + ")")
        if w:
            parts.append(f"H[{format_word(self.G.words[w])}]")
        return "*".join(parts)

    def parse(self, text: str) -> "QwpElement":
        return _ElementParser(self, text).parse()


# -- elements ------------------------------------------------------------------
class QwpElement:
    """Sparse element; ``form`` is ``"right"`` (canonical) or ``"left"`` (a view)."""

    __slots__ = ("alg", "terms", "form")

    def __init__(self, alg: QwpAlgebra, terms: dict, form: str = "right"):
        if form not in ("right", "left"):
            raise ValueError("form must be 'right' or 'left'")
        self.alg, self.terms, self.form = alg, terms, form

    def right(self) -> "QwpElement":
        if self.form == "right":
            return self
        return QwpElement(self.alg, self.alg.to_right(self.terms), "right")

    def left(self) -> "QwpElement":
        if self.form == "left":
            return self
        return QwpElement(self.alg, self.alg.to_left(self.terms), "left")

    def _coerce(self, other) -> "QwpElement":
        if isinstance(other, QwpElement):
            if other.alg is not self.alg:
                raise ValueError("elements of different algebras")
            return other.right()
        return self.alg.scalar(other)

    def __add__(self, other):
        o = self._coerce(other)
        out = dict(self.right().terms)
        for k, c in o.terms.items():
            _acc(out, k, c)
        return QwpElement(self.alg, _clean(out))

    __radd__ = __add__

    def __neg__(self):
        r = self.right()
        return QwpElement(self.alg, {k: -c for k, c in r.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, QwpElement):
            o = self._coerce(other)
            return QwpElement(self.alg, self.alg.mul(self.right().terms, o.terms))
        c = Scalar._c(other)
        return QwpElement(self.alg, _clean({k: x * c for k, x in self.right().terms.items()}))

    def __rmul__(self, other):
        c = Scalar._c(other)
        return QwpElement(self.alg, _clean({k: c * x for k, x in self.right().terms.items()}))

    def __pow__(self, k: int):
        out = self.alg.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (QwpElement, int, Scalar)):
            o = self._coerce(other)
            return self.right().terms == o.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.right().terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def items(self):
        G = self.alg.G
        return sorted(self.terms.items(), key=lambda kv: (-G.length[kv[0][1]], G.elements[kv[0][1]], str(kv[0][0])))

    def specialize(self, smap) -> dict:
        out = {}
        for k, c in self.terms.items():
            val = smap(c)
            if val:
                out[k] = val
        return out

    def to_json(self) -> dict:
        G = self.alg.G
        return {
            "form": self.form,
            "terms": [
                {"coeff": c.to_json(), "tensor": [self.alg.B.name_of(s) for s in t], "perm": list(G.elements[w])}
                for (t, w), c in self.items()
            ],
        }

    def format(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (t, w), c in self.items():
            if self.form == "left" and w:
                lbl = f"H[{format_word(self.alg.G.words[w])}]"
                if t != self.alg.one_t:
                    lbl += "*(" + "⊗".join(self.alg.B.name_of(s) for s in t) + ")"
            else:
                lbl = self.alg.format_key(t, w)
            parts.append(_term(c, lbl))
        return _join(parts)

    def __str__(self):
        return self.format()

    __repr__ = __str__


def _term(c: Scalar, label: str) -> str:
    s = str(c)
    if not label:
        return s
    if s == "1":
        return label
    if s == "-1":
        return "-" + label
    return f"({s})*{label}" if c.needs_parens() else f"{s}*{label}"


def _join(parts: list) -> str:
    out = parts[0]
    for p in parts[1:]:
        out += " - " + p[1:] if p.startswith("-") else " + " + p
    return out


def element_from_json(alg: QwpAlgebra, data: dict) -> QwpElement:
    terms = {}
    for term in data["terms"]:
        t = tuple(alg.B.parse_name(s) for s in term["tensor"])
        w = alg.G.index[tuple(term["perm"])]
        _acc(terms, (t, w), Scalar.from_json(term["coeff"]))
    return QwpElement(alg, _clean(terms), data.get("form", "right"))


# -- parsing -------------------------------------------------------------------
_TOKEN = re.compile(r"\s*(?:(H\[[^\]]*\])|(H_?\d+)|(\()|(\))|([+\-*])|([^\s()+\-*]+))")


class _ElementParser:
    """Products of scalars, tensors ``(a⊗b)``, ``H[word or one-line]`` and ``H1``.

    ``@`` is accepted as an ASCII spelling of ``⊗``.
    """

    def __init__(self, alg: QwpAlgebra, text: str):
        self.alg = alg
        self.text = text.replace("@", "⊗")
        self.i = 0

    def parse(self) -> QwpElement:
        out = self.sum()
        self._ws()
        if self.i != len(self.text):
            raise ValueError(f"trailing input at {self.text[self.i:]!r}")
        return out

    def _ws(self):
        while self.i < len(self.text) and self.text[self.i].isspace():
            self.i += 1

    def _peek(self) -> str:
        self._ws()
        return self.text[self.i] if self.i < len(self.text) else ""

    def sum(self) -> QwpElement:
        sign = 1
        if self._peek() in "+-" and self._peek():
            sign = -1 if self.text[self.i] == "-" else 1
            self.i += 1
        out = self.product() * sign
        while self._peek() in ("+", "-") and self._peek():
            sign = -1 if self.text[self.i] == "-" else 1
            self.i += 1
            out = out + self.product() * sign
        return out

    def product(self) -> QwpElement:
        out = self.factor()
        while self._peek() == "*":
            self.i += 1
            out = out * self.factor()
        return out

    def _group(self) -> str:
        depth, start = 0, self.i
        while self.i < len(self.text):
            ch = self.text[self.i]
            depth += ch == "("
            depth -= ch == ")"
            self.i += 1
            if depth == 0:
                return self.text[start + 1: self.i - 1]
        raise ValueError("unbalanced parentheses")

    def factor(self) -> QwpElement:
        alg = self.alg
        ch = self._peek()
        if ch == "(":
            inner = self._group()
            if "⊗" in inner and not _has_top_level_op(inner):
                slots = [s.strip() for s in inner.split("⊗")]
                return alg.tensor([alg.B.parse_name(s) for s in slots])
            if "⊗" in inner or "H" in inner:
                return _ElementParser(alg, inner).parse()
            return alg.scalar(parse_scalar(inner))
        m = re.compile(r"H\[([^\]]*)\]|H_?(\d+)").match(self.text, self.i)
        if m:
            self.i = m.end()
            if m.group(2):
                return alg.H(int(m.group(2)))
            return alg.Hw(parse_perm(m.group(1), alg.d))
        m = re.compile(r"[A-Za-z0-9_^.]+").match(self.text, self.i)
        if not m:
            raise ValueError(f"cannot parse at {self.text[self.i:]!r}")
        self.i = m.end()
        tok = m.group(0)
        # allow negative exponents written as v^-1
        if tok.endswith("^") and self._peek() == "-":
            self.i += 1
            m2 = re.compile(r"\d+").match(self.text, self.i)
            self.i = m2.end()
            tok += "-" + m2.group(0)
        if alg.d == 1:
            try:
                return alg.tensor([alg.B.parse_name(tok)])
            except ValueError:
                pass
        return alg.scalar(parse_scalar(tok))


def _has_top_level_op(s: str) -> bool:
    depth = 0
    for k, ch in enumerate(s):
        depth += ch == "("
        depth -= ch == ")"
        if depth == 0 and ch in "+*" :
            return True
        if depth == 0 and ch == "-" and k > 0 and s[k - 1] != "^":
            return True
    return False


# -- derived structures ------------------------------------------------------------
class QuotientAlgebra:
    """``A // B^{⊗d}``: basis ``T̄_w``; products reduced through the counit."""

    def __init__(self, A: QwpAlgebra, h: Optional[Scalar]):
        self.A, self.h = A, h
        self.G = A.G
        B = A.B
        one_t = A.one_t
        self.eps = lambda t: _tensor_counit(B, t)
        self._one_t = one_t
        self.eS = _pair_counit(B, A.Q.S)
        self.eR = _pair_counit(B, A.Q.R)

    @property
    def dim(self) -> int:
        return len(self.G)

    def reduce(self, x: dict) -> dict:
        out: dict = {}
        for (t, w), c in x.items():
            _acc(out, w, c * self.eps(t))
        return _clean(out)

    def mul(self, x: dict, y: dict) -> dict:
        """Product of ``{w: c}`` elements via lifts ``H_w``."""
        A = self.A
        lx = {(self._one_t, w): c for w, c in x.items()}
        ly = {(self._one_t, w): c for w, c in y.items()}
        return self.reduce(A.mul(lx, ly))

    def gen(self, i: int) -> dict:
        return {self.G.rmul[i][0]: ONE}

    def check_quadratic(self) -> bool:
        for i in range(1, self.A.d):
            t = self.gen(i)
            lhs = self.mul(t, t)
            rhs = _clean({self.G.rmul[i][0]: self.eS, 0: self.eR})
            if lhs != rhs:
                return False
        return True

    def is_hecke(self, q: Scalar) -> bool:
        return self.eS == q - 1 and self.eR == q


def _tensor_counit(B: BaseAlgebra, t: tuple) -> Scalar:
    c = ONE
    for s in t:
        c = c * B.counit({s: ONE})
    return c


def _pair_counit(B: BaseAlgebra, x: dict) -> Scalar:
    tot = Scalar(0)
    for p, c in x.items():
        tot = tot + c * _tensor_counit(B, p)
    return tot


def quotient_augmentation(A: QwpAlgebra) -> QuotientAlgebra:
    """Check the augmentation identity and normality, then build ``A // B^{⊗d}``.

    Raises :class:`PreconditionError` when ``B`` has no counit, when ``σ`` does
    not map ``b_i⊗b_j`` into ``K·b_j⊗b_i``, or when no scalar ``h`` with
    ``h² = ε(S)h + ε(R)`` satisfies ``h(ε(b) - εσ(b)) = ερ(b)``.
    """
    B, Q = A.B, A.Q
    if B.counit_rule is None:
        raise PreconditionError(f"{B.name} declares no counit")
    idx = B.window_indices(4)
    h = None
    ratio_needed = []
    for a in idx:
        for b in idx:
            p = (a, b)
            sp = Q.sigma_pair(p)
            if any(k != (b, a) for k in sp):
                raise PreconditionError(f"σ{p} is not a multiple of the flipped pair")
            lhs = _pair_counit(B, {p: ONE}) - _pair_counit(B, sp)
            rhs = _pair_counit(B, Q.rho_pair(p))
            if lhs:
                ratio_needed.append((lhs, rhs, p))
            elif rhs:
                raise PreconditionError(f"augmentation identity fails at {p}: ερ = {rhs}, ε-σ defect 0")
    eS, eR = _pair_counit(B, Q.S), _pair_counit(B, Q.R)
    for lhs, rhs, p in ratio_needed:
        cand = rhs.divexact(lhs)
        if h is None:
            h = cand
        elif cand != h:
            raise PreconditionError(f"inconsistent h at {p}")
    if h is not None and h * h != eS * h + eR:
        raise PreconditionError("h does not satisfy h² = ε(S)h + ε(R)")
    return QuotientAlgebra(A, h)


def trace_form(A: QwpAlgebra, x: QwpElement, y: QwpElement, check: bool = True) -> Scalar:
    """``β_A(x, y)``: the ``H_e`` component of ``xy`` under ``tr^{⊗d}``."""
    if check:
        check_trace_preconditions(A)
    prod = (x * y).terms
    tot = Scalar(0)
    for (t, w), c in prod.items():
        if w == 0:
            tot = tot + c * _tensor_trace(A.B, t)
    return tot


def _tensor_trace(B: BaseAlgebra, t: tuple) -> Scalar:
    c = ONE
    for s in t:
        c = c * B.trace({s: ONE})
    return c


def check_trace_preconditions(A: QwpAlgebra) -> None:
    from .linalg import rank_scalar_matrix

    B, Q = A.B, A.Q
    key = "_trace_ok"
    if getattr(A, key, False):
        return
    if not B.finite or B.trace_rule is None:
        raise PreconditionError("trace form needs a finite base with a declared trace")
    if not Q.rho_zero:
        raise PreconditionError("trace form needs ρ = 0")
    pairs = [(a, b) for a in B.basis for b in B.basis]
    for p in pairs:
        if _pair_trace(B, Q.sigma_pair(p)) != _pair_trace(B, {p: ONE}):
            raise PreconditionError(f"σ is not trace preserving at {p}")
    index = {p: k for k, p in enumerate(pairs)}
    mat = [[Scalar(0)] * len(pairs) for _ in pairs]
    for p in pairs:
        for k, c in B.tensor_mul(Q.R, {p: ONE}).items():
            mat[index[k]][index[p]] = mat[index[k]][index[p]] + c
    if rank_scalar_matrix(mat) != len(pairs):
        raise PreconditionError("R is not invertible")
    setattr(A, key, True)


def _pair_trace(B: BaseAlgebra, x: dict) -> Scalar:
    tot = Scalar(0)
    for (a, b), c in x.items():
        tot = tot + c * B.trace({a: ONE}) * B.trace({b: ONE})
    return tot


# -- Bernstein-Lusztig and Jucys-Murphy probes -----------------------------------
def _swap(lam: tuple, i: int) -> tuple:
    t = list(lam)
    t[i - 1], t[i] = t[i], t[i - 1]
    return tuple(t)


def bl_affine_rhs(A: QwpAlgebra, lam: tuple, i: int, q: Scalar, identification: str = "inverse") -> dict:
    """``Y^{s_iλ} T_i + (q-1)(Y^λ - Y^{s_iλ})/(1 - Y^{-α_i})`` in right normal form.

    ``identification`` maps ``Y^λ`` to ``X^λ`` (``"literal"``) or to
    ``X^{-λ}`` (``"inverse"``); ``T_i`` goes to ``H_i``.  With
    ``u = Y^{-α_i}`` and ``k = λ_i - λ_{i+1}`` the quotient is
    ``Y^{s_iλ} Σ_{j<k} u^{j-k}`` for ``k > 0`` and ``-Y^{s_iλ} Σ_{j<-k} u^j``
    for ``k < 0``.
    """
    sgn = {"literal": 1, "inverse": -1}[identification]
    to_x = lambda y: tuple(sgn * e for e in y)  # noqa: E731
    mu = _swap(lam, i)
    out = {(to_x(mu), A.G.rmul[i][0]): ONE}
    k = lam[i - 1] - lam[i]
    js = [j - k for j in range(k)] if k > 0 else list(range(-k))
    sign = ONE if k > 0 else -ONE
    for j in js:
        t = list(mu)
        t[i - 1] -= j
        t[i] += j
        _acc(out, (to_x(tuple(t)), 0), sign * (q - 1))
    return _clean(out)


def bl_degenerate_rhs(A: QwpAlgebra, lam: tuple, i: int) -> dict:
    """``x^{s_iλ} H_i - (x^λ - x^{s_iλ})/(x_i - x_{i+1})``.

    The divided difference is ``x_i^m x_{i+1}^m Σ_j x_i^j x_{i+1}^{k-1-j}`` with
    ``m = min`` and ``k = λ_i - λ_{i+1} > 0``; antisymmetric in ``k``.
    """
    mu = _swap(lam, i)
    out = {(mu, A.G.rmul[i][0]): ONE}
    a, b = lam[i - 1], lam[i]
    k, lo = abs(a - b), min(a, b)
    sign = -ONE if a > b else ONE
    for j in range(k):
        t = list(lam)
        t[i - 1], t[i] = lo + j, lo + k - 1 - j
        _acc(out, (tuple(t), 0), sign)
    return _clean(out)


def check_bernstein_lusztig(A: QwpAlgebra, kind: str, bound: int = 4, q: Scalar = None,
                            identification: str = "inverse") -> dict:
    """Compare ``H_i Y^λ`` with the closed Bernstein-Lusztig form for all ``|λ_j| ≤ bound``.

    ``kind`` is ``"affine"`` (Laurent exponents in ``[-bound, bound]``) or
    ``"degenerate"`` (exponents in ``[0, bound]``).  For the affine case
    ``identification`` selects ``Y^λ ↦ X^{-λ}`` (default, which is the one
    the wreath relation realizes) or ``Y^λ ↦ X^λ``.  Returns counts and the
    first mismatch.
    """
    import itertools

    from .coeff import Q as QVAR

    q = QVAR if q is None else q
    lo = -bound if kind == "affine" else 0
    checked, bad = 0, None
    for lam in itertools.product(range(lo, bound + 1), repeat=A.d):
        for i in range(1, A.d):
            if kind == "affine":
                x = lam if identification == "literal" else tuple(-e for e in lam)
                lhs = A.F(A.G.rmul[i][0], x)
                rhs = bl_affine_rhs(A, lam, i, q, identification)
            else:
                lhs = A.F(A.G.rmul[i][0], lam)
                rhs = bl_degenerate_rhs(A, lam, i)
            checked += 1
            if lhs != rhs and bad is None:
                bad = {"lambda": lam, "i": i}
    return {"checked": checked, "ok": bad is None, "witness": bad}


def jucys_murphy(A: QwpAlgebra, q: Scalar = None) -> list:
    """``L_1 = X⊗1⊗…`` and ``L_{i+1} = q^{-1} H_i L_i H_i`` as right normal forms."""
    from .coeff import Q as QVAR

    q = QVAR if q is None else q
    gen = A.B.generators[0]
    t = list(A.one_t)
    t[0] = gen
    Ls = [{(tuple(t), 0): ONE}]
    qinv = Scalar({(("q", -1),): 1}) if q == QVAR else None
    for i in range(1, A.d):
        Hi = {(A.one_t, A.G.rmul[i][0]): ONE}
        y = A.mul(A.mul(Hi, Ls[-1]), Hi)
        Ls.append(_clean({k: c * qinv if qinv is not None else c.divexact(q) for k, c in y.items()}))
    return Ls


def check_jucys_murphy(A: QwpAlgebra) -> dict:
    """``L_{i+1}`` equals ``X`` in slot ``i+1`` and the ``L_i`` commute pairwise."""
    Ls = jucys_murphy(A)
    gen = A.B.generators[0]
    slots = []
    for j in range(A.d):
        t = list(A.one_t)
        t[j] = gen
        slots.append({(tuple(t), 0): ONE})
    return {
        "slot": all(L == s for L, s in zip(Ls, slots)),
        "commute": all(A.mul(x, y) == A.mul(y, x) for x in Ls for y in Ls),
        "L": Ls,
    }
