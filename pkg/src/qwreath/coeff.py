"""Exact coefficients: sparse multivariate integer Laurent polynomials.

A :class:`Scalar` is an element of ``Z[v^±1, q^±1, q1^±1, ...]``.  Every
variable is a Laurent variable.  Only the variables in ``BAR_VARIABLES``
invert under the bar involution; parameters such as ``q1`` stay fixed.

>>> v = Scalar.var("v")
>>> (v - v**-1) * (v + v**-1)
v^2 - v^-2
>>> Scalar.parse("2*v - 1").bar()
2*v^-1 - 1
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Union

#: Monomial: sorted tuple of (variable, nonzero exponent) pairs.
Mono = tuple

BAR_VARIABLES = frozenset({"v"})

#: Default modulus for prime-field work (largest prime below 2^62).
DEFAULT_PRIME = 4611686018427387847


class InexactDivision(ArithmeticError):
    """Raised when a Laurent division leaves a remainder."""


def _mono_mul(a: Mono, b: Mono) -> Mono:
    if not a:
        return b
    if not b:
        return a
    if len(a) == 1 and len(b) == 1:
        (na, ea), (nb, eb) = a[0], b[0]
        if na == nb:
            e = ea + eb
            return ((na, e),) if e else ()
        return (a[0], b[0]) if na < nb else (b[0], a[0])
    out = dict(a)
    for n, e in b:
        t = out.get(n, 0) + e
        if t:
            out[n] = t
        else:
            out.pop(n, None)
    return tuple(sorted(out.items()))


def _mono_pow(a: Mono, k: int) -> Mono:
    return tuple((n, e * k) for n, e in a) if k else ()


class Scalar:
    """Immutable sparse Laurent polynomial with integer coefficients."""

    __slots__ = ("_t", "_h")

    def __init__(self, terms: Union[int, Mapping[Mono, int], None] = None):
        if terms is None or (isinstance(terms, int) and terms == 0):
            self._t = {}
        elif isinstance(terms, int):
            self._t = {(): terms}
        else:
            self._t = {m: c for m, c in terms.items() if c}
        self._h = None

    @classmethod
    def _raw(cls, t: dict) -> "Scalar":
        s = object.__new__(cls)
        s._t = t
        s._h = None
        return s

    @classmethod
    def var(cls, name: str, exp: int = 1) -> "Scalar":
        return cls._raw({((name, exp),): 1} if exp else {(): 1})

    @classmethod
    def const(cls, n: int) -> "Scalar":
        return cls(n)

    # -- inspection -------------------------------------------------------
    @property
    def terms(self) -> dict:
        return dict(self._t)

    def items(self):
        return self._t.items()

    def is_zero(self) -> bool:
        return not self._t

    def __bool__(self) -> bool:
        return bool(self._t)

    def variables(self) -> set:
        return {n for m in self._t for n, _ in m}

    def is_monomial(self) -> bool:
        return len(self._t) == 1

    def constant_term(self) -> int:
        return self._t.get((), 0)

    def is_constant(self) -> bool:
        return not self._t or (len(self._t) == 1 and () in self._t)

    def degrees(self, name: str) -> list:
        return sorted({dict(m).get(name, 0) for m in self._t})

    def coeff_of(self, name: str, exp: int) -> "Scalar":
        """Coefficient of ``name^exp`` as a Scalar in the other variables."""
        out: dict = {}
        for m, c in self._t.items():
            d = dict(m)
            if d.get(name, 0) == exp:
                d.pop(name, None)
                out[tuple(sorted(d.items()))] = c
        return Scalar._raw(out)

    # -- arithmetic -------------------------------------------------------
    @staticmethod
    def _c(x) -> "Scalar":
        if isinstance(x, Scalar):
            return x
        if isinstance(x, int):
            return Scalar(x)
        return NotImplemented

    def __add__(self, other):
        o = Scalar._c(other)
        if o is NotImplemented:
            return NotImplemented
        if not o._t:
            return self
        if not self._t:
            return o
        t = dict(self._t)
        for m, c in o._t.items():
            s = t.get(m, 0) + c
            if s:
                t[m] = s
            else:
                del t[m]
        return Scalar._raw(t)

    __radd__ = __add__

    def __neg__(self):
        return Scalar._raw({m: -c for m, c in self._t.items()})

    def __sub__(self, other):
        o = Scalar._c(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return Scalar._raw({})
            if other == 1:
                return self
            return Scalar._raw({m: c * other for m, c in self._t.items()})
        o = Scalar._c(other)
        if o is NotImplemented:
            return NotImplemented
        a, b = self._t, o._t
        if not a or not b:
            return Scalar._raw({})
        if len(b) == 1 and () in b:
            return self * b[()]
        if len(a) == 1 and () in a:
            return o * a[()]
        t: dict = {}
        for ma, ca in a.items():
            for mb, cb in b.items():
                m = _mono_mul(ma, mb)
                s = t.get(m, 0) + ca * cb
                if s:
                    t[m] = s
                else:
                    del t[m]
        return Scalar._raw(t)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if len(self._t) != 1:
                raise InexactDivision(f"{self} is not a unit")
            (m, c), = self._t.items()
            if c not in (1, -1):
                raise InexactDivision(f"{self} is not a unit")
            return Scalar._raw({_mono_pow(m, k): c ** (-k)})
        out = Scalar(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            return self._t == ({(): other} if other else {})
        if isinstance(other, Scalar):
            return self._t == other._t
        return NotImplemented

    def __hash__(self):
        if self._h is None:
            self._h = hash(frozenset(self._t.items()))
        return self._h

    # -- division ---------------------------------------------------------
    def divexact(self, other) -> "Scalar":
        """Exact quotient in the Laurent ring, or :class:`InexactDivision`."""
        b = Scalar._c(other)
        if not b._t:
            raise ZeroDivisionError("division by zero Scalar")
        if not self._t:
            return self
        if len(b._t) == 1:
            (mb, cb), = b._t.items()
            inv = _mono_pow(mb, -1)
            t = {}
            for m, c in self._t.items():
                qv, r = divmod(c, cb)
                if r:
                    raise InexactDivision(f"{self} / {b}")
                t[_mono_mul(m, inv)] = qv
            return Scalar._raw(t)
        names = sorted(self.variables() | b.variables())
        an, sa = _to_poly(self, names)
        bn, sb = _to_poly(b, names)
        qt = _poly_divexact(an, bn)
        if qt is None:
            raise InexactDivision(f"{self} / {b}")
        shift = tuple(x - y for x, y in zip(sa, sb))
        t = {}
        for e, c in qt.items():
            m = tuple((n, x + s) for n, x, s in zip(names, e, shift) if x + s)
            t[m] = c
        return Scalar._raw(t)

    # -- involutions and maps --------------------------------------------
    def bar(self, variables: Iterable[str] = BAR_VARIABLES) -> "Scalar":
        vs = frozenset(variables)
        t = {}
        for m, c in self._t.items():
            t[tuple((n, -e if n in vs else e) for n, e in m)] = c
        return Scalar._raw(t)

    def subs(self, name: str, value: "Scalar") -> "Scalar":
        """Substitute ``name`` by a Scalar (must be a unit if negative powers occur)."""
        out = Scalar(0)
        cache: dict = {}
        for m, c in self._t.items():
            d = dict(m)
            e = d.pop(name, 0)
            if e not in cache:
                cache[e] = value ** e
            out = out + Scalar._raw({tuple(sorted(d.items())): c}) * cache[e]
        return out

    def specialize(self, smap: "SpecializationMap"):
        return smap(self)

    # -- text ------------------------------------------------------------
    def _sorted_terms(self):
        def key(item):
            m = item[0]
            return (-sum(e for _, e in m), tuple((n, -e) for n, e in m))

        return sorted(self._t.items(), key=key)

    def __str__(self) -> str:
        if not self._t:
            return "0"
        parts = []
        for m, c in self._sorted_terms():
            mono = "*".join(n if e == 1 else f"{n}^{e}" for n, e in m)
            a = abs(c)
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            if not parts:
                parts.append(body if c > 0 else "-" + body)
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)

    __repr__ = __str__

    def needs_parens(self) -> bool:
        """True when the printed form is a sum of several terms."""
        return len(self._t) > 1

    @classmethod
    def parse(cls, text: str) -> "Scalar":
        return parse_scalar(text)

    def to_json(self) -> list:
        return [[dict(m), c] for m, c in self._sorted_terms()]

    @classmethod
    def from_json(cls, data) -> "Scalar":
        return cls({tuple(sorted((k, int(e)) for k, e in m.items() if e)): int(c) for m, c in data})


def _to_poly(a: Scalar, names: list):
    """Shift ``a`` into a polynomial over ``names``; return (dict, shift)."""
    vecs = [(tuple(dict(m).get(n, 0) for n in names), c) for m, c in a.items()]
    mins = [min(v[i] for v, _ in vecs) for i in range(len(names))]
    return {tuple(x - s for x, s in zip(v, mins)): c for v, c in vecs}, mins


def _poly_divexact(a: dict, b: dict):
    """Lex-order division of integer polynomials; None if not exact."""
    lb = max(b)
    cb = b[lb]
    rem = dict(a)
    q: dict = {}
    while rem:
        la = max(rem)
        ca = rem[la]
        diff = tuple(x - y for x, y in zip(la, lb))
        if min(diff, default=0) < 0 or ca % cb:
            return None
        f = ca // cb
        q[diff] = f
        for e, c in b.items():
            k = tuple(x + y for x, y in zip(e, diff))
            s = rem.get(k, 0) - f * c
            if s:
                rem[k] = s
            else:
                rem.pop(k, None)
    return q


# -- parsing -----------------------------------------------------------------
_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\^)|(\*)|(\+)|(-)|(\()|(\)))")


class ParseError(ValueError):
    pass


def _tokenize(text: str) -> list:
    toks, pos = [], 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character at {pos} in {text!r}")
        pos = m.end()
        kinds = ("int", "name", "^", "*", "+", "-", "(", ")")
        for k, g in zip(kinds, m.groups()):
            if g is not None:
                toks.append((k, g))
                break
    return toks


class _ScalarParser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i][0] if self.i < len(self.toks) else None

    def take(self, kind=None):
        tok = self.toks[self.i]
        if kind and tok[0] != kind:
            raise ParseError(f"expected {kind}, got {tok[1]!r}")
        self.i += 1
        return tok[1]

    def expr(self) -> Scalar:
        sign = 1
        if self.peek() in ("+", "-"):
            sign = -1 if self.take() == "-" else 1
        out = self.term() * sign
        while self.peek() in ("+", "-"):
            sign = -1 if self.take() == "-" else 1
            out = out + self.term() * sign
        return out

    def term(self) -> Scalar:
        out = self.power()
        while self.peek() == "*":
            self.take()
            out = out * self.power()
        return out

    def power(self) -> Scalar:
        base = self.atom()
        if self.peek() == "^":
            self.take()
            neg = False
            if self.peek() == "-":
                self.take()
                neg = True
            k = int(self.take("int"))
            base = base ** (-k if neg else k)
        return base

    def atom(self) -> Scalar:
        k = self.peek()
        if k == "int":
            return Scalar(int(self.take()))
        if k == "name":
            return Scalar.var(self.take())
        if k == "(":
            self.take()
            e = self.expr()
            self.take(")")
            return e
        if k == "-":
            self.take()
            return -self.power()
        raise ParseError(f"unexpected token {self.toks[self.i][1] if k else 'end'!r}")


def parse_scalar(text: str) -> Scalar:
    """Parse ``2*v^-1 - q1*q2 + (q-1)^2`` style expressions."""
    p = _ScalarParser(text)
    out = p.expr()
    if p.i != len(p.toks):
        raise ParseError(f"trailing input in {text!r}")
    return out


# -- specialization ----------------------------------------------------------
@dataclass(frozen=True)
class SpecializationMap:
    """Ring map to QQ (``prime=None``) or GF(prime)."""

    values: Mapping[str, Union[int, Fraction]]
    prime: Union[int, None] = None
    _inv: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        for name, val in self.values.items():
            if (self.prime is None and val == 0) or (self.prime is not None and int(val) % self.prime == 0):
                raise ValueError(f"value of Laurent variable {name} is not invertible")
        object.__setattr__(self, "values", dict(self.values))

    @property
    def target(self) -> str:
        return "QQ" if self.prime is None else f"GF({self.prime})"

    def _power(self, name: str, e: int):
        val = self.values[name]
        if self.prime is None:
            return Fraction(val) ** e
        p = self.prime
        x = int(val) % p
        return pow(x, e, p) if e >= 0 else pow(pow(x, -1, p), -e, p)

    def __call__(self, a: Union[Scalar, int]):
        if isinstance(a, int):
            return Fraction(a) if self.prime is None else a % self.prime
        total = Fraction(0) if self.prime is None else 0
        for m, c in a.items():
            t = Fraction(c) if self.prime is None else c
            for n, e in m:
                if n not in self.values:
                    raise KeyError(f"specialization does not assign {n}")
                t = t * self._power(n, e)
                if self.prime is not None:
                    t %= self.prime
            total += t
        return total if self.prime is None else total % self.prime

    def with_values(self, **kw) -> "SpecializationMap":
        vals = dict(self.values)
        vals.update(kw)
        return SpecializationMap(vals, self.prime)


def random_point(names: Iterable[str], seed: int, prime: int = DEFAULT_PRIME) -> SpecializationMap:
    """Seeded random prime-field point, avoiding zero."""
    rng = random.Random(seed)
    return SpecializationMap({n: rng.randrange(2, prime - 1) for n in sorted(names)}, prime)


def v_point(t: int, prime: int | None = None, **extra) -> SpecializationMap:
    """Point with ``v -> t`` and ``q -> t^2`` (the v^2 = q convention)."""
    vals = {"v": t, "q": t * t}
    vals.update(extra)
    return SpecializationMap(vals, prime)


V = Scalar.var("v")
Q = Scalar.var("q")
ONE = Scalar(1)
ZERO = Scalar(0)
