"""Base algebras ``B`` with a distinguished basis, and their tensor powers.

Elements of ``B`` are dicts ``{basis index: Scalar}``; elements of
``B^{⊗k}`` are dicts ``{tuple of basis indices: Scalar}``.  Infinite
monomial bases carry an exponent window and raise
:class:`TruncationOverflow` instead of silently dropping terms.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

from .coeff import ONE, Q, Scalar, parse_scalar
from .perm import all_perms, compose, format_word, length, parse_perm

DEFAULT_WINDOW = 16


class TruncationOverflow(ArithmeticError):
    """An exponent left the configured window of an infinite base."""


class UndeclaredFunctional(ValueError):
    """Counit or trace requested on an instance that does not declare it."""


class StructureError(ValueError):
    """Structure constants fail associativity or the unit axiom."""


def _acc(out: dict, k, c) -> None:
    s = out.get(k)
    if s is None:
        out[k] = c
    else:
        s = s + c
        if s:
            out[k] = s
        else:
            del out[k]


@dataclass(eq=False)
class BaseAlgebra:
    """Basis-indexed algebra descriptor.

    ``basis`` is the finite index list, or ``None`` for the monomial
    domains ``Z`` (Laurent) and ``N`` (polynomial).
    """

    name: str
    kind: str
    basis: Optional[list]
    rule: Callable
    unit: object
    counit_rule: Optional[Callable] = None
    trace_rule: Optional[Callable] = None
    generators: list = field(default_factory=list)
    window: Optional[int] = None
    lower: Optional[int] = None
    namer: Callable = str
    parser: Optional[Callable] = None
    commutative: bool = False
    params: dict = field(default_factory=dict)
    _cache: dict = field(default_factory=dict, repr=False)

    # -- structure ---------------------------------------------------------------
    @property
    def finite(self) -> bool:
        return self.basis is not None

    @property
    def dim(self):
        return len(self.basis) if self.finite else float("inf")

    def check_index(self, i) -> None:
        if self.finite:
            return
        lo = self.lower if self.lower is not None else -self.window
        if not lo <= i <= self.window:
            raise TruncationOverflow(f"{self.name}: exponent {i} outside window [{lo}, {self.window}]")

    def mul_basis(self, i, j) -> dict:
        key = (i, j)
        r = self._cache.get(key)
        if r is None:
            r = self.rule(i, j)
            for k in r:
                self.check_index(k)
            self._cache[key] = r
        return r

    def mul(self, x: dict, y: dict) -> dict:
        out: dict = {}
        for i, a in x.items():
            for j, b in y.items():
                for k, c in self.mul_basis(i, j).items():
                    _acc(out, k, a * b * c)
        return out

    def one(self) -> dict:
        return {self.unit: ONE}

    def counit(self, x: dict) -> Scalar:
        if self.counit_rule is None:
            raise UndeclaredFunctional(f"{self.name} declares no counit")
        return sum((c * self.counit_rule(i) for i, c in x.items()), Scalar(0))

    def trace(self, x: dict) -> Scalar:
        if self.trace_rule is None:
            raise UndeclaredFunctional(f"{self.name} declares no trace")
        return sum((c * self.trace_rule(i) for i, c in x.items()), Scalar(0))

    def window_indices(self, n: Optional[int] = None) -> list:
        """Basis indices to sample: the full basis, or monomials in a window."""
        if self.finite:
            return list(self.basis)
        n = self.window if n is None else min(n, self.window)
        lo = 0 if self.lower == 0 else -n
        return list(range(lo, n + 1))

    def name_of(self, i) -> str:
        return self.namer(i)

    def parse_name(self, text: str):
        t = text.strip()
        if self.parser is not None:
            return self.parser(t)
        for i in self.basis or []:
            if self.namer(i) == t:
                return i
        raise ValueError(f"unknown basis element {text!r} for {self.name}")

    # -- checks ------------------------------------------------------------------
    def check_axioms(self, n: int = 4) -> list:
        """Associativity and unit on all (finite) or windowed triples; returns failures."""
        idx = self.window_indices(n)
        bad = []
        for i in idx:
            if self.mul_basis(self.unit, i) != {i: ONE} or self.mul_basis(i, self.unit) != {i: ONE}:
                bad.append(("unit", i))
        for i, j, k in itertools.product(idx, repeat=3):
            try:
                lhs = self.mul(self.mul({i: ONE}, {j: ONE}), {k: ONE})
                rhs = self.mul({i: ONE}, self.mul({j: ONE}, {k: ONE}))
            except TruncationOverflow:
                continue
            if lhs != rhs:
                bad.append(("assoc", (i, j, k)))
        return bad

    def gram_determinant_nonzero(self) -> bool:
        """Symmetric-algebra check: ``(tr(b_i b_j))`` invertible over the fraction field."""
        from .linalg import rank_scalar_matrix

        if not self.finite or self.trace_rule is None:
            raise UndeclaredFunctional("needs a finite basis and a trace")
        mat = [[self.trace(self.mul({i: ONE}, {j: ONE})) for j in self.basis] for i in self.basis]
        return rank_scalar_matrix(mat) == len(self.basis)

    # -- tensor powers -------------------------------------------------------------
    def tensor_mul(self, x: dict, y: dict) -> dict:
        out: dict = {}
        for a, ca in x.items():
            for b, cb in y.items():
                c0 = ca * cb
                slots = [self.mul_basis(i, j) for i, j in zip(a, b)]
                if len(slots) == 2:
                    s0, s1 = slots
                    for k0, c1 in s0.items():
                        for k1, c2 in s1.items():
                            _acc(out, (k0, k1), c0 * c1 * c2)
                    continue
                for combo in itertools.product(*(s.items() for s in slots)):
                    c = c0
                    for _, cc in combo:
                        c = c * cc
                    _acc(out, tuple(k for k, _ in combo), c)
        return out

    def tensor_one(self, k: int) -> tuple:
        return (self.unit,) * k

    def tensor_counit(self, x: dict) -> Scalar:
        total = Scalar(0)
        for t, c in x.items():
            for i in t:
                c = c * self.counit_rule(i) if self.counit_rule else self.counit({i: ONE})
            total = total + c
        return total

    def tensor_trace(self, x: dict) -> Scalar:
        if self.trace_rule is None:
            raise UndeclaredFunctional(f"{self.name} declares no trace")
        total = Scalar(0)
        for t, c in x.items():
            for i in t:
                c = c * self.trace_rule(i)
            total = total + c
        return total

    def format_tensor(self, t: tuple) -> str:
        return "(" + "⊗".join(self.name_of(i) for i in t) + ")"

    def __repr__(self):
        return f"BaseAlgebra({self.name})"


# -- monomial helpers ---------------------------------------------------------------
def _mono_name(var: str):
    def name(a: int) -> str:
        if a == 0:
            return "1"
        return var if a == 1 else f"{var}^{a}"

    return name


def _mono_parser(var: str):
    pat = re.compile(rf"^{re.escape(var)}(?:\^(-?\d+))?$")

    def parse(t: str) -> int:
        if t == "1":
            return 0
        m = pat.match(t.replace(" ", ""))
        if not m:
            raise ValueError(f"cannot parse monomial {t!r}")
        return int(m.group(1)) if m.group(1) else 1

    return parse


def demazure(a: int, b: int) -> dict:
    """``∂(X^a ⊗ X^b) = (X^a⊗X^b - X^b⊗X^a)/(X⊗1 - 1⊗X)`` as monomial pairs.

    >>> demazure(2, 0) == {(1, 0): 1, (0, 1): 1}
    True
    """
    if a == b:
        return {}
    if a < b:
        return {k: -c for k, c in demazure(b, a).items()}
    return {(k, a + b - 1 - k): Scalar(1) for k in range(b, a)}


# -- instances -------------------------------------------------------------------
def laurent_ring(window: int = DEFAULT_WINDOW, var: str = "X", counit: Optional[Scalar] = None) -> BaseAlgebra:
    """``K[X^{±1}]`` on the window ``[-N, N]``; optional counit ``X -> counit``."""
    cr = (lambda a: counit ** a) if counit is not None else None
    return BaseAlgebra(
        name=f"K[{var}^±1]", kind="laurent_ring", basis=None,
        rule=lambda a, b: {a + b: ONE}, unit=0, counit_rule=cr,
        generators=[1, -1], window=window, namer=_mono_name(var),
        parser=_mono_parser(var), commutative=True, params={"window": window},
    )


def poly_ring(window: int = DEFAULT_WINDOW, var: str = "X", counit: Optional[Scalar] = None) -> BaseAlgebra:
    cr = (lambda a: counit ** a) if counit is not None else None
    return BaseAlgebra(
        name=f"K[{var}]", kind="poly_ring", basis=None,
        rule=lambda a, b: {a + b: ONE}, unit=0, counit_rule=cr,
        generators=[1], window=window, lower=0, namer=_mono_name(var),
        parser=_mono_parser(var), commutative=True, params={"window": window},
    )


def elementary_symmetric(names: list) -> list:
    """``[e_1, ..., e_m]`` of the given variables as Scalars."""
    xs = [Scalar.var(n) for n in names]
    out = []
    for k in range(1, len(xs) + 1):
        tot = Scalar(0)
        for combo in itertools.combinations(xs, k):
            p = Scalar(1)
            for x in combo:
                p = p * x
            tot = tot + p
        out.append(tot)
    return out


def cyclotomic_quotient(params: Iterable[str] = ("q1", "q2"), var: str = "X") -> BaseAlgebra:
    """``K[X]/∏(X - q_i)`` with basis ``1, X, ..., X^{m-1}``."""
    names = list(params)
    m = len(names)
    if m < 1 or len(set(names)) != m:
        raise ValueError("cyclotomic quotient needs m >= 1 distinct parameter symbols")
    e = elementary_symmetric(names)
    # X^m = sum (-1)^{i-1} e_i X^{m-i}
    top = {m - i: e[i - 1] * (-1) ** (i - 1) for i in range(1, m + 1)}
    powers = [{k: ONE} for k in range(m)]
    for k in range(m, 2 * m - 1):
        prev = powers[k - 1]
        nxt: dict = {}
        for j, c in prev.items():
            if j + 1 < m:
                _acc(nxt, j + 1, c)
            else:
                for jj, cc in top.items():
                    _acc(nxt, jj, c * cc)
        powers.append(nxt)

    return BaseAlgebra(
        name=f"K[{var}]/∏({var}-q_i), m={m}", kind="cyclotomic_quotient", basis=list(range(m)),
        rule=lambda a, b: dict(powers[a + b]), unit=0, generators=[1] if m > 1 else [],
        namer=_mono_name(var), parser=_mono_parser(var), commutative=True,
        params={"params": names},
    )


def group_algebra_cyclic(m: int, var: str = "x") -> BaseAlgebra:
    """``K C_m`` with counit ``x -> 1`` and trace ``δ_{g,1}``."""
    if m < 1:
        raise ValueError("m >= 1")
    return BaseAlgebra(
        name=f"KC_{m}", kind="group_algebra_cyclic", basis=list(range(m)),
        rule=lambda a, b: {(a + b) % m: ONE}, unit=0,
        counit_rule=lambda a: ONE, trace_rule=lambda a: ONE if a == 0 else Scalar(0),
        generators=[1] if m > 1 else [], namer=_mono_name(var), parser=_mono_parser(var),
        commutative=True, params={"m": m},
    )


def hecke_symmetric(m: int, q: Optional[Scalar] = None) -> BaseAlgebra:
    """``H_q(Σ_m)`` on ``{T_w}``; index counit ``T_w -> q^{l(w)}``, trace ``δ_{w,e}``."""
    from .hecke.algebra import HeckeAlgebra

    H = HeckeAlgebra("A", m, q=q)
    ws = all_perms(m)
    e = ws[0]

    def rule(x, y):
        prod = H.T(x) * H.T(y)
        return {w: c for w, c in prod.items()}

    def name(w):
        return "1" if w == e else f"T[{format_word(H.G.words[H.G.index[w]])}]"

    def parse(t):
        if t in ("1", "T[e]", "e"):
            return e
        if t.startswith("T"):
            t = t[1:]
            if t.startswith("[") and t.endswith("]") and not re.match(r"^\[\s*-?\d+\s*,", t):
                t = t[1:-1]
            elif re.match(r"^\d+$", t):
                t = f"s{t}"
        return parse_perm(t, m)

    qq = H.q
    return BaseAlgebra(
        name=f"H_q(Σ_{m})", kind="hecke_symmetric", basis=ws, rule=rule, unit=e,
        counit_rule=lambda w: qq ** length(w), trace_rule=lambda w: ONE if w == e else Scalar(0),
        generators=[ws[1 + k] for k in range(m - 1)] if m > 1 else [], namer=name, parser=parse,
        commutative=m <= 2, params={"m": m, "hecke": H},
    )


def structure_constants(names: list, table: dict, unit: int = 0, counit: Optional[dict] = None,
                        trace: Optional[dict] = None, name: str = "B") -> BaseAlgebra:
    """Finite algebra from ``table[(i, j)] = {k: Scalar}``; checked at construction."""
    n = len(names)
    tbl = {(i, j): {k: (c if isinstance(c, Scalar) else parse_scalar(str(c))) for k, c in table.get((i, j), {}).items()}
           for i in range(n) for j in range(n)}
    cr = (lambda i: counit.get(i, Scalar(0))) if counit is not None else None
    tr = (lambda i: trace.get(i, Scalar(0))) if trace is not None else None
    B = BaseAlgebra(
        name=name, kind="structure_constants", basis=list(range(n)),
        rule=lambda i, j: {k: c for k, c in tbl[(i, j)].items() if c}, unit=unit,
        counit_rule=cr, trace_rule=tr, generators=list(range(n)),
        namer=lambda i: names[i], commutative=all(tbl[(i, j)] == tbl[(j, i)] for i in range(n) for j in range(n)),
        params={"names": list(names)},
    )
    bad = B.check_axioms()
    if bad:
        raise StructureError(f"structure constants rejected: {bad[:3]}")
    return B


def group_algebra(elements: list, names: Optional[list] = None, name: str = "KG") -> BaseAlgebra:
    """Group algebra of a finite permutation group (tuples, composed as functions)."""
    idx = {g: k for k, g in enumerate(elements)}
    table = {(i, j): {idx[compose(a, b)]: ONE} for a, i in idx.items() for b, j in idx.items()}
    e = tuple(range(1, len(elements[0]) + 1))
    names = names or [("1" if g == e else "g" + "".join(map(str, g))) for g in elements]
    return structure_constants(names, table, unit=idx[e], counit={i: ONE for i in range(len(elements))},
                               trace={idx[e]: ONE}, name=name)


def make_instance(kind: str, **params) -> BaseAlgebra:
    """Dispatch on the instance kind names used by instance files."""
    builders = {
        "laurent_ring": laurent_ring,
        "poly_ring": poly_ring,
        "cyclotomic_quotient": cyclotomic_quotient,
        "group_algebra_cyclic": group_algebra_cyclic,
        "hecke_symmetric": hecke_symmetric,
        "structure_constants": structure_constants,
    }
    if kind not in builders:
        raise ValueError(f"unknown base kind {kind!r}")
    return builders[kind](**params)
