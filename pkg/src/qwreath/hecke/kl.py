"""Bar-invariant bases of ``H_q(Σ_n)`` by triangular fixed-point solving.

Conventions (checked against ``I_1^2 = (v - v^{-1}) I_1 + 1``):

* canonical ``b_w ∈ I_w + Σ_{y<w} v^{-1}Z[v^{-1}] I_y``, so ``b_{s1} = I_1 + v^{-1}``;
* dual canonical ``c_w ∈ I_w + Σ_{y<w} vZ[v] I_y``, so ``c_{s1} = I_1 - v``.
"""

from __future__ import annotations

from typing import Iterable, Optional

from ..coeff import ONE, Scalar, V
from ..perm import bruhat_leq, format_word
from .algebra import HeckeAlgebra, HeckeElement


class DegreeConstraintError(ArithmeticError):
    """The bar fixed-point system has no solution of the required shape."""


def _split(x: Scalar, part: str) -> Scalar:
    """Negative- or positive-degree part in ``v`` of a bar-antisymmetric Scalar."""
    keep = {}
    for mono, c in x.items():
        e = dict(mono).get("v", 0)
        if e == 0:
            raise DegreeConstraintError(f"constant term in bar-antisymmetric residue {x}")
        if (e < 0) == (part == "neg"):
            keep[mono] = c
    return Scalar._raw(keep)


class BarBasisTable:
    """Canonical or dual canonical basis on a lower Bruhat interval of ``Σ_n``.

    ``elements`` defaults to the whole group; a parabolic subgroup is a valid
    lower set.  ``kind`` is ``"canonical"`` or ``"dual"``.
    """

    def __init__(self, alg: HeckeAlgebra, kind: str = "canonical", elements: Optional[Iterable] = None):
        if kind not in ("canonical", "dual"):
            raise ValueError("kind must be 'canonical' or 'dual'")
        alg._need_v()
        self.alg, self.kind = alg, kind
        G = alg.G
        ks = sorted(G.index[tuple(w)] for w in (elements if elements is not None else G.elements))
        self.keys = ks
        self._r: dict = {}
        self._p: dict = {}
        self._elem: dict = {}

    def _rcol(self, z: int) -> dict:
        """``bar(I_z) = Σ_y r_{y,z} I_y`` keyed by index."""
        col = self._r.get(z)
        if col is None:
            alg = self.alg
            bz = HeckeElement(alg, {z: V ** -alg.G.length[z]}).bar()
            L = alg.G.length
            col = {k: c * V ** L[k] for k, c in bz.c.items()}
            self._r[z] = col
        return col

    def coeffs(self, w) -> dict:
        """``{y index: p_{y,w}}`` in the I-basis."""
        alg = self.alg
        k = alg._index(w)
        if k in self._p:
            return self._p[k]
        G = alg.G
        wperm = G.elements[k]
        below = [y for y in self.keys if G.length[y] <= G.length[k] and bruhat_leq(G.elements[y], wperm)]
        below.sort(key=lambda y: -G.length[y])
        p = {k: ONE}
        part = "neg" if self.kind == "canonical" else "pos"
        for y in below:
            if y == k:
                continue
            rhs = Scalar(0)
            for z, pz in p.items():
                if z == y:
                    continue
                r = self._rcol(z).get(y)
                if r:
                    rhs = rhs + pz.bar() * r
            if rhs:
                if rhs.bar() != -rhs:
                    raise DegreeConstraintError("residue is not bar-antisymmetric")
                val = _split(rhs, part)
                if val:
                    p[y] = val
        self._p[k] = p
        return p

    def element(self, w) -> HeckeElement:
        k = self.alg._index(w)
        e = self._elem.get(k)
        if e is None:
            e = self.alg.from_I({self.alg.G.elements[y]: c for y, c in self.coeffs(k).items()})
            self._elem[k] = e
        return e

    def expand(self, x: HeckeElement) -> dict:
        """Coordinates of ``x`` in this basis: ``{perm: Scalar}``."""
        alg = self.alg
        G = alg.G
        rem = x
        out = {}
        allowed = set(self.keys)
        while rem:
            k = max(rem.c, key=lambda j: (G.length[j], j))
            if k not in allowed:
                raise ValueError("element is not in the span of this basis")
            c = rem.c[k] * V ** G.length[k]
            out[G.elements[k]] = c
            rem = rem - self.element(k) * c
        return out

    def label(self, w) -> str:
        k = self.alg._index(w)
        word = self.alg.G.words[k]
        tag = "b" if self.kind == "canonical" else "c"
        return f"{tag}[{format_word(word)}]" if word else ""


def format_expansion(coords: dict, table: BarBasisTable) -> str:
    """``2*c[s1] + (v + v^-1)`` style rendering, longest terms first."""
    G = table.alg.G
    items = sorted(coords.items(), key=lambda kv: (-G.length[G.index[kv[0]]], kv[0]))
    parts = []
    for w, c in items:
        lbl = table.label(w)
        s = str(c)
        if not lbl:
            parts.append(f"({s})" if parts and c.needs_parens() else s)
        elif s == "1":
            parts.append(lbl)
        elif s == "-1":
            parts.append("-" + lbl)
        else:
            parts.append(f"({s})*{lbl}" if c.needs_parens() else f"{s}*{lbl}")
    if not parts:
        return "0"
    out = parts[0]
    for p in parts[1:]:
        out += " - " + p[1:] if p.startswith("-") else " + " + p
    return out


def is_bar_invariant(x: HeckeElement) -> bool:
    return x.bar() == x


def coefficient_in(c: Scalar, kind: str) -> bool:
    """Membership of ``c`` in ``v^{-1}N[v^{-1}]`` (``"neg"``) or ``vN[v]`` (``"pos"``)."""
    for mono, k in c.items():
        e = dict(mono).get("v", 0)
        if len(mono) > (1 if e else 0) or k < 0:
            return False
        if (kind == "neg" and e >= 0) or (kind == "pos" and e <= 0):
            return False
    return True
