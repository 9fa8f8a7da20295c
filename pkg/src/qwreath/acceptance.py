"""The eleven acceptance criteria as callable checks.

Each ``criterion_N()`` returns a :class:`CriterionResult`; ``run()`` executes
a selection.  Sub-checks are kept individually so that a failing criterion
shows exactly which part failed.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from math import factorial
from typing import Callable

from . import instances as inst
from .coeff import ONE, Q as QVAR, V, Scalar, parse_scalar, v_point, random_point
from .conditions import associativity_oracle, check_parameter_conditions, grand_loop_verify
from .qwp import QwpAlgebra, check_bernstein_lusztig, check_jucys_murphy, quotient_augmentation


@dataclass
class CriterionResult:
    number: int
    title: str
    parts: dict = field(default_factory=dict)
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return all(bool(v) for v in self.parts.values())

    def failed_parts(self) -> list:
        return [k for k, v in self.parts.items() if not v]

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        tail = "" if self.ok else "; failed: " + ", ".join(self.failed_parts())
        return f"criterion {self.number:>2}: {status}  {self.title} ({self.seconds:.1f}s{tail})"

    def to_json(self) -> dict:
        return {"criterion": self.number, "title": self.title, "ok": self.ok,
                "parts": {k: bool(v) for k, v in self.parts.items()}, "seconds": round(self.seconds, 2)}


# -- 1 ------------------------------------------------------------------------------
CRITERION1_INSTANCES = [
    ("hecke", {}), ("yokonuma", {"m": 2}), ("yokonuma", {"m": 3}),
    ("degenerate", {"window": 8}), ("affine", {"window": 8}), ("nil_hecke", {"window": 8}),
    ("ariki_koike", {"m": 2}), ("hu", {"m": 2}),
]


def _label(name: str, kw: dict) -> str:
    return name + "".join(f",{k}={v}" for k, v in kw.items() if k != "window")


def criterion_1() -> CriterionResult:
    res = CriterionResult(1, "conditions, grand loop and associativity oracle agree; mutants rejected")
    for name, kw in CRITERION1_INSTANCES:
        B, Qp = inst.build(name, **kw)
        for d in (2, 3):
            tag = f"{_label(name, kw)},d={d}"
            res.parts[f"{tag}:conditions"] = check_parameter_conditions(Qp, B, d).passed
            res.parts[f"{tag}:grand-loop"] = grand_loop_verify(Qp, B, d).passed
            res.parts[f"{tag}:oracle"] = bool(associativity_oracle(QwpAlgebra(B, Qp, d)))
    res.parts["at least 8 mutants"] = len(inst.MUTANTS) >= 8
    for name in inst.MUTANTS:
        B, Qp = inst.build(name)
        rejected = False
        for d in (2, 3):
            rejected |= not check_parameter_conditions(Qp, B, d).passed
            rejected |= not grand_loop_verify(Qp, B, d).passed
            rejected |= not associativity_oracle(QwpAlgebra(B, Qp, d))
            if rejected:
                break
        res.parts[f"mutant {name} rejected"] = rejected
    return res


# -- 2 ------------------------------------------------------------------------------
def criterion_2() -> CriterionResult:
    from .hecke.hu import hu_bases

    res = CriterionResult(2, "Hu basis has 2(m!)^2 independent elements")
    for m, want in ((1, 2), (2, 8), (3, 72)):
        info = hu_bases(m)
        res.parts[f"m={m} dim={want}"] = info["dim"] == want
        res.parts[f"m={m} rank={want} at q=3"] = info["rank"] == want
    return res


# -- 3 ------------------------------------------------------------------------------
def z22_expected():
    """The printed ``z_{2,2}`` in the I-basis, as ``{perm: Scalar}``."""
    q = QVAR
    s13 = (2, 1, 4, 3)
    quart = q ** 4 + 4 * q ** 3 - 2 * q ** 2 + 4 * q + 1
    return {
        s13: V ** 6 * (q - 1) ** 2 * (q ** 4 + 2 * q ** 3 - 2 * q ** 2 + 2 * q + 1),
        (2, 1, 3, 4): V ** 7 * (q - 1) * quart,
        (1, 2, 4, 3): V ** 7 * (q - 1) * quart,
        (1, 2, 3, 4): 2 * V ** 8 * quart,
    }


def _qv(x: Scalar) -> Scalar:
    return x.subs("q", V ** 2)


def criterion_3() -> CriterionResult:
    from .hecke.hu import z_mm

    res = CriterionResult(3, "z_{2,2} coefficient families match the printed display")
    got = z_mm(2).I_coeffs()
    want = {w: _qv(c) for w, c in z22_expected().items()}
    labels = {(2, 1, 4, 3): "I_31", (2, 1, 3, 4): "I_1", (1, 2, 4, 3): "I_3", (1, 2, 3, 4): "constant"}
    for w, c in want.items():
        res.parts[labels[w]] = got.get(w) == c
    res.parts["no other terms"] = set(got) == set(want)
    return res


# -- 4 ------------------------------------------------------------------------------
def criterion_4() -> CriterionResult:
    from fractions import Fraction

    from .hecke.hu import h_recursion
    from .perm import w_ab

    res = CriterionResult(4, "h_m at v=1 equals 2^m T_{w_{m,m}}")
    for m in (1, 2, 3):
        spec = h_recursion(m).specialize(v_point(1))
        res.parts[f"m={m}"] = spec == {w_ab(m, m): Fraction(2 ** m)}
    return res


# -- 5 ------------------------------------------------------------------------------
def criterion_5(seed: int = 5) -> CriterionResult:
    from .coeff import DEFAULT_PRIME, SpecializationMap
    from .hecke.hu import H1_closed_formula, h_recursion, hm_typeB_oracle, star_antiauto

    res = CriterionResult(5, "closed formula equals star(recursion); type-B oracle agrees")
    for m in (1, 2, 3):
        res.parts[f"closed formula m={m}"] = H1_closed_formula(m) == star_antiauto(h_recursion(m))
    for m in (1, 2):
        for k in range(2):
            pt = random_point(["v"], seed + 17 * k + m)
            smap = SpecializationMap({"v": pt.values["v"], "q": pt.values["v"] ** 2 % DEFAULT_PRIME}, DEFAULT_PRIME)
            want = h_recursion(m).specialize(smap)
            res.parts[f"oracle m={m} point {k + 1}"] = hm_typeB_oracle(m, smap) == want
    return res


# -- 6 ------------------------------------------------------------------------------
B1_2_PRINTED = {
    "2.3.1.2.3": "4",
    "2.3.1.2": "2*v + 2*v^-1", "2.1.2.3": "2*v + 2*v^-1", "3.1.2.3": "2*v + 2*v^-1",
    "2.1.2": "4", "3.1.2": "4",
    "1.2.3": "2*v^2 + 2*v^-2",
    "2.1": "2*v + 2*v^-1", "1.2": "2*v + 2*v^-1", "3.2": "2*v + 2*v^-1", "2.3": "2*v + 2*v^-1",
    "1": "v^2 + 2 + v^-2", "2": "2*v^2 + 4 + 2*v^-2", "3": "v^2 + 2 + v^-2",
    "": "v^3 + v + v^-1 + v^-3",
}


def b1_dual_expansion(m: int) -> dict:
    """``b_1(m)`` in the dual canonical basis, keyed by dotted reduced word."""
    from .hecke.hu import H, b1
    from .hecke.kl import BarBasisTable

    alg = H(2 * m)
    tab = BarBasisTable(alg, "dual")
    G = alg.G
    return {".".join(map(str, G.words[G.index[w]])): c for w, c in tab.expand(b1(m)).items()}


def printed_b1_table() -> dict:
    from .hecke.hu import H

    G = H(4).G
    out = {}
    for word, c in B1_2_PRINTED.items():
        k = G.from_word(int(x) for x in word.split(".")) if word else 0
        out[".".join(map(str, G.words[k]))] = parse_scalar(c)
    return out


def criterion_6() -> CriterionResult:
    from .hecke.hu import H, b1, hu_bases
    from .hecke.kl import BarBasisTable, format_expansion

    res = CriterionResult(6, "bar invariance, dual-canonical expansions, vN[v] unitriangularity")
    for m in (1, 2, 3):
        res.parts[f"bar(b1({m})) = b1({m})"] = b1(m).bar() == b1(m)
    alg = H(2)
    tab = BarBasisTable(alg, "dual")
    res.parts["b1(1) = 2*c[s1] + (v + v^-1)"] = format_expansion(tab.expand(b1(1)), tab) == "2*c[s1] + (v + v^-1)"
    res.parts["b1(2) printed table"] = b1_dual_expansion(2) == printed_b1_table()
    for m in (1, 2):
        res.parts[f"unitriangular vN[v] m={m}"] = bool(hu_bases(m)["positive"])
    return res


# -- 7 ------------------------------------------------------------------------------
def criterion_7() -> CriterionResult:
    from .hecke.hu import H1_closed_formula, parabolic_gens, wreath_relations, z_mm

    res = CriterionResult(7, "z_{m,m} central in the parabolic, H1^2 = z, wreath relations")
    for m in (1, 2, 3):
        z = z_mm(m)
        h = H1_closed_formula(m)
        res.parts[f"H1^2 = z m={m}"] = h * h == z
        res.parts[f"z central m={m}"] = all(z.alg.gen(i) * z == z * z.alg.gen(i) for i in parabolic_gens(m))
        res.parts[f"wreath m={m}"] = wreath_relations(m)
    return res


# -- 8 ------------------------------------------------------------------------------
def criterion_8() -> CriterionResult:
    from .hecke.hu import generalized_hu

    res = CriterionResult(8, "modified braid relation for the generalized Hu algebra, m=1")
    res.parts["H_q(Σ_3)"] = bool(generalized_hu(1, 3).get("modified_braid"))
    return res


# -- 9 ------------------------------------------------------------------------------
def criterion_9() -> CriterionResult:
    res = CriterionResult(9, "Bernstein-Lusztig relations and Ariki-Koike Jucys-Murphy identities")
    for d in (2, 3):
        res.parts[f"affine d={d}"] = check_bernstein_lusztig(inst.algebra("affine", d, window=8), "affine")["ok"]
        res.parts[f"degenerate d={d}"] = check_bernstein_lusztig(inst.algebra("degenerate", d, window=8), "degenerate")["ok"]
        jm = check_jucys_murphy(inst.algebra("ariki_koike", d, m=2))
        res.parts[f"AK L_(i+1) = q^-1 T L T d={d}"] = jm["slot"]
        res.parts[f"AK L commute d={d}"] = jm["commute"]
    return res


# -- 10 -----------------------------------------------------------------------------
def criterion_10(seed: int = 7) -> CriterionResult:
    from .schur import double_centralizer_check

    res = CriterionResult(10, "Schur-Weyl double centralizer at two prime-field points")
    for n, d, want in ((2, 2, 10), (3, 3, 165)):
        r = double_centralizer_check("heckeA", n, d, seed=seed)
        res.parts[f"Hecke n={n},d={d} pass"] = r.passed
        res.parts[f"Hecke n={n},d={d} commutant {want}"] = r.dim_commutant == [want, want]
    r = double_centralizer_check("hu", 4, m=2, seed=seed)
    res.parts["Hu m=2,n=4 pass"] = r.passed
    res.parts["Hu m=2,n=4 bicommutant 8"] = r.dim_bicommutant == [8, 8]
    return res


# -- 11 -----------------------------------------------------------------------------
def criterion_11() -> CriterionResult:
    from .hecke.hu import z_mm_pairs
    from .qwp import _pair_counit

    res = CriterionResult(11, "augmentation quotient")
    A = inst.algebra("hu", 2, m=2)
    Qt = quotient_augmentation(A)
    eps_z = _pair_counit(A.B, z_mm_pairs(2))
    g = Qt.gen(1)
    res.parts["Hu m=2 dim 2"] = Qt.dim == 2
    res.parts["Hu m=2 H^2 = eps(z)"] = Qt.mul(g, g) == {0: eps_z}
    H = inst.algebra("hecke", 3)
    Qh = quotient_augmentation(H)
    res.parts["Hecke quotient has dim A"] = Qh.dim == H.dim
    res.parts["Hecke quotient relation"] = Qh.is_hecke(QVAR) and Qh.check_quadratic()
    res.parts["Hecke quotient braid"] = Qh.mul(Qh.mul(Qh.gen(1), Qh.gen(2)), Qh.gen(1)) == \
        Qh.mul(Qh.mul(Qh.gen(2), Qh.gen(1)), Qh.gen(2))
    return res


CRITERIA: dict = {k: globals()[f"criterion_{k}"] for k in range(1, 12)}


def run(which=None, echo: Callable = None) -> list:
    out = []
    for k in which or sorted(CRITERIA):
        t = time.time()
        r = CRITERIA[k]()
        r.seconds = time.time() - t
        if echo:
            echo(r.line())
        out.append(r)
    return out


__all__ = ["CriterionResult", "CRITERIA", "run", "b1_dual_expansion", "printed_b1_table", "z22_expected",
           "factorial", "ONE"]
