"""Named parameter choices: the standard instances and single-condition mutants.

Each builder returns ``(B, Q)``; wrap with :class:`~qwreath.qwp.QwpAlgebra`
for a chosen ``d`` (or call :func:`algebra`).
"""

from __future__ import annotations

from typing import Callable

from . import base_alg as ba
from .coeff import ONE, Q as QVAR, Scalar, V
from .qwp import ParamChoice, QwpAlgebra, demazure_rho, identity_sigma

Z = Scalar.var("z")


def trivial_base() -> ba.BaseAlgebra:
    return ba.structure_constants(["1"], {(0, 0): {0: ONE}}, counit={0: ONE}, trace={0: ONE}, name="K")


def hecke(q: Scalar = QVAR):
    """``B = K``, ``S = q-1``, ``R = q``, ``σ = id``, ``ρ = 0``."""
    B = trivial_base()
    Qp = ParamChoice(R={(0, 0): q}, S={(0, 0): q - 1}, sigma=identity_sigma, sigma_kind="identity", name="hecke")
    return B, Qp


def frobenius_hecke(B: ba.BaseAlgebra, z: Scalar = Z, dual: dict | None = None):
    """``S = z Σ b⊗b^∨``, ``R = 1⊗1``, flip, ``ρ = 0`` on a finite symmetric base.

    ``dual`` maps each basis index to its dual element ``{index: Scalar}``;
    by default it is computed from the trace form.
    """
    if dual is None:
        dual = dual_basis(B)
    S: dict = {}
    for b in B.basis:
        for k, c in dual[b].items():
            ba._acc(S, (b, k), z * c)
    u = B.unit
    return ParamChoice(R={(u, u): ONE}, S=S, name="frobenius_hecke")


def dual_basis(B: ba.BaseAlgebra) -> dict:
    """Dual basis w.r.t. ``tr(xy)`` for bases whose Gram matrix is a signed permutation matrix."""
    out = {}
    for b in B.basis:
        hits = []
        for c in B.basis:
            t = B.trace(B.mul({b: ONE}, {c: ONE}))
            if t:
                hits.append((c, t))
        if len(hits) != 1 or hits[0][1] not in (ONE, -ONE):
            raise ValueError("dual basis needs a monomial Gram matrix")
        c, t = hits[0]
        out[b] = {c: t}
    return out


def yokonuma(m: int, variant: str = "frobenius", q: Scalar = QVAR):
    """``KC_m ≀ H(d)``: Frobenius-Hecke parameters (default) or scalar ``S = q-1``, ``R = q``."""
    B = ba.group_algebra_cyclic(m)
    if variant == "frobenius":
        return B, frobenius_hecke(B).mutate(name=f"yokonuma{m}")
    if variant == "scalar":
        return B, ParamChoice(R={(0, 0): q}, S={(0, 0): q - 1}, name=f"yokonuma{m}_scalar")
    if variant == "group":
        return B, ParamChoice(R={(0, 0): ONE}, S={}, name=f"wreath_group{m}")
    raise ValueError(f"unknown variant {variant!r}")


def degenerate(window: int = ba.DEFAULT_WINDOW, R: Scalar = ONE):
    """``K[X]``, ``R = 1``, ``S = 0``, flip, ``ρ = -∂``."""
    B = ba.poly_ring(window)
    beta = {(0, 0): Scalar(-1)}
    Qp = ParamChoice(R={(0, 0): R} if R else {}, S={}, rho=demazure_rho(B, beta), beta=beta, name="degenerate")
    return B, Qp


def nil_hecke(window: int = ba.DEFAULT_WINDOW):
    B, Qp = degenerate(window, R=Scalar(0))
    return B, Qp.mutate(name="nil_hecke")


def affine(window: int = ba.DEFAULT_WINDOW, q: Scalar = QVAR):
    """``K[X^{±1}]``, ``R = q``, ``S = q-1``, flip, ``ρ = -(q-1)∂(·)(1⊗X)``."""
    B = ba.laurent_ring(window)
    beta = {(0, 1): -(q - 1)}
    Qp = ParamChoice(R={(0, 0): q}, S={(0, 0): q - 1}, rho=demazure_rho(B, beta), beta=beta, name="affine")
    return B, Qp


def ariki_koike(m: int = 2, q: Scalar = QVAR):
    """The affine parameters transported to ``K[X]/∏(X - q_i)``.

    This is the literal parameter choice on the cyclotomic base; the
    cyclotomic algebra itself is a quotient of the affine one.
    """
    B = ba.cyclotomic_quotient([f"q{i}" for i in range(1, m + 1)])
    x = 1 if m > 1 else 0
    if m == 1:
        beta = {(0, 0): -(q - 1) * Scalar.var("q1")}
    else:
        beta = {(0, x): -(q - 1)}
    Qp = ParamChoice(R={(0, 0): q}, S={(0, 0): q - 1}, rho=demazure_rho(B, beta), beta=beta, name=f"ariki_koike{m}")
    return B, Qp


def hu(m: int):
    """``H_q(Σ_m)`` with ``R = z_{m,m}``, ``S = 0``, flip, ``ρ = 0`` (``q = v²``)."""
    from .hecke.hu import z_mm_pairs

    B = ba.hecke_symmetric(m, V ** 2)
    return B, ParamChoice(R=z_mm_pairs(m), S={}, name=f"hu{m}")


BUILDERS: dict = {
    "hecke": lambda **kw: hecke(),
    "yokonuma": lambda m=2, variant="frobenius", **kw: yokonuma(m, variant),
    "degenerate": lambda window=ba.DEFAULT_WINDOW, **kw: degenerate(window),
    "nil_hecke": lambda window=ba.DEFAULT_WINDOW, **kw: nil_hecke(window),
    "affine": lambda window=ba.DEFAULT_WINDOW, **kw: affine(window),
    "ariki_koike": lambda m=2, **kw: ariki_koike(m),
    "hu": lambda m=2, **kw: hu(m),
}


def build(name: str, **params):
    if name in MUTANTS:
        return MUTANTS[name]()
    if name not in BUILDERS:
        raise ValueError(f"unknown instance {name!r}")
    return BUILDERS[name](**params)


def algebra(name: str, d: int = 2, **params) -> QwpAlgebra:
    B, Qp = build(name, **params)
    return QwpAlgebra(B, Qp, d, name=f"{name}(d={d})")


# -- mutants -----------------------------------------------------------------
def _mut_hu_R_asym():
    B, Qp = hu(2)
    s1 = B.basis[1]
    R = dict(Qp.R)
    ba._acc(R, (s1, B.unit), ONE)
    return B, Qp.mutate(R=R, name="hu2_R_asym")


def _mut_yok_sigma_nonmult():
    B, Qp = yokonuma(2)

    def sigma(p):
        return {(p[1], p[0]): Scalar(2) if p == (1, 1) else ONE}

    return B, Qp.mutate(sigma=sigma, sigma_inv=None, sigma_kind="custom", name="yok2_sigma_nonmult")


def _mut_yok_sigma_unit():
    B, Qp = yokonuma(2)

    def sigma(p):
        return {(p[1], (p[0] + 1) % 2): ONE} if p == (0, 0) else {(p[1], p[0]): ONE}

    return B, Qp.mutate(sigma=sigma, sigma_kind="custom", name="yok2_sigma_unit")


def _mut_yok_sigma_twist():
    B, Qp = yokonuma(2, variant="group")

    def sigma(p):
        return {(p[1], p[0]): Scalar((-1) ** p[0])}

    return B, Qp.mutate(sigma=sigma, sigma_kind="custom", name="yok2_sigma_twist")


def _mut_yok_S_asym():
    B, Qp = yokonuma(2)
    return B, Qp.mutate(S={(0, 1): Z}, name="yok2_S_asym")


def _mut_deg_rho_unit():
    B, Qp = degenerate(8)
    base = Qp.rho

    def rho(p):
        out = dict(base(p))
        if p == (0, 0):
            ba._acc(out, (0, 0), ONE)
        return out

    return B, Qp.mutate(rho=rho, name="deg_rho_unit")


def _mut_deg_rho_nonderiv():
    B, Qp = degenerate(8)
    base = Qp.rho

    def rho(p):
        k = 2 if p[0] + p[1] >= 2 else 1
        return {t: c * k for t, c in base(p).items()}

    return B, Qp.mutate(rho=rho, name="deg_rho_nonderiv")


def _mut_deg_S_one():
    B, Qp = degenerate(8)
    return B, Qp.mutate(S={(0, 0): ONE}, name="deg_S_one")


def _mut_aff_sigma_id():
    B, Qp = affine(8)
    return B, Qp.mutate(sigma=identity_sigma, sigma_kind="identity", name="aff_sigma_id")


def _mut_hecke_rho():
    B, Qp = hecke()
    return B, Qp.mutate(rho=lambda p: {(0, 0): ONE}, name="hecke_rho_const")


MUTANTS: dict[str, Callable] = {
    "hu2_R_asym": _mut_hu_R_asym,
    "yok2_sigma_nonmult": _mut_yok_sigma_nonmult,
    "yok2_sigma_unit": _mut_yok_sigma_unit,
    "yok2_sigma_twist": _mut_yok_sigma_twist,
    "yok2_S_asym": _mut_yok_S_asym,
    "deg_rho_unit": _mut_deg_rho_unit,
    "deg_rho_nonderiv": _mut_deg_rho_nonderiv,
    "deg_S_one": _mut_deg_S_one,
    "aff_sigma_id": _mut_aff_sigma_id,
    "hecke_rho_const": _mut_hecke_rho,
}
