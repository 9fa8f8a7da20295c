"""The Hu algebra ``A(m) ⊂ H_q(Σ_{2m})`` and its special generator ``H_1``.

All symbolic work uses ``q = v^2`` and the normalized basis
``I_w = v^{-l(w)} T_w``.  Signs ``ε`` are tuples of ``+1``/``-1``.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Optional

from ..coeff import ONE, Q as QVAR, Scalar, V, DEFAULT_PRIME, SpecializationMap, v_point
from ..perm import (
    all_perms,
    bruhat_leq,
    from_word,
    longest,
    parabolic_elements,
    s_a_to_b,
    s_a_to_b_to_a,
    w_ab,
    w_ab_word,
)
from .algebra import HeckeAlgebra, HeckeElement


def H(n: int) -> HeckeAlgebra:
    return HeckeAlgebra("A", n)


def I_path(alg: HeckeAlgebra, a: int, b: int, sign: int = 1) -> HeckeElement:
    """``I^{±}_{a→b}``; the minus version is ``bar(I_{a→b})``."""
    return alg.I_word(s_a_to_b(a, b), sign)


# -- type B Jucys-Murphy elements ---------------------------------------------------
def typeB_algebra(N: int, q=None) -> HeckeAlgebra:
    q = QVAR if q is None else q
    return HeckeAlgebra("B", N, q=q, Q=q * 0 + 1)


def jucys_murphy(k: int, sign: int, N: int, q=None) -> HeckeElement:
    """``u_k^± = ∏_{i<k} (q^i ± T_{i→0→i})`` in ``H_{(1,q)}(W(B_N))``."""
    if k > N:
        raise ValueError("k <= N required")
    B = typeB_algebra(N, q)
    out = B.one()
    for f in jm_factors(k, sign, N, q):
        out = out * f
    return out


def jm_factors(k: int, sign: int, N: int, q=None) -> list:
    B = typeB_algebra(N, q)
    return [B.scalar(B.q ** i) + B.T_word(s_a_to_b_to_a(i, 0)) * sign for i in range(k)]


def _T_word_inv(B: HeckeAlgebra, word) -> HeckeElement:
    out = B.one()
    for i in reversed(word):
        out = out * B.gen_inv(i)
    return out


def lemma_u_identities(part: str, i: int, N: int, j: Optional[int] = None) -> bool:
    """Part ``"a"``: ``u_j^+ T_i = T_i u_j^+`` (``i ≠ j``).  Part ``"b"``: the ``T_{i→0}`` identity."""
    B = typeB_algebra(N)
    if part == "a":
        if j is None or i == j:
            raise ValueError("part (a) needs j != i")
        u = jucys_murphy(j, 1, N)
        return u * B.gen(i) == B.gen(i) * u
    if part == "b":
        if i < 1 or i + 1 > N:
            raise ValueError("part (b) needs 1 <= i < N")
        ui, ui1 = jucys_murphy(i, 1, N), jucys_murphy(i + 1, 1, N)
        inv = _T_word_inv(B, s_a_to_b(1, i))
        lhs = ui * B.T_word(s_a_to_b(i, 0))
        rhs = ui1 * inv - ui * inv * (B.q ** i)
        return lhs == rhs
    raise ValueError("part must be 'a' or 'b'")


# -- h_m and H_1 -----------------------------------------------------------------
def c_mi(m: int, i: int, alg: Optional[HeckeAlgebra] = None) -> HeckeElement:
    """``c_{m,0} = 1``; ``c_{m,i} = I_{m+i→m+1} I_{m+1→m+i}``."""
    alg = alg or H(2 * m)
    if i == 0:
        return alg.one()
    return I_path(alg, m + i, m + 1) * I_path(alg, m + 1, m + i)


@lru_cache(maxsize=None)
def h_recursion(m: int) -> HeckeElement:
    """``h_m = h_{m,m}`` from the ``h_{m,i}`` recursion."""
    alg = H(2 * m)
    h = (I_path(alg, m, 1) + I_path(alg, m, 1, -1)) * V ** m
    for i in range(1, m):
        a = I_path(alg, i + m, i + 1)
        b = I_path(alg, i + m, i + 1, -1)
        h = (h * a + c_mi(m, i, alg) * h * b) * V ** (m + 2 * i)
    return h


def signs(m: int) -> list:
    return list(itertools.product((1, -1), repeat=m))


def I_eps(m: int, eps) -> HeckeElement:
    """``I^{ε_1}_{m→2m-1} ⋯ I^{ε_m}_{1→m}``."""
    alg = H(2 * m)
    out = alg.one()
    for k, e in enumerate(eps, 1):
        out = out * I_path(alg, m + 1 - k, 2 * m - k, e)
    return out


def C_eps(m: int, eps) -> HeckeElement:
    """``∏_{ε_i = -} c_{m, m-i}``."""
    alg = H(2 * m)
    out = alg.one()
    for i, e in enumerate(eps, 1):
        if e < 0:
            out = out * c_mi(m, m - i, alg)
    return out


def h_sign_terms(m: int) -> list:
    """The ``2^m`` summands ``C_ε I^{ε_1}_{m→1} ⋯ I^{ε_m}_{2m-1→m}`` of ``h_m`` (without the power of v)."""
    alg = H(2 * m)
    out = []
    for eps in signs(m):
        x = alg.one()
        for k, e in enumerate(eps, 1):
            x = x * I_path(alg, m + k - 1, k, e)
        c = alg.one()
        for i, e in enumerate(eps, 1):
            if e < 0:
                c = c * c_mi(m, i - 1, alg)
        out.append((eps, c * x))
    return out


@lru_cache(maxsize=None)
def H1_closed_formula(m: int) -> HeckeElement:
    alg = H(2 * m)
    tot = alg.zero()
    for eps in signs(m):
        tot = tot + I_eps(m, eps) * C_eps(m, eps)
    return tot * V ** (m * (2 * m - 1))


def H1(m: int) -> HeckeElement:
    return h_recursion(m).star()


def star_antiauto(x: HeckeElement) -> HeckeElement:
    return x.star()


@lru_cache(maxsize=None)
def z_mm(m: int) -> HeckeElement:
    """``H_1^2``; asserts support in ``Σ_m × Σ_m`` and centrality there."""
    z = H1_closed_formula(m) ** 2
    gens = parabolic_gens(m)
    if not z.in_parabolic(gens):
        raise ArithmeticError("z_{m,m} left the parabolic subalgebra")
    alg = z.alg
    for i in gens:
        if z * alg.gen(i) != alg.gen(i) * z:
            raise ArithmeticError(f"z_{{m,m}} does not commute with T_{i}")
    return z


def parabolic_gens(m: int) -> list:
    return [i for i in range(1, 2 * m) if i != m]


def z_mm_pairs(m: int) -> dict:
    """``z_{m,m}`` as an element of ``H_q(Σ_m) ⊗ H_q(Σ_m)`` on ``T_x ⊗ T_y``."""
    out = {}
    for w, c in z_mm(m).items():
        x = w[:m]
        y = tuple(k - m for k in w[m:])
        out[(x, y)] = c
    return out


def z_coefficient_families(m: int = 2) -> dict:
    """I-basis coefficients of ``z_{m,m}`` keyed by dotted words."""
    z = z_mm(m)
    G = z.alg.G
    return {".".join(map(str, G.words[G.index[w]])) or "e": c for w, c in z.I_coeffs().items()}


# -- gamma, C, b_1 ---------------------------------------------------------------
def gamma_and_C(m: int):
    """``γ = π_m(I_{w_0(m)})`` and ``C = C_{(-,…,-)}``; asserts ``C = γ²`` and the ``w_0`` factorization."""
    alg = H(2 * m)
    w0 = longest(m)
    w0_word = alg_word(w0)
    gamma = alg.I_word(tuple(i + m for i in w0_word))
    C = C_eps(m, (-1,) * m)
    if C != gamma * gamma:
        raise ArithmeticError("C != γ²")
    if m >= 2:
        small = H(m)
        lhs = small.I(w0)
        rhs = small.I(longest(m - 1) + (m,)) * small.I_word(s_a_to_b(m - 1, 1))
        if lhs != rhs:
            raise ArithmeticError("I_{w0(m)} != I_{w0(m-1)} I_{m-1→1}")
    return gamma, C


def alg_word(w) -> tuple:
    from ..perm import reduced_word

    return reduced_word(w)


@lru_cache(maxsize=None)
def b1(m: int) -> HeckeElement:
    """``v^{-m(2m-1)} H_1 bar(γ)``; asserts bar invariance."""
    gamma, _ = gamma_and_C(m)
    x = H1_closed_formula(m) * gamma.bar() * V ** (-m * (2 * m - 1))
    if x.bar() != x:
        raise ArithmeticError("b_1 is not bar-invariant")
    return x


def check_Cge(m: int) -> bool:
    """``C_ε bar(γ) = bar(C_{-ε}) γ`` for every sign vector."""
    gamma, _ = gamma_and_C(m)
    gb = gamma.bar()
    for eps in signs(m):
        neg = tuple(-e for e in eps)
        if C_eps(m, eps) * gb != C_eps(m, neg).bar() * gamma:
            return False
    return True


def I_eps_h(m: int, eps) -> HeckeElement:
    """``I^{ε_1}_{m→1} I^{ε_2}_{m+1→2} ⋯ I^{ε_m}_{2m-1→m}``."""
    alg = H(2 * m)
    out = alg.one()
    for k, e in enumerate(eps, 1):
        out = out * I_path(alg, m + k - 1, k, e)
    return out


def Ieps_braid_failures(m: int, corrected: bool = False) -> list:
    """Pairs ``(ε, i)`` violating ``I_ε I_i^± = I_{i+m}^± I_{s_i(ε)}``.

    The literal form uses ``+`` crossings throughout.  With ``corrected`` the
    crossing is inverted when ``(ε_i, ε_{i+1}) = (+, -)``; the braid picture
    only permits a Reidemeister III move with that orientation.
    """
    alg = H(2 * m)
    bad = []
    for eps in signs(m):
        for i in range(1, m):
            sw = list(eps)
            sw[i - 1], sw[i] = sw[i], sw[i - 1]
            sign = -1 if corrected and (eps[i - 1], eps[i]) == (1, -1) else 1
            if I_eps_h(m, eps) * alg.I_gen(i, sign) != alg.I_gen(i + m, sign) * I_eps_h(m, tuple(sw)):
                bad.append((eps, i))
    return bad


def check_Ieps_braid(m: int, corrected: bool = False) -> bool:
    return not Ieps_braid_failures(m, corrected)


def check_c_commute(m: int) -> bool:
    """``I_{a→c}I_{c→a}`` and ``I_{b→c}I_{c→b}`` commute for ``a, b > c``; so do the ``c_{m,i}``."""
    alg = H(2 * m)
    n = 2 * m
    for c in range(1, n):
        loops = [I_path(alg, a, c) * I_path(alg, c, a) for a in range(c + 1, n)]
        for x, y in itertools.combinations(loops, 2):
            if x * y != y * x:
                return False
    cs = [c_mi(m, i, alg) for i in range(1, m)]
    return all(x * y == y * x for x, y in itertools.combinations(cs, 2))


# -- bases of A(m) ---------------------------------------------------------------
def parabolic(m: int) -> list:
    return parabolic_elements(2 * m, parabolic_gens(m))


def hu_standard_basis(m: int) -> list:
    """``[(label, element)]``: ``I_w`` then ``I_w b_1`` for ``w ∈ Σ_m × Σ_m``."""
    alg = H(2 * m)
    bb = b1(m)
    P = parabolic(m)
    out = [(("w", w), alg.I(w)) for w in P]
    out += [(("wt", w), alg.I(w) * bb) for w in P]
    return out


def hu_bar_basis(m: int, kind: str = "dual") -> list:
    """``b_w`` and ``b_w b_1``; ``kind="dual"`` is the ``vZ[v]`` normalization."""
    from .kl import BarBasisTable

    alg = H(2 * m)
    tab = BarBasisTable(alg, kind, parabolic(m))
    bb = b1(m)
    P = parabolic(m)
    out = [(("w", w), tab.element(w)) for w in P]
    out += [(("wt", w), tab.element(w) * bb) for w in P]
    return out


def independence_rank(elements: list, q_value: int = 3) -> int:
    """Rank over QQ at ``q = q_value`` using homogeneous v-parity of T-coordinates."""
    from ..linalg import rank_qq
    from fractions import Fraction

    if not elements:
        return 0
    alg = elements[0].alg
    N = len(alg.G)
    rows = []
    for x in elements:
        par = None
        row = [Fraction(0)] * N
        for k, c in x.c.items():
            for mono, coef in c.items():
                e = dict(mono).get("v", 0)
                if len(mono) > (1 if e else 0):
                    raise ValueError("unexpected variables")
                if par is None:
                    par = e % 2
                elif e % 2 != par:
                    raise ValueError("mixed v-parity; parity certificate unavailable")
                row[k] += Fraction(coef) * Fraction(q_value) ** Fraction((e + par) // 2) if (e + par) >= 0 \
                    else Fraction(coef) / Fraction(q_value) ** (-(e + par) // 2)
        rows.append(row)
    return rank_qq(rows)


def representative(x: HeckeElement):
    """The unique longest permutation in the support (raises if not unique)."""
    G = x.alg.G
    top = max(G.length[k] for k in x.c)
    ks = [k for k in x.c if G.length[k] == top]
    if len(ks) != 1:
        raise ValueError("no unique leading term")
    return G.elements[ks[0]]


def wreath_leq(a: tuple, b: tuple) -> bool:
    """Order on labels ``(block, w)``: same block and Bruhat order on ``w``."""
    return a[0] == b[0] and bruhat_leq(a[1], b[1])


def _unitriangular(coords: dict, lab: tuple, part: Optional[str]) -> tuple:
    from .kl import coefficient_in

    tri, pos = True, True
    for lab2, c in coords.items():
        if lab2 == lab:
            tri &= c == ONE
            continue
        tri &= wreath_leq(lab2, lab)
        if part is not None:
            pos &= coefficient_in(c, part)
    return tri, pos


def hu_bases(m: int) -> dict:
    """Standard and bar-invariant bases with their checks.

    ``positive`` is the literal ``vN[v]`` claim for the basis built from the
    ``vZ[v]``-normalized table; ``positive_mirrored`` checks ``v^{-1}N[v^{-1}]``
    for the basis built from the other normalization.
    """
    std = hu_standard_basis(m)
    bar = hu_bar_basis(m, "dual")
    out = {"standard": std, "bar_invariant": bar, "dim": len(std),
           "rank": independence_rank([e for _, e in std])}
    if m <= 2:
        tri = pos = True
        for lab, e in bar:
            t, p = _unitriangular(standard_coordinates(m, e), lab, "pos")
            tri, pos = tri and t, pos and p
        out["triangular"], out["positive"] = tri, pos
        mir = True
        for lab, e in hu_bar_basis(m, "canonical"):
            t, p = _unitriangular(standard_coordinates(m, e), lab, "neg")
            mir = mir and t and p
        out["positive_mirrored"] = mir
        bst = True
        for lab, e in std:
            bst &= _unitriangular(standard_coordinates(m, e.bar()), lab, None)[0]
        out["bar_standard_triangular"] = bst
        out["bar_invariant_ok"] = all(e.bar() == e for _, e in bar)
    return out


def standard_coordinates(m: int, x: HeckeElement) -> dict:
    """Coordinates of ``x ∈ A(m)`` in ``{I_w, I_w b_1}`` keyed by labels (raises if not a member)."""
    res = hu_membership(x, m)
    if not res["member"]:
        raise ValueError("not an element of A(m)")
    return res["standard"]


# -- membership -----------------------------------------------------------------
def _v_range(x: HeckeElement) -> tuple:
    ds = [d for c in x.c.values() for d in c.degrees("v")]
    return (min(ds), max(ds)) if ds else (0, 0)


def _symmetric(a: int, p: int) -> int:
    return a - p if a > p // 2 else a


def hu_membership(x: HeckeElement, m: int, prime: int = DEFAULT_PRIME, seed: int = 0) -> dict:
    """Decide ``x ∈ A(m)`` and return standard coordinates.

    Coordinates in ``{I_w} ∪ {I_w b_1}`` are solved at points ``v = t`` over
    GF(p), interpolated as Laurent polynomials with integer coefficients and
    then verified by exact recomputation.  Labels are ``("w", perm)`` and
    ``("wt", perm)``.
    """
    import random

    from ..linalg import solve_mod_p

    basis = hu_standard_basis(m)
    alg = x.alg
    N = len(alg.G)
    labels = [lab for lab, _ in basis]
    rng = random.Random(seed)

    def system(t: int):
        smap = SpecializationMap({"v": t}, prime)
        rows = [[0] * len(basis) for _ in range(N)]
        for j, (_, e) in enumerate(basis):
            for k, c in e.c.items():
                rows[k][j] = smap(c)
        rhs = [0] * N
        for k, c in x.c.items():
            rhs[k] = smap(c)
        return solve_mod_p(rows, rhs, prime, len(basis))

    first = system(rng.randrange(2, prime - 1))
    if first is None:
        return {"member": False, "standard": None}
    if first[1]:
        raise ArithmeticError("standard basis degenerate at the chosen point")
    if not x:
        return {"member": True, "standard": {}}
    xl, xh = _v_range(x)
    bl = min(_v_range(e)[0] for _, e in basis)
    bh = max(_v_range(e)[1] for _, e in basis)
    lo, hi = xl - bh, xh - bl
    for _ in range(4):
        coords = _interpolate(system, lo, hi, len(basis), prime, rng)
        std = {lab: c for lab, c in zip(labels, coords) if c}
        check = alg.zero()
        for (lab, e) in basis:
            if lab in std:
                check = check + e * std[lab]
        if check == x:
            return {"member": True, "standard": std}
        lo, hi = lo - (hi - lo + 1), hi + (hi - lo + 1)
    raise ArithmeticError("coordinates are not integral Laurent polynomials in v")


def _interpolate(system, lo: int, hi: int, n: int, prime: int, rng) -> list:
    import flint

    npts = hi - lo + 1
    pts = []
    while len(pts) < npts:
        t = rng.randrange(2, prime - 1)
        if t not in pts:
            pts.append(t)
    vals = []
    for t in pts:
        sol = system(t)
        if sol is None:
            raise ArithmeticError("inconsistent at a second specialization point")
        vals.append(sol[0])
    # v^{-lo} c(v) is a polynomial of degree < npts
    V_ = flint.nmod_mat(npts, npts, [pow(t, k, prime) for t in pts for k in range(npts)], prime)
    Vinv = V_.inv()
    out = []
    for j in range(n):
        col = flint.nmod_mat(npts, 1, [vals[r][j] * pow(pow(t, -1, prime), lo, prime) % prime if lo >= 0
                                       else vals[r][j] * pow(t, -lo, prime) % prime
                                       for r, t in enumerate(pts)], prime)
        cf = Vinv * col
        terms = {}
        for k in range(npts):
            a = _symmetric(int(cf[k, 0]), prime)
            if a:
                e = k + lo
                terms[(("v", e),) if e else ()] = a
        out.append(Scalar._raw(terms))
    return out


# -- relations -------------------------------------------------------------------
def wreath_relations(m: int) -> bool:
    """``T_i H_1 = H_1 T_{i±m}`` for ``i ≠ m``."""
    alg = H(2 * m)
    h = H1_closed_formula(m)
    for i in parabolic_gens(m):
        j = i + m if i < m else i - m
        if alg.gen(i) * h != h * alg.gen(j):
            return False
    return True


def hu_iso_to_qwp(m: int) -> dict:
    """Compare ``A(m)`` with ``H_q(Σ_m) ≀ H(2)`` on generators and relations."""
    from ..instances import hu as hu_instance
    from ..qwp import QwpAlgebra

    B, Qp = hu_instance(m)
    A = QwpAlgebra(B, Qp, 2)
    alg = H(2 * m)
    h = H1_closed_formula(m)
    Pm = all_perms(m)
    wreath = True
    for x in Pm:
        for y in Pm:
            tx = alg.T(x + tuple(range(m + 1, 2 * m + 1)))
            ty = alg.T(tuple(range(1, m + 1)) + tuple(k + m for k in y))
            txy = alg.T(x + tuple(k + m for k in y))
            tyx = alg.T(y + tuple(k + m for k in x))
            if h * txy != tyx * h:
                wreath = False
            ok_q = A.H(1) * A.tensor((x, y)) == A.tensor((y, x)) * A.H(1)
            wreath &= ok_q
    quad_hecke = h * h == z_mm(m)
    z_pairs = A.element({(p, 0): c for p, c in Qp.R.items()})
    quad_qwp = A.H(1) * A.H(1) == z_pairs
    return {
        "wreath": wreath,
        "quadratic_hecke": quad_hecke,
        "quadratic_qwp": quad_qwp,
        "dim_hu": 2 * len(Pm) ** 2,
        "dim_qwp": A.dim,
    }


def generalized_hu(m: int, d: int) -> dict:
    """Generators ``H_{j+1} = π_{jm}(h_m^*)`` in ``H_q(Σ_{md})`` and braid probes."""
    if m * d > 6:
        raise ValueError("m*d <= 6 required")
    big = H(m * d)
    h = H1_closed_formula(m)
    gens = [h.shift(j * m, big) for j in range(d - 1)]
    out = {"generators": gens, "braid_defects": []}
    q = V ** 2
    for i in range(len(gens) - 1):
        a, b = gens[i], gens[i + 1]
        defect = a * b * a - b * a * b
        out["braid_defects"].append(defect)
        if m == 1:
            out.setdefault("modified_braid", True)
            out["modified_braid"] &= defect == (b - a) * (q - 1) ** 2
    return out


# -- type B oracle ---------------------------------------------------------------
def hm_typeB_oracle(m: int, spec) -> dict:
    """Solve ``u_m^+ T_{w_{m,m}} u_m^- ≡ u_m^+ h (mod Σ_{b>m} H u_b^+ H)`` at a point.

    ``spec`` is a prime-field :class:`SpecializationMap` assigning ``v``
    (``q = v^2``), or a bare integer ``v`` value.  Returns ``{perm: value mod p}``
    for ``h`` in the T-basis of ``Σ_{2m}``.
    """
    import flint

    if isinstance(spec, int):
        spec = SpecializationMap({"v": spec}, DEFAULT_PRIME)
    if spec.prime is None:
        raise ValueError("the oracle runs over a prime field")
    prime = spec.prime
    t = int(spec.values["v"]) % prime

    N = 2 * m
    q = flint.nmod(t * t, prime)
    B = typeB_algebra(N, q)
    G = B.G
    size = len(G)
    one = flint.nmod(1, prime)

    def vec(x: HeckeElement) -> list:
        row = [0] * size
        for k, c in x.c.items():
            row[k] = int(c)
        return row

    # ideal generated by u_b^+, b > m
    seeds = [vec(jucys_murphy(b, 1, N, q)) for b in range(m + 1, N + 1)]
    J = _ideal_closure(B, seeds, prime)
    up = jucys_murphy(m, 1, N, q)
    um = jucys_murphy(m, -1, N, q)
    target = up * B.T(w_ab(m, m) + ()) * um if False else up * B.T_word(w_ab_word(m, m)) * um
    sigma = all_perms(N)
    cols = [vec(up * B.T(w)) for w in sigma]
    k = len(J)
    # unknowns: coefficients on J rows and on u_m^+ T_w
    rows = J + cols
    M = flint.nmod_mat(len(rows), size, [x for r in rows for x in r], prime).transpose()
    aug = flint.nmod_mat(size, len(rows) + 1, [0] * (size * (len(rows) + 1)), prime)
    for i in range(size):
        for j in range(len(rows)):
            aug[i, j] = M[i, j]
    tv = vec(target)
    for i in range(size):
        aug[i, len(rows)] = tv[i]
    R, rk = aug.rref()
    full_rank = flint.nmod_mat(len(rows), size, [x for r in rows for x in r], prime).rank()
    if full_rank != k + len(sigma):
        raise ArithmeticError("u_m^+ T_w are dependent modulo the ideal; retry at another point")
    ncols = len(rows)
    sol = [0] * ncols
    for i in range(rk):
        lead = next(j for j in range(ncols + 1) if int(R[i, j]))
        if lead == ncols:
            raise ArithmeticError("target not in the span")
        sol[lead] = int(R[i, ncols])
    return {w: sol[k + j] for j, w in enumerate(sigma) if sol[k + j]}


def _ideal_closure(B: HeckeAlgebra, seeds: list, prime: int) -> list:
    """Row basis of the two-sided ideal generated by ``seeds`` (dense mod-p vectors)."""
    import flint

    G = B.G
    size = len(G)
    mats = []
    for i in G.gens:
        for side in ("r", "l"):
            M = flint.nmod_mat(size, size, [0] * size * size, prime)
            for k in range(size):
                e = HeckeElement(B, {k: B.one_c})
                img = e.rmul_gen(i) if side == "r" else e.lmul_gen(i)
                for j, c in img.c.items():
                    M[k, j] = c
            mats.append(M)
    cur = flint.nmod_mat(len(seeds), size, [x for r in seeds for x in r], prime)
    cur, rk = cur.rref()
    rows = _nonzero_rows(cur, rk, size, prime)
    while True:
        blocks = [rows] + [rows * M for M in mats]
        stacked = _vstack(blocks, size, prime)
        R, rk2 = stacked.rref()
        if rk2 == rows.nrows():
            break
        rows = _nonzero_rows(R, rk2, size, prime)
    return [[int(rows[i, j]) for j in range(size)] for i in range(rows.nrows())]


def _nonzero_rows(R, rk: int, size: int, prime: int):
    import flint

    out = flint.nmod_mat(rk, size, [0] * rk * size, prime)
    for i in range(rk):
        for j in range(size):
            out[i, j] = R[i, j]
    return out


def _vstack(blocks: list, size: int, prime: int):
    import flint

    n = sum(b.nrows() for b in blocks)
    entries = []
    for b in blocks:
        for i in range(b.nrows()):
            entries.extend(int(b[i, j]) for j in range(size))
    return flint.nmod_mat(n, size, entries, prime)


def specialize_h(m: int, t: int, prime: int = DEFAULT_PRIME) -> dict:
    smap = v_point(t, prime)
    return h_recursion(m).specialize(smap)
