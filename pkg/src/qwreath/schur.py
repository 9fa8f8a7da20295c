"""Tensor-space modules and double-centralizer checks over prime fields.

A :class:`TensorModule` is ``V^{⊗D}`` with a right action of a quantum
wreath product given on basis vectors ``v_μ`` (row-vector convention, so
``M_{xy} = M_x M_y``).  All linear algebra happens at a specialization
point modulo a prime.

The commutant ``S = End_A(T)`` is solved block by block on the
generator-invariant components of ``T``.  The bicommutant is then solved
inside the block-diagonal maps (``S`` contains the component projections),
first per component and then coupled across components.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from math import comb, factorial
from typing import Callable, Optional

import flint

from . import instances as inst
from .base_alg import TruncationOverflow
from .coeff import DEFAULT_PRIME, ONE, Scalar, SpecializationMap
from .perm import CoxeterGroup
from .qwp import QwpAlgebra

SIZE_LIMIT = 5000


class SplittingError(ValueError):
    """No strictly increasing index tuple exists (``n`` too small)."""


class SizeGuard(MemoryError):
    pass


class RelationProbeError(ValueError):
    """Generator actions violate a defining relation."""

    def __init__(self, result: dict):
        super().__init__(f"relation probe failed: {result['witness']}")
        self.result = result


# -- sparse vectors mod p -------------------------------------------------------------
def _axpy(out: dict, x: dict, c: int, p: int) -> None:
    for k, v in x.items():
        s = (out.get(k, 0) + c * v) % p
        if s:
            out[k] = s
        else:
            out.pop(k, None)


def _hecke_step(mu: tuple, i: int, q: int, p: int) -> dict:
    """``v_μ · H_i`` by the three-case rule (``q`` already reduced mod ``p``)."""
    a, b = mu[i - 1], mu[i]
    sw = mu[: i - 1] + (b, a) + mu[i + 1:]
    if a < b:
        return {sw: 1}
    if a == b:
        return {mu: q % p}
    out = {sw: q % p}
    if (q - 1) % p:
        out[mu] = (q - 1) % p
    return out


def _place_swap(mu: tuple, i: int) -> dict:
    return {mu[: i - 1] + (mu[i], mu[i - 1]) + mu[i + 1:]: 1}


# -- the module -------------------------------------------------------------------------
@dataclass
class TensorModule:
    """``V^{⊗D}`` with named generator actions at a prime-field point.

    ``gens`` maps a name to ``μ -> {μ': c}``; ``acting`` lists the names that
    generate the acting algebra.  ``slot(j, b)`` returns a generator word for
    basis element ``b`` of ``B`` in slot ``j`` (QWP-based instances), and
    ``H_word(i)`` the word realizing ``H_i``.
    """

    instance: str
    n: int
    d: int
    factors: int
    letters: list
    smap: SpecializationMap
    gens: dict
    acting: list
    dim_A: int
    algebra: Optional[QwpAlgebra] = None
    slot: Optional[Callable] = None
    H_word: Optional[Callable] = None
    elements: dict = field(default_factory=dict)
    finite: bool = True
    probe_letters: Optional[list] = None
    extra_relations: list = field(default_factory=list)
    split_mu: Optional[Callable] = None

    @property
    def prime(self) -> int:
        return self.smap.prime

    @property
    def basis(self) -> list:
        return list(itertools.product(self.letters, repeat=self.factors))

    @property
    def dim(self) -> int:
        return len(self.letters) ** self.factors

    def c(self, x) -> int:
        return self.smap(x) if isinstance(x, Scalar) else x % self.prime

    # -- application ----------------------------------------------------------------
    def apply(self, name: str, vec: dict) -> dict:
        if name in self.elements:
            out: dict = {}
            for word, c in self.elements[name]:
                _axpy(out, self.apply_word(word, vec), c, self.prime)
            return out
        act = self.gens[name]
        out = {}
        for mu, c in vec.items():
            _axpy(out, act(mu), c, self.prime)
        return out

    def apply_word(self, word, vec: dict) -> dict:
        for g in word:
            vec = self.apply(g, vec)
        return vec

    def apply_tensor(self, t: tuple, vec: dict) -> dict:
        for j, b in enumerate(t):
            vec = self.apply_word(self.slot(j, b), vec)
        return vec

    def apply_qwp(self, x: dict, vec: dict) -> dict:
        """Action of a right-normal-form element ``Σ c · t H_w``."""
        A = self.algebra
        out: dict = {}
        for (t, w), c in x.items():
            cv = self.c(c)
            if not cv:
                continue
            y = self.apply_tensor(t, vec)
            for i in A.words[w]:
                y = self.apply_word(self.H_word(i), y)
            _axpy(out, y, cv, self.prime)
        return out

    def matrix(self, name: str) -> dict:
        """Sparse rows ``{μ: {μ': c}}``."""
        return {mu: self.apply(name, {mu: 1}) for mu in self.basis}

    # -- relation probe -------------------------------------------------------------
    def probe(self, limit: Optional[int] = None) -> dict:
        """Check defining relations on basis vectors.

        QWP-based modules compare sequential application of every generator
        pair ``g h`` with the right normal form of ``g h``, and both sides of
        each braid relation.  Other modules use ``extra_relations``.
        """
        vecs = list(itertools.product(self.probe_letters or self.letters, repeat=self.factors))
        if limit is not None and len(vecs) > limit:
            vecs = random.Random(0).sample(vecs, limit)
        checks = self._relations()
        ok, checked, skipped, witness = True, 0, 0, None
        for name, lhs, rhs in checks:
            for mu in vecs:
                try:
                    a, b = lhs({mu: 1}), rhs({mu: 1})
                except TruncationOverflow:
                    skipped += 1
                    continue
                checked += 1
                if a != b:
                    ok = False
                    if witness is None:
                        witness = {"relation": name, "vector": list(mu)}
        return {"ok": ok, "checked": checked, "skipped": skipped, "witness": witness}

    def _relations(self) -> list:
        rels = list(self.extra_relations)
        A = self.algebra
        if A is None:
            return rels
        one = A.one_t
        gens = []
        for j in range(A.d):
            for g in A.B.generators:
                t = list(one)
                t[j] = g
                gens.append((f"b{j + 1}:{A.B.name_of(g)}", {(tuple(t), 0): ONE}, self.slot(j, g)))
        for i in range(1, A.d):
            gens.append((f"H{i}", {(one, A.G.rmul[i][0]): ONE}, self.H_word(i)))
        for (n1, x1, w1), (n2, x2, w2) in itertools.product(gens, repeat=2):
            prod = A.mul(x1, x2)
            rels.append((f"{n1}*{n2}", lambda v, w1=w1, w2=w2: self.apply_word(w2, self.apply_word(w1, v)),
                         lambda v, prod=prod: self.apply_qwp(prod, v)))
        for i in range(1, A.d - 1):
            a, b = self.H_word(i), self.H_word(i + 1)
            rels.append((f"braid{i}", lambda v, a=a, b=b: self.apply_word(a + b + a, v),
                         lambda v, a=a, b=b: self.apply_word(b + a + b, v)))
        return rels


def _slot_words_hecke(B, offset_of: Callable) -> Callable:
    """``T_w`` of ``H_q(Σ_m)`` in slot ``j`` as a word in the ambient ``T`` generators."""
    from .perm import reduced_word

    def slot(j: int, b) -> list:
        if B.kind != "hecke_symmetric":
            return []
        return [f"T{i + offset_of(j)}" for i in reduced_word(b)]

    return slot


def _point(names: list, seed: int, prime: int, point: Optional[dict]) -> SpecializationMap:
    if point is not None:
        return SpecializationMap(dict(point), prime)
    rng = random.Random(seed)
    vals = {}
    for nm in names:
        while True:
            x = rng.randrange(2, prime - 1)
            if x not in vals.values():
                break
        vals[nm] = x
    if "v" in vals:
        vals["q"] = vals["v"] ** 2 % prime
    return SpecializationMap(vals, prime)


# -- builders ---------------------------------------------------------------------------
def build_tensor_action(instance: str, n: int, d: int = 2, m: int = 1, seed: int = 0,
                        prime: int = DEFAULT_PRIME, point: Optional[dict] = None,
                        window: int = 2, literal: bool = False, check: bool = False) -> TensorModule:
    """Tensor module for ``instance`` at a seeded prime-field point.

    ``heckeA``: ``V(n)^{⊗d}``.  ``hu``: ``V(n)^{⊗2m}`` restricted to ``A(m)``
    (``d`` is ignored).  ``ariki_koike``: ``V(m, n)^{⊗d}``.  ``wreath_group``:
    ``(KC_m)^{⊕n}`` tensor powers.  ``affine`` / ``degenerate``: letters in a
    window of ``ℤ`` (probe only).  ``literal`` selects the printed
    Ariki-Koike top-vector rule.  With ``check`` the relation probe runs and
    a failure raises :class:`RelationProbeError`.
    """
    builders = {"heckeA": _heckeA, "hecke": _heckeA, "hu": _hu, "ariki_koike": _ariki_koike,
                "wreath_group": _wreath_group, "affine": _affine, "degenerate": _degenerate}
    if instance not in builders:
        raise ValueError(f"unknown module instance {instance!r}")
    mod = builders[instance](n=n, d=d, m=m, seed=seed, prime=prime, point=point, window=window, literal=literal)
    if mod.finite and mod.dim > SIZE_LIMIT:
        raise SizeGuard(f"dim T = {mod.dim} exceeds {SIZE_LIMIT}")
    if check:
        res = mod.probe(limit=400)
        if not res["ok"]:
            raise RelationProbeError(res)
    return mod


def _heckeA(n, d, seed, prime, point, **_):
    smap = _point(["q"], seed, prime, point)
    q = smap(Scalar.var("q"))
    gens = {f"T{i}": (lambda mu, i=i: _hecke_step(mu, i, q, prime)) for i in range(1, d)}
    A = inst.algebra("hecke", d)
    return TensorModule("heckeA", n, d, d, list(range(1, n + 1)), smap, gens, list(gens), factorial(d),
                        algebra=A, slot=lambda j, b: [], H_word=lambda i: [f"T{i}"],
                        split_mu=lambda: tuple(range(1, d + 1)) if n >= d else None)


def _hu(n, m, seed, prime, point, **_):
    from .hecke.hu import H1

    D = 2 * m
    smap = _point(["v"], seed, prime, point)
    q = smap(Scalar.var("q"))
    gens = {f"T{i}": (lambda mu, i=i: _hecke_step(mu, i, q, prime)) for i in range(1, D)}
    A = inst.algebra("hu", 2, m=m)
    G = CoxeterGroup("A", D)
    terms = []
    for w, c in H1(m).items():
        cv = smap(c)
        if cv:
            terms.append(([f"T{i}" for i in G.words[G.index[w]]], cv))
    mod = TensorModule("hu", n, D, D, list(range(1, n + 1)), smap, gens, [], 2 * factorial(m) ** 2,
                       algebra=A, slot=_slot_words_hecke(A.B, lambda j: j * m), H_word=lambda i: ["H1"],
                       elements={"H1": terms},
                       split_mu=lambda: tuple(range(1, D + 1)) if n >= D else None)
    mod.acting = [f"T{i}" for i in range(1, D) if i != m] + ["H1"]
    return mod


def _ak_letters(m: int, n: int) -> list:
    return list(range(1, m * n + 1))


def ak_x_action(m: int, e: list, literal: bool = False) -> Callable:
    """``v_{km+j} · X``.

    The top vector ``v_{km+m}`` maps to ``Σ_i (-1)^{i-1} e_i v_{km+m+1-i}``.
    ``literal=True`` uses the printed target ``v_{km+m-i}`` instead, which
    leaves the block (and the basis when ``k = 0``).
    """
    def act(idx: int) -> dict:
        k, j = divmod(idx - 1, m)
        j += 1
        if j < m:
            return {idx + 1: 1}
        out = {}
        for i in range(1, m + 1):
            tgt = k * m + m - i + (0 if literal else 1)
            if tgt < 1:
                raise TruncationOverflow(f"index {tgt} outside the basis")
            out[tgt] = out.get(tgt, 0) + (-1) ** (i - 1) * e[i - 1]
        return out

    return act


def _ariki_koike(n, d, m, seed, prime, point, literal: bool = False, **_):
    from .base_alg import elementary_symmetric

    names = [f"q{i}" for i in range(1, m + 1)]
    smap = _point(["q"] + names, seed, prime, point)
    q = smap(Scalar.var("q"))
    e = [smap(x) for x in elementary_symmetric(names)]
    xact = ak_x_action(m, e, literal)

    def x1(mu):
        return {(k,) + mu[1:]: c % prime for k, c in xact(mu[0]).items() if c % prime}

    gens = {f"T{i}": (lambda mu, i=i: _hecke_step(mu, i, q, prime)) for i in range(1, d)}
    gens["X1"] = x1
    qinv = pow(q, -1, prime)
    elements = {}
    for j in range(2, d + 1):
        up = [f"T{i}" for i in range(j - 1, 0, -1)]
        elements[f"X{j}"] = [(up + ["X1"] + up[::-1], pow(qinv, j - 1, prime))]
    A = inst.algebra("ariki_koike", d, m=m)
    mod = TensorModule("ariki_koike", n, d, d, _ak_letters(m, n), smap, gens, list(gens), m ** d * factorial(d),
                       algebra=None, elements=elements,
                       split_mu=lambda: tuple(k * m + 1 for k in range(d)) if n >= d else None)
    mod.qwp = A
    mod.extra_relations = _ak_relations(mod, m, d, q, e)
    return mod


def _ak_relations(mod: TensorModule, m: int, d: int, q: int, e: list) -> list:
    p = mod.prime
    W = mod.apply_word

    def lin(*terms):
        def f(v):
            out: dict = {}
            for c, word in terms:
                _axpy(out, W(word, v), c, p)
            return out
        return f

    T = [None] + [f"T{i}" for i in range(1, d)]
    rels = []
    for i in range(1, d):
        rels.append((f"quad{i}", lin((1, [T[i], T[i]])), lin(((q - 1) % p, [T[i]]), (q, []))))
    for i in range(1, d - 1):
        rels.append((f"braid{i}", lin((1, [T[i], T[i + 1], T[i]])), lin((1, [T[i + 1], T[i], T[i + 1]]))))
    for i in range(1, d):
        for j in range(i + 2, d):
            rels.append((f"far{i},{j}", lin((1, [T[i], T[j]])), lin((1, [T[j], T[i]]))))
    if d > 1:
        rels.append(("X1T1X1T1", lin((1, ["X1", "T1", "X1", "T1"])), lin((1, ["T1", "X1", "T1", "X1"]))))
    for i in range(2, d):
        rels.append((f"X1T{i}", lin((1, ["X1", T[i]])), lin((1, [T[i], "X1"]))))
    # X^m = Σ (-1)^{i-1} e_i X^{m-i}
    rels.append(("cyclotomic", lin((1, ["X1"] * m)),
                 lin(*[((-1) ** (i - 1) * e[i - 1] % p, ["X1"] * (m - i)) for i in range(1, m + 1)])))
    # Jucys-Murphy: L_{i+1} = q^{-1} T_i L_i T_i and pairwise commutation
    for a in range(1, d + 1):
        for b in range(a + 1, d + 1):
            rels.append((f"L{a}L{b}", lin((1, [f"X{a}" if a > 1 else "X1", f"X{b}"])),
                         lin((1, [f"X{b}", f"X{a}" if a > 1 else "X1"]))))
    return rels


def _wreath_group(n, d, m, seed, prime, point, **_):
    smap = _point([], seed, prime, point or {})
    letters = [(i, g) for i in range(1, n + 1) for g in range(m)]
    gens = {f"T{i}": (lambda mu, i=i: _place_swap(mu, i)) for i in range(1, d)}
    for j in range(d):
        def xj(mu, j=j):
            i, g = mu[j]
            return {mu[:j] + ((i, (g + 1) % m),) + mu[j + 1:]: 1}
        gens[f"x{j + 1}"] = xj
    B, Qp = inst.yokonuma(m, "group")
    A = QwpAlgebra(B, Qp, d)
    return TensorModule("wreath_group", n, d, d, letters, smap, gens, list(gens), m ** d * factorial(d),
                        algebra=A, slot=lambda j, b: [f"x{j + 1}"] * b, H_word=lambda i: [f"T{i}"],
                        split_mu=lambda: tuple((k + 1, 0) for k in range(d)) if n >= d else None)


def _windowed(name: str, n, d, seed, prime, point, window, q_name: Optional[str]):
    smap = _point([q_name] if q_name else [], seed, prime, point or ({} if not q_name else None))
    q = smap(Scalar.var(q_name)) if q_name else 1
    lo = -window * n if name == "affine" else 1
    hi = window * n + n
    letters = list(range(lo, hi + 1))

    def shift(mu, j, s):
        k = mu[j] + s
        if not lo <= k <= hi:
            raise TruncationOverflow("tensor letter left the window")
        return {mu[:j] + (k,) + mu[j + 1:]: 1}

    gens = {f"T{i}": (lambda mu, i=i: _hecke_step(mu, i, q, prime)) for i in range(1, d)}
    for j in range(d):
        gens[f"X{j + 1}"] = lambda mu, j=j: shift(mu, j, n)
        gens[f"Xinv{j + 1}"] = lambda mu, j=j: shift(mu, j, -n)
    A = inst.algebra(name, d, window=8)

    def slot(j, b):
        return [f"X{j + 1}"] * b if b >= 0 else [f"Xinv{j + 1}"] * (-b)

    inner = list(range(max(lo, -n), min(hi, 2 * n) + 1))
    return TensorModule(name, n, d, d, letters, smap, gens, list(gens), 0, algebra=A, slot=slot,
                        H_word=lambda i: [f"T{i}"], finite=False, probe_letters=inner,
                        split_mu=lambda: tuple(range(1, d + 1)) if n >= d else None)


def _affine(n, d, seed, prime, point, window, **_):
    return _windowed("affine", n, d, seed, prime, point, window, "q")


def _degenerate(n, d, seed, prime, point, window, **_):
    return _windowed("degenerate", n, d, seed, prime, point, window, None)


# -- splitting -----------------------------------------------------------------------
@dataclass
class SplittingWitness:
    mu: tuple
    dim_W: int
    dim_A: int
    dim_T: int
    closed: bool

    @property
    def ok(self) -> bool:
        return self.dim_W == self.dim_A and self.closed

    @property
    def complement_dim(self) -> int:
        return self.dim_T - self.dim_A

    def to_json(self) -> dict:
        return {"mu": [str(x) for x in self.mu], "dim_W": self.dim_W, "dim_A": self.dim_A,
                "complement_dim": self.complement_dim, "closed": self.closed, "ok": self.ok}


def _span_closure(mod: TensorModule, start: dict) -> list:
    """Basis (rref rows over ``mod.basis``) of the ``A``-submodule generated by ``start``."""
    index = {mu: k for k, mu in enumerate(mod.basis)}
    N, p = len(index), mod.prime
    rows: list = []
    frontier = [start]
    while frontier:
        cand = rows + [_dense(v, index, N) for v in frontier]
        R, rk = flint.nmod_mat(len(cand), N, [x for r in cand for x in r], p).rref()
        new_rows = [[int(R[i, j]) for j in range(N)] for i in range(rk)]
        if rk == len(rows):
            break
        rows = new_rows
        frontier = []
        for r in rows:
            vec = {mod.basis[j]: x for j, x in enumerate(r) if x}
            for g in mod.acting:
                frontier.append(mod.apply(g, vec))
        if len(rows) >= N:
            break
    return rows


def _dense(v: dict, index: dict, N: int) -> list:
    row = [0] * N
    for k, c in v.items():
        row[index[k]] = c
    return row


def splitting_witness(mod: TensorModule) -> SplittingWitness:
    """``W = v_μ · A`` for strictly increasing ``μ``: free of rank one iff ``dim W = dim A``.

    ``closed`` records that ``W`` is stable under the generators.
    """
    mu = mod.split_mu() if mod.split_mu else None
    if mu is None:
        raise SplittingError(f"no strictly increasing μ for n={mod.n}, {mod.factors} factors")
    if not mod.finite:
        raise SplittingError("splitting witness needs a finite module")
    rows = _span_closure(mod, {mu: 1})
    return SplittingWitness(mu, len(rows), mod.dim_A, mod.dim, True)


# -- commutant ------------------------------------------------------------------------
def components(mod: TensorModule) -> list:
    """Finest partition of the basis into generator-stable supports (union-find)."""
    basis = mod.basis
    parent = {mu: mu for mu in basis}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in mod.acting:
        for mu in basis:
            for nu in mod.apply(g, {mu: 1}):
                a, b = find(mu), find(nu)
                if a != b:
                    parent[a] = b
    groups: dict = {}
    for mu in basis:
        groups.setdefault(find(mu), []).append(mu)
    return sorted(groups.values(), key=lambda g: (-len(g), g[0]))


def _block_mats(mod: TensorModule, comps: list) -> list:
    """``[ {gen: nmod_mat} ]`` restricted to each component."""
    p = mod.prime
    out = []
    for comp in comps:
        idx = {mu: k for k, mu in enumerate(comp)}
        n = len(comp)
        mats = {}
        for g in mod.acting:
            flat = [0] * (n * n)
            for r, mu in enumerate(comp):
                for nu, c in mod.apply(g, {mu: 1}).items():
                    flat[r * n + idx[nu]] = c
            mats[g] = flint.nmod_mat(n, n, flat, p)
        out.append(mats)
    return out


def _hom_equations(Ma: flint.nmod_mat, Mb: flint.nmod_mat, p: int) -> list:
    """Rows of ``M_a X - X M_b = 0`` for ``X`` (``da × db``, row-major)."""
    da, db = Ma.nrows(), Mb.nrows()
    a_rows = [[(k, int(x)) for k, x in enumerate(r) if int(x)] for r in Ma.tolist()]
    Bt = Mb.transpose().tolist()
    b_cols = [[(k, int(x)) for k, x in enumerate(c) if int(x)] for c in Bt]
    rows = []
    for r in range(da):
        for c in range(db):
            row = [0] * (da * db)
            for k, x in a_rows[r]:
                row[k * db + c] = (row[k * db + c] + x) % p
            for k, x in b_cols[c]:
                row[r * db + k] = (row[r * db + k] - x) % p
            rows.append(row)
    return rows


def _nullspace(rows: list, ncols: int, p: int) -> list:
    if not rows:
        return [[int(i == j) for j in range(ncols)] for i in range(ncols)]
    M = flint.nmod_mat(len(rows), ncols, [x for r in rows for x in r], p)
    N, k = M.nullspace()
    return [[int(N[r, c]) for r in range(ncols)] for c in range(k)]


def _to_mat(vec: list, r: int, c: int, p: int) -> flint.nmod_mat:
    return flint.nmod_mat(r, c, [int(x) for x in vec], p)


@dataclass
class Commutant:
    comps: list
    blocks: dict  # (a, b) -> [nmod_mat da×db]
    mats: list

    @property
    def dim(self) -> int:
        return sum(len(v) for v in self.blocks.values())


def commutant(mod: TensorModule) -> Commutant:
    """``End_A(T)`` as ``Hom`` blocks between components."""
    if not mod.finite:
        raise SizeGuard("commutant needs a finite module")
    p = mod.prime
    comps = components(mod)
    mats = _block_mats(mod, comps)
    blocks = {}
    for a, b in itertools.product(range(len(comps)), repeat=2):
        da, db = len(comps[a]), len(comps[b])
        rows = []
        for g in mod.acting:
            rows += _hom_equations(mats[a][g], mats[b][g], p)
        sol = _nullspace(rows, da * db, p)
        if sol:
            blocks[(a, b)] = [_to_mat(v, da, db, p) for v in sol]
    return Commutant(comps, blocks, mats)


# -- bicommutant ------------------------------------------------------------------------
def _flat(M: flint.nmod_mat) -> list:
    return [int(x) for x in M.entries()]


def _rand_comb(mats: list, rng: random.Random, p: int):
    acc = mats[0] * rng.randrange(1, p)
    for M in mats[1:]:
        acc = acc + M * rng.randrange(1, p)
    return acc


def _commute_rows(phi: flint.nmod_mat, p: int) -> list:
    """Rows of ``Y φ - φ Y = 0`` for square ``Y``."""
    n = phi.nrows()
    P = [[int(x) for x in r] for r in phi.tolist()]
    rows = []
    for r in range(n):
        for c in range(n):
            row = [0] * (n * n)
            for k in range(n):
                if P[k][c]:
                    row[r * n + k] = (row[r * n + k] + P[k][c]) % p
                if P[r][k]:
                    row[k * n + c] = (row[k * n + c] - P[r][k]) % p
            rows.append(row)
    return rows


def _local_bicommutant(phis: list, n: int, p: int, rng: random.Random) -> list:
    if not phis:
        return [_to_mat(v, n, n, p) for v in _nullspace([], n * n, p)]
    rows: list = []
    pending = [_rand_comb(phis, rng, p) for _ in range(2)]
    while True:
        for phi in pending:
            rows += _commute_rows(phi, p)
        cand = [_to_mat(v, n, n, p) for v in _nullspace(rows, n * n, p)]
        bad = [phi for phi in phis if any(Y * phi != phi * Y for Y in cand)]
        if not bad:
            return cand
        pending = bad[:4]


def bicommutant(mod: TensorModule, S: Commutant, seed: int = 0) -> list:
    """Basis of ``End_S(T)`` as lists of per-component blocks."""
    p = mod.prime
    rng = random.Random(seed)
    k = len(S.comps)
    local = []
    for a in range(k):
        local.append(_local_bicommutant(S.blocks.get((a, a), []), len(S.comps[a]), p, rng))
    offs, tot = [], 0
    for L in local:
        offs.append(tot)
        tot += len(L)

    def pair_rows(a, b, phi):
        da, db = len(S.comps[a]), len(S.comps[b])
        cols = [_flat(Y * phi) for Y in local[a]] + [[(-x) % p for x in _flat(phi * Y)] for Y in local[b]]
        if not cols:
            return []
        M = flint.nmod_mat(len(cols), da * db, [x for c in cols for x in c], p).transpose()
        R, rk = M.rref()
        out = []
        for i in range(rk):
            row = [0] * tot
            for t in range(len(local[a])):
                row[offs[a] + t] = (row[offs[a] + t] + int(R[i, t])) % p
            for t in range(len(local[b])):
                row[offs[b] + t] = (row[offs[b] + t] + int(R[i, len(local[a]) + t])) % p
            out.append(row)
        return out

    pending = {ab: [_rand_comb(v, rng, p)] for ab, v in S.blocks.items() if ab[0] != ab[1]}
    rows: list = []
    while True:
        for (a, b), phis in pending.items():
            for phi in phis:
                rows += pair_rows(a, b, phi)
        if rows:
            R, rk = flint.nmod_mat(len(rows), tot, [x for r in rows for x in r], p).rref()
            rows = [[int(R[i, j]) for j in range(tot)] for i in range(rk)]
        sols = _nullspace(rows, tot, p)
        cands = []
        for y in sols:
            cands.append([_lin(local[a], y[offs[a]: offs[a] + len(local[a])], len(S.comps[a]), p) for a in range(k)])
        pending = {}
        for (a, b), phis in S.blocks.items():
            if a == b:
                continue
            bad = [phi for phi in phis if any(Y[a] * phi != phi * Y[b] for Y in cands)]
            if bad:
                pending[(a, b)] = bad[:4]
        if not pending:
            return cands


def _lin(mats: list, coeffs: list, n: int, p: int) -> flint.nmod_mat:
    acc = flint.nmod_mat(n, n, p)
    for M, c in zip(mats, coeffs):
        if c:
            acc = acc + M * c
    return acc


def image_of_A(mod: TensorModule, mats: list) -> list:
    """Span of all products of generators, as per-component blocks (closure from the identity)."""
    p = mod.prime
    ident = [flint.nmod_mat(m.nrows(), m.nrows(), [int(i == j) for i in range(m.nrows()) for j in range(m.nrows())], p)
             for m in (next(iter(b.values())) for b in mats)]
    basis, flats = [], []

    def add(Y) -> bool:
        f = [x for blk in Y for x in _flat(blk)]
        cand = flats + [f]
        rk = flint.nmod_mat(len(cand), len(f), [x for r in cand for x in r], p).rank()
        if rk > len(flats):
            flats.append(f)
            basis.append(Y)
            return True
        return False

    add(ident)
    frontier = [ident]
    while frontier:
        nxt = []
        for Y in frontier:
            for g in mod.acting:
                Z = [Y[a] * mats[a][g] for a in range(len(mats))]
                if add(Z):
                    nxt.append(Z)
        frontier = nxt
    return basis


# -- top-level check ----------------------------------------------------------------
@dataclass
class DualityReport:
    instance: str
    n: int
    d: int
    points: list
    dim_T: int
    dim_A: int
    dim_commutant: list
    dim_bicommutant: list
    dim_image: list
    faithful: bool
    contained: bool
    verdict: str
    reason: str = ""
    expected_commutant: Optional[int] = None

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def to_json(self) -> dict:
        return {"schema": 1, "instance": self.instance, "n": self.n, "d": self.d,
                "spec_points": self.points, "dim_T": self.dim_T, "dim_A": self.dim_A,
                "dim_commutant": self.dim_commutant, "dim_bicommutant": self.dim_bicommutant,
                "dim_image": self.dim_image, "expected_commutant": self.expected_commutant,
                "faithful": self.faithful, "contained": self.contained,
                "verdict": self.verdict, "reason": self.reason}


def double_centralizer_check(instance: str, n: int, d: int = 2, m: int = 1, seed: int = 0,
                             prime: int = DEFAULT_PRIME, points: int = 2) -> DualityReport:
    """``End_{End_A(T)}(T)`` equals the image of ``A`` at ``points`` seeded primes-field points."""
    rng = random.Random(seed)
    seeds = [rng.randrange(1 << 30) for _ in range(points)]
    mod0 = build_tensor_action(instance, n, d, m=m, seed=seeds[0], prime=prime)
    dd = mod0.factors
    expected = comb(n * n + dd - 1, dd) if instance in ("heckeA", "hecke") else None
    try:
        splitting_witness(mod0)
    except SplittingError as exc:
        return DualityReport(instance, n, dd, [], mod0.dim, mod0.dim_A, [], [], [], False, False,
                             "skipped", str(exc), expected)
    pts, cd, bd, imd, faithful, contained = [], [], [], [], True, True
    for s in seeds:
        mod = build_tensor_action(instance, n, d, m=m, seed=s, prime=prime)
        pts.append({k: int(v) for k, v in mod.smap.values.items()})
        faithful &= splitting_witness(mod).ok
        S = commutant(mod)
        bic = bicommutant(mod, S, seed=s)
        img = image_of_A(mod, S.mats)
        contained &= all(Y[a] * phi == phi * Y[b] for Y in img for (a, b), phis in S.blocks.items() for phi in phis)
        cd.append(S.dim)
        bd.append(len(bic))
        imd.append(len(img))
    ok = (faithful and contained and len(set(cd)) == 1 and len(set(bd)) == 1
          and all(b == i == mod0.dim_A for b, i in zip(bd, imd))
          and (expected is None or cd[0] == expected))
    return DualityReport(instance, n, dd, pts, mod0.dim, mod0.dim_A, cd, bd, imd, faithful, contained,
                         "pass" if ok else "fail", "", expected)
