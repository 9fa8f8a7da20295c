"""Exact linear algebra over QQ and GF(p) on top of python-flint."""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Iterable, Sequence

import flint

from .coeff import DEFAULT_PRIME, Scalar, SpecializationMap


def nmod_matrix(rows: Sequence[Sequence[int]], p: int, ncols: int | None = None) -> flint.nmod_mat:
    nr = len(rows)
    nc = ncols if ncols is not None else (len(rows[0]) if rows else 0)
    flat = [int(x) % p for r in rows for x in r]
    return flint.nmod_mat(nr, nc, flat, p)


def fmpq_matrix(rows: Sequence[Sequence]) -> flint.fmpq_mat:
    nr = len(rows)
    nc = len(rows[0]) if rows else 0
    flat = [flint.fmpq(Fraction(x).numerator, Fraction(x).denominator) for r in rows for x in r]
    return flint.fmpq_mat(nr, nc, flat)


def rank_mod_p(rows, p: int = DEFAULT_PRIME, ncols: int | None = None) -> int:
    if not rows:
        return 0
    return nmod_matrix(rows, p, ncols).rank()


def rank_qq(rows) -> int:
    if not rows:
        return 0
    return fmpq_matrix(rows).rank()


def nullspace_mod_p(rows, p: int, ncols: int) -> list:
    """Basis (list of int vectors) of ``{x : A x = 0}``."""
    if not rows:
        return [[int(i == j) for j in range(ncols)] for i in range(ncols)]
    M = nmod_matrix(rows, p, ncols)
    N, k = M.nullspace()
    return [[int(N[r, c]) for r in range(ncols)] for c in range(k)]


def rref_mod_p(rows, p: int, ncols: int):
    M = nmod_matrix(rows, p, ncols)
    R, rk = M.rref()
    return [[int(R[i, j]) for j in range(ncols)] for i in range(rk)], rk


def solve_mod_p(rows, rhs: Sequence[int], p: int, ncols: int):
    """One solution of ``A x = rhs`` and the nullity, or ``None`` if inconsistent."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    R, rk = rref_mod_p(aug, p, ncols + 1)
    x = [0] * ncols
    pivots = []
    for row in R:
        lead = next(j for j, v in enumerate(row) if v)
        if lead == ncols:
            return None
        pivots.append(lead)
        x[lead] = row[ncols]
    return x, ncols - len(pivots)


def rank_scalar_matrix(mat, points: int = 2, seed: int = 0, prime: int = DEFAULT_PRIME) -> int:
    """Rank of a Scalar matrix: maximum over random prime-field points (a lower bound, exact whp)."""
    names = set()
    for row in mat:
        for x in row:
            if isinstance(x, Scalar):
                names |= x.variables()
    best = 0
    rng = random.Random(seed)
    for _ in range(points):
        smap = SpecializationMap({n: rng.randrange(2, prime - 1) for n in sorted(names)}, prime)
        rows = [[smap(x) if isinstance(x, Scalar) else int(x) % prime for x in row] for row in mat]
        best = max(best, rank_mod_p(rows, prime, len(mat[0]) if mat else 0))
    return best


def vectors_to_rows(vectors: Iterable[dict], index: dict, smap) -> list:
    """Dense specialized rows from sparse ``{key: Scalar}`` vectors."""
    rows = []
    n = len(index)
    for vec in vectors:
        row = [0] * n
        for k, c in vec.items():
            row[index[k]] = smap(c)
        rows.append(row)
    return rows
