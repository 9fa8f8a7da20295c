"""Figures and tables for ``qwreath report --plot DIR``.

Three data sets, each written as CSV, JSON and a PNG figure:

* ``z_coefficients``: I-basis coefficients of ``z_{m,m}`` (m = 1, 2, 3) with
  their v-degree span and value at v = 1.
* ``hecke_commutant``: commutant dimensions of ``H_q(Σ_d)`` on ``V(n)^{⊗d}``
  against the count ``C(n²+d-1, d)``.
* ``checker_workload``: number of identities each checker evaluated per
  instance at d = 2.
"""

from __future__ import annotations

import csv
import json
from fractions import Fraction
from math import comb
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

STYLE = {
    "font.size": 9,
    "axes.labelsize": 9,
    "axes.spines.top": False,
    "axes.spines.right": False,
    "figure.dpi": 150,
    "savefig.bbox": "tight",
}


def _write(out: Path, name: str, rows: list) -> list:
    csv_path, json_path = out / f"{name}.csv", out / f"{name}.json"
    with open(csv_path, "w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=list(rows[0]))
        w.writeheader()
        w.writerows(rows)
    json_path.write_text(json.dumps({"schema": 1, "rows": rows}, indent=2, sort_keys=True) + "\n")
    return [csv_path, json_path]


def z_rows() -> list:
    from .coeff import v_point
    from .hecke.hu import z_mm

    rows = []
    for m in (1, 2, 3):
        z = z_mm(m)
        G = z.alg.G
        for perm, c in sorted(z.I_coeffs().items(), key=lambda kv: G.length[G.index[kv[0]]]):
            degs = c.degrees("v")
            k = G.index[perm]
            rows.append({"m": m, "term": "I[" + ".".join(map(str, G.words[k])) + "]" if k else "1",
                         "coefficient": str(c), "v_min": min(degs), "v_max": max(degs),
                         "at_v1": str(Fraction(v_point(1)(c)))})
    return rows


def commutant_rows(pairs=((2, 2), (2, 3), (3, 2), (2, 4), (3, 3)), seed: int = 0) -> list:
    from .schur import build_tensor_action, commutant

    rows = []
    for n, d in pairs:
        mod = build_tensor_action("heckeA", n, d, seed=seed)
        rows.append({"n": n, "d": d, "dim_T": n ** d, "commutant": commutant(mod).dim,
                     "binomial": comb(n * n + d - 1, d)})
    return rows


def workload_rows() -> list:
    from . import instances as inst
    from .conditions import check_parameter_conditions, grand_loop_verify

    rows = []
    for name, kw in (("hecke", {}), ("yokonuma", {"m": 2}), ("degenerate", {"window": 4}),
                     ("affine", {"window": 4}), ("nil_hecke", {"window": 4}), ("hu", {"m": 2})):
        B, Qp = inst.build(name, **kw)
        c = check_parameter_conditions(Qp, B, 2)
        g = grand_loop_verify(Qp, B, 2)
        rows.append({"instance": name, "conditions": sum(v.checked for v in c.verdicts),
                     "grand_loop": sum(v.checked for v in g.verdicts),
                     "certification": c.certification})
    return rows


def _fig_z(rows: list, path: Path) -> None:
    fig, axes = plt.subplots(1, 3, figsize=(8, 2.6), sharey=False)
    for ax, m in zip(axes, (1, 2, 3)):
        sub = [r for r in rows if r["m"] == m]
        ax.bar(range(len(sub)), [r["v_max"] - r["v_min"] for r in sub], bottom=[r["v_min"] for r in sub],
               color="#4eb3d3")
        if len(sub) <= 8:
            ax.set_xticks(range(len(sub)))
            ax.set_xticklabels([r["term"] for r in sub], rotation=60, fontsize=6)
        else:
            ax.set_xlabel("term (by length)")
        ax.set_title(f"m = {m}")
    axes[0].set_ylabel("v-degree span")
    fig.suptitle("I-basis coefficients of z_{m,m}", y=1.04)
    fig.savefig(path)
    plt.close(fig)


def _fig_commutant(rows: list, path: Path) -> None:
    fig, ax = plt.subplots(figsize=(3.4, 2.6))
    x = [r["binomial"] for r in rows]
    ax.loglog(x, [r["commutant"] for r in rows], "o", color="#08589e", label="computed")
    ax.loglog([min(x), max(x)], [min(x), max(x)], "--", color="grey", lw=0.8, label="C(n²+d-1, d)")
    for r in rows:
        ax.annotate(f"({r['n']},{r['d']})", (r["binomial"], r["commutant"]), fontsize=6,
                    xytext=(3, -8), textcoords="offset points")
    ax.set_xlabel("binomial count")
    ax.set_ylabel("commutant dimension")
    ax.legend(frameon=False, fontsize=7)
    fig.savefig(path)
    plt.close(fig)


def _fig_workload(rows: list, path: Path) -> None:
    fig, ax = plt.subplots(figsize=(4.2, 2.6))
    idx = range(len(rows))
    ax.bar([i - 0.2 for i in idx], [r["conditions"] for r in rows], 0.4, label="conditions", color="#7bccc4")
    ax.bar([i + 0.2 for i in idx], [r["grand_loop"] for r in rows], 0.4, label="grand loop", color="#2b8cbe")
    ax.set_xticks(list(idx))
    ax.set_xticklabels([r["instance"] for r in rows], rotation=30, fontsize=7)
    ax.set_yscale("log")
    ax.set_ylabel("identities checked (d = 2)")
    ax.legend(frameon=False, fontsize=7)
    fig.savefig(path)
    plt.close(fig)


def write_report(out: Path, seed: int = 0, quick: bool = False) -> list:
    out.mkdir(parents=True, exist_ok=True)
    files = []
    with plt.rc_context(STYLE):
        rows = z_rows()
        files += _write(out, "z_coefficients", rows)
        _fig_z(rows, out / "z_coefficients.png")
        files.append(out / "z_coefficients.png")

        pairs = ((2, 2), (3, 2), (2, 3)) if quick else ((2, 2), (2, 3), (3, 2), (2, 4), (3, 3))
        rows = commutant_rows(pairs, seed)
        files += _write(out, "hecke_commutant", rows)
        _fig_commutant(rows, out / "hecke_commutant.png")
        files.append(out / "hecke_commutant.png")

        if not quick:
            rows = workload_rows()
            files += _write(out, "checker_workload", rows)
            _fig_workload(rows, out / "checker_workload.png")
            files.append(out / "checker_workload.png")
    return files
