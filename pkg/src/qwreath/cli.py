"""Command-line entry point ``qwreath``.

Every subcommand prints text (default), deterministic JSON (``--format json``)
or LaTeX (``--format latex``) and exits 0 iff its check passed.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from fractions import Fraction
from pathlib import Path

from . import instances as inst
from .coeff import DEFAULT_PRIME, SpecializationMap

SCHEMA = 1


class CliError(Exception):
    pass


# -- output ---------------------------------------------------------------------------
def _default(o):
    if hasattr(o, "to_json"):
        return o.to_json()
    if isinstance(o, (set, frozenset, tuple)):
        return list(o)
    return str(o)


def emit(args, payload: dict, text: str, latex: str | None = None) -> None:
    if args.format == "json":
        payload = {"schema": SCHEMA, **payload}
        print(json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False, default=_default))
    elif args.format == "latex":
        print(latex if latex is not None else to_latex(text))
    else:
        print(text)


def to_latex(s: str) -> str:
    """Dotted-index LaTeX for ``I[..]``/``T[..]``/``c[..]`` labels; ``~k`` becomes ``\\bar{k}``."""

    def lab(m):
        body = m.group(2).replace("s", "").strip().replace(" ", ".")
        body = re.sub(r"~(\d+)", r"\\bar{\1}", body)
        return f"{m.group(1)}_{{{body}}}"

    s = re.sub(r"([TIHc])\[([^\]]*)\]", lab, s)
    s = re.sub(r"\^(-?\d+)", r"^{\1}", s)
    s = s.replace("*", " ").replace("⊗", r"\otimes ")
    return f"${s}$"


# -- instance loading -----------------------------------------------------------------
def _toml_load(path: Path) -> dict:
    try:
        import tomllib
    except ModuleNotFoundError:  # Python < 3.11
        import tomli as tomllib
    with open(path, "rb") as fh:
        return tomllib.load(fh)


def load_instance(spec: str) -> dict:
    """An instance name, mutant name, or a ``.toml``/``.json`` description file."""
    p = Path(spec)
    if p.suffix in (".toml", ".json") or p.exists():
        if not p.exists():
            raise CliError(f"instance file {spec} not found")
        data = _toml_load(p) if p.suffix == ".toml" else json.loads(p.read_text())
        data = {k.replace("-", "_"): v for k, v in data.items()}
        name = data.pop("mutant", None) or data.pop("instance", None) or data.pop("name", None)
        if not name:
            raise CliError(f"{spec}: missing 'instance' key")
        data["instance"] = name
        return data
    return {"instance": spec}


def resolve(args) -> tuple:
    """``(name, params, d)`` merging file values with command-line overrides."""
    desc = load_instance(args.instance)
    name = desc.pop("instance")
    d = desc.pop("d", 2)
    if getattr(args, "d", None) is not None:
        d = args.d
    for key in ("m", "window", "variant"):
        val = getattr(args, key, None)
        if val is not None:
            desc[key] = val
    if "window" not in desc and os.environ.get("QWREATH_WINDOW"):
        desc["window"] = int(os.environ["QWREATH_WINDOW"])
    if name not in inst.BUILDERS and name not in inst.MUTANTS:
        raise CliError(f"unknown instance {name!r}; known: {', '.join(sorted(inst.BUILDERS))}")
    if d < 2:
        raise CliError("d must be at least 2")
    return name, desc, d


def build_algebra(args):
    from .qwp import QwpAlgebra

    name, params, d = resolve(args)
    B, Qp = inst.build(name, **params)
    return QwpAlgebra(B, Qp, d, name=f"{name}(d={d})"), name, params


# -- check / grand-loop / oracle ------------------------------------------------------
def cmd_check(args) -> bool:
    from .conditions import check_flip_simplification, check_parameter_conditions

    name, params, d = resolve(args)
    B, Qp = inst.build(name, **params)
    rep = check_parameter_conditions(Qp, B, d, window=args.window, instance=name)
    if Qp.sigma_is_flip and Qp.rho_zero:
        flip = check_flip_simplification(Qp, B, args.window, name)
        v = flip.verdict("R=σ(R)")
        rep.notes.append(f"σ is the flip and ρ = 0: the only non-trivial condition is σ(R)=R "
                         f"({'holds' if v.ok else 'fails'})")
    text = rep.format() + "".join(f"\n  note: {n}" for n in rep.notes)
    emit(args, {"command": "check", "passed": rep.passed, "report": rep.to_json()}, text)
    return rep.passed


def cmd_grand_loop(args) -> bool:
    from .conditions import grand_loop_verify

    name, params, d = resolve(args)
    B, Qp = inst.build(name, **params)
    rep = grand_loop_verify(Qp, B, d, ell_max=args.ell_max, window=args.window, seed=args.seed, instance=name)
    text = rep.format() + "".join(f"\n  note: {n}" for n in rep.notes)
    emit(args, {"command": "grand-loop", "passed": rep.passed, "report": rep.to_json()}, text)
    return rep.passed


def cmd_oracle(args) -> bool:
    if args.which == "assoc":
        from .conditions import associativity_oracle

        A, name, _ = build_algebra(args)
        res = associativity_oracle(A, window=args.window, seed=args.seed)
        text = (f"associativity [{name}, d={A.d}]: {res.certification} "
                f"({res.method}; {res.checked} triples, {res.skipped} skipped)")
        if res.witness:
            text += f"\n  witness: {res.witness}"
        emit(args, {"command": "oracle assoc", "instance": name, "d": A.d, "passed": bool(res),
                    "result": res.to_json()}, text)
        return bool(res)
    from .hecke.hu import h_recursion, hm_typeB_oracle

    prime = _prime(args)
    rows, ok = [], True
    h = h_recursion(args.m)
    for k in range(args.points):
        import random

        t = random.Random(args.seed * 1000 + k).randrange(2, prime - 1)
        smap = SpecializationMap({"v": t, "q": t * t % prime}, prime)
        agree = hm_typeB_oracle(args.m, smap) == h.specialize(smap)
        ok &= agree
        rows.append({"v": t, "agree": agree})
    text = "\n".join(f"hm-typeB m={args.m} v={r['v']}: {'agree' if r['agree'] else 'DISAGREE'}" for r in rows)
    emit(args, {"command": "oracle hm-typeB", "m": args.m, "prime": prime, "points": rows, "passed": ok}, text)
    return ok


# -- element arithmetic ---------------------------------------------------------------
def cmd_mul(args) -> bool:
    A, name, _ = build_algebra(args)
    x = A.one()
    for e in args.exprs:
        x = x * A.parse(e)
    return _print_element(args, x, "mul", name)


def cmd_normal_form(args) -> bool:
    A, name, _ = build_algebra(args)
    return _print_element(args, A.parse(args.expr), "normal-form", name)


def _print_element(args, x, cmd: str, name: str) -> bool:
    y = x.left() if args.left else x.right()
    emit(args, {"command": cmd, "instance": name, "form": "left" if args.left else "right",
                "element": y.to_json(), "text": y.format()}, y.format())
    return True


# -- hu -------------------------------------------------------------------------------
def _spec_label(m: int, perm, G) -> str:
    from .perm import w_ab

    if tuple(perm) == w_ab(m, m):
        return f"T[w_{{{m},{m}}}]"
    k = G.index[tuple(perm)]
    return "T[" + ".".join(map(str, G.words[k])) + "]" if k else ""


def _format_specialized(m: int, d: dict, G) -> str:
    parts = []
    for perm in sorted(d, key=lambda p: G.length[G.index[tuple(p)]]):
        c, lab = d[perm], _spec_label(m, perm, G)
        cs = str(c)
        parts.append(lab if cs == "1" and lab else cs if not lab else f"{cs}*{lab}")
    return " + ".join(parts) if parts else "0"


def _hu_element(which: str, m: int):
    from .hecke import hu

    return {"h": hu.h_recursion, "H1": hu.H1_closed_formula, "z": hu.z_mm, "b1": hu.b1}[which](m)


def cmd_hu(args) -> bool:
    from .hecke import hu

    m = args.m
    if args.what in ("h", "H1", "z", "b1"):
        x = _hu_element(args.what, m)
        payload = {"command": f"hu {args.what}", "m": m}
        if args.at:
            key, _, val = args.at.partition("=")
            val = Fraction(val)
            smap = SpecializationMap({key: val, "q": val * val} if key == "v" else {key: val})
            spec = x.specialize(smap)
            text = _format_specialized(m, spec, x.alg.G)
            payload.update(at=args.at, specialized={".".join(map(str, p)): str(c) for p, c in spec.items()})
        elif args.dual_canonical or args.canonical:
            from .hecke.kl import BarBasisTable, format_expansion

            tab = BarBasisTable(x.alg, "canonical" if args.canonical else "dual")
            text = format_expansion(tab.expand(x), tab)
            payload["expansion"] = text
        elif args.what == "z":
            fams = hu.z_coefficient_families(m)
            text = "\n".join(f"{k}: {c}" for k, c in sorted(fams.items(), key=lambda kv: str(kv[0])))
            text = x.format("I") + "\n" + text
            payload.update(element=x.format("I"), families={str(k): str(c) for k, c in fams.items()})
        else:
            text = x.format(args.basis)
            payload["element"] = text
        emit(args, payload, text)
        return True
    if args.what == "basis":
        info = hu.hu_bases(m)
        rows = [(_label(lab), e.format("I")) for lab, e in info["bar_invariant" if args.bar else "standard"]]
        checks = {k: bool(v) for k, v in info.items() if k in (
            "triangular", "positive", "positive_mirrored", "bar_standard_triangular", "bar_invariant_ok")}
        ok = info["dim"] == info["rank"]
        text = f"dim {info['dim']}, rank {info['rank']} at q=3\n" + "\n".join(f"{a}: {b}" for a, b in rows)
        text += "".join(f"\n{k}: {v}" for k, v in checks.items())
        latex = "\\begin{tabular}{ll}\n" + "\n".join(
            f"{to_latex(a)} & {to_latex(b)} \\\\" for a, b in rows) + "\n\\end{tabular}"
        emit(args, {"command": "hu basis", "m": m, "dim": info["dim"], "rank": info["rank"], "checks": checks,
                    "rows": [{"label": a, "element": b} for a, b in rows]}, text, latex)
        return ok
    if args.what == "member":
        alg = hu.H(2 * m)
        names = {k: _hu_element(k, m) for k in ("h", "H1", "z", "b1")}
        x = alg.parse(args.expr, names)
        res = hu.hu_membership(x, m, seed=args.seed)
        coords = {_label(k): str(c) for k, c in (res["standard"] or {}).items()}
        text = f"member: {res['member']}" + "".join(f"\n  {k}: {c}" for k, c in coords.items())
        emit(args, {"command": "hu member", "m": m, "member": res["member"], "coordinates": coords}, text)
        return res["member"]
    if args.what == "gen":
        info = hu.generalized_hu(m, args.d or 3)
        gens = [g.format("T") for g in info["generators"]]
        defects = [g.format("T") for g in info["braid_defects"]]
        ok = info.get("modified_braid", True)
        text = "\n".join(f"H{j + 1} = {g}" for j, g in enumerate(gens))
        text += "".join(f"\nbraid defect {j + 1}: {x}" for j, x in enumerate(defects))
        if "modified_braid" in info:
            text += f"\nmodified braid relation: {info['modified_braid']}"
        emit(args, {"command": "hu gen", "m": m, "d": args.d or 3, "generators": gens, "braid_defects": defects,
                    "modified_braid": info.get("modified_braid")}, text)
        return bool(ok)
    raise CliError(args.what)


def _label(lab) -> str:
    if isinstance(lab, tuple) and len(lab) == 2 and isinstance(lab[0], str):
        return f"{lab[0]}[{''.join(map(str, lab[1]))}]"
    return str(lab)


# -- schur ----------------------------------------------------------------------------
def _prime(args) -> int:
    return DEFAULT_PRIME if args.prime in (None, "auto") else int(args.prime)


def cmd_schur(args) -> bool:
    from .schur import double_centralizer_check

    name = Path(args.instance).stem if args.instance.endswith(".toml") else args.instance
    rep = double_centralizer_check(name, args.n, args.d or 2, m=args.m or 1, seed=args.seed,
                                   prime=_prime(args), points=args.points)
    data = rep.to_json()
    text = (f"schur [{name}, n={args.n}, d={rep.d}]: {rep.verdict}\n"
            f"  dim T = {rep.dim_T}, dim A = {rep.dim_A}\n"
            f"  commutant {rep.dim_commutant}, bicommutant {rep.dim_bicommutant}, image {rep.dim_image}\n"
            f"  faithful {rep.faithful}, contained {rep.contained}")
    if rep.reason:
        text += f"\n  reason: {rep.reason}"
    emit(args, {"command": "schur", **{k: v for k, v in data.items() if k != "schema"}}, text)
    return rep.passed


# -- acceptance / report --------------------------------------------------------------
def cmd_acceptance(args) -> bool:
    from .acceptance import run

    which = args.criteria or None
    results = run(which, echo=None if args.format == "json" else print)
    ok = all(r.ok for r in results)
    if args.format == "json":
        emit(args, {"command": "acceptance", "passed": ok, "criteria": [r.to_json() for r in results]}, "")
    return ok


def cmd_report(args) -> bool:
    from .report import write_report

    files = write_report(Path(args.plot), seed=args.seed, quick=args.quick)
    emit(args, {"command": "report", "files": [str(f) for f in files]}, "\n".join(map(str, files)))
    return True


# -- parser ---------------------------------------------------------------------------
def _common(p, instance=True):
    p.add_argument("--format", choices=("text", "json", "latex"), default="text")
    p.add_argument("--seed", type=int, default=0)
    if instance:
        p.add_argument("--instance", "-i", default="hecke", help="instance name or .toml/.json file")
        p.add_argument("-d", type=int, default=None)
        p.add_argument("-m", type=int, default=None)
        p.add_argument("--window", type=int, default=None)
        p.add_argument("--variant", default=None)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qwreath", description="Quantum wreath product toolkit")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="parameter conditions")
    _common(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("grand-loop", help="basis-theorem recursion")
    _common(p)
    p.add_argument("--ell-max", type=int, default=None)
    p.set_defaults(func=cmd_grand_loop)

    p = sub.add_parser("mul", help="multiply elements")
    _common(p)
    p.add_argument("exprs", nargs="+")
    p.add_argument("--left", action="store_true")
    p.set_defaults(func=cmd_mul)

    p = sub.add_parser("normal-form", help="normal form of an element")
    _common(p)
    p.add_argument("expr")
    p.add_argument("--left", action="store_true")
    p.set_defaults(func=cmd_normal_form)

    p = sub.add_parser("hu", help="Hu algebra computations")
    _common(p, instance=False)
    p.add_argument("what", choices=("h", "H1", "z", "b1", "basis", "member", "gen"))
    p.add_argument("expr", nargs="?", default="h")
    p.add_argument("-m", type=int, default=1)
    p.add_argument("-d", type=int, default=None)
    p.add_argument("--at", default=None, help="specialize, e.g. v=1")
    p.add_argument("--basis", choices=("T", "I"), default="I")
    p.add_argument("--dual-canonical", action="store_true")
    p.add_argument("--canonical", action="store_true")
    p.add_argument("--bar", action="store_true", help="bar-invariant basis instead of the standard one")
    p.set_defaults(func=cmd_hu)

    p = sub.add_parser("schur", help="double-centralizer check")
    _common(p, instance=False)
    p.add_argument("--instance", "-i", default="heckeA")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-d", type=int, default=None)
    p.add_argument("-m", type=int, default=None)
    p.add_argument("--prime", default="auto")
    p.add_argument("--points", type=int, default=2)
    p.set_defaults(func=cmd_schur)

    p = sub.add_parser("oracle", help="independent oracles")
    _common(p)
    p.add_argument("which", choices=("assoc", "hm-typeB"))
    p.add_argument("--prime", default="auto")
    p.add_argument("--points", type=int, default=2)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("acceptance", help="run acceptance criteria")
    _common(p, instance=False)
    p.add_argument("criteria", nargs="*", type=int)
    p.set_defaults(func=cmd_acceptance)

    p = sub.add_parser("report", help="figures plus CSV/JSON tables")
    _common(p, instance=False)
    p.add_argument("--plot", required=True, metavar="DIR")
    p.add_argument("--quick", action="store_true", help="skip the slow Schur sweep")
    p.set_defaults(func=cmd_report)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "command", None) == "oracle" and args.which == "hm-typeB" and args.m is None:
        args.m = 1
    try:
        ok = args.func(args)
    except CliError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
