import json
import os

import pytest

from qwreath import base_alg as ba
from qwreath import instances as inst
from qwreath.coeff import ONE
from qwreath.conditions import (OracleResult, appendix_identity, associativity_oracle, check_flip_simplification,
                                check_parameter_conditions, default_window, flip_simplification_core,
                                grand_loop_verify, reduced_word_families)
from qwreath.perm import all_perms, is_compatible_family
from qwreath.qwp import ParamChoice, PreconditionError, QwpAlgebra

GOOD = [("hecke", {}), ("yokonuma", {"m": 2}), ("yokonuma", {"m": 3}), ("degenerate", {"window": 8}),
        ("affine", {"window": 8}), ("nil_hecke", {"window": 8}), ("hu", {"m": 2})]


@pytest.mark.parametrize("name,kw", GOOD, ids=[n + str(k.get("m", "")) for n, k in GOOD])
def test_good_instances_pass_all_checkers_d2(name, kw):
    B, Qp = inst.build(name, **kw)
    assert check_parameter_conditions(Qp, B, 2).passed
    assert grand_loop_verify(Qp, B, 2).passed
    assert associativity_oracle(QwpAlgebra(B, Qp, 2))


@pytest.mark.parametrize("name", sorted(inst.MUTANTS))
def test_mutants_are_rejected(name):
    B, Qp = inst.build(name)
    verdicts = [check_parameter_conditions(Qp, B, 2).passed, grand_loop_verify(Qp, B, 2).passed,
                bool(associativity_oracle(QwpAlgebra(B, Qp, 2)))]
    assert not all(verdicts)


@pytest.mark.parametrize("name", sorted(inst.MUTANTS))
def test_checkers_agree_with_oracle_on_mutants(name):
    # the parameter checker and the oracle should not contradict each other on finite bases
    B, Qp = inst.build(name)
    if not B.finite:
        pytest.skip("windowed base")
    cond = check_parameter_conditions(Qp, B, 2).passed
    oracle = bool(associativity_oracle(QwpAlgebra(B, Qp, 2)))
    assert not (oracle and not cond)


def test_report_certification_labels():
    B, Qp = inst.build("hecke")
    assert check_parameter_conditions(Qp, B, 2).certification == "exact"
    B, Qp = inst.build("affine", window=6)
    assert check_parameter_conditions(Qp, B, 2).certification == "window-certified"


def test_report_json_is_deterministic():
    B, Qp = inst.build("hu", m=2)
    a = json.dumps(check_parameter_conditions(Qp, B, 2).to_json(), sort_keys=True, default=str)
    b = json.dumps(check_parameter_conditions(Qp, B, 2).to_json(), sort_keys=True, default=str)
    assert a == b and json.loads(a)["schema"] == 1


def test_d2_skips_cubic_conditions():
    B, Qp = inst.build("hecke")
    rep = check_parameter_conditions(Qp, B, 2)
    assert "3.9" in rep.skipped_conditions
    rep3 = check_parameter_conditions(Qp, B, 3)
    assert rep3.skipped_conditions == [] and rep3.verdict("3.9").ok


def test_mutant_witness_is_reported():
    B, Qp = inst.build("hu2_R_asym")
    rep = check_parameter_conditions(Qp, B, 2)
    bad = rep.failures()
    assert bad and bad[0].witness


def test_window_environment_override(monkeypatch):
    monkeypatch.setenv("QWREATH_WINDOW", "1")
    assert default_window("single") == 1
    monkeypatch.delenv("QWREATH_WINDOW")
    assert default_window("single") == 2 and default_window("pair") == 1


def test_window_overflow_counts_as_skipped():
    B, Qp = inst.build("affine", window=2)
    rep = check_parameter_conditions(Qp, B, 2, window=2)
    assert rep.passed
    assert sum(v.skipped for v in rep.verdicts) > 0


# flip simplification


def test_flip_simplification_on_hu():
    B, Qp = inst.build("hu", m=2)
    rep = check_flip_simplification(Qp, B)
    assert rep.passed and flip_simplification_core(rep)


def test_flip_simplification_needs_flip():
    B, Qp = inst.build("affine", window=4)
    with pytest.raises(PreconditionError):
        check_flip_simplification(Qp, B)


def test_flip_simplification_misses_centrality():
    # K Σ_3 with S = 0, R = g⊗g for a non-central g
    B = ba.group_algebra(all_perms(3), name="KS3")
    g = B.parse_name("g213")
    Qp = ParamChoice(R={(g, g): ONE}, S={}, name="KS3_gg")
    rep = check_flip_simplification(Qp, B)
    assert flip_simplification_core(rep)
    assert not rep.verdict("R-central").ok
    assert not check_parameter_conditions(Qp, B, 2).passed
    assert not associativity_oracle(QwpAlgebra(B, Qp, 2))


# grand loop


def test_grand_loop_levels_and_families():
    B, Qp = inst.build("hecke")
    rep = grand_loop_verify(Qp, B, 3)
    conds = {v.cond for v in rep.verdicts}
    assert {"W[1]", "M[2]", "B3[2]", "R[2]", "compat", "linear"} <= conds
    assert rep.passed


def test_grand_loop_d4_family_sampling():
    fams = reduced_word_families(4, seed=0, limit=8)
    assert 2 <= len(fams) <= 8
    assert all(is_compatible_family(f) for f in fams)


def test_grand_loop_rejects_ariki_koike():
    B, Qp = inst.build("ariki_koike", m=2)
    rep = grand_loop_verify(Qp, B, 2)
    assert not rep.passed


# oracle


def test_oracle_full_enumeration_small():
    res = associativity_oracle(inst.algebra("yokonuma", 2, m=2))
    assert isinstance(res, OracleResult) and res.method.startswith("all")
    assert res.certification == "exact"


def test_oracle_generator_reduction_large():
    A = inst.algebra("yokonuma", 3, m=2)
    assert A.dim > 40
    res = associativity_oracle(A)
    assert res and "generator" in res.method and res.generated


def test_oracle_windowed():
    res = associativity_oracle(inst.algebra("affine", 2, window=8))
    assert res and res.certification == "window-certified"


@pytest.mark.parametrize("name,kw", [("hecke", {}), ("yokonuma", {"m": 2}), ("hu", {"m": 2}),
                                     ("affine", {"window": 8}), ("degenerate", {"window": 8})])
def test_appendix_expansion(name, kw):
    A = inst.algebra(name, 3, **kw)
    for g in A.B.generators[:1] or [A.B.unit]:
        t = list(A.one_t)
        t[0] = g
        assert appendix_identity(A, tuple(t))


def test_ariki_koike_witness_is_rho():
    B, Qp = inst.build("ariki_koike", m=2)
    rep = check_parameter_conditions(Qp, B, 2)
    assert [v.cond for v in rep.failures()] == ["3.5ρ"]


def test_nil_hecke_has_zero_R():
    B, Qp = inst.build("nil_hecke", window=4)
    assert not any(Qp.R.values())
