import json
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from qwreath.base_alg import TruncationOverflow
from qwreath.schur import (RelationProbeError, SplittingError, bicommutant, build_tensor_action, commutant,
                           double_centralizer_check, image_of_A, splitting_witness)


def test_three_case_rule():
    M = build_tensor_action("heckeA", 2, 2, point={"q": 3})
    # v_(2,1) H_1 = q v_(1,2) + (q-1) v_(2,1);  v_(1,1) H_1 = q v_(1,1)
    assert M.apply("T1", {(2, 1): 1}) == {(1, 2): 3, (2, 1): 2}
    assert M.apply("T1", {(1, 1): 1}) == {(1, 1): 3}
    assert M.apply("T1", {(1, 2): 1}) == {(2, 1): 1}


@pytest.mark.parametrize("n,d", [(2, 2), (2, 3), (3, 3)])
def test_hecke_probe(n, d):
    assert build_tensor_action("heckeA", n, d).probe()["ok"]


def test_splitting_witness():
    w = splitting_witness(build_tensor_action("heckeA", 2, 2))
    assert w.ok and w.dim_W == w.dim_A == 2 and w.complement_dim == 2


def test_splitting_needs_n_at_least_d():
    with pytest.raises(SplittingError):
        splitting_witness(build_tensor_action("heckeA", 2, 3))


def test_ariki_koike_splitting():
    w = splitting_witness(build_tensor_action("ariki_koike", 2, 2, m=2))
    assert w.dim_W == 8 == w.dim_A


def test_hu_free_summand():
    w1 = splitting_witness(build_tensor_action("hu", 2, m=1))
    assert w1.ok and w1.dim_W == 2
    w2 = splitting_witness(build_tensor_action("hu", 4, m=2))
    assert w2.ok and w2.dim_W == 8


def test_trivial_algebra_commutant():
    assert commutant(build_tensor_action("heckeA", 2, 1)).dim == 4


@pytest.mark.parametrize("n,d", [(2, 2), (2, 3), (3, 2), (3, 3)])
def test_hecke_commutant_count(n, d):
    assert commutant(build_tensor_action("heckeA", n, d)).dim == comb(n * n + d - 1, d)


def test_hu_m1_commutant():
    assert commutant(build_tensor_action("hu", 2, m=1)).dim == 10


@settings(max_examples=5)
@given(seed=st.integers(0, 10 ** 6))
def test_commutant_dimension_is_generic(seed):
    assert commutant(build_tensor_action("heckeA", 2, 2, seed=seed)).dim == 10


def test_bicommutant_equals_image():
    M = build_tensor_action("heckeA", 2, 2, seed=1)
    S = commutant(M)
    bic = bicommutant(M, S)
    img = image_of_A(M, S.mats)
    assert len(bic) == len(img) == 2


@pytest.mark.parametrize("n,d,dc,db", [(2, 2, 10, 2), (3, 3, 165, 6)])
def test_double_centralizer_hecke(n, d, dc, db):
    r = double_centralizer_check("heckeA", n, d, seed=7)
    assert r.verdict == "pass"
    assert r.dim_commutant == [dc, dc] and r.dim_bicommutant == [db, db]
    assert r.expected_commutant == dc


def test_double_centralizer_wreath_group():
    r = double_centralizer_check("wreath_group", 2, 2, m=2)
    assert r.verdict == "pass" and r.dim_bicommutant == [8, 8]


def test_double_centralizer_skipped():
    r = double_centralizer_check("heckeA", 1, 2)
    assert r.verdict == "skipped" and not r.faithful


def test_report_is_reproducible():
    a = json.dumps(double_centralizer_check("heckeA", 2, 2, seed=3).to_json(), sort_keys=True)
    b = json.dumps(double_centralizer_check("heckeA", 2, 2, seed=3).to_json(), sort_keys=True)
    assert a == b
    data = json.loads(a)
    assert {"instance", "n", "d", "spec_points", "dim_T", "dim_commutant", "dim_bicommutant", "faithful",
            "verdict"} <= set(data)


# printed tensor actions that are not modules


def test_ariki_koike_action_probe():
    # the printed action does not satisfy the relations (fails)
    assert build_tensor_action("ariki_koike", 2, 2, m=2).probe()["ok"]


def test_affine_action_probe():
    # fails: H(X⊗1)H - q(1⊗X) is nonzero on v_(a,b), a < b
    assert build_tensor_action("affine", 2, 2).probe()["ok"]


def test_degenerate_action_probe():
    # fails: the -1 of the wreath relation is missing
    assert build_tensor_action("degenerate", 2, 2).probe()["ok"]


def test_probe_witnesses():
    assert build_tensor_action("ariki_koike", 2, 2, m=2).probe()["witness"]["relation"] == "X1T1X1T1"
    assert build_tensor_action("affine", 2, 2).probe()["witness"]["relation"] == "H1*b1:X"
    with pytest.raises(RelationProbeError):
        build_tensor_action("ariki_koike", 2, 2, m=2, check=True)


def test_literal_ariki_koike_rule_leaves_basis():
    M = build_tensor_action("ariki_koike", 2, 2, m=2, literal=True)
    with pytest.raises(TruncationOverflow):
        M.apply("X1", {(2, 1): 1})
