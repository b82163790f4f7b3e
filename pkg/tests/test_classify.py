import os
import random

import pytest

from rackforge.classify import (
    DEEP_GATE,
    classify_class,
    fw_identify,
    lemma_square_check,
    regular_product_check,
    subrack_census,
    symmetric_group_witness,
    thread_count,
    witness_search,
)
from rackforge.groups import build_bsgs
from rackforge.numth import is_prime, prime_power_decompose, primes_below
from rackforge.perm import Permutation, conjugate, format_cycles


VERIFIED_TABLE = {
    (5, 5): "NotTypeD",
    (5, 6): "NotTypeD",
    (7, 7): "NotTypeD",
    (7, 8): "TypeD",
    (11, 11): "NotTypeD",
    (11, 12): "NotTypeD",
    (13, 13): "TypeD",
    (13, 14): "TypeD",
    (17, 17): "TypeD",
    (19, 19): "NotTypeD",
    (19, 20): "NotTypeD",
    (23, 23): "NotTypeD",
    (23, 24): "NotTypeD",
    (31, 31): "TypeD",
    (31, 32): "TypeD",
}


def test_classification_table():
    for (p, m), want in VERIFIED_TABLE.items():
        got = classify_class(p, m)
        assert got.verdict == want, (p, m)
        assert got.p == p and got.m == m


def test_classification_reasons():
    assert classify_class(13, 13).reason == {"cyclotomic": [[3, 3]]}
    assert classify_class(31, 31).reason == {"cyclotomic": [[2, 5], [5, 3]]}
    assert classify_class(11, 11).reason == {"cyclotomic": [], "threshold": "p < 13"}
    assert classify_class(19, 19).reason == {"cyclotomic": []}
    below = classify_class(7, 7).reason
    assert below["cyclotomic"] == [[2, 3]]
    assert below["threshold"] == "p < 13"
    assert classify_class(5, 6).reason["threshold"] == "p < 7"


def test_classification_against_direct_predicate():
    # re-derive the rule from scratch: p is a base-r repunit prime
    for p in primes_below(200):
        if p < 5:
            continue
        forms = []
        for k in range(2, p.bit_length() + 1):
            for r in range(2, p):
                value = sum(r**i for i in range(k))
                if value == p and prime_power_decompose(r) is not None:
                    forms.append((r, k))
                if value >= p:
                    break
        for m, threshold in ((p, 13), (p + 1, 7)):
            want = "TypeD" if (p >= threshold and forms) else "NotTypeD"
            assert classify_class(p, m).verdict == want, (p, m)


def test_classify_rejects_bad_input():
    for p, m in ((4, 4), (9, 9), (2, 2), (3, 3)):
        with pytest.raises(ValueError):
            classify_class(p, m)
    with pytest.raises(ValueError):
        classify_class(5, 8)


def test_classify_json_shape():
    data = classify_class(13, 13).to_json_dict()
    assert data == {
        "p": 13,
        "m": 13,
        "verdict": "TypeD",
        "reason": {"cyclotomic": [[3, 3]]},
    }


def test_fw_identify_cyclic_case():
    sigma = Permutation.cycle([1, 2, 3, 4, 5], 5)
    case = fw_identify(sigma, sigma * sigma)
    assert case.tag == "i"
    assert case.order == 5
    assert case.m == 5


def test_fw_identify_disjoint_case():
    sigma = Permutation.cycle([1, 2, 3, 4, 5], 10)
    tau = Permutation.cycle([6, 7, 8, 9, 10], 10)
    case = fw_identify(sigma, tau)
    assert case.tag == "ii"
    assert case.order == 25
    assert case.m == 10


def test_fw_identify_alternating_case_with_name_collision():
    # two 5-cycles generating all of A_5: order 60 matches both the linear
    # group L_2(4) and A_5 itself; the alternating name must come first
    sigma = Permutation.cycle([1, 2, 3, 4, 5], 5)
    tau = conjugate(Permutation.cycle([1, 2, 3], 5), sigma)
    case = fw_identify(sigma, tau)
    assert case.tag == "xiii"
    assert case.order == 60
    assert case.names[0] == "A_5"
    assert "L_2(4)" in case.names


def test_fw_identify_linear_case():
    # a pair of 7-cycles generating the 168-element linear group
    sigma = Permutation.cycle([1, 2, 3, 4, 5, 6, 7], 7)
    found = None
    from rackforge.constructions import class_elements

    for tau in class_elements(7, 7):
        g = build_bsgs([sigma, tau])
        if g.order == 168:
            found = tau
            break
    assert found is not None
    case = fw_identify(sigma, found)
    assert case.tag == "iii"
    assert case.order == 168
    assert case.names == ("L_3(2)",)


def test_fw_identify_frobenius_case():
    out = witness_search(7, 8, strategy="subgroup")
    case = fw_identify(out.witness.sigma, out.witness.tau)
    assert case.tag == "x"
    assert case.order == 56
    assert case.m == 8


def test_fw_identify_rejects_non_p_cycles():
    with pytest.raises(ValueError):
        fw_identify(
            Permutation.from_cycles("(1 2 3)(4 5 6)", 6),
            Permutation.cycle([1, 2, 3], 6),
        )
    with pytest.raises(ValueError):
        fw_identify(Permutation.cycle([1, 2, 3, 4], 4), Permutation.cycle([1, 2, 3, 4], 4))


def test_witness_search_exhaustive_absence():
    for p, m, size in ((5, 5, 12), (5, 6, 72), (7, 7, 360)):
        out = witness_search(p, m, strategy="exhaustive")
        assert out.status == "absence"
        assert out.pairs_tested == size
        assert out.indeterminate == 0
        assert out.witness is None


def test_witness_search_exhaustive_budget_cutoff():
    out = witness_search(7, 7, strategy="exhaustive", budget=50)
    assert out.status == "exhausted"
    assert out.pairs_tested == 50


def test_witness_search_deep_gate():
    with pytest.raises(ValueError):
        witness_search(11, 11, strategy="exhaustive")
    with pytest.raises(ValueError):
        witness_search(11, 12, strategy="exhaustive", budget=10**7)


def test_witness_search_subgroup_strategy():
    for p, m, order in ((7, 8, 56), (13, 13, 5616), (13, 14, 5616), (17, 17, 4080)):
        out = witness_search(p, m, strategy="subgroup")
        assert out.status == "witness", (p, m)
        w = out.witness
        assert w.subgroup_order == order
        assert w.sigma == Permutation.cycle(list(range(1, p + 1)), m)
        assert w.st_squared != w.ts_squared
        assert w.orbit_answer == "no"
        assert w.verify()


def test_witness_search_random_strategy():
    out = witness_search(7, 8, strategy="random", budget=600, seed=0)
    assert out.status == "witness"
    assert out.witness.verify()
    assert out.seed == 0
    # absence cannot be proven by sampling
    out5 = witness_search(5, 5, strategy="random", budget=200, seed=0)
    assert out5.status == "exhausted"
    assert out5.pairs_tested == 200


def test_witness_search_is_deterministic():
    a = witness_search(7, 8, strategy="random", budget=600, seed=3)
    b = witness_search(7, 8, strategy="random", budget=600, seed=3)
    assert a.witness.tau == b.witness.tau
    assert a.pairs_tested == b.pairs_tested


def test_witness_search_thread_count_does_not_change_result():
    one = witness_search(7, 8, strategy="exhaustive", threads=1)
    four = witness_search(7, 8, strategy="exhaustive", threads=4)
    assert one.status == four.status == "witness"
    assert one.witness.tau == four.witness.tau
    assert one.pairs_tested == four.pairs_tested


def test_witness_search_rejects_unknown_strategy():
    with pytest.raises(ValueError):
        witness_search(7, 8, strategy="telepathy")


def test_search_agrees_with_classification_at_desk_scale():
    for p, m in ((5, 5), (5, 6), (7, 7), (7, 8)):
        verdict = classify_class(p, m).verdict
        out = witness_search(p, m, strategy="exhaustive" if m <= 7 else "subgroup")
        if verdict == "TypeD":
            assert out.status == "witness"
        else:
            assert out.status == "absence"


def test_thread_count_resolution():
    assert thread_count(3) == 3
    old = os.environ.pop("RACKFORGE_THREADS", None)
    try:
        os.environ["RACKFORGE_THREADS"] = "2"
        assert thread_count() == 2
        del os.environ["RACKFORGE_THREADS"]
        assert thread_count() >= 1
    finally:
        if old is not None:
            os.environ["RACKFORGE_THREADS"] = old
    assert DEEP_GATE == 100_000


def test_symmetric_group_witness_frozen_pair():
    w = symmetric_group_witness(5)
    assert format_cycles(w.sigma) == "(1 2 3 4 5)"
    assert format_cycles(w.tau) == "(1 4 5 3 2)"
    assert w.verify()


def test_symmetric_group_witness_all_small_primes():
    for p in (5, 7, 11, 13):
        w = symmetric_group_witness(p)
        assert w.st_squared != w.ts_squared
        assert w.orbit_answer == "no"
        assert w.verify()
    with pytest.raises(ValueError):
        symmetric_group_witness(4)


def test_regular_product_check_seven():
    report = regular_product_check(3, 2)
    assert report.p == 7
    assert report.group_order == 168
    assert report.class_count == 2
    assert report.class_size == 24
    assert report.all_found
    assert len(report.pairs) == 2
    for _, _, found, example in report.pairs:
        assert found and example not in (1, 2, 7)


def test_regular_product_check_five_and_thirteen():
    report = regular_product_check(2, 4)
    assert (report.p, report.group_order, report.class_count, report.class_size) == (5, 60, 2, 12)
    assert report.all_found
    report = regular_product_check(3, 3)
    assert (report.p, report.group_order, report.class_count, report.class_size) == (13, 5616, 4, 432)
    assert report.all_found


def test_regular_product_check_rejects_composite_value():
    with pytest.raises(ValueError):
        regular_product_check(2, 5)  # (5^2-1)/4 = 6


def test_subrack_census_five_exhaustive():
    report = subrack_census(5, 5)
    assert report.exhaustive
    assert report.pairs == 12
    rows = {(r.closure_size, r.case_tag, r.subgroup_order, r.abelian): r.count for r in report.rows}
    assert rows == {
        (1, "i", 5, True): 1,
        (2, "i", 5, True): 1,
        (12, "xiii", 60, False): 10,
    }


def test_subrack_census_seven_exhaustive():
    report = subrack_census(7, 7)
    assert report.exhaustive
    assert report.pairs == 360
    rows = {(r.closure_size, r.case_tag, r.subgroup_order, r.abelian): r.count for r in report.rows}
    assert rows == {
        (1, "i", 7, True): 1,
        (2, "i", 7, True): 2,
        (24, "iii", 168, False): 42,
        (360, "xiii", 2520, False): 315,
    }
    assert sum(r.count for r in report.rows) == 360


def test_subrack_census_sampled_eleven():
    report = subrack_census(11, 11, budget=300, seed=0)
    assert not report.exhaustive
    assert report.pairs == 300
    for row in report.rows:
        assert row.closure_size in (1, 2, 60, 720, 1814400)
        assert row.subgroup_order in (11, 121, 660, 7920, 19958400)


def test_lemma_square_check_five_holds():
    report = lemma_square_check(5, 5)
    assert report.exhaustive
    assert report.square_pairs == 2
    assert report.commuting == 2
    assert report.order_two == 0
    assert report.holds


def test_lemma_square_check_seven_dichotomy_but_bound_fails():
    # every square pair commutes or has product of order 2, yet the order
    # bound p^2 is broken: the pair can generate the whole alternating group
    report = lemma_square_check(7, 7)
    assert report.exhaustive
    assert report.square_pairs == 31
    assert report.commuting == 3
    assert report.order_two == 28
    assert report.commuting + report.order_two == report.square_pairs
    assert not report.holds
    for tau, clause, value in report.violations:
        assert clause == "order bound"
        assert value > 49
    data = report.to_json_dict()
    assert data["holds"] is False
    assert data["violations"][0]["clause"] == "order bound"
