import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import oracles
from rotabrace.rota_baxter import RotaBaxterOperator
from rotabrace.weak_brace import brace_from_operator, opposite_brace, trivial_brace
from rotabrace.ybe import (
    SolutionMap,
    check_braid,
    compose,
    flip_map,
    identity_map,
    is_equivalence,
    operator_rho_formula,
    random_pair_map,
    regularity_report,
    solution_from_brace,
    solutions_equivalent,
)


def test_trivial_brace_on_a_group(carriers):
    S = carriers["S3"]
    r = solution_from_brace(trivial_brace(S))
    for a in range(6):
        for b in range(6):
            assert r(a, b) == (b, S.op(int(S.inv[b]), a, b))


def test_trivial_brace_on_abelian_clifford(carriers):
    S = carriers["CS3"]
    r = solution_from_brace(trivial_brace(S))
    e = S.idem
    for a in range(3):
        for b in range(3):
            assert r(a, b) == (S.op(int(e[a]), b), S.op(a, int(e[b])))


def test_trivial_brace_on_abelian_group_is_the_flip(carriers):
    for name in ("Z4", "V4", "Z6"):
        B = trivial_brace(carriers[name])
        r = solution_from_brace(B)
        assert r == flip_map(B.order)
        assert solution_from_brace(opposite_brace(B)) == r


def test_specialised_rho_formula(operator_braces):
    for _, S, R, B in operator_braces:
        assert np.array_equal(operator_rho_formula(S, R, B), B.rho)


def test_braid_on_flip_and_identity():
    for n in (1, 2, 5):
        assert check_braid(flip_map(n))
        assert check_braid(identity_map(n))


def test_random_map_is_not_a_solution():
    r = random_pair_map(3, seed=0)
    v = check_braid(r)
    assert not v
    assert not oracles.braid_holds(r.first, r.second)
    x, y, z = v.witness
    a, b = r(x, y); b, c = r(b, z); left = (*r(a, b), c)
    b, c = r(y, z); a, b = r(x, b); right = (a, *r(b, c))
    assert left != right


def test_braid_on_every_brace(operator_braces):
    for _, _, _, B in operator_braces:
        r = solution_from_brace(B)
        assert check_braid(r) and r.braid_ok
        assert oracles.braid_holds(r.first, r.second)


def test_skew_brace_on_s3(carriers):
    S3 = carriers["S3"]
    B = brace_from_operator(S3, RotaBaxterOperator(S3, [0, 2, 2, 0, 0, 2]))
    rep = regularity_report(B)
    assert rep["bijective"] and rep["left_nondegenerate"] and rep["right_nondegenerate"]
    assert rep["inverse_is_opposite"]


def test_trivial_brace_on_cs3_is_regular_not_bijective(carriers):
    B = trivial_brace(carriers["CS3"])
    rep = regularity_report(B)
    assert not rep["bijective"] and not rep["left_nondegenerate"]
    assert len(set(solution_from_brace(B).lam(2).tolist())) < 3
    assert rep["r_rop_r"] and rep["rop_r_rop"] and rep["r_rop_commute"]


def test_regularity_on_every_brace(operator_braces):
    for _, _, _, B in operator_braces:
        rep = regularity_report(B)
        for key in ("r_rop_r", "rop_r_rop", "r_rop_commute", "lambda_completely_regular", "rho_completely_regular"):
            assert rep[key], key
        if len(B.idempotents) == 1:
            assert rep["inverse_is_opposite"] and rep["bijective"]


def test_composition_order():
    r = SolutionMap([[1, 0], [1, 0]], [[0, 0], [1, 1]])
    s = flip_map(2)
    rs = compose(r, s)
    for a in range(2):
        for b in range(2):
            assert rs(a, b) == r(*s(a, b))


def test_equivalence_examples(operator_braces):
    for _, S, R, B in operator_braces:
        r = solution_from_brace(B)
        assert solutions_equivalent(r, r) == tuple(range(S.order))
    assert solutions_equivalent(flip_map(2), identity_map(2)) is None
    assert solutions_equivalent(flip_map(2), flip_map(3)) is None


def test_opposite_duality(operator_braces):
    for _, S, R, B in operator_braces:
        r_op = solution_from_brace(opposite_brace(B))
        s = solution_from_brace(brace_from_operator(S, R.opposite()))
        assert solutions_equivalent(r_op, s) is not None
        assert is_equivalence(r_op, s, S.inv)


def test_equivalence_is_symmetric(operator_braces):
    sols = {}
    for name, S, R, B in operator_braces:
        sols.setdefault(name, []).append(solution_from_brace(B))
    for group in sols.values():
        for r in group:
            for s in group:
                f = solutions_equivalent(r, s)
                g = solutions_equivalent(s, r)
                assert (f is None) == (g is None)
                if f is not None:
                    inv = [0] * len(f)
                    for a, b in enumerate(f):
                        inv[b] = a
                    assert is_equivalence(r, s, f) and is_equivalence(s, r, inv)


def test_json_round_trip(operator_braces):
    _, _, _, B = operator_braces[-1]
    r = solution_from_brace(B)
    data = r.to_dict()
    assert data["r"][1][2] == [int(B.lam[1, 2]), int(B.rho[2, 1])]
    assert SolutionMap.from_dict(data) == r
    with pytest.raises(ValueError):
        SolutionMap.from_dict({"order": 3, "r": data["r"]})


def test_out_of_range_tables():
    with pytest.raises(ValueError):
        SolutionMap([[0, 2], [0, 0]], [[0, 0], [0, 0]])


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 3).flatmap(
    lambda n: st.tuples(
        st.lists(st.lists(st.integers(0, n - 1), min_size=n, max_size=n), min_size=n, max_size=n),
        st.lists(st.lists(st.integers(0, n - 1), min_size=n, max_size=n), min_size=n, max_size=n),
    )
))
def test_braid_agrees_with_oracle(tables):
    first, second = tables
    r = SolutionMap(first, second)
    assert bool(check_braid(r)) == oracles.braid_holds(first, second) == r.braid_ok
