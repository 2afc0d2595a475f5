import numpy as np
import pytest

import oracles
from rotabrace.clifford import (
    StrongSemilatticeSpec,
    build_strong_semilattice,
    decompose_to_strong_semilattice,
    find_isomorphism,
    is_homomorphism,
    is_normal_subset,
    verify_clifford,
)
from rotabrace.rota_baxter import (
    RotaBaxterOperator,
    commutative_rb_endomorphisms,
    elementary_operators,
    enumerate_rota_baxter,
    idempotent_rb_endomorphisms,
    is_rota_baxter,
    strong_operator_from_components,
)
from rotabrace.weak_brace import (
    BraceError,
    BraceSemilatticeSpec,
    DualWeakBrace,
    NotAnIdeal,
    almost_trivial_brace,
    brace_from_operator,
    congruence_classes,
    enumerate_ideals,
    ideal_sum_and_product,
    is_bi_weak_brace,
    is_ideal,
    operator_circ_inverse,
    opposite_brace,
    quotient_brace,
    socle,
    strong_semilattice_of_braces,
    trivial_brace,
    verify_dual_weak_brace,
)

A3 = (0, 3, 4)


def test_trivial_and_almost_trivial(carriers):
    Z3 = carriers["Z3"]
    B = verify_dual_weak_brace(Z3.table, Z3.table)
    assert B.is_trivial and B.is_almost_trivial
    S3 = carriers["S3"]
    B = almost_trivial_brace(S3)
    assert B.is_almost_trivial and not B.is_trivial


def test_corrupted_table_is_rejected(carriers):
    Z4 = carriers["Z4"].table
    bad = Z4.copy()
    bad[1, 1] = 3
    with pytest.raises(BraceError) as err:
        verify_dual_weak_brace(Z4, bad)
    assert err.value.witness


def test_mismatched_orders(carriers):
    with pytest.raises(BraceError):
        verify_dual_weak_brace(carriers["Z2"].table, carriers["Z3"].table)


def test_braces_from_operators_match_oracle(operator_braces):
    for _, S, R, B in operator_braces:
        assert B.circ_table.tolist() == oracles.circ_from_operator(S.table, R.images)
        assert B.cinv.tolist() == operator_circ_inverse(S, R)


def test_abelian_carriers_give_trivial_braces(operator_braces):
    for _, S, R, B in operator_braces:
        if S.is_commutative:
            assert B.is_trivial


def test_elementary_operators_give_trivial_and_almost_trivial(carriers):
    for S in carriers.values():
        E, O = elementary_operators(S)
        assert brace_from_operator(S, E).is_trivial
        assert brace_from_operator(S, O).is_almost_trivial


def test_projection_on_s3_gives_a_skew_brace(carriers):
    S3 = carriers["S3"]
    R = RotaBaxterOperator(S3, [0, 2, 2, 0, 0, 2])
    B = brace_from_operator(S3, R)
    assert B.is_skew_brace and not B.is_trivial and not B.is_almost_trivial


def test_trivial_braces_are_bi_weak(carriers):
    for S in carriers.values():
        assert is_bi_weak_brace(trivial_brace(S))


def test_commutative_endomorphisms_give_bi_weak_braces(carriers):
    for name in ("CS3", "Z2>Z2", "SL2", "V4"):
        spec = decompose_to_strong_semilattice(carriers[name])
        S = build_strong_semilattice(spec)
        for R in commutative_rb_endomorphisms(spec):
            assert is_bi_weak_brace(brace_from_operator(S, R))
    S3 = carriers["S3"]
    for R in idempotent_rb_endomorphisms(S3):
        assert is_bi_weak_brace(brace_from_operator(S3, R))


def test_non_bi_weak_brace_on_s3(carriers):
    S3 = carriers["S3"]
    failures = []
    for R in enumerate_rota_baxter(S3):
        v = is_bi_weak_brace(brace_from_operator(S3, R))
        if not v:
            failures.append((R.images, v))
    assert [f[0] for f in failures] == [(0, 0, 3, 4, 3, 4), (0, 3, 4, 4, 3, 0), (0, 4, 0, 4, 3, 3)]
    images, v = failures[0]
    B = brace_from_operator(S3, RotaBaxterOperator(S3, images))
    a, b, c = v.witness
    A, C = B.add_table, B.circ_table
    assert A[a, C[b, c]] != C[C[A[a, b], B.cinv[a]], A[a, c]]


def test_opposite_brace(carriers, operator_braces):
    Z4 = carriers["Z4"]
    assert opposite_brace(trivial_brace(Z4)) == trivial_brace(Z4)
    S3 = carriers["S3"]
    assert opposite_brace(trivial_brace(S3)).add_table.tolist() == almost_trivial_brace(S3).add_table.tolist()
    for _, _, _, B in operator_braces:
        assert opposite_brace(opposite_brace(B)) == B


def test_socle_examples(carriers):
    assert socle(trivial_brace(carriers["S3"])).members == (0,)
    for S in carriers.values():
        if S.is_commutative:
            assert socle(trivial_brace(S)).members == tuple(range(S.order))


def test_socle_properties(operator_braces):
    for _, S, _, B in operator_braces:
        soc = socle(B).members
        assert set(B.idempotents) <= set(soc)
        assert is_ideal(B, soc)
        A, C = oracles.rows(B.add_table), oracles.rows(B.circ_table)
        n = B.order
        direct = tuple(a for a in range(n) if all(A[a][b] == C[a][b] and A[a][b] == A[b][a] for b in range(n)))
        assert soc == direct


def test_is_ideal_examples(carriers, operator_braces):
    for _, _, _, B in operator_braces:
        assert is_ideal(B, B.idempotents)
    T = trivial_brace(carriers["S3"])
    assert is_ideal(T, A3)
    v = is_ideal(T, (0, 2))
    assert not v and v.reason.startswith("1.")


def test_enumerate_ideals_examples(carriers):
    assert [I.members for I in enumerate_ideals(trivial_brace(carriers["Z4"]))] == [(0,), (0, 2), (0, 1, 2, 3)]
    assert [I.members for I in enumerate_ideals(trivial_brace(carriers["S3"]))] == [(0,), A3, tuple(range(6))]
    assert [I.members for I in enumerate_ideals(trivial_brace(carriers["SL2"]))] == [(0, 1)]


def test_enumerate_ideals_matches_oracle(operator_braces):
    for _, _, _, B in operator_braces:
        got = [I.members for I in enumerate_ideals(B)]
        assert got == oracles.brace_ideals(B.add_table, B.circ_table)


def test_lambda_invariance_is_redundant_for_operator_braces(operator_braces):
    for _, _, _, B in operator_braces:
        for mask in range(1, 1 << B.order):
            members = [a for a in range(B.order) if mask >> a & 1]
            both = bool(is_normal_subset(B.add, members)) and bool(is_normal_subset(B.circ, members))
            assert bool(is_ideal(B, members)) == both


def test_sum_and_product_examples(carriers):
    T = trivial_brace(carriers["Z6"])
    s, p = ideal_sum_and_product(T, (0, 3), (0, 2, 4))
    assert s.members == p.members == tuple(range(6))
    for I in enumerate_ideals(T):
        s, p = ideal_sum_and_product(T, T.idempotents, I.members)
        assert s.members == p.members == I.members
        s, p = ideal_sum_and_product(T, I.members, I.members)
        assert s.members == p.members == I.members
    with pytest.raises(NotAnIdeal):
        ideal_sum_and_product(T, (0, 1), (0,))


def test_sum_and_product_are_ideals(operator_braces):
    for _, _, _, B in operator_braces:
        ideals = enumerate_ideals(B)
        for I in ideals:
            for J in ideals:
                s, p = ideal_sum_and_product(B, I.members, J.members)
                assert is_ideal(B, s.members) and is_ideal(B, p.members)


def _semilattice(B):
    E = list(B.idempotents)
    pos = {e: i for i, e in enumerate(E)}
    return verify_clifford([[pos[int(B.add_table[a, b])] for b in E] for a in E])


def test_quotient_examples(carriers):
    T = trivial_brace(carriers["Z4"])
    Q, proj = quotient_brace(T, (0, 2))
    assert Q.is_trivial and Q.add_table.tolist() == [[0, 1], [1, 0]]
    assert proj.tolist() == [0, 1, 0, 1]
    CS3 = trivial_brace(carriers["CS3"])
    Q, proj = quotient_brace(CS3, CS3.idempotents)
    assert Q.order == 3
    Q, proj = quotient_brace(CS3, (0, 1, 2))
    assert Q.order == 2 and Q.is_trivial
    assert find_isomorphism(Q.add, _semilattice(CS3)) is not None
    with pytest.raises(NotAnIdeal):
        quotient_brace(trivial_brace(carriers["S3"]), (0, 2))


def test_quotients_and_congruences(operator_braces):
    for _, _, _, B in operator_braces:
        E = _semilattice(B)
        for I in enumerate_ideals(B):
            add = congruence_classes(B, I.members, "additive")
            mul = congruence_classes(B, I.members, "multiplicative")
            assert add == mul
            Q, proj = quotient_brace(B, I)
            assert find_isomorphism(_semilattice(Q), E) is not None
            assert Q.order == len(add)
        Q, _ = quotient_brace(B, B.idempotents)
        assert Q.order == B.order


def test_lambda_multiplicative_rho_antimultiplicative(operator_braces):
    for _, _, _, B in operator_braces:
        lam, rho, C = B.lam, B.rho, B.circ_table
        n = B.order
        for a in range(n):
            for b in range(n):
                assert np.array_equal(lam[C[a, b]], lam[a][lam[b]])
                assert np.array_equal(rho[C[a, b]], rho[b][rho[a]])


def test_operator_is_a_homomorphism_and_rota_baxter_on_circ(operator_braces):
    for _, S, R, B in operator_braces:
        assert is_homomorphism(B.circ, S, R.images)
        assert is_rota_baxter(B.circ, R.images)


def test_bijective_lambdas_force_a_single_idempotent(operator_braces, carriers):
    braces = [B for *_, B in operator_braces] + [trivial_brace(S) for S in carriers.values()]
    for B in braces:
        if all(len(set(B.lam[a].tolist())) == B.order for a in range(B.order)):
            assert len(B.idempotents) == 1


def test_brace_round_trip(operator_braces):
    for _, _, _, B in operator_braces:
        assert DualWeakBrace.from_dict(B.to_dict()) == B


Z2 = np.array([[0, 1], [1, 0]])


def test_strong_semilattice_of_braces_single_vertex(carriers):
    B = trivial_brace(carriers["S3"])
    spec = BraceSemilatticeSpec(np.array([[0]]), (B,), {})
    assert strong_semilattice_of_braces(spec) == B


def test_strong_semilattice_of_trivial_braces(carriers):
    bottom = trivial_brace(verify_clifford([[0]]))
    top = trivial_brace(verify_clifford(Z2))
    spec = BraceSemilatticeSpec(np.array([[0, 0], [0, 1]]), (bottom, top), {(1, 0): (0, 0)})
    B = strong_semilattice_of_braces(spec)
    assert B.is_trivial
    assert find_isomorphism(B.add, carriers["CS3"]) is not None


def test_strong_semilattice_of_operator_braces():
    for top_op, bottom_op in (((0, 1), (0, 1)), ((0, 0), (0, 0))):
        gspec = StrongSemilatticeSpec(np.array([[0, 0], [0, 1]]), (Z2, Z2), {(1, 0): (0, 1)})
        S = build_strong_semilattice(gspec)
        R = strong_operator_from_components(gspec, [bottom_op, top_op])
        G = verify_clifford(Z2)
        braces = (brace_from_operator(G, RotaBaxterOperator(G, bottom_op)),
                  brace_from_operator(G, RotaBaxterOperator(G, top_op)))
        bspec = BraceSemilatticeSpec(gspec.meet, braces, {(1, 0): (0, 1)})
        assert strong_semilattice_of_braces(bspec) == brace_from_operator(S, R)
