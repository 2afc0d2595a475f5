import itertools

import numpy as np
import pytest

import oracles
from rotabrace.clifford import (
    NonUniqueInverse,
    NotAssociative,
    NotClifford,
    SpecInvariantViolated,
    StrongSemilatticeSpec,
    SubsetOutOfRange,
    TableShapeError,
    build_strong_semilattice,
    canonical_order,
    cyclic_group,
    decompose_to_strong_semilattice,
    enumerate_homomorphisms,
    find_isomorphism,
    inverses_and_idempotents,
    is_normal_subset,
    verify_clifford,
)

Z2 = [[0, 1], [1, 0]]
TRIVIAL = [[0]]


def chain_spec(top, bottom, link):
    return StrongSemilatticeSpec(
        np.array([[0, 0], [0, 1]]),
        (np.array(bottom), np.array(top)),
        {(1, 0): tuple(link)},
    )


def test_z2_is_a_group():
    S = verify_clifford(Z2)
    assert S.idempotent_set == (0,)
    assert S.is_group and S.identity == 0


def test_left_zero_semigroup_is_rejected():
    # a x a = a and x a x = x hold for every x, so inverses are not unique
    with pytest.raises(NonUniqueInverse) as err:
        verify_clifford([[0, 0], [1, 1]])
    assert err.value.witness[0] == 0


def test_cs3(carriers):
    S = carriers["CS3"]
    assert S.idempotent_set == (0, 2)
    inv, idem = inverses_and_idempotents(S)
    assert (inv[2], idem[2]) == (2, 2)
    assert (inv[1], idem[1]) == (1, 0)


def test_z4_inverse():
    inv, idem = inverses_and_idempotents(cyclic_group(4))
    assert (inv[1], idem[1]) == (3, 0)


def test_rejections():
    with pytest.raises(TableShapeError):
        verify_clifford([[0, 1]])
    with pytest.raises(TableShapeError):
        verify_clifford([[0, 2], [1, 0]])
    with pytest.raises(NotAssociative):
        verify_clifford([[1, 0], [0, 0]])
    # right-zero semigroup
    with pytest.raises(NonUniqueInverse):
        verify_clifford([[0, 1], [0, 1]])


def test_non_clifford_inverse_semigroup():
    # Brandt semigroup B2: inverse but a a^-1 != a^-1 a
    names = ["11", "12", "21", "22", "0"]
    idx = {n: i for i, n in enumerate(names)}

    def mul(x, y):
        if x == "0" or y == "0" or x[1] != y[0]:
            return "0"
        return x[0] + y[1]

    t = [[idx[mul(x, y)] for y in names] for x in names]
    with pytest.raises(NotClifford):
        verify_clifford(t)


def test_catalog_axioms(carriers):
    for S in carriers.values():
        t = S.table
        for a in range(S.order):
            assert S.inv[S.inv[a]] == a
            assert S.idem[a] == t[a, S.inv[a]]
            assert t[S.idem[a], a] == a
            for b in range(S.order):
                assert S.inv[t[a, b]] == t[S.inv[b], S.inv[a]]
        assert oracles.inverse_map(oracles.rows(t)) == S.inv.tolist()


def test_single_vertex_spec_is_the_group():
    G = cyclic_group(3)
    spec = StrongSemilatticeSpec(np.array([[0]]), (G.table,), {})
    assert build_strong_semilattice(spec) == G


def test_chain_with_trivial_bottom_is_cs3(carriers):
    S = build_strong_semilattice(chain_spec(Z2, TRIVIAL, [0, 0]))
    assert find_isomorphism(S, carriers["CS3"]) is not None


def test_chain_of_trivial_groups_is_semilattice(carriers):
    S = build_strong_semilattice(chain_spec(TRIVIAL, TRIVIAL, [0]))
    assert S.table.tolist() == [[0, 0], [0, 1]]
    assert find_isomorphism(S, carriers["SL2"]).images == (1, 0)


def test_spec_violations():
    with pytest.raises(SpecInvariantViolated):
        build_strong_semilattice(chain_spec(Z2, Z2, [1, 0]))  # not a homomorphism
    with pytest.raises(SpecInvariantViolated):
        build_strong_semilattice(StrongSemilatticeSpec(np.array([[0, 0], [0, 1]]), (np.array(Z2), np.array(Z2)), {}))
    with pytest.raises(SpecInvariantViolated):
        build_strong_semilattice(StrongSemilatticeSpec(np.array([[0, 1], [0, 1]]), (np.array(Z2), np.array(Z2)), {}))


def test_decompose_cs3(carriers):
    spec = decompose_to_strong_semilattice(carriers["CS3"])
    assert len(spec.groups) == 2
    assert [len(g) for g in spec.groups] == [2, 1]
    assert spec.geq(0, 1)
    assert spec.link(0, 1) == (0, 0)


def test_decompose_group_and_semilattice(carriers):
    spec = decompose_to_strong_semilattice(carriers["S3"])
    assert len(spec.groups) == 1
    spec = decompose_to_strong_semilattice(carriers["SL2"])
    assert [len(g) for g in spec.groups] == [1, 1]


def test_decompose_round_trip(carriers):
    for S in carriers.values():
        spec = decompose_to_strong_semilattice(S)
        T = build_strong_semilattice(spec)
        order = [a for mem in spec.elements for a in mem]
        # the rebuilt index i stands for the source element order[i]
        assert all(order[T.table[i, j]] == S.table[order[i], order[j]] for i in range(S.order) for j in range(S.order))


def test_canonical_order(carriers):
    S = carriers["CS3"]
    assert canonical_order(S) == [0, 1, 2]
    assert sorted(canonical_order(carriers["S3"])) == list(range(6))


@pytest.mark.parametrize(
    "src,dst,kind,count",
    [("Z2", "Z2", "all", 2), ("Z3", "Z3", "isomorphisms", 2), ("CS3", "CS3", "isomorphisms", 1)],
)
def test_homomorphism_counts(carriers, src, dst, kind, count):
    assert len(enumerate_homomorphisms(carriers[src], carriers[dst], kind)) == count


def test_homomorphisms_match_oracle(carriers):
    small = [S for S in carriers.values() if S.order <= 4]
    for S, T in itertools.product(small, repeat=2):
        for kind in ("all", "isomorphisms"):
            got = [f.images for f in enumerate_homomorphisms(S, T, kind)]
            assert got == oracles.all_homs(S.table, T.table, kind == "isomorphisms"), (S.name, T.name, kind)


def test_homomorphisms_preserve_inverses(carriers):
    for S in carriers.values():
        for f in enumerate_homomorphisms(S, S):
            for a in range(S.order):
                assert f(int(S.inv[a])) == S.inv[f(a)]
                assert f(int(S.idem[a])) == S.idem[f(a)]


def test_parallel_homomorphisms_match(carriers):
    S = carriers["S3"]
    assert enumerate_homomorphisms(S, S, workers=3) == enumerate_homomorphisms(S, S)


def test_normal_subsets(carriers):
    for S in carriers.values():
        assert is_normal_subset(S, S.idempotent_set)
    S3 = carriers["S3"]
    assert is_normal_subset(S3, [0, 3, 4])
    v = is_normal_subset(S3, [0, 1])
    assert not v and v.reason == "4"
    with pytest.raises(SubsetOutOfRange):
        is_normal_subset(S3, [0, 9])


def test_normal_subset_matches_oracle(carriers):
    for S in carriers.values():
        t = oracles.rows(S.table)
        for mask in itertools.product((0, 1), repeat=S.order):
            N = [a for a in range(S.order) if mask[a]]
            assert bool(is_normal_subset(S, N)) == oracles.normal_subset(t, N)
